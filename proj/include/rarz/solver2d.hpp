#pragma once

#include "rarz/scheme1d.hpp"

#include <array>

// Dimension-split solver for the 2D system (rho, rho utilde p, rho vtilde p).
// Each split subsystem has a double contact (speed u resp. v) and one
// genuinely nonlinear field; interface states follow from the invariants
// u_M = u_R, utilde_L p_L = utilde_M p_M, vtilde_L p_L = vtilde_M p_M
// (roles swapped in y). Time stepping is Strang x-y-x with HLL, exact
// Godunov, or dimension-wise hybrid fluxes per stage.

namespace rarz {

enum class Axis { X, Y };
enum class Flux2dKind { Hll, ExactGodunov, Hybrid };

std::string to_string(Flux2dKind k);

/// Params with the roles of the two velocity bounds exchanged; used to run
/// y-direction sweeps through the x-direction machinery.
ModelParams swap_axes(const ModelParams& p);
Primitive2 swap_axes(const Primitive2& w);
Cons2 swap_axes(const Cons2& q);

/// (lambda1, lambda2, lambda3) = (u, u, u - gamma rho* u (u* - u)/(u* (rho* - rho)))
/// of the x-direction subsystem; independent of v.
std::array<double, 3> split_eigenvalues_x(const Primitive2& w, const ModelParams& p);
std::array<double, 3> split_eigenvalues_y(const Primitive2& w, const ModelParams& p);

/// Closed-form interface state of the x-direction subsystem.
Primitive2 split_intermediate_x(const Primitive2& left, const Primitive2& right,
                                const ModelParams& p);
Primitive2 split_intermediate_y(const Primitive2& left, const Primitive2& right,
                                const ModelParams& p);

/// Split-subsystem Riemann fan: the (rho, u) structure of the 1D solver with
/// the lateral velocity carried along the nonlinear wave by vtilde p = const
/// and jumping at the contact.
struct SplitFan3 {
  RiemannFan base;
  double v_left = 0.0;
  double v_middle = 0.0;
  double v_right = 0.0;
};

/// Axis-local solve: states are given with .u the normal velocity.
SplitFan3 solve_split(const Primitive2& left, const Primitive2& right,
                      const ModelParams& p);
Primitive2 sample_split(const SplitFan3& fan, double xi, const ModelParams& p);

/// Two-wave HLL flux with Davis speed bounds S_L = min lambda(L, R),
/// S_R = max lambda(L, R); consistent: hll(W, W) = F(W).
Cons2 hll_flux(const Primitive2& left, const Primitive2& right, Axis axis,
               const ModelParams& p);

/// Exact-Riemann interface flux of the x-direction subsystem at xi = 0^-.
Cons2 split_interface_flux(const Primitive2& left, const Primitive2& right,
                           const ModelParams& p);

struct BoundarySet {
  Boundary left = Boundary::Outflow;
  Boundary right = Boundary::Outflow;
  Boundary bottom = Boundary::Outflow;
  Boundary top = Boundary::Outflow;
  static BoundarySet uniform(Boundary b) { return BoundarySet{b, b, b, b}; }
};

struct Grid2D {
  double x_min = 0.0, x_max = 2.0, y_min = 0.0, y_max = 2.0;
  int nx = 0, ny = 0;
  double dx = 0.0, dy = 0.0;
  BoundarySet boundary;
  double time = 0.0;
  std::vector<Cons2> cells;  // row-major, x fastest

  Grid2D() = default;
  Grid2D(double x_min, double x_max, double y_min, double y_max, int nx, int ny,
         BoundarySet boundary);

  Cons2& at(int i, int j) { return cells[static_cast<std::size_t>(j) * nx + i]; }
  const Cons2& at(int i, int j) const {
    return cells[static_cast<std::size_t>(j) * nx + i];
  }
  double x_center(int i) const { return x_min + (i + 0.5) * dx; }
  double y_center(int j) const { return y_min + (j + 0.5) * dy; }
  double mass() const;
};

/// cfl * min(dx, dy) / max spectral radius over both directions.
double cfl_dt_2d(const Grid2D& grid, double cfl, const ModelParams& p, double dt_cap);

/// One Strang step: x half-sweep, y full sweep, x half-sweep. The hybrid
/// flux kind consumes one van der Corput index per stage, shared by every
/// line of that stage.
void strang_step(Grid2D& grid, double dt, Flux2dKind kind, VdcSampler& sampler,
                 const ModelParams& p);

/// Four-quadrant initial data; q1 is the upper-right quadrant, numbering
/// counterclockwise.
struct QuadrantInit {
  Primitive2 q1, q2, q3, q4;
  Primitive2 at(double x, double y, double x_split, double y_split) const;
};

struct Domain2D {
  double x_min = 0.0, x_max = 2.0, y_min = 0.0, y_max = 2.0;
  int nx = 200, ny = 200;
  double x_split = 1.0, y_split = 1.0;
  BoundarySet boundary;
};

struct Scheme2dConfig {
  Flux2dKind scheme = Flux2dKind::Hybrid;
  double cfl = 0.45;
  double t_end = 0.0;
  ModelParams params;
};

struct Field2D {
  double time = 0.0;
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
  Eigen::ArrayXd x, y;
  Eigen::ArrayXXd rho, u, v;  // (ny rows, nx cols)
};

struct RunStats2D {
  double rho_min = std::numeric_limits<double>::infinity();
  double rho_max = -std::numeric_limits<double>::infinity();
  double u_min = std::numeric_limits<double>::infinity();
  double u_max = -std::numeric_limits<double>::infinity();
  double v_min = std::numeric_limits<double>::infinity();
  double v_max = -std::numeric_limits<double>::infinity();
  double mass_initial = 0.0;
  double mass_final = 0.0;
  long steps = 0;
};

Grid2D make_grid_2d(const QuadrantInit& initial, const Domain2D& domain,
                    const ModelParams& p);
Field2D field_of(const Grid2D& grid, const ModelParams& p);

Field2D run_2d(const QuadrantInit& initial, const Scheme2dConfig& config,
               const Domain2D& domain, RunStats2D* stats = nullptr);

}  // namespace rarz
