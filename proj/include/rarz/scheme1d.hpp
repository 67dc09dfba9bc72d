#pragma once

#include "rarz/riemann.hpp"

#include <cstdint>
#include <limits>

// Time integrators for the 1D system: the classical Godunov scheme and the
// two-step transport-equilibrium scheme (Glimm sampling for contacts,
// staggered Godunov fluxes for the nonlinear waves).

namespace rarz {

enum class Boundary { Outflow, Periodic };
enum class Scheme1d { Godunov, Hybrid };

std::string to_string(Boundary b);
std::string to_string(Scheme1d s);

/// Uniform cell-averaged grid. Cells hold conserved states; ghost cells are
/// materialized per step from the boundary policy.
struct Grid1D {
  double x_min = 0.0;
  double x_max = 2.0;
  int n_cells = 0;
  double dx = 0.0;
  Boundary boundary = Boundary::Outflow;
  double time = 0.0;
  std::vector<Cons1> cells;

  Grid1D() = default;
  Grid1D(double x_min, double x_max, int n_cells, Boundary boundary);

  double x_center(int j) const { return x_min + (j + 0.5) * dx; }
  /// Total mass sum(rho_j) dx.
  double mass() const;
};

/// Base-2 van der Corput radical inverse a_n in (0, 1), n >= 1.
double van_der_corput(std::uint64_t n);

/// Deterministic sampling position driving the Glimm step; step n consumes
/// a_{n+1}.
struct VdcSampler {
  std::uint64_t index = 0;
  double next() { return van_der_corput(++index); }
};

struct SchemeConfig {
  Scheme1d scheme = Scheme1d::Hybrid;
  double cfl = 0.45;
  double t_end = 0.0;
  ModelParams params;
  ModelKind kind = ModelKind::Rarz;
};

/// CFL time step: cfl * dx / max_j max(|lambda1|, |lambda2|), capped at
/// dt_cap (the remaining time); a grid at rest returns the cap.
double cfl_dt(const Grid1D& grid, double cfl, const ModelParams& p, double dt_cap,
              ModelKind kind = ModelKind::Rarz);

/// Conservative update with exact-Riemann interface fluxes sampled at 0^-.
void godunov_step(Grid1D& grid, double dt, const ModelParams& p,
                  ModelKind kind = ModelKind::Rarz);

/// Step 1 of the hybrid scheme: each cell is replaced by the intermediate
/// state of its left-interface Riemann problem when the shared sample
/// a_{n+1} falls inside (0, dt/dx u_j), tracking the contact exactly.
/// Requires u >= 0 in every cell (contacts must move rightward).
void glimm_transport_substep(Grid1D& grid, double dt, VdcSampler& sampler,
                             const ModelParams& p, ModelKind kind = ModelKind::Rarz);

/// Full two-step update: Glimm transport then the staggered flux-form
/// correction. The right interface always contributes the Riemann flux of
/// (U_j^{n+1/2}, U_{j+1}^n); the left interface contributes F(U_j^{n+1/2})
/// unless the intermediate state of (U_{j-1}^n, U_j^{n+1/2}) coincides with
/// U_j^{n+1/2}, in which case the nonlinear wave has entered the cell and
/// the Riemann flux is used. Requires dt <= dx/(2 max|lambda|).
///
/// Mass is conserved only statistically: the sampling substep moves cell
/// contents by whole cells at the equidistributed rate dt u/dx, so the
/// total-mass drift over a run is O(dx) rather than zero (the price of
/// keeping contacts exact). godunov_step is exactly conservative.
void hybrid_step(Grid1D& grid, double dt, VdcSampler& sampler, const ModelParams& p,
                 ModelKind kind = ModelKind::Rarz);

/// Piecewise-constant initial data: states[i] applies on
/// (breakpoints[i-1], breakpoints[i]); one more state than breakpoints.
struct PiecewiseConstant1D {
  std::vector<double> breakpoints;
  std::vector<Primitive> states;

  static PiecewiseConstant1D riemann(const Primitive& left, const Primitive& right,
                                     double x_split) {
    return PiecewiseConstant1D{{x_split}, {left, right}};
  }
  Primitive at(double x) const;
};

struct Snapshot1D {
  double time = 0.0;
  Eigen::ArrayXd x, rho, u;
};

struct RunStats1D {
  double rho_min = std::numeric_limits<double>::infinity();
  double rho_max = -std::numeric_limits<double>::infinity();
  double u_min = std::numeric_limits<double>::infinity();
  double u_max = -std::numeric_limits<double>::infinity();
  double mass_initial = 0.0;
  double mass_final = 0.0;
  long steps = 0;
};

struct Domain1D {
  double x_min = 0.0;
  double x_max = 2.0;
  int n_cells = 400;
  Boundary boundary = Boundary::Outflow;
};

Grid1D make_grid(const PiecewiseConstant1D& initial, const Domain1D& domain,
                 const ModelParams& p, ModelKind kind = ModelKind::Rarz);

/// Advances the grid to exactly t_end (last step truncated) and returns one
/// snapshot per requested time plus the final time. Per-step bound tracking
/// lands in stats when provided.
std::vector<Snapshot1D> run_1d(const PiecewiseConstant1D& initial,
                               const SchemeConfig& config, const Domain1D& domain,
                               std::span<const double> snapshot_times = {},
                               RunStats1D* stats = nullptr);

/// Cell-center snapshot of the grid.
Snapshot1D snapshot_of(const Grid1D& grid, const ModelParams& p,
                       ModelKind kind = ModelKind::Rarz);

}  // namespace rarz
