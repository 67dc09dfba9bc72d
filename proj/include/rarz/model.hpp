#pragma once

#include <Eigen/Dense>

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Algebra of the density/velocity-constrained second-order traffic model and
// of the two reference closures (ARZ, MAR) it is compared against.
//
// All three models advect a quantity w with the flow:
//   ARZ  : w = u + p(rho),        p(rho) = rho^gamma
//   MAR  : w = u + p(rho),        p(rho) = (1/rho - 1/rho*)^-gamma
//   RARZ : w = utilde(u) p(rho),  utilde(u) = (1/u - 1/u*)^-1, p as in MAR
// Conserved variables are (rho, rho*w); the momentum-like component is
// y = rho*utilde*p for RARZ.

namespace rarz {

/// Conserved state / flux vector of the 1D system: [0] = rho, [1] = rho*w.
using Cons1 = Eigen::Vector2d;
/// 2D conserved state: [0] = rho, [1] = rho*utilde*p, [2] = rho*vtilde*p.
using Cons2 = Eigen::Vector3d;

/// Raised when a grid cell or an integration step degenerates (non-finite
/// state, collision, undecodable cell, ...). Maps to exit code 3 in the CLI.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ModelKind { Arz, Mar, Rarz };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

/// Physical constraint parameters closing the model.
struct ModelParams {
  double rho_star = 1.0;  // maximal density
  double u_star = 1.0;    // maximal x-velocity
  double v_star = 1.0;    // maximal y-velocity (2D only)
  double gamma = 2.0;     // pressure exponent

  void validate() const;
  bool operator==(const ModelParams&) const = default;
};

struct Primitive {
  double rho = 0.0;
  double u = 0.0;
  bool operator==(const Primitive&) const = default;
};

struct Primitive2 {
  double rho = 0.0;
  double u = 0.0;
  double v = 0.0;
  bool operator==(const Primitive2&) const = default;
};

/// Density below which a cell is treated as vacuum (u := u*, y := 0).
inline double vacuum_density(const ModelParams& p) { return 1e-10 * p.rho_star; }

/// Velocities are capped at u*(1 - 1e-12) before the utilde map; the map is
/// singular at u = u* (loss of strict hyperbolicity).
inline double velocity_cap(double star) { return star * (1.0 - 1e-12); }

bool is_vacuum(const Primitive& w, const ModelParams& p);

// -- pressure / pseudo-velocity maps ----------------------------------------

/// p(rho) = (1/rho - 1/rho*)^-gamma. Strictly increasing on (0, rho*),
/// diverges at the jam density. Domain error outside (0, rho*).
double pressure(double rho, const ModelParams& p);

/// Inverse of pressure: rho = 1 / (p^(-1/gamma) + 1/rho*), p > 0.
double pressure_inverse(double pr, const ModelParams& p);

/// utilde(u) = (1/u - 1/u*)^-1 = u u*/(u* - u). Strictly increasing on
/// (0, u*), maps to (0, inf). Domain error outside (0, u*).
double pseudo_velocity(double u, const ModelParams& p);

/// Inverse of utilde: u = utilde u*/(utilde + u*), total on [0, inf].
double pseudo_velocity_inverse(double utilde, const ModelParams& p);

namespace detail {
// Same maps with an explicit bound, used for the lateral velocity as well.
double pseudo(double u, double star);
double pseudo_inverse(double utilde, double star);
// utilde with the u <= star*(1-1e-12) cap applied and utilde(0) = 0.
double pseudo_capped(double u, double star);
}  // namespace detail

// -- state conversions and flux ----------------------------------------------

Cons1 to_conserved(const Primitive& w, const ModelParams& p);
Primitive to_primitive(const Cons1& q, const ModelParams& p);

Cons2 to_conserved(const Primitive2& w, const ModelParams& p);
Primitive2 to_primitive2(const Cons2& q, const ModelParams& p);

/// F(U) = (rho u, u y) in 1D.
Cons1 flux(const Primitive& w, const ModelParams& p);
/// Flux evaluated from a conserved state and its velocity: u * (q with
/// first component rho): (rho u, u q1). Algebraically identical to flux().
Cons1 flux_conserved(const Cons1& q, double u);

/// x-flux (rho u, u y, u z) of the 2D system.
Cons2 flux_x(const Primitive2& w, const ModelParams& p);
/// y-flux (rho v, v y, v z).
Cons2 flux_y(const Primitive2& w, const ModelParams& p);
Cons2 flux_conserved(const Cons2& q, double vel);

/// (lambda1, lambda2) = (u, u - gamma u rho* (u* - u) / (u* (rho* - rho))).
/// lambda2 <= lambda1 with equality iff u = 0 or u = u*.
std::pair<double, double> eigenvalues(const Primitive& w, const ModelParams& p);

// -- closure-generic helpers (ARZ / MAR / RARZ) -------------------------------

/// Velocity offset of the given closure (rho^gamma for ARZ, singular form
/// for MAR and RARZ).
double closure_pressure(ModelKind kind, double rho, const ModelParams& p);

/// Advected quantity w(rho, u) of the closure.
double advected(ModelKind kind, double rho, double u, const ModelParams& p);

/// Velocity on the curve w = const at the given density.
double velocity_on_curve(ModelKind kind, double w, double rho, const ModelParams& p);

/// Density on the curve w = const at the given velocity. Returns 0 when the
/// curve exits through the vacuum (required offset underflows below 1e-300);
/// capped at rho*(1-1e-12) when the required offset diverges (u -> 0, RARZ).
double density_on_curve(ModelKind kind, double w, double u, const ModelParams& p);

/// Characteristic speed of the genuinely nonlinear field.
double lambda2_of(ModelKind kind, double rho, double u, const ModelParams& p);

/// Velocity attained in the vacuum limit rho -> 0 along w = const.
double vacuum_velocity(ModelKind kind, double w, const ModelParams& p);

Cons1 to_conserved(ModelKind kind, const Primitive& w, const ModelParams& p);
Primitive to_primitive(ModelKind kind, const Cons1& q, const ModelParams& p);

// -- fundamental diagrams ------------------------------------------------------

struct FdPoint {
  double rho = 0.0;
  double u = 0.0;
  double flow = 0.0;  // q = rho * u
  bool operator==(const FdPoint&) const = default;
};

/// Equilibrium density/velocity/flow relation along one curve w = const.
struct FdSeries {
  ModelKind kind = ModelKind::Rarz;
  double w = 0.0;
  std::vector<FdPoint> points;
};

/// Samples the fundamental diagram of a closure at the given densities.
/// ARZ speeds are clipped at zero; MAR speeds are emitted as-is and may be
/// negative; RARZ speeds always lie in [0, u*].
FdSeries fd_curve(ModelKind kind, double w, std::span<const double> rho_samples,
                  const ModelParams& p);

}  // namespace rarz
