#pragma once

#include "rarz/model.hpp"

// Exact Riemann solver for the 1D system. The solution consists of a
// genuinely nonlinear wave (shock or rarefaction, on the curve w = w_left)
// followed by a contact discontinuity travelling at u_right, across which
// the velocity is continuous and the density jumps.

namespace rarz {

enum class WavePattern { ShockContact, RarefactionContact, ContactOnly, VacuumFan };
enum class WaveBranch { Shock, Rarefaction };

std::string to_string(WavePattern pattern);

/// Classified self-similar wave fan of a Riemann problem, samplable at any
/// xi = x/t.
struct RiemannFan {
  ModelKind kind = ModelKind::Rarz;
  Primitive left, middle, right;
  WavePattern pattern = WavePattern::ContactOnly;
  double w_left = 0.0;        // advected invariant across the nonlinear wave
  double shock_speed = 0.0;   // valid iff pattern == ShockContact
  double fan_head = 0.0;      // lambda2(left), iff Rarefaction/VacuumFan
  double fan_tail = 0.0;      // lambda2(middle) resp. vacuum edge
  double contact_speed = 0.0; // u_right
};

/// Shock+Contact iff u_R < u_L, Rarefaction+Contact iff u_R > u_L,
/// ContactOnly on the tie |u_L - u_R| < 1e-12 u*.
WavePattern classify(const Primitive& left, const Primitive& right, const ModelParams& p);
WavePattern classify(ModelKind kind, const Primitive& left, const Primitive& right,
                     const ModelParams& p);

/// Closed-form state between the nonlinear wave and the contact:
/// u_M = u_R and rho_M = pressure_inverse(utilde(u_L) p(rho_L) / utilde(u_R)).
/// Returns the vacuum (rho = 0, u = u*) when the required offset underflows.
Primitive intermediate_state(const Primitive& left, const Primitive& right,
                             const ModelParams& p);
Primitive intermediate_state(ModelKind kind, const Primitive& left,
                             const Primitive& right, const ModelParams& p);

/// Rankine-Hugoniot speed sigma = (rho_M u_M - rho_L u_L)/(rho_M - rho_L).
/// Throws on a degenerate jump |rho_M - rho_L| < 1e-14.
double shock_speed(const Primitive& left, const Primitive& middle);

RiemannFan solve_riemann(const Primitive& left, const Primitive& right,
                         const ModelParams& p);
RiemannFan solve_riemann(ModelKind kind, const Primitive& left, const Primitive& right,
                         const ModelParams& p);

enum class FanRegion { Left, Fan, Middle, Right };

/// State of the self-similar solution at xi = x/t, with the region it came
/// from. Inside a rarefaction the state is found by bisection on the wave
/// curve to |lambda2 - xi| < 1e-12 max(1, |xi|).
std::pair<Primitive, FanRegion> sample_region(const RiemannFan& fan, double xi,
                                              const ModelParams& p);
Primitive sample(const RiemannFan& fan, double xi, const ModelParams& p);

/// Godunov interface flux F(U_r(0^-)). The flux is continuous across a
/// stationary shock or contact, so the left-limit convention reduces to
/// sampling at xi = 0.
Cons1 interface_flux(const RiemannFan& fan, const ModelParams& p);
Cons1 interface_flux(const Primitive& left, const Primitive& right, const ModelParams& p);
Cons1 interface_flux(ModelKind kind, const Primitive& left, const Primitive& right,
                     const ModelParams& p);

struct CurvePoint {
  double u = 0.0;
  double rho = 0.0;
  bool operator==(const CurvePoint&) const = default;
};

/// n points on the wave curve utilde p = const through base, restricted to
/// the admissible side of the branch (shock: u <= u_0, rarefaction:
/// u >= u_0), ordered by increasing u. Density decreases strictly along it.
std::vector<CurvePoint> wave_curve_points(const Primitive& base, WaveBranch branch,
                                          int n, const ModelParams& p);

}  // namespace rarz
