#include "rarz/riemann.hpp"

#include <cmath>

namespace rarz {

namespace {

constexpr double kTieTol = 1e-12;      // equal-velocity tie, relative to u*
constexpr double kDegenerateJump = 1e-14;

bool is_tie(double u_left, double u_right, const ModelParams& p) {
  return std::abs(u_left - u_right) < kTieTol * p.u_star;
}

// State on the curve w = w_left at velocity u, vacuum-aware.
Primitive curve_state(ModelKind kind, double w_left, double u, const ModelParams& p) {
  const double rho = density_on_curve(kind, w_left, u, p);
  if (rho <= 0.0) return Primitive{0.0, vacuum_velocity(kind, w_left, p)};
  return Primitive{rho, u};
}

}  // namespace

std::string to_string(WavePattern pattern) {
  switch (pattern) {
    case WavePattern::ShockContact: return "shock+contact";
    case WavePattern::RarefactionContact: return "rarefaction+contact";
    case WavePattern::ContactOnly: return "contact";
    case WavePattern::VacuumFan: return "vacuum-fan";
  }
  return "?";
}

WavePattern classify(const Primitive& left, const Primitive& right, const ModelParams& p) {
  return classify(ModelKind::Rarz, left, right, p);
}

WavePattern classify(ModelKind, const Primitive& left, const Primitive& right,
                     const ModelParams& p) {
  if (is_tie(left.u, right.u, p)) return WavePattern::ContactOnly;
  return right.u < left.u ? WavePattern::ShockContact : WavePattern::RarefactionContact;
}

Primitive intermediate_state(const Primitive& left, const Primitive& right,
                             const ModelParams& p) {
  return intermediate_state(ModelKind::Rarz, left, right, p);
}

Primitive intermediate_state(ModelKind kind, const Primitive& left,
                             const Primitive& right, const ModelParams& p) {
  if (is_tie(left.u, right.u, p)) return Primitive{left.rho, right.u};
  return curve_state(kind, advected(kind, left.rho, left.u, p), right.u, p);
}

double shock_speed(const Primitive& left, const Primitive& middle) {
  const double drho = middle.rho - left.rho;
  if (std::abs(drho) < kDegenerateJump)
    throw std::domain_error("shock_speed: degenerate density jump");
  return (middle.rho * middle.u - left.rho * left.u) / drho;
}

RiemannFan solve_riemann(const Primitive& left, const Primitive& right,
                         const ModelParams& p) {
  return solve_riemann(ModelKind::Rarz, left, right, p);
}

RiemannFan solve_riemann(ModelKind kind, const Primitive& left, const Primitive& right,
                         const ModelParams& p) {
  RiemannFan fan;
  fan.kind = kind;
  fan.left = left;
  fan.right = right;
  fan.contact_speed = right.u;
  fan.pattern = classify(kind, left, right, p);
  fan.middle = intermediate_state(kind, left, right, p);
  fan.w_left = advected(kind, left.rho, left.u, p);

  switch (fan.pattern) {
    case WavePattern::ContactOnly:
      break;
    case WavePattern::ShockContact:
      if (std::abs(fan.middle.rho - left.rho) < kDegenerateJump)
        fan.shock_speed = lambda2_of(kind, left.rho, left.u, p);  // weak-shock limit
      else
        fan.shock_speed = shock_speed(left, fan.middle);
      break;
    case WavePattern::RarefactionContact:
      fan.fan_head = lambda2_of(kind, left.rho, left.u, p);
      if (fan.middle.rho <= 0.0) {
        fan.pattern = WavePattern::VacuumFan;
        fan.fan_tail = fan.middle.u;  // characteristic speed at the vacuum edge
      } else {
        fan.fan_tail = lambda2_of(kind, fan.middle.rho, fan.middle.u, p);
      }
      break;
    case WavePattern::VacuumFan:
      break;
  }
  return fan;
}

namespace {

// Inverts lambda2 = xi along the curve w = w_left inside a rarefaction fan.
// lambda2 is continuous and increasing in u on [u_left, u_middle], so
// bisection is unconditionally safe.
Primitive fan_state(const RiemannFan& fan, double xi, const ModelParams& p) {
  const double tol = 1e-12 * std::max(1.0, std::abs(xi));
  double lo = fan.left.u;
  double hi = fan.pattern == WavePattern::VacuumFan ? velocity_cap(fan.middle.u)
                                                    : fan.middle.u;
  Primitive state = fan.left;
  for (int it = 0; it < 200; ++it) {
    const double u = 0.5 * (lo + hi);
    state = curve_state(fan.kind, fan.w_left, u, p);
    const double lam = state.rho <= 0.0 ? state.u
                                        : lambda2_of(fan.kind, state.rho, state.u, p);
    if (std::abs(lam - xi) < tol) break;
    (lam < xi ? lo : hi) = u;
  }
  return state;
}

}  // namespace

std::pair<Primitive, FanRegion> sample_region(const RiemannFan& fan, double xi,
                                              const ModelParams& p) {
  switch (fan.pattern) {
    case WavePattern::ContactOnly:
      return xi < fan.contact_speed ? std::pair{fan.left, FanRegion::Left}
                                    : std::pair{fan.right, FanRegion::Right};
    case WavePattern::ShockContact:
      if (xi < fan.shock_speed) return {fan.left, FanRegion::Left};
      if (xi < fan.contact_speed) return {fan.middle, FanRegion::Middle};
      return {fan.right, FanRegion::Right};
    case WavePattern::RarefactionContact:
    case WavePattern::VacuumFan:
      if (xi < fan.fan_head) return {fan.left, FanRegion::Left};
      if (xi < fan.fan_tail) return {fan_state(fan, xi, p), FanRegion::Fan};
      if (xi < fan.contact_speed) return {fan.middle, FanRegion::Middle};
      return {fan.right, FanRegion::Right};
  }
  return {fan.right, FanRegion::Right};
}

Primitive sample(const RiemannFan& fan, double xi, const ModelParams& p) {
  return sample_region(fan, xi, p).first;
}

Cons1 interface_flux(const RiemannFan& fan, const ModelParams& p) {
  const Primitive w = sample(fan, 0.0, p);
  if (w.rho <= vacuum_density(p)) return Cons1::Zero();
  return flux_conserved(to_conserved(fan.kind, w, p), w.u);
}

Cons1 interface_flux(const Primitive& left, const Primitive& right, const ModelParams& p) {
  return interface_flux(solve_riemann(left, right, p), p);
}

Cons1 interface_flux(ModelKind kind, const Primitive& left, const Primitive& right,
                     const ModelParams& p) {
  return interface_flux(solve_riemann(kind, left, right, p), p);
}

std::vector<CurvePoint> wave_curve_points(const Primitive& base, WaveBranch branch,
                                          int n, const ModelParams& p) {
  if (n < 1) throw std::invalid_argument("wave_curve_points: n must be >= 1");
  const double w0 = advected(ModelKind::Rarz, base.rho, base.u, p);
  std::vector<CurvePoint> points;
  points.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double u;
    if (branch == WaveBranch::Shock) {
      // u in (0, u_0], densities increase towards the jam value
      u = base.u * static_cast<double>(k + 1) / static_cast<double>(n);
    } else {
      // u in [u_0, u*), densities decay towards vacuum
      u = n == 1 ? base.u
                 : base.u + (p.u_star * (1.0 - 1e-9) - base.u) * static_cast<double>(k) /
                                static_cast<double>(n - 1);
    }
    points.push_back(CurvePoint{u, density_on_curve(ModelKind::Rarz, w0, u, p)});
  }
  // endpoint of either branch is the base state itself
  if (branch == WaveBranch::Shock) points.back() = CurvePoint{base.u, base.rho};
  else points.front() = CurvePoint{base.u, base.rho};
  return points;
}

}  // namespace rarz
