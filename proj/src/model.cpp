#include "rarz/model.hpp"

#include <algorithm>
#include <cmath>

namespace rarz {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Arz: return "arz";
    case ModelKind::Mar: return "mar";
    case ModelKind::Rarz: return "rarz";
  }
  return "rarz";
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "arz") return ModelKind::Arz;
  if (name == "mar") return ModelKind::Mar;
  if (name == "rarz") return ModelKind::Rarz;
  throw std::invalid_argument("unknown model kind: " + name);
}

void ModelParams::validate() const {
  if (!(rho_star > 0.0)) throw std::domain_error("rho_star must be > 0");
  if (!(u_star > 0.0)) throw std::domain_error("u_star must be > 0");
  if (!(v_star > 0.0)) throw std::domain_error("v_star must be > 0");
  if (!(gamma > 0.0)) throw std::domain_error("gamma must be > 0");
}

bool is_vacuum(const Primitive& w, const ModelParams& p) {
  return w.rho <= vacuum_density(p);
}

double pressure(double rho, const ModelParams& p) {
  if (!(rho > 0.0) || rho >= p.rho_star)
    throw std::domain_error("pressure: rho outside (0, rho_star)");
  // (1/rho - 1/rho*) written in subtraction-first form; well conditioned
  // near the jam density.
  const double s = (p.rho_star - rho) / (rho * p.rho_star);
  return std::pow(s, -p.gamma);
}

double pressure_inverse(double pr, const ModelParams& p) {
  if (!(pr > 0.0)) throw std::domain_error("pressure_inverse: p must be > 0");
  return 1.0 / (std::pow(pr, -1.0 / p.gamma) + 1.0 / p.rho_star);
}

double pseudo_velocity(double u, const ModelParams& p) {
  if (!(u > 0.0) || u >= p.u_star)
    throw std::domain_error("pseudo_velocity: u outside (0, u_star)");
  return detail::pseudo(u, p.u_star);
}

double pseudo_velocity_inverse(double utilde, const ModelParams& p) {
  if (utilde < 0.0)
    throw std::domain_error("pseudo_velocity_inverse: utilde must be >= 0");
  return detail::pseudo_inverse(utilde, p.u_star);
}

namespace detail {

double pseudo(double u, double star) { return u * star / (star - u); }

double pseudo_inverse(double utilde, double star) {
  // star / (1 + star/utilde): total on [0, inf], maps 0 -> 0 and inf -> star.
  return star / (1.0 + star / utilde);
}

double pseudo_capped(double u, double star) {
  if (u <= 0.0) return 0.0;
  return pseudo(std::min(u, velocity_cap(star)), star);
}

}  // namespace detail

Cons1 to_conserved(const Primitive& w, const ModelParams& p) {
  return to_conserved(ModelKind::Rarz, w, p);
}

Primitive to_primitive(const Cons1& q, const ModelParams& p) {
  return to_primitive(ModelKind::Rarz, q, p);
}

Cons2 to_conserved(const Primitive2& w, const ModelParams& p) {
  if (w.rho <= vacuum_density(p)) return Cons2(w.rho, 0.0, 0.0);
  if (w.u < 0.0 || w.v < 0.0)
    throw std::domain_error("to_conserved: negative velocity");
  const double pr = pressure(w.rho, p);
  return Cons2(w.rho, w.rho * detail::pseudo_capped(w.u, p.u_star) * pr,
               w.rho * detail::pseudo_capped(w.v, p.v_star) * pr);
}

Primitive2 to_primitive2(const Cons2& q, const ModelParams& p) {
  if (!q.allFinite() || q[0] < 0.0)
    throw NumericError("to_primitive2: undecodable conserved state");
  if (q[0] <= vacuum_density(p)) return Primitive2{q[0], p.u_star, p.v_star};
  if (q[1] < 0.0 || q[2] < 0.0)
    throw std::domain_error("to_primitive2: negative momentum component");
  const double pr = pressure(q[0], p);
  return Primitive2{q[0], detail::pseudo_inverse(q[1] / (q[0] * pr), p.u_star),
                    detail::pseudo_inverse(q[2] / (q[0] * pr), p.v_star)};
}

Cons1 flux(const Primitive& w, const ModelParams& p) {
  return flux_conserved(to_conserved(w, p), w.u);
}

Cons1 flux_conserved(const Cons1& q, double u) { return u * q; }

Cons2 flux_x(const Primitive2& w, const ModelParams& p) {
  return flux_conserved(to_conserved(w, p), w.u);
}

Cons2 flux_y(const Primitive2& w, const ModelParams& p) {
  return flux_conserved(to_conserved(w, p), w.v);
}

Cons2 flux_conserved(const Cons2& q, double vel) { return vel * q; }

std::pair<double, double> eigenvalues(const Primitive& w, const ModelParams& p) {
  if (w.rho >= p.rho_star)
    throw std::domain_error("eigenvalues: rho at or above rho_star");
  return {w.u, lambda2_of(ModelKind::Rarz, w.rho, w.u, p)};
}

double closure_pressure(ModelKind kind, double rho, const ModelParams& p) {
  if (kind == ModelKind::Arz) {
    if (!(rho > 0.0)) throw std::domain_error("pressure: rho must be > 0");
    return std::pow(rho, p.gamma);
  }
  return pressure(rho, p);
}

double advected(ModelKind kind, double rho, double u, const ModelParams& p) {
  if (kind == ModelKind::Rarz)
    return detail::pseudo_capped(u, p.u_star) * pressure(rho, p);
  return u + closure_pressure(kind, rho, p);
}

double velocity_on_curve(ModelKind kind, double w, double rho, const ModelParams& p) {
  if (kind == ModelKind::Rarz)
    return detail::pseudo_inverse(w / pressure(rho, p), p.u_star);
  return w - closure_pressure(kind, rho, p);
}

double density_on_curve(ModelKind kind, double w, double u, const ModelParams& p) {
  double required;  // offset the curve demands at velocity u
  if (kind == ModelKind::Rarz) {
    const double ut = detail::pseudo_capped(u, p.u_star);
    if (ut <= 0.0) return p.rho_star * (1.0 - 1e-12);  // congestion limit
    required = w / ut;
  } else {
    required = w - u;
  }
  if (required < 1e-300) return 0.0;  // vacuum
  if (kind == ModelKind::Arz) return std::pow(required, 1.0 / p.gamma);
  return pressure_inverse(required, p);
}

double lambda2_of(ModelKind kind, double rho, double u, const ModelParams& p) {
  switch (kind) {
    case ModelKind::Arz:
      return u - p.gamma * std::pow(rho, p.gamma);
    case ModelKind::Mar:
      if (rho >= p.rho_star)
        throw std::domain_error("lambda2: rho at or above rho_star");
      if (rho <= 0.0) return u;
      return u - p.gamma * pressure(rho, p) * p.rho_star / (p.rho_star - rho);
    case ModelKind::Rarz:
      if (rho >= p.rho_star)
        throw std::domain_error("lambda2: rho at or above rho_star");
      return u - p.gamma * u * p.rho_star * (p.u_star - u) /
                     (p.u_star * (p.rho_star - rho));
  }
  return u;
}

double vacuum_velocity(ModelKind kind, double w, const ModelParams& p) {
  return kind == ModelKind::Rarz ? p.u_star : w;
}

Cons1 to_conserved(ModelKind kind, const Primitive& w, const ModelParams& p) {
  if (w.rho < 0.0 || (kind != ModelKind::Arz && w.rho >= p.rho_star))
    throw std::domain_error("to_conserved: rho outside [0, rho_star)");
  if (w.rho <= vacuum_density(p)) return Cons1(w.rho, 0.0);
  if (w.u < 0.0 && kind == ModelKind::Rarz)
    throw std::domain_error("to_conserved: negative velocity");
  return Cons1(w.rho, w.rho * advected(kind, w.rho, w.u, p));
}

Primitive to_primitive(ModelKind kind, const Cons1& q, const ModelParams& p) {
  if (!q.allFinite() || q[0] < 0.0)
    throw NumericError("to_primitive: undecodable conserved state");
  if (q[0] <= vacuum_density(p))
    return Primitive{q[0], vacuum_velocity(kind, q[1] / std::max(q[0], 1e-300), p)};
  if (q[1] < 0.0 && kind == ModelKind::Rarz)
    throw std::domain_error("to_primitive: negative momentum variable");
  return Primitive{q[0], velocity_on_curve(kind, q[1] / q[0], q[0], p)};
}

FdSeries fd_curve(ModelKind kind, double w, std::span<const double> rho_samples,
                  const ModelParams& p) {
  if (!(w > 0.0)) throw std::domain_error("fd_curve: w must be > 0");
  FdSeries series{kind, w, {}};
  series.points.reserve(rho_samples.size());
  double prev = 0.0;
  for (double rho : rho_samples) {
    if (!series.points.empty() && rho <= prev)
      throw std::domain_error("fd_curve: rho samples must be strictly increasing");
    double u = velocity_on_curve(kind, w, rho, p);
    if (kind == ModelKind::Arz) u = std::max(u, 0.0);
    series.points.push_back(FdPoint{rho, u, rho * u});
    prev = rho;
  }
  return series;
}

}  // namespace rarz
