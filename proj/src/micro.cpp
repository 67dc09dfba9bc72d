#include "rarz/micro.hpp"

#include <algorithm>
#include <cmath>

namespace rarz {

namespace {

constexpr double kBoundSlack = 1e-12;  // roundoff slack on the velocity bounds
constexpr int kMaxHalvings = 20;

double quad_factor(double vel, double star, double gamma) {
  return gamma * vel * (star - vel) / star;
}

void check_finite_1d(std::span<const Vehicle1D> platoon) {
  for (const Vehicle1D& c : platoon)
    if (!std::isfinite(c.x) || !std::isfinite(c.u))
      throw NumericError("non-finite vehicle state");
}

void check_finite_2d(std::span<const Vehicle2D> platoon) {
  for (const Vehicle2D& c : platoon)
    if (!std::isfinite(c.x) || !std::isfinite(c.y) || !std::isfinite(c.u) ||
        !std::isfinite(c.v))
      throw NumericError("non-finite vehicle state");
}

bool admissible_1d(std::span<const Vehicle1D> platoon, const MicroParams& mp) {
  for (std::size_t i = 0; i + 1 < platoon.size(); ++i)
    if (platoon[i + 1].x - platoon[i].x <= mp.d) return false;
  for (const Vehicle1D& c : platoon) {
    if (!std::isfinite(c.x) || !std::isfinite(c.u)) return false;
    if (c.u < -kBoundSlack * mp.u_star || c.u > mp.u_star * (1.0 + kBoundSlack))
      return false;
  }
  return true;
}

bool admissible_2d(std::span<const Vehicle2D> platoon, const MicroParams& mp) {
  for (std::size_t i = 0; i + 1 < platoon.size(); ++i)
    if (platoon[i + 1].x - platoon[i].x <= 0.0) return false;
  for (const Vehicle2D& c : platoon) {
    if (!std::isfinite(c.x) || !std::isfinite(c.y) || !std::isfinite(c.u) ||
        !std::isfinite(c.v))
      return false;
    if (c.u < -kBoundSlack * mp.u_star || c.u > mp.u_star * (1.0 + kBoundSlack))
      return false;
    if (c.v < -kBoundSlack * mp.v_star || c.v > mp.v_star * (1.0 + kBoundSlack))
      return false;
  }
  return true;
}

void clamp_1d(std::vector<Vehicle1D>& platoon, const MicroParams& mp) {
  for (Vehicle1D& c : platoon) c.u = std::clamp(c.u, 0.0, mp.u_star);
}

void clamp_2d(std::vector<Vehicle2D>& platoon, const MicroParams& mp) {
  for (Vehicle2D& c : platoon) {
    c.u = std::clamp(c.u, 0.0, mp.u_star);
    c.v = std::clamp(c.v, 0.0, mp.v_star);
  }
}

std::vector<Vehicle1D> rk4_step_1d(const std::vector<Vehicle1D>& y, double dt,
                                   const MicroParams& mp) {
  const std::size_t n = y.size();
  const auto eval = [&](const std::vector<Vehicle1D>& state) {
    check_finite_1d(state);
    return micro_rhs_1d(state, mp);
  };
  const auto advance = [&](const std::vector<Vehicle1D>& base,
                           const std::vector<double>& acc, double h) {
    std::vector<Vehicle1D> out(n);
    for (std::size_t i = 0; i < n; ++i)
      out[i] = Vehicle1D{y[i].x + h * base[i].u, y[i].u + h * acc[i]};
    return out;
  };
  const std::vector<double> k1 = eval(y);
  const std::vector<Vehicle1D> s2 = advance(y, k1, 0.5 * dt);
  const std::vector<double> k2 = eval(s2);
  const std::vector<Vehicle1D> s3 = advance(s2, k2, 0.5 * dt);
  const std::vector<double> k3 = eval(s3);
  const std::vector<Vehicle1D> s4 = advance(s3, k3, dt);
  const std::vector<double> k4 = eval(s4);
  std::vector<Vehicle1D> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].x = y[i].x + dt / 6.0 * (y[i].u + 2.0 * s2[i].u + 2.0 * s3[i].u + s4[i].u);
    out[i].u = y[i].u + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

std::vector<Vehicle2D> rk4_step_2d(const std::vector<Vehicle2D>& y, double dt,
                                   const MicroParams& mp) {
  const std::size_t n = y.size();
  const auto eval = [&](const std::vector<Vehicle2D>& state) {
    check_finite_2d(state);
    return micro_rhs_2d(state, mp);
  };
  const auto advance = [&](const std::vector<Vehicle2D>& base,
                           const std::vector<Accel2D>& acc, double h) {
    std::vector<Vehicle2D> out(n);
    for (std::size_t i = 0; i < n; ++i)
      out[i] = Vehicle2D{y[i].x + h * base[i].u, y[i].y + h * base[i].v,
                         y[i].u + h * acc[i].au, y[i].v + h * acc[i].av};
    return out;
  };
  const std::vector<Accel2D> k1 = eval(y);
  const std::vector<Vehicle2D> s2 = advance(y, k1, 0.5 * dt);
  const std::vector<Accel2D> k2 = eval(s2);
  const std::vector<Vehicle2D> s3 = advance(s2, k2, 0.5 * dt);
  const std::vector<Accel2D> k3 = eval(s3);
  const std::vector<Vehicle2D> s4 = advance(s3, k3, dt);
  const std::vector<Accel2D> k4 = eval(s4);
  std::vector<Vehicle2D> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].x = y[i].x + dt / 6.0 * (y[i].u + 2.0 * s2[i].u + 2.0 * s3[i].u + s4[i].u);
    out[i].y = y[i].y + dt / 6.0 * (y[i].v + 2.0 * s2[i].v + 2.0 * s3[i].v + s4[i].v);
    out[i].u = y[i].u + dt / 6.0 * (k1[i].au + 2.0 * k2[i].au + 2.0 * k3[i].au + k4[i].au);
    out[i].v = y[i].v + dt / 6.0 * (k1[i].av + 2.0 * k2[i].av + 2.0 * k3[i].av + k4[i].av);
  }
  return out;
}

// Advance by dt, splitting the step in two whenever the result is
// inadmissible, up to kMaxHalvings deep.
template <class State, class StepFn, class OkFn>
void advance_adaptive(State& y, double dt, const StepFn& step, const OkFn& ok,
                      int depth = 0) {
  State candidate;
  bool good = true;
  try {
    candidate = step(y, dt);
    good = ok(candidate);
  } catch (const NumericError&) {
    good = false;
  }
  if (good) {
    y = std::move(candidate);
    return;
  }
  if (depth >= kMaxHalvings)
    throw NumericError("integrate: persistent spacing/bound violation");
  advance_adaptive(y, 0.5 * dt, step, ok, depth + 1);
  advance_adaptive(y, 0.5 * dt, step, ok, depth + 1);
}

}  // namespace

void MicroParams::validate(int dim) const {
  if (!(gamma > 0.0)) throw std::domain_error("gamma must be > 0");
  if (!(u_star > 0.0)) throw std::domain_error("u_star must be > 0");
  if (!(d > 0.0)) throw std::domain_error("d must be > 0");
  if (!(dx_len > 0.0)) throw std::domain_error("dx_len must be > 0");
  if (dim == 2) {
    if (!(v_star > 0.0)) throw std::domain_error("v_star must be > 0");
    if (!(dy_len > 0.0) || !(d_x > 0.0) || !(d_y > 0.0))
      throw std::domain_error("2D geometry parameters must be > 0");
  }
}

std::vector<double> micro_rhs_1d(std::span<const Vehicle1D> platoon,
                                 const MicroParams& mp) {
  const std::size_t n = platoon.size();
  std::vector<double> acc(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double gap = platoon[i + 1].x - platoon[i].x - mp.d;
    if (gap <= 0.0)
      throw NumericError("collision between vehicles " + std::to_string(i) + " and " +
                         std::to_string(i + 1));
    acc[i] = quad_factor(platoon[i].u, mp.u_star, mp.gamma) *
             (platoon[i + 1].u - platoon[i].u) / gap;
  }
  return acc;
}

std::vector<Accel2D> micro_rhs_2d(std::span<const Vehicle2D> platoon,
                                  const MicroParams& mp) {
  const std::size_t n = platoon.size();
  const double dl = mp.dl_value();
  std::vector<Accel2D> acc(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Vehicle2D& self = platoon[i];
    const Vehicle2D& lead = platoon[i + 1];
    const double dx = lead.x - self.x;
    const double dy = lead.y - self.y;
    double ady = std::abs(dy);
    if (ady < 1e-9 * mp.dy_len) ady = mp.d_y;  // lateral limit convention
    const double du = lead.u - self.u;
    const double dv = lead.v - self.v;

    double bracket = 0.0;
    if (du != 0.0) {
      const double den = dx - dl / ady;
      if (den <= 0.0)
        throw NumericError("collision (longitudinal) at vehicle " + std::to_string(i));
      bracket += du / den;
    }
    if (dv != 0.0) {
      const double den = dy - dl * dy / (dx * ady);
      if (den <= 0.0)
        throw NumericError("collision (lateral) at vehicle " + std::to_string(i));
      bracket += dv / den;
    }
    acc[i].au = quad_factor(self.u, mp.u_star, mp.gamma) * bracket;
    acc[i].av = quad_factor(self.v, mp.v_star, mp.gamma) * bracket;
  }
  return acc;
}

Trajectory1D integrate(std::vector<Vehicle1D> platoon, const MicroParams& mp,
                       double dt, long n_steps, long store_every) {
  mp.validate(1);
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (store_every < 1) store_every = 1;
  if (!admissible_1d(platoon, mp)) throw NumericError("inadmissible initial platoon");

  Trajectory1D traj;
  traj.times.push_back(0.0);
  traj.states.push_back(platoon);
  const auto step = [&](const std::vector<Vehicle1D>& y, double h) {
    return rk4_step_1d(y, h, mp);
  };
  const auto ok = [&](const std::vector<Vehicle1D>& y) { return admissible_1d(y, mp); };
  for (long s = 1; s <= n_steps; ++s) {
    advance_adaptive(platoon, dt, step, ok);
    clamp_1d(platoon, mp);
    if (s % store_every == 0 || s == n_steps) {
      traj.times.push_back(dt * static_cast<double>(s));
      traj.states.push_back(platoon);
    }
  }
  return traj;
}

Trajectory2D integrate_2d(std::vector<Vehicle2D> platoon, const MicroParams& mp,
                          double dt, long n_steps, long store_every) {
  mp.validate(2);
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (store_every < 1) store_every = 1;
  if (!admissible_2d(platoon, mp)) throw NumericError("inadmissible initial platoon");

  Trajectory2D traj;
  traj.times.push_back(0.0);
  traj.states.push_back(platoon);
  const auto step = [&](const std::vector<Vehicle2D>& y, double h) {
    return rk4_step_2d(y, h, mp);
  };
  const auto ok = [&](const std::vector<Vehicle2D>& y) { return admissible_2d(y, mp); };
  for (long s = 1; s <= n_steps; ++s) {
    advance_adaptive(platoon, dt, step, ok);
    clamp_2d(platoon, mp);
    if (s % store_every == 0 || s == n_steps) {
      traj.times.push_back(dt * static_cast<double>(s));
      traj.states.push_back(platoon);
    }
  }
  return traj;
}

std::vector<double> micro_w(std::span<const Vehicle1D> platoon, const MicroParams& mp) {
  std::vector<double> w;
  for (std::size_t i = 0; i + 1 < platoon.size(); ++i) {
    const double tau = (platoon[i + 1].x - platoon[i].x - mp.d) / mp.dx_len;
    if (tau <= 0.0) throw NumericError("micro_w: non-positive specific volume");
    w.push_back(detail::pseudo_capped(platoon[i].u, mp.u_star) *
                std::pow(tau, -mp.gamma));
  }
  return w;
}

MicroW2D micro_w_2d(std::span<const Vehicle2D> platoon, const MicroParams& mp) {
  MicroW2D out;
  for (std::size_t i = 0; i + 1 < platoon.size(); ++i) {
    const double dx = platoon[i + 1].x - platoon[i].x;
    const double ady = std::abs(platoon[i + 1].y - platoon[i].y);
    const double tau = (dx * ady - mp.d_x * mp.d_y) / (mp.dx_len * mp.dy_len);
    if (tau <= 0.0) throw NumericError("micro_w_2d: non-positive specific volume");
    const double pr = std::pow(tau, -mp.gamma);
    out.w.push_back(detail::pseudo_capped(platoon[i].u, mp.u_star) * pr);
    out.sigma.push_back(detail::pseudo_capped(platoon[i].v, mp.v_star) * pr);
  }
  return out;
}

namespace {

std::vector<double> max_drift(const std::vector<std::vector<double>>& samples) {
  std::vector<double> drift(samples.front().size(), 0.0);
  for (const std::vector<double>& w : samples)
    for (std::size_t i = 0; i < drift.size(); ++i) {
      const double ref = std::max(std::abs(samples.front()[i]), 1e-300);
      drift[i] = std::max(drift[i], std::abs(w[i] - samples.front()[i]) / ref);
    }
  return drift;
}

}  // namespace

std::vector<double> w_drift(const Trajectory1D& traj, const MicroParams& mp) {
  std::vector<std::vector<double>> samples;
  samples.reserve(traj.states.size());
  for (const auto& s : traj.states) samples.push_back(micro_w(s, mp));
  return max_drift(samples);
}

Drift2D w_sigma_drift(const Trajectory2D& traj, const MicroParams& mp) {
  std::vector<std::vector<double>> ws, sigmas;
  for (const auto& s : traj.states) {
    MicroW2D sample = micro_w_2d(s, mp);
    ws.push_back(std::move(sample.w));
    sigmas.push_back(std::move(sample.sigma));
  }
  return Drift2D{max_drift(ws), max_drift(sigmas)};
}

}  // namespace rarz
