#include "rarz/solver2d.hpp"

#include <algorithm>
#include <cmath>

namespace rarz {

namespace {

constexpr double kStateCompareTol = 1e-12;

bool close_rel(double a, double b) {
  return std::abs(a - b) <= kStateCompareTol * std::max(std::abs(a), std::abs(b));
}

bool same_state(const Primitive2& a, const Primitive2& b) {
  return close_rel(a.rho, b.rho) && close_rel(a.u, b.u) && close_rel(a.v, b.v);
}

Primitive2 decode(const Cons2& q, const ModelParams& p) { return to_primitive2(q, p); }

Cons2 encode(const Primitive2& w, const ModelParams& p) { return to_conserved(w, p); }

// Axis-local physical flux (normal velocity is .u).
Cons2 local_flux(const Primitive2& w, const ModelParams& p) {
  if (w.rho <= vacuum_density(p)) return Cons2::Zero();
  return w.u * encode(w, p);
}

double lateral_on_curve(double v_left, double p_left, double p_at, const ModelParams& p) {
  return detail::pseudo_inverse(detail::pseudo_capped(v_left, p.v_star) * p_left / p_at,
                                p.v_star);
}

}  // namespace

std::string to_string(Flux2dKind k) {
  switch (k) {
    case Flux2dKind::Hll: return "hll";
    case Flux2dKind::ExactGodunov: return "godunov";
    case Flux2dKind::Hybrid: return "hybrid";
  }
  return "?";
}

ModelParams swap_axes(const ModelParams& p) {
  ModelParams s = p;
  std::swap(s.u_star, s.v_star);
  return s;
}

Primitive2 swap_axes(const Primitive2& w) { return Primitive2{w.rho, w.v, w.u}; }

Cons2 swap_axes(const Cons2& q) { return Cons2(q[0], q[2], q[1]); }

std::array<double, 3> split_eigenvalues_x(const Primitive2& w, const ModelParams& p) {
  const double l3 = lambda2_of(ModelKind::Rarz, w.rho, w.u, p);
  return {w.u, w.u, l3};
}

std::array<double, 3> split_eigenvalues_y(const Primitive2& w, const ModelParams& p) {
  return split_eigenvalues_x(swap_axes(w), swap_axes(p));
}

Primitive2 split_intermediate_x(const Primitive2& left, const Primitive2& right,
                                const ModelParams& p) {
  const SplitFan3 fan = solve_split(left, right, p);
  return Primitive2{fan.base.middle.rho, fan.base.middle.u, fan.v_middle};
}

Primitive2 split_intermediate_y(const Primitive2& left, const Primitive2& right,
                                const ModelParams& p) {
  return swap_axes(split_intermediate_x(swap_axes(left), swap_axes(right), swap_axes(p)));
}

SplitFan3 solve_split(const Primitive2& left, const Primitive2& right,
                      const ModelParams& p) {
  SplitFan3 fan;
  fan.base = solve_riemann(Primitive{left.rho, left.u}, Primitive{right.rho, right.u}, p);
  fan.v_left = left.v;
  fan.v_right = right.v;
  switch (fan.base.pattern) {
    case WavePattern::ContactOnly:
      fan.v_middle = left.v;  // middle density equals the left one
      break;
    case WavePattern::VacuumFan:
      fan.v_middle = p.v_star;
      break;
    default: {
      const double p_left = pressure(left.rho, p);
      fan.v_middle = lateral_on_curve(left.v, p_left,
                                      pressure(fan.base.middle.rho, p), p);
      break;
    }
  }
  return fan;
}

Primitive2 sample_split(const SplitFan3& fan, double xi, const ModelParams& p) {
  const auto [state, region] = sample_region(fan.base, xi, p);
  switch (region) {
    case FanRegion::Left:
      return Primitive2{state.rho, state.u, fan.v_left};
    case FanRegion::Fan: {
      if (state.rho <= vacuum_density(p))
        return Primitive2{state.rho, state.u, p.v_star};
      const double p_left = pressure(fan.base.left.rho, p);
      return Primitive2{state.rho, state.u,
                        lateral_on_curve(fan.v_left, p_left, pressure(state.rho, p), p)};
    }
    case FanRegion::Middle:
      return Primitive2{state.rho, state.u, fan.v_middle};
    case FanRegion::Right:
      return Primitive2{state.rho, state.u, fan.v_right};
  }
  return Primitive2{state.rho, state.u, fan.v_right};
}

Cons2 split_interface_flux(const Primitive2& left, const Primitive2& right,
                           const ModelParams& p) {
  return local_flux(sample_split(solve_split(left, right, p), 0.0, p), p);
}

namespace {

Cons2 hll_flux_local(const Primitive2& left, const Primitive2& right,
                     const ModelParams& p) {
  const double sl = std::min(lambda2_of(ModelKind::Rarz, left.rho, left.u, p),
                             lambda2_of(ModelKind::Rarz, right.rho, right.u, p));
  const double sr = std::max(left.u, right.u);
  if (sl >= 0.0) return local_flux(left, p);
  if (sr <= 0.0) return local_flux(right, p);
  const Cons2 ql = encode(left, p);
  const Cons2 qr = encode(right, p);
  const Cons2 fl = left.u * ql;
  const Cons2 fr = right.u * qr;
  return (sr * fl - sl * fr + sl * sr * (qr - ql)) / (sr - sl);
}

}  // namespace

Cons2 hll_flux(const Primitive2& left, const Primitive2& right, Axis axis,
               const ModelParams& p) {
  if (axis == Axis::X) return hll_flux_local(left, right, p);
  return swap_axes(hll_flux_local(swap_axes(left), swap_axes(right), swap_axes(p)));
}

Grid2D::Grid2D(double x_min_, double x_max_, double y_min_, double y_max_, int nx_,
               int ny_, BoundarySet boundary_)
    : x_min(x_min_), x_max(x_max_), y_min(y_min_), y_max(y_max_), nx(nx_), ny(ny_),
      boundary(boundary_) {
  if (nx < 1 || ny < 1 || !(x_max > x_min) || !(y_max > y_min))
    throw std::invalid_argument("Grid2D: empty domain");
  dx = (x_max - x_min) / nx;
  dy = (y_max - y_min) / ny;
  cells.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny),
               Cons2::Zero());
}

double Grid2D::mass() const {
  double m = 0.0;
  for (const Cons2& q : cells) m += q[0];
  return m * dx * dy;
}

double cfl_dt_2d(const Grid2D& grid, double cfl, const ModelParams& p, double dt_cap) {
  const ModelParams py = swap_axes(p);
  double speed = 0.0;
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      Primitive2 w;
      try {
        w = decode(grid.at(i, j), p);
      } catch (const std::exception& e) {
        throw NumericError("cell (" + std::to_string(i) + ", " + std::to_string(j) +
                           "): " + e.what());
      }
      speed = std::max({speed, std::abs(w.u), std::abs(w.v),
                        std::abs(lambda2_of(ModelKind::Rarz, w.rho, w.u, p)),
                        std::abs(lambda2_of(ModelKind::Rarz, w.rho, w.v, py))});
    }
  if (speed <= 0.0) return dt_cap;
  return std::min(dt_cap, cfl * std::min(grid.dx, grid.dy) / speed);
}

namespace {

// One conservative 1D update of an axis-local line (ghosts included). The
// interface flux comes from the supplied kind (hll or exact Godunov).
void conservative_sweep(std::vector<Cons2>& line, double dt_over_dx, Flux2dKind kind,
                        const ModelParams& p) {
  const int n = static_cast<int>(line.size()) - 2;
  std::vector<Primitive2> w(line.size());
  for (std::size_t k = 0; k < line.size(); ++k) w[k] = decode(line[k], p);
  std::vector<Cons2> f(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const Primitive2& wl = w[static_cast<std::size_t>(i)];
    const Primitive2& wr = w[static_cast<std::size_t>(i) + 1];
    f[static_cast<std::size_t>(i)] = kind == Flux2dKind::Hll
                                         ? hll_flux_local(wl, wr, p)
                                         : split_interface_flux(wl, wr, p);
  }
  for (int i = 0; i < n; ++i)
    line[static_cast<std::size_t>(i) + 1] -=
        dt_over_dx * (f[static_cast<std::size_t>(i) + 1] - f[static_cast<std::size_t>(i)]);
}

// Dimension-wise two-step hybrid update of an axis-local line; mirrors the
// 1D scheme with the lateral component carried through the split fans.
void hybrid_sweep(std::vector<Cons2>& line, double dt_over_dx, double a,
                  const ModelParams& p) {
  const int n = static_cast<int>(line.size()) - 2;
  std::vector<Primitive2> w_old(line.size());
  for (std::size_t k = 0; k < line.size(); ++k) w_old[k] = decode(line[k], p);
  for (const Primitive2& s : w_old)
    if (s.u < 0.0) throw NumericError("hybrid sweep requires non-negative velocities");

  std::vector<Cons2> q_half(static_cast<std::size_t>(n));
  std::vector<Primitive2> w_half(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Primitive2& self = w_old[static_cast<std::size_t>(i) + 1];
    if (a > 0.0 && a < dt_over_dx * self.u) {
      const SplitFan3 fan = solve_split(w_old[static_cast<std::size_t>(i)], self, p);
      const Primitive2 star{fan.base.middle.rho, fan.base.middle.u, fan.v_middle};
      w_half[static_cast<std::size_t>(i)] = star;
      q_half[static_cast<std::size_t>(i)] = encode(star, p);
    } else {
      w_half[static_cast<std::size_t>(i)] = self;
      q_half[static_cast<std::size_t>(i)] = line[static_cast<std::size_t>(i) + 1];
    }
  }

  for (int i = 0; i < n; ++i) {
    const Primitive2& half = w_half[static_cast<std::size_t>(i)];
    const Cons2 f_right =
        split_interface_flux(half, w_old[static_cast<std::size_t>(i) + 2], p);
    const SplitFan3 left_fan =
        solve_split(w_old[static_cast<std::size_t>(i)], half, p);
    const Primitive2 star{left_fan.base.middle.rho, left_fan.base.middle.u,
                          left_fan.v_middle};
    const Cons2 f_left = same_state(star, half)
                             ? local_flux(sample_split(left_fan, 0.0, p), p)
                             : local_flux(half, p);
    line[static_cast<std::size_t>(i) + 1] =
        q_half[static_cast<std::size_t>(i)] - dt_over_dx * (f_right - f_left);
  }
}

void run_line(std::vector<Cons2>& line, double dt_over_dx, Flux2dKind kind, double a,
              const ModelParams& p) {
  if (kind == Flux2dKind::Hybrid)
    hybrid_sweep(line, dt_over_dx, a, p);
  else
    conservative_sweep(line, dt_over_dx, kind, p);
}

void sweep_x(Grid2D& g, double dt, Flux2dKind kind, VdcSampler& sampler,
             const ModelParams& p) {
  const double a = kind == Flux2dKind::Hybrid ? sampler.next() : 0.0;
  const double r = dt / g.dx;
  std::vector<Cons2> line(static_cast<std::size_t>(g.nx) + 2);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) line[static_cast<std::size_t>(i) + 1] = g.at(i, j);
    line.front() = g.boundary.left == Boundary::Periodic ? g.at(g.nx - 1, j) : g.at(0, j);
    line.back() = g.boundary.right == Boundary::Periodic ? g.at(0, j) : g.at(g.nx - 1, j);
    run_line(line, r, kind, a, p);
    for (int i = 0; i < g.nx; ++i) g.at(i, j) = line[static_cast<std::size_t>(i) + 1];
  }
}

void sweep_y(Grid2D& g, double dt, Flux2dKind kind, VdcSampler& sampler,
             const ModelParams& p) {
  const double a = kind == Flux2dKind::Hybrid ? sampler.next() : 0.0;
  const ModelParams ps = swap_axes(p);
  const double r = dt / g.dy;
  std::vector<Cons2> line(static_cast<std::size_t>(g.ny) + 2);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j)
      line[static_cast<std::size_t>(j) + 1] = swap_axes(g.at(i, j));
    line.front() =
        swap_axes(g.boundary.bottom == Boundary::Periodic ? g.at(i, g.ny - 1) : g.at(i, 0));
    line.back() =
        swap_axes(g.boundary.top == Boundary::Periodic ? g.at(i, 0) : g.at(i, g.ny - 1));
    run_line(line, r, kind, a, ps);
    for (int j = 0; j < g.ny; ++j)
      g.at(i, j) = swap_axes(line[static_cast<std::size_t>(j) + 1]);
  }
}

}  // namespace

void strang_step(Grid2D& grid, double dt, Flux2dKind kind, VdcSampler& sampler,
                 const ModelParams& p) {
  sweep_x(grid, 0.5 * dt, kind, sampler, p);
  sweep_y(grid, dt, kind, sampler, p);
  sweep_x(grid, 0.5 * dt, kind, sampler, p);
  grid.time += dt;
}

Primitive2 QuadrantInit::at(double x, double y, double x_split, double y_split) const {
  if (x >= x_split) return y >= y_split ? q1 : q4;
  return y >= y_split ? q2 : q3;
}

Grid2D make_grid_2d(const QuadrantInit& initial, const Domain2D& domain,
                    const ModelParams& p) {
  Grid2D g(domain.x_min, domain.x_max, domain.y_min, domain.y_max, domain.nx, domain.ny,
           domain.boundary);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      g.at(i, j) = encode(
          initial.at(g.x_center(i), g.y_center(j), domain.x_split, domain.y_split), p);
  return g;
}

Field2D field_of(const Grid2D& grid, const ModelParams& p) {
  Field2D f;
  f.time = grid.time;
  f.x_min = grid.x_min;
  f.x_max = grid.x_max;
  f.y_min = grid.y_min;
  f.y_max = grid.y_max;
  f.x.resize(grid.nx);
  f.y.resize(grid.ny);
  for (int i = 0; i < grid.nx; ++i) f.x[i] = grid.x_center(i);
  for (int j = 0; j < grid.ny; ++j) f.y[j] = grid.y_center(j);
  f.rho.resize(grid.ny, grid.nx);
  f.u.resize(grid.ny, grid.nx);
  f.v.resize(grid.ny, grid.nx);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const Primitive2 w = decode(grid.at(i, j), p);
      f.rho(j, i) = w.rho;
      f.u(j, i) = w.u;
      f.v(j, i) = w.v;
    }
  return f;
}

Field2D run_2d(const QuadrantInit& initial, const Scheme2dConfig& config,
               const Domain2D& domain, RunStats2D* stats) {
  config.params.validate();
  if (!(config.cfl > 0.0) || config.cfl > 1.0)
    throw std::invalid_argument("cfl must lie in (0, 1]");
  if (config.t_end < 0.0) throw std::invalid_argument("t_end must be >= 0");

  Grid2D grid = make_grid_2d(initial, domain, config.params);
  VdcSampler sampler;

  const auto track = [&](RunStats2D* st) {
    if (!st) return;
    for (const Cons2& q : grid.cells) {
      const Primitive2 w = decode(q, config.params);
      st->rho_min = std::min(st->rho_min, w.rho);
      st->rho_max = std::max(st->rho_max, w.rho);
      st->u_min = std::min(st->u_min, w.u);
      st->u_max = std::max(st->u_max, w.u);
      st->v_min = std::min(st->v_min, w.v);
      st->v_max = std::max(st->v_max, w.v);
    }
  };

  if (stats) stats->mass_initial = grid.mass();
  track(stats);

  const double t_eps = 1e-12 * std::max(1.0, config.t_end);
  while (grid.time < config.t_end - t_eps) {
    const double dt =
        cfl_dt_2d(grid, config.cfl, config.params, config.t_end - grid.time);
    if (!(dt > 0.0)) throw NumericError("run_2d: non-positive time step");
    strang_step(grid, dt, config.scheme, sampler, config.params);
    if (stats) ++stats->steps;
    track(stats);
  }
  grid.time = config.t_end;
  if (stats) stats->mass_final = grid.mass();
  return field_of(grid, config.params);
}

}  // namespace rarz
