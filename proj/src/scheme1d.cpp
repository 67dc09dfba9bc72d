#include "rarz/scheme1d.hpp"

#include <algorithm>
#include <cmath>

namespace rarz {

namespace {

constexpr double kStateCompareTol = 1e-12;  // componentwise relative

bool close_rel(double a, double b) {
  return std::abs(a - b) <= kStateCompareTol * std::max(std::abs(a), std::abs(b));
}

bool same_state(const Primitive& a, const Primitive& b) {
  return close_rel(a.rho, b.rho) && close_rel(a.u, b.u);
}

Primitive decode_cell(const Grid1D& grid, int j, const ModelParams& p, ModelKind kind) {
  try {
    return to_primitive(kind, grid.cells[static_cast<std::size_t>(j)], p);
  } catch (const std::exception& e) {
    throw NumericError("cell " + std::to_string(j) + " at t = " +
                       std::to_string(grid.time) + ": " + e.what());
  }
}

// Primitive states with one ghost layer on each side; index shifted by one.
std::vector<Primitive> extended_primitives(const Grid1D& grid, const ModelParams& p,
                                           ModelKind kind) {
  const int n = grid.n_cells;
  std::vector<Primitive> w(static_cast<std::size_t>(n) + 2);
  for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j) + 1] = decode_cell(grid, j, p, kind);
  if (grid.boundary == Boundary::Periodic) {
    w.front() = w[static_cast<std::size_t>(n)];
    w.back() = w[1];
  } else {
    w.front() = w[1];
    w.back() = w[static_cast<std::size_t>(n)];
  }
  return w;
}

}  // namespace

std::string to_string(Boundary b) {
  return b == Boundary::Outflow ? "outflow" : "periodic";
}

std::string to_string(Scheme1d s) {
  return s == Scheme1d::Godunov ? "godunov" : "hybrid";
}

Grid1D::Grid1D(double x_min_, double x_max_, int n_cells_, Boundary boundary_)
    : x_min(x_min_), x_max(x_max_), n_cells(n_cells_), boundary(boundary_) {
  if (n_cells < 1 || !(x_max > x_min))
    throw std::invalid_argument("Grid1D: empty domain");
  dx = (x_max - x_min) / n_cells;
  cells.assign(static_cast<std::size_t>(n_cells), Cons1::Zero());
}

double Grid1D::mass() const {
  double m = 0.0;
  for (const Cons1& q : cells) m += q[0];
  return m * dx;
}

double van_der_corput(std::uint64_t n) {
  double a = 0.0;
  double digit = 0.5;
  for (; n != 0; n >>= 1, digit *= 0.5)
    if (n & 1u) a += digit;
  return a;
}

double cfl_dt(const Grid1D& grid, double cfl, const ModelParams& p, double dt_cap,
              ModelKind kind) {
  if (grid.n_cells < 1) throw std::invalid_argument("cfl_dt: empty grid");
  double speed = 0.0;
  for (int j = 0; j < grid.n_cells; ++j) {
    const Primitive w = decode_cell(grid, j, p, kind);
    const double l2 = w.rho <= vacuum_density(p) ? w.u : lambda2_of(kind, w.rho, w.u, p);
    speed = std::max({speed, std::abs(w.u), std::abs(l2)});
  }
  if (speed <= 0.0) return dt_cap;
  return std::min(dt_cap, cfl * grid.dx / speed);
}

void godunov_step(Grid1D& grid, double dt, const ModelParams& p, ModelKind kind) {
  const std::vector<Primitive> w = extended_primitives(grid, p, kind);
  const int n = grid.n_cells;
  std::vector<Cons1> f(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    f[static_cast<std::size_t>(i)] =
        interface_flux(kind, w[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(i) + 1], p);
  const double r = dt / grid.dx;
  for (int j = 0; j < n; ++j)
    grid.cells[static_cast<std::size_t>(j)] -=
        r * (f[static_cast<std::size_t>(j) + 1] - f[static_cast<std::size_t>(j)]);
  grid.time += dt;
}

void glimm_transport_substep(Grid1D& grid, double dt, VdcSampler& sampler,
                             const ModelParams& p, ModelKind kind) {
  const std::vector<Primitive> w = extended_primitives(grid, p, kind);
  for (const Primitive& s : w)
    if (s.u < 0.0)
      throw NumericError("glimm substep requires non-negative velocities");
  const double a = sampler.next();
  const double r = dt / grid.dx;
  for (int j = 0; j < grid.n_cells; ++j) {
    const Primitive& self = w[static_cast<std::size_t>(j) + 1];
    if (a > 0.0 && a < r * self.u) {
      const Primitive star = intermediate_state(kind, w[static_cast<std::size_t>(j)], self, p);
      grid.cells[static_cast<std::size_t>(j)] = to_conserved(kind, star, p);
    }
  }
  grid.time += 0.5 * dt;  // nominal half-step time
}

void hybrid_step(Grid1D& grid, double dt, VdcSampler& sampler, const ModelParams& p,
                 ModelKind kind) {
  const std::vector<Primitive> w_old = extended_primitives(grid, p, kind);
  const double t0 = grid.time;

  glimm_transport_substep(grid, dt, sampler, p, kind);

  const int n = grid.n_cells;
  std::vector<Primitive> w_half(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) w_half[static_cast<std::size_t>(j)] = decode_cell(grid, j, p, kind);

  const double r = dt / grid.dx;
  std::vector<Cons1> next(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const Primitive& half = w_half[static_cast<std::size_t>(j)];
    const Cons1 f_right = interface_flux(kind, half, w_old[static_cast<std::size_t>(j) + 2], p);

    const Primitive star = intermediate_state(kind, w_old[static_cast<std::size_t>(j)], half, p);
    Cons1 f_left;
    if (!same_state(star, half)) {
      // contact still outside the cell: the interface sees the cell value
      f_left = flux_conserved(to_conserved(kind, half, p), half.u);
    } else {
      f_left = interface_flux(kind, w_old[static_cast<std::size_t>(j)], half, p);
    }
    next[static_cast<std::size_t>(j)] =
        grid.cells[static_cast<std::size_t>(j)] - r * (f_right - f_left);
  }
  grid.cells = std::move(next);
  grid.time = t0 + dt;
}

Primitive PiecewiseConstant1D::at(double x) const {
  std::size_t i = 0;
  while (i < breakpoints.size() && x >= breakpoints[i]) ++i;
  return states.at(i);
}

Grid1D make_grid(const PiecewiseConstant1D& initial, const Domain1D& domain,
                 const ModelParams& p, ModelKind kind) {
  if (initial.states.size() != initial.breakpoints.size() + 1)
    throw std::invalid_argument("piecewise initial data: need breakpoints+1 states");
  Grid1D grid(domain.x_min, domain.x_max, domain.n_cells, domain.boundary);
  for (int j = 0; j < grid.n_cells; ++j)
    grid.cells[static_cast<std::size_t>(j)] = to_conserved(kind, initial.at(grid.x_center(j)), p);
  return grid;
}

Snapshot1D snapshot_of(const Grid1D& grid, const ModelParams& p, ModelKind kind) {
  Snapshot1D snap;
  snap.time = grid.time;
  snap.x.resize(grid.n_cells);
  snap.rho.resize(grid.n_cells);
  snap.u.resize(grid.n_cells);
  for (int j = 0; j < grid.n_cells; ++j) {
    const Primitive w = to_primitive(kind, grid.cells[static_cast<std::size_t>(j)], p);
    snap.x[j] = grid.x_center(j);
    snap.rho[j] = w.rho;
    snap.u[j] = w.u;
  }
  return snap;
}

std::vector<Snapshot1D> run_1d(const PiecewiseConstant1D& initial,
                               const SchemeConfig& config, const Domain1D& domain,
                               std::span<const double> snapshot_times,
                               RunStats1D* stats) {
  config.params.validate();
  if (!(config.cfl > 0.0) || config.cfl > 1.0)
    throw std::invalid_argument("cfl must lie in (0, 1]");
  if (config.t_end < 0.0) throw std::invalid_argument("t_end must be >= 0");

  Grid1D grid = make_grid(initial, domain, config.params, config.kind);
  VdcSampler sampler;

  const double t_dedupe = 1e-12 * std::max(1.0, config.t_end);
  std::vector<double> wanted(snapshot_times.begin(), snapshot_times.end());
  std::sort(wanted.begin(), wanted.end());
  for (double t : wanted)
    if (t < 0.0 || t > config.t_end)
      throw std::invalid_argument("snapshot time outside [0, t_end]");
  if (wanted.empty() || wanted.back() < config.t_end - t_dedupe)
    wanted.push_back(config.t_end);
  wanted.erase(std::unique(wanted.begin(), wanted.end(),
                           [&](double a, double b) { return b - a <= t_dedupe; }),
               wanted.end());

  const auto track = [&](RunStats1D* st) {
    if (!st) return;
    for (int j = 0; j < grid.n_cells; ++j) {
      const Primitive w = to_primitive(config.kind, grid.cells[static_cast<std::size_t>(j)],
                                       config.params);
      st->rho_min = std::min(st->rho_min, w.rho);
      st->rho_max = std::max(st->rho_max, w.rho);
      st->u_min = std::min(st->u_min, w.u);
      st->u_max = std::max(st->u_max, w.u);
    }
  };

  if (stats) stats->mass_initial = grid.mass();
  track(stats);

  std::vector<Snapshot1D> out;
  std::size_t next_snap = 0;
  const double t_eps = 1e-12 * std::max(1.0, config.t_end);
  while (next_snap < wanted.size() && wanted[next_snap] <= grid.time + t_eps) {
    out.push_back(snapshot_of(grid, config.params, config.kind));
    out.back().time = wanted[next_snap++];
  }

  while (next_snap < wanted.size()) {
    const double target = wanted[next_snap];
    const double dt = cfl_dt(grid, config.cfl, config.params, target - grid.time,
                             config.kind);
    if (!(dt > 0.0)) throw NumericError("run_1d: non-positive time step");
    if (config.scheme == Scheme1d::Godunov)
      godunov_step(grid, dt, config.params, config.kind);
    else
      hybrid_step(grid, dt, sampler, config.params, config.kind);
    if (stats) ++stats->steps;
    track(stats);
    if (grid.time >= target - t_eps) {
      grid.time = target;
      out.push_back(snapshot_of(grid, config.params, config.kind));
      ++next_snap;
    }
  }
  if (stats) stats->mass_final = grid.mass();
  return out;
}

}  // namespace rarz
