#include "rarz/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace rarz {

namespace {

namespace fs = std::filesystem;

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

MetaList param_meta(const ExperimentConfig& c, bool with_v_star) {
  MetaList meta;
  meta.emplace_back("command", to_string(c.command));
  meta.emplace_back("rho_star", format_double(c.params.rho_star));
  meta.emplace_back("u_star", format_double(c.params.u_star));
  if (with_v_star) meta.emplace_back("v_star", format_double(c.params.v_star));
  meta.emplace_back("gamma", format_double(c.params.gamma));
  return meta;
}

void append_1d_meta(MetaList& meta, const ExperimentConfig& c) {
  meta.emplace_back("model", to_string(c.model));
  meta.emplace_back("rho_left", format_double(c.left.rho));
  meta.emplace_back("u_left", format_double(c.left.u));
  meta.emplace_back("rho_right", format_double(c.right.rho));
  meta.emplace_back("u_right", format_double(c.right.u));
  meta.emplace_back("n_cells", std::to_string(c.n_cells));
  meta.emplace_back("t_end", format_double(c.t_end));
}

// Relative mass drift corrected for the constant boundary fluxes of an
// outflow run whose waves stay inside the domain.
double corrected_mass_drift(const RunStats1D& stats, const ExperimentConfig& c) {
  double correction = 0.0;
  if (c.boundary == Boundary::Outflow)
    correction = c.t_end * (c.right.rho * c.right.u - c.left.rho * c.left.u);
  return (stats.mass_final - stats.mass_initial + correction) / stats.mass_initial;
}

struct Profile1d {
  Eigen::ArrayXd x, rho, u;
};

Profile1d exact_for(const ExperimentConfig& c) {
  Profile1d prof;
  prof.x = cell_centers(c.x_min, c.x_max, c.n_cells);
  const RiemannFan fan = solve_riemann(c.model, c.left, c.right, c.params);
  exact_profile(fan, c.x_split, c.t_end, prof.x, prof.rho, prof.u, c.params);
  return prof;
}

MetaList run_sim1d(const ExperimentConfig& c, const fs::path& out_dir, Scheme1d scheme,
                   Snapshot1D* final_snapshot) {
  SchemeConfig sc{scheme, c.cfl, c.t_end, c.params, c.model};
  const Domain1D domain{c.x_min, c.x_max, c.n_cells, c.boundary};
  const auto initial = PiecewiseConstant1D::riemann(c.left, c.right, c.x_split);
  RunStats1D stats;
  std::vector<Snapshot1D> snaps = run_1d(initial, sc, domain, c.snapshot_times, &stats);

  MetaList meta = param_meta(c, false);
  append_1d_meta(meta, c);
  meta.emplace_back("scheme", to_string(scheme));
  meta.emplace_back("cfl", format_double(c.cfl));
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    MetaList m = meta;
    m.emplace_back("time", format_double(snaps[k].time));
    const bool last = k + 1 == snaps.size();
    const std::string name = last ? c.label + "_" + to_string(scheme) + ".csv"
                                  : c.label + "_" + to_string(scheme) + "_t" +
                                        std::to_string(k) + ".csv";
    write_profile_csv(out_dir / name, m, {"x", "rho", "u"},
                      {snaps[k].x, snaps[k].rho, snaps[k].u});
  }

  const Profile1d exact = exact_for(c);
  const Snapshot1D& last = snaps.back();
  const double dx = (c.x_max - c.x_min) / c.n_cells;
  const std::string tag = to_string(scheme);
  MetaList metrics;
  metrics.emplace_back("steps_" + tag, std::to_string(stats.steps));
  metrics.emplace_back("l1_rho_" + tag, format_double(l1_distance(last.rho, exact.rho, dx)));
  metrics.emplace_back("l1_u_" + tag, format_double(l1_distance(last.u, exact.u, dx)));
  metrics.emplace_back("mass_drift_" + tag, format_double(corrected_mass_drift(stats, c)));
  metrics.emplace_back("rho_min_" + tag, format_double(stats.rho_min));
  metrics.emplace_back("rho_max_" + tag, format_double(stats.rho_max));
  metrics.emplace_back("u_min_" + tag, format_double(stats.u_min));
  metrics.emplace_back("u_max_" + tag, format_double(stats.u_max));

  const RiemannFan fan = solve_riemann(c.model, c.left, c.right, c.params);
  if (fan.pattern == WavePattern::ContactOnly) {
    const int width =
        transition_width(last.x, last.rho, fan.middle.rho, fan.right.rho, 0.01, c.x_min);
    metrics.emplace_back("contact_width_cells_" + tag, std::to_string(width));
  }
  if (final_snapshot) *final_snapshot = last;
  return metrics;
}

// Exact split-subsystem profile along a cut at time t.
Eigen::ArrayXd exact_cut_rho(const CutProfile& cut, double t, const ModelParams& p_local) {
  const SplitFan3 fan = solve_split(cut.left_local, cut.right_local, p_local);
  Eigen::ArrayXd rho(cut.coords.size());
  for (Eigen::Index k = 0; k < cut.coords.size(); ++k) {
    const double xi = t > 0.0
                          ? (cut.coords[k] - cut.split) / t
                          : (cut.coords[k] < cut.split ? -1e300 : 1e300);
    rho[k] = sample_split(fan, xi, p_local).rho;
  }
  return rho;
}

MetaList run_sim2d(const ExperimentConfig& c, const fs::path& out_dir, Flux2dKind kind,
                   Field2D* out_field) {
  const Scheme2dConfig sc{kind, c.cfl, c.t_end, c.params};
  const Domain2D domain{c.x_min, c.x_max, c.y_min, c.y_max, c.nx, c.ny,
                        c.x_split, c.y_split, BoundarySet::uniform(c.boundary)};
  const QuadrantInit initial{c.q1, c.q2, c.q3, c.q4};
  RunStats2D stats;
  const Field2D field = run_2d(initial, sc, domain, &stats);

  const std::string tag = to_string(kind);
  write_field(out_dir / (c.label + "_" + tag + "_rho.dat"), field, field.rho);
  write_field(out_dir / (c.label + "_" + tag + "_u.dat"), field, field.u);
  write_field(out_dir / (c.label + "_" + tag + "_v.dat"), field, field.v);

  MetaList metrics;
  metrics.emplace_back("steps_" + tag, std::to_string(stats.steps));
  // raw change; outflow boundaries exchange mass with the outside
  metrics.emplace_back(
      "mass_change_" + tag,
      format_double((stats.mass_final - stats.mass_initial) / stats.mass_initial));
  metrics.emplace_back("rho_min_" + tag, format_double(stats.rho_min));
  metrics.emplace_back("rho_max_" + tag, format_double(stats.rho_max));
  metrics.emplace_back("u_min_" + tag, format_double(stats.u_min));
  metrics.emplace_back("u_max_" + tag, format_double(stats.u_max));
  metrics.emplace_back("v_min_" + tag, format_double(stats.v_min));
  metrics.emplace_back("v_max_" + tag, format_double(stats.v_max));

  const ModelParams p_swapped = swap_axes(c.params);
  for (const CutProfile& cut : midline_cuts(c, field)) {
    const ModelParams& pl = cut.swapped ? p_swapped : c.params;
    const SplitFan3 fan = solve_split(cut.left_local, cut.right_local, pl);
    const Eigen::ArrayXd exact = exact_cut_rho(cut, c.t_end, pl);
    const double dcell = (cut.coords[1] - cut.coords[0]);
    metrics.emplace_back("cut_" + cut.name + "_pattern_" + tag,
                         to_string(fan.base.pattern));
    metrics.emplace_back("cut_" + cut.name + "_l1_" + tag,
                         format_double(l1_distance(cut.rho, exact, dcell)));
    // contact sharpness: count cells between the plateaus adjacent to the
    // contact, right of the nonlinear wave
    double x_from = cut.coords[0];
    if (fan.base.pattern == WavePattern::ShockContact)
      x_from = cut.split + fan.base.shock_speed * c.t_end + 2.0 * dcell;
    else if (fan.base.pattern != WavePattern::ContactOnly)
      x_from = cut.split + fan.base.fan_tail * c.t_end + 2.0 * dcell;
    const int width = transition_width(cut.coords, cut.rho, fan.base.middle.rho,
                                       fan.base.right.rho, 0.01, x_from);
    metrics.emplace_back("cut_" + cut.name + "_width_" + tag, std::to_string(width));
  }
  if (out_field) *out_field = field;
  return metrics;
}

}  // namespace

Eigen::ArrayXd cell_centers(double x_min, double x_max, int n) {
  Eigen::ArrayXd x(n);
  const double dx = (x_max - x_min) / n;
  for (int i = 0; i < n; ++i) x[i] = x_min + (i + 0.5) * dx;
  return x;
}

std::vector<CutProfile> midline_cuts(const ExperimentConfig& c, const Field2D& f) {
  std::vector<CutProfile> cuts(4);
  const int nx = static_cast<int>(f.x.size());
  const int ny = static_cast<int>(f.y.size());
  const double dx = (c.x_max - c.x_min) / nx;
  const double dy = (c.y_max - c.y_min) / ny;
  const auto row_at = [&](double y) {
    return std::clamp(static_cast<int>((y - c.y_min) / dy), 0, ny - 1);
  };
  const auto col_at = [&](double x) {
    return std::clamp(static_cast<int>((x - c.x_min) / dx), 0, nx - 1);
  };

  const int j_lo = row_at(0.5 * (c.y_min + c.y_split));
  cuts[0] = CutProfile{"x_lower", c.q3, c.q4, f.x, f.rho.row(j_lo).transpose(),
                       c.x_split, false};
  const int j_hi = row_at(0.5 * (c.y_split + c.y_max));
  cuts[1] = CutProfile{"x_upper", c.q2, c.q1, f.x, f.rho.row(j_hi).transpose(),
                       c.x_split, false};
  const int i_lo = col_at(0.5 * (c.x_min + c.x_split));
  cuts[2] = CutProfile{"y_left", swap_axes(c.q3), swap_axes(c.q2), f.y,
                       f.rho.col(i_lo), c.y_split, true};
  const int i_hi = col_at(0.5 * (c.x_split + c.x_max));
  cuts[3] = CutProfile{"y_right", swap_axes(c.q4), swap_axes(c.q1), f.y,
                       f.rho.col(i_hi), c.y_split, true};
  return cuts;
}

void exact_profile(const RiemannFan& fan, double x_split, double t,
                   const Eigen::ArrayXd& x, Eigen::ArrayXd& rho, Eigen::ArrayXd& u,
                   const ModelParams& p) {
  rho.resize(x.size());
  u.resize(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double xi =
        t > 0.0 ? (x[k] - x_split) / t : (x[k] < x_split ? -1e300 : 1e300);
    const Primitive w = sample(fan, xi, p);
    rho[k] = w.rho;
    u[k] = w.u;
  }
}

double l1_distance(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b, double dx) {
  return (a - b).abs().sum() * dx;
}

int transition_width(const Eigen::ArrayXd& x, const Eigen::ArrayXd& rho, double plateau_a,
                     double plateau_b, double delta, double x_from) {
  const double lo = std::min(plateau_a, plateau_b) + delta;
  const double hi = std::max(plateau_a, plateau_b) - delta;
  if (lo >= hi) return 0;
  int count = 0;
  for (Eigen::Index k = 0; k < rho.size(); ++k)
    if (x[k] >= x_from && rho[k] > lo && rho[k] < hi) ++count;
  return count;
}

MetaList cmd_fd(const ExperimentConfig& c, const std::filesystem::path& out_dir) {
  std::vector<double> gammas = c.fd_gammas;
  if (gammas.empty()) gammas.push_back(c.params.gamma);

  // uniform density grid plus a final sample pinned near the jam density so
  // the congestion limit u -> 0 is visible in the output
  const int n = c.fd_samples;
  std::vector<double> rho(static_cast<std::size_t>(n));
  for (int k = 0; k + 1 < n; ++k)
    rho[static_cast<std::size_t>(k)] =
        c.params.rho_star * static_cast<double>(k + 1) / static_cast<double>(n);
  rho.back() = c.params.rho_star * (1.0 - 1e-9);

  int files = 0;
  for (ModelKind kind : c.fd_models)
    for (double w : c.fd_w)
      for (double gamma : gammas) {
        ModelParams params = c.params;
        params.gamma = gamma;
        const FdSeries series = fd_curve(kind, w, rho, params);
        Eigen::ArrayXd r(n), u(n), q(n);
        for (int k = 0; k < n; ++k) {
          r[k] = series.points[static_cast<std::size_t>(k)].rho;
          u[k] = series.points[static_cast<std::size_t>(k)].u;
          q[k] = series.points[static_cast<std::size_t>(k)].flow;
        }
        MetaList meta = param_meta(c, false);
        meta.emplace_back("model", to_string(kind));
        meta.emplace_back("w", format_double(w));
        meta.emplace_back("gamma", format_double(gamma));
        const std::string name = c.label + "_" + to_string(kind) + "_w" + short_num(w) +
                                 "_g" + short_num(gamma) + ".csv";
        write_profile_csv(out_dir / name, meta, {"rho", "u", "q"}, {r, u, q});
        ++files;
      }
  MetaList metrics{{"files", std::to_string(files)}};
  write_metrics(out_dir / (c.label + "_metrics.txt"), metrics);
  return metrics;
}

MetaList cmd_riemann(const ExperimentConfig& c, const std::filesystem::path& out_dir) {
  const RiemannFan fan = solve_riemann(c.model, c.left, c.right, c.params);
  const Profile1d prof = exact_for(c);

  MetaList meta = param_meta(c, false);
  append_1d_meta(meta, c);
  meta.emplace_back("time", format_double(c.t_end));
  write_profile_csv(out_dir / (c.label + "_exact.csv"), meta, {"x", "rho", "u"},
                    {prof.x, prof.rho, prof.u});

  MetaList metrics;
  metrics.emplace_back("pattern", to_string(fan.pattern));
  metrics.emplace_back("rho_middle", format_double(fan.middle.rho));
  metrics.emplace_back("u_middle", format_double(fan.middle.u));
  metrics.emplace_back("contact_speed", format_double(fan.contact_speed));
  if (fan.pattern == WavePattern::ShockContact)
    metrics.emplace_back("shock_speed", format_double(fan.shock_speed));
  if (fan.pattern == WavePattern::RarefactionContact ||
      fan.pattern == WavePattern::VacuumFan) {
    metrics.emplace_back("fan_head", format_double(fan.fan_head));
    metrics.emplace_back("fan_tail", format_double(fan.fan_tail));
  }
  write_metrics(out_dir / (c.label + "_metrics.txt"), metrics);
  return metrics;
}

MetaList cmd_sim1d(const ExperimentConfig& c, const std::filesystem::path& out_dir) {
  MetaList metrics = run_sim1d(c, out_dir, c.scheme1d, nullptr);
  write_metrics(out_dir / (c.label + "_metrics.txt"), metrics);
  return metrics;
}

MetaList cmd_sim2d(const ExperimentConfig& c, const std::filesystem::path& out_dir) {
  MetaList metrics = run_sim2d(c, out_dir, c.scheme2d, nullptr);
  write_metrics(out_dir / (c.label + "_metrics.txt"), metrics);
  return metrics;
}

MetaList cmd_micro(const ExperimentConfig& c, const std::filesystem::path& out_dir) {
  MetaList metrics;
  if (c.micro_dim == 1) {
    std::vector<Vehicle1D> platoon;
    for (std::size_t i = 0; i < c.x_list.size(); ++i)
      platoon.push_back(Vehicle1D{c.x_list[i], c.u_list[i]});
    const Trajectory1D traj =
        integrate(platoon, c.micro, c.micro_dt, c.micro_steps, c.store_every);

    const std::size_t samples = traj.times.size();
    const std::size_t nveh = platoon.size();
    Eigen::ArrayXd t(samples * nveh), id(samples * nveh), x(samples * nveh),
        u(samples * nveh);
    std::size_t row = 0;
    for (std::size_t s = 0; s < samples; ++s)
      for (std::size_t i = 0; i < nveh; ++i, ++row) {
        t[static_cast<Eigen::Index>(row)] = traj.times[s];
        id[static_cast<Eigen::Index>(row)] = static_cast<double>(i);
        x[static_cast<Eigen::Index>(row)] = traj.states[s][i].x;
        u[static_cast<Eigen::Index>(row)] = traj.states[s][i].u;
      }
    MetaList meta = param_meta(c, true);
    meta.emplace_back("dim", "1");
    meta.emplace_back("dt", format_double(c.micro_dt));
    meta.emplace_back("n_steps", std::to_string(c.micro_steps));
    write_profile_csv(out_dir / (c.label + "_trajectory.csv"), meta,
                      {"t", "vehicle", "x", "u"}, {t, id, x, u});

    const std::vector<double> drift = w_drift(traj, c.micro);
    metrics.emplace_back("w_drift_max",
                         format_double(*std::max_element(drift.begin(), drift.end())));
  } else {
    std::vector<Vehicle2D> platoon;
    for (std::size_t i = 0; i < c.x_list.size(); ++i)
      platoon.push_back(Vehicle2D{c.x_list[i], c.y_list[i], c.u_list[i], c.v_list[i]});
    const Trajectory2D traj =
        integrate_2d(platoon, c.micro, c.micro_dt, c.micro_steps, c.store_every);

    const std::size_t samples = traj.times.size();
    const std::size_t nveh = platoon.size();
    const std::size_t rows = samples * nveh;
    Eigen::ArrayXd t(rows), id(rows), x(rows), y(rows), u(rows), v(rows);
    std::size_t row = 0;
    for (std::size_t s = 0; s < samples; ++s)
      for (std::size_t i = 0; i < nveh; ++i, ++row) {
        const Eigen::Index r = static_cast<Eigen::Index>(row);
        t[r] = traj.times[s];
        id[r] = static_cast<double>(i);
        x[r] = traj.states[s][i].x;
        y[r] = traj.states[s][i].y;
        u[r] = traj.states[s][i].u;
        v[r] = traj.states[s][i].v;
      }
    MetaList meta = param_meta(c, true);
    meta.emplace_back("dim", "2");
    meta.emplace_back("dt", format_double(c.micro_dt));
    meta.emplace_back("n_steps", std::to_string(c.micro_steps));
    write_profile_csv(out_dir / (c.label + "_trajectory.csv"), meta,
                      {"t", "vehicle", "x", "y", "u", "v"}, {t, id, x, y, u, v});

    const Drift2D drift = w_sigma_drift(traj, c.micro);
    metrics.emplace_back(
        "w_drift_max",
        format_double(*std::max_element(drift.w.begin(), drift.w.end())));
    metrics.emplace_back(
        "sigma_drift_max",
        format_double(*std::max_element(drift.sigma.begin(), drift.sigma.end())));
  }
  write_metrics(out_dir / (c.label + "_metrics.txt"), metrics);
  return metrics;
}

MetaList cmd_compare(const ExperimentConfig& c, const std::filesystem::path& out_dir) {
  MetaList metrics;
  if (!c.compare_2d) {
    MetaList godunov = run_sim1d(c, out_dir, Scheme1d::Godunov, nullptr);
    MetaList hybrid = run_sim1d(c, out_dir, Scheme1d::Hybrid, nullptr);
    metrics.insert(metrics.end(), godunov.begin(), godunov.end());
    metrics.insert(metrics.end(), hybrid.begin(), hybrid.end());

    const Profile1d exact = exact_for(c);
    MetaList meta = param_meta(c, false);
    append_1d_meta(meta, c);
    meta.emplace_back("time", format_double(c.t_end));
    write_profile_csv(out_dir / (c.label + "_exact.csv"), meta, {"x", "rho", "u"},
                      {exact.x, exact.rho, exact.u});
  } else {
    MetaList hll = run_sim2d(c, out_dir, Flux2dKind::Hll, nullptr);
    MetaList hybrid = run_sim2d(c, out_dir, Flux2dKind::Hybrid, nullptr);
    metrics.insert(metrics.end(), hll.begin(), hll.end());
    metrics.insert(metrics.end(), hybrid.begin(), hybrid.end());
  }
  write_metrics(out_dir / (c.label + "_metrics.txt"), metrics);
  return metrics;
}

MetaList run_experiment(const ExperimentConfig& config,
                        const std::filesystem::path& out_dir) {
  switch (config.command) {
    case Command::Fd: return cmd_fd(config, out_dir);
    case Command::Riemann: return cmd_riemann(config, out_dir);
    case Command::Sim1d: return cmd_sim1d(config, out_dir);
    case Command::Sim2d: return cmd_sim2d(config, out_dir);
    case Command::Micro: return cmd_micro(config, out_dir);
    case Command::Compare: return cmd_compare(config, out_dir);
  }
  throw ConfigError("unknown command");
}

}  // namespace rarz
