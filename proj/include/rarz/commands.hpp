#pragma once

#include "rarz/io.hpp"

// Experiment drivers behind the CLI subcommands. Each writes its data files
// plus `<label>_metrics.txt` under out_dir and returns the metrics list.
// Outputs are deterministic: identical configs produce identical bytes.

namespace rarz {

MetaList cmd_fd(const ExperimentConfig& config, const std::filesystem::path& out_dir);
MetaList cmd_riemann(const ExperimentConfig& config, const std::filesystem::path& out_dir);
MetaList cmd_sim1d(const ExperimentConfig& config, const std::filesystem::path& out_dir);
MetaList cmd_sim2d(const ExperimentConfig& config, const std::filesystem::path& out_dir);
MetaList cmd_micro(const ExperimentConfig& config, const std::filesystem::path& out_dir);
MetaList cmd_compare(const ExperimentConfig& config, const std::filesystem::path& out_dir);

/// Dispatches on config.command.
MetaList run_experiment(const ExperimentConfig& config,
                        const std::filesystem::path& out_dir);

// Analysis helpers shared with the test suites.

Eigen::ArrayXd cell_centers(double x_min, double x_max, int n);

/// Exact self-similar solution at time t sampled on x (step function at
/// t = 0).
void exact_profile(const RiemannFan& fan, double x_split, double t,
                   const Eigen::ArrayXd& x, Eigen::ArrayXd& rho, Eigen::ArrayXd& u,
                   const ModelParams& p);

double l1_distance(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b, double dx);

/// Number of samples strictly between the two plateau values with margin
/// delta, restricted to x >= x_from.
int transition_width(const Eigen::ArrayXd& x, const Eigen::ArrayXd& rho, double plateau_a,
                     double plateau_b, double delta, double x_from);

/// One mid-line cut through a quadrant interface: the numerical density
/// along the cut plus the axis-local state pair whose split-Riemann fan is
/// the exact solution on it.
struct CutProfile {
  std::string name;                    // x_lower, x_upper, y_left, y_right
  Primitive2 left_local, right_local;  // normal velocity mapped to .u
  Eigen::ArrayXd coords;
  Eigen::ArrayXd rho;
  double split = 0.0;
  bool swapped = false;  // true for the vertical cuts
};

/// The four cuts halfway between each quadrant interface and the boundary.
std::vector<CutProfile> midline_cuts(const ExperimentConfig& config,
                                     const Field2D& field);

}  // namespace rarz
