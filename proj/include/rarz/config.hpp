#pragma once

#include "rarz/micro.hpp"
#include "rarz/solver2d.hpp"

#include <optional>

// Flat `key = value` experiment configuration. Lines are `key = value`,
// blank, or `#`-comments; lists are comma separated. Unknown or
// command-inapplicable keys are rejected with the offending line; validation
// failures name the offending field. serialize() emits a canonical document
// that reparses to an equal config.

namespace rarz {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Command { Fd, Riemann, Sim1d, Sim2d, Micro, Compare };

std::string to_string(Command c);
Command command_from_string(const std::string& name);

struct ExperimentConfig {
  Command command = Command::Sim1d;
  std::string label = "experiment";
  ModelParams params;

  // 1D Riemann-type data
  ModelKind model = ModelKind::Rarz;
  Primitive left, right;
  double x_min = 0.0, x_max = 2.0, x_split = 1.0;
  int n_cells = 400;
  double cfl = 0.45;
  double t_end = 0.0;
  Scheme1d scheme1d = Scheme1d::Hybrid;
  Boundary boundary = Boundary::Outflow;
  std::vector<double> snapshot_times;

  // 2D quadrant data
  Primitive2 q1, q2, q3, q4;
  double y_min = 0.0, y_max = 2.0, y_split = 1.0;
  int nx = 200, ny = 200;
  Flux2dKind scheme2d = Flux2dKind::Hybrid;
  bool compare_2d = false;  // compare command: quadrant data present

  // fundamental diagrams
  std::vector<ModelKind> fd_models{ModelKind::Arz, ModelKind::Mar, ModelKind::Rarz};
  std::vector<double> fd_w{1.0};
  std::vector<double> fd_gammas;  // empty: use params.gamma
  int fd_samples = 512;

  // microscopic runs
  int micro_dim = 1;
  std::vector<double> x_list, u_list, y_list, v_list;
  MicroParams micro;
  double micro_dt = 1e-3;
  long micro_steps = 10000;
  long store_every = 100;

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);
std::string serialize(const ExperimentConfig& config);

/// Full-precision decimal form of a double ("%.17g" trimmed).
std::string format_double(double v);

}  // namespace rarz
