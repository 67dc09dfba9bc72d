#include "rarz/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rarz {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

double parse_double(const std::string& key, const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: '" + s + "'");
  }
  if (pos != s.size()) throw ConfigError(key + ": trailing characters in '" + s + "'");
  return v;
}

long parse_long(const std::string& key, const std::string& s) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not an integer: '" + s + "'");
  }
  if (pos != s.size()) throw ConfigError(key + ": trailing characters in '" + s + "'");
  return v;
}

// Ordered key -> (value, line) store with consumption tracking.
class KvReader {
 public:
  explicit KvReader(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
      ++lineno;
      const std::string stripped = trim(line);
      if (stripped.empty() || stripped[0] == '#') continue;
      const std::size_t eq = stripped.find('=');
      if (eq == std::string::npos)
        throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
      const std::string key = trim(stripped.substr(0, eq));
      const std::string value = trim(stripped.substr(eq + 1));
      if (key.empty())
        throw ConfigError("line " + std::to_string(lineno) + ": empty key");
      if (entries_.count(key))
        throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
      entries_[key] = {value, lineno};
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::optional<std::string> take(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    consumed_.insert(key);
    return it->second.first;
  }

  std::string require(const std::string& key) {
    auto v = take(key);
    if (!v) throw ConfigError("missing required key '" + key + "'");
    return *v;
  }

  double take_double(const std::string& key, double fallback) {
    auto v = take(key);
    return v ? parse_double(key, *v) : fallback;
  }

  double require_double(const std::string& key) { return parse_double(key, require(key)); }

  long take_long(const std::string& key, long fallback) {
    auto v = take(key);
    return v ? parse_long(key, *v) : fallback;
  }

  std::vector<double> take_doubles(const std::string& key) {
    auto v = take(key);
    std::vector<double> out;
    if (!v) return out;
    for (const std::string& item : split_list(*v)) out.push_back(parse_double(key, item));
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : entries_)
      if (!consumed_.count(key))
        throw ConfigError("line " + std::to_string(value.second) + ": unknown key '" +
                          key + "' for this command");
  }

 private:
  std::map<std::string, std::pair<std::string, int>> entries_;
  std::set<std::string> consumed_;
};

void check(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw ConfigError(field + ": " + message);
}

void check_state_1d(const std::string& side, const Primitive& w, ModelKind kind,
                    const ModelParams& p) {
  check(w.rho >= 0.0, "rho_" + side, "density must be >= 0");
  if (kind != ModelKind::Arz)
    check(w.rho < p.rho_star, "rho_" + side, "density must be < rho_star");
  check(w.u >= 0.0, "u_" + side, "velocity must be >= 0");
  if (kind == ModelKind::Rarz)
    check(w.u <= p.u_star, "u_" + side, "velocity exceeds u_star");
}

void check_state_2d(const std::string& name, const Primitive2& w, const ModelParams& p) {
  check(w.rho >= 0.0, name + "_rho", "density must be >= 0");
  check(w.rho < p.rho_star, name + "_rho", "density must be < rho_star");
  check(w.u >= 0.0 && w.u <= p.u_star, name + "_u", "velocity outside [0, u_star]");
  check(w.v >= 0.0 && w.v <= p.v_star, name + "_v", "velocity outside [0, v_star]");
}

void read_common(KvReader& kv, ExperimentConfig& c, bool with_v_star,
                 bool with_rho_star = true) {
  c.label = kv.take("label").value_or(c.label);
  if (with_rho_star) c.params.rho_star = kv.take_double("rho_star", c.params.rho_star);
  c.params.u_star = kv.take_double("u_star", c.params.u_star);
  if (with_v_star) c.params.v_star = kv.take_double("v_star", c.params.v_star);
  c.params.gamma = kv.take_double("gamma", c.params.gamma);
  check(c.params.rho_star > 0.0, "rho_star", "must be > 0");
  check(c.params.u_star > 0.0, "u_star", "must be > 0");
  check(c.params.v_star > 0.0, "v_star", "must be > 0");
  check(c.params.gamma > 0.0, "gamma", "must be > 0");
}

void read_1d(KvReader& kv, ExperimentConfig& c, bool with_scheme) {
  if (auto m = kv.take("model")) {
    try {
      c.model = model_kind_from_string(*m);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("model: ") + e.what());
    }
  }
  c.left.rho = kv.require_double("rho_left");
  c.left.u = kv.require_double("u_left");
  c.right.rho = kv.require_double("rho_right");
  c.right.u = kv.require_double("u_right");
  c.x_min = kv.take_double("x_min", c.x_min);
  c.x_max = kv.take_double("x_max", c.x_max);
  c.x_split = kv.take_double("x_split", c.x_split);
  c.n_cells = static_cast<int>(kv.take_long("n_cells", c.n_cells));
  c.cfl = kv.take_double("cfl", c.cfl);
  c.t_end = kv.require_double("t_end");
  c.snapshot_times = kv.take_doubles("snapshot_times");
  if (auto b = kv.take("boundary")) {
    if (*b == "outflow") c.boundary = Boundary::Outflow;
    else if (*b == "periodic") c.boundary = Boundary::Periodic;
    else throw ConfigError("boundary: expected outflow|periodic, got '" + *b + "'");
  }
  if (with_scheme) {
    if (auto s = kv.take("scheme")) {
      if (*s == "godunov") c.scheme1d = Scheme1d::Godunov;
      else if (*s == "hybrid") c.scheme1d = Scheme1d::Hybrid;
      else throw ConfigError("scheme: expected godunov|hybrid, got '" + *s + "'");
    }
  }

  check_state_1d("left", c.left, c.model, c.params);
  check_state_1d("right", c.right, c.model, c.params);
  check(c.x_min < c.x_split && c.x_split < c.x_max, "x_split",
        "must lie strictly inside (x_min, x_max)");
  check(c.n_cells >= 1, "n_cells", "must be >= 1");
  check(c.t_end >= 0.0, "t_end", "must be >= 0");
  check(c.cfl > 0.0 && c.cfl <= 1.0, "cfl", "must lie in (0, 1]");
  const bool hybrid_used = !with_scheme || c.scheme1d == Scheme1d::Hybrid;
  if (hybrid_used)
    check(c.cfl <= 0.5, "cfl", "hybrid scheme requires cfl <= 0.5");
  for (double t : c.snapshot_times)
    check(t >= 0.0 && t <= c.t_end, "snapshot_times", "time outside [0, t_end]");
}

void read_2d(KvReader& kv, ExperimentConfig& c, bool with_scheme) {
  const auto read_quadrant = [&](const std::string& name, Primitive2& q) {
    q.rho = kv.require_double(name + "_rho");
    q.u = kv.require_double(name + "_u");
    q.v = kv.require_double(name + "_v");
  };
  read_quadrant("q1", c.q1);
  read_quadrant("q2", c.q2);
  read_quadrant("q3", c.q3);
  read_quadrant("q4", c.q4);
  c.x_min = kv.take_double("x_min", c.x_min);
  c.x_max = kv.take_double("x_max", c.x_max);
  c.x_split = kv.take_double("x_split", c.x_split);
  c.y_min = kv.take_double("y_min", c.y_min);
  c.y_max = kv.take_double("y_max", c.y_max);
  c.y_split = kv.take_double("y_split", c.y_split);
  c.nx = static_cast<int>(kv.take_long("nx", c.nx));
  c.ny = static_cast<int>(kv.take_long("ny", c.ny));
  c.cfl = kv.take_double("cfl", c.cfl);
  c.t_end = kv.require_double("t_end");
  if (auto b = kv.take("boundary")) {
    if (*b == "outflow") c.boundary = Boundary::Outflow;
    else if (*b == "periodic") c.boundary = Boundary::Periodic;
    else throw ConfigError("boundary: expected outflow|periodic, got '" + *b + "'");
  }
  if (with_scheme) {
    if (auto s = kv.take("scheme")) {
      if (*s == "hll") c.scheme2d = Flux2dKind::Hll;
      else if (*s == "godunov") c.scheme2d = Flux2dKind::ExactGodunov;
      else if (*s == "hybrid") c.scheme2d = Flux2dKind::Hybrid;
      else throw ConfigError("scheme: expected hll|godunov|hybrid, got '" + *s + "'");
    }
  }

  check_state_2d("q1", c.q1, c.params);
  check_state_2d("q2", c.q2, c.params);
  check_state_2d("q3", c.q3, c.params);
  check_state_2d("q4", c.q4, c.params);
  check(c.x_min < c.x_split && c.x_split < c.x_max, "x_split",
        "must lie strictly inside (x_min, x_max)");
  check(c.y_min < c.y_split && c.y_split < c.y_max, "y_split",
        "must lie strictly inside (y_min, y_max)");
  check(c.nx >= 1, "nx", "must be >= 1");
  check(c.ny >= 1, "ny", "must be >= 1");
  check(c.t_end >= 0.0, "t_end", "must be >= 0");
  check(c.cfl > 0.0 && c.cfl <= 1.0, "cfl", "must lie in (0, 1]");
  const bool hybrid_used = !with_scheme || c.scheme2d == Flux2dKind::Hybrid;
  if (hybrid_used)
    check(c.cfl <= 0.5, "cfl", "hybrid scheme requires cfl <= 0.5");
}

void read_fd(KvReader& kv, ExperimentConfig& c) {
  if (auto m = kv.take("models")) {
    c.fd_models.clear();
    for (const std::string& item : split_list(*m)) {
      try {
        c.fd_models.push_back(model_kind_from_string(item));
      } catch (const std::exception& e) {
        throw ConfigError(std::string("models: ") + e.what());
      }
    }
    check(!c.fd_models.empty(), "models", "list must not be empty");
  }
  if (kv.has("w_list")) c.fd_w = kv.take_doubles("w_list");
  c.fd_gammas = kv.take_doubles("gamma_list");
  c.fd_samples = static_cast<int>(kv.take_long("samples", c.fd_samples));
  check(!c.fd_w.empty(), "w_list", "list must not be empty");
  for (double w : c.fd_w) check(w > 0.0, "w_list", "values must be > 0");
  for (double g : c.fd_gammas) check(g > 0.0, "gamma_list", "values must be > 0");
  check(c.fd_samples >= 2, "samples", "must be >= 2");
}

void read_micro(KvReader& kv, ExperimentConfig& c) {
  c.micro_dim = static_cast<int>(kv.take_long("dim", c.micro_dim));
  check(c.micro_dim == 1 || c.micro_dim == 2, "dim", "must be 1 or 2");
  c.x_list = kv.take_doubles("x_list");
  c.u_list = kv.take_doubles("u_list");
  c.y_list = kv.take_doubles("y_list");
  c.v_list = kv.take_doubles("v_list");
  c.micro.gamma = c.params.gamma;
  c.micro.u_star = c.params.u_star;
  c.micro.v_star = c.params.v_star;
  c.micro.d = kv.take_double("d", c.micro.d);
  c.micro.dx_len = kv.take_double("dx_len", c.micro.dx_len);
  if (c.micro_dim == 2) {
    c.micro.dy_len = kv.take_double("dy_len", c.micro.dy_len);
    c.micro.d_x = kv.take_double("d_x", c.micro.d_x);
    c.micro.d_y = kv.take_double("d_y", c.micro.d_y);
    c.micro.dl = kv.take_double("dl", c.micro.dl);
  }
  c.micro_dt = kv.take_double("dt", c.micro_dt);
  c.micro_steps = kv.take_long("n_steps", c.micro_steps);
  c.store_every = kv.take_long("store_every", c.store_every);

  check(c.x_list.size() >= 2, "x_list", "need at least two vehicles");
  check(c.u_list.size() == c.x_list.size(), "u_list", "length must match x_list");
  if (c.micro_dim == 2) {
    check(c.y_list.size() == c.x_list.size(), "y_list", "length must match x_list");
    check(c.v_list.size() == c.x_list.size(), "v_list", "length must match x_list");
  } else {
    check(c.y_list.empty(), "y_list", "only valid for dim = 2");
    check(c.v_list.empty(), "v_list", "only valid for dim = 2");
  }
  check(c.micro.d > 0.0, "d", "must be > 0");
  check(c.micro.dx_len > 0.0, "dx_len", "must be > 0");
  check(c.micro_dt > 0.0, "dt", "must be > 0");
  check(c.micro_steps >= 1, "n_steps", "must be >= 1");
  check(c.store_every >= 1, "store_every", "must be >= 1");
  for (std::size_t i = 0; i + 1 < c.x_list.size(); ++i) {
    const double gap = c.x_list[i + 1] - c.x_list[i];
    if (c.micro_dim == 1)
      check(gap > c.micro.d, "x_list", "spacing must exceed d");
    else
      check(gap > 0.0, "x_list", "positions must be strictly increasing");
  }
  for (std::size_t i = 0; i < c.u_list.size(); ++i)
    check(c.u_list[i] >= 0.0 && c.u_list[i] <= c.params.u_star, "u_list",
          "velocity outside [0, u_star]");
  for (std::size_t i = 0; i < c.v_list.size(); ++i)
    check(c.v_list[i] >= 0.0 && c.v_list[i] <= c.params.v_star, "v_list",
          "velocity outside [0, v_star]");
}

bool looks_2d(const KvReader& kv) { return kv.has("q1_rho"); }

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Fd: return "fd";
    case Command::Riemann: return "riemann";
    case Command::Sim1d: return "sim1d";
    case Command::Sim2d: return "sim2d";
    case Command::Micro: return "micro";
    case Command::Compare: return "compare";
  }
  return "?";
}

Command command_from_string(const std::string& name) {
  if (name == "fd") return Command::Fd;
  if (name == "riemann") return Command::Riemann;
  if (name == "sim1d") return Command::Sim1d;
  if (name == "sim2d") return Command::Sim2d;
  if (name == "micro") return Command::Micro;
  if (name == "compare") return Command::Compare;
  throw ConfigError("command: unknown command '" + name + "'");
}

ExperimentConfig parse_config(const std::string& text) {
  KvReader kv(text);
  ExperimentConfig c;
  c.command = command_from_string(kv.require("command"));

  switch (c.command) {
    case Command::Fd:
      read_common(kv, c, false);
      read_fd(kv, c);
      break;
    case Command::Riemann:
      read_common(kv, c, false);
      read_1d(kv, c, false);
      break;
    case Command::Sim1d:
      read_common(kv, c, false);
      read_1d(kv, c, true);
      break;
    case Command::Sim2d:
      read_common(kv, c, true);
      read_2d(kv, c, true);
      break;
    case Command::Micro:
      // rho* is implied by the platoon geometry, not a free parameter here
      read_common(kv, c, true, false);
      read_micro(kv, c);
      break;
    case Command::Compare:
      if (looks_2d(kv)) {
        c.compare_2d = true;
        read_common(kv, c, true);
        read_2d(kv, c, false);
      } else {
        read_common(kv, c, false);
        read_1d(kv, c, false);
        check(c.cfl <= 0.5, "cfl", "hybrid scheme requires cfl <= 0.5");
      }
      break;
  }
  kv.finish();
  return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_double(values[i]);
  }
  return out;
}

void emit(std::string& out, const std::string& key, const std::string& value) {
  out += key + " = " + value + "\n";
}

void emit_common(std::string& out, const ExperimentConfig& c, bool with_v_star,
                 bool with_rho_star = true) {
  emit(out, "label", c.label);
  if (with_rho_star) emit(out, "rho_star", format_double(c.params.rho_star));
  emit(out, "u_star", format_double(c.params.u_star));
  if (with_v_star) emit(out, "v_star", format_double(c.params.v_star));
  emit(out, "gamma", format_double(c.params.gamma));
}

void emit_1d(std::string& out, const ExperimentConfig& c, bool with_scheme) {
  emit(out, "model", to_string(c.model));
  emit(out, "rho_left", format_double(c.left.rho));
  emit(out, "u_left", format_double(c.left.u));
  emit(out, "rho_right", format_double(c.right.rho));
  emit(out, "u_right", format_double(c.right.u));
  emit(out, "x_min", format_double(c.x_min));
  emit(out, "x_max", format_double(c.x_max));
  emit(out, "x_split", format_double(c.x_split));
  emit(out, "n_cells", std::to_string(c.n_cells));
  if (with_scheme) emit(out, "scheme", to_string(c.scheme1d));
  emit(out, "cfl", format_double(c.cfl));
  emit(out, "t_end", format_double(c.t_end));
  emit(out, "boundary", to_string(c.boundary));
  if (!c.snapshot_times.empty()) emit(out, "snapshot_times", join_doubles(c.snapshot_times));
}

void emit_2d(std::string& out, const ExperimentConfig& c, bool with_scheme) {
  const auto quadrant = [&](const std::string& name, const Primitive2& q) {
    emit(out, name + "_rho", format_double(q.rho));
    emit(out, name + "_u", format_double(q.u));
    emit(out, name + "_v", format_double(q.v));
  };
  quadrant("q1", c.q1);
  quadrant("q2", c.q2);
  quadrant("q3", c.q3);
  quadrant("q4", c.q4);
  emit(out, "x_min", format_double(c.x_min));
  emit(out, "x_max", format_double(c.x_max));
  emit(out, "x_split", format_double(c.x_split));
  emit(out, "y_min", format_double(c.y_min));
  emit(out, "y_max", format_double(c.y_max));
  emit(out, "y_split", format_double(c.y_split));
  emit(out, "nx", std::to_string(c.nx));
  emit(out, "ny", std::to_string(c.ny));
  if (with_scheme) emit(out, "scheme", to_string(c.scheme2d));
  emit(out, "cfl", format_double(c.cfl));
  emit(out, "t_end", format_double(c.t_end));
  emit(out, "boundary", to_string(c.boundary));
}

}  // namespace

std::string serialize(const ExperimentConfig& c) {
  std::string out;
  emit(out, "command", to_string(c.command));
  switch (c.command) {
    case Command::Fd: {
      emit_common(out, c, false);
      std::string models;
      for (std::size_t i = 0; i < c.fd_models.size(); ++i) {
        if (i) models += ", ";
        models += to_string(c.fd_models[i]);
      }
      emit(out, "models", models);
      emit(out, "w_list", join_doubles(c.fd_w));
      if (!c.fd_gammas.empty()) emit(out, "gamma_list", join_doubles(c.fd_gammas));
      emit(out, "samples", std::to_string(c.fd_samples));
      break;
    }
    case Command::Riemann:
      emit_common(out, c, false);
      emit_1d(out, c, false);
      break;
    case Command::Sim1d:
      emit_common(out, c, false);
      emit_1d(out, c, true);
      break;
    case Command::Sim2d:
      emit_common(out, c, true);
      emit_2d(out, c, true);
      break;
    case Command::Micro: {
      emit_common(out, c, true, false);
      emit(out, "dim", std::to_string(c.micro_dim));
      emit(out, "x_list", join_doubles(c.x_list));
      emit(out, "u_list", join_doubles(c.u_list));
      if (c.micro_dim == 2) {
        emit(out, "y_list", join_doubles(c.y_list));
        emit(out, "v_list", join_doubles(c.v_list));
      }
      emit(out, "d", format_double(c.micro.d));
      emit(out, "dx_len", format_double(c.micro.dx_len));
      if (c.micro_dim == 2) {
        emit(out, "dy_len", format_double(c.micro.dy_len));
        emit(out, "d_x", format_double(c.micro.d_x));
        emit(out, "d_y", format_double(c.micro.d_y));
        if (c.micro.dl >= 0.0) emit(out, "dl", format_double(c.micro.dl));
      }
      emit(out, "dt", format_double(c.micro_dt));
      emit(out, "n_steps", std::to_string(c.micro_steps));
      emit(out, "store_every", std::to_string(c.store_every));
      break;
    }
    case Command::Compare:
      if (c.compare_2d) {
        emit_common(out, c, true);
        emit_2d(out, c, false);
      } else {
        emit_common(out, c, false);
        emit_1d(out, c, false);
      }
      break;
  }
  return out;
}

}  // namespace rarz
