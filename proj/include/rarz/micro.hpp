#pragma once

#include "rarz/model.hpp"

// Follow-the-leader ODE model whose hydrodynamic limit is the macroscopic
// system: each follower accelerates with
//   du_i/dt = gamma u_i (u* - u_i)/u* * (u_{i+1} - u_i)/(x_{i+1} - x_i - d),
// which conserves w_i = utilde(u_i) p(tau_i) exactly along trajectories.
// Vehicles are ordered by position; the front-most vehicle is free and keeps
// constant velocity.

namespace rarz {

struct Vehicle1D {
  double x = 0.0;
  double u = 0.0;
  bool operator==(const Vehicle1D&) const = default;
};

struct Vehicle2D {
  double x = 0.0;
  double y = 0.0;
  double u = 0.0;
  double v = 0.0;
  bool operator==(const Vehicle2D&) const = default;
};

struct MicroParams {
  double gamma = 2.0;
  double u_star = 1.0;
  double v_star = 1.0;
  double d = 0.1;       // minimal admissible gap (1D)
  double dx_len = 0.1;  // effective vehicle length Delta X
  double dy_len = 0.1;  // effective vehicle width Delta Y
  double d_x = 0.1;     // directional minimal distances (2D)
  double d_y = 0.1;
  double dl = -1.0;     // product term of the 2D law; < 0 means d_x * d_y

  double dl_value() const { return dl < 0.0 ? d_x * d_y : dl; }
  /// rho* implied by the 1D geometry, rho* = Delta X / d.
  double rho_star_1d() const { return dx_len / d; }
  /// rho* implied by the 2D geometry, 1/rho* = d_x d_y / (Delta X Delta Y).
  double rho_star_2d() const { return dx_len * dy_len / (d_x * d_y); }
  void validate(int dim) const;
  bool operator==(const MicroParams&) const = default;
};

/// Accelerations of a 1D platoon (front vehicle last, acceleration 0).
/// Throws NumericError when any spacing drops to d or below.
std::vector<double> micro_rhs_1d(std::span<const Vehicle1D> platoon,
                                 const MicroParams& mp);

struct Accel2D {
  double au = 0.0;
  double av = 0.0;
};

/// Accelerations of a 2D chain (leader of i is i+1). Lateral gaps below
/// 1e-9 Delta Y are treated as exactly d_y, which reduces the law to the 1D
/// one when v = 0.
std::vector<Accel2D> micro_rhs_2d(std::span<const Vehicle2D> platoon,
                                  const MicroParams& mp);

struct Trajectory1D {
  std::vector<double> times;
  std::vector<std::vector<Vehicle1D>> states;
};

struct Trajectory2D {
  std::vector<double> times;
  std::vector<std::vector<Vehicle2D>> states;
};

/// Classical RK4. A step whose result violates spacing or velocity bounds is
/// retried as two half steps, up to 20 halvings deep.
Trajectory1D integrate(std::vector<Vehicle1D> platoon, const MicroParams& mp,
                       double dt, long n_steps, long store_every = 1);
Trajectory2D integrate_2d(std::vector<Vehicle2D> platoon, const MicroParams& mp,
                          double dt, long n_steps, long store_every = 1);

/// w_i(t) at one sample: utilde(u_i) tau_i^-gamma with
/// tau_i = (x_{i+1} - x_i - d)/Delta X; defined for the n-1 followers.
std::vector<double> micro_w(std::span<const Vehicle1D> platoon, const MicroParams& mp);

struct MicroW2D {
  std::vector<double> w;
  std::vector<double> sigma;
};
MicroW2D micro_w_2d(std::span<const Vehicle2D> platoon, const MicroParams& mp);

/// Per-follower max_t |w_i(t) - w_i(0)| / max(|w_i(0)|, tiny) over the
/// stored samples.
std::vector<double> w_drift(const Trajectory1D& traj, const MicroParams& mp);

struct Drift2D {
  std::vector<double> w;
  std::vector<double> sigma;
};
Drift2D w_sigma_drift(const Trajectory2D& traj, const MicroParams& mp);

}  // namespace rarz
