#include "springsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace springsim {
namespace {

constexpr double kSingularJacobian = 1e-6;

[[noreturn]] void invalid(const std::string& what) {
  throw SimError(SimError::Kind::kInvalidConfig, what);
}

}  // namespace

void ControllerConfig::validate() const {
  if (!(kp > 0.0)) invalid("kp must be positive");
  if (!(kd >= 0.0)) invalid("kd must be non-negative");
  if (!(control_rate > 0.0)) invalid("control_rate must be positive");
}

void SimConfig::validate() const {
  try {
    geom.validate();
  } catch (const std::invalid_argument& e) {
    invalid(e.what());
  }
  controller.validate();
  if (!(duration > 0.0)) invalid("duration must be positive");
  if (!(physics_dt > 0.0)) invalid("physics_dt must be positive");
  if (physics_dt > 1.0 / controller.control_rate + 1e-15) {
    invalid("physics_dt must not exceed the control period");
  }
  const double ratio = 1.0 / (controller.control_rate * physics_dt);
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
    invalid("control period must be an integer multiple of physics_dt");
  }
  if (!(t_period > 0.0)) invalid("t_period must be positive");
  if (!(amplitude >= 0.0)) invalid("amplitude must be non-negative");
  if (!(h0 - amplitude > 0.0) || !(h0 + amplitude < geom.max_height())) {
    invalid("reference heights h0 +/- A must lie inside (0, 2L)");
  }
  if (spring && (!std::isfinite(spring->mu) || !std::isfinite(spring->alpha0))) {
    invalid("spring parameters must be finite");
  }
  if (torque_limit && !(*torque_limit > 0.0)) invalid("torque_limit must be positive");
}

int SimConfig::substeps() const {
  return static_cast<int>(std::lround(1.0 / (controller.control_rate * physics_dt)));
}

std::int64_t SimConfig::ticks() const {
  return std::llround(duration * controller.control_rate);
}

double SimConfig::reference_angle(double t) const {
  return ik_angle(geom, reference_height(h0, amplitude, t_period, t, sine_convention));
}

double SimConfig::reference_angle_rate(double t) const {
  const double theta = reference_angle(t);
  return reference_height_rate(h0, amplitude, t_period, t, sine_convention) /
         jacobian(geom, theta);
}

double spring_torque(const SimConfig& cfg, double theta) {
  if (!cfg.spring) return 0.0;
  return cfg.spring->mu * (flexion_from_interior(theta) - cfg.spring->alpha0);
}

namespace {

double servo_torque(const SimConfig& cfg, double theta_ref, double theta_dot_ref, double theta,
                    double theta_dot) {
  double tau = cfg.controller.kp * (theta_ref - theta) +
               cfg.controller.kd * (theta_dot_ref - theta_dot);
  if (cfg.torque_limit) tau = std::clamp(tau, -*cfg.torque_limit, *cfg.torque_limit);
  return tau;
}

}  // namespace

double static_equilibrium(const SimConfig& cfg, double theta_ref) {
  const auto net = [&](double theta) {
    return servo_torque(cfg, theta_ref, 0.0, theta, 0.0) + spring_torque(cfg, theta) -
           gravity_knee_torque(cfg.geom, theta);
  };
  double lo = 1e-9;
  double hi = std::numbers::pi - 1e-9;
  double f_lo = net(lo);
  if (f_lo * net(hi) > 0.0) {
    throw SimError(SimError::Kind::kInvalidConfig, "no static equilibrium inside (0, pi)");
  }
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double f_mid = net(mid);
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

SimState initial_state(const SimConfig& cfg) {
  cfg.validate();
  SimState s;
  s.theta_ref = cfg.reference_angle(0.0);
  s.theta_dot_ref = cfg.reference_angle_rate(0.0);
  s.theta = cfg.initial_condition == InitialCondition::kReference
                ? s.theta_ref
                : static_equilibrium(cfg, s.theta_ref);
  s.theta_dot = s.theta_dot_ref;
  return s;
}

SimState step(const SimState& state, const SimConfig& cfg) {
  SimState next = state;
  if (state.tick % cfg.substeps() == 0) {
    next.theta_ref = cfg.reference_angle(state.t);
    next.theta_dot_ref = cfg.reference_angle_rate(state.t);
  }
  const auto& geom = cfg.geom;
  if (!(state.theta > 0.0 && state.theta < std::numbers::pi)) {
    throw SimError(SimError::Kind::kLeftWorkspace,
                   "knee angle left (0, pi) at t=" + std::to_string(state.t));
  }
  const double hp = jacobian(geom, state.theta);
  if (std::abs(hp) < kSingularJacobian) {
    throw SimError(SimError::Kind::kSingularConfiguration,
                   "straight-leg singularity at t=" + std::to_string(state.t));
  }
  const double hpp = jacobian_rate(geom, state.theta);

  const double tau_motor =
      servo_torque(cfg, next.theta_ref, next.theta_dot_ref, state.theta, state.theta_dot);
  const double inertia = geom.mass * hp * hp;
  const double bias = geom.mass * hp * hpp * state.theta_dot * state.theta_dot;
  const double accel =
      (tau_motor + spring_torque(cfg, state.theta) - geom.mass * geom.g * hp - bias) / inertia;

  next.theta_dot = state.theta_dot + accel * cfg.physics_dt;
  next.theta = state.theta + next.theta_dot * cfg.physics_dt;
  next.last_motor_torque = tau_motor;
  next.tick = state.tick + 1;
  next.t = static_cast<double>(next.tick) * cfg.physics_dt;

  if (!std::isfinite(next.theta) || !std::isfinite(next.theta_dot)) {
    throw SimError(SimError::Kind::kNonFiniteState,
                   "non-finite state at t=" + std::to_string(next.t));
  }
  return next;
}

Trajectory run(const SimConfig& cfg) {
  SimState s = initial_state(cfg);
  const int substeps = cfg.substeps();
  const std::int64_t ticks = cfg.ticks();
  const double period = 1.0 / cfg.controller.control_rate;

  std::vector<Sample> log;
  log.reserve(static_cast<std::size_t>(ticks));
  for (std::int64_t k = 0; k < ticks; ++k) {
    const double theta = s.theta;
    for (int i = 0; i < substeps; ++i) {
      s = step(s, cfg);
      if (i == 0) {
        log.push_back({static_cast<double>(k) / cfg.controller.control_rate,
                       flexion_from_interior(theta), s.last_motor_torque});
      }
    }
  }
  return Trajectory(std::move(log), period);
}

}  // namespace springsim
