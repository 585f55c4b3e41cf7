#pragma once

// Reduced-order simulation of the knee on the vertical rail. The load m is a
// point mass moving with the hip height h(theta), so the knee sees the
// reflected inertia m h'^2 and
//
//   m h'^2 theta_dd + m h' h'' theta_d^2 = tau_motor + tau_spring - m g h'.
//
// The PD servo runs every physics step against a setpoint that is refreshed
// (and then held) at the control rate; the log samples the servo torque on
// control ticks.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "springsim/leg_model.hpp"
#include "springsim/trajectory.hpp"

namespace springsim {

class SimError : public std::runtime_error {
 public:
  enum class Kind { kInvalidConfig, kSingularConfiguration, kNonFiniteState, kLeftWorkspace };

  SimError(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct ControllerConfig {
  double kp = 300.0;           // N*m/rad
  double kd = 1.0;             // N*m*s/rad
  double control_rate = 100.0; // Hz

  void validate() const;
};

enum class InitialCondition {
  kStaticEquilibrium,  // at rest relative to the reference, sagged under the load
  kReference,          // exactly on theta_ref(0)
};

struct SimConfig {
  LegGeometry geom;
  ControllerConfig controller;
  double h0 = 0.2;         // m
  double amplitude = 0.05; // m
  double t_period = 1.88;  // s
  SineConvention sine_convention = SineConvention::kPeriod;
  double duration = 10.0;    // s
  double physics_dt = 1e-3;  // s
  std::optional<SpringParams> spring;
  std::optional<double> torque_limit;  // N*m
  InitialCondition initial_condition = InitialCondition::kStaticEquilibrium;

  void validate() const;
  // Physics steps per control tick.
  int substeps() const;
  // Control ticks over `duration`, i.e. logged samples.
  std::int64_t ticks() const;

  double reference_angle(double t) const;
  double reference_angle_rate(double t) const;
};

struct SimState {
  double t = 0.0;
  double theta = 0.0;
  double theta_dot = 0.0;
  double last_motor_torque = 0.0;
  double theta_ref = 0.0;  // held setpoint
  double theta_dot_ref = 0.0;
  std::int64_t tick = 0;  // physics steps taken
};

// Extension torque of the configured spring at interior angle theta; zero
// without a spring.
double spring_torque(const SimConfig& cfg, double theta);

// Angle at which PD, gravity and spring balance for a fixed setpoint.
double static_equilibrium(const SimConfig& cfg, double theta_ref);

SimState initial_state(const SimConfig& cfg);

// One physics step of semi-implicit Euler.
SimState step(const SimState& state, const SimConfig& cfg);

// duration * control_rate samples of (t, flexion angle, motor torque).
Trajectory run(const SimConfig& cfg);

}  // namespace springsim
