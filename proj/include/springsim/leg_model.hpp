#pragma once

// Symmetric two-link leg on a vertical rail: hip directly above the foot,
// thigh and shin of equal length L. The interior knee angle theta is pi for a
// straight leg and tends to 0 fully folded; the hip height is
// h = 2 L sin(theta / 2).

#include <numbers>
#include <stdexcept>
#include <string>

namespace springsim {

class KinematicsError : public std::domain_error {
 public:
  enum class Kind { kOutOfRange, kUnreachable };

  KinematicsError(Kind kind, std::string message)
      : std::domain_error(std::move(message)), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct LegGeometry {
  double link_len = 0.28;  // m, thigh = shin
  double mass = 4.1;       // kg carried by the leg
  double g = 9.81;         // m/s^2

  void validate() const;
  double max_height() const { return 2.0 * link_len; }
};

double fk_height(const LegGeometry& geom, double theta);

double ik_angle(const LegGeometry& geom, double h);

// dh/dtheta = L cos(theta / 2).
double jacobian(const LegGeometry& geom, double theta);

// d2h/dtheta2 = -(L / 2) sin(theta / 2).
double jacobian_rate(const LegGeometry& geom, double theta);

// Knee torque that statically holds the load at h(theta): m g dh/dtheta.
// Positive torque extends the leg.
double gravity_knee_torque(const LegGeometry& geom, double theta);

// Knee flexion angle, the coordinate logged in trajectories and used for the
// spring: 0 for a straight leg, growing as the knee folds.
inline double flexion_from_interior(double theta) { return std::numbers::pi - theta; }
inline double interior_from_flexion(double alpha) { return std::numbers::pi - alpha; }

enum class SineConvention {
  kPeriod,        // h0 + A sin(2 pi t / T)
  kPaperLiteral,  // h0 + A sin(t / T)
};

SineConvention parse_sine_convention(const std::string& text);
std::string to_string(SineConvention c);

// Angular rate of the reference sine for a given T.
double reference_omega(double t_period, SineConvention convention);

double reference_height(double h0, double amplitude, double t_period, double t,
                        SineConvention convention = SineConvention::kPeriod);

double reference_height_rate(double h0, double amplitude, double t_period, double t,
                             SineConvention convention = SineConvention::kPeriod);

}  // namespace springsim
