#include "springsim/leg_model.hpp"

#include <algorithm>
#include <cmath>

namespace springsim {
namespace {

void check_theta(double theta) {
  if (!(theta > 0.0 && theta <= std::numbers::pi)) {
    throw KinematicsError(KinematicsError::Kind::kOutOfRange,
                          "knee angle " + std::to_string(theta) + " outside (0, pi]");
  }
}

}  // namespace

void LegGeometry::validate() const {
  if (!(link_len > 0.0) || !(mass > 0.0) || !(g >= 0.0)) {
    throw std::invalid_argument("LegGeometry: link_len and mass must be positive, g non-negative");
  }
}

double fk_height(const LegGeometry& geom, double theta) {
  check_theta(theta);
  return 2.0 * geom.link_len * std::sin(0.5 * theta);
}

double ik_angle(const LegGeometry& geom, double h) {
  if (!(h > 0.0 && h <= geom.max_height())) {
    throw KinematicsError(KinematicsError::Kind::kUnreachable,
                          "height " + std::to_string(h) + " m is unreachable");
  }
  return 2.0 * std::asin(std::min(1.0, h / geom.max_height()));
}

double jacobian(const LegGeometry& geom, double theta) {
  check_theta(theta);
  return geom.link_len * std::cos(0.5 * theta);
}

double jacobian_rate(const LegGeometry& geom, double theta) {
  check_theta(theta);
  return -0.5 * geom.link_len * std::sin(0.5 * theta);
}

double gravity_knee_torque(const LegGeometry& geom, double theta) {
  return geom.mass * geom.g * jacobian(geom, theta);
}

SineConvention parse_sine_convention(const std::string& text) {
  if (text == "period") return SineConvention::kPeriod;
  if (text == "paper-literal") return SineConvention::kPaperLiteral;
  throw std::invalid_argument("unknown sine convention '" + text +
                              "' (expected period or paper-literal)");
}

std::string to_string(SineConvention c) {
  return c == SineConvention::kPeriod ? "period" : "paper-literal";
}

double reference_omega(double t_period, SineConvention convention) {
  if (!(t_period > 0.0)) throw std::invalid_argument("reference period must be positive");
  return convention == SineConvention::kPeriod ? 2.0 * std::numbers::pi / t_period
                                               : 1.0 / t_period;
}

double reference_height(double h0, double amplitude, double t_period, double t,
                        SineConvention convention) {
  return h0 + amplitude * std::sin(reference_omega(t_period, convention) * t);
}

double reference_height_rate(double h0, double amplitude, double t_period, double t,
                             SineConvention convention) {
  (void)h0;
  const double w = reference_omega(t_period, convention);
  return amplitude * w * std::cos(w * t);
}

}  // namespace springsim
