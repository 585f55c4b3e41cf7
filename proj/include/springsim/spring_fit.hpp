#pragma once

// Energy accounting for the knee motor and the closed-form parallel-spring
// fit. Energy is modelled as resistive loss, E = K * sum(tau_i^2) * dt; with a
// spring (mu, alpha0) in parallel the motor only supplies
// tau_i - mu*(alpha_i - alpha0). Minimising that quadratic in (mu, alpha0)
// has a closed form in four sums over the log, which is what fit_optimal and
// SlidingWindow evaluate.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "springsim/kernels.hpp"
#include "springsim/trajectory.hpp"

namespace springsim {

struct EnergyModel {
  double k_motor = 1.0;  // J per (N*m)^2*s

  void validate() const;
};

class FitError : public std::runtime_error {
 public:
  enum class Kind { kDegenerateTrajectory, kTooFewSamples };

  FitError(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct FitDiagnostics {
  double mu_star = 0.0;
  // Empty when the optimal stiffness is zero: the equilibrium is then
  // irrelevant to the energy and the closed form divides by zero.
  std::optional<double> alpha0_star;
  double residual_energy = 0.0;
  double grad_mu = 0.0;
  double grad_alpha0 = 0.0;
  bool physical = true;  // mu_star >= 0
  std::size_t samples = 0;

  // The fitted spring; a zero-stiffness spring when alpha0 is undefined.
  SpringParams spring() const { return {mu_star, alpha0_star.value_or(0.0)}; }
};

struct EnergyGradient {
  double d_mu = 0.0;
  double d_alpha0 = 0.0;
};

double energy(const Trajectory& traj, const EnergyModel& model);

double energy_with_spring(const Trajectory& traj, const SpringParams& spring,
                          const EnergyModel& model);

// Partial derivatives of energy_with_spring with respect to mu and alpha0.
EnergyGradient stationarity_residual(const Trajectory& traj, const SpringParams& spring,
                                     const EnergyModel& model);

// Throws FitError::kDegenerateTrajectory when the angle variance is below
// 1e-12 * max(1, mean(alpha^2)).
FitDiagnostics fit_optimal(const Trajectory& traj, const EnergyModel& model);

namespace detail {

struct ClosedFormSpring {
  double mu = 0.0;
  std::optional<double> alpha0;
  double mean_alpha = 0.0;
};

// Closed-form optimum from moment sums taken on alpha - shift.
ClosedFormSpring solve_from_moments(const kernels::MomentSums& m, double shift);

// Fills residual energy, gradients and the physicality flag for `solution`
// evaluated on `samples`.
FitDiagnostics diagnose(std::span<const Sample> samples, double dt,
                        const ClosedFormSpring& solution, const EnergyModel& model);

}  // namespace detail

}  // namespace springsim
