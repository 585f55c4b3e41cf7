#include "springsim/spring_fit.hpp"

#include <algorithm>
#include <cmath>

namespace springsim {

void EnergyModel::validate() const {
  if (!(k_motor > 0.0) || !std::isfinite(k_motor)) {
    throw std::invalid_argument("EnergyModel: k_motor must be positive");
  }
}

double energy(const Trajectory& traj, const EnergyModel& model) {
  return model.k_motor * kernels::sum_tau_squared(traj.samples()) * traj.dt();
}

double energy_with_spring(const Trajectory& traj, const SpringParams& spring,
                          const EnergyModel& model) {
  if (spring.mu == 0.0) return energy(traj, model);
  const auto r = kernels::residuals(traj.samples(), spring.mu, spring.alpha0);
  return model.k_motor * r.sum_rr * traj.dt();
}

EnergyGradient stationarity_residual(const Trajectory& traj, const SpringParams& spring,
                                     const EnergyModel& model) {
  const auto r = kernels::residuals(traj.samples(), spring.mu, spring.alpha0);
  const double scale = 2.0 * model.k_motor * traj.dt();
  return {scale * r.sum_r_lever, scale * r.sum_r * spring.mu};
}

namespace detail {

ClosedFormSpring solve_from_moments(const kernels::MomentSums& m, double shift) {
  if (m.n < 2) {
    throw FitError(FitError::Kind::kTooFewSamples, "spring fit needs at least two samples");
  }
  const double n = static_cast<double>(m.n);
  const double mean_a = m.sum_a / n;
  // mean of alpha^2 in unshifted coordinates
  const double mean_sq = (m.sum_aa + 2.0 * shift * m.sum_a) / n + shift * shift;
  const double variance = m.sum_aa / n - mean_a * mean_a;
  if (!(variance > 1e-12 * std::max(1.0, mean_sq))) {
    throw FitError(FitError::Kind::kDegenerateTrajectory,
                   "degenerate trajectory: knee angle variance " + std::to_string(variance) +
                       " is too small to determine a spring");
  }

  ClosedFormSpring out;
  out.mean_alpha = mean_a + shift;
  const double mu_num = m.sum_a * m.sum_t - n * m.sum_at;
  const double mu_den = m.sum_a * m.sum_a - n * m.sum_aa;
  const double cancel_scale = std::abs(m.sum_a * m.sum_t) + n * std::abs(m.sum_at);
  if (std::abs(mu_num) <= 1e-12 * cancel_scale) {
    out.mu = 0.0;
    return out;
  }
  out.mu = mu_num / mu_den;
  out.alpha0 = (m.sum_t * m.sum_aa - m.sum_at * m.sum_a) / mu_num + shift;
  return out;
}

FitDiagnostics diagnose(std::span<const Sample> samples, double dt,
                        const ClosedFormSpring& solution, const EnergyModel& model) {
  FitDiagnostics d;
  d.samples = samples.size();
  d.mu_star = solution.mu;
  d.alpha0_star = solution.alpha0;
  d.physical = solution.mu >= 0.0;
  const double alpha0 = solution.alpha0.value_or(solution.mean_alpha);
  const auto r = kernels::residuals(samples, solution.mu, alpha0);
  const double scale = model.k_motor * dt;
  d.residual_energy = scale * r.sum_rr;
  d.grad_mu = 2.0 * scale * r.sum_r_lever;
  d.grad_alpha0 = 2.0 * scale * r.sum_r * solution.mu;
  return d;
}

}  // namespace detail

FitDiagnostics fit_optimal(const Trajectory& traj, const EnergyModel& model) {
  model.validate();
  const auto samples = traj.samples();
  const double shift = samples.front().alpha;
  const auto solution = detail::solve_from_moments(kernels::moments(samples, shift), shift);
  return detail::diagnose(samples, traj.dt(), solution, model);
}

}  // namespace springsim
