#pragma once

// Reductions over trajectory samples used by the fitter and the energy
// accounting. `serial` is the straightforward single-loop reference kept for
// testing and benchmarking; the unqualified functions are the production
// versions, parallelised with OpenMP over a fixed block partition. Partial
// sums are combined in block order, so the result depends only on the input,
// never on the thread count. Inputs shorter than one block take the serial
// path and are bit-identical to it.

#include <cstddef>
#include <span>

#include "springsim/trajectory.hpp"

namespace springsim::kernels {

inline constexpr std::size_t kBlockSize = 4096;

// Sufficient statistics of the closed-form fit on alpha shifted by `shift`:
// a = alpha - shift.
struct MomentSums {
  std::size_t n = 0;
  double sum_a = 0.0;
  double sum_t = 0.0;
  double sum_aa = 0.0;
  double sum_at = 0.0;

  MomentSums& operator+=(const MomentSums& o) {
    n += o.n;
    sum_a += o.sum_a;
    sum_t += o.sum_t;
    sum_aa += o.sum_aa;
    sum_at += o.sum_at;
    return *this;
  }
};

// With r_i = tau_i + mu*(alpha0 - alpha_i), the motor torque left over once
// the spring is fitted: sum r^2, sum r*(alpha0 - alpha), sum r.
struct ResidualSums {
  double sum_rr = 0.0;
  double sum_r_lever = 0.0;
  double sum_r = 0.0;

  ResidualSums& operator+=(const ResidualSums& o) {
    sum_rr += o.sum_rr;
    sum_r_lever += o.sum_r_lever;
    sum_r += o.sum_r;
    return *this;
  }
};

namespace serial {
double sum_tau_squared(std::span<const Sample> samples);
MomentSums moments(std::span<const Sample> samples, double shift);
ResidualSums residuals(std::span<const Sample> samples, double mu, double alpha0);
}  // namespace serial

double sum_tau_squared(std::span<const Sample> samples);
MomentSums moments(std::span<const Sample> samples, double shift);
ResidualSums residuals(std::span<const Sample> samples, double mu, double alpha0);

}  // namespace springsim::kernels
