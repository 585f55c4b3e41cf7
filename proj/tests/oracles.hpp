#pragma once

// Test-only reference computations, written independently of the library's
// closed form and kernels.

#include <cmath>
#include <functional>
#include <span>

#include "springsim/trajectory.hpp"

namespace springsim::oracle {

// K * sum (tau - mu (alpha - alpha0))^2 * dt, accumulated in long double.
inline double spring_energy(std::span<const Sample> s, double dt, double mu, double alpha0,
                            double k = 1.0) {
  long double acc = 0.0L;
  for (const auto& x : s) {
    const long double r = static_cast<long double>(x.tau) -
                          static_cast<long double>(mu) * (static_cast<long double>(x.alpha) - alpha0);
    acc += r * r;
  }
  return static_cast<double>(static_cast<long double>(k) * acc * dt);
}

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
};

// Least-squares line tau ~ slope*alpha + intercept from the 2x2 normal
// equations on mean-centred data (two passes, long double).
inline Line least_squares(std::span<const Sample> s) {
  const long double n = static_cast<long double>(s.size());
  long double ma = 0, mt = 0;
  for (const auto& x : s) {
    ma += x.alpha;
    mt += x.tau;
  }
  ma /= n;
  mt /= n;
  long double saa = 0, sat = 0;
  for (const auto& x : s) {
    saa += (x.alpha - ma) * (x.alpha - ma);
    sat += (x.alpha - ma) * (x.tau - mt);
  }
  // [n 0; 0 saa] [c; m] = [0; sat] in centred coordinates
  const long double slope = sat / saa;
  return {static_cast<double>(slope), static_cast<double>(mt - slope * ma)};
}

// Central difference of f at x with step h.
inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace springsim::oracle
