#include "springsim/kernels.hpp"

#include <algorithm>
#include <vector>

namespace springsim::kernels {

namespace serial {

double sum_tau_squared(std::span<const Sample> samples) {
  double acc = 0.0;
  for (const auto& s : samples) acc += s.tau * s.tau;
  return acc;
}

MomentSums moments(std::span<const Sample> samples, double shift) {
  MomentSums m;
  m.n = samples.size();
  for (const auto& s : samples) {
    const double a = s.alpha - shift;
    m.sum_a += a;
    m.sum_t += s.tau;
    m.sum_aa += a * a;
    m.sum_at += a * s.tau;
  }
  return m;
}

ResidualSums residuals(std::span<const Sample> samples, double mu, double alpha0) {
  ResidualSums r;
  for (const auto& s : samples) {
    const double lever = alpha0 - s.alpha;
    const double res = s.tau + mu * lever;
    r.sum_rr += res * res;
    r.sum_r_lever += res * lever;
    r.sum_r += res;
  }
  return r;
}

}  // namespace serial

namespace {

// Evaluates `kernel` on every block in parallel and folds the partials in
// block order.
template <typename Result, typename Kernel>
Result blocked_reduce(std::span<const Sample> samples, Kernel kernel) {
  const std::size_t n = samples.size();
  if (n <= kBlockSize) return kernel(samples);
  const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<Result> partial(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    const std::size_t first = static_cast<std::size_t>(b) * kBlockSize;
    const std::size_t count = std::min(kBlockSize, n - first);
    partial[static_cast<std::size_t>(b)] = kernel(samples.subspan(first, count));
  }
  Result total{};
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace

double sum_tau_squared(std::span<const Sample> samples) {
  return blocked_reduce<double>(samples, [](auto s) { return serial::sum_tau_squared(s); });
}

MomentSums moments(std::span<const Sample> samples, double shift) {
  return blocked_reduce<MomentSums>(samples,
                                    [shift](auto s) { return serial::moments(s, shift); });
}

ResidualSums residuals(std::span<const Sample> samples, double mu, double alpha0) {
  return blocked_reduce<ResidualSums>(
      samples, [mu, alpha0](auto s) { return serial::residuals(s, mu, alpha0); });
}

}  // namespace springsim::kernels
