#include "springsim/sliding_window.hpp"

#include <cmath>
#include <stdexcept>

namespace springsim {

SlidingWindow::SlidingWindow(std::size_t capacity, double dt) : buffer_(capacity), dt_(dt) {
  if (capacity < 2) throw std::invalid_argument("SlidingWindow: capacity must be at least 2");
  if (!(dt > 0.0)) throw std::invalid_argument("SlidingWindow: dt must be positive");
}

void SlidingWindow::push(const Sample& sample) {
  if (count_ == 0) shift_ = sample.alpha;
  const std::size_t cap = buffer_.size();
  if (count_ == cap) {
    const Sample& old = buffer_[head_];
    const double a = old.alpha - shift_;
    sums_.sum_a -= a;
    sums_.sum_t -= old.tau;
    sums_.sum_aa -= a * a;
    sums_.sum_at -= a * old.tau;
    buffer_[head_] = sample;
    head_ = (head_ + 1) % cap;
  } else {
    buffer_[(head_ + count_) % cap] = sample;
    ++count_;
    ++sums_.n;
  }
  const double a = sample.alpha - shift_;
  sums_.sum_a += a;
  sums_.sum_t += sample.tau;
  sums_.sum_aa += a * a;
  sums_.sum_at += a * sample.tau;

  if (++pushes_since_rebuild_ >= cap) recompute();
}

std::vector<Sample> SlidingWindow::contents() const {
  std::vector<Sample> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < count_; ++i) out.push_back(buffer_[(head_ + i) % buffer_.size()]);
  return out;
}

void SlidingWindow::recompute() {
  pushes_since_rebuild_ = 0;
  if (count_ == 0) return;
  const auto samples = contents();
  shift_ = samples.front().alpha;
  sums_ = kernels::serial::moments(samples, shift_);
}

FitDiagnostics SlidingWindow::fit(const EnergyModel& model) const {
  model.validate();
  const auto solution = detail::solve_from_moments(sums_, shift_);
  const auto samples = contents();
  return detail::diagnose(samples, dt_, solution, model);
}

}  // namespace springsim
