#pragma once

#include <cstddef>
#include <vector>

#include "springsim/kernels.hpp"
#include "springsim/spring_fit.hpp"

namespace springsim {

// Streaming spring fit over the most recent `capacity` samples. The moment
// sums are updated incrementally on every push and rebuilt exactly from the
// retained samples once every `capacity` pushes, which bounds the drift from
// repeated add/subtract.
class SlidingWindow {
 public:
  SlidingWindow(std::size_t capacity, double dt);

  void push(const Sample& sample);

  std::size_t size() const { return count_; }
  std::size_t capacity() const { return buffer_.size(); }
  double dt() const { return dt_; }

  // Sums are on alpha - shift().
  const kernels::MomentSums& sums() const { return sums_; }
  double shift() const { return shift_; }

  // Retained samples, oldest first.
  std::vector<Sample> contents() const;

  // Same contract as fit_optimal on contents().
  FitDiagnostics fit(const EnergyModel& model) const;

  // Rebuilds the sums from the retained samples, re-anchoring the shift on
  // the oldest sample.
  void recompute();

 private:
  std::vector<Sample> buffer_;
  std::size_t head_ = 0;  // index of the oldest sample
  std::size_t count_ = 0;
  std::size_t pushes_since_rebuild_ = 0;
  double dt_;
  double shift_ = 0.0;
  kernels::MomentSums sums_;
};

}  // namespace springsim
