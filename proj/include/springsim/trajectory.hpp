#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace springsim {

// One logged knee sample. alpha is the knee flexion angle (0 = straight leg,
// grows as the knee folds); tau is the motor torque, positive extending.
struct Sample {
  double t = 0.0;      // s
  double alpha = 0.0;  // rad
  double tau = 0.0;    // N*m
};

// Torsion spring acting in parallel with the knee motor.
struct SpringParams {
  double mu = 0.0;      // N*m/rad
  double alpha0 = 0.0;  // rad, flexion angle at which the spring is relaxed
};

class TrajectoryError : public std::runtime_error {
 public:
  enum class Kind {
    kMissingFile,
    kMalformedRow,
    kNonUniformTimestep,
    kEmptyFile,
    kInvalid,
    kIoFailure,
  };

  // `where` is a 1-based line number for kMalformedRow, a sample index for
  // kNonUniformTimestep, and unused otherwise.
  TrajectoryError(Kind kind, std::string message, std::size_t where = 0)
      : std::runtime_error(std::move(message)), kind_(kind), where_(where) {}

  Kind kind() const { return kind_; }
  std::size_t where() const { return where_; }

 private:
  Kind kind_;
  std::size_t where_;
};

// Uniformly sampled knee trajectory. Immutable after construction; the
// constructor rejects empty, non-finite or non-uniform data.
class Trajectory {
 public:
  static constexpr double kTimestepTolerance = 1e-9;

  Trajectory(std::vector<Sample> samples, double dt);

  std::span<const Sample> samples() const { return samples_; }
  double dt() const { return dt_; }
  std::size_t size() const { return samples_.size(); }
  const Sample& operator[](std::size_t i) const { return samples_[i]; }

  // Copy of samples [first, first + count) as a trajectory with the same dt.
  Trajectory slice(std::size_t first, std::size_t count) const;

 private:
  std::vector<Sample> samples_;
  double dt_;
};

// CSV with header `t,alpha_rad,tau_Nm`. dt is inferred from the first two
// timestamps, so at least two rows are required.
Trajectory load_trajectory(const std::filesystem::path& path);

// Writes the format read by load_trajectory. Values are written in shortest
// round-trip form, so loading reproduces every field exactly.
void save_trajectory(const Trajectory& traj, const std::filesystem::path& path);

std::string format_trajectory_csv(const Trajectory& traj);

}  // namespace springsim
