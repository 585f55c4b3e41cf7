#include "springsim/trajectory.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "springsim/io_util.hpp"

namespace springsim {
namespace {

constexpr std::string_view kHeader = "t,alpha_rad,tau_Nm";

bool finite(const Sample& s) {
  return std::isfinite(s.t) && std::isfinite(s.alpha) && std::isfinite(s.tau);
}

}  // namespace

Trajectory::Trajectory(std::vector<Sample> samples, double dt)
    : samples_(std::move(samples)), dt_(dt) {
  using Kind = TrajectoryError::Kind;
  if (samples_.empty()) throw TrajectoryError(Kind::kEmptyFile, "trajectory has no samples");
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
    throw TrajectoryError(Kind::kInvalid, "trajectory dt must be positive and finite");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!finite(samples_[i])) {
      throw TrajectoryError(Kind::kInvalid, "non-finite sample at index " + std::to_string(i), i);
    }
    if (i + 1 < samples_.size()) {
      const double step = samples_[i + 1].t - samples_[i].t;
      if (std::abs(step - dt_) > kTimestepTolerance) {
        throw TrajectoryError(Kind::kNonUniformTimestep,
                              "non-uniform timestep at sample " + std::to_string(i + 1), i + 1);
      }
    }
  }
}

Trajectory Trajectory::slice(std::size_t first, std::size_t count) const {
  if (first + count > samples_.size()) throw std::out_of_range("Trajectory::slice");
  const auto begin = samples_.begin() + static_cast<std::ptrdiff_t>(first);
  return Trajectory({begin, begin + static_cast<std::ptrdiff_t>(count)}, dt_);
}

Trajectory load_trajectory(const std::filesystem::path& path) {
  using Kind = TrajectoryError::Kind;
  std::ifstream in(path);
  if (!in) throw TrajectoryError(Kind::kMissingFile, "cannot open trajectory " + path.string());

  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<Sample> samples;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    if (!have_header) {
      if (body != kHeader) {
        throw TrajectoryError(Kind::kMalformedRow,
                              path.string() + ":" + std::to_string(line_no) +
                                  ": expected header '" + std::string(kHeader) + "'",
                              line_no);
      }
      have_header = true;
      continue;
    }
    std::array<double, 3> fields{};
    std::size_t n = 0;
    std::string_view rest = body;
    bool ok = true;
    while (ok) {
      const auto comma = rest.find(',');
      const auto field = rest.substr(0, comma);
      auto value = n < 3 ? parse_double(field) : std::nullopt;
      if (!value) {
        ok = false;
        break;
      }
      fields[n++] = *value;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!ok || n != 3) {
      throw TrajectoryError(Kind::kMalformedRow,
                            path.string() + ":" + std::to_string(line_no) + ": malformed row",
                            line_no);
    }
    samples.push_back({fields[0], fields[1], fields[2]});
  }
  if (samples.empty()) {
    throw TrajectoryError(Kind::kEmptyFile, path.string() + ": no data rows");
  }
  if (samples.size() < 2) {
    throw TrajectoryError(Kind::kEmptyFile,
                          path.string() + ": need at least two rows to infer dt");
  }
  const double dt = samples[1].t - samples[0].t;
  if (!(dt > 0.0)) {
    throw TrajectoryError(Kind::kNonUniformTimestep,
                          path.string() + ": timestamps must increase", 1);
  }
  try {
    return Trajectory(std::move(samples), dt);
  } catch (const TrajectoryError& e) {
    throw TrajectoryError(e.kind(), path.string() + ": " + e.what(), e.where());
  }
}

std::string format_trajectory_csv(const Trajectory& traj) {
  std::string out;
  out.reserve(traj.size() * 48 + 32);
  out += kHeader;
  out += '\n';
  for (const auto& s : traj.samples()) {
    out += format_double(s.t);
    out += ',';
    out += format_double(s.alpha);
    out += ',';
    out += format_double(s.tau);
    out += '\n';
  }
  return out;
}

void save_trajectory(const Trajectory& traj, const std::filesystem::path& path) {
  try {
    write_file_atomic(path, format_trajectory_csv(traj));
  } catch (const std::exception& e) {
    throw TrajectoryError(TrajectoryError::Kind::kIoFailure, e.what());
  }
}

}  // namespace springsim
