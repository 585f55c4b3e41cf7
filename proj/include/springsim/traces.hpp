#pragma once

// Export of one motion cycle of knee torque without and with the fitted
// spring, as CSV plus an SVG overlay.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "springsim/experiment.hpp"
#include "springsim/trajectory.hpp"

namespace springsim {

class TraceError : public std::runtime_error {
 public:
  enum class Kind { kMissingTrace, kMismatchedTraces };

  TraceError(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct TorqueCycle {
  std::size_t start_index = 0;
  std::vector<double> t;  // s, relative to the cycle start
  std::vector<double> tau_no_spring;
  std::vector<double> tau_with_spring;

  double rms_no_spring() const;
  double rms_with_spring() const;
};

// Last complete reference cycle common to both logs. Cycle boundaries sit at
// whole multiples of `cycle_seconds` from t = 0, so the window starts at
// reference phase zero. Falls back to the whole log when it is shorter than a
// cycle.
TorqueCycle extract_cycle(const Trajectory& no_spring, const Trajectory& with_spring,
                          double cycle_seconds);

std::string format_cycle_csv(const TorqueCycle& cycle);
std::string render_cycle_svg(const TorqueCycle& cycle, const std::string& title);

struct TraceExport {
  std::string label;
  std::filesystem::path csv;
  std::filesystem::path svg;
  TorqueCycle cycle;
};

TraceExport export_torque_traces(const std::string& label,
                                 const std::filesystem::path& no_spring_csv,
                                 const std::filesystem::path& with_spring_csv,
                                 double cycle_seconds, const std::filesystem::path& out_dir);

TraceExport export_torque_traces(const ExperimentResult& result,
                                 const std::filesystem::path& out_dir);

// Every row of `<result_dir>/report.csv`. The sine convention of each row is
// taken from `<result_dir>/experiments.cfg` when present.
std::vector<TraceExport> export_result_dir(const std::filesystem::path& result_dir,
                                           const std::filesystem::path& out_dir);

}  // namespace springsim
