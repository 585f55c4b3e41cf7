#pragma once

// Two-phase protocol: simulate without a spring, fit the optimal spring on
// that log, rerun with the spring and compare motor energies.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "springsim/config.hpp"
#include "springsim/spring_fit.hpp"
#include "springsim/trajectory.hpp"

namespace springsim {

class ExperimentError : public std::runtime_error {
 public:
  ExperimentError(std::string label, const std::string& message)
      : std::runtime_error("experiment '" + label + "': " + message), label_(std::move(label)) {}
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

struct ExperimentOptions {
  EnergyModel model;
  // Where phase traces are written; nothing is written when empty.
  std::filesystem::path out_dir;
};

struct ExperimentResult {
  ExperimentSpec spec;
  double e0 = 0.0;
  double ea = 0.0;
  double mu_star = 0.0;
  std::optional<double> alpha0_star;
  double ratio = 0.0;
  FitDiagnostics fit;
  // False when the fitted spring was rejected (negative or zero stiffness)
  // and phase B ran without one.
  bool spring_applied = false;
  std::string diagnostic;
  std::filesystem::path trace_no_spring;
  std::filesystem::path trace_with_spring;
};

struct SpringDecision {
  std::optional<SpringParams> spring;  // empty: run without a spring
  std::string diagnostic;
};

// Passive springs only: a negative or zero fitted stiffness means no spring.
SpringDecision decide_spring(const FitDiagnostics& fit);

// File-system safe form of a label.
std::string sanitize_label(const std::string& label);

std::filesystem::path trace_path(const std::filesystem::path& dir, const std::string& label,
                                 bool with_spring);

ExperimentResult run_experiment(const ExperimentSpec& spec, const ExperimentOptions& options);

// Same as run_experiment but also hands back both phase trajectories.
ExperimentResult run_experiment(const ExperimentSpec& spec, const ExperimentOptions& options,
                                std::optional<Trajectory>* phase_a,
                                std::optional<Trajectory>* phase_b);

// The six rows of the reference comparison grid: a baseline plus one
// changed parameter per row.
std::vector<ExperimentSpec> paper_table();

struct GridFailure {
  std::string label;
  std::string error;
};

struct GridReport {
  std::vector<ExperimentResult> results;  // in spec order, failures omitted
  std::vector<GridFailure> failures;
};

// Runs every spec (rows in parallel) and writes into out_dir:
//   report.csv       label,m,T,A,h0,E0,Ea,mu_star,alpha0_star,ratio
//   experiments.cfg  the resolved specs, re-runnable with `grid --specs`
//   diagnostics.txt  rows whose fitted spring was rejected
//   failures.csv     label,error for rows that failed (only if any)
//   <label>.no_spring.csv / <label>.with_spring.csv
// Throws std::invalid_argument for an empty or duplicate-labelled list.
GridReport run_grid(const std::vector<ExperimentSpec>& specs, const std::filesystem::path& out_dir,
                    const EnergyModel& model = {});

}  // namespace springsim
