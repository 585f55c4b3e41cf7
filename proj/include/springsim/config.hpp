#pragma once

// Experiment files: flat `key = value` text, `#` comments, a mandatory
// `schema_version = 1` line, and one `[experiment]` section per run. Keys
// given before the first section are defaults for every experiment; a file
// without sections describes a single experiment.
//
//   schema_version = 1
//   k_motor = 1.0
//   kp = 300
//   [experiment]
//   label = baseline
//   mass = 4.1
//   t_period = 1.88
//   amplitude = 0.05
//   h0 = 0.2

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "springsim/simulator.hpp"
#include "springsim/spring_fit.hpp"

namespace springsim {

inline constexpr int kConfigSchemaVersion = 1;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string message, std::size_t line = 0)
      : std::runtime_error(std::move(message)), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Optional per-experiment changes to the default simulator setup.
struct SimOverrides {
  std::optional<double> kp;
  std::optional<double> kd;
  std::optional<double> control_rate;
  std::optional<double> physics_dt;
  std::optional<double> duration;
  std::optional<double> link_len;
  std::optional<double> g;
  std::optional<double> torque_limit;
  std::optional<SineConvention> sine_convention;
  std::optional<InitialCondition> initial_condition;
};

struct ExperimentSpec {
  std::string label;
  double mass = 4.1;        // kg
  double t_period = 1.88;   // s
  double amplitude = 0.05;  // m
  double h0 = 0.2;          // m
  SimOverrides overrides;

  // Simulator setup without a spring; validates the spec.
  SimConfig sim_config() const;
  // Defaults plus overrides, unvalidated.
  SimConfig resolved_config() const;
};

struct ExperimentFile {
  EnergyModel model;
  std::vector<ExperimentSpec> specs;
};

ExperimentFile parse_experiment_file(const std::string& text, const std::string& origin = "<input>");
ExperimentFile load_experiment_file(const std::filesystem::path& path);

// Serialises specs in the format above, every field written explicitly.
std::string format_experiment_file(const ExperimentFile& file);

}  // namespace springsim
