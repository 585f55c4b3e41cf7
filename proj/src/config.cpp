#include "springsim/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "springsim/io_util.hpp"

namespace springsim {
namespace {

using Fields = std::map<std::string, std::pair<std::string, std::size_t>>;

const std::set<std::string> kSpecKeys = {
    "label",    "mass",       "t_period", "amplitude",    "h0",
    "kp",       "kd",         "control_rate", "physics_dt", "duration",
    "link_len", "g",          "torque_limit", "sine_convention", "initial_condition",
};

InitialCondition parse_initial_condition(const std::string& text) {
  if (text == "static-equilibrium") return InitialCondition::kStaticEquilibrium;
  if (text == "reference") return InitialCondition::kReference;
  throw std::invalid_argument("unknown initial_condition '" + text +
                              "' (expected static-equilibrium or reference)");
}

std::string to_string(InitialCondition c) {
  return c == InitialCondition::kReference ? "reference" : "static-equilibrium";
}

class SpecBuilder {
 public:
  SpecBuilder(const std::string& origin) : origin_(origin) {}

  ExperimentSpec build(const Fields& fields) const {
    ExperimentSpec spec;
    for (const auto& [key, entry] : fields) {
      const auto& [value, line] = entry;
      try {
        apply(spec, key, value);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(where(line) + e.what(), line);
      }
    }
    if (spec.label.empty()) throw ConfigError(origin_ + ": experiment without a label");
    return spec;
  }

 private:
  std::string where(std::size_t line) const {
    return origin_ + ":" + std::to_string(line) + ": ";
  }

  static double number(const std::string& key, const std::string& value) {
    auto v = parse_double(value);
    if (!v || !std::isfinite(*v)) {
      throw std::invalid_argument("'" + key + "' expects a finite number, got '" + value + "'");
    }
    return *v;
  }

  static void apply(ExperimentSpec& s, const std::string& key, const std::string& value) {
    auto& o = s.overrides;
    if (key == "label") s.label = value;
    else if (key == "mass") s.mass = number(key, value);
    else if (key == "t_period") s.t_period = number(key, value);
    else if (key == "amplitude") s.amplitude = number(key, value);
    else if (key == "h0") s.h0 = number(key, value);
    else if (key == "kp") o.kp = number(key, value);
    else if (key == "kd") o.kd = number(key, value);
    else if (key == "control_rate") o.control_rate = number(key, value);
    else if (key == "physics_dt") o.physics_dt = number(key, value);
    else if (key == "duration") o.duration = number(key, value);
    else if (key == "link_len") o.link_len = number(key, value);
    else if (key == "g") o.g = number(key, value);
    else if (key == "torque_limit") o.torque_limit = number(key, value);
    else if (key == "sine_convention") o.sine_convention = parse_sine_convention(value);
    else if (key == "initial_condition") o.initial_condition = parse_initial_condition(value);
  }

  std::string origin_;
};

}  // namespace

SimConfig ExperimentSpec::resolved_config() const {
  SimConfig cfg;
  cfg.geom.mass = mass;
  cfg.t_period = t_period;
  cfg.amplitude = amplitude;
  cfg.h0 = h0;
  const auto& o = overrides;
  if (o.kp) cfg.controller.kp = *o.kp;
  if (o.kd) cfg.controller.kd = *o.kd;
  if (o.control_rate) cfg.controller.control_rate = *o.control_rate;
  if (o.physics_dt) cfg.physics_dt = *o.physics_dt;
  if (o.duration) cfg.duration = *o.duration;
  if (o.link_len) cfg.geom.link_len = *o.link_len;
  if (o.g) cfg.geom.g = *o.g;
  if (o.torque_limit) cfg.torque_limit = *o.torque_limit;
  if (o.sine_convention) cfg.sine_convention = *o.sine_convention;
  if (o.initial_condition) cfg.initial_condition = *o.initial_condition;
  return cfg;
}

SimConfig ExperimentSpec::sim_config() const {
  if (!(mass > 0.0) || !(t_period > 0.0) || !(amplitude >= 0.0) || !(h0 > 0.0)) {
    throw SimError(SimError::Kind::kInvalidConfig,
                   "mass, t_period and h0 must be positive, amplitude non-negative");
  }
  SimConfig cfg = resolved_config();
  cfg.validate();
  return cfg;
}

ExperimentFile parse_experiment_file(const std::string& text, const std::string& origin) {
  ExperimentFile file;
  Fields defaults;
  std::vector<Fields> sections;
  std::optional<int> version;

  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto at = origin + ":" + std::to_string(line_no) + ": ";

    if (line.front() == '[') {
      if (line != "[experiment]") {
        throw ConfigError(at + "unknown section '" + std::string(line) + "'", line_no);
      }
      if (!version) throw ConfigError(at + "schema_version must come first", line_no);
      sections.emplace_back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(at + "expected key = value", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) throw ConfigError(at + "expected key = value", line_no);

    if (key == "schema_version") {
      if (!sections.empty() || version) {
        throw ConfigError(at + "schema_version must appear once, before any section", line_no);
      }
      auto v = parse_double(value);
      if (!v || *v != kConfigSchemaVersion) {
        throw ConfigError(at + "unsupported schema_version '" + value + "'", line_no);
      }
      version = kConfigSchemaVersion;
      continue;
    }
    if (!version) throw ConfigError(at + "schema_version must come first", line_no);
    if (key == "k_motor") {
      if (!sections.empty()) throw ConfigError(at + "k_motor is a file-level key", line_no);
      auto v = parse_double(value);
      if (!v || !(*v > 0.0)) throw ConfigError(at + "k_motor must be positive", line_no);
      file.model.k_motor = *v;
      continue;
    }
    if (!kSpecKeys.contains(key)) throw ConfigError(at + "unknown key '" + key + "'", line_no);
    Fields& target = sections.empty() ? defaults : sections.back();
    if (target.contains(key)) throw ConfigError(at + "duplicate key '" + key + "'", line_no);
    target[key] = {value, line_no};
  }
  if (!version) throw ConfigError(origin + ": missing schema_version");

  SpecBuilder builder(origin);
  if (sections.empty()) {
    file.specs.push_back(builder.build(defaults));
  } else {
    std::set<std::string> labels;
    for (const auto& section : sections) {
      Fields merged = defaults;
      for (const auto& [k, v] : section) merged[k] = v;
      auto spec = builder.build(merged);
      if (!labels.insert(spec.label).second) {
        throw ConfigError(origin + ": duplicate experiment label '" + spec.label + "'");
      }
      file.specs.push_back(std::move(spec));
    }
  }
  return file;
}

ExperimentFile load_experiment_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open experiment file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment_file(ss.str(), path.string());
}

std::string format_experiment_file(const ExperimentFile& file) {
  std::ostringstream out;
  out << "schema_version = " << kConfigSchemaVersion << "\n";
  out << "k_motor = " << format_double(file.model.k_motor) << "\n";
  for (const auto& spec : file.specs) {
    const SimConfig cfg = spec.resolved_config();
    out << "\n[experiment]\n";
    out << "label = " << spec.label << "\n";
    out << "mass = " << format_double(spec.mass) << "\n";
    out << "t_period = " << format_double(spec.t_period) << "\n";
    out << "amplitude = " << format_double(spec.amplitude) << "\n";
    out << "h0 = " << format_double(spec.h0) << "\n";
    out << "kp = " << format_double(cfg.controller.kp) << "\n";
    out << "kd = " << format_double(cfg.controller.kd) << "\n";
    out << "control_rate = " << format_double(cfg.controller.control_rate) << "\n";
    out << "physics_dt = " << format_double(cfg.physics_dt) << "\n";
    out << "duration = " << format_double(cfg.duration) << "\n";
    out << "link_len = " << format_double(cfg.geom.link_len) << "\n";
    out << "g = " << format_double(cfg.geom.g) << "\n";
    if (cfg.torque_limit) out << "torque_limit = " << format_double(*cfg.torque_limit) << "\n";
    out << "sine_convention = " << to_string(cfg.sine_convention) << "\n";
    out << "initial_condition = " << to_string(cfg.initial_condition) << "\n";
  }
  return out.str();
}

}  // namespace springsim
