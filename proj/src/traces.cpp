#include "springsim/traces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "springsim/io_util.hpp"
#include "springsim/report.hpp"

namespace springsim {
namespace {

double rms(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc / static_cast<double>(v.size()));
}

double cycle_seconds(const ExperimentSpec& spec) {
  const auto convention = spec.overrides.sine_convention.value_or(SineConvention::kPeriod);
  return 2.0 * std::numbers::pi / reference_omega(spec.t_period, convention);
}

Trajectory load_trace(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw TraceError(TraceError::Kind::kMissingTrace, "missing trace " + path.string());
  }
  return load_trajectory(path);
}

}  // namespace

double TorqueCycle::rms_no_spring() const { return rms(tau_no_spring); }
double TorqueCycle::rms_with_spring() const { return rms(tau_with_spring); }

TorqueCycle extract_cycle(const Trajectory& no_spring, const Trajectory& with_spring,
                          double cycle_seconds) {
  if (no_spring.size() != with_spring.size() ||
      std::abs(no_spring.dt() - with_spring.dt()) > Trajectory::kTimestepTolerance) {
    throw TraceError(TraceError::Kind::kMismatchedTraces,
                     "traces differ in length or sampling interval");
  }
  if (!(cycle_seconds > 0.0)) throw std::invalid_argument("cycle length must be positive");
  const std::size_t n = no_spring.size();
  const double per_cycle = cycle_seconds / no_spring.dt();
  auto len = static_cast<std::size_t>(std::llround(per_cycle));
  std::size_t start = 0;
  if (len < 2 || len > n) {
    len = n;
  } else {
    auto j = static_cast<std::int64_t>(std::floor(static_cast<double>(n - len) / per_cycle));
    for (; j >= 0; --j) {
      start = static_cast<std::size_t>(std::llround(static_cast<double>(j) * per_cycle));
      if (start + len <= n) break;
    }
    if (j < 0) start = 0;
  }

  TorqueCycle cycle;
  cycle.start_index = start;
  for (std::size_t i = 0; i < len; ++i) {
    cycle.t.push_back(static_cast<double>(i) * no_spring.dt());
    cycle.tau_no_spring.push_back(no_spring[start + i].tau);
    cycle.tau_with_spring.push_back(with_spring[start + i].tau);
  }
  return cycle;
}

std::string format_cycle_csv(const TorqueCycle& cycle) {
  std::string out = "t,tau_no_spring,tau_with_spring\n";
  for (std::size_t i = 0; i < cycle.t.size(); ++i) {
    out += format_double(cycle.t[i]) + "," + format_double(cycle.tau_no_spring[i]) + "," +
           format_double(cycle.tau_with_spring[i]) + "\n";
  }
  return out;
}

std::string render_cycle_svg(const TorqueCycle& cycle, const std::string& title) {
  constexpr double kWidth = 640, kHeight = 360;
  constexpr double kLeft = 60, kRight = 20, kTop = 40, kBottom = 45;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double lo = 0.0, hi = 0.0;
  for (const auto* series : {&cycle.tau_no_spring, &cycle.tau_with_spring}) {
    for (double v : *series) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi - lo < 1e-9) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  const double t_end = cycle.t.empty() ? 1.0 : std::max(cycle.t.back(), 1e-9);

  const auto x_of = [&](double t) { return kLeft + plot_w * t / t_end; };
  const auto y_of = [&](double v) { return kTop + plot_h * (hi - v) / (hi - lo); };
  const auto polyline = [&](const std::vector<double>& series, const char* color) {
    std::ostringstream s;
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series.size(); ++i) {
      s << (i ? " " : "") << x_of(cycle.t[i]) << "," << y_of(series[i]);
    }
    s << "\"/>\n";
    return s.str();
  };

  std::ostringstream svg;
  svg.precision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title
      << "</text>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (lo < 0.0 && hi > 0.0) {
    svg << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + plot_w << "\" y1=\"" << y_of(0.0)
        << "\" y2=\"" << y_of(0.0) << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double v = lo + (hi - lo) * k / 4.0;
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << y_of(v) + 4
        << "\" text-anchor=\"end\">" << v << "</text>\n";
    const double t = t_end * k / 4.0;
    svg << "<text x=\"" << x_of(t) << "\" y=\"" << kTop + plot_h + 16
        << "\" text-anchor=\"middle\">" << t << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 8
      << "\" text-anchor=\"middle\">time in cycle, s</text>\n";
  svg << "<text x=\"14\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 14 " << kTop + plot_h / 2 << ")\">knee torque, N m</text>\n";
  svg << polyline(cycle.tau_no_spring, "#d62728");
  svg << polyline(cycle.tau_with_spring, "#1f77b4");
  svg << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop + 16
      << "\" fill=\"#d62728\">without spring</text>\n";
  svg << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop + 32
      << "\" fill=\"#1f77b4\">with spring</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

TraceExport export_torque_traces(const std::string& label,
                                 const std::filesystem::path& no_spring_csv,
                                 const std::filesystem::path& with_spring_csv,
                                 double cycle_seconds, const std::filesystem::path& out_dir) {
  const Trajectory a = load_trace(no_spring_csv);
  const Trajectory b = load_trace(with_spring_csv);
  TraceExport out;
  out.label = label;
  out.cycle = extract_cycle(a, b, cycle_seconds);
  const auto stem = sanitize_label(label);
  out.csv = out_dir / (stem + ".torque_cycle.csv");
  out.svg = out_dir / (stem + ".torque_cycle.svg");
  write_file_atomic(out.csv, format_cycle_csv(out.cycle));
  write_file_atomic(out.svg, render_cycle_svg(out.cycle, "Knee torque over one cycle: " + label));
  return out;
}

TraceExport export_torque_traces(const ExperimentResult& result,
                                 const std::filesystem::path& out_dir) {
  if (result.trace_no_spring.empty() || result.trace_with_spring.empty()) {
    throw TraceError(TraceError::Kind::kMissingTrace,
                     "experiment '" + result.spec.label + "' has no persisted traces");
  }
  return export_torque_traces(result.spec.label, result.trace_no_spring,
                              result.trace_with_spring, cycle_seconds(result.spec), out_dir);
}

std::vector<TraceExport> export_result_dir(const std::filesystem::path& result_dir,
                                           const std::filesystem::path& out_dir) {
  const auto report_path = result_dir / "report.csv";
  if (!std::filesystem::exists(report_path)) {
    throw TraceError(TraceError::Kind::kMissingTrace, "no report.csv in " + result_dir.string());
  }
  std::map<std::string, ExperimentSpec> specs;
  if (const auto cfg = result_dir / "experiments.cfg"; std::filesystem::exists(cfg)) {
    for (auto& s : load_experiment_file(cfg).specs) specs[s.label] = s;
  }
  std::vector<TraceExport> exports;
  for (const auto& row : load_report(report_path)) {
    ExperimentSpec spec;
    if (auto it = specs.find(row.label); it != specs.end()) spec = it->second;
    spec.label = row.label;
    spec.t_period = row.t_period;
    exports.push_back(export_torque_traces(row.label, trace_path(result_dir, row.label, false),
                                           trace_path(result_dir, row.label, true),
                                           cycle_seconds(spec), out_dir));
  }
  return exports;
}

}  // namespace springsim
