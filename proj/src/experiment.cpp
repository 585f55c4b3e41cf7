#include "springsim/experiment.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "springsim/io_util.hpp"
#include "springsim/report.hpp"
#include "springsim/simulator.hpp"

namespace springsim {

std::string sanitize_label(const std::string& label) {
  std::string out = label;
  for (char& c : out) {
    const auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '-' && c != '_' && c != '.') c = '_';
  }
  return out.empty() ? "unnamed" : out;
}

std::filesystem::path trace_path(const std::filesystem::path& dir, const std::string& label,
                                 bool with_spring) {
  return dir / (sanitize_label(label) + (with_spring ? ".with_spring.csv" : ".no_spring.csv"));
}

SpringDecision decide_spring(const FitDiagnostics& fit) {
  // The energy is convex in (mu, alpha0), so with the unconstrained optimum
  // at mu < 0 the best passive choice is mu = 0.
  if (!fit.physical) {
    return {std::nullopt, "fitted stiffness mu*=" + format_double(fit.mu_star) +
                              " is negative; phase B ran without a spring"};
  }
  if (!fit.alpha0_star) {
    return {std::nullopt, "optimal stiffness is zero; phase B ran without a spring"};
  }
  return {fit.spring(), {}};
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const ExperimentOptions& options) {
  return run_experiment(spec, options, nullptr, nullptr);
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const ExperimentOptions& options,
                                std::optional<Trajectory>* phase_a,
                                std::optional<Trajectory>* phase_b) {
  ExperimentResult result;
  result.spec = spec;
  try {
    options.model.validate();
    SimConfig cfg = spec.sim_config();

    const Trajectory baseline = run(cfg);
    result.e0 = energy(baseline, options.model);
    if (!(result.e0 > 0.0)) throw ExperimentError(spec.label, "baseline motor energy is zero");

    result.fit = fit_optimal(baseline, options.model);
    result.mu_star = result.fit.mu_star;
    result.alpha0_star = result.fit.alpha0_star;

    auto decision = decide_spring(result.fit);
    cfg.spring = decision.spring;
    result.spring_applied = decision.spring.has_value();
    result.diagnostic = std::move(decision.diagnostic);

    const Trajectory with_spring = run(cfg);
    result.ea = energy(with_spring, options.model);
    result.ratio = result.ea / result.e0;

    if (!options.out_dir.empty()) {
      result.trace_no_spring = trace_path(options.out_dir, spec.label, false);
      result.trace_with_spring = trace_path(options.out_dir, spec.label, true);
      save_trajectory(baseline, result.trace_no_spring);
      save_trajectory(with_spring, result.trace_with_spring);
    }
    if (phase_a) phase_a->emplace(baseline);
    if (phase_b) phase_b->emplace(with_spring);
  } catch (const ExperimentError&) {
    throw;
  } catch (const std::exception& e) {
    throw ExperimentError(spec.label, e.what());
  }
  return result;
}

std::vector<ExperimentSpec> paper_table() {
  const auto row = [](std::string label, double m, double t, double a, double h0) {
    ExperimentSpec s;
    s.label = std::move(label);
    s.mass = m;
    s.t_period = t;
    s.amplitude = a;
    s.h0 = h0;
    return s;
  };
  return {
      row("baseline", 4.1, 1.88, 0.05, 0.2),
      row("amplitude_0.08", 4.1, 1.88, 0.08, 0.2),
      row("h0_0.15", 4.1, 1.88, 0.05, 0.15),
      row("mass_8.1", 8.1, 1.88, 0.05, 0.2),
      row("period_0.94", 4.1, 0.94, 0.05, 0.2),
      row("period_3.77", 4.1, 3.77, 0.05, 0.2),
  };
}

GridReport run_grid(const std::vector<ExperimentSpec>& specs, const std::filesystem::path& out_dir,
                    const EnergyModel& model) {
  if (specs.empty()) throw std::invalid_argument("run_grid: no experiments given");
  std::set<std::string> names;
  for (const auto& s : specs) {
    if (!names.insert(sanitize_label(s.label)).second) {
      throw std::invalid_argument("run_grid: duplicate experiment label '" + s.label + "'");
    }
  }
  model.validate();
  std::filesystem::create_directories(out_dir);

  const ExperimentOptions options{model, out_dir};
  std::vector<std::optional<ExperimentResult>> slots(specs.size());
  std::vector<std::string> errors(specs.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(specs.size()); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      slots[idx] = run_experiment(specs[idx], options);
    } catch (const std::exception& e) {
      errors[idx] = e.what();
    }
  }

  GridReport report;
  std::vector<ReportRow> rows;
  std::string diagnostics;
  std::string failures = "label,error\n";
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (slots[i]) {
      rows.push_back(to_report_row(*slots[i]));
      if (!slots[i]->diagnostic.empty()) {
        diagnostics += specs[i].label + ": " + slots[i]->diagnostic + "\n";
      }
      report.results.push_back(std::move(*slots[i]));
    } else {
      std::string err = errors[i];
      for (char& c : err) {
        if (c == '\n' || c == ',') c = ' ';
      }
      failures += specs[i].label + "," + err + "\n";
      report.failures.push_back({specs[i].label, errors[i]});
    }
  }

  write_file_atomic(out_dir / "report.csv", format_report(rows));
  write_file_atomic(out_dir / "experiments.cfg", format_experiment_file({model, specs}));
  write_file_atomic(out_dir / "diagnostics.txt", diagnostics);
  const auto failure_path = out_dir / "failures.csv";
  if (!report.failures.empty()) {
    write_file_atomic(failure_path, failures);
  } else {
    std::error_code ec;
    std::filesystem::remove(failure_path, ec);
  }
  return report;
}

}  // namespace springsim
