// springsim: run the no-spring / fitted-spring comparison on the simulated
// leg, reproduce the reference grid, fit springs to external knee logs and
// export torque-cycle plots.
//
//   springsim run --config <file> [--out <dir>]
//   springsim grid --table paper --out <dir>
//   springsim grid --specs <file> --out <dir>
//   springsim fit <traj.csv> [--json]
//   springsim traces <result-dir> --out <dir>
//
// Exit codes: 0 success, 1 runtime or fit error, 2 usage error.

#include <cstdio>
#include <iostream>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "springsim/config.hpp"
#include "springsim/experiment.hpp"
#include "springsim/io_util.hpp"
#include "springsim/spring_fit.hpp"
#include "springsim/traces.hpp"

namespace {

using namespace springsim;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string optional_number(const std::optional<double>& v) {
  return v ? format_double(*v) : "undefined";
}

void print_result(const ExperimentResult& r) {
  std::cout << "experiment   " << r.spec.label << "\n"
            << "m            " << format_double(r.spec.mass) << "\n"
            << "T            " << format_double(r.spec.t_period) << "\n"
            << "A            " << format_double(r.spec.amplitude) << "\n"
            << "h0           " << format_double(r.spec.h0) << "\n"
            << "E0           " << format_double(r.e0) << "\n"
            << "Ea           " << format_double(r.ea) << "\n"
            << "mu_star      " << format_double(r.mu_star) << "\n"
            << "alpha0_star  " << optional_number(r.alpha0_star) << "\n"
            << "ratio        " << format_double(r.ratio) << "\n";
  if (!r.diagnostic.empty()) std::cout << "note         " << r.diagnostic << "\n";
}

int cmd_run(const std::string& config, const std::string& out_dir, double k_motor) {
  auto file = load_experiment_file(config);
  if (k_motor > 0.0) file.model.k_motor = k_motor;
  if (file.specs.size() != 1) {
    std::cerr << "springsim run: " << config << " defines " << file.specs.size()
              << " experiments; use `springsim grid --specs` for more than one\n";
    return kExitUsage;
  }
  if (out_dir.empty()) {
    print_result(run_experiment(file.specs.front(), {file.model, {}}));
    return kExitOk;
  }
  const auto report = run_grid(file.specs, out_dir, file.model);
  if (!report.failures.empty()) {
    std::cerr << "springsim run: " << report.failures.front().error << "\n";
    return kExitFailure;
  }
  print_result(report.results.front());
  std::cout << "traces       " << report.results.front().trace_no_spring.string() << ", "
            << report.results.front().trace_with_spring.string() << "\n";
  return kExitOk;
}

int cmd_grid(const std::string& table, const std::string& specs_path, const std::string& out_dir,
             double k_motor, int threads) {
  ExperimentFile file;
  if (!table.empty()) {
    if (table != "paper") {
      std::cerr << "springsim grid: unknown table '" << table << "' (available: paper)\n";
      return kExitUsage;
    }
    file.specs = paper_table();
  } else {
    file = load_experiment_file(specs_path);
  }
  if (file.specs.empty()) {
    std::cerr << "springsim grid: no experiments to run\n";
    return kExitUsage;
  }
  if (k_motor > 0.0) file.model.k_motor = k_motor;
  if (threads > 0) omp_set_num_threads(threads);

  const auto report = run_grid(file.specs, out_dir, file.model);
  std::printf("%-16s %8s %8s %12s %12s %10s %10s %10s\n", "label", "m", "T", "E0", "Ea",
              "mu_star", "alpha0*", "ratio");
  for (const auto& r : report.results) {
    std::printf("%-16s %8.3g %8.3g %12.5g %12.5g %10.4g %10.4g %9.3f%%\n", r.spec.label.c_str(),
                r.spec.mass, r.spec.t_period, r.e0, r.ea, r.mu_star,
                r.alpha0_star.value_or(std::nan("")), 100.0 * r.ratio);
  }
  for (const auto& f : report.failures) {
    std::fprintf(stderr, "FAILED %s: %s\n", f.label.c_str(), f.error.c_str());
  }
  std::cout << "report written to " << (std::filesystem::path(out_dir) / "report.csv").string()
            << "\n";
  return report.failures.empty() ? kExitOk : kExitFailure;
}

int cmd_fit(const std::string& path, bool json, double k_motor) {
  const Trajectory traj = load_trajectory(path);
  EnergyModel model;
  if (k_motor > 0.0) model.k_motor = k_motor;
  FitDiagnostics fit;
  try {
    fit = fit_optimal(traj, model);
  } catch (const FitError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  const double e0 = energy(traj, model);
  const double ea = fit.residual_energy;
  const double ratio = e0 > 0.0 ? ea / e0 : 0.0;

  if (json) {
    nlohmann::json j;
    j["path"] = path;
    j["samples"] = traj.size();
    j["dt"] = traj.dt();
    j["k_motor"] = model.k_motor;
    j["mu_star"] = fit.mu_star;
    j["alpha0_star"] = fit.alpha0_star ? nlohmann::json(*fit.alpha0_star) : nlohmann::json();
    j["E0"] = e0;
    j["Ea"] = ea;
    j["ratio"] = ratio;
    j["physical"] = fit.physical;
    j["grad_mu"] = fit.grad_mu;
    j["grad_alpha0"] = fit.grad_alpha0;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "samples      " << traj.size() << "\n"
              << "dt           " << format_double(traj.dt()) << "\n"
              << "mu_star      " << format_double(fit.mu_star) << "\n"
              << "alpha0_star  " << optional_number(fit.alpha0_star) << "\n"
              << "E0           " << format_double(e0) << "\n"
              << "Ea           " << format_double(ea) << "\n"
              << "ratio        " << format_double(ratio) << "\n"
              << "physical     " << (fit.physical ? "true" : "false") << "\n";
  }
  return kExitOk;
}

int cmd_traces(const std::string& result_dir, const std::string& out_dir) {
  for (const auto& e : export_result_dir(result_dir, out_dir)) {
    std::printf("%-16s rows=%zu rms_no_spring=%.4g rms_with_spring=%.4g -> %s\n",
                e.label.c_str(), e.cycle.t.size(), e.cycle.rms_no_spring(),
                e.cycle.rms_with_spring(), e.svg.string().c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel torsion-spring fitting and simulation for a legged-robot knee"};
  app.require_subcommand(1);
  double k_motor = 0.0;
  app.add_option("--k-motor", k_motor, "Motor constant K scaling tau^2*dt to energy")
      ->check(CLI::PositiveNumber);

  std::string config, run_out;
  auto* run_cmd = app.add_subcommand("run", "Run one experiment from a config file");
  run_cmd->add_option("--config", config, "Experiment file")->required();
  run_cmd->add_option("--out", run_out, "Directory for traces and report.csv");

  std::string table, specs, grid_out;
  int threads = 0;
  auto* grid_cmd = app.add_subcommand("grid", "Run a grid of experiments");
  auto* table_opt = grid_cmd->add_option("--table", table, "Built-in grid (paper)");
  auto* specs_opt = grid_cmd->add_option("--specs", specs, "Experiment file");
  table_opt->excludes(specs_opt);
  grid_cmd->add_option("--out", grid_out, "Output directory")->required();
  grid_cmd->add_option("--threads", threads, "OpenMP threads for grid rows");

  std::string traj_path;
  bool json = false;
  auto* fit_cmd = app.add_subcommand("fit", "Fit the optimal spring to a knee log");
  fit_cmd->add_option("trajectory", traj_path, "CSV with header t,alpha_rad,tau_Nm")->required();
  fit_cmd->add_flag("--json", json, "Machine-readable output");

  std::string result_dir, traces_out;
  auto* traces_cmd = app.add_subcommand("traces", "Export one-cycle torque comparisons");
  traces_cmd->add_option("result_dir", result_dir, "Output directory of run/grid")->required();
  traces_cmd->add_option("--out", traces_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(config, run_out, k_motor);
    if (*grid_cmd) {
      if (table.empty() && specs.empty()) {
        std::cerr << "springsim grid: one of --table or --specs is required\n";
        return kExitUsage;
      }
      return cmd_grid(table, specs, grid_out, k_motor, threads);
    }
    if (*fit_cmd) return cmd_fit(traj_path, json, k_motor);
    if (*traces_cmd) return cmd_traces(result_dir, traces_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "springsim: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "springsim: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
