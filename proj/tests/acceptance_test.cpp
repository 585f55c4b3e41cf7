// Release acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "springsim/experiment.hpp"
#include "springsim/io_util.hpp"
#include "springsim/leg_model.hpp"
#include "springsim/simulator.hpp"
#include "springsim/sliding_window.hpp"
#include "springsim/spring_fit.hpp"
#include "test_util.hpp"

namespace {

using namespace springsim;
using springsim::testing::rel_err;
using Clock = std::chrono::steady_clock;

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// tau = mu (alpha - alpha0) + noise over a random, non-degenerate angle range.
Trajectory random_law(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double lo = -1.0 + 2.5 * u(rng);
  const double width = 0.1 + 1.5 * u(rng);
  const double mu = (u(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + 19.5 * u(rng));
  const double alpha0 = (u(rng) < 0.5 ? -1.0 : 1.0) * (0.2 + 1.8 * u(rng));
  const double sigma = 0.05 + 3.0 * u(rng);
  std::normal_distribution<double> noise(0.0, sigma);
  const double dt = 0.001 + 0.02 * u(rng);
  std::vector<Sample> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = lo + width * u(rng);
    s[i] = {static_cast<double>(i) * dt, a, mu * (a - alpha0) + noise(rng)};
  }
  return Trajectory(std::move(s), dt);
}

double alpha0_err(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

std::vector<Trajectory> random_laws(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> len(10, 2000);
  std::vector<Trajectory> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_law(rng, len(rng)));
  return out;
}

void fitter_matches_least_squares() {
  const auto trajs = random_laws(101, 100);
  double worst = 0.0;
  const auto start = Clock::now();
  std::vector<FitDiagnostics> fits;
  for (const auto& t : trajs) fits.push_back(fit_optimal(t, {}));
  const double elapsed = seconds_since(start);
  bool defined = true;
  for (std::size_t i = 0; i < trajs.size(); ++i) {
    const auto line = oracle::least_squares(trajs[i].samples());
    if (!fits[i].alpha0_star) {
      defined = false;
      continue;
    }
    worst = std::max(worst, rel_err(fits[i].mu_star, line.slope));
    worst = std::max(worst, rel_err(fits[i].mu_star * *fits[i].alpha0_star, -line.intercept));
  }
  report("fit-matches-least-squares-oracle", defined && worst <= 1e-9 && elapsed < 1.0,
         "100 trajectories, max rel err " + num(worst) + " (tol 1e-9), fit time " +
             num(elapsed) + " s (limit 1 s)");
}

void stationarity(const std::vector<ExperimentResult>& grid) {
  double worst_opt = 0.0;  // |grad| / max(1, E0)
  const auto check_optimum = [&](const Trajectory& t) {
    const auto f = fit_optimal(t, {});
    const double scale = std::max(1.0, energy(t, {}));
    worst_opt = std::max({worst_opt, std::abs(f.grad_mu) / scale, std::abs(f.grad_alpha0) / scale});
  };
  for (const auto& t : random_laws(202, 100)) check_optimum(t);
  for (const auto& r : grid) check_optimum(load_trajectory(r.trace_no_spring));

  std::mt19937_64 rng(203);
  std::uniform_real_distribution<double> mu(-30.0, 30.0), a0(-3.0, 3.0);
  const auto trajs = random_laws(204, 100);
  double worst_fd = 0.0;
  for (const auto& t : trajs) {
    const SpringParams s{mu(rng), a0(rng)};
    const auto g = stationarity_residual(t, s, {});
    const double h_mu = 1e-4 * std::max(1.0, std::abs(s.mu));
    const double h_a0 = 1e-4 * std::max(1.0, std::abs(s.alpha0));
    const double fd_mu = oracle::central_difference(
        [&](double m) { return energy_with_spring(t, {m, s.alpha0}, {}); }, s.mu, h_mu);
    const double fd_a0 = oracle::central_difference(
        [&](double a) { return energy_with_spring(t, {s.mu, a}, {}); }, s.alpha0, h_a0);
    worst_fd = std::max({worst_fd, rel_err(g.d_mu, fd_mu), rel_err(g.d_alpha0, fd_a0)});
  }
  report("stationarity", worst_opt <= 1e-6 && worst_fd <= 1e-6,
         "max |grad|/max(1,E0) at optima " + num(worst_opt) +
             " (tol 1e-6); 100 random springs vs central differences, max rel err " +
             num(worst_fd) + " (tol 1e-6)");
}

void optimality_by_perturbation(const std::vector<ExperimentResult>& grid) {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  double worst_margin = INFINITY;
  bool ok = grid.size() == 6;
  for (const auto& r : grid) {
    const auto t = load_trajectory(r.trace_no_spring);
    const auto f = fit_optimal(t, {});
    if (!f.alpha0_star) {
      ok = false;
      continue;
    }
    for (int i = 0; i < 1000; ++i) {
      const SpringParams p{f.mu_star + d(rng), *f.alpha0_star + d(rng)};
      const double margin = energy_with_spring(t, p, {}) - (f.residual_energy - 1e-9);
      worst_margin = std::min(worst_margin, margin);
    }
  }
  ok = ok && worst_margin >= 0.0;
  report("optimality-by-perturbation", ok,
         std::to_string(grid.size()) + " grid rows x 1000 perturbations, min E - (E* - 1e-9) = " +
             num(worst_margin));
}

// Static equilibrium of the PD loop against gravity alone, solved by
// bisection on the interior angle; independent of the simulator.
double pd_static_angle(const LegGeometry& geom, double kp, double theta_ref) {
  double lo = 1e-9, hi = kPi - 1e-9;
  const auto f = [&](double th) { return kp * (theta_ref - th) - gravity_knee_torque(geom, th); };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(lo) > 0) == (f(mid) > 0) ? lo = mid : hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Stiffness that balances the quasi-static load along one reference period.
double quasi_static_stiffness(const ExperimentSpec& spec) {
  const auto cfg = spec.sim_config();
  const std::size_t n = static_cast<std::size_t>(std::llround(cfg.t_period * 100.0));
  std::vector<Sample> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / 100.0;
    const double h = reference_height(cfg.h0, cfg.amplitude, cfg.t_period, t, cfg.sine_convention);
    const double th = pd_static_angle(cfg.geom, cfg.controller.kp, ik_angle(cfg.geom, h));
    s[i] = {t, flexion_from_interior(th), gravity_knee_torque(cfg.geom, th)};
  }
  return oracle::least_squares(s).slope;
}

const ExperimentResult* find(const std::vector<ExperimentResult>& grid, const std::string& label) {
  for (const auto& r : grid)
    if (r.spec.label == label) return &r;
  return nullptr;
}

void table_trends(const std::vector<ExperimentResult>& grid, double grid_seconds) {
  double worst_ratio = 0.0;
  for (const auto& r : grid) worst_ratio = std::max(worst_ratio, r.ratio);
  const auto* base = find(grid, "baseline");
  const auto* fast = find(grid, "period_0.94");
  const auto* slow = find(grid, "period_3.77");
  const auto* heavy = find(grid, "mass_8.1");
  const bool rows_ok = grid.size() == 6 && base && fast && slow && heavy;
  const bool a = rows_ok && worst_ratio < 0.10;
  const bool b = rows_ok && fast->mu_star > base->mu_star && base->mu_star > slow->mu_star;
  const double mass_ratio = rows_ok ? heavy->mu_star / base->mu_star : NAN;
  const bool c = mass_ratio >= 1.7 && mass_ratio <= 2.3;

  std::string oracle_detail;
  if (rows_ok) {
    const double qs = quasi_static_stiffness(heavy->spec) / quasi_static_stiffness(base->spec);
    oracle_detail = ", quasi-static oracle ratio " + num(qs);
  }
  report("table-trends", rows_ok && a && b && c && grid_seconds < 60.0,
         "grid " + num(grid_seconds) + " s (limit 60 s); max Ea/E0 " + num(worst_ratio) +
             " (< 0.10); mu* at T=0.94/1.88/3.77: " + (rows_ok ? num(fast->mu_star) + "/" +
             num(base->mu_star) + "/" + num(slow->mu_star) : "missing") +
             " (decreasing); mu*(8.1)/mu*(4.1) " + num(mass_ratio) + " in [1.7, 2.3]" +
             oracle_detail);
}

void equivariance() {
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> scale(0.01, 100.0), shift(-3.0, 3.0), kd(0.01, 100.0);
  double worst = 0.0;
  bool defined = true;
  for (const auto& t : random_laws(506, 100)) {
    const auto f = fit_optimal(t, {});
    const double s = scale(rng), d = shift(rng), k = kd(rng);
    std::vector<Sample> scaled, shifted;
    for (const auto& x : t.samples()) {
      scaled.push_back({x.t, x.alpha, s * x.tau});
      shifted.push_back({x.t, x.alpha + d, x.tau});
    }
    const auto fs = fit_optimal(Trajectory(scaled, t.dt()), {});
    const auto fd = fit_optimal(Trajectory(shifted, t.dt()), {});
    const EnergyModel km{k};
    const auto fk = fit_optimal(t, km);
    if (!f.alpha0_star || !fs.alpha0_star || !fd.alpha0_star || !fk.alpha0_star) {
      defined = false;
      continue;
    }
    worst = std::max({worst, rel_err(fs.mu_star, s * f.mu_star),
                      alpha0_err(*fs.alpha0_star, *f.alpha0_star),
                      rel_err(fd.mu_star, f.mu_star),
                      alpha0_err(*fd.alpha0_star, *f.alpha0_star + d),
                      rel_err(fk.mu_star, f.mu_star), alpha0_err(*fk.alpha0_star, *f.alpha0_star),
                      rel_err(energy(t, km), k * energy(t, {})),
                      rel_err(fk.residual_energy / energy(t, km),
                              f.residual_energy / energy(t, {}))});
  }
  report("equivariance", defined && worst <= 1e-9,
         "torque scale, angle shift, motor constant on 100 trajectories, max err " + num(worst) +
             " (tol 1e-9)");
}

void kinematics() {
  const LegGeometry geom;
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> h(1e-6, geom.max_height() - 1e-6);
  std::uniform_real_distribution<double> th(0.01, kPi - 0.05);
  double rt = 0.0, jac = 0.0, grav = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = h(rng);
    rt = std::max(rt, std::abs(fk_height(geom, ik_angle(geom, x)) - x));
    const double a = th(rng);
    rt = std::max(rt, std::abs(ik_angle(geom, fk_height(geom, a)) - a));
    const double fd_j =
        oracle::central_difference([&](double y) { return fk_height(geom, y); }, a, 1e-6);
    jac = std::max(jac, std::abs(jacobian(geom, a) - fd_j));
    const double fd_g = oracle::central_difference(
        [&](double y) { return geom.mass * geom.g * fk_height(geom, y); }, a, 1e-5);
    grav = std::max(grav, std::abs(gravity_knee_torque(geom, a) - fd_g) / std::abs(fd_g));
  }
  report("kinematics", rt <= 1e-12 && jac <= 1e-8 && grav <= 1e-6,
         "round trip " + num(rt) + " (tol 1e-12), jacobian vs FD " + num(jac) +
             " (tol 1e-8), gravity torque vs potential FD rel " + num(grav) + " (tol 1e-6)");
}

void convergence_and_determinism() {
  ExperimentSpec spec;
  spec.label = "baseline";
  const double e_coarse = energy(run(spec.sim_config()), {});
  spec.overrides.physics_dt = 5e-4;
  const double e_fine = energy(run(spec.sim_config()), {});
  const double change = std::abs(e_fine - e_coarse) / e_coarse;

  spec.overrides.physics_dt.reset();
  const auto d1 = springsim::testing::scratch_dir("acceptance_det1");
  const auto d2 = springsim::testing::scratch_dir("acceptance_det2");
  const auto r1 = run_experiment(spec, {{}, d1});
  const auto r2 = run_experiment(spec, {{}, d2});
  const bool identical = read_file(r1.trace_no_spring) == read_file(r2.trace_no_spring) &&
                         read_file(r1.trace_with_spring) == read_file(r2.trace_with_spring);
  report("simulator-convergence-determinism", change < 0.01 && identical,
         "E0 change on halving physics step " + num(change) + " (limit 0.01); repeated runs " +
             (identical ? "byte-identical" : "differ"));
}

void streaming_matches_batch() {
  ExperimentSpec spec;
  spec.label = "long";
  auto cfg = spec.sim_config();
  cfg.duration = 100.0;
  const auto log = run(cfg);
  bool ok = log.size() == 10000;
  double worst = 0.0;
  std::size_t checked = 0;
  for (const std::size_t cap : {std::size_t{188}, std::size_t{1000}}) {
    SlidingWindow w(cap, log.dt());
    for (std::size_t i = 0; i < log.size(); ++i) {
      w.push(log[i]);
      if (w.size() < 2) continue;
      const auto windowed = w.fit({});
      const auto batch = fit_optimal(log.slice(i + 1 - w.size(), w.size()), {});
      ++checked;
      if (!windowed.alpha0_star || !batch.alpha0_star) {
        ok = false;
        continue;
      }
      worst = std::max({worst, rel_err(windowed.mu_star, batch.mu_star),
                        alpha0_err(*windowed.alpha0_star, *batch.alpha0_star),
                        rel_err(windowed.residual_energy, batch.residual_energy)});
    }
  }
  report("streaming-matches-batch", ok && worst <= 1e-9,
         std::to_string(checked) + " window slices of a " + std::to_string(log.size()) +
             "-sample log, max err " + num(worst) + " (tol 1e-9)");
}

}  // namespace

int main() {
  try {
    fitter_matches_least_squares();

    const auto dir = springsim::testing::scratch_dir("acceptance_grid");
    const auto start = Clock::now();
    const auto grid = run_grid(paper_table(), dir);
    const double grid_seconds = seconds_since(start);
    if (!grid.failures.empty()) {
      for (const auto& f : grid.failures)
        std::printf("grid row %s failed: %s\n", f.label.c_str(), f.error.c_str());
    }

    stationarity(grid.results);
    optimality_by_perturbation(grid.results);
    table_trends(grid.results, grid_seconds);
    equivariance();
    kinematics();
    convergence_and_determinism();
    streaming_matches_batch();
  } catch (const std::exception& e) {
    std::printf("FAIL unexpected error: %s\n", e.what());
    return 1;
  }
  std::printf("%d criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
