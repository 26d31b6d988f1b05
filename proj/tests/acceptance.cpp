// Acceptance gate: one pass/fail line per criterion, nonzero exit when any
// criterion fails.

#include <cmath>
#include <cstdio>
#include <future>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "qoc/analysis.hpp"
#include "qoc/scenario.hpp"

using namespace qoc;

namespace {

const BlochVector kStart{std::numbers::sqrt3 / 2.0, -std::numbers::sqrt2 / 4.0,
                         -std::numbers::sqrt2 / 4.0};
const std::vector<double> kTemps{0.3, 3.0, 300.0};
const std::vector<double> kRatios{0.1, 1.0, 10.0};
const TimeGrid kGrid{0.0, 20.0, 4000};

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              detail.empty() ? "" : " — ", detail.c_str());
  if (!pass) ++failures;
}

ReservoirParams cell(double kBT, double r) {
  ReservoirParams p;
  p.kBT = kBT;
  p.r = r;
  return p;
}

/// Delta(t) via the closed form with the documented quadrature fallback.
double delta_value(double t, const ReservoirParams& p) {
  if (t < series_switch_time(p)) return delta_quadrature(t, p);
  return delta_exact(t, p);
}

void criterion_1() {
  double worst_gamma = 0.0, worst_delta = 0.0;
  for (double kBT : kTemps) {
    for (double r : kRatios) {
      const ReservoirParams p = cell(kBT, r);
      const double t_series = series_switch_time(p);
      for (int i = 1; i <= 200; ++i) {
        const double t = 20.0 * i / 200.0;
        worst_gamma = std::max(worst_gamma, std::abs(gamma_exact(t, p) - gamma_quadrature(t, p)));
        if (t > t_series)
          worst_delta = std::max(worst_delta, std::abs(delta_exact(t, p) - delta_quadrature(t, p)));
      }
    }
  }
  const double tol = 1e-6 * 0.01;  // 1e-6 * alpha2 * omega0
  char detail[160];
  std::snprintf(detail, sizeof(detail), "max |gamma - oracle| = %.2e, max |delta - oracle| = %.2e, tol %.0e",
                worst_gamma, worst_delta, tol);
  report(1, "coefficient oracle equivalence", worst_gamma <= tol && worst_delta <= tol, detail);
}

void criterion_2() {
  bool pass = true;
  double worst_gamma = 0.0;
  for (double kBT : kTemps) {
    for (double r : kRatios) {
      const ReservoirParams p = cell(kBT, r);
      const MarkovianLimits lim = markovian_limits(p);
      for (double t : {30.0 / (r * p.omega0), 35.0 / (r * p.omega0), 45.0 / (r * p.omega0)})
        worst_gamma = std::max(worst_gamma, std::abs(gamma_exact(t, p) - lim.gamma_M) / lim.gamma_M);
      const double t_inf = 60.0 / (r * p.omega0);
      if (std::abs(delta_highT(t_inf, p) - lim.delta_M_highT) > 1e-12 * lim.delta_M_highT)
        pass = false;
    }
  }
  if (worst_gamma > 1e-6) pass = false;
  const MarkovianLimits hot = markovian_limits(cell(1e4, 0.1));
  const double ratio = hot.delta_M / hot.delta_M_highT;
  if (std::abs(ratio - 1.0) > 1e-3) pass = false;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "max rel gamma deviation %.2e, delta_M/delta_M_HT(kBT=1e4) = %.6f", worst_gamma, ratio);
  report(2, "limit consistency", pass, detail);
}

void criterion_3() {
  const ReservoirParams p = cell(300.0, 0.1);
  const double scale = markovian_limits(p).delta_M_highT;
  double worst = 0.0;
  for (int i = 0; i <= 398; ++i) {
    const double t = 0.1 + (20.0 - 0.1) * i / 398.0;
    worst = std::max(worst, std::abs(delta_exact(t, p) - delta_highT(t, p)) / scale);
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail), "max relative deviation %.2e (limit 0.02)", worst);
  report(3, "high-temperature agreement", worst <= 0.02, detail);
}

void criterion_4() {
  double min_large_r = std::numeric_limits<double>::infinity();
  const ReservoirParams large = cell(300.0, 10.0);
  for (int i = 1; i <= 2000; ++i)
    min_large_r = std::min(min_large_r, delta_value(20.0 * i / 2000.0, large));

  double min_small_r = std::numeric_limits<double>::infinity();
  for (double kBT : kTemps) {
    const ReservoirParams small = cell(kBT, 0.1);
    for (int i = 1; i <= 2000; ++i)
      min_small_r = std::min(min_small_r, delta_value(20.0 * i / 2000.0, small));
  }
  const bool pass = min_large_r < 0.0 && min_small_r > 0.0;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "min delta(r=10, kBT=300) = %+.3e (expected < 0); min delta(r=0.1) = %+.3e (expected > 0)",
                min_large_r, min_small_r);
  report(4, "non-Lindblad detection", pass, detail);
}

void criterion_5() {
  CoefficientTrace closed;
  auto run = [&](int n) {
    TimeGrid grid{0.0, 2.0 * std::numbers::pi, n};
    CoefficientTrace trace;
    trace.grid = grid;
    trace.delta.assign(grid.size(), 0.0);
    trace.gamma.assign(grid.size(), 0.0);
    return integrate({1.0, 0.0, 0.0}, ControlField::zero(grid), trace, grid, 1.0).states.back();
  };
  const double round_trip = (run(1000) - BlochVector{1.0, 0.0, 0.0}).norm();
  const BlochVector reference = run(4000);
  const double order = std::log2((run(250) - reference).norm() / (run(500) - reference).norm());
  char detail[96];
  std::snprintf(detail, sizeof(detail), "round-trip error %.2e, observed order %.2f", round_trip, order);
  report(5, "integrator accuracy and order", round_trip <= 1e-8 && order >= 3.8, detail);
}

void criterion_6() {
  const ReservoirParams p = cell(300.0, 0.1);
  const CoefficientTrace coeffs = coefficient_trace(kGrid, p, CoefficientMethod::Exact);
  const CostWeights w;
  const Trajectory target = target_trajectory(kGrid, kStart, p.omega0);

  ControlField u = ControlField::zero(kGrid);
  for (int i = 0; i <= kGrid.n_steps; ++i) {
    const double t = kGrid.time(i);
    u.ux[static_cast<std::size_t>(i)] = 0.05 * std::sin(0.7 * t);
    u.uy[static_cast<std::size_t>(i)] = -0.04 * std::cos(1.3 * t);
  }
  const Trajectory state = integrate(kStart, u, coeffs, kGrid, p.omega0);
  const Trajectory costate = integrate_costate(state, target, u, coeffs, p.omega0);

  std::mt19937 rng(20260823);
  std::normal_distribution<double> gauss(0.0, 1.0);
  bool pass = true;
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    ControlField du = ControlField::zero(kGrid);
    for (std::size_t i = 0; i < du.ux.size(); ++i) {
      du.ux[i] = gauss(rng);
      du.uy[i] = gauss(rng);
    }
    auto grad_dot = [&](int i) {
      const auto k = static_cast<std::size_t>(i);
      const BlochVector& x = state.at(i);
      const Eigen::Vector3d& l = costate.at(i);
      return (2.0 * w.theta * u.ux[k] - (l[1] * x[2] - l[2] * x[1])) * du.ux[k] +
             (2.0 * w.theta * u.uy[k] - (l[2] * x[0] - l[0] * x[2])) * du.uy[k];
    };
    double predicted = 0.5 * (grad_dot(0) + grad_dot(kGrid.n_steps));
    for (int i = 1; i < kGrid.n_steps; ++i) predicted += grad_dot(i);
    predicted *= kGrid.h();

    const double eps = 1e-5;
    auto j_at = [&](double sign) {
      ControlField v = u;
      for (std::size_t i = 0; i < v.ux.size(); ++i) {
        v.ux[i] += sign * eps * du.ux[i];
        v.uy[i] += sign * eps * du.uy[i];
      }
      return cost(integrate(kStart, v, coeffs, kGrid, p.omega0), v, w, target);
    };
    const double measured = (j_at(1.0) - j_at(-1.0)) / (2.0 * eps);
    const double rel = std::abs(predicted - measured) / std::abs(measured);
    worst = std::max(worst, rel);
    if (rel > 1e-3) pass = false;
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail), "worst relative mismatch %.2e over 5 directions", worst);
  report(6, "adjoint gradient check", pass, detail);
}

struct CellRuns {
  double kBT = 0.0, r = 0.0;
  SweepResult markov, nonmarkov;
  CoefficientTrace exact;
};

std::vector<CellRuns> run_all_cells() {
  std::vector<std::pair<double, double>> points;
  for (double r : kRatios)
    for (double kBT : kTemps) points.emplace_back(r, kBT);

  auto evaluate = [&](std::pair<double, double> pt) {
    CellRuns runs;
    runs.r = pt.first;
    runs.kBT = pt.second;
    const ReservoirParams p = cell(runs.kBT, runs.r);
    runs.exact = coefficient_trace(kGrid, p, CoefficientMethod::Exact);
    runs.nonmarkov = solve_fbsm(kStart, runs.exact, kGrid, {}, {}, p.omega0);
    runs.markov = markovian_control(kStart, p, kGrid, {}, {});
    return runs;
  };

  const unsigned jobs = std::max(2u, std::thread::hardware_concurrency());
  std::vector<CellRuns> out(points.size());
  std::size_t next = 0;
  while (next < points.size()) {
    const std::size_t batch = std::min<std::size_t>(jobs, points.size() - next);
    std::vector<std::future<CellRuns>> futures;
    for (std::size_t j = 0; j < batch; ++j)
      futures.push_back(std::async(std::launch::async, evaluate, points[next + j]));
    for (std::size_t j = 0; j < batch; ++j) out[next + j] = futures[j].get();
    next += batch;
  }
  return out;
}

void criterion_7(const std::vector<CellRuns>& cells) {
  bool pass = true;
  std::string note;
  for (const CellRuns& runs : cells) {
    for (const SweepResult* res : {&runs.markov, &runs.nonmarkov}) {
      if (res->cost_history.back() > res->cost_history.front()) pass = false;
      for (std::size_t i = 1; i < res->cost_history.size(); ++i)
        if (res->cost_history[i] > res->cost_history[i - 1] * (1.0 + 1e-13)) pass = false;
      if (res->converged &&
          res->stationarity_residual > 1e-4 * std::max(1.0, res->control.max_abs()))
        pass = false;
      if (!res->converged) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), " [no convergence at kBT=%g r=%g]", runs.kBT, runs.r);
        note += buf;
      }
    }
  }

  CoefficientTrace degenerate;
  degenerate.grid = kGrid;
  degenerate.delta.assign(kGrid.size(), 0.0);
  degenerate.gamma.assign(kGrid.size(), 0.0);
  const SweepResult trivial = solve_fbsm(kStart, degenerate, kGrid, {}, {}, 1.0);
  const bool degenerate_ok =
      trivial.cost_history.back() <= 1e-8 && trivial.control.max_abs() <= 1e-4;
  if (!degenerate_ok) pass = false;
  char detail[160];
  std::snprintf(detail, sizeof(detail), "degenerate J* = %.2e, |u*| = %.2e%s",
                trivial.cost_history.back(), trivial.control.max_abs(), note.c_str());
  report(7, "solver optimality properties", pass, detail);
}

const CellRuns& find_cell(const std::vector<CellRuns>& cells, double kBT, double r) {
  for (const CellRuns& c : cells)
    if (c.kBT == kBT && c.r == r) return c;
  std::abort();
}

void criterion_8(const std::vector<CellRuns>& cells) {
  const CellRuns& runs = find_cell(cells, 300.0, 0.1);
  const ReservoirParams p = cell(300.0, 0.1);
  const Trajectory uncontrolled =
      integrate(kStart, ControlField::zero(kGrid), runs.exact, kGrid, p.omega0);
  const Trajectory markov_replay =
      integrate(kStart, runs.markov.control, runs.exact, kGrid, p.omega0);

  double worst_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid.n_steps; ++i) {
    if (kGrid.time(i) < 1.0) continue;
    worst_margin = std::min(worst_margin, coherence(runs.nonmarkov.state.at(i)) -
                                              coherence(uncontrolled.at(i)));
  }
  const double final_nm = coherence(runs.nonmarkov.state.states.back());
  const double final_m = coherence(markov_replay.states.back());
  const bool pass = worst_margin >= 0.0 && final_nm >= final_m;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "min(controlled - uncontrolled) coherence on [1, 20] = %+.3e; final nM %.4f vs M %.4f",
                worst_margin, final_nm, final_m);
  report(8, "figure 1/2 qualitative reproduction", pass, detail);
}

void criterion_9(const std::vector<CellRuns>& cells) {
  const CellRuns& runs = find_cell(cells, 300.0, 0.1);
  auto combined_bandwidth = [&](const ControlField& u) {
    const Spectrum sx = power_spectrum(u.ux, kGrid.h());
    const Spectrum sy = power_spectrum(u.uy, kGrid.h());
    Spectrum sum = sx;
    for (std::size_t k = 0; k < sum.power.size(); ++k) sum.power[k] += sy.power[k];
    return bandwidth(sum, 0.9);
  };
  const double bw_nm = combined_bandwidth(runs.nonmarkov.control);
  const double bw_m = combined_bandwidth(runs.markov.control);
  char detail[120];
  std::snprintf(detail, sizeof(detail), "bandwidth nM = %.3f, M = %.3f (both channels combined)",
                bw_nm, bw_m);
  report(9, "figure 3 qualitative reproduction", bw_nm > bw_m, detail);
}

void criterion_10() {
  const unsigned jobs = std::max(2u, std::thread::hardware_concurrency());
  const auto table = controllability_table(kTemps, kRatios, ReservoirParams{}, kStart, kGrid, {},
                                           {}, {}, static_cast<int>(jobs));
  using L = ControllabilityLabel;
  const L expected[9] = {L::SlowDecay,    L::SlowDecay,      L::ControllableNonMarkovianOnly,
                         L::Controllable, L::Uncontrollable, L::Uncontrollable,
                         L::Controllable, L::Uncontrollable, L::Uncontrollable};
  bool pass = true;
  std::string detail;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i].label != expected[i]) {
      pass = false;
      char buf[128];
      std::snprintf(buf, sizeof(buf), "%s(r=%g, kBT=%g): %s, expected %s", detail.empty() ? "" : "; ",
                    table[i].r, table[i].kBT, to_string(table[i].label).c_str(),
                    to_string(expected[i]).c_str());
      detail += buf;
    }
  }
  if (pass) detail = "all 9 labels match";
  report(10, "table I reproduction", pass, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  const std::vector<CellRuns> cells = run_all_cells();
  criterion_7(cells);
  criterion_8(cells);
  criterion_9(cells);
  criterion_10();
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
