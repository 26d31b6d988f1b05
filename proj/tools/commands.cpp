#include "commands.hpp"

#include <atomic>
#include <fstream>
#include <future>

#include "csv.hpp"

namespace qoc::cli {

namespace {

std::filesystem::path scenario_dir(const GlobalOptions& opts, const Scenario& s) {
  return opts.out_dir / s.label;
}

/// Runs fn over every scenario, up to opts.jobs at a time.
template <typename Fn>
void for_each_scenario(const std::vector<Scenario>& scenarios, const GlobalOptions& opts, Fn fn) {
  if (opts.jobs <= 1 || scenarios.size() <= 1) {
    for (const Scenario& s : scenarios) fn(s);
    return;
  }
  std::size_t next = 0;
  while (next < scenarios.size()) {
    const std::size_t batch =
        std::min<std::size_t>(static_cast<std::size_t>(opts.jobs), scenarios.size() - next);
    std::vector<std::future<void>> futures;
    for (std::size_t j = 0; j < batch; ++j)
      futures.push_back(std::async(std::launch::async, fn, std::cref(scenarios[next + j])));
    for (auto& f : futures) f.get();
    next += batch;
  }
}

void write_trajectory(const std::filesystem::path& path, const Trajectory& traj) {
  CsvWriter csv(path, "t,x1,x2,x3,coherence");
  for (int i = 0; i <= traj.grid.n_steps; ++i) {
    const BlochVector& x = traj.at(i);
    csv.row({traj.grid.time(i), x[0], x[1], x[2], coherence(x)});
  }
  csv.finish();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  const auto partial = std::filesystem::path(path.string() + ".partial");
  {
    std::ofstream out(partial, std::ios::binary);
    if (!out) throw EvaluationError("cannot write " + partial.string());
    out << text;
  }
  std::filesystem::rename(partial, path);
}

}  // namespace

std::vector<Scenario> load_scenarios(const GlobalOptions& opts) {
  std::vector<Scenario> scenarios =
      opts.config_path.empty() ? std::vector<Scenario>{Scenario{}} : load_config(opts.config_path);
  if (opts.method_override) {
    for (Scenario& s : scenarios) s.method = *opts.method_override;
  }
  return scenarios;
}

void run_coefficients(const GlobalOptions& opts, const std::vector<std::string>& methods) {
  const auto scenarios = load_scenarios(opts);
  for_each_scenario(scenarios, opts, [&](const Scenario& s) {
    std::vector<CoefficientMethod> requested;
    if (methods.empty()) {
      requested.push_back(s.method);
    } else {
      for (const std::string& m : methods) requested.push_back(coefficient_method_from_string(m));
    }
    for (CoefficientMethod method : requested) {
      const CoefficientTrace trace = coefficient_trace(s.grid, s.params, method);
      const std::string name = to_string(method);
      CsvWriter csv(scenario_dir(opts, s) / ("coefficients_" + name + ".csv"),
                    "t,delta,gamma,method");
      for (int i = 0; i <= s.grid.n_steps; ++i) {
        const auto k = static_cast<std::size_t>(i);
        csv.raw_row(format_value(s.grid.time(i)) + "," + format_value(trace.delta[k]) + "," +
                    format_value(trace.gamma[k]) + "," + name);
      }
      csv.finish();
    }
  });
}

void run_evolve(const GlobalOptions& opts, const std::string& control_path) {
  const auto scenarios = load_scenarios(opts);
  for_each_scenario(scenarios, opts, [&](const Scenario& s) {
    const auto dir = scenario_dir(opts, s);
    const CoefficientTrace coeffs = coefficient_trace(s.grid, s.params, s.method);
    write_trajectory(dir / "evolve_uncontrolled.csv",
                     integrate(s.x0, ControlField::zero(s.grid), coeffs, s.grid, s.params.omega0));
    write_trajectory(dir / "evolve_target.csv", target_trajectory(s.grid, s.x0, s.params.omega0));
    if (!control_path.empty()) {
      const ControlField control = read_control(control_path);
      write_trajectory(dir / "evolve_controlled.csv",
                       integrate(s.x0, control, coeffs, s.grid, s.params.omega0));
    }
  });
}

bool run_optimize(const GlobalOptions& opts) {
  const auto scenarios = load_scenarios(opts);
  std::atomic<bool> all_converged{true};
  for_each_scenario(scenarios, opts, [&](const Scenario& s) {
    const auto dir = scenario_dir(opts, s);
    const CoefficientTrace coeffs = coefficient_trace(s.grid, s.params, s.method);
    const SweepResult result =
        solve_fbsm(s.x0, coeffs, s.grid, s.weights, s.sweep, s.params.omega0);
    if (!result.converged) all_converged = false;

    write_trajectory(dir / "state.csv", result.state);
    {
      CsvWriter csv(dir / "costate.csv", "t,lambda1,lambda2,lambda3");
      for (int i = 0; i <= s.grid.n_steps; ++i) {
        const Eigen::Vector3d& l = result.costate.at(i);
        csv.row({s.grid.time(i), l[0], l[1], l[2]});
      }
      csv.finish();
    }
    {
      CsvWriter csv(dir / "control.csv", "t,ux,uy");
      for (int i = 0; i <= s.grid.n_steps; ++i) {
        const auto k = static_cast<std::size_t>(i);
        csv.row({s.grid.time(i), result.control.ux[k], result.control.uy[k]});
      }
      csv.finish();
    }
    {
      CsvWriter csv(dir / "cost_history.csv", "iteration,cost");
      for (std::size_t i = 0; i < result.cost_history.size(); ++i)
        csv.row({static_cast<double>(i), result.cost_history[i]});
      csv.finish();
    }
    std::string meta = format_config(s);
    meta += "converged = " + std::string(result.converged ? "true" : "false") + "\n";
    meta += "stationarity_residual = " + format_value(result.stationarity_residual) + "\n";
    meta += "iterations = " + std::to_string(result.cost_history.size() - 1) + "\n";
    meta += "final_cost = " + format_value(result.cost_history.back()) + "\n";
    write_text(dir / "metadata.txt", meta);
  });
  return all_converged;
}

void run_spectrum(const GlobalOptions& opts, const std::string& control_path) {
  if (control_path.empty()) throw ConfigError("spectrum requires --control CSV");
  const auto scenarios = load_scenarios(opts);
  const ControlField control = read_control(control_path);
  const double h = control.grid.h();
  const Spectrum sx = power_spectrum(control.ux, h);
  const Spectrum sy = power_spectrum(control.uy, h);
  const Scenario& s = scenarios.front();
  for (const auto& [name, spec] : {std::pair{"spectrum_ux.csv", &sx}, {"spectrum_uy.csv", &sy}}) {
    CsvWriter csv(scenario_dir(opts, s) / name, "omega,power");
    for (std::size_t k = 0; k < spec->freqs.size(); ++k) csv.row({spec->freqs[k], spec->power[k]});
    csv.finish();
  }
}

void run_table(const GlobalOptions& opts) {
  const auto scenarios = load_scenarios(opts);
  const Scenario& s = scenarios.front();
  const std::vector<double> kBT_values{0.3, 3.0, 300.0};
  const std::vector<double> r_values{0.1, 1.0, 10.0};
  const ControllabilityThresholds thresholds;
  const auto cells = controllability_table(kBT_values, r_values, s.params, s.x0, s.grid,
                                           s.weights, s.sweep, thresholds, opts.jobs);
  const auto dir = scenario_dir(opts, s);
  CsvWriter csv(dir / "table.csv",
                "r,kBT,label,retention_uncontrolled,retention_markovian,retention_nonmarkovian,"
                "markovian_converged,nonmarkovian_converged");
  for (const ControllabilityCell& cell : cells) {
    csv.raw_row(format_value(cell.r) + "," + format_value(cell.kBT) + "," + to_string(cell.label) +
                "," + format_value(cell.retention_uncontrolled) + "," +
                format_value(cell.retention_markovian) + "," +
                format_value(cell.retention_nonmarkovian) + "," +
                (cell.markovian_converged ? "true" : "false") + "," +
                (cell.nonmarkovian_converged ? "true" : "false"));
  }
  csv.finish();

  std::string meta;
  meta += "slow_decay_retention = " + format_value(thresholds.slow_decay_retention) + "\n";
  meta += "controllable_gain = " + format_value(thresholds.controllable_gain) + "\n";
  meta += "controllable_floor = " + format_value(thresholds.controllable_floor) + "\n";
  write_text(dir / "table_metadata.txt", meta);
}

}  // namespace qoc::cli
