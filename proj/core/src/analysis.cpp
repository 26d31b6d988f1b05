#include "qoc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

namespace qoc {

double coherence(const BlochVector& x) { return 0.5 * std::hypot(x[0], x[1]); }

std::vector<double> coherence_trace(const Trajectory& traj) {
  std::vector<double> out(traj.states.size());
  std::transform(traj.states.begin(), traj.states.end(), out.begin(),
                 [](const BlochVector& x) { return coherence(x); });
  return out;
}

std::optional<double> decoherence_time(const Trajectory& traj, double threshold_fraction) {
  const auto c = coherence_trace(traj);
  if (c.empty() || c.front() == 0.0) return std::nullopt;
  const double threshold = threshold_fraction * c.front();
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] < threshold) {
      const double t0 = traj.grid.time(static_cast<int>(i) - 1);
      const double w = (c[i - 1] - threshold) / (c[i - 1] - c[i]);
      return t0 + w * traj.grid.h();
    }
  }
  return std::nullopt;
}

Spectrum power_spectrum(const std::vector<double>& samples, double sample_spacing) {
  if (samples.size() < 2) throw EvaluationError("power_spectrum: need at least two samples");
  if (!(sample_spacing > 0)) throw EvaluationError("power_spectrum: sample spacing must be > 0");
  const std::size_t n = samples.size();
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(n);

  Spectrum spec;
  spec.sample_spacing = sample_spacing;
  const std::size_t n_freq = n / 2 + 1;
  spec.freqs.resize(n_freq);
  spec.power.resize(n_freq);
  const double dw = 2.0 * std::numbers::pi / (sample_spacing * static_cast<double>(n));
  for (std::size_t k = 0; k < n_freq; ++k) {
    double re = 0.0, im = 0.0;
    const double phase = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double v = samples[j] - mean;
      re += v * std::cos(phase * static_cast<double>(j));
      im += v * std::sin(phase * static_cast<double>(j));
    }
    spec.freqs[k] = dw * static_cast<double>(k);
    spec.power[k] = re * re + im * im;
  }
  return spec;
}

double bandwidth(const Spectrum& spec, double energy_fraction) {
  if (!(energy_fraction > 0 && energy_fraction <= 1))
    throw EvaluationError("bandwidth: energy fraction must lie in (0, 1]");
  const double total = std::accumulate(spec.power.begin(), spec.power.end(), 0.0);
  if (total <= 0.0) throw EvaluationError("bandwidth: spectrum carries no power");
  double acc = 0.0;
  for (std::size_t k = 0; k < spec.power.size(); ++k) {
    acc += spec.power[k];
    if (acc >= energy_fraction * total) return spec.freqs[k];
  }
  return spec.freqs.back();
}

std::string to_string(ControllabilityLabel label) {
  switch (label) {
    case ControllabilityLabel::SlowDecay: return "slow-decay";
    case ControllabilityLabel::Controllable: return "controllable";
    case ControllabilityLabel::ControllableNonMarkovianOnly: return "controllable-non-markovian";
    case ControllabilityLabel::Uncontrollable: return "uncontrollable";
  }
  return "unknown";
}

ControllabilityLabel classify(double uncontrolled, double markovian, double nonmarkovian,
                              const ControllabilityThresholds& th) {
  if (uncontrolled >= th.slow_decay_retention) return ControllabilityLabel::SlowDecay;
  const auto controls_well = [&](double retention) {
    return retention >= th.controllable_gain * uncontrolled && retention >= th.controllable_floor;
  };
  if (controls_well(markovian)) return ControllabilityLabel::Controllable;
  if (controls_well(nonmarkovian)) return ControllabilityLabel::ControllableNonMarkovianOnly;
  return ControllabilityLabel::Uncontrollable;
}

std::vector<ControllabilityCell> controllability_table(
    const std::vector<double>& kBT_values, const std::vector<double>& r_values,
    const ReservoirParams& base, const BlochVector& x0, const TimeGrid& grid,
    const CostWeights& weights, const SweepConfig& config,
    const ControllabilityThresholds& thresholds, int jobs) {
  if (jobs < 1) throw ConfigError("controllability_table: jobs must be >= 1");

  auto evaluate = [&](double r, double kBT) {
    ReservoirParams p = base;
    p.r = r;
    p.kBT = kBT;

    ControllabilityCell cell;
    cell.kBT = kBT;
    cell.r = r;

    const CoefficientTrace exact = coefficient_trace(grid, p, CoefficientMethod::Exact);
    const double c0 = coherence(x0);

    const Trajectory free_run = integrate(x0, ControlField::zero(grid), exact, grid, p.omega0);
    cell.retention_uncontrolled = coherence(free_run.states.back()) / c0;

    // Both optimized controls are scored on the exact coefficients.
    SweepResult markov = markovian_control(x0, p, grid, weights, config);
    cell.markovian_converged = markov.converged;
    const Trajectory markov_replay = integrate(x0, markov.control, exact, grid, p.omega0);
    cell.retention_markovian = coherence(markov_replay.states.back()) / c0;

    SweepResult nonmarkov = solve_fbsm(x0, exact, grid, weights, config, p.omega0);
    cell.nonmarkovian_converged = nonmarkov.converged;
    cell.retention_nonmarkovian = coherence(nonmarkov.state.states.back()) / c0;

    cell.label = classify(cell.retention_uncontrolled, cell.retention_markovian,
                          cell.retention_nonmarkovian, thresholds);
    return cell;
  };

  std::vector<std::pair<double, double>> points;  // (r, kBT), row-major by r
  for (double r : r_values)
    for (double kBT : kBT_values) points.emplace_back(r, kBT);

  std::vector<ControllabilityCell> cells(points.size());
  if (jobs == 1) {
    for (std::size_t i = 0; i < points.size(); ++i)
      cells[i] = evaluate(points[i].first, points[i].second);
    return cells;
  }

  std::size_t next = 0;
  while (next < points.size()) {
    const std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(jobs),
                                                    points.size() - next);
    std::vector<std::future<ControllabilityCell>> futures;
    futures.reserve(batch);
    for (std::size_t j = 0; j < batch; ++j) {
      const auto [r, kBT] = points[next + j];
      futures.push_back(std::async(std::launch::async, evaluate, r, kBT));
    }
    for (std::size_t j = 0; j < batch; ++j) cells[next + j] = futures[j].get();
    next += batch;
  }
  return cells;
}

}  // namespace qoc
