#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qoc/pmp.hpp"

namespace qoc {

/// |rho01| = sqrt(x1^2 + x2^2) / 2.
double coherence(const BlochVector& x);

std::vector<double> coherence_trace(const Trajectory& traj);

/// First time the coherence drops below threshold_fraction times its initial
/// value, linearly interpolated between samples; empty if never crossed.
std::optional<double> decoherence_time(const Trajectory& traj, double threshold_fraction = 1.0 / std::numbers::e);

/// One-sided squared-magnitude DFT of a mean-removed real signal.
struct Spectrum {
  std::vector<double> freqs;  ///< angular frequencies, [0, pi/h]
  std::vector<double> power;
  double sample_spacing = 0.0;
};

/// Rectangular window, mean removed before the transform.
Spectrum power_spectrum(const std::vector<double>& samples, double sample_spacing);

/// Smallest angular frequency below which the cumulative power reaches
/// energy_fraction of the total. Throws EvaluationError on an all-zero
/// spectrum.
double bandwidth(const Spectrum& spec, double energy_fraction = 0.9);

enum class ControllabilityLabel { SlowDecay, Controllable, ControllableNonMarkovianOnly, Uncontrollable };

std::string to_string(ControllabilityLabel label);

/// Classification thresholds on the coherence retention rho_c =
/// coherence(tf) / coherence(0). Configuration, not physics.
struct ControllabilityThresholds {
  double slow_decay_retention = 0.8;  ///< uncontrolled retention already this high
  double controllable_gain = 2.0;     ///< controlled retention must beat uncontrolled by this factor
  double controllable_floor = 0.5;    ///< ... and reach at least this absolute retention
};

struct ControllabilityCell {
  double kBT = 0.0;
  double r = 0.0;
  ControllabilityLabel label = ControllabilityLabel::Uncontrollable;
  double retention_uncontrolled = 0.0;
  double retention_markovian = 0.0;
  double retention_nonmarkovian = 0.0;
  bool markovian_converged = false;
  bool nonmarkovian_converged = false;
};

ControllabilityLabel classify(double uncontrolled, double markovian, double nonmarkovian,
                              const ControllabilityThresholds& thresholds);

/// Runs the uncontrolled, Markovian-controlled and non-Markovian-controlled
/// evolutions for every (kBT, r) pair. Both optimized controls are replayed
/// on the exact time-dependent coefficients so retentions are comparable.
/// jobs > 1 evaluates cells concurrently.
std::vector<ControllabilityCell> controllability_table(
    const std::vector<double>& kBT_values, const std::vector<double>& r_values,
    const ReservoirParams& base, const BlochVector& x0, const TimeGrid& grid,
    const CostWeights& weights, const SweepConfig& config,
    const ControllabilityThresholds& thresholds = {}, int jobs = 1);

}  // namespace qoc
