#pragma once

#include <string>
#include <vector>

#include "qoc/analysis.hpp"

namespace qoc {

/// One fully specified simulation/optimization run.
struct Scenario {
  std::string label = "default";
  ReservoirParams params{};
  BlochVector x0{std::numbers::sqrt3 / 2.0, -std::numbers::sqrt2 / 4.0, -std::numbers::sqrt2 / 4.0};
  TimeGrid grid{};
  CostWeights weights{};
  SweepConfig sweep{};
  CoefficientMethod method = CoefficientMethod::Exact;

  void validate() const;
};

/// Parses the flat key=value scenario format.
///
/// Keys before the first `[scenario]` header override the defaults for every
/// scenario in the file; each `[scenario]` section then describes one run.
/// A file without headers describes a single run. Unknown keys and invariant
/// violations raise ConfigError with the offending line number.
std::vector<Scenario> parse_config(const std::string& text);

/// parse_config on a file's contents.
std::vector<Scenario> load_config(const std::string& path);

/// Effective scenario values as deterministic key=value lines (one scenario
/// per `[scenario]` block), suitable for run metadata and round-trips.
std::string format_config(const Scenario& s);

}  // namespace qoc
