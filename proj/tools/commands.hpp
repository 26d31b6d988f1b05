#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qoc/scenario.hpp"

namespace qoc::cli {

struct GlobalOptions {
  std::string config_path;                         ///< empty = defaults-only scenario
  std::filesystem::path out_dir = "out";
  int jobs = 1;
  std::optional<CoefficientMethod> method_override;
  unsigned seed = 0;                               ///< reserved, pipeline is deterministic
};

/// Loads scenarios, applying the --method override when present.
std::vector<Scenario> load_scenarios(const GlobalOptions& opts);

void run_coefficients(const GlobalOptions& opts, const std::vector<std::string>& methods);
void run_evolve(const GlobalOptions& opts, const std::string& control_path);
/// Returns false when some scenario's sweep exhausted its budget.
bool run_optimize(const GlobalOptions& opts);
void run_spectrum(const GlobalOptions& opts, const std::string& control_path);
void run_table(const GlobalOptions& opts);

}  // namespace qoc::cli
