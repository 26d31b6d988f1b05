#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitEvaluationError = 4;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal decoherence control for a qubit in an Ohmic reservoir"};
  app.require_subcommand(1);

  qoc::cli::GlobalOptions opts;
  std::string method_name;
  app.add_option("--config", opts.config_path, "Scenario file (omit for built-in defaults)");
  app.add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
  app.add_option("--jobs", opts.jobs, "Concurrent scenario limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--method", method_name, "Coefficient method override")
      ->check(CLI::IsMember({"exact", "high-t", "markovian", "quadrature"}));
  app.add_option("--seed", opts.seed, "Reserved; the pipeline is deterministic");

  std::vector<std::string> coeff_methods;
  CLI::App* coefficients =
      app.add_subcommand("coefficients", "Export Delta(t), gamma(t) traces");
  coefficients
      ->add_option("--methods", coeff_methods, "Methods to export (default: scenario's method)")
      ->check(CLI::IsMember({"exact", "high-t", "markovian", "quadrature"}));

  std::string evolve_control;
  CLI::App* evolve = app.add_subcommand("evolve", "Integrate the Bloch dynamics");
  evolve->add_option("--control", evolve_control, "Replay a t,ux,uy control CSV");

  CLI::App* optimize = app.add_subcommand("optimize", "Run the forward-backward sweep");

  std::string spectrum_control;
  CLI::App* spectrum = app.add_subcommand("spectrum", "Power spectrum of a control CSV");
  spectrum->add_option("--control", spectrum_control, "t,ux,uy control CSV")->required();

  CLI::App* table = app.add_subcommand("table", "Controllability classification sweep");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!method_name.empty()) opts.method_override = qoc::coefficient_method_from_string(method_name);
    if (coefficients->parsed()) {
      qoc::cli::run_coefficients(opts, coeff_methods);
    } else if (evolve->parsed()) {
      qoc::cli::run_evolve(opts, evolve_control);
    } else if (optimize->parsed()) {
      if (!qoc::cli::run_optimize(opts)) {
        std::fprintf(stderr, "qoc: non-convergence: sweep budget exhausted (outputs written)\n");
        return kExitNonConvergence;
      }
    } else if (spectrum->parsed()) {
      qoc::cli::run_spectrum(opts, spectrum_control);
    } else if (table->parsed()) {
      qoc::cli::run_table(opts);
    }
  } catch (const qoc::ConfigError& e) {
    std::fprintf(stderr, "qoc: config-error: %s\n", e.what());
    return kExitConfigError;
  } catch (const qoc::NonConvergenceError& e) {
    std::fprintf(stderr, "qoc: non-convergence: %s\n", e.what());
    return kExitNonConvergence;
  } catch (const qoc::EvaluationError& e) {
    std::fprintf(stderr, "qoc: evaluation-error: %s\n", e.what());
    return kExitEvaluationError;
  }
  return 0;
}
