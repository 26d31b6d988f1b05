#pragma once

#include <string>
#include <vector>

#include "qoc/grid.hpp"
#include "qoc/reservoir_params.hpp"

namespace qoc {

enum class CoefficientMethod { Exact, HighT, Markovian, Quadrature };

std::string to_string(CoefficientMethod m);
CoefficientMethod coefficient_method_from_string(const std::string& name);

/// Diffusion Delta(t) and dissipation gamma(t) sampled on a uniform grid.
struct CoefficientTrace {
  TimeGrid grid;
  std::vector<double> delta;
  std::vector<double> gamma;
  CoefficientMethod method = CoefficientMethod::Exact;
  /// Sample indices of an Exact trace that were filled from the quadrature
  /// path because the series argument was too close to 1.
  std::vector<int> fallback_samples;

  double delta_at(double t) const;  ///< linear interpolation, clamped to the grid
  double gamma_at(double t) const;
};

/// Ohmic spectral density with Lorentz-Drude cutoff,
/// J(omega) = (2 gamma0 / pi) omega omega_c^2 / (omega_c^2 + omega^2).
double spectral_density(double omega, const ReservoirParams& params);

/// Thermal noise kernel k(tau) from its Matsubara expansion, truncated at
/// |n| <= n_matsubara. Terms with omega_c ~= |nu_n| take the removable-limit
/// branch (1 - omega_c tau) e^{-omega_c tau} / (2 omega_c).
double noise_kernel(double tau, const ReservoirParams& params, int n_matsubara);

/// Analytic bound on the |n| > n_matsubara remainder of noise_kernel.
double noise_kernel_tail_bound(double tau, const ReservoirParams& params, int n_matsubara);

/// Dissipation kernel mu(tau) = 2 omega_c^2 e^{-omega_c |tau|} sign(tau).
double dissipation_kernel(double tau, const ReservoirParams& params);

/// Dissipation coefficient gamma(t) in closed form.
double gamma_exact(double t, const ReservoirParams& params);

/// Diffusion coefficient Delta(t) from the hypergeometric closed form.
///
/// Valid on the series branch e^{-nu1 t} <= 0.95 (throws NonConvergenceError
/// below that time; callers fall back to delta_quadrature). Throws
/// EvaluationError when omega_c / (2 pi kBT) sits on an integer (cot pole)
/// or when the residual imaginary part exceeds 10 * tol.
double delta_exact(double t, const ReservoirParams& params, double tol = 1e-10);

/// Largest e^{-nu1 t} accepted by the series branch of delta_exact.
inline constexpr double kSeriesArgMax = 0.95;

/// Smallest time for which delta_exact uses the series branch.
double series_switch_time(const ReservoirParams& params);

/// High-temperature closed form of the diffusion coefficient.
double delta_highT(double t, const ReservoirParams& params);

/// Reference evaluation of gamma(t) by adaptive quadrature of the
/// dissipation kernel, (alpha2 / 2) * int_0^t mu(tau) sin(omega0 tau) dtau.
double gamma_quadrature(double t, const ReservoirParams& params, double tol = 1e-11);

/// Reference evaluation of Delta(t) by adaptive quadrature of the noise
/// kernel, (alpha2 / 2) * int_0^t k(tau) cos(omega0 tau) dtau. The kernel's
/// slow Matsubara tail is resummed analytically so the truncation error
/// stays below the quadrature tolerance.
double delta_quadrature(double t, const ReservoirParams& params, double tol = 1e-11);

/// Stationary limits gamma_M, Delta_M and the high-temperature Delta_M.
MarkovianLimits markovian_limits(const ReservoirParams& params);

/// kBT at and above which Markovian traces use the high-temperature limit.
inline constexpr double kMarkovianHighTThreshold = 30.0;

/// Batch evaluation of Delta(t), gamma(t) on a grid with the chosen method.
CoefficientTrace coefficient_trace(const TimeGrid& grid, const ReservoirParams& params,
                                   CoefficientMethod method);

}  // namespace qoc
