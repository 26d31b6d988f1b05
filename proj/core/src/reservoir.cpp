#include "qoc/reservoir.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "qoc/special.hpp"

namespace qoc {

namespace {

constexpr double kPi = std::numbers::pi;

bool near_positive_integer(double v, double tol) {
  double nearest = std::round(v);
  return nearest >= 1.0 && std::abs(v - nearest) < tol;
}

/// Matsubara term (omega_c e^{-omega_c tau} - nu e^{-nu tau}) / (omega_c^2 - nu^2)
/// with the removable-singularity branch at nu = omega_c.
double matsubara_term(double tau, double omega_c, double nu) {
  if (std::abs(nu - omega_c) < 1e-6 * omega_c) {
    return (1.0 - omega_c * tau) * std::exp(-omega_c * tau) / (2.0 * omega_c);
  }
  return (omega_c * std::exp(-omega_c * tau) - nu * std::exp(-nu * tau)) /
         ((omega_c - nu) * (omega_c + nu));
}

/// Noise kernel with the slowly decaying part of the Matsubara sum resummed
/// analytically; truncation error below eps_abs for all tau > 0.
double noise_kernel_resummed(double tau, const ReservoirParams& p, double eps_abs) {
  const double omega_c = p.omega_c();
  const double nu1 = p.nu1();
  const double rc = p.rc();
  const double pref = 4.0 * p.kBT * omega_c * omega_c;
  if (near_positive_integer(rc, 1e-9))
    throw EvaluationError("noise kernel resummation: omega_c/(2 pi kBT) on an integer");

  const double x = std::exp(-nu1 * tau);
  const double one_minus_x = -std::expm1(-nu1 * tau);
  const double exp_wc = std::exp(-omega_c * tau);

  const int n_direct = std::max(64, static_cast<int>(std::ceil(std::numbers::sqrt2 * rc)) + 8);

  double sum = exp_wc / omega_c;  // n = 0
  double partial_inv = 0.0;       // sum_{n<=N} 1/(omega_c^2 - nu_n^2)
  double partial_log = 0.0;       // sum_{n<=N} x^n / n
  double xn = 1.0;
  for (int n = 1; n <= n_direct; ++n) {
    const double nu = nu1 * n;
    xn *= x;
    sum += 2.0 * matsubara_term(tau, omega_c, nu);
    partial_inv += 1.0 / ((omega_c - nu) * (omega_c + nu));
    partial_log += xn / n;
  }

  // n > N, exponentially flat piece: closed form via the cotangent sum.
  const double inv_sum_full = (kPi * rc / std::tan(kPi * rc) - 1.0) / (2.0 * omega_c * omega_c);
  sum += 2.0 * omega_c * exp_wc * (inv_sum_full - partial_inv);

  // n > N, leading 1/nu_n piece of -nu_n e^{-nu_n tau} / (omega_c^2 - nu_n^2).
  sum += (2.0 / nu1) * (-std::log(one_minus_x) - partial_log);

  // n > N, remaining omega_c^2 / (nu_n (nu_n^2 - omega_c^2)) correction.
  constexpr int kCorrectionCap = 20000;
  const double eps_term = eps_abs / pref;
  for (int n = n_direct + 1; n <= n_direct + kCorrectionCap; ++n) {
    const double nu = nu1 * n;
    xn *= x;
    const double g = omega_c * omega_c * xn / (nu * (nu - omega_c) * (nu + omega_c));
    sum += 2.0 * g;
    if (x < 1.0 && 2.0 * g * x / one_minus_x < eps_term) break;
  }

  return pref * sum;
}

}  // namespace

std::string to_string(CoefficientMethod m) {
  switch (m) {
    case CoefficientMethod::Exact: return "exact";
    case CoefficientMethod::HighT: return "high-t";
    case CoefficientMethod::Markovian: return "markovian";
    case CoefficientMethod::Quadrature: return "quadrature";
  }
  return "unknown";
}

CoefficientMethod coefficient_method_from_string(const std::string& name) {
  if (name == "exact") return CoefficientMethod::Exact;
  if (name == "high-t" || name == "hight" || name == "high_t") return CoefficientMethod::HighT;
  if (name == "markovian") return CoefficientMethod::Markovian;
  if (name == "quadrature") return CoefficientMethod::Quadrature;
  throw ConfigError("unknown coefficient method '" + name + "'");
}

double spectral_density(double omega, const ReservoirParams& p) {
  if (omega < 0) throw EvaluationError("spectral_density: omega must be >= 0");
  const double wc2 = p.omega_c() * p.omega_c();
  return (2.0 * p.gamma0 / kPi) * omega * wc2 / (wc2 + omega * omega);
}

double noise_kernel(double tau, const ReservoirParams& p, int n_matsubara) {
  if (tau < 0) throw EvaluationError("noise_kernel: tau must be >= 0");
  if (n_matsubara < 1) throw EvaluationError("noise_kernel: n_matsubara must be >= 1");
  const double omega_c = p.omega_c();
  const double nu1 = p.nu1();
  double sum = std::exp(-omega_c * tau) / omega_c;  // n = 0
  for (int n = 1; n <= n_matsubara; ++n) {
    sum += 2.0 * matsubara_term(tau, omega_c, nu1 * n);  // +-n pair
  }
  return 4.0 * p.kBT * omega_c * omega_c * sum;
}

double noise_kernel_tail_bound(double tau, const ReservoirParams& p, int n_matsubara) {
  const double omega_c = p.omega_c();
  const double nu1 = p.nu1();
  if (nu1 * (n_matsubara + 1) <= std::numbers::sqrt2 * omega_c)
    return std::numeric_limits<double>::infinity();
  const double x = std::exp(-nu1 * tau);
  const double one_minus_x = -std::expm1(-nu1 * tau);
  double partial_log = 0.0;
  double xn = 1.0;
  for (int n = 1; n <= n_matsubara; ++n) {
    xn *= x;
    partial_log += xn / n;
  }
  double log_tail = tau > 0 ? -std::log(one_minus_x) - partial_log
                            : std::numeric_limits<double>::infinity();
  double bound = 4.0 * omega_c * std::exp(-omega_c * tau) / (nu1 * nu1 * n_matsubara) +
                 (4.0 / nu1) * log_tail;
  return 4.0 * p.kBT * omega_c * omega_c * bound;
}

double dissipation_kernel(double tau, const ReservoirParams& p) {
  if (tau == 0.0) return 0.0;
  const double omega_c = p.omega_c();
  const double sign = tau > 0 ? 1.0 : -1.0;
  return 2.0 * omega_c * omega_c * std::exp(-omega_c * std::abs(tau)) * sign;
}

double gamma_exact(double t, const ReservoirParams& p) {
  if (t < 0) throw EvaluationError("gamma_exact: t must be >= 0");
  const double r = p.r;
  const double w0 = p.omega0;
  const double decay = std::exp(-r * w0 * t);
  const double pref = p.alpha2 * w0 * r * r / (1.0 + r * r);
  return pref * (1.0 - decay * std::cos(w0 * t) - r * decay * std::sin(w0 * t));
}

double delta_highT(double t, const ReservoirParams& p) {
  if (t < 0) throw EvaluationError("delta_highT: t must be >= 0");
  const double r = p.r;
  const double w0 = p.omega0;
  const double pref = 2.0 * p.alpha2 * p.kBT * r * r / (1.0 + r * r);
  return pref * (1.0 - std::exp(-r * w0 * t) * (std::cos(w0 * t) - std::sin(w0 * t) / r));
}

double series_switch_time(const ReservoirParams& p) {
  return -std::log(kSeriesArgMax) / p.nu1();
}

double delta_exact(double t, const ReservoirParams& p, double tol) {
  if (!(t > 0)) throw EvaluationError("delta_exact: requires t > 0");
  const double nu1 = p.nu1();
  const double q = std::exp(-nu1 * t);
  if (q > kSeriesArgMax)
    throw NonConvergenceError("delta_exact: series argument too close to 1, use quadrature");
  const double r0 = p.r0();
  const double rc = p.rc();
  if (near_positive_integer(rc, 1e-9))
    throw EvaluationError("delta_exact: cot pole, omega_c/(2 pi kBT) on an integer");

  const double w0 = p.omega0;
  const double r = p.r;
  const Complex i{0.0, 1.0};
  const Complex ir0 = i * r0;

  const Complex F_rc = f_bar(Complex{rc, 0.0}, t, p, tol);
  const Complex F_mrc = f_bar(Complex{-rc, 0.0}, t, p, tol);
  const Complex F_ir0 = f_bar(ir0, t, p, tol);
  const Complex F_mir0 = f_bar(-ir0, t, p, tol);
  const Complex G_ir0 = g_bar(ir0, t, p, tol);
  const Complex G_mir0 = g_bar(-ir0, t, p, tol);

  const double ct = std::cos(w0 * t);
  const double st = std::sin(w0 * t);
  const double cot_rc = 1.0 / std::tan(kPi * rc);
  const double coth_r0 = 1.0 / std::tanh(kPi * r0);

  const Complex g_comb = q / (2.0 * r0 * (1.0 + r0 * r0)) *
                         ((Complex{r0, 0.0} - i) * G_mir0 + (Complex{r0, 0.0} + i) * G_ir0);
  const Complex braces = coth_r0 - cot_rc * std::exp(-p.omega_c() * t) * (r * ct - st) +
                         (ct / (kPi * r0)) * (F_mrc + F_rc - F_ir0 - F_mir0) -
                         (2.0 * st / kPi) * (g_comb + (F_mrc - F_rc) / (2.0 * rc));

  const double pref = p.alpha2 * w0 * r * r / (1.0 + r * r);
  const Complex value = pref * braces;
  if (std::abs(value.imag()) > 10.0 * tol * std::max(1.0, std::abs(value.real())))
    throw EvaluationError("delta_exact: residual imaginary part exceeds tolerance");
  return value.real();
}

double gamma_quadrature(double t, const ReservoirParams& p, double tol) {
  if (t < 0) throw EvaluationError("gamma_quadrature: t must be >= 0");
  if (t == 0.0) return 0.0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double w0 = p.omega0;
  auto integrand = [&](double tau) { return dissipation_kernel(tau, p) * std::sin(w0 * tau); };
  double value = integrator.integrate(integrand, 0.0, t, tol);
  return 0.5 * p.alpha2 * value;
}

double delta_quadrature(double t, const ReservoirParams& p, double tol) {
  if (t < 0) throw EvaluationError("delta_quadrature: t must be >= 0");
  if (t == 0.0) return 0.0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double w0 = p.omega0;
  const double eps_kernel = tol / std::max(1.0, t);
  auto integrand = [&](double tau) {
    if (tau <= 0.0) return 0.0;
    return noise_kernel_resummed(tau, p, eps_kernel) * std::cos(w0 * tau);
  };
  double value = integrator.integrate(integrand, 0.0, t, tol);
  return 0.5 * p.alpha2 * value;
}

MarkovianLimits markovian_limits(const ReservoirParams& p) {
  MarkovianLimits lim;
  const double shape = p.r * p.r / (1.0 + p.r * p.r);
  lim.gamma_M = p.alpha2 * p.omega0 * shape;
  lim.delta_M = p.alpha2 * p.omega0 * shape / std::tanh(kPi * p.r0());
  lim.delta_M_highT = 2.0 * p.alpha2 * p.kBT * shape;
  return lim;
}

double CoefficientTrace::delta_at(double t) const {
  const double h = grid.h();
  double s = (t - grid.t0) / h;
  s = std::clamp(s, 0.0, static_cast<double>(grid.n_steps));
  const int i = std::min(static_cast<int>(s), grid.n_steps - 1);
  const double w = s - i;
  return (1.0 - w) * delta[static_cast<std::size_t>(i)] + w * delta[static_cast<std::size_t>(i) + 1];
}

double CoefficientTrace::gamma_at(double t) const {
  const double h = grid.h();
  double s = (t - grid.t0) / h;
  s = std::clamp(s, 0.0, static_cast<double>(grid.n_steps));
  const int i = std::min(static_cast<int>(s), grid.n_steps - 1);
  const double w = s - i;
  return (1.0 - w) * gamma[static_cast<std::size_t>(i)] + w * gamma[static_cast<std::size_t>(i) + 1];
}

CoefficientTrace coefficient_trace(const TimeGrid& grid, const ReservoirParams& p,
                                   CoefficientMethod method) {
  grid.validate();
  if (grid.t0 != 0.0) throw ConfigError("coefficient_trace: grid must start at t = 0");
  p.validate();

  CoefficientTrace trace;
  trace.grid = grid;
  trace.method = method;
  trace.delta.resize(grid.size());
  trace.gamma.resize(grid.size());

  const auto lim = markovian_limits(p);
  const double t_switch = series_switch_time(p);

  for (int idx = 0; idx <= grid.n_steps; ++idx) {
    const double t = grid.time(idx);
    const auto k = static_cast<std::size_t>(idx);
    try {
      switch (method) {
        case CoefficientMethod::Markovian:
          trace.delta[k] = p.kBT >= kMarkovianHighTThreshold * p.omega0 ? lim.delta_M_highT : lim.delta_M;
          trace.gamma[k] = lim.gamma_M;
          break;
        case CoefficientMethod::HighT:
          trace.delta[k] = t == 0.0 ? 0.0 : delta_highT(t, p);
          trace.gamma[k] = t == 0.0 ? 0.0 : gamma_exact(t, p);
          break;
        case CoefficientMethod::Quadrature:
          trace.delta[k] = t == 0.0 ? 0.0 : delta_quadrature(t, p);
          trace.gamma[k] = t == 0.0 ? 0.0 : gamma_quadrature(t, p);
          break;
        case CoefficientMethod::Exact:
          trace.gamma[k] = t == 0.0 ? 0.0 : gamma_exact(t, p);
          if (t == 0.0) {
            trace.delta[k] = 0.0;
          } else if (t < t_switch) {
            trace.delta[k] = delta_quadrature(t, p);
            trace.fallback_samples.push_back(idx);
          } else {
            try {
              trace.delta[k] = delta_exact(t, p);
            } catch (const NonConvergenceError&) {
              trace.delta[k] = delta_quadrature(t, p);
              trace.fallback_samples.push_back(idx);
            }
          }
          break;
      }
    } catch (const EvaluationError& e) {
      throw EvaluationError("coefficient_trace: sample " + std::to_string(idx) + " (t = " +
                            std::to_string(t) + "): " + e.what());
    }
  }
  return trace;
}

}  // namespace qoc
