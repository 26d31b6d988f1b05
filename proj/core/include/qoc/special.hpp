#pragma once

#include <complex>

#include "qoc/reservoir_params.hpp"

namespace qoc {

using Complex = std::complex<double>;

/// Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.
Complex pochhammer(Complex a, int n);

/// Truncated-series evaluation with a bound on the discarded tail.
struct SeriesResult {
  Complex value;
  int terms = 0;           ///< number of terms actually summed
  double tail_bound = 0.0; ///< geometric-majorant bound on the truncated remainder
};

inline constexpr int kHyp2f1TermCap = 100000;

/// Gauss series 2F1(a,b;c;z) = sum_n (a)_n (b)_n / (c)_n z^n / n!,
/// summed until the geometric tail bound drops below tol.
///
/// Requires |z| < 1 and c not a non-positive integer. Throws
/// NonConvergenceError when the term-ratio bound does not fall below 1
/// within term_cap terms (z too close to 1 for direct summation).
SeriesResult hyp2f1_series(Complex a, Complex b, Complex c, Complex z,
                           double tol, int term_cap = kHyp2f1TermCap);

/// Value-only convenience wrapper around hyp2f1_series.
Complex hyp2f1(Complex a, Complex b, Complex c, Complex z, double tol = 1e-10);

/// F(x,t) = 2F1(x, 1; 1+x; e^{-nu1 t}), the thermal-sum kernel entering the
/// diffusion coefficient. Requires t > 0.
Complex f_bar(Complex x, double t, const ReservoirParams& params, double tol = 1e-10);

/// G(x,t) = 2F1(2, 1+x; 2+x; e^{-nu1 t}).
Complex g_bar(Complex x, double t, const ReservoirParams& params, double tol = 1e-10);

}  // namespace qoc
