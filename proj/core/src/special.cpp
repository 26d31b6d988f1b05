#include "qoc/special.hpp"

#include <cmath>
#include <limits>

#include "qoc/errors.hpp"

namespace qoc {

Complex pochhammer(Complex a, int n) {
  if (n < 0) throw EvaluationError("pochhammer: n must be non-negative");
  Complex prod{1.0, 0.0};
  for (int k = 0; k < n; ++k) {
    prod *= a + static_cast<double>(k);
    if (!std::isfinite(prod.real()) || !std::isfinite(prod.imag()))
      throw EvaluationError("pochhammer: product overflowed");
  }
  return prod;
}

namespace {

bool is_nonpositive_integer(Complex c) {
  if (std::abs(c.imag()) > 0.0) return false;
  double nearest = std::round(c.real());
  return nearest <= 0.0 && std::abs(c.real() - nearest) < 1e-12;
}

}  // namespace

SeriesResult hyp2f1_series(Complex a, Complex b, Complex c, Complex z, double tol, int term_cap) {
  if (!(tol > 0)) throw EvaluationError("hyp2f1: tol must be > 0");
  if (std::abs(z) >= 1.0) throw EvaluationError("hyp2f1: series requires |z| < 1");
  if (is_nonpositive_integer(c)) throw EvaluationError("hyp2f1: c is a non-positive integer");

  SeriesResult res;
  Complex sum{1.0, 0.0};
  Complex term{1.0, 0.0};
  const double abs_z = std::abs(z);

  for (int n = 0; n < term_cap; ++n) {
    Complex next = term * (a + static_cast<double>(n)) * (b + static_cast<double>(n)) /
                   ((c + static_cast<double>(n)) * static_cast<double>(n + 1)) * z;
    double next_mag = std::abs(next);
    if (next_mag == 0.0) {
      res.value = sum;
      res.terms = n + 1;
      res.tail_bound = 0.0;
      return res;
    }
    // The term ratio tends to |z| from above for large n; once it is below 1
    // the remainder is bounded by the geometric series with that ratio.
    double ratio = next_mag / std::abs(term);
    if (ratio < 1.0) {
      double rho = std::max(ratio, abs_z);
      double tail = next_mag / (1.0 - rho);
      if (tail < tol) {
        res.value = sum + next;
        res.terms = n + 2;
        res.tail_bound = next_mag * rho / (1.0 - rho);
        return res;
      }
    }
    sum += next;
    term = next;
    if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag()))
      throw EvaluationError("hyp2f1: series overflowed");
  }
  throw NonConvergenceError("hyp2f1: series did not meet tolerance within term cap");
}

Complex hyp2f1(Complex a, Complex b, Complex c, Complex z, double tol) {
  return hyp2f1_series(a, b, c, z, tol).value;
}

Complex f_bar(Complex x, double t, const ReservoirParams& params, double tol) {
  if (!(t > 0)) throw EvaluationError("f_bar: requires t > 0");
  const double q = std::exp(-params.nu1() * t);
  return hyp2f1(x, Complex{1.0, 0.0}, x + 1.0, Complex{q, 0.0}, tol);
}

Complex g_bar(Complex x, double t, const ReservoirParams& params, double tol) {
  if (!(t > 0)) throw EvaluationError("g_bar: requires t > 0");
  const double q = std::exp(-params.nu1() * t);
  return hyp2f1(Complex{2.0, 0.0}, x + 1.0, x + 2.0, Complex{q, 0.0}, tol);
}

}  // namespace qoc
