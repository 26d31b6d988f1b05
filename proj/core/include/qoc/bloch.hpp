#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qoc/grid.hpp"
#include "qoc/reservoir.hpp"

namespace qoc {

/// Coherence vector (x1, x2, x3) of a qubit density matrix.
using BlochVector = Eigen::Vector3d;

/// True iff the vector corresponds to a physical density matrix.
inline bool is_valid_state(const BlochVector& x, double slack = 1e-12) {
  return x.squaredNorm() <= 1.0 + slack;
}

/// Hermitian unit-trace 2x2 density matrix; rho10 is the conjugate of rho01.
struct DensityMatrix2 {
  double rho00 = 1.0;
  double rho11 = 0.0;
  std::complex<double> rho01{0.0, 0.0};

  bool is_physical(double slack = 1e-12) const {
    return std::abs(rho00 + rho11 - 1.0) <= slack && rho00 >= -slack && rho11 >= -slack &&
           rho00 * rho11 + slack >= std::norm(rho01);
  }
};

/// x1 = 2 Re rho01, x2 = -2 Im rho01, x3 = rho00 - rho11.
BlochVector bloch_from_density(const DensityMatrix2& rho);

/// Exact inverse of bloch_from_density.
DensityMatrix2 density_from_bloch(const BlochVector& x);

/// Free closed-system evolution: rotation of the transverse components at
/// angular frequency omega0 about the z axis, measured from t = 0.
BlochVector target_state(double t, const BlochVector& x0, double omega0);

/// target_state sampled on every grid point.
struct Trajectory {
  TimeGrid grid;
  std::vector<BlochVector> states;

  const BlochVector& at(int i) const { return states[static_cast<std::size_t>(i)]; }
  BlochVector sample(double t) const;  ///< linear interpolation, clamped
};

Trajectory target_trajectory(const TimeGrid& grid, const BlochVector& x0, double omega0);

/// Piecewise-linear control field (u_x, u_y) sampled on a uniform grid.
struct ControlField {
  TimeGrid grid;
  std::vector<double> ux;
  std::vector<double> uy;

  static ControlField zero(const TimeGrid& grid);
  std::pair<double, double> sample(double t) const;  ///< linear interpolation, clamped
  double max_abs() const;
};

/// System matrix and drift of xdot = A x + B for given control and coefficients.
///   A = [[-Delta, -omega0, u_y], [omega0, -Delta, -u_x], [-u_y, u_x, -2 Delta]]
///   B = (0, 0, -2 gamma)
std::pair<Eigen::Matrix3d, Eigen::Vector3d> drift_matrix(double omega0, double ux, double uy,
                                                         double delta, double gamma);

/// Classical fixed-step fourth-order integration of the driven Bloch
/// equations; controls and coefficients are linearly interpolated at half
/// steps. omega0 is taken from coeffs' reservoir-independent caller context,
/// so it is passed explicitly.
Trajectory integrate(const BlochVector& x0, const ControlField& controls,
                     const CoefficientTrace& coeffs, const TimeGrid& grid, double omega0);

}  // namespace qoc
