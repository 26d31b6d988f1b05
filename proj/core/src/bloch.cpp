#include "qoc/bloch.hpp"

#include <algorithm>
#include <cmath>

namespace qoc {

namespace {

/// Fractional grid position of t, clamped to [0, n_steps].
double grid_position(const TimeGrid& grid, double t) {
  double s = (t - grid.t0) / grid.h();
  return std::clamp(s, 0.0, static_cast<double>(grid.n_steps));
}

}  // namespace

BlochVector bloch_from_density(const DensityMatrix2& rho) {
  return {2.0 * rho.rho01.real(), -2.0 * rho.rho01.imag(), rho.rho00 - rho.rho11};
}

DensityMatrix2 density_from_bloch(const BlochVector& x) {
  DensityMatrix2 rho;
  rho.rho00 = 0.5 * (1.0 + x[2]);
  rho.rho11 = 0.5 * (1.0 - x[2]);
  rho.rho01 = {0.5 * x[0], -0.5 * x[1]};
  return rho;
}

BlochVector target_state(double t, const BlochVector& x0, double omega0) {
  const double c = std::cos(omega0 * t);
  const double s = std::sin(omega0 * t);
  return {c * x0[0] - s * x0[1], s * x0[0] + c * x0[1], x0[2]};
}

BlochVector Trajectory::sample(double t) const {
  const double s = grid_position(grid, t);
  const int i = std::min(static_cast<int>(s), grid.n_steps - 1);
  const double w = s - i;
  return (1.0 - w) * at(i) + w * at(i + 1);
}

Trajectory target_trajectory(const TimeGrid& grid, const BlochVector& x0, double omega0) {
  Trajectory traj;
  traj.grid = grid;
  traj.states.resize(grid.size());
  for (int i = 0; i <= grid.n_steps; ++i)
    traj.states[static_cast<std::size_t>(i)] = target_state(grid.time(i), x0, omega0);
  return traj;
}

ControlField ControlField::zero(const TimeGrid& grid) {
  ControlField field;
  field.grid = grid;
  field.ux.assign(grid.size(), 0.0);
  field.uy.assign(grid.size(), 0.0);
  return field;
}

std::pair<double, double> ControlField::sample(double t) const {
  const double s = grid_position(grid, t);
  const int i = std::min(static_cast<int>(s), grid.n_steps - 1);
  const double w = s - i;
  const auto k = static_cast<std::size_t>(i);
  return {(1.0 - w) * ux[k] + w * ux[k + 1], (1.0 - w) * uy[k] + w * uy[k + 1]};
}

double ControlField::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < ux.size(); ++i)
    m = std::max(m, std::hypot(ux[i], uy[i]));
  return m;
}

std::pair<Eigen::Matrix3d, Eigen::Vector3d> drift_matrix(double omega0, double ux, double uy,
                                                         double delta, double gamma) {
  Eigen::Matrix3d A;
  A << -delta, -omega0, uy,
       omega0, -delta, -ux,
       -uy, ux, -2.0 * delta;
  return {A, Eigen::Vector3d{0.0, 0.0, -2.0 * gamma}};
}

Trajectory integrate(const BlochVector& x0, const ControlField& controls,
                     const CoefficientTrace& coeffs, const TimeGrid& grid, double omega0) {
  grid.validate();
  if (!is_valid_state(x0)) throw ConfigError("integrate: initial state outside the Bloch ball");

  auto rhs = [&](double t, const BlochVector& x) {
    const auto [ux, uy] = controls.sample(t);
    const auto [A, B] = drift_matrix(omega0, ux, uy, coeffs.delta_at(t), coeffs.gamma_at(t));
    return BlochVector(A * x + B);
  };

  Trajectory traj;
  traj.grid = grid;
  traj.states.resize(grid.size());
  traj.states[0] = x0;
  const double h = grid.h();
  for (int i = 0; i < grid.n_steps; ++i) {
    const double t = grid.time(i);
    const BlochVector& x = traj.states[static_cast<std::size_t>(i)];
    const BlochVector k1 = rhs(t, x);
    const BlochVector k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1);
    const BlochVector k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2);
    const BlochVector k4 = rhs(t + h, x + h * k3);
    traj.states[static_cast<std::size_t>(i) + 1] = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return traj;
}

}  // namespace qoc
