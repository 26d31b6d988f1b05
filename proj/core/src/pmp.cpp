#include "qoc/pmp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace qoc {

double cost(const Trajectory& state, const ControlField& control, const CostWeights& weights,
            const Trajectory& target) {
  const TimeGrid& grid = state.grid;
  if (control.grid != grid || target.grid != grid)
    throw ConfigError("cost: state, control and target must share one grid");
  auto integrand = [&](int i) {
    const auto k = static_cast<std::size_t>(i);
    const BlochVector diff = state.at(i) - target.at(i);
    return diff.squaredNorm() + weights.theta * (control.ux[k] * control.ux[k] +
                                                 control.uy[k] * control.uy[k]);
  };
  double sum = 0.5 * (integrand(0) + integrand(grid.n_steps));
  for (int i = 1; i < grid.n_steps; ++i) sum += integrand(i);
  return sum * grid.h();
}

Eigen::Vector3d costate_rhs(const Eigen::Vector3d& lambda, const BlochVector& x,
                            const BlochVector& target, const Eigen::Matrix3d& A) {
  return -2.0 * (x - target) - A.transpose() * lambda;
}

Trajectory integrate_costate(const Trajectory& state, const Trajectory& target,
                             const ControlField& control, const CoefficientTrace& coeffs,
                             double omega0) {
  const TimeGrid& grid = state.grid;
  auto rhs = [&](double t, const Eigen::Vector3d& lambda) {
    const auto [ux, uy] = control.sample(t);
    const auto [A, B] = drift_matrix(omega0, ux, uy, coeffs.delta_at(t), coeffs.gamma_at(t));
    (void)B;
    return Eigen::Vector3d(costate_rhs(lambda, state.sample(t), target.sample(t), A));
  };

  Trajectory costate;
  costate.grid = grid;
  costate.states.resize(grid.size());
  costate.states[static_cast<std::size_t>(grid.n_steps)].setZero();
  const double h = grid.h();
  for (int i = grid.n_steps; i > 0; --i) {
    const double t = grid.time(i);
    const Eigen::Vector3d& l = costate.states[static_cast<std::size_t>(i)];
    const Eigen::Vector3d k1 = rhs(t, l);
    const Eigen::Vector3d k2 = rhs(t - 0.5 * h, l - 0.5 * h * k1);
    const Eigen::Vector3d k3 = rhs(t - 0.5 * h, l - 0.5 * h * k2);
    const Eigen::Vector3d k4 = rhs(t - h, l - h * k3);
    costate.states[static_cast<std::size_t>(i) - 1] = l - (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return costate;
}

std::pair<double, double> control_update(const Eigen::Vector3d& lambda, const BlochVector& x,
                                         const CostWeights& weights) {
  const double inv = 1.0 / (2.0 * weights.theta);
  return {(lambda[1] * x[2] - lambda[2] * x[1]) * inv,
          (lambda[2] * x[0] - lambda[0] * x[2]) * inv};
}

double stationarity_residual(const ControlField& control, const Trajectory& state,
                             const Trajectory& costate, const CostWeights& weights) {
  double worst = 0.0;
  for (int i = 0; i <= state.grid.n_steps; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const BlochVector& x = state.at(i);
    const Eigen::Vector3d& l = costate.at(i);
    const double gx = 2.0 * weights.theta * control.ux[k] - (l[1] * x[2] - l[2] * x[1]);
    const double gy = 2.0 * weights.theta * control.uy[k] - (l[2] * x[0] - l[0] * x[2]);
    worst = std::max(worst, std::hypot(gx, gy));
  }
  return worst;
}

SweepResult solve_fbsm(const BlochVector& x0, const CoefficientTrace& coeffs,
                       const TimeGrid& grid, const CostWeights& weights,
                       const SweepConfig& config, double omega0) {
  grid.validate();
  weights.validate();
  config.validate();

  const Trajectory target = target_trajectory(grid, x0, omega0);

  SweepResult result;
  result.control = ControlField::zero(grid);
  result.state = integrate(x0, result.control, coeffs, grid, omega0);
  double J = cost(result.state, result.control, weights, target);
  result.cost_history.push_back(J);

  double last_dJ = std::numeric_limits<double>::infinity();
  double last_du = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < config.max_iters; ++iter) {
    result.costate = integrate_costate(result.state, target, result.control, coeffs, omega0);
    result.stationarity_residual =
        stationarity_residual(result.control, result.state, result.costate, weights);

    const double scale = std::max(1.0, result.control.max_abs());
    if (result.stationarity_residual <= 1e-4 * scale) {
      result.converged = true;
      return result;
    }
    // Cost and control both stalled: no further progress to be had, report
    // with whatever stationarity level was reached.
    if (last_dJ <= config.tol_cost * std::max(1.0, std::abs(J)) && last_du <= config.tol_control)
      break;

    ControlField candidate = result.control;
    for (int i = 0; i <= grid.n_steps; ++i) {
      const auto k = static_cast<std::size_t>(i);
      const auto [ux, uy] = control_update(result.costate.at(i), result.state.at(i), weights);
      candidate.ux[k] = ux;
      candidate.uy[k] = uy;
    }

    double kappa = config.relaxation;
    bool accepted = false;
    ControlField trial = result.control;
    Trajectory trial_state;
    double trial_J = J;
    for (int halving = 0; halving <= config.max_step_halvings; ++halving) {
      for (std::size_t k = 0; k < trial.ux.size(); ++k) {
        trial.ux[k] = (1.0 - kappa) * result.control.ux[k] + kappa * candidate.ux[k];
        trial.uy[k] = (1.0 - kappa) * result.control.uy[k] + kappa * candidate.uy[k];
      }
      trial_state = integrate(x0, trial, coeffs, grid, omega0);
      trial_J = cost(trial_state, trial, weights, target);
      if (trial_J <= J * (1.0 + 1e-14) + 1e-300) {
        accepted = true;
        break;
      }
      kappa *= 0.5;
    }
    if (!accepted) break;  // stuck: no descent direction at machine precision

    last_du = 0.0;
    for (std::size_t k = 0; k < trial.ux.size(); ++k) {
      last_du = std::max(last_du, std::hypot(trial.ux[k] - result.control.ux[k],
                                             trial.uy[k] - result.control.uy[k]));
    }
    last_dJ = J - trial_J;
    result.control = std::move(trial);
    result.state = std::move(trial_state);
    J = trial_J;
    result.cost_history.push_back(J);
  }

  result.costate = integrate_costate(result.state, target, result.control, coeffs, omega0);
  result.stationarity_residual =
      stationarity_residual(result.control, result.state, result.costate, weights);
  result.converged = result.stationarity_residual <= 1e-4 * std::max(1.0, result.control.max_abs());
  return result;
}

SweepResult markovian_control(const BlochVector& x0, const ReservoirParams& params,
                              const TimeGrid& grid, const CostWeights& weights,
                              const SweepConfig& config) {
  const CoefficientTrace coeffs = coefficient_trace(grid, params, CoefficientMethod::Markovian);
  return solve_fbsm(x0, coeffs, grid, weights, config, params.omega0);
}

}  // namespace qoc
