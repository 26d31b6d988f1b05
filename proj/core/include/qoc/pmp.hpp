#pragma once

#include <utility>
#include <vector>

#include "qoc/bloch.hpp"

namespace qoc {

/// Weight theta > 0 of the control-effort term in the tracking cost.
struct CostWeights {
  double theta = 1.0;

  void validate() const {
    if (!(theta > 0)) throw ConfigError("theta must be > 0");
  }
};

struct SweepConfig {
  double relaxation = 0.3;   ///< control-update mixing factor kappa in (0, 1]
  int max_iters = 300;
  double tol_cost = 1e-12;   ///< relative cost decrease considered stalled
  double tol_control = 1e-9; ///< max-norm control change considered stalled
  int max_step_halvings = 25;

  void validate() const {
    if (!(relaxation > 0 && relaxation <= 1)) throw ConfigError("relaxation must be in (0, 1]");
    if (max_iters < 1) throw ConfigError("max_iters must be >= 1");
    if (!(tol_cost > 0)) throw ConfigError("tol_cost must be > 0");
    if (!(tol_control > 0)) throw ConfigError("tol_control must be > 0");
  }
};

/// Outcome of a forward-backward sweep.
struct SweepResult {
  ControlField control;
  Trajectory state;
  Trajectory costate;               ///< lambda(t), with lambda(tf) = 0 exactly
  std::vector<double> cost_history; ///< accepted iterates, non-increasing
  double stationarity_residual = 0.0;
  bool converged = false;
};

/// Tracking cost J[u] = int [ (x - x0)^2 + theta u^T u ] dt by trapezoidal
/// quadrature on the shared grid.
double cost(const Trajectory& state, const ControlField& control, const CostWeights& weights,
            const Trajectory& target);

/// Costate dynamics lambdadot = -2 (x - x0) - A^T lambda.
Eigen::Vector3d costate_rhs(const Eigen::Vector3d& lambda, const BlochVector& x,
                            const BlochVector& target, const Eigen::Matrix3d& A);

/// Backward fourth-order integration of the costate from lambda(tf) = 0.
Trajectory integrate_costate(const Trajectory& state, const Trajectory& target,
                             const ControlField& control, const CoefficientTrace& coeffs,
                             double omega0);

/// Pointwise stationary control u_x = (l2 x3 - l3 x2)/(2 theta),
/// u_y = (l3 x1 - l1 x3)/(2 theta).
std::pair<double, double> control_update(const Eigen::Vector3d& lambda, const BlochVector& x,
                                         const CostWeights& weights);

/// Max-norm of the control gradient (dH/du_x, dH/du_y) over the grid.
double stationarity_residual(const ControlField& control, const Trajectory& state,
                             const Trajectory& costate, const CostWeights& weights);

/// Forward-backward sweep for the two-point boundary-value optimality system.
/// Starts from u = 0, relaxes control updates by `relaxation` and halves the
/// step on cost increase. Never throws on budget exhaustion: the partial
/// result is returned with converged = false.
SweepResult solve_fbsm(const BlochVector& x0, const CoefficientTrace& coeffs,
                       const TimeGrid& grid, const CostWeights& weights,
                       const SweepConfig& config, double omega0);

/// solve_fbsm against the constant Markovian coefficients of params.
SweepResult markovian_control(const BlochVector& x0, const ReservoirParams& params,
                              const TimeGrid& grid, const CostWeights& weights,
                              const SweepConfig& config);

}  // namespace qoc
