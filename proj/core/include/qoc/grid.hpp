#pragma once

#include <cstddef>

#include "qoc/errors.hpp"

namespace qoc {

/// Uniform time grid on [t0, tf] with n_steps intervals (n_steps + 1 samples).
struct TimeGrid {
  double t0 = 0.0;
  double tf = 20.0;
  int n_steps = 4000;

  double h() const { return (tf - t0) / n_steps; }
  double time(int i) const { return t0 + i * h(); }
  std::size_t size() const { return static_cast<std::size_t>(n_steps) + 1; }

  void validate() const {
    if (!(tf > t0)) throw ConfigError("time grid requires tf > t0");
    if (n_steps < 1) throw ConfigError("time grid requires n_steps >= 1");
  }

  bool operator==(const TimeGrid&) const = default;
};

}  // namespace qoc
