#pragma once

#include <numbers>

#include "qoc/errors.hpp"

namespace qoc {

/// Physical parameters of the Ohmic bath with Lorentz-Drude cutoff.
///
/// Units: hbar = k_B = 1 and frequencies are measured in units of the
/// system transition frequency omega0.
struct ReservoirParams {
  double alpha2 = 0.01;  ///< squared system-bath coupling
  double omega0 = 1.0;   ///< transition frequency of the two-level system
  double r = 0.1;        ///< cutoff ratio omega_c / omega0
  double kBT = 300.0;    ///< bath temperature (energy units of omega0)
  double gamma0 = 1.0;   ///< frequency-independent damping constant

  double omega_c() const { return r * omega0; }
  double nu1() const { return 2.0 * std::numbers::pi * kBT; }  ///< first Matsubara frequency
  double r0() const { return omega0 / nu1(); }
  double rc() const { return omega_c() / nu1(); }

  void validate() const {
    if (!(alpha2 > 0)) throw ConfigError("alpha2 must be > 0");
    if (!(omega0 > 0)) throw ConfigError("omega0 must be > 0");
    if (!(r > 0)) throw ConfigError("r must be > 0");
    if (!(kBT > 0)) throw ConfigError("kBT must be > 0");
    if (!(gamma0 > 0)) throw ConfigError("gamma0 must be > 0");
  }
};

/// Long-time stationary values of the dissipation and diffusion coefficients.
struct MarkovianLimits {
  double gamma_M = 0.0;
  double delta_M = 0.0;
  double delta_M_highT = 0.0;
};

}  // namespace qoc
