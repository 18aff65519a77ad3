// SPDX-License-Identifier: MIT
#pragma once

#include <optional>

namespace muskat {

struct RawFluidParameters {
  double kappa1, kappa2, mu1, mu2, rho1, rho2, g;
};

struct FluidConfig {
  double a_kappa = 0.0;
  double a_mu = 0.0;
  double a_rho = 1.0;
  double h2 = 1.0;
  std::optional<RawFluidParameters> raw;

  FluidConfig() = default;
  FluidConfig(double a_rho_, double a_kappa_, double a_mu_, double h2_);
  static FluidConfig from_raw(const RawFluidParameters& p, double h2);

  // throws ConfigError when an invariant fails
  void validate() const;
};

}  // namespace muskat
