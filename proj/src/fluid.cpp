// SPDX-License-Identifier: MIT
#include "muskat/fluid.hpp"

#include <cmath>

#include "muskat/errors.hpp"

namespace muskat {

FluidConfig::FluidConfig(double a_rho_, double a_kappa_, double a_mu_, double h2_)
    : a_kappa(a_kappa_), a_mu(a_mu_), a_rho(a_rho_), h2(h2_) {
  validate();
}

FluidConfig FluidConfig::from_raw(const RawFluidParameters& p, double h2) {
  if (!(p.kappa1 > 0 && p.kappa2 > 0 && p.mu1 > 0 && p.mu2 > 0))
    throw ConfigError("permeabilities and viscosities must be positive");
  FluidConfig c;
  c.a_kappa = (p.kappa1 - p.kappa2) / (p.kappa1 + p.kappa2);
  c.a_mu = (p.mu1 - p.mu2) / (p.mu1 + p.mu2);
  c.a_rho = -p.kappa1 * (p.rho1 - p.rho2) * p.g / (p.mu1 + p.mu2);
  c.h2 = h2;
  c.raw = p;
  c.validate();
  return c;
}

void FluidConfig::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(a_kappa) || !finite(a_mu) || !finite(a_rho) || !finite(h2))
    throw ConfigError("fluid constants must be finite");
  if (!(std::abs(a_kappa) < 1.0)) throw ConfigError("|A_kappa| must be < 1");
  if (!(std::abs(a_mu) < 1.0)) throw ConfigError("|A_mu| must be < 1");
  if (!(a_rho >= 0.0)) throw ConfigError("A_rho must be >= 0 (stable regime)");
  if (!(h2 > 0.0)) throw ConfigError("h2 must be positive");
}

}  // namespace muskat
