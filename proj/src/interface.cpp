// SPDX-License-Identifier: MIT
#include "muskat/interface.hpp"

#include <algorithm>
#include <cmath>

#include "muskat/errors.hpp"

namespace muskat {

double leakage(const InterfaceField& f) {
  const auto s = f.samples();
  const GridSpec& g = f.grid();
  double m = 0.0;
  for (int j = 0; j < g.n_points; ++j)
    if (std::abs(g.point(j)) >= 0.4 * g.domain_length)
      m = std::max(m, std::abs(s[static_cast<size_t>(j)]));
  return m;
}

double clearance(const InterfaceField& f, const FluidConfig& cfg) {
  const auto s = f.samples();
  return *std::min_element(s.begin(), s.end()) + cfg.h2;
}

void check_geometry(const InterfaceField& f, const FluidConfig& cfg, double leakage_threshold) {
  for (auto v : f.f.c)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw GeometryError("interface has non-finite coefficients");
  double c = clearance(f, cfg);
  if (!(c > 0.0))
    throw GeometryError("interface touches the permeability line (min f + h2 = " +
                        std::to_string(c) + ")");
  double lk = leakage(f);
  if (lk > leakage_threshold)
    throw GeometryError("boundary leakage " + std::to_string(lk) + " exceeds threshold " +
                        std::to_string(leakage_threshold));
}

}  // namespace muskat
