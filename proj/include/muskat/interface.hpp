// SPDX-License-Identifier: MIT
#pragma once

#include <limits>
#include <vector>

#include "muskat/fluid.hpp"
#include "muskat/spectral.hpp"

namespace muskat {

struct InterfaceField {
  SpectralField f;
  double time = 0.0;

  InterfaceField() = default;
  explicit InterfaceField(SpectralField field, double t = 0.0) : f(std::move(field)), time(t) {
    f.time_tag = t;
  }
  static InterfaceField from_samples(const std::vector<double>& samples, const GridSpec& grid,
                                     double t = 0.0) {
    return InterfaceField(forward(samples, grid), t);
  }
  const GridSpec& grid() const { return f.grid; }
  std::vector<double> samples() const { return inverse(f); }
};

// max |f| over the outer 10% of the period (|alpha| >= 0.4 L)
double leakage(const InterfaceField& f);
// min_alpha f + h2 (on the collocation grid)
double clearance(const InterfaceField& f, const FluidConfig& cfg);
// throws GeometryError if the curves touch or the leakage threshold is exceeded
void check_geometry(const InterfaceField& f, const FluidConfig& cfg,
                    double leakage_threshold = std::numeric_limits<double>::infinity());

}  // namespace muskat
