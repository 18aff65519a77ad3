// SPDX-License-Identifier: MIT
//
// Brute-force reference evaluators. Kernels are taken directly from the complex
// form (pi/L) cot(pi w / L) of the periodized Cauchy kernel 1/w; principal
// values are handled by subtracting the local 1/beta singularity (its integral
// is a Hilbert transform) and filling beta = 0 with the analytic limit of the
// remainder. Nothing here touches the fast kernel tables.
#pragma once

#include <vector>

#include "muskat/fluid.hpp"
#include "muskat/spectral.hpp"

namespace muskat::oracle {

using Samples = std::vector<double>;

// I_which, which in {1,2,3,4}; omega is omega1 for I1/I2 and omega2 for I3/I4
Samples quad_I(const GridSpec& g, const Samples& f, const Samples& omega, const FluidConfig& cfg,
               int which);

enum class Target { fluid_curve, soil_curve };

struct Velocity {
  Samples u1, u2;
};

// Birkhoff-Rott velocity of both sheets, evaluated on the graph or the soil line
Velocity quad_BR_trace(const GridSpec& g, const Samples& f, const Samples& w1, const Samples& w2,
                       const FluidConfig& cfg, Target target);

Samples omega2(const GridSpec& g, const Samples& f, const Samples& w1, const FluidConfig& cfg);
Samples Omega2(const GridSpec& g, const Samples& f, const Samples& W1, const FluidConfig& cfg);

struct Vorticity {
  Samples w1, w2;
};
// dense LU solve of the coupled linear system for omega1
Vorticity solve_vorticity(const GridSpec& g, const Samples& f, const FluidConfig& cfg);

// d f / d t on the grid
Samples rhs(const GridSpec& g, const Samples& f, const FluidConfig& cfg);

// max |a - b| / max |b| (absolute when b vanishes)
double rel_discrepancy(const Samples& a, const Samples& b);

}  // namespace muskat::oracle
