// SPDX-License-Identifier: MIT
//
// Fast-path quadrature kernels. All whole-line kernels of the graph problem are
// real or imaginary parts of 1/(x + i a); for L-periodic data the sum over
// periods has the closed form (pi/L) cot(pi (x + i a) / L), written here as
//
//   Q(x; a) = (pi/L) sin u cos u / D,   P(x; a) = (pi/L) sinh v cosh v / D,
//   D = sinh^2 v + sin^2 u,  u = pi x / L,  v = pi a / L,
//
// with Q -> x/(x^2+a^2) and P -> a/(x^2+a^2) as L -> infinity.
//
// Self-interaction sums (source and target on the same curve) use the
// alternate-point trapezoid rule: odd offsets only, weight 2h. It drops
// beta = 0, pairs +-beta symmetrically, and is exact on the cot kernel for
// every mode |k| < n/2.
//
// Each assembly/apply routine comes in a parallel (OpenMP, one target row per
// iteration) and a serial flavour; both sum every row in the same order, so the
// results are bitwise identical.
#pragma once

#include <vector>

#include "muskat/spectral.hpp"

namespace muskat {

enum class Exec { serial, parallel };

// process-wide default used by the solver; tests flip it
Exec default_exec();
void set_default_exec(Exec e);

struct OffsetTable {
  int n = 0;
  double L = 0, h = 0;
  std::vector<double> x;   // wrapped offset of slot m, in [-L/2, L/2)
  std::vector<double> su;  // sin(pi x / L)
  std::vector<double> cu;  // cos(pi x / L)
  explicit OffsetTable(const GridSpec& g);
};

// Q and P for one (offset, height) pair
inline void periodic_cauchy(double scale, double su, double cu, double sv, double cv, double& q,
                            double& p) {
  double d = sv * sv + su * su;
  q = scale * su * cu / d;
  p = scale * sv * cv / d;
}

struct SelfKernels {
  int n = 0;
  // row i, odd offset m stored at i*(n/2) + (m-1)/2; source index (i - m) mod n
  std::vector<double> q, p, c1mq;  // Q(x;d), P(x;d), (pi/L)cot(u) - Q(x;d); d = f_i - f_source
};

struct CrossKernels {
  int n = 0;
  // row i, offset m at i*n + m; source (i - m) mod n
  std::vector<double> q, p;
};

SelfKernels build_self(const std::vector<double>& f, const OffsetTable& t, Exec e);
// target on the curve (height f_i), source on the soil line: a = f_i + h2
CrossKernels build_curve_from_soil(const std::vector<double>& f, double h2, const OffsetTable& t,
                                   Exec e);
// target on the soil line, source on the curve: a = f_source + h2
CrossKernels build_soil_from_curve(const std::vector<double>& f, double h2, const OffsetTable& t,
                                   Exec e);
// Q(x; h2) for the flat reference configuration
std::vector<double> flat_q(double h2, const OffsetTable& t);

// y_i = 2h sum_{m odd} K[i,m] g[i-m]
std::vector<double> apply_self(const std::vector<double>& K, const std::vector<double>& g, int n,
                               double h, Exec e);
// y_i = h sum_m K[i,m] g[i-m]
std::vector<double> apply_cross(const std::vector<double>& K, const std::vector<double>& g, int n,
                                double h, Exec e);
// y_i = h sum_m k[m] g[i-m]  (translation invariant)
std::vector<double> apply_stationary(const std::vector<double>& k, const std::vector<double>& g,
                                     double h);

}  // namespace muskat
