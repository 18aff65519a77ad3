// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "muskat/spectral.hpp"

namespace muskat {

struct NormSpec {
  double s = 0.0;
  double nu = 0.0;
  double time = 0.0;
};

struct NormReport {
  double time = 0.0;
  double f01 = 0.0, f11 = 0.0, f21 = 0.0, f3half = 0.0;
  double l2nu = 0.0;
  std::optional<double> strip_radius;  // empty: diagnostic unavailable
};

// sum_k exp(nu t |xi_k|) |xi_k|^s |c_k|
double fourier_norm(const SpectralField& field, const NormSpec& spec);
// sqrt(L sum_k exp(2 nu t |xi_k|) |c_k|^2)
double weighted_l2(const SpectralField& field, const NormSpec& spec);

constexpr double kStripNoiseFloor = 1e-14;
// least-squares slope of -log|c_k| against xi_k over modes k >= k_min above the
// noise floor; empty when fewer than 8 modes qualify
std::optional<double> strip_radius(const SpectralField& field, int k_min = 1);

// exponent beta of value ~ C (1+t)^beta, unweighted log-log least squares
double decay_fit(const std::vector<std::pair<double, double>>& series);

bool check_interpolation(const SpectralField& field, double s1, double s, double s2, double nu,
                         double time = 1.0);

NormReport norm_report(const SpectralField& field, double nu, double time);

}  // namespace muskat
