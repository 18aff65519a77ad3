// SPDX-License-Identifier: MIT
// Shared helpers for the unit tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "muskat/spectral.hpp"

namespace testing_support {

using muskat::GridSpec;
using muskat::SpectralField;

inline constexpr double pi = std::numbers::pi;

inline std::vector<double> sample(const GridSpec& g, const std::function<double(double)>& fn) {
  std::vector<double> v(static_cast<size_t>(g.n_points));
  for (int j = 0; j < g.n_points; ++j) v[static_cast<size_t>(j)] = fn(g.point(j));
  return v;
}

inline SpectralField field_of(const GridSpec& g, const std::function<double(double)>& fn) {
  return muskat::forward(sample(g, fn), g);
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline std::vector<double> random_samples(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  std::vector<double> v(static_cast<size_t>(n));
  for (auto& x : v) x = d(rng);
  return v;
}

// real field with k_max random modes, amplitudes decaying like decay^|k|
inline SpectralField random_field(std::mt19937_64& rng, const GridSpec& g, int k_max, double amp,
                                  double decay = 1.0) {
  std::normal_distribution<double> d(0.0, 1.0);
  SpectralField f(g);
  for (int k = 1; k <= k_max; ++k) {
    muskat::cplx c(d(rng), d(rng));
    c *= amp * std::pow(decay, k);
    f.at(k) = c;
    f.at(-k) = std::conj(c);
  }
  return f;
}

// smooth compactly-concentrated datum used across modules
inline SpectralField bump(const GridSpec& g, double amp, double width) {
  return field_of(g, [&](double a) { return amp * std::exp(-a * a / (2.0 * width * width)); });
}

}  // namespace testing_support
