// SPDX-License-Identifier: MIT
#include "muskat/norms.hpp"

#include <cmath>

#include "muskat/errors.hpp"

namespace muskat {

namespace {

double max_abs_xi(const GridSpec& g) { return std::abs(g.xi(g.nyquist_slot())); }

void guard(const SpectralField& f, const NormSpec& spec) {
  if (spec.s < 0 || spec.nu < 0 || spec.time < 0) throw DomainError("norm spec must be nonnegative");
  if (spec.nu * spec.time * max_abs_xi(f.grid) > 700.0)
    throw Error(ExitCode::usage, "norm weight overflow guard: nu t xi_max > 700");
}

// least squares slope of y against x
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= n, my /= n;
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

}  // namespace

double fourier_norm(const SpectralField& field, const NormSpec& spec) {
  guard(field, spec);
  double sum = 0.0;
  for (int s = 0; s < field.grid.n_points; ++s) {
    double a = std::abs(field.grid.xi(s));
    double w;
    if (a == 0.0)
      w = spec.s == 0.0 ? 1.0 : 0.0;
    else
      w = std::exp(spec.nu * spec.time * a) * std::pow(a, spec.s);
    sum += w * std::abs(field.c[static_cast<size_t>(s)]);
  }
  return sum;
}

double weighted_l2(const SpectralField& field, const NormSpec& spec) {
  guard(field, spec);
  double sum = 0.0;
  for (int s = 0; s < field.grid.n_points; ++s) {
    double a = std::abs(field.grid.xi(s));
    sum += std::exp(2.0 * spec.nu * spec.time * a) * std::norm(field.c[static_cast<size_t>(s)]);
  }
  return std::sqrt(field.grid.domain_length * sum);
}

std::optional<double> strip_radius(const SpectralField& field, int k_min) {
  std::vector<double> x, y;
  for (int k = std::max(k_min, 0); k < field.grid.n_points / 2; ++k) {
    // both signs of k carry the same modulus for real fields; use k >= k_min side
    double a = std::abs(field.at(k));
    if (a > kStripNoiseFloor) {
      x.push_back(field.grid.xi(field.grid.slot(k)));
      y.push_back(-std::log(a));
    }
  }
  if (x.size() < 8) return std::nullopt;
  return std::max(ls_slope(x, y), 0.0);
}

double decay_fit(const std::vector<std::pair<double, double>>& series) {
  if (series.size() < 10) throw DomainError("decay_fit needs at least 10 samples");
  std::vector<double> x, y;
  double tmin = series.front().first, tmax = tmin;
  for (auto [t, v] : series) {
    if (!(v > 0.0)) throw DomainError("decay_fit: values must be positive");
    if (t < 0) throw DomainError("decay_fit: times must be nonnegative");
    x.push_back(std::log1p(t));
    y.push_back(std::log(v));
    tmin = std::min(tmin, t), tmax = std::max(tmax, t);
  }
  if ((1.0 + tmax) < 10.0 * (1.0 + tmin) && tmax < 10.0 * tmin)
    throw DomainError("decay_fit: samples must span at least one decade");
  return ls_slope(x, y);
}

bool check_interpolation(const SpectralField& field, double s1, double s, double s2, double nu,
                         double time) {
  if (!(s1 <= s && s <= s2)) throw DomainError("check_interpolation needs s1 <= s <= s2");
  double mid = fourier_norm(field, {s, nu, time});
  if (s1 == s2) return true;
  double theta = (s2 - s) / (s2 - s1);
  double lo = fourier_norm(field, {s1, nu, time});
  double hi = fourier_norm(field, {s2, nu, time});
  double bound = std::pow(lo, theta) * std::pow(hi, 1.0 - theta);
  return mid <= bound * (1.0 + 1e-9) + 1e-300;
}

NormReport norm_report(const SpectralField& field, double nu, double time) {
  NormReport r;
  r.time = time;
  r.f01 = fourier_norm(field, {0.0, nu, time});
  r.f11 = fourier_norm(field, {1.0, nu, time});
  r.f21 = fourier_norm(field, {2.0, nu, time});
  r.f3half = fourier_norm(field, {1.5, nu, time});
  r.l2nu = weighted_l2(field, {0.0, nu, time});
  r.strip_radius = strip_radius(field, 1);
  return r;
}

}  // namespace muskat
