// SPDX-License-Identifier: MIT
#include "muskat/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "muskat/errors.hpp"

namespace muskat {

namespace {

// FFTW's planner is not thread safe; execution with new arrays is.
// FFTW_ESTIMATE keeps the chosen algorithm (and hence rounding) fixed run to run.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;
std::map<int, PlanPair>& plan_cache() {
  static std::map<int, PlanPair> cache;
  return cache;
}

PlanPair plans_for(int n) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<cplx> a(static_cast<size_t>(n)), b(static_cast<size_t>(n));
  auto* pa = reinterpret_cast<fftw_complex*>(a.data());
  auto* pb = reinterpret_cast<fftw_complex*>(b.data());
  PlanPair p;
  p.fwd = fftw_plan_dft_1d(n, pa, pb, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_1d(n, pa, pb, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache[n] = p;
  return p;
}

}  // namespace

GridSpec::GridSpec(int n, double L) : n_points(n), domain_length(L) {
  if (n <= 0 || n % 2 != 0) throw ConfigError("n_points must be a positive even integer");
  if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("domain_length must be finite and positive");
}

double GridSpec::xi(int s) const {
  return 2.0 * std::numbers::pi * mode(s) / domain_length;
}

std::vector<double> GridSpec::points() const {
  std::vector<double> p(static_cast<size_t>(n_points));
  for (int j = 0; j < n_points; ++j) p[static_cast<size_t>(j)] = point(j);
  return p;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
  return *this;
}
SpectralField& SpectralField::operator-=(const SpectralField& o) {
  for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
  return *this;
}
SpectralField& SpectralField::operator*=(double s) {
  for (auto& v : c) v *= s;
  return *this;
}
SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

SpectralField forward(const std::vector<double>& samples, const GridSpec& grid) {
  const int n = grid.n_points;
  if (static_cast<int>(samples.size()) != n)
    throw ConfigError("forward: sample count " + std::to_string(samples.size()) +
                      " does not match n_points " + std::to_string(n));
  std::vector<cplx> in(samples.begin(), samples.end()), out(static_cast<size_t>(n));
  fftw_execute_dft(plans_for(n).fwd, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  SpectralField f(grid);
  const double inv_n = 1.0 / n;
  // alpha_0 = -L/2 contributes the phase (-1)^k
  for (int s = 0; s < n; ++s) {
    double sign = (s % 2 == 0) ? inv_n : -inv_n;
    f.c[static_cast<size_t>(s)] = out[static_cast<size_t>(s)] * sign;
  }
  enforce_reality(f);
  return f;
}

std::vector<double> inverse(const SpectralField& field) {
  const int n = field.grid.n_points;
  std::vector<cplx> in(static_cast<size_t>(n)), out(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s)
    in[static_cast<size_t>(s)] = (s % 2 == 0) ? field.c[static_cast<size_t>(s)]
                                              : -field.c[static_cast<size_t>(s)];
  fftw_execute_dft(plans_for(n).bwd, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  std::vector<double> r(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) r[static_cast<size_t>(j)] = out[static_cast<size_t>(j)].real();
  return r;
}

double reality_defect(const SpectralField& field) {
  const int n = field.grid.n_points;
  double m = std::abs(field.c[0].imag());
  for (int k = 1; k < n / 2; ++k) m = std::max(m, std::abs(field.at(k) - std::conj(field.at(-k))));
  return m;
}

void enforce_reality(SpectralField& field) {
  const int n = field.grid.n_points;
  field.c[0] = cplx(field.c[0].real(), 0.0);
  for (int k = 1; k < n / 2; ++k) {
    cplx avg = 0.5 * (field.at(k) + std::conj(field.at(-k)));
    field.at(k) = avg;
    field.at(-k) = std::conj(avg);
  }
  auto& nyq = field.c[static_cast<size_t>(field.grid.nyquist_slot())];
  nyq = cplx(nyq.real(), 0.0);
}

void zero_nyquist(SpectralField& field) {
  field.c[static_cast<size_t>(field.grid.nyquist_slot())] = 0.0;
}

SpectralField apply_multiplier(const SpectralField& field,
                               const std::function<cplx(double)>& symbol) {
  SpectralField out(field.grid, field.time_tag);
  for (int s = 0; s < field.grid.n_points; ++s)
    out.c[static_cast<size_t>(s)] = symbol(field.grid.xi(s)) * field.c[static_cast<size_t>(s)];
  zero_nyquist(out);
  return out;
}

SpectralField hilbert(const SpectralField& field) {
  return apply_multiplier(field, [](double xi) {
    if (xi > 0) return cplx(0.0, -1.0);
    if (xi < 0) return cplx(0.0, 1.0);
    return cplx(0.0, 0.0);
  });
}

SpectralField derivative(const SpectralField& field) {
  return apply_multiplier(field, [](double xi) { return cplx(0.0, xi); });
}

SpectralField antiderivative(const SpectralField& field) {
  return apply_multiplier(field, [](double xi) {
    return xi == 0.0 ? cplx(0.0, 0.0) : cplx(0.0, -1.0 / xi);
  });
}

void dealias(SpectralField& field) {
  const int n = field.grid.n_points;
  for (int s = 0; s < n; ++s)
    if (3 * std::abs(field.grid.mode(s)) > n) field.c[static_cast<size_t>(s)] = 0.0;
}

bool is_dealiased(const SpectralField& field) {
  const int n = field.grid.n_points;
  for (int s = 0; s < n; ++s)
    if (3 * std::abs(field.grid.mode(s)) > n && field.c[static_cast<size_t>(s)] != cplx(0.0, 0.0))
      return false;
  return true;
}

double poisson_hat(double a, double xi) {
  if (!(a > 0.0)) throw DomainError("poisson_hat: a must be positive");
  return std::numbers::pi * std::exp(-a * std::abs(xi));
}

cplx conj_poisson_hat(double a, double xi) {
  if (!(a > 0.0)) throw DomainError("conj_poisson_hat: a must be positive");
  double sg = xi > 0 ? 1.0 : (xi < 0 ? -1.0 : 0.0);
  return cplx(0.0, -std::numbers::pi * sg * std::exp(-a * std::abs(xi)));
}

SpectralField translate(const SpectralField& field, double shift) {
  return apply_multiplier(field, [shift](double xi) { return std::polar(1.0, xi * shift); });
}

}  // namespace muskat
