// SPDX-License-Identifier: MIT
//
// Periodic collocation grid and Fourier-series transforms.
//
// Convention: f(alpha) = sum_k c_k exp(i xi_k alpha), xi_k = 2 pi k / L,
// collocation points alpha_j = -L/2 + j L/n. Coefficients are stored in FFT
// order: slot s holds k = s for s <= n/2, k = s - n otherwise.
#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace muskat {

using cplx = std::complex<double>;

struct GridSpec {
  int n_points = 0;
  double domain_length = 0.0;

  GridSpec() = default;
  GridSpec(int n, double L);

  double spacing() const { return domain_length / n_points; }
  double point(int j) const { return -0.5 * domain_length + j * spacing(); }
  // signed mode number stored in slot s
  int mode(int s) const { return s <= n_points / 2 ? s : s - n_points; }
  int slot(int k) const { return k >= 0 ? k : k + n_points; }
  double xi(int s) const;
  int nyquist_slot() const { return n_points / 2; }
  std::vector<double> points() const;

  bool operator==(const GridSpec& o) const {
    return n_points == o.n_points && domain_length == o.domain_length;
  }
};

struct SpectralField {
  GridSpec grid;
  std::vector<cplx> c;
  double time_tag = 0.0;

  SpectralField() = default;
  explicit SpectralField(const GridSpec& g, double t = 0.0)
      : grid(g), c(static_cast<size_t>(g.n_points), cplx(0.0, 0.0)), time_tag(t) {}

  cplx& at(int k) { return c[static_cast<size_t>(grid.slot(k))]; }
  cplx at(int k) const { return c[static_cast<size_t>(grid.slot(k))]; }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

// transforms
SpectralField forward(const std::vector<double>& samples, const GridSpec& grid);
std::vector<double> inverse(const SpectralField& field);
// max |c_k - conj(c_{-k})| over the symmetric band
double reality_defect(const SpectralField& field);
void enforce_reality(SpectralField& field);

// multipliers (Nyquist zeroed on output)
SpectralField apply_multiplier(const SpectralField& field,
                               const std::function<cplx(double)>& symbol);
SpectralField hilbert(const SpectralField& field);
SpectralField derivative(const SpectralField& field);
// mean-free antiderivative: multiplier 1/(i xi), c_0 -> 0
SpectralField antiderivative(const SpectralField& field);
void zero_nyquist(SpectralField& field);
// 2/3 rule: zero every mode with |k| > n/3
void dealias(SpectralField& field);
bool is_dealiased(const SpectralField& field);

// closed-form transforms of the Poisson kernels on the line
double poisson_hat(double a, double xi);
cplx conj_poisson_hat(double a, double xi);

// spectral translation f(alpha) -> f(alpha + shift)
SpectralField translate(const SpectralField& field, double shift);

}  // namespace muskat
