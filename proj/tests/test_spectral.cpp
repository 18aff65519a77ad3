// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "muskat/errors.hpp"
#include "muskat/spectral.hpp"
#include "support.hpp"

using namespace muskat;
using namespace testing_support;

namespace {

// 2 * int_0^inf k(x) trig(xi x) dx by QAWF
double qawf(double (*fn)(double, void*), double a, double xi, bool sine) {
  gsl_set_error_handler_off();
  gsl_integration_workspace* w = gsl_integration_workspace_alloc(2000);
  gsl_integration_workspace* cw = gsl_integration_workspace_alloc(2000);
  gsl_integration_qawo_table* tab =
      gsl_integration_qawo_table_alloc(xi, 1.0, sine ? GSL_INTEG_SINE : GSL_INTEG_COSINE, 50);
  gsl_function F{fn, &a};
  double r = 0, err = 0;
  gsl_integration_qawf(&F, 0.0, 1e-14, 2000, w, cw, tab, &r, &err);
  gsl_integration_qawo_table_free(tab);
  gsl_integration_workspace_free(cw);
  gsl_integration_workspace_free(w);
  return 2.0 * r;
}
double poisson_kernel(double x, void* p) {
  const double a = *static_cast<double*>(p);
  return a / (x * x + a * a);
}
double conj_kernel(double x, void* p) {
  const double a = *static_cast<double*>(p);
  return x / (x * x + a * a);
}

}  // namespace

TEST_CASE("forward: constant and single mode") {
  for (int n : {8, 34, 64}) {
    GridSpec g(n, 3.7);
    auto f = forward(std::vector<double>(static_cast<size_t>(n), 1.0), g);
    CHECK(std::abs(f.c[0] - cplx(1.0, 0.0)) < 1e-14);
    for (int s = 1; s < n; ++s) CHECK(std::abs(f.c[static_cast<size_t>(s)]) < 1e-14);
  }
  GridSpec g(64, 2 * pi);
  auto f = field_of(g, [](double a) { return std::cos(a); });
  for (int s = 0; s < 64; ++s) {
    const int k = g.mode(s);
    const double want = (k == 1 || k == -1) ? 0.5 : 0.0;
    CHECK(std::abs(f.c[static_cast<size_t>(s)] - cplx(want, 0.0)) < 1e-12);
  }
}

TEST_CASE("forward: length mismatch is a configuration error") {
  GridSpec g(16, 1.0);
  CHECK_THROWS_AS(forward(std::vector<double>(15, 0.0), g), ConfigError);
}

TEST_CASE("forward/inverse round trip") {
  std::mt19937_64 rng(11);
  GridSpec g(128, 5.0);
  auto x = random_samples(rng, 128);
  CHECK(max_abs_diff(inverse(forward(x, g)), x) < 1e-12);
  auto f = forward(x, g);
  CHECK(reality_defect(f) < 1e-15);

  for (int n : {32, 48, 64, 100, 128, 256, 512, 1000, 1024, 2048, 4096}) {
    GridSpec gn(n, 2 * pi);
    auto y = random_samples(rng, n);
    CHECK(max_abs_diff(inverse(forward(y, gn)), y) / max_abs(y) < 1e-12);
  }
}

TEST_CASE("hilbert") {
  GridSpec g(64, 2 * pi);
  auto h = inverse(hilbert(field_of(g, [](double a) { return std::cos(3 * a); })));
  CHECK(max_abs_diff(h, sample(g, [](double a) { return std::sin(3 * a); })) < 1e-12);

  auto hc = inverse(hilbert(field_of(g, [](double) { return 4.2; })));
  CHECK(max_abs(hc) < 1e-15);

  std::mt19937_64 rng(5);
  GridSpec gr(128, 7.0);
  auto x = random_samples(rng, 128);
  auto f = forward(x, gr);
  zero_nyquist(f);
  auto hh = inverse(hilbert(hilbert(f)));
  auto fx = inverse(f);
  double mean = 0;
  for (double v : fx) mean += v;
  mean /= 128;
  for (size_t j = 0; j < fx.size(); ++j) CHECK(hh[j] == doctest::Approx(-(fx[j] - mean)).epsilon(1e-12).scale(1));
}

TEST_CASE("hilbert is an isometry on mean-free fields") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    GridSpec g(64, 3.0);
    auto f = random_field(rng, g, 31, 1.0, 0.9);
    auto x = inverse(f), y = inverse(hilbert(f));
    double nx = 0, ny = 0;
    for (int j = 0; j < 64; ++j) nx += x[static_cast<size_t>(j)] * x[static_cast<size_t>(j)],
                                  ny += y[static_cast<size_t>(j)] * y[static_cast<size_t>(j)];
    CHECK(ny == doctest::Approx(nx).epsilon(1e-12));
  }
}

TEST_CASE("derivative") {
  GridSpec g(64, 2 * pi);
  auto d = inverse(derivative(field_of(g, [](double a) { return std::sin(a); })));
  CHECK(max_abs_diff(d, sample(g, [](double a) { return std::cos(a); })) < 1e-12);
  CHECK(max_abs(inverse(derivative(field_of(g, [](double) { return 2.0; })))) < 1e-15);

  // fourth-order central differences on the analytic function, step 1e-3
  GridSpec g2(256, 2 * pi);
  auto e = [](double a) { return std::exp(std::sin(a)); };
  auto spec = inverse(derivative(field_of(g2, e)));
  const double h = 1e-3;
  double err = 0, scale = 0;
  for (int j = 0; j < 256; ++j) {
    const double a = g2.point(j);
    const double fd = (-e(a + 2 * h) + 8 * e(a + h) - 8 * e(a - h) + e(a - 2 * h)) / (12 * h);
    err = std::max(err, std::abs(spec[static_cast<size_t>(j)] - fd));
    scale = std::max(scale, std::abs(fd));
  }
  CHECK(err / scale < 1e-8);
}

TEST_CASE("antiderivative inverts derivative on mean-free fields") {
  std::mt19937_64 rng(3);
  GridSpec g(128, 9.0);
  auto f = random_field(rng, g, 40, 1.0, 0.95);
  auto back = antiderivative(derivative(f));
  for (int s = 0; s < 128; ++s) CHECK(std::abs(back.c[static_cast<size_t>(s)] - f.c[static_cast<size_t>(s)]) < 1e-14);
}

TEST_CASE("dealias and translate") {
  std::mt19937_64 rng(4);
  GridSpec g(96, 2 * pi);
  auto f = forward(random_samples(rng, 96), g);
  CHECK_FALSE(is_dealiased(f));
  dealias(f);
  CHECK(is_dealiased(f));
  CHECK(std::abs(f.at(32)) > 0);
  CHECK(std::abs(f.at(33)) == 0);

  GridSpec gt(64, 2 * pi);
  auto t = inverse(translate(field_of(gt, [](double a) { return std::cos(2 * a); }), 0.3));
  CHECK(max_abs_diff(t, sample(gt, [](double a) { return std::cos(2 * (a + 0.3)); })) < 1e-12);
}

TEST_CASE("poisson_hat closed form") {
  CHECK(poisson_hat(1.0, 0.0) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(poisson_hat(2.0, 0.0) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(poisson_hat(1.0, -2.0) == doctest::Approx(pi * std::exp(-2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(poisson_hat(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(poisson_hat(-1.0, 1.0), DomainError);
}

TEST_CASE("conj_poisson_hat closed form") {
  CHECK(conj_poisson_hat(1.0, 0.0) == cplx(0.0, 0.0));
  auto v = conj_poisson_hat(1.0, 1.0);
  CHECK(v.real() == 0.0);
  CHECK(v.imag() == doctest::Approx(-pi * std::exp(-1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(conj_poisson_hat(0.0, 1.0), DomainError);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-6, 6), ua(0.1, 5);
  for (int i = 0; i < 200; ++i) {
    const double xi = u(rng), a = ua(rng);
    // transform of a real odd kernel: odd in xi and Hermitian
    CHECK(conj_poisson_hat(a, xi) == -conj_poisson_hat(a, -xi));
    CHECK(conj_poisson_hat(a, xi) == std::conj(conj_poisson_hat(a, -xi)));
  }
}

TEST_CASE("poisson transform on the padded grid") {
  // trapezoid on [-L/2, L/2] plus the asymptotic tail beyond L/2:
  // int_X^inf e^{i xi x}/(x - i a) dx = -e^{i xi X} sum_m m!/((i xi)^{m+1} (X - i a)^{m+1})
  const double L = 200, a = 1.0;
  const int n = 1 << 14;
  const double h = L / n, X = L / 2;
  for (double xi : {0.5, 1.0, 2.0}) {
    double trap = 0;
    for (int j = 0; j <= n; ++j) {
      const double x = -X + j * h;
      const double w = (j == 0 || j == n) ? 0.5 : 1.0;
      trap += w * h * a / (x * x + a * a) * std::cos(xi * x);
    }
    auto tail = [&](double k) {
      const cplx ik(0.0, k), z(X, -a);
      cplx sum = 0, term = 1.0 / (ik * z);
      for (int m = 0; m < 12; ++m) {
        sum -= term;
        term *= static_cast<double>(m + 1) / (ik * z);
      }
      return sum * std::exp(ik * X);
    };
    // a/(x^2+a^2) = Im 1/(x - i a); cos pairs the +xi and -xi tails, both sides of the line count
    const double full = trap + std::imag(tail(xi) + tail(-xi));
    CHECK(std::abs(full - poisson_hat(a, xi)) / poisson_hat(a, xi) < 1e-4);
  }
}

TEST_CASE("closed forms agree with direct quadrature") {
  for (double a : {0.5, 1.0, 2.0, 4.0})
    for (double xi : {0.5, 1.0, 2.0, 3.0, 4.0}) {
      const double p = qawf(poisson_kernel, a, xi, false);
      CHECK(std::abs(p - poisson_hat(a, xi)) / poisson_hat(a, xi) < 1e-4);
      CHECK(std::abs(p - poisson_hat(a, -xi)) / poisson_hat(a, xi) < 1e-4);
      // F[x/(x^2+a^2)](xi) = -2i int_0^inf x sin(xi x)/(x^2+a^2)
      const double q = -qawf(conj_kernel, a, xi, true);
      CHECK(std::abs(q - conj_poisson_hat(a, xi).imag()) / poisson_hat(a, xi) < 1e-4);
      CHECK(std::abs(-q - conj_poisson_hat(a, -xi).imag()) / poisson_hat(a, xi) < 1e-4);
    }
}
