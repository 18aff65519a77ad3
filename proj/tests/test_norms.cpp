// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "muskat/errors.hpp"
#include "muskat/norms.hpp"
#include "support.hpp"

using namespace muskat;
using namespace testing_support;

namespace {

SpectralField product(const SpectralField& g, const SpectralField& h) {
  auto a = inverse(g), b = inverse(h);
  for (size_t j = 0; j < a.size(); ++j) a[j] *= b[j];
  auto p = forward(a, g.grid);
  dealias(p);
  return p;
}

}  // namespace

TEST_CASE("fourier_norm examples") {
  GridSpec g(64, 2 * pi);
  auto c1 = field_of(g, [](double a) { return std::cos(a); });
  CHECK(fourier_norm(c1, {0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(fourier_norm(c1, {1, 0, 0}) == doctest::Approx(1.0).epsilon(1e-13));
  // exact coefficients: the e^{nu t |xi|} weight would amplify transform round-off in empty modes
  SpectralField c2(g);
  c2.at(2) = c2.at(-2) = 0.5;
  CHECK(fourier_norm(c2, {1, 0.5, 1}) == doctest::Approx(2 * std::exp(1.0)).epsilon(1e-14));
  // constant mode counts only at s = 0
  auto k = field_of(g, [](double) { return -3.0; });
  CHECK(fourier_norm(k, {0, 0, 0}) == doctest::Approx(3.0));
  CHECK(fourier_norm(k, {1, 0, 0}) == 0.0);
}

TEST_CASE("fourier_norm overflow guard and domain") {
  GridSpec g(64, 2 * pi);
  auto f = field_of(g, [](double a) { return std::cos(a); });
  CHECK_THROWS_AS(fourier_norm(f, {0, 30, 1}), Error);  // 30 * 32 > 700
  CHECK_NOTHROW(fourier_norm(f, {0, 20, 1}));
  CHECK_THROWS_AS(fourier_norm(f, {-1, 0, 0}), DomainError);
}

TEST_CASE("weighted_l2") {
  GridSpec g(64, 2 * pi);
  CHECK(weighted_l2(field_of(g, [](double a) { return std::cos(a); }), {0, 0, 0}) ==
        doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
  CHECK(weighted_l2(SpectralField(g), {0, 0.3, 1}) == 0.0);
  std::mt19937_64 rng(21);
  GridSpec gr(128, 11.0);
  auto x = random_samples(rng, 128);
  double trap = 0;
  for (double v : x) trap += v * v * gr.spacing();
  CHECK(weighted_l2(forward(x, gr), {0, 0, 0}) == doctest::Approx(std::sqrt(trap)).epsilon(1e-10));
}

TEST_CASE("strip_radius") {
  GridSpec g(64, 2 * pi);
  SpectralField e(g);
  for (int k = -31; k <= 31; ++k) e.at(k) = std::exp(-0.7 * std::abs(g.xi(g.slot(k))));
  auto r = strip_radius(e, 1);
  REQUIRE(r.has_value());
  CHECK(std::abs(*r - 0.7) < 1e-6);

  GridSpec g2(1024, 2 * pi);
  SpectralField alg(g2);
  for (int k = 1; k < 512; ++k) alg.at(k) = alg.at(-k) = std::pow(g2.xi(k), -4.0);
  auto ra = strip_radius(alg, 1);
  REQUIRE(ra.has_value());
  CHECK(*ra < 0.05);

  SpectralField tiny(g);
  for (int k = -31; k <= 31; ++k) tiny.at(k) = 1e-15;
  CHECK_FALSE(strip_radius(tiny, 1).has_value());
}

TEST_CASE("decay_fit") {
  std::vector<std::pair<double, double>> p1, p2, c;
  for (int i = 0; i <= 40; ++i) {
    const double t = std::pow(10.0, -1.0 + 3.0 * i / 40.0);
    p1.emplace_back(t, 1.0 / (1.0 + t));
    p2.emplace_back(t, 3.0 / ((1.0 + t) * (1.0 + t)));
    c.emplace_back(t, 0.25);
  }
  CHECK(std::abs(decay_fit(p1) + 1.0) < 1e-8);
  CHECK(std::abs(decay_fit(p2) + 2.0) < 1e-8);
  CHECK(std::abs(decay_fit(c)) < 1e-10);
  auto bad = p1;
  bad[3].second = 0.0;
  CHECK_THROWS_AS(decay_fit(bad), DomainError);
  CHECK_THROWS_AS(decay_fit({p1.begin(), p1.begin() + 5}), DomainError);
}

TEST_CASE("check_interpolation") {
  GridSpec g(128, 2 * pi);
  auto single = field_of(g, [](double a) { return 0.3 * std::sin(5 * a); });
  CHECK(check_interpolation(single, 0, 1, 2, 0.2));
  CHECK(check_interpolation(single, 0, 0.5, 1, 0.0));
  std::mt19937_64 rng(2);
  CHECK(check_interpolation(random_field(rng, g, 64 - 1, 1.0, 0.95), 0, 1, 2, 0.1));
  int pass = 0;
  for (int i = 0; i < 1000; ++i) pass += check_interpolation(random_field(rng, g, 40, 1.0, 0.9), 0, 0.5, 1, 0.1);
  CHECK(pass == 1000);
  for (double s : {0.25, 1.5}) {
    int ok = 0;
    for (int i = 0; i < 200; ++i) ok += check_interpolation(random_field(rng, g, 40, 1.0, 0.9), 0, s, 2, 0.05);
    CHECK(ok == 200);
  }
  CHECK_THROWS_AS(check_interpolation(single, 1, 0, 2, 0.0), DomainError);
}

TEST_CASE("norm properties on random pairs") {
  std::mt19937_64 rng(17);
  GridSpec g(128, 2 * pi);
  for (int i = 0; i < 100; ++i) {
    auto f = random_field(rng, g, 31, 1.0, 0.9);
    auto h = random_field(rng, g, 31, 1.0, 0.9);
    for (NormSpec sp : {NormSpec{0, 0, 0}, NormSpec{1, 0.3, 1}, NormSpec{1.5, 0.1, 2}}) {
      CHECK(fourier_norm(-2.5 * f, sp) == doctest::Approx(2.5 * fourier_norm(f, sp)).epsilon(1e-13));
      CHECK(fourier_norm(f + h, sp) <= (fourier_norm(f, sp) + fourier_norm(h, sp)) * (1 + 1e-14));
    }
    // product rule at s = 1 and exponential splitting at nu t <= 2
    auto fh = product(f, h);
    const double f0 = fourier_norm(f, {0, 0, 0}), f1 = fourier_norm(f, {1, 0, 0});
    const double h0 = fourier_norm(h, {0, 0, 0}), h1 = fourier_norm(h, {1, 0, 0});
    CHECK(fourier_norm(fh, {1, 0, 0}) <= (f1 * h0 + f0 * h1) * (1 + 1e-12));
    for (double nut : {0.5, 2.0}) {
      NormSpec sp{0, nut, 1};
      CHECK(fourier_norm(fh, sp) <= fourier_norm(f, sp) * fourier_norm(h, sp) * (1 + 1e-12));
    }
  }
}

TEST_CASE("norm_report is internally consistent") {
  GridSpec g(256, 8 * pi);
  auto f = bump(g, 0.05, 1.0);
  auto r = norm_report(f, 0.2, 0.5);
  CHECK(r.f01 == doctest::Approx(fourier_norm(f, {0, 0.2, 0.5})));
  CHECK(r.f11 == doctest::Approx(fourier_norm(f, {1, 0.2, 0.5})));
  CHECK(r.f21 == doctest::Approx(fourier_norm(f, {2, 0.2, 0.5})));
  CHECK(r.f3half == doctest::Approx(fourier_norm(f, {1.5, 0.2, 0.5})));
  CHECK(r.l2nu == doctest::Approx(weighted_l2(f, {0, 0.2, 0.5})));
  CHECK(r.f11 <= std::sqrt(r.f01 * r.f21) * (1 + 1e-9));
  CHECK(r.f3half <= std::sqrt(r.f11 * r.f21) * (1 + 1e-9));
}
