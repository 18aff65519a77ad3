// SPDX-License-Identifier: MIT
#include "muskat/certify.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "muskat/errors.hpp"
#include "muskat/norms.hpp"

namespace muskat {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr int kMaxTerms = 2000000;
const double kInf = std::numeric_limits<double>::infinity();

// log of n^n e^{-n} / n!
double log_w(int n) {
  if (n == 0) return 0.0;
  double dn = n;
  return dn * std::log(dn) - dn - std::lgamma(dn + 1.0);
}

// sum_{n >= n0} term(n), stopping once tail(N) (bound on sum_{n > N}) < tol
SeriesValue sum_series(int n0, const std::function<double(int)>& term,
                       const std::function<double(int)>& tail) {
  SeriesValue s;
  double acc = 0.0;
  for (int n = n0; n < kMaxTerms; ++n) {
    acc += term(n);
    double tb = tail(n);
    if (tb < kSeriesTailTol) {
      s.value = acc;
      s.tail_bound = tb;
      s.terms = n - n0 + 1;
      return s;
    }
  }
  s.value = NAN;
  s.tail_bound = kInf;
  s.divergent = true;
  return s;
}

// bound on sum_{n > N} sqrt(n / 2 pi) r^n
double sqrt_geometric_tail(double r, int N) {
  double q = r * std::sqrt(1.0 + 1.0 / (N + 1.0));
  if (!(q < 1.0)) return kInf;
  return std::sqrt((N + 1.0) / (2.0 * kPi)) * std::pow(r, N + 1) / (1.0 - q);
}

SeriesValue divergent_value() {
  SeriesValue s;
  s.value = NAN;
  s.tail_bound = kInf;
  s.divergent = true;
  return s;
}

// sum_{n>=1} n^n e^{-n}/n! r^n, i.e. C0 - 1 without the cancellation
SeriesValue series_c0_minus_one(double r) {
  if (!(r >= 0.0) || !(r < 1.0)) return divergent_value();
  return sum_series(
      1, [r](int n) { return std::exp(log_w(n)) * std::pow(r, n); },
      [r](int N) { return std::pow(r, N + 1) / ((1.0 - r) * std::sqrt(2.0 * kPi * (N + 1))); });
}

SeriesValue series_lambda4(double rho) {
  if (!(rho >= 0.0) || !(rho < 1.0)) return divergent_value();
  return sum_series(
      1, [rho](int n) { return 0.5 * (n + 1.0) * std::exp(log_w(n)) * std::pow(rho, n); },
      [rho](int N) { return sqrt_geometric_tail(rho, N); });
}

// sum_{n>=1} n ||e^{-h|xi|} |xi|^{n-1/2} / n!||_inf a0^{n-1}  (without the a_half factor)
SeriesValue series_c8_unit(double a0, double h) {
  const double r = a0 / h;
  if (!(r >= 0.0) || !(r < 1.0)) return divergent_value();
  return sum_series(
      1,
      [r, h](int n) {
        double x = n - 0.5;
        double lg = x * std::log(x) - x - std::lgamma(n + 1.0);
        return n * std::exp(lg) / std::sqrt(h) * std::pow(r, n - 1);
      },
      [r, h](int N) {
        double q = r * std::sqrt(1.0 + 1.0 / (N + 1.0));
        if (!(q < 1.0)) return kInf;
        return std::sqrt((N + 1.0) / kPi) / std::sqrt(h) * std::pow(r, N) / (1.0 - q);
      });
}

// C2 / a0 = sum_{n>=1} n^{n+1} e^{-n}/n! a0^{n-1} / h^n
SeriesValue series_c2_over_a0(double a0, double h) {
  const double r = a0 / h;
  if (!(r >= 0.0) || !(r < 1.0)) return divergent_value();
  return sum_series(
      1, [r, h](int n) { return n * std::exp(log_w(n)) * std::pow(r, n - 1) / h; },
      [r, h](int N) {
        double q = r * std::sqrt(1.0 + 1.0 / (N + 1.0));
        if (!(q < 1.0)) return kInf;
        return std::sqrt((N + 1.0) / (2.0 * kPi)) * std::pow(r, N) / ((1.0 - q) * h);
      });
}

double checked_inverse(const char* name, double denom) {
  if (!(denom > 0.0)) throw RegimeError(name, denom);
  return 1.0 / denom;
}
}  // namespace

SeriesValue series_c0(double r) {
  SeriesValue s = series_c0_minus_one(r);
  if (!s.divergent) s.value += 1.0, s.terms += 1;
  return s;
}

SeriesValue series_c2(double r) {
  if (!(r >= 0.0) || !(r < 1.0)) return divergent_value();
  return sum_series(
      1, [r](int n) { return n * std::exp(log_w(n)) * std::pow(r, n); },
      [r](int N) { return sqrt_geometric_tail(r, N); });
}

double theta_closed_form(const FluidConfig& cfg) {
  const double num = cfg.a_kappa * (1.0 - cfg.a_mu);
  if (num >= 0.0) return 1.0 - num / (1.0 - cfg.a_kappa * cfg.a_mu);
  return 1.0;
}

double theta_scan(const FluidConfig& cfg, double xi_max, double step) {
  const double num = cfg.a_kappa * (1.0 - cfg.a_mu);
  const double prod = cfg.a_kappa * cfg.a_mu;
  const long steps = static_cast<long>(std::ceil(xi_max / step));
  double best = kInf;
  for (long i = 0; i <= steps; ++i) {
    double xi = i * step;
    best = std::min(best, 1.0 - num / (std::exp(2.0 * cfg.h2 * xi) - prod));
  }
  return best;
}

double theta(const FluidConfig& cfg) {
  double closed = theta_closed_form(cfg);
  // the scan must reach far enough that e^{2 h2 xi} swamps the numerator
  double scan = theta_scan(cfg, std::max(50.0, 25.0 / cfg.h2));
  if (std::abs(closed - scan) > 1e-9)
    throw InternalError("theta: closed form " + std::to_string(closed) + " vs scan " +
                        std::to_string(scan));
  return closed;
}

double ConstantLedger::C7(double a32) const {
  return a32 * (1.0 + a1 * a1) / ((1.0 - a1 * a1) * (1.0 - a1 * a1));
}
double ConstantLedger::C8(double a12) const {
  auto s = series_c8_unit(a0, h2);
  return s.divergent ? NAN : a12 * s.value;
}
double ConstantLedger::C10(double a32) const {
  return c2_over_a0 * a_half * (1.0 + a1) + c0 * a32;
}
double ConstantLedger::C13(double a32) const {
  // uses the stored |A_mu|, |A_kappa| through c11 / c12 inputs
  return abs_a_mu_ * c11 * (C7(a32) + abs_a_kappa_ * (c0 + c8) * C10(a32));
}
double ConstantLedger::C14(double a32) const { return c9 * c12 * C13(a32) + C10(a32) * c11; }

std::map<std::string, double> ConstantLedger::values() const {
  return {{"a0", a0},           {"a1", a1},           {"a_half", a_half},
          {"theta", theta},     {"C0", c0},           {"C1", c1},
          {"C2", c2},           {"C3", c3},           {"C4", c4},
          {"C5", c5},           {"C6", c6},           {"C7", c7},
          {"C8", c8},           {"C9", c9},           {"C10", c10},
          {"C11", c11},         {"C12", c12},         {"C13", c13},
          {"C14", c14},         {"lambda0", lambda0}, {"lambda1", lambda1},
          {"lambda2", lambda2}, {"lambda3", lambda3}, {"lambda4", lambda4},
          {"lambda5", lambda5}, {"lambda6", lambda6}, {"lambda7", lambda7},
          {"sigma0", sigma0},   {"sigma1", sigma1},   {"sigma2", sigma2},
          {"epsilon", epsilon}};
}

ConstantLedger ledger(double a0, double a1, const FluidConfig& cfg, std::optional<double> a_half,
                      std::optional<double> a_three_half) {
  if (!(a0 >= 0.0) || !(a1 >= 0.0)) throw DomainError("ledger: norms must be nonnegative");
  ConstantLedger L;
  L.a0 = a0;
  L.a1 = a1;
  L.a_half = a_half ? *a_half : std::sqrt(a0 * a1);
  L.a_three_half = a_three_half;
  L.h2 = cfg.h2;
  L.abs_a_mu_ = std::abs(cfg.a_mu);
  L.abs_a_kappa_ = std::abs(cfg.a_kappa);
  L.theta = theta(cfg);
  L.epsilon = 1e-3 * cfg.a_rho * L.theta;

  const double am = std::abs(cfg.a_mu), ak = std::abs(cfg.a_kappa);
  const double r = a0 / cfg.h2;

  auto record = [&L](const std::string& name, const SeriesValue& s) {
    L.series[name] = s;
    if (s.divergent) L.divergent_names.insert(name);
    return s.value;
  };
  const double c0m1 = record("C0", series_c0_minus_one(r));
  L.c0 = 1.0 + c0m1;
  L.c2 = record("C2", series_c2(r));
  L.c2_over_a0 = record("C2_over_a0", series_c2_over_a0(a0, cfg.h2));
  L.lambda4 = record("lambda4", series_lambda4(a0 / (2.0 * cfg.h2)));
  const double c8u = record("C8", series_c8_unit(a0, cfg.h2));
  if (!(a1 < 1.0)) L.divergent_names.insert("C6");
  if (L.any_divergent()) {
    for (double* v : {&L.c1, &L.c3, &L.c4, &L.c6, &L.c8, &L.c9, &L.c11, &L.c12, &L.lambda0,
                      &L.lambda1, &L.lambda2, &L.lambda3, &L.lambda5, &L.lambda6, &L.lambda7,
                      &L.sigma0, &L.sigma1, &L.sigma2})
      *v = NAN;
    return L;
  }

  const double a1s = a1 * a1, om = 1.0 - a1s;
  L.c6 = a1 / om;
  L.c1 = checked_inverse("C1", 1.0 - am * (2.0 * a1 / om + ak * L.c0 * L.c0 * (1.0 + a1)));
  L.c3 = 1.0 + 2.0 * am * L.c1 *
                   (a1 * (1.0 + a1s) / (om * om) +
                    0.5 * ak * L.c0 * ((L.c0 + 2.0 * L.c2) * a1 + L.c2 * (1.0 + a1)));
  L.c4 = L.c2 + L.c0 * L.c3;
  const double prod = cfg.a_kappa * cfg.a_mu;
  L.c5 = std::abs(prod) / (1.0 - prod);

  const double c0 = L.c0, c2 = L.c2, c3 = L.c3, c4 = L.c4, c5 = L.c5, c6 = L.c6;
  L.lambda0 = c0 * (c0 + c2 + c4) * a1;
  L.lambda1 = 4.0 * c6 + 2.0 * ak * c0 * (c0 * a1 + c0m1);
  L.lambda2 = 2.0 * c0m1 * c3 + 2.0 * c2;
  L.lambda3 = 4.0 * (1.0 + a1s) / (om * om) * a1 + 4.0 * c3 * c6 +
              2.0 * ak * c0 * (c0 + c2 + c4) * a1 + 2.0 * ak * (c0 * c2 + c0m1 * c4);
  const double one_p_mu = std::abs(1.0 + cfg.a_mu);

  L.sigma0 = L.c1 * ((c6 + ak * c0 * c0) * a1 +
                     0.5 * one_p_mu * (2.0 * ak * c0m1 + c5 * (2.0 * ak * c0m1 + L.lambda1)) +
                     2.0 * kPi * ak * c0 * c0m1 + am * L.lambda1 + c6 * a1);
  // 2 C6^2 / a1 written without the division so that a1 = 0 is exact
  const double two_c6sq_over_a1 = 2.0 * a1 / (om * om);
  L.sigma1 = L.c1 * (2.0 * (1.0 + 0.5 * c3 * om) * c6 * c6 + ak * L.lambda0 +
                     0.5 * one_p_mu * (ak * L.lambda2 + c5 * (ak * L.lambda2 + L.lambda3)) +
                     2.0 * kPi * ak * (c0 * c2 + c0m1 * (c0 + 1.0) * c4) + 0.5 * am * L.lambda3 +
                     c3 * c6 * a1 + two_c6sq_over_a1);

  // L^2-section constants
  L.c9 = c0 * (1.0 + a1);
  L.c8 = L.a_half * c8u;
  L.c11 = checked_inverse("C11", 1.0 - am * c6 - ak * am * c0 * L.c9);
  L.c12 = checked_inverse("C12", 1.0 - am * (c6 + ak * (c0 + L.c8) * L.c9));
  L.lambda5 = 2.0 * c6 + (c0 + c2) * a1;
  L.lambda6 = 2.0 * (1.0 + a1s) / (om * om) + c0;
  L.lambda7 = c0m1 + c2;
  const double c9 = L.c9, c12 = L.c12;
  L.sigma2 = c12 * (c6 + c0 + c2) * a1 +
             one_p_mu * c12 * (2.0 * ak * L.lambda4 + c5 * (L.lambda5 + ak * (L.lambda7 * c9 + L.lambda4))) +
             2.0 * kPi * ak * (c0m1 + c2) * c9 * c12 + c6 * c12 * a1 + 2.0 * L.lambda5 * c12 +
             2.0 * ak * L.lambda7 * c9 * c12;
  if (a_three_half) {
    L.c7 = L.C7(*a_three_half);
    L.c10 = L.C10(*a_three_half);
    L.c13 = L.C13(*a_three_half);
    L.c14 = L.C14(*a_three_half);
  }
  return L;
}

Thresholds thresholds(const FluidConfig& cfg) {
  const double th = theta(cfg);
  auto feasible = [&](double tau) {
    try {
      ConstantLedger L = ledger(tau * cfg.h2, tau, cfg);
      if (L.any_divergent()) return false;
      return th - L.sigma0 > 0.0 && th - L.sigma1 > 0.0 && th - L.sigma2 > 0.0;
    } catch (const RegimeError&) {
      return false;
    }
  };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  if (lo < 1e-6) throw Error(ExitCode::inadmissible, "thresholds: degenerate regime, tau* < 1e-6");
  Thresholds t;
  t.tau_star = lo;
  t.k0 = 0.99 * lo * cfg.h2;
  t.k1 = 0.99 * lo;
  return t;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::admissible: return "admissible";
    case Verdict::inadmissible: return "inadmissible";
    case Verdict::out_of_ledger: return "out_of_ledger";
  }
  return "?";
}

Certificate certify_datum(const InterfaceField& f0, const FluidConfig& cfg) {
  Certificate c;
  c.cfg = cfg;
  c.a0 = fourier_norm(f0.f, {0.0, 0.0, 0.0});
  c.a1 = fourier_norm(f0.f, {1.0, 0.0, 0.0});
  c.a_half = fourier_norm(f0.f, {0.5, 0.0, 0.0});
  c.a_three_half = fourier_norm(f0.f, {1.5, 0.0, 0.0});
  c.theta = theta(cfg);
  c.thr = thresholds(cfg);
  try {
    c.ledger = ledger(c.a0, c.a1, cfg, c.a_half, c.a_three_half);
  } catch (const RegimeError& e) {
    c.verdict = Verdict::inadmissible;
    c.reason = e.what();
    return c;
  }
  const ConstantLedger& L = *c.ledger;
  if (L.any_divergent()) {
    c.verdict = Verdict::out_of_ledger;
    c.reason = "series outside radius of convergence:";
    for (auto& n : L.divergent_names) c.reason += " " + n;
    return c;
  }
  c.margin0 = cfg.a_rho * (c.theta - L.sigma0);
  c.margin1 = cfg.a_rho * (c.theta - L.sigma1);
  c.margin2 = cfg.a_rho * (c.theta - L.sigma2);
  c.nu = 0.5 * std::min(c.margin0, c.margin1);
  const double mmin = std::min({c.margin0, c.margin1, c.margin2});
  std::string why;
  if (!(c.a0 < c.thr.k0)) why += " a0 >= k0;";
  if (!(c.a1 < c.thr.k1)) why += " a1 >= k1;";
  if (!(mmin > 0.0)) why += " nonpositive margin;";
  if (!(c.nu < mmin)) why += " nu >= min margin;";
  c.verdict = why.empty() ? Verdict::admissible : Verdict::inadmissible;
  c.reason = why.empty() ? "all hypotheses hold" : why.substr(1);
  if (c.nu < 0) c.nu = 0;
  return c;
}

}  // namespace muskat
