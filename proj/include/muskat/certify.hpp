// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "muskat/errors.hpp"
#include "muskat/fluid.hpp"
#include "muskat/interface.hpp"

namespace muskat {

struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;
  int terms = 0;
  bool divergent = false;
};

constexpr double kSeriesTailTol = 1e-12;

// n^n e^{-n} / n! (r)^n summed from n = 0, with the (2 pi n)^{-1/2} majorant tail
SeriesValue series_c0(double r);
// sum_{n>=1} n^{n+1} e^{-n}/n! r^n
SeriesValue series_c2(double r);

struct ConstantLedger {
  double a0 = 0, a1 = 0;
  double a_half = 0;                   // ||f||_{F^{1/2,1}} (defaults to sqrt(a0 a1))
  std::optional<double> a_three_half;  // ||f||_{F^{3/2,1}}, optional
  double h2 = 1;
  double theta = 0;
  double c0 = 0, c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0, c6 = 0;
  double c8 = 0, c9 = 0, c11 = 0, c12 = 0;
  // require a_three_half; NaN when absent
  double c7 = NAN, c10 = NAN, c13 = NAN, c14 = NAN;
  double c2_over_a0 = 0;
  double lambda0 = 0, lambda1 = 0, lambda2 = 0, lambda3 = 0;
  double lambda4 = 0, lambda5 = 0, lambda6 = 0, lambda7 = 0;
  double sigma0 = 0, sigma1 = 0, sigma2 = 0;
  double epsilon = 0;  // Young's-inequality epsilon, 1e-3 A_rho theta
  std::map<std::string, SeriesValue> series;
  std::set<std::string> divergent_names;

  bool divergent(const std::string& name) const { return divergent_names.count(name) > 0; }
  bool any_divergent() const { return !divergent_names.empty(); }

  // constants carried by the extra norms
  double C7(double a32) const;
  double C8(double a12) const;
  double C10(double a32) const;
  double C13(double a32) const;
  double C14(double a32) const;

  std::map<std::string, double> values() const;

  double abs_a_mu_ = 0, abs_a_kappa_ = 0;
};

double theta_closed_form(const FluidConfig& cfg);
double theta_scan(const FluidConfig& cfg, double xi_max = 50.0, double step = 1e-3);
// closed form, cross-checked against the scan (InternalError on mismatch > 1e-9)
double theta(const FluidConfig& cfg);

// throws RegimeError when C1, C11 or C12 has a nonpositive denominator
ConstantLedger ledger(double a0, double a1, const FluidConfig& cfg,
                      std::optional<double> a_half = std::nullopt,
                      std::optional<double> a_three_half = std::nullopt);

struct Thresholds {
  double k0 = 0, k1 = 0;
  double tau_star = 0;
};
Thresholds thresholds(const FluidConfig& cfg);

enum class Verdict { admissible, inadmissible, out_of_ledger };
const char* verdict_name(Verdict v);

struct Certificate {
  FluidConfig cfg;
  double a0 = 0, a1 = 0, a_half = 0, a_three_half = 0;
  std::optional<ConstantLedger> ledger;
  double theta = 0;
  double margin0 = NAN, margin1 = NAN, margin2 = NAN;
  double nu = 0;
  Thresholds thr;
  Verdict verdict = Verdict::inadmissible;
  std::string reason;
};

Certificate certify_datum(const InterfaceField& f0, const FluidConfig& cfg);

}  // namespace muskat
