// SPDX-License-Identifier: MIT
#include "muskat/vorticity.hpp"

#include <cmath>
#include <numbers>

#include "muskat/certify.hpp"
#include "muskat/norms.hpp"

namespace muskat {

namespace {
constexpr double kPi = std::numbers::pi;

double f01(const SpectralField& s) { return fourier_norm(s, {0.0, 0.0, 0.0}); }

std::vector<double> axpy(double a, const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> r(y);
  for (size_t i = 0; i < r.size(); ++i) r[i] += a * x[i];
  return r;
}
}  // namespace

InterfaceOperators::InterfaceOperators(const InterfaceField& f, const FluidConfig& cfg, Exec exec)
    : grid_(f.grid()), cfg_(cfg), exec_(exec), f_(f.samples()),
      fp_(inverse(derivative(f.f))), table_(f.grid()) {
  check_geometry(f, cfg);
  self_ = build_self(f_, table_, exec_);
  cs_ = build_curve_from_soil(f_, cfg.h2, table_, exec_);
  sc_ = build_soil_from_curve(f_, cfg.h2, table_, exec_);
  flat_q_ = muskat::flat_q(cfg.h2, table_);
  const int n = grid_.n_points, half = n / 2;
  j1_.resize(self_.q.size());
  j2_.resize(cs_.q.size());
  for (int i = 0; i < n; ++i) {
    const double d = fp_[static_cast<size_t>(i)];
    for (int mm = 0; mm < half; ++mm) {
      size_t idx = static_cast<size_t>(i) * half + static_cast<size_t>(mm);
      j1_[idx] = d * self_.q[idx] - self_.p[idx];
    }
    for (int m = 0; m < n; ++m) {
      size_t idx = static_cast<size_t>(i) * n + static_cast<size_t>(m);
      j2_[idx] = d * cs_.q[idx] - cs_.p[idx];
    }
  }
}

std::vector<double> InterfaceOperators::omega1_operator(const std::vector<double>& w1,
                                                        const std::vector<double>& w2) const {
  const int n = grid_.n_points;
  const double h = grid_.spacing();
  auto a = apply_self(j1_, w1, n, h, exec_);
  auto b = apply_cross(j2_, w2, n, h, exec_);
  for (int i = 0; i < n; ++i)
    a[static_cast<size_t>(i)] = cfg_.a_mu / kPi * (a[static_cast<size_t>(i)] + b[static_cast<size_t>(i)]);
  return a;
}

std::vector<double> InterfaceOperators::omega2_quadrature(const std::vector<double>& w1) const {
  auto r = apply_cross(sc_.p, w1, grid_.n_points, grid_.spacing(), exec_);
  for (auto& v : r) v *= -cfg_.a_kappa / kPi;
  return r;
}

int series_order(double a0, double h2, double omega_norm, double tol) {
  const double r = a0 / h2;
  if (!(r < 1.0)) return -1;
  if (omega_norm == 0.0 || r == 0.0) return 0;
  for (int N = 0; N < 100000; ++N) {
    double tail = std::exp((N + 1) * std::log(r)) / std::sqrt(2.0 * kPi * (N + 1)) / (1.0 - r);
    if (tail * omega_norm < tol / 10.0) return N;
  }
  return -1;
}

SpectralField omega2_series(const InterfaceField& f, const SpectralField& omega1,
                            const FluidConfig& cfg, int n_max, double tol, int* n_used) {
  const GridSpec& g = f.grid();
  if (n_max <= 0) {
    n_max = series_order(f01(f.f), cfg.h2, f01(omega1), tol);
    if (n_max < 0)
      throw MethodUnavailable("series path: ||f||_{F^{0,1}} >= h2, tail bound not achievable");
  }
  if (n_used) *n_used = n_max;
  const auto fs = f.samples();
  auto prod = inverse(omega1);  // f^n omega1
  SpectralField acc(g, f.time);
  std::vector<double> w(static_cast<size_t>(g.n_points));  // (-|xi|)^n / n!
  std::fill(w.begin(), w.end(), 1.0);
  for (int nn = 0; nn <= n_max; ++nn) {
    SpectralField term = forward(prod, g);
    for (int s = 0; s < g.n_points; ++s) acc.c[static_cast<size_t>(s)] += w[static_cast<size_t>(s)] * term.c[static_cast<size_t>(s)];
    for (int s = 0; s < g.n_points; ++s) w[static_cast<size_t>(s)] *= -std::abs(g.xi(s)) / (nn + 1);
    for (size_t j = 0; j < prod.size(); ++j) prod[j] *= fs[j];
  }
  for (int s = 0; s < g.n_points; ++s)
    acc.c[static_cast<size_t>(s)] *= -cfg.a_kappa * std::exp(-cfg.h2 * std::abs(g.xi(s)));
  zero_nyquist(acc);
  return acc;
}

SpectralField omega2_of_omega1(const InterfaceField& f, const SpectralField& omega1,
                               const FluidConfig& cfg, Omega2Method method, int n_max,
                               double tol) {
  if (method == Omega2Method::series) {
    check_geometry(f, cfg);
    return omega2_series(f, omega1, cfg, n_max, tol);
  }
  InterfaceOperators ops(f, cfg, default_exec());
  auto r = forward(ops.omega2_quadrature(inverse(omega1)), f.grid());
  r.time_tag = f.time;
  return r;
}

VorticityPair solve_vorticity(const InterfaceField& f, const FluidConfig& cfg,
                              const VorticityOptions& opt) {
  InterfaceOperators ops(f, cfg, opt.exec);
  return solve_vorticity(ops, f, cfg, opt);
}

VorticityPair solve_vorticity(const InterfaceOperators& ops, const InterfaceField& f,
                              const FluidConfig& cfg, const VorticityOptions& opt) {
  const GridSpec& g = f.grid();
  const auto& fp = ops.fp();
  std::vector<double> forcing(fp.size());
  for (size_t i = 0; i < fp.size(); ++i) forcing[i] = -2.0 * cfg.a_rho * fp[i];

  auto omega2_from = [&](const std::vector<double>& w1) -> std::vector<double> {
    if (opt.method == Omega2Method::series)
      return inverse(omega2_series(f, forward(w1, g), cfg, opt.series_nmax, opt.series_tol));
    return ops.omega2_quadrature(w1);
  };

  VorticityPair out;
  std::vector<double> w1 = forcing, w2;
  for (int it = 1; it <= opt.max_iter; ++it) {
    w2 = omega2_from(w1);
    auto next = axpy(1.0, ops.omega1_operator(w1, w2), forcing);
    std::vector<double> diff(next.size());
    for (size_t i = 0; i < diff.size(); ++i) diff[i] = next[i] - w1[i];
    double res = f01(forward(diff, g));
    out.history.push_back(res);
    w1 = std::move(next);
    out.iterations = it;
    out.residual = res;
    if (!std::isfinite(res)) break;
    if (res < opt.tol) {
      w2 = omega2_from(w1);
      out.omega1 = forward(w1, g);
      out.omega2 = forward(w2, g);
      out.omega1.time_tag = out.omega2.time_tag = f.time;
      for (size_t k = 2; k + 1 < out.history.size(); ++k)
        if (out.history[k] > 0.0)
          out.contraction_ratio =
              std::max(out.contraction_ratio, out.history[k + 1] / out.history[k]);
      return out;
    }
  }
  throw DivergenceError("vorticity Picard iteration did not converge (residual " +
                            std::to_string(out.residual) + " after " +
                            std::to_string(out.iterations) + " iterations)",
                        out.history);
}

PotentialPair potentials(const VorticityPair& pair, const InterfaceField& f,
                         const FluidConfig& cfg, double tol) {
  const GridSpec& g = f.grid();
  const int n = g.n_points, half = n / 2;
  const double h = g.spacing();
  InterfaceOperators ops(f, cfg, default_exec());
  const auto& fp = ops.fp();
  const auto& fs = ops.f();
  const auto& sc = ops.soil_from_curve();

  // Omega2 kernel: P(x; a_j) + f'_j Q(x; a_j)
  auto omega2_from = [&](const std::vector<double>& W1) {
    std::vector<double> src(W1.size());
    std::vector<double> r(W1.size());
    auto a = apply_cross(sc.p, W1, n, h, ops.exec());
    for (size_t j = 0; j < src.size(); ++j) src[j] = fp[j] * W1[j];
    auto b = apply_cross(sc.q, src, n, h, ops.exec());
    for (size_t i = 0; i < r.size(); ++i) r[i] = -cfg.a_kappa / kPi * (a[i] + b[i]);
    return r;
  };

  // residual of the Omega1 identity at alpha = 0 (slot n/2)
  const int i0 = n / 2;
  auto residual_at_origin = [&](const std::vector<double>& W1, const std::vector<double>& W2) {
    const auto& self = ops.self();
    const auto& cs = ops.curve_from_soil();
    double t1 = 0.0, t2 = 0.0;
    for (int m = 1, mm = 0; m < n; m += 2, ++mm) {
      size_t idx = static_cast<size_t>(i0) * half + static_cast<size_t>(mm);
      size_t j = static_cast<size_t>((i0 - m + n) % n);
      t1 += (self.p[idx] - fp[j] * self.q[idx]) * W1[j];
    }
    for (int m = 0; m < n; ++m) {
      size_t idx = static_cast<size_t>(i0) * n + static_cast<size_t>(m);
      size_t j = static_cast<size_t>((i0 - m + n) % n);
      t2 += cs.p[idx] * W2[j];
    }
    double rhs = -cfg.a_mu / kPi * (2.0 * h * t1) - cfg.a_mu / kPi * (h * t2) -
                 2.0 * cfg.a_rho * fs[static_cast<size_t>(i0)];
    return rhs - W1[static_cast<size_t>(i0)];
  };

  SpectralField base = antiderivative(pair.omega1);
  auto W1_0 = inverse(base);
  auto W1_1 = W1_0;
  for (auto& v : W1_1) v += 1.0;
  double r0 = residual_at_origin(W1_0, omega2_from(W1_0));
  double r1 = residual_at_origin(W1_1, omega2_from(W1_1));
  double C = (r1 == r0) ? 0.0 : -r0 / (r1 - r0);

  PotentialPair out;
  out.gauge = C;
  out.Omega1 = base;
  out.Omega1.c[0] += C;
  auto W1 = inverse(out.Omega1);
  out.Omega2 = forward(omega2_from(W1), g);
  out.Omega1.time_tag = out.Omega2.time_tag = f.time;

  out.defect1 = f01(derivative(out.Omega1) - pair.omega1);
  out.defect2 = f01(derivative(out.Omega2) - pair.omega2);
  if (out.defect1 > tol * f01(pair.omega1) + 1e-14 ||
      out.defect2 > tol * f01(pair.omega2) + 1e-14)
    throw InternalError("potential jumps inconsistent with vorticity: defects " +
                        std::to_string(out.defect1) + ", " + std::to_string(out.defect2));
  return out;
}

BoundReport vorticity_bound_check(const VorticityPair& pair, const InterfaceField& f,
                                  const FluidConfig& cfg, double nu, double t) {
  auto nf = [&](const SpectralField& s, double sw) { return fourier_norm(s, {sw, nu, t}); };
  const double a0 = nf(f.f, 0.0), a1 = nf(f.f, 1.0), a2 = nf(f.f, 2.0);
  ConstantLedger L = ledger(a0, a1, cfg);
  if (L.any_divergent()) throw RegimeError(*L.divergent_names.begin(), 0.0);
  BoundReport rep;
  auto add = [&](std::string name, double lhs, double rhs) {
    rep.checks.push_back({std::move(name), lhs, rhs, lhs <= rhs * (1.0 + 1e-12) + 1e-300});
  };
  const double ar = cfg.a_rho, ak = std::abs(cfg.a_kappa);
  add("omega1_F01", nf(pair.omega1, 0.0), 2.0 * ar * L.c1 * a1);
  add("omega2_F01", nf(pair.omega2, 0.0), 2.0 * ar * ak * L.c0 * L.c1 * a1);
  add("omega1_F11", nf(pair.omega1, 1.0), 2.0 * ar * L.c1 * L.c3 * a2);
  add("omega2_F11", nf(pair.omega2, 1.0), 2.0 * ar * ak * L.c1 * L.c4 * a2);
  return rep;
}

}  // namespace muskat
