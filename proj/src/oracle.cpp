// SPDX-License-Identifier: MIT
#include "muskat/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>

#include "muskat/errors.hpp"

namespace muskat::oracle {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

struct Setup {
  int n;
  double L, h;
  Samples fp, fpp;
  std::vector<double> x;  // wrapped offsets
};

Setup setup(const GridSpec& g, const Samples& f, const FluidConfig* cfg) {
  if (static_cast<int>(f.size()) != g.n_points) throw ConfigError("oracle: sample length mismatch");
  if (cfg) {
    for (double v : f)
      if (!(v + cfg->h2 > 0.0)) throw GeometryError("oracle: interface touches the soil line");
  }
  Setup s;
  s.n = g.n_points;
  s.L = g.domain_length;
  s.h = g.spacing();
  auto fh = forward(f, g);
  s.fp = inverse(derivative(fh));
  s.fpp = inverse(derivative(derivative(fh)));
  s.x.resize(static_cast<size_t>(s.n));
  for (int m = 0; m < s.n; ++m) s.x[static_cast<size_t>(m)] = (m < s.n / 2 ? m : m - s.n) * s.h;
  return s;
}

// (pi/L) cot(pi (x + i a) / L): periodic sum of 1/(x + i a)
cplx cauchy(double x, double a, double L) {
  return cplx(kPi / L, 0.0) / std::tan(cplx(kPi * x / L, kPi * a / L));
}
double cot_kernel(double x, double L) { return (kPi / L) / std::tan(kPi * x / L); }

inline size_t src(int i, int m, int n) { return static_cast<size_t>(((i - m) % n + n) % n); }

Samples hilbert_samples(const GridSpec& g, const Samples& w) {
  return inverse(hilbert(forward(w, g)));
}
}  // namespace

Samples quad_I(const GridSpec& g, const Samples& f, const Samples& omega, const FluidConfig& cfg,
               int which) {
  if (which < 1 || which > 4) throw DomainError("quad_I: which must be 1..4");
  const Setup s = setup(g, f, &cfg);
  if (omega.size() != f.size()) throw ConfigError("oracle: sample length mismatch");
  const int n = s.n;
  Samples out(static_cast<size_t>(n));
  Samples hw;
  if (which <= 2) hw = hilbert_samples(g, omega);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const size_t ii = static_cast<size_t>(i);
    const double fp = s.fp[ii], fpp = s.fpp[ii], q1 = 1.0 + fp * fp;
    double acc = 0.0;
    if (which <= 2) {
      // kernel ~ coef / beta near beta = 0
      const double coef = which == 1 ? 1.0 / q1 : fp / q1;
      const double limit = which == 1 ? fp * fpp / (q1 * q1) : -(1.0 - fp * fp) * fpp / (2.0 * q1 * q1);
      for (int m = 1; m < n; ++m) {
        const size_t j = src(i, m, n);
        const double x = s.x[static_cast<size_t>(m)];
        const cplx K = cauchy(x, f[ii] - f[j], s.L);
        const double k = which == 1 ? K.real() : -K.imag();
        acc += (k - coef * cot_kernel(x, s.L)) * omega[j];
      }
      acc += limit * omega[ii];
      double v = coef * kPi * hw[ii] + s.h * acc;
      out[ii] = which == 1 ? v : fp * v;
    } else {
      const double a = f[ii] + cfg.h2;
      for (int m = 0; m < n; ++m) {
        const size_t j = src(i, m, n);
        const cplx K = cauchy(s.x[static_cast<size_t>(m)], a, s.L);
        acc += (which == 3 ? K.real() : -K.imag()) * omega[j];
      }
      out[ii] = which == 3 ? s.h * acc : fp * s.h * acc;
    }
  }
  return out;
}

Velocity quad_BR_trace(const GridSpec& g, const Samples& f, const Samples& w1, const Samples& w2,
                       const FluidConfig& cfg, Target target) {
  const Setup s = setup(g, f, &cfg);
  const int n = s.n;
  Velocity v;
  v.u1.resize(static_cast<size_t>(n));
  v.u2.resize(static_cast<size_t>(n));
  const cplx pref = 1.0 / (2.0 * kPi * kI);
  const Samples hw = hilbert_samples(g, target == Target::fluid_curve ? w1 : w2);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const size_t ii = static_cast<size_t>(i);
    cplx total(0.0, 0.0);
    if (target == Target::fluid_curve) {
      const cplx t = 1.0 + kI * s.fp[ii];
      cplx acc(0.0, 0.0);
      for (int m = 1; m < n; ++m) {
        const size_t j = src(i, m, n);
        const double x = s.x[static_cast<size_t>(m)];
        acc += (cauchy(x, f[ii] - f[j], s.L) - cot_kernel(x, s.L) / t) * w1[j];
      }
      acc += kI * s.fpp[ii] / (2.0 * t * t) * w1[ii];
      total = kPi * hw[ii] / t + s.h * acc;
      cplx soil(0.0, 0.0);
      for (int m = 0; m < n; ++m)
        soil += cauchy(s.x[static_cast<size_t>(m)], f[ii] + cfg.h2, s.L) * w2[src(i, m, n)];
      total += s.h * soil;
    } else {
      cplx acc(0.0, 0.0);
      for (int m = 0; m < n; ++m) {
        const size_t j = src(i, m, n);
        acc += cauchy(s.x[static_cast<size_t>(m)], -cfg.h2 - f[j], s.L) * w1[j];
      }
      total = s.h * acc + kPi * hw[ii];
    }
    const cplx vel = pref * total;  // u1 - i u2
    v.u1[ii] = vel.real();
    v.u2[ii] = -vel.imag();
  }
  return v;
}

Samples omega2(const GridSpec& g, const Samples& f, const Samples& w1, const FluidConfig& cfg) {
  const Setup s = setup(g, f, &cfg);
  const int n = s.n;
  Samples out(static_cast<size_t>(n));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int m = 0; m < n; ++m) {
      const size_t j = src(i, m, n);
      acc += -cauchy(s.x[static_cast<size_t>(m)], f[j] + cfg.h2, s.L).imag() * w1[j];
    }
    out[static_cast<size_t>(i)] = -cfg.a_kappa / kPi * s.h * acc;
  }
  return out;
}

Samples Omega2(const GridSpec& g, const Samples& f, const Samples& W1, const FluidConfig& cfg) {
  const Setup s = setup(g, f, &cfg);
  const int n = s.n;
  Samples out(static_cast<size_t>(n));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int m = 0; m < n; ++m) {
      const size_t j = src(i, m, n);
      const cplx K = cauchy(s.x[static_cast<size_t>(m)], f[j] + cfg.h2, s.L);
      acc += (-K.imag() + s.fp[j] * K.real()) * W1[j];
    }
    out[static_cast<size_t>(i)] = -cfg.a_kappa / kPi * s.h * acc;
  }
  return out;
}

Vorticity solve_vorticity(const GridSpec& g, const Samples& f, const FluidConfig& cfg) {
  const Setup s = setup(g, f, &cfg);
  const int n = s.n;
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n), X(n, n), M2(n, n);
  for (int i = 0; i < n; ++i) {
    const size_t ii = static_cast<size_t>(i);
    const double fp = s.fp[ii];
    for (int m = 0; m < n; ++m) {
      const size_t j = src(i, m, n);
      const double x = s.x[static_cast<size_t>(m)];
      if (m == 0) {
        // f' Q - P is regular: limit f'' / (2 (1 + f'^2))
        S(i, static_cast<int>(j)) += s.h * s.fpp[ii] / (2.0 * (1.0 + fp * fp));
      } else {
        const cplx K = cauchy(x, f[ii] - f[j], s.L);
        S(i, static_cast<int>(j)) += s.h * (fp * K.real() + K.imag());
      }
      const cplx Kc = cauchy(x, f[ii] + cfg.h2, s.L);
      X(i, static_cast<int>(j)) = s.h * (fp * Kc.real() + Kc.imag());
      const cplx Ks = cauchy(x, f[j] + cfg.h2, s.L);
      M2(i, static_cast<int>(j)) = -cfg.a_kappa / kPi * s.h * (-Ks.imag());
    }
  }
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - cfg.a_mu / kPi * (S + X * M2);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) b(i) = -2.0 * cfg.a_rho * s.fp[static_cast<size_t>(i)];
  Eigen::VectorXd w1 = A.partialPivLu().solve(b);
  Eigen::VectorXd w2 = M2 * w1;
  Vorticity out;
  out.w1.assign(w1.data(), w1.data() + n);
  out.w2.assign(w2.data(), w2.data() + n);
  return out;
}

Samples rhs(const GridSpec& g, const Samples& f, const FluidConfig& cfg) {
  const Vorticity v = solve_vorticity(g, f, cfg);
  Samples out(f.size(), 0.0);
  for (int which = 1; which <= 4; ++which) {
    const Samples I = quad_I(g, f, which <= 2 ? v.w1 : v.w2, cfg, which);
    for (size_t i = 0; i < out.size(); ++i) out[i] += I[i];
  }
  for (auto& x : out) x /= 2.0 * kPi;
  return out;
}

double rel_discrepancy(const Samples& a, const Samples& b) {
  if (a.size() != b.size()) throw ConfigError("rel_discrepancy: length mismatch");
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return den > 0.0 ? num / den : num;
}

}  // namespace muskat::oracle
