// SPDX-License-Identifier: MIT
#include "muskat/kernels.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

namespace muskat {

namespace {
std::atomic<Exec> g_exec{Exec::parallel};

inline size_t src(int i, int m, int n) { return static_cast<size_t>((i - m + n) % n); }

template <class Row>
void for_rows(int n, Exec e, Row&& row) {
  if (e == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) row(i);
  } else {
    for (int i = 0; i < n; ++i) row(i);
  }
}
}  // namespace

Exec default_exec() { return g_exec.load(); }
void set_default_exec(Exec e) { g_exec.store(e); }

OffsetTable::OffsetTable(const GridSpec& g)
    : n(g.n_points), L(g.domain_length), h(g.spacing()) {
  x.resize(static_cast<size_t>(n));
  su.resize(x.size());
  cu.resize(x.size());
  for (int m = 0; m < n; ++m) {
    int w = m < n / 2 ? m : m - n;
    x[static_cast<size_t>(m)] = w * h;
    double u = std::numbers::pi * w / n;
    su[static_cast<size_t>(m)] = std::sin(u);
    cu[static_cast<size_t>(m)] = std::cos(u);
  }
}

SelfKernels build_self(const std::vector<double>& f, const OffsetTable& t, Exec e) {
  const int n = t.n, half = n / 2;
  const double scale = std::numbers::pi / t.L;
  SelfKernels K;
  K.n = n;
  const size_t sz = static_cast<size_t>(n) * static_cast<size_t>(half);
  K.q.resize(sz), K.p.resize(sz), K.c1mq.resize(sz);
  for_rows(n, e, [&](int i) {
    const double fi = f[static_cast<size_t>(i)];
    for (int m = 1; m < n; m += 2) {
      const size_t idx = static_cast<size_t>(i) * half + static_cast<size_t>((m - 1) / 2);
      const double d = fi - f[src(i, m, n)];
      const double sv = std::sinh(scale * d);
      const double cv = std::sqrt(1.0 + sv * sv);
      const double su = t.su[static_cast<size_t>(m)], cu = t.cu[static_cast<size_t>(m)];
      double q, p;
      periodic_cauchy(scale, su, cu, sv, cv, q, p);
      K.q[idx] = q;
      K.p[idx] = p;
      // cot u - su cu / D = cu sv^2 / (su D): no cancellation for small d
      K.c1mq[idx] = scale * cu * sv * sv / (su * (sv * sv + su * su));
    }
  });
  return K;
}

CrossKernels build_curve_from_soil(const std::vector<double>& f, double h2, const OffsetTable& t,
                                   Exec e) {
  const int n = t.n;
  const double scale = std::numbers::pi / t.L;
  CrossKernels K;
  K.n = n;
  K.q.resize(static_cast<size_t>(n) * n);
  K.p.resize(K.q.size());
  for_rows(n, e, [&](int i) {
    const double sv = std::sinh(scale * (f[static_cast<size_t>(i)] + h2));
    const double cv = std::cosh(scale * (f[static_cast<size_t>(i)] + h2));
    for (int m = 0; m < n; ++m) {
      const size_t idx = static_cast<size_t>(i) * n + static_cast<size_t>(m);
      periodic_cauchy(scale, t.su[static_cast<size_t>(m)], t.cu[static_cast<size_t>(m)], sv, cv,
                      K.q[idx], K.p[idx]);
    }
  });
  return K;
}

CrossKernels build_soil_from_curve(const std::vector<double>& f, double h2, const OffsetTable& t,
                                   Exec e) {
  const int n = t.n;
  const double scale = std::numbers::pi / t.L;
  std::vector<double> sv(static_cast<size_t>(n)), cv(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    sv[static_cast<size_t>(j)] = std::sinh(scale * (f[static_cast<size_t>(j)] + h2));
    cv[static_cast<size_t>(j)] = std::cosh(scale * (f[static_cast<size_t>(j)] + h2));
  }
  CrossKernels K;
  K.n = n;
  K.q.resize(static_cast<size_t>(n) * n);
  K.p.resize(K.q.size());
  for_rows(n, e, [&](int i) {
    for (int m = 0; m < n; ++m) {
      const size_t idx = static_cast<size_t>(i) * n + static_cast<size_t>(m);
      const size_t j = src(i, m, n);
      periodic_cauchy(scale, t.su[static_cast<size_t>(m)], t.cu[static_cast<size_t>(m)], sv[j],
                      cv[j], K.q[idx], K.p[idx]);
    }
  });
  return K;
}

std::vector<double> flat_q(double h2, const OffsetTable& t) {
  const double scale = std::numbers::pi / t.L;
  const double sv = std::sinh(scale * h2), cv = std::cosh(scale * h2);
  std::vector<double> q(static_cast<size_t>(t.n));
  for (int m = 0; m < t.n; ++m) {
    double p;
    periodic_cauchy(scale, t.su[static_cast<size_t>(m)], t.cu[static_cast<size_t>(m)], sv, cv,
                    q[static_cast<size_t>(m)], p);
  }
  return q;
}

std::vector<double> apply_self(const std::vector<double>& K, const std::vector<double>& g, int n,
                               double h, Exec e) {
  const int half = n / 2;
  std::vector<double> y(static_cast<size_t>(n));
  for_rows(n, e, [&](int i) {
    const double* row = K.data() + static_cast<size_t>(i) * half;
    double acc = 0.0;
    for (int m = 1, mm = 0; m < n; m += 2, ++mm) acc += row[mm] * g[src(i, m, n)];
    y[static_cast<size_t>(i)] = 2.0 * h * acc;
  });
  return y;
}

std::vector<double> apply_cross(const std::vector<double>& K, const std::vector<double>& g, int n,
                                double h, Exec e) {
  std::vector<double> y(static_cast<size_t>(n));
  for_rows(n, e, [&](int i) {
    const double* row = K.data() + static_cast<size_t>(i) * n;
    double acc = 0.0;
    for (int m = 0; m < n; ++m) acc += row[m] * g[src(i, m, n)];
    y[static_cast<size_t>(i)] = h * acc;
  });
  return y;
}

std::vector<double> apply_stationary(const std::vector<double>& k, const std::vector<double>& g,
                                     double h) {
  const int n = static_cast<int>(k.size());
  std::vector<double> y(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int m = 0; m < n; ++m) acc += k[static_cast<size_t>(m)] * g[src(i, m, n)];
    y[static_cast<size_t>(i)] = h * acc;
  }
  return y;
}

}  // namespace muskat
