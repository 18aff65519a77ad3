// SPDX-License-Identifier: MIT
#include "muskat/evolution.hpp"

#include <cmath>
#include <numbers>

namespace muskat {

namespace {
constexpr double kPi = std::numbers::pi;

bool all_zero(const SpectralField& f) {
  for (auto& c : f.c)
    if (c != cplx(0.0, 0.0)) return false;
  return true;
}

bool all_finite(const SpectralField& f) {
  for (auto& c : f.c)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

std::vector<double> times(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> r(a.size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = a[i] * b[i];
  return r;
}

// sum_{j>=0} z^j / (j + k)!
double phi_series(double z, int k) {
  double term = 1.0;
  for (int j = 1; j <= k; ++j) term /= j;
  double acc = term;
  for (int j = 1; j < 30; ++j) {
    term *= z / (j + k);
    acc += term;
    if (std::abs(term) < 1e-18 * std::abs(acc)) break;
  }
  return acc;
}
}  // namespace

double linear_symbol(double xi, const FluidConfig& cfg) {
  const double ax = std::abs(xi);
  if (ax == 0.0) return 0.0;
  const double frac = cfg.a_kappa * (1.0 - cfg.a_mu) / (std::exp(2.0 * cfg.h2 * ax) - cfg.a_kappa * cfg.a_mu);
  return cfg.a_rho * ax * (1.0 - frac);
}

double phi1(double z) {
  if (std::abs(z) < 1e-4) return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
  return std::expm1(z) / z;
}

double phi2(double z) {
  if (std::abs(z) < 0.5) return phi_series(z, 2);
  return (std::expm1(z) - z) / (z * z);
}

double phi3(double z) {
  if (std::abs(z) < 0.5) return phi_series(z, 3);
  return (std::expm1(z) - z - 0.5 * z * z) / (z * z * z);
}

RhsBreakdown rhs(const InterfaceField& f, const FluidConfig& cfg, const RhsOptions& opt) {
  const GridSpec& g = f.grid();
  const int n = g.n_points;
  const double h = g.spacing();
  RhsBreakdown out;
  out.linear_part = SpectralField(g, f.time);
  for (int s = 0; s < n; ++s) out.linear_part.c[static_cast<size_t>(s)] = -linear_symbol(g.xi(s), cfg) * f.f.c[static_cast<size_t>(s)];
  zero_nyquist(out.linear_part);

  InterfaceOperators ops(f, cfg, opt.vort.exec);
  out.vort = solve_vorticity(ops, f, cfg, opt.vort);
  const auto w1 = inverse(out.vort.omega1);
  const auto w2 = inverse(out.vort.omega2);
  const auto& fp = ops.fp();
  const Exec e = ops.exec();

  // I1 = pi H(omega1) - sum (cot - Q) omega1
  auto r0 = forward(apply_self(ops.self().c1mq, w1, n, h, e), g);
  out.i1 = kPi * hilbert(out.vort.omega1) - r0;
  out.i2 = forward(times(fp, apply_self(ops.self().p, w1, n, h, e)), g);

  // I3 = (flat conj-Poisson multiplier on omega2) + quadrature of the kernel difference
  const auto& cs = ops.curve_from_soil();
  const auto& fq = ops.flat_q();
  std::vector<double> dq(cs.q.size());
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < n; ++m) {
      size_t idx = static_cast<size_t>(i) * n + static_cast<size_t>(m);
      dq[idx] = cs.q[idx] - fq[static_cast<size_t>(m)];
    }
  auto r3 = forward(apply_cross(dq, w2, n, h, e), g);
  const double h2 = cfg.h2;
  auto flat = apply_multiplier(out.vort.omega2, [h2](double xi) { return conj_poisson_hat(h2, xi); });
  out.i3 = flat + r3;
  out.i4 = forward(times(fp, apply_cross(cs.p, w2, n, h, e)), g);

  SpectralField total = out.i1 + out.i2;
  total += out.i3;
  total += out.i4;
  total *= 1.0 / (2.0 * kPi);
  zero_nyquist(total);
  out.nonlinear_part = total - out.linear_part;
  for (auto* s : {&out.i1, &out.i2, &out.i3, &out.i4, &out.nonlinear_part}) s->time_tag = f.time;

  if (opt.diagnostics) {
    NTerms nt;
    nt.n0 = (-1.0 / (2.0 * kPi)) * r0;
    nt.n4 = (1.0 / (2.0 * kPi)) * r3;
    nt.n_omega2 = out.vort.omega2;
    for (int s = 0; s < n; ++s)
      nt.n_omega2.c[static_cast<size_t>(s)] +=
          cfg.a_kappa * std::exp(-h2 * std::abs(g.xi(s))) * out.vort.omega1.c[static_cast<size_t>(s)];
    out.n_terms = std::move(nt);
  }
  return out;
}

SpectralField nonlinear_remainder(const InterfaceField& f, const FluidConfig& cfg,
                                  const StepOptions& opt) {
  if (opt.linear_only || all_zero(f.f)) return SpectralField(f.grid(), f.time);
  SpectralField nl = rhs(f, cfg, opt.rhs).nonlinear_part;
  dealias(nl);
  zero_nyquist(nl);
  return nl;
}

InterfaceField step(const InterfaceField& state, double dt, const FluidConfig& cfg,
                    const StepOptions& opt) {
  if (!(dt > 0.0)) throw DomainError("step: dt must be positive");
  const GridSpec& g = state.grid();
  const int n = g.n_points;
  std::vector<double> z(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s) z[static_cast<size_t>(s)] = -linear_symbol(g.xi(s), cfg) * dt;

  const SpectralField& u = state.f;
  SpectralField nu = nonlinear_remainder(state, cfg, opt);
  const double fn = fourier_norm(u, {0.0, 0.0, 0.0});
  if (fn > 0.0) {
    double ratio = dt * fourier_norm(nu, {0.0, 0.0, 0.0}) / fn;
    if (ratio > opt.cfl_bound)
      throw StepError("step-size guard: dt ||N|| / ||f|| = " + std::to_string(ratio) +
                      " exceeds " + std::to_string(opt.cfl_bound));
  }
  const double t1 = state.time + dt;
  SpectralField next(g, t1);

  // generic linear combination over modes
  auto combine = [&](auto&& fn_mode) {
    SpectralField r(g, t1);
    for (int s = 0; s < n; ++s) r.c[static_cast<size_t>(s)] = fn_mode(static_cast<size_t>(s));
    return r;
  };

  if (opt.scheme == Integrator::etdrk2) {
    SpectralField a = combine([&](size_t s) {
      return std::exp(z[s]) * u.c[s] + dt * phi1(z[s]) * nu.c[s];
    });
    SpectralField na = nonlinear_remainder(InterfaceField(a, t1), cfg, opt);
    next = combine([&](size_t s) { return a.c[s] + dt * phi2(z[s]) * (na.c[s] - nu.c[s]); });
  } else {
    const double hdt = 0.5 * dt;
    const double tm = state.time + hdt;
    auto half = [&](const SpectralField& base, const SpectralField& forcing) {
      SpectralField r(g, tm);
      for (size_t s = 0; s < static_cast<size_t>(n); ++s)
        r.c[s] = std::exp(0.5 * z[s]) * base.c[s] + hdt * phi1(0.5 * z[s]) * forcing.c[s];
      return r;
    };
    SpectralField a = half(u, nu);
    SpectralField na = nonlinear_remainder(InterfaceField(a, tm), cfg, opt);
    SpectralField b = half(u, na);
    SpectralField nb = nonlinear_remainder(InterfaceField(b, tm), cfg, opt);
    SpectralField c = half(a, 2.0 * nb - nu);
    SpectralField nc = nonlinear_remainder(InterfaceField(c, t1), cfg, opt);
    next = combine([&](size_t s) {
      const double p1 = phi1(z[s]), p2 = phi2(z[s]), p3 = phi3(z[s]);
      const double f1 = p1 - 3.0 * p2 + 4.0 * p3, f2 = p2 - 2.0 * p3, f3 = -p2 + 4.0 * p3;
      return std::exp(z[s]) * u.c[s] +
             dt * (f1 * nu.c[s] + 2.0 * f2 * (na.c[s] + nb.c[s]) + f3 * nc.c[s]);
    });
  }
  dealias(next);
  enforce_reality(next);
  zero_nyquist(next);
  if (!all_finite(next))
    throw BlowupError("non-finite state at t = " + std::to_string(t1), state);
  return InterfaceField(next, t1);
}

long Schedule::total_steps() const {
  if (!(dt > 0.0) || !(t_end >= 0.0)) throw ConfigError("schedule: need dt > 0 and t_end >= 0");
  const double r = t_end / dt;
  const long k = std::lround(r);
  if (std::abs(r - static_cast<double>(k)) > 1e-9 * std::max(1.0, r))
    throw ConfigError("schedule: t_end must be an integer multiple of dt");
  return k;
}

TrajectoryRecord run(const InterfaceField& f0, const FluidConfig& cfg, const Schedule& sched,
                     const RunOptions& opt) {
  const long total = sched.total_steps();
  if (sched.snapshot_every < 1) throw ConfigError("schedule: snapshot_every must be >= 1");
  const double nu = opt.nu;
  const GridSpec& g = f0.grid();

  TrajectoryRecord rec;
  rec.config_hash = opt.config_hash;
  rec.nu = nu;

  auto weighted = [nu](const SpectralField& f, double s, double t) {
    return fourier_norm(f, {s, nu, t});
  };

  RunState st;
  if (opt.resume) {
    st = *opt.resume;
    if (!(st.f.grid == g)) throw ConfigError("resume: checkpoint grid does not match config");
  } else {
    st.step = 0;
    st.f = f0.f;
    st.f01_initial = fourier_norm(f0.f, {0.0, 0.0, 0.0});
    st.f11_initial = fourier_norm(f0.f, {1.0, 0.0, 0.0});
    st.l2_initial = weighted_l2(f0.f, {0.0, 0.0, 0.0});
    st.integrand0 = weighted(f0.f, 1.0, 0.0);
    st.integrand1 = weighted(f0.f, 2.0, 0.0);
  }

  auto make_row = [&](const SpectralField& f, double t) {
    TrajectoryRow row;
    row.t = t;
    row.norms = norm_report(f, nu, t);
    row.f11_plain = fourier_norm(f, {1.0, 0.0, 0.0});
    InterfaceField cur(f, t);
    row.leakage = leakage(cur);
    if (st.l2_initial > 0.0) row.l2_log_ratio = std::log(row.norms.l2nu / st.l2_initial);
    if (opt.budget) {
      row.budget_s0_lhs = row.norms.f01 + opt.budget->coef0 * st.integral0;
      row.budget_s0_rhs = st.f01_initial;
      row.budget_s1_lhs = row.norms.f11 + opt.budget->coef1 * st.integral1;
      row.budget_s1_rhs = st.f11_initial;
    }
    return row;
  };

  auto record_row = [&](const TrajectoryRow& row, const SpectralField& f) {
    st.rows.push_back(row);
    if (opt.keep_snapshots) rec.snapshots.push_back(f);
    if (opt.on_row) opt.on_row(row);
    if (row.leakage > opt.leakage_threshold)
      throw GeometryError("boundary leakage " + std::to_string(row.leakage) + " above threshold " +
                          std::to_string(opt.leakage_threshold) + " at t = " + std::to_string(row.t));
  };

  auto finish = [&]() {
    rec.rows = st.rows;
    for (auto& r : rec.rows) {
      rec.max_l2_log_ratio = std::max(rec.max_l2_log_ratio, r.l2_log_ratio);
      if (opt.budget && !rec.budget_violated) {
        const double sl = opt.budget->slack;
        if (r.budget_s0_lhs > r.budget_s0_rhs * (1.0 + sl) ||
            r.budget_s1_lhs > r.budget_s1_rhs * (1.0 + sl)) {
          rec.budget_violated = true;
          rec.budget_message = "budget inequality violated at t = " + std::to_string(r.t);
        }
      }
    }
    rec.final_state = st;
  };

  try {
    if (!opt.resume) record_row(make_row(st.f, 0.0), st.f);
    InterfaceField cur(st.f, static_cast<double>(st.step) * sched.dt);
    while (st.step < total) {
      cur = step(cur, sched.dt, cfg, opt.step);
      st.step += 1;
      const double t = static_cast<double>(st.step) * sched.dt;
      cur.time = t;
      cur.f.time_tag = t;
      st.f = cur.f;
      const double i0 = weighted(cur.f, 1.0, t), i1 = weighted(cur.f, 2.0, t);
      st.integral0 += 0.5 * sched.dt * (st.integrand0 + i0);
      st.integral1 += 0.5 * sched.dt * (st.integrand1 + i1);
      st.integrand0 = i0;
      st.integrand1 = i1;
      if (st.step % sched.snapshot_every == 0 || st.step == total) {
        record_row(make_row(cur.f, t), cur.f);
        if (opt.on_checkpoint && sched.checkpoint_every > 0 &&
            st.rows.size() % static_cast<size_t>(sched.checkpoint_every) == 0)
          opt.on_checkpoint(st);
      }
    }
  } catch (const Error& e) {
    finish();
    throw RunFailure(e.code(), e.what(), std::move(rec));
  }
  finish();
  return rec;
}

}  // namespace muskat
