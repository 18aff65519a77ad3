// SPDX-License-Identifier: MIT
#include "muskat/driver.hpp"

#include <fftw3.h>
#include <omp.h>

#include <Eigen/Core>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "muskat/certify.hpp"
#include "muskat/errors.hpp"
#include "muskat/io.hpp"
#include "muskat/oracle.hpp"

namespace muskat {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

int code(ExitCode c) { return static_cast<int>(c); }

// run fn, mapping exceptions to exit codes
template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return code(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return code(ExitCode::internal);
  }
}

const std::string& single_config(const CliOptions& opt) {
  if (opt.configs.size() != 1) throw ConfigError("exactly one --config is required");
  return opt.configs.front();
}

json versions() {
  return {{"muskat", std::string(kLibraryVersion)},
          {"fftw", std::string(fftw_version)},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                        "." + std::to_string(EIGEN_MINOR_VERSION)},
          {"config_schema", kConfigSchemaVersion},
          {"checkpoint_format", kCheckpointVersion}};
}

json certificate_summary(const std::optional<Certificate>& c, const std::string& failure) {
  if (!c) return {{"available", false}, {"reason", failure}};
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return {{"available", true},
          {"verdict", verdict_name(c->verdict)},
          {"reason", c->reason},
          {"a0", c->a0},
          {"a1", c->a1},
          {"theta", c->theta},
          {"margins", {num(c->margin0), num(c->margin1), num(c->margin2)}},
          {"nu", c->nu},
          {"k0", c->thr.k0},
          {"k1", c->thr.k1}};
}

void print_margin_table(std::ostream& err, const Certificate& c) {
  auto line = [&](const char* name, double v) {
    err << "  " << std::left << std::setw(10) << name << std::right << std::setw(24)
        << decimal17(v) << "\n";
  };
  err << "certificate: " << verdict_name(c.verdict) << " (" << c.reason << ")\n";
  line("a0", c.a0);
  line("k0", c.thr.k0);
  line("a1", c.a1);
  line("k1", c.thr.k1);
  line("theta", c.theta);
  line("margin0", c.margin0);
  line("margin1", c.margin1);
  line("margin2", c.margin2);
  line("nu", c.nu);
}

std::vector<double> samples_of(const SpectralField& f) { return inverse(f); }

}  // namespace

fs::path resolve_output_dir(const CliOptions& opt, const RunConfig& cfg) {
  if (opt.output_dir) return *opt.output_dir;
  if (!cfg.output_dir.empty()) {
    fs::path p(cfg.output_dir);
    return p.is_relative() ? cfg.base_dir / p : p;
  }
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return "muskat_out";
}

RunConfig load_with_overrides(const std::string& path, const CliOptions& opt) {
  RunConfig cfg = load_config(path);
  for (const auto& o : opt.tolerance_overrides) apply_tolerance_override(cfg, o);
  return cfg;
}

// ---------------------------------------------------------------- run

int cmd_run(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const RunConfig cfg = load_with_overrides(single_config(opt), opt);
    const std::string hash = config_hash(cfg);
    const InterfaceField f0 = make_initial(cfg);
    check_geometry(f0, cfg.fluid, cfg.tolerances.leakage_threshold);

    std::optional<Certificate> cert;
    std::string cert_failure;
    try {
      cert = certify_datum(f0, cfg.fluid);
    } catch (const Error& e) {
      cert_failure = e.what();
    }
    const bool admissible = cert && cert->verdict == Verdict::admissible;
    if (opt.require_certificate && !admissible) {
      err << "refusing to run: datum is not certified ("
          << (cert ? cert->reason : cert_failure) << ")\n";
      return code(ExitCode::inadmissible);
    }

    const fs::path dir = resolve_output_dir(opt, cfg);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());

    RunOptions ro;
    ro.step = cfg.step_options();
    ro.nu = admissible ? cert->nu : 0.0;
    if (admissible)
      ro.budget = BudgetSpec{cert->margin0 - ro.nu, cert->margin1 - ro.nu, cfg.tolerances.budget_slack};
    ro.leakage_threshold = cfg.tolerances.leakage_threshold;
    ro.config_hash = hash;
    if (opt.resume) ro.resume = checkpoint_from_json(json::parse(read_file(*opt.resume)), hash);
    ro.on_checkpoint = [&](const RunState& st) {
      const std::string body = checkpoint_json(st, hash).dump(1) + "\n";
      char name[64];
      std::snprintf(name, sizeof name, "step_%08ld.json", st.step);
      write_file_atomic(dir / "checkpoints" / name, body);
      write_file_atomic(dir / "checkpoint.json", body);
    };

    auto write_outputs = [&](const TrajectoryRecord& rec, int status, const std::string& message) {
      write_file_atomic(dir / "trajectory.csv", trajectory_csv(rec.rows));
      json meta;
      meta["config_hash"] = hash;
      meta["nu"] = ro.nu;
      meta["certificate"] = certificate_summary(cert, cert_failure);
      meta["versions"] = versions();
      meta["status"] = {{"exit_code", status}, {"message", message}};
      meta["steps"] = rec.final_state.step;
      meta["t_final"] = static_cast<double>(rec.final_state.step) * cfg.schedule.dt;
      meta["rows"] = rec.rows.size();
      meta["budget"] = {{"enabled", ro.budget.has_value()},
                        {"violated", rec.budget_violated},
                        {"message", rec.budget_message}};
      // strongest checkable form of the L2_nu bound: growth factor taken as 1
      meta["l2_monitor"] = {{"max_log_ratio", rec.max_l2_log_ratio},
                            {"bound_log_ratio", 0.0},
                            {"exceeded", rec.max_l2_log_ratio > 1e-12}};
      write_file_atomic(dir / "metadata.json", meta.dump(2) + "\n");
    };

    const auto t0 = std::chrono::steady_clock::now();
    auto write_timing = [&]() {
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const auto now = std::chrono::system_clock::now().time_since_epoch();
      json timing = {{"wall_seconds", secs},
                     {"finished_unix", std::chrono::duration_cast<std::chrono::seconds>(now).count()},
                     {"resumed_from", opt.resume ? json(*opt.resume) : json(nullptr)},
                     {"omp_max_threads", omp_get_max_threads()}};
      write_file_atomic(dir / "timing.json", timing.dump(2) + "\n");
    };

    TrajectoryRecord rec;
    try {
      rec = run(f0, cfg.fluid, cfg.schedule, ro);
    } catch (const RunFailure& e) {
      write_outputs(e.partial, code(e.code()), e.what());
      write_timing();
      err << "run aborted: " << e.what() << "\n";
      return code(e.code());
    }
    int status = rec.budget_violated ? code(ExitCode::budget) : 0;
    write_outputs(rec, status, rec.budget_violated ? rec.budget_message : "ok");
    write_timing();
    out << "wrote " << rec.rows.size() << " rows to " << (dir / "trajectory.csv").string() << "\n";
    if (rec.budget_violated) err << rec.budget_message << "\n";
    return status;
  });
}

// ---------------------------------------------------------------- certify

int cmd_certify(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const RunConfig cfg = load_with_overrides(single_config(opt), opt);
    const InterfaceField f0 = make_initial(cfg);
    check_geometry(f0, cfg.fluid);
    const Certificate c = certify_datum(f0, cfg.fluid);
    out << certificate_json(c).dump(2) << "\n";
    print_margin_table(err, c);
    if (opt.require_certificate && c.verdict != Verdict::admissible) return code(ExitCode::inadmissible);
    return 0;
  });
}

// ---------------------------------------------------------------- linear

std::vector<LinearRow> linear_table(const RunConfig& cfg) {
  const GridSpec& g = cfg.grid;
  const LinearSpec& ls = cfg.linear;
  Schedule sched;
  sched.t_end = ls.t_end;
  sched.dt = ls.dt;
  const long steps = sched.total_steps();
  std::vector<LinearRow> rows;
  for (int k = 1; k <= ls.k_max; ++k) {
    LinearRow r;
    r.k = k;
    r.xi = g.xi(k);
    r.m_exact = linear_symbol(r.xi, cfg.fluid);
    if (ls.measure) {
      SpectralField f(g);
      f.at(k) = 0.5 * ls.amplitude;
      f.at(-k) = 0.5 * ls.amplitude;
      InterfaceField cur(f, 0.0);
      const StepOptions so = cfg.step_options();
      for (long s = 0; s < steps; ++s) cur = step(cur, ls.dt, cfg.fluid, so);
      const double T = static_cast<double>(steps) * ls.dt;
      r.m_measured = -std::log(std::abs(cur.f.at(k)) / std::abs(f.at(k))) / T;
      r.rel_err = std::abs(r.m_measured - r.m_exact) / std::abs(r.m_exact);
    }
    rows.push_back(r);
  }
  return rows;
}

std::string linear_csv(const std::vector<LinearRow>& rows) {
  std::string s = "k,xi,m_exact,m_measured,rel_err\n";
  for (const auto& r : rows)
    s += std::to_string(r.k) + "," + decimal17(r.xi) + "," + decimal17(r.m_exact) + "," +
         decimal17(r.m_measured) + "," + decimal17(r.rel_err) + "\n";
  return s;
}

int cmd_linear(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const RunConfig cfg = load_with_overrides(single_config(opt), opt);
    out << linear_csv(linear_table(cfg));
    return 0;
  });
}

// ---------------------------------------------------------------- oracle-check

bool OracleReport::pass() const {
  for (const auto& e : entries)
    if (!e.skipped && !(e.value <= bound)) return false;
  return true;
}

OracleReport oracle_check(const RunConfig& cfg, bool corrupt_fast_path) {
  const GridSpec& g = cfg.grid;
  const FluidConfig& fl = cfg.fluid;
  const InterfaceField f = make_initial(cfg);
  check_geometry(f, fl);
  const auto fs_ = f.samples();
  OracleReport rep;
  rep.bound = cfg.tolerances.oracle_bound;
  auto add = [&](std::string name, double v) { rep.entries.push_back({std::move(name), v, false, ""}); };

  RhsOptions ro;
  ro.vort = cfg.vorticity_options();
  ro.vort.method = Omega2Method::quadrature;
  const RhsBreakdown fast = rhs(f, fl, ro);
  auto fast_rhs = samples_of(fast.total());
  if (corrupt_fast_path) {
    double mx = 0.0;
    for (double v : fast_rhs) mx = std::max(mx, std::abs(v));
    fast_rhs[0] += 1e-3 * (1.0 + mx);
  }
  add("rhs", oracle::rel_discrepancy(fast_rhs, oracle::rhs(g, fs_, fl)));

  const auto w1 = samples_of(fast.vort.omega1), w2 = samples_of(fast.vort.omega2);
  const oracle::Vorticity ov = oracle::solve_vorticity(g, fs_, fl);
  add("omega1", oracle::rel_discrepancy(w1, ov.w1));
  const auto o2 = oracle::omega2(g, fs_, w1, fl);
  add("omega2_quadrature", oracle::rel_discrepancy(w2, o2));
  try {
    const auto s2 = samples_of(omega2_series(f, fast.vort.omega1, fl, 0, 1e-13));
    add("omega2_series", oracle::rel_discrepancy(s2, o2));
  } catch (const MethodUnavailable& e) {
    rep.entries.push_back({"omega2_series", 0.0, true, e.what()});
  }

  const PotentialPair pot = potentials(fast.vort, f, fl);
  add("Omega2", oracle::rel_discrepancy(samples_of(pot.Omega2),
                                        oracle::Omega2(g, fs_, samples_of(pot.Omega1), fl)));

  const auto fp = samples_of(derivative(f.f));
  const auto vc = oracle::quad_BR_trace(g, fs_, w1, w2, fl, oracle::Target::fluid_curve);
  if (fl.a_mu != 0.0) {
    std::vector<double> pred(w1.size());
    for (size_t i = 0; i < pred.size(); ++i)
      pred[i] = 2.0 * fl.a_mu * (vc.u1[i] + fp[i] * vc.u2[i]) - 2.0 * fl.a_rho * fp[i];
    add("br_tangential", oracle::rel_discrepancy(pred, w1));
  } else {
    rep.entries.push_back({"br_tangential", 0.0, true, "A_mu = 0"});
  }
  const auto vs = oracle::quad_BR_trace(g, fs_, w1, w2, fl, oracle::Target::soil_curve);
  std::vector<double> pred2(w2.size());
  for (size_t i = 0; i < pred2.size(); ++i) pred2[i] = -2.0 * fl.a_kappa * vs.u1[i];
  add("br_soil", oracle::rel_discrepancy(pred2, w2));
  return rep;
}

int cmd_oracle_check(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const RunConfig cfg = load_with_overrides(single_config(opt), opt);
    const OracleReport rep = oracle_check(cfg, opt.corrupt_fast_path);
    for (const auto& e : rep.entries) {
      out << std::left << std::setw(20) << e.name;
      if (e.skipped)
        out << "skipped (" << e.note << ")\n";
      else
        out << decimal17(e.value) << (e.value <= rep.bound ? "  ok" : "  EXCEEDS") << "\n";
    }
    out << "bound " << decimal17(rep.bound) << "\n";
    return rep.pass() ? 0 : code(ExitCode::oracle);
  });
}

// ---------------------------------------------------------------- sweep

int cmd_sweep(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.configs.empty()) {
    err << "error: sweep needs at least one --config\n";
    return code(ExitCode::usage);
  }
  const int workers = std::max(1, std::min<int>(opt.threads, static_cast<int>(opt.configs.size())));
  const int inner = std::max(1, omp_get_max_threads() / workers);
  std::vector<int> codes(opt.configs.size(), 0);
  std::vector<std::string> logs(opt.configs.size());
  std::atomic<size_t> next{0};

  // flag, else $MUSKAT_OUTPUT_DIR, else ./muskat_out; one subdirectory per config
  fs::path base = "muskat_out";
  if (opt.output_dir) base = *opt.output_dir;
  else if (const char* env = std::getenv(kOutputDirEnv); env && *env) base = env;

  auto worker = [&]() {
    omp_set_num_threads(inner);
    for (size_t i = next++; i < opt.configs.size(); i = next++) {
      CliOptions one = opt;
      one.configs = {opt.configs[i]};
      one.resume.reset();
      one.output_dir = (base / (std::to_string(i) + "_" + fs::path(opt.configs[i]).stem().string())).string();
      std::ostringstream o, e;
      codes[i] = cmd_run(one, o, e);
      logs[i] = o.str() + e.str();
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int worst = 0;
  for (size_t i = 0; i < codes.size(); ++i) {
    out << opt.configs[i] << ": exit " << codes[i] << "\n" << logs[i];
    if (codes[i] != 0 && worst == 0) worst = codes[i];
  }
  return worst;
}

}  // namespace muskat
