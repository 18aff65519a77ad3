// SPDX-License-Identifier: MIT
#include "muskat/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "muskat/errors.hpp"

namespace muskat {

using nlohmann::json;

namespace {

// strict object reader: every key must be consumed or listed as allowed
class Reader {
 public:
  Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + ": expected an object");
  }
  bool has(const std::string& k) const { return j_.contains(k); }

  double num(const std::string& k, std::optional<double> def = std::nullopt) {
    seen_.insert(k);
    if (!j_.contains(k)) {
      if (def) return *def;
      throw ConfigError(where_ + "." + k + ": required");
    }
    const json& v = j_.at(k);
    if (!v.is_number()) throw ConfigError(where_ + "." + k + ": expected a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(where_ + "." + k + ": not finite");
    return d;
  }
  long integer(const std::string& k, std::optional<long> def = std::nullopt) {
    seen_.insert(k);
    if (!j_.contains(k)) {
      if (def) return *def;
      throw ConfigError(where_ + "." + k + ": required");
    }
    const json& v = j_.at(k);
    if (!v.is_number_integer()) throw ConfigError(where_ + "." + k + ": expected an integer");
    return v.get<long>();
  }
  std::string str(const std::string& k, std::optional<std::string> def = std::nullopt) {
    seen_.insert(k);
    if (!j_.contains(k)) {
      if (def) return *def;
      throw ConfigError(where_ + "." + k + ": required");
    }
    const json& v = j_.at(k);
    if (!v.is_string()) throw ConfigError(where_ + "." + k + ": expected a string");
    return v.get<std::string>();
  }
  bool boolean(const std::string& k, bool def) {
    seen_.insert(k);
    if (!j_.contains(k)) return def;
    const json& v = j_.at(k);
    if (!v.is_boolean()) throw ConfigError(where_ + "." + k + ": expected a boolean");
    return v.get<bool>();
  }
  const json* child(const std::string& k) {
    seen_.insert(k);
    return j_.contains(k) ? &j_.at(k) : nullptr;
  }
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError(where_ + ": unknown key '" + it.key() + "'");
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

FluidConfig parse_fluid(const json& j) {
  Reader r(j, "fluid");
  const double h2 = r.num("h2");
  FluidConfig f;
  if (const json* raw = r.child("raw")) {
    Reader rr(*raw, "fluid.raw");
    RawFluidParameters p{rr.num("kappa1"), rr.num("kappa2"), rr.num("mu1"), rr.num("mu2"),
                         rr.num("rho1"),   rr.num("rho2"),   rr.num("g")};
    rr.finish();
    for (const char* k : {"a_rho", "a_kappa", "a_mu"})
      if (r.has(k)) throw ConfigError(std::string("fluid: give either raw or ") + k + ", not both");
    f = FluidConfig::from_raw(p, h2);
  } else {
    f = FluidConfig(r.num("a_rho"), r.num("a_kappa"), r.num("a_mu"), h2);
  }
  r.finish();
  f.validate();
  return f;
}

InitialSpec parse_initial(const json& j) {
  Reader r(j, "initial");
  InitialSpec s;
  s.type = r.str("type");
  if (s.type == "zero") {
  } else if (s.type == "single_mode") {
    s.k = static_cast<int>(r.integer("k"));
    s.amplitude = r.num("amplitude");
  } else if (s.type == "gaussian_bump") {
    s.width = r.num("width");
    s.amplitude = r.num("amplitude");
    if (!(s.width > 0.0)) throw ConfigError("initial.width: must be positive");
  } else if (s.type == "from_file") {
    s.path = r.str("path");
  } else if (s.type == "power_law") {
    s.amplitude = r.num("amplitude");
    s.k_max = static_cast<int>(r.integer("k_max"));
  } else if (s.type == "random_modes") {
    s.amplitude = r.num("amplitude");
    s.k_max = static_cast<int>(r.integer("k_max"));
    s.decay = r.num("decay", 0.0);
  } else {
    throw ConfigError("initial.type: unknown preset '" + s.type + "'");
  }
  if (s.k_max < 1) throw ConfigError("initial.k_max: must be >= 1");
  r.finish();
  return s;
}

Omega2Method parse_method(const std::string& s) {
  if (s == "quadrature") return Omega2Method::quadrature;
  if (s == "series") return Omega2Method::series;
  throw ConfigError("solver.omega2_method: expected quadrature or series");
}

Integrator parse_integrator(const std::string& s) {
  if (s == "etdrk2") return Integrator::etdrk2;
  if (s == "etdrk4") return Integrator::etdrk4;
  throw ConfigError("solver.integrator: expected etdrk2 or etdrk4");
}

void positive(double v, const char* name) {
  if (!(v > 0.0)) throw ConfigError(std::string(name) + ": must be positive");
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// uniform in [0, 1) from the top 53 bits; independent of the standard library's
// distribution implementations
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

StepOptions RunConfig::step_options() const {
  StepOptions o;
  o.scheme = solver.integrator;
  o.cfl_bound = solver.cfl_bound;
  o.rhs.vort = vorticity_options();
  return o;
}

VorticityOptions RunConfig::vorticity_options() const {
  VorticityOptions v;
  v.tol = solver.picard_tol;
  v.max_iter = solver.picard_max_iter;
  v.method = solver.omega2_method;
  v.exec = default_exec();
  return v;
}

RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  RunConfig c;
  c.source = doc;
  c.base_dir = base_dir;
  Reader r(doc, "config");
  const long ver = r.integer("schema_version");
  if (ver != kConfigSchemaVersion)
    throw ConfigError("schema_version: expected " + std::to_string(kConfigSchemaVersion));

  const json* fl = r.child("fluid");
  if (!fl) throw ConfigError("config.fluid: required");
  c.fluid = parse_fluid(*fl);

  const json* gr = r.child("grid");
  if (!gr) throw ConfigError("config.grid: required");
  {
    Reader g(*gr, "grid");
    const long n = g.integer("n_points");
    const double L = g.num("domain_length", 2.0 * std::numbers::pi);
    g.finish();
    if (n < 8 || n > (1L << 20)) throw ConfigError("grid.n_points: out of range");
    try {
      c.grid = GridSpec(static_cast<int>(n), L);
    } catch (const Error& e) {
      throw ConfigError(std::string("grid: ") + e.what());
    }
  }

  if (const json* in = r.child("initial")) c.initial = parse_initial(*in);

  if (const json* sc = r.child("schedule")) {
    Reader s(*sc, "schedule");
    c.schedule.t_end = s.num("t_end");
    c.schedule.dt = s.num("dt");
    c.schedule.snapshot_every = static_cast<int>(s.integer("snapshot_every", 1));
    c.schedule.checkpoint_every = static_cast<int>(s.integer("checkpoint_every", 0));
    s.finish();
    positive(c.schedule.dt, "schedule.dt");
    if (c.schedule.t_end < 0.0) throw ConfigError("schedule.t_end: must be >= 0");
    if (c.schedule.snapshot_every < 1) throw ConfigError("schedule.snapshot_every: must be >= 1");
    if (c.schedule.checkpoint_every < 0) throw ConfigError("schedule.checkpoint_every: must be >= 0");
    (void)c.schedule.total_steps();
  }

  if (const json* so = r.child("solver")) {
    Reader s(*so, "solver");
    c.solver.picard_tol = s.num("picard_tol", c.solver.picard_tol);
    c.solver.picard_max_iter = static_cast<int>(s.integer("picard_max_iter", c.solver.picard_max_iter));
    c.solver.omega2_method = parse_method(s.str("omega2_method", "quadrature"));
    c.solver.integrator = parse_integrator(s.str("integrator", "etdrk2"));
    c.solver.cfl_bound = s.num("cfl_bound", c.solver.cfl_bound);
    s.finish();
    positive(c.solver.picard_tol, "solver.picard_tol");
    positive(c.solver.cfl_bound, "solver.cfl_bound");
    if (c.solver.picard_max_iter < 1) throw ConfigError("solver.picard_max_iter: must be >= 1");
  }

  if (const json* to = r.child("tolerances")) {
    Reader s(*to, "tolerances");
    c.tolerances.budget_slack = s.num("budget_slack", c.tolerances.budget_slack);
    c.tolerances.oracle_bound = s.num("oracle_bound", c.tolerances.oracle_bound);
    c.tolerances.leakage_threshold = s.num("leakage_threshold", c.tolerances.leakage_threshold);
    s.finish();
    if (c.tolerances.budget_slack < 0.0) throw ConfigError("tolerances.budget_slack: must be >= 0");
    positive(c.tolerances.oracle_bound, "tolerances.oracle_bound");
    positive(c.tolerances.leakage_threshold, "tolerances.leakage_threshold");
  }

  if (const json* li = r.child("linear")) {
    Reader s(*li, "linear");
    c.linear.k_max = static_cast<int>(s.integer("k_max", c.linear.k_max));
    c.linear.amplitude = s.num("amplitude", c.linear.amplitude);
    c.linear.measure = s.boolean("measure", c.linear.measure);
    c.linear.t_end = s.num("t_end", c.linear.t_end);
    c.linear.dt = s.num("dt", c.linear.dt);
    s.finish();
    if (c.linear.k_max < 1 || c.linear.k_max >= c.grid.n_points / 3)
      throw ConfigError("linear.k_max: must be in [1, n/3)");
    positive(c.linear.amplitude, "linear.amplitude");
    positive(c.linear.t_end, "linear.t_end");
    positive(c.linear.dt, "linear.dt");
  }

  if (const json* out = r.child("output")) {
    Reader s(*out, "output");
    c.output_dir = s.str("dir", "");
    s.finish();
  }
  c.seed = static_cast<std::uint64_t>(r.integer("seed", 0));
  r.finish();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return parse_config(doc, path.parent_path());
}

void apply_tolerance_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("--tolerance: expected key=value");
  std::string key = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);
  if (key.find('.') == std::string::npos) key = "tolerances." + key;
  const auto dot = key.find('.');
  const std::string block = key.substr(0, dot), field = key.substr(dot + 1);
  if (block != "tolerances" && block != "solver")
    throw ConfigError("--tolerance: only tolerances.* and solver.* can be overridden");
  json doc = cfg.source;
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error&) {
    parsed = value;  // bare string, e.g. solver.integrator=etdrk4
  }
  doc[block][field] = parsed;
  RunConfig next = parse_config(doc, cfg.base_dir);
  cfg = std::move(next);
}

InterfaceField make_initial(const RunConfig& cfg) {
  const GridSpec& g = cfg.grid;
  const InitialSpec& s = cfg.initial;
  const int n = g.n_points;
  const double L = g.domain_length;
  std::vector<double> samples(static_cast<size_t>(n), 0.0);
  if (s.type == "zero") {
    return InterfaceField(SpectralField(g), 0.0);
  } else if (s.type == "single_mode") {
    if (s.k < 1 || s.k >= n / 2) throw ConfigError("initial.k: must be in [1, n/2)");
    for (int j = 0; j < n; ++j)
      samples[static_cast<size_t>(j)] = s.amplitude * std::cos(2.0 * std::numbers::pi * s.k * g.point(j) / L);
  } else if (s.type == "gaussian_bump") {
    for (int j = 0; j < n; ++j) {
      const double a = g.point(j);
      samples[static_cast<size_t>(j)] = s.amplitude * std::exp(-a * a / (2.0 * s.width * s.width));
    }
  } else if (s.type == "from_file") {
    auto p = std::filesystem::path(s.path);
    if (p.is_relative()) p = cfg.base_dir / p;
    std::ifstream in(p);
    if (!in) throw ConfigError("initial.path: cannot open " + p.string());
    std::vector<double> vals;
    double v;
    while (in >> v) vals.push_back(v);
    if (!in.eof()) throw ConfigError("initial.path: non-numeric content in " + p.string());
    if (static_cast<int>(vals.size()) != n)
      throw ConfigError("initial.path: expected " + std::to_string(n) + " samples, got " +
                        std::to_string(vals.size()));
    samples = std::move(vals);
  } else {
    if (s.k_max >= n / 2) throw ConfigError("initial.k_max: must be < n/2");
    SpectralField f(g);
    std::mt19937_64 rng(cfg.seed);
    for (int k = 1; k <= s.k_max; ++k) {
      cplx c;
      if (s.type == "power_law") {
        c = s.amplitude / k;
      } else {
        const double phase = 2.0 * std::numbers::pi * unit(rng);
        const double mag = s.amplitude * std::exp(-s.decay * k) * (0.5 + 0.5 * unit(rng));
        c = std::polar(mag, phase);
      }
      f.at(k) = c;
      f.at(-k) = std::conj(c);
    }
    return InterfaceField(f, 0.0);
  }
  return InterfaceField::from_samples(samples, g, 0.0);
}

std::string config_hash(const RunConfig& cfg) {
  json doc = cfg.source;
  doc.erase("output");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(doc.dump())));
  return buf;
}

}  // namespace muskat
