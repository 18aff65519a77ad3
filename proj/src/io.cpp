// SPDX-License-Identifier: MIT
#include "muskat/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "muskat/errors.hpp"

namespace muskat {

using nlohmann::json;

std::string hexfloat(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_hexfloat(const std::string& s) {
  if (s == "nan") return NAN;
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw IoError("malformed number '" + s + "'");
  return v;
}

std::string decimal17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::vector<std::string> kTrajectoryColumns = {
    "t",           "F01",           "F11",           "F21",           "F3half",        "L2nu",
    "strip_radius", "budget_s0_lhs", "budget_s0_rhs", "budget_s1_lhs", "budget_s1_rhs", "leakage"};

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows) {
  std::string out;
  for (size_t i = 0; i < kTrajectoryColumns.size(); ++i)
    out += (i ? "," : "") + kTrajectoryColumns[i];
  out += "\n";
  for (const auto& r : rows) {
    const double vals[] = {r.t,
                           r.norms.f01,
                           r.norms.f11,
                           r.norms.f21,
                           r.norms.f3half,
                           r.norms.l2nu,
                           r.norms.strip_radius ? *r.norms.strip_radius : NAN,
                           r.budget_s0_lhs,
                           r.budget_s0_rhs,
                           r.budget_s1_lhs,
                           r.budget_s1_rhs,
                           r.leakage};
    for (size_t i = 0; i < std::size(vals); ++i) out += (i ? "," : "") + decimal17(vals[i]);
    out += "\n";
  }
  return out;
}

namespace {
json row_json(const TrajectoryRow& r) {
  json j;
  j["t"] = hexfloat(r.t);
  j["f01"] = hexfloat(r.norms.f01);
  j["f11"] = hexfloat(r.norms.f11);
  j["f21"] = hexfloat(r.norms.f21);
  j["f3half"] = hexfloat(r.norms.f3half);
  j["l2nu"] = hexfloat(r.norms.l2nu);
  j["strip_radius"] = r.norms.strip_radius ? json(hexfloat(*r.norms.strip_radius)) : json(nullptr);
  j["f11_plain"] = hexfloat(r.f11_plain);
  j["b0l"] = hexfloat(r.budget_s0_lhs);
  j["b0r"] = hexfloat(r.budget_s0_rhs);
  j["b1l"] = hexfloat(r.budget_s1_lhs);
  j["b1r"] = hexfloat(r.budget_s1_rhs);
  j["leakage"] = hexfloat(r.leakage);
  j["l2_log_ratio"] = hexfloat(r.l2_log_ratio);
  return j;
}

double hx(const json& j, const char* k) {
  if (!j.contains(k) || !j.at(k).is_string()) throw IoError(std::string("checkpoint: missing ") + k);
  return parse_hexfloat(j.at(k).get<std::string>());
}

TrajectoryRow row_from_json(const json& j) {
  TrajectoryRow r;
  r.t = hx(j, "t");
  r.norms.time = r.t;
  r.norms.f01 = hx(j, "f01");
  r.norms.f11 = hx(j, "f11");
  r.norms.f21 = hx(j, "f21");
  r.norms.f3half = hx(j, "f3half");
  r.norms.l2nu = hx(j, "l2nu");
  if (!j.at("strip_radius").is_null()) r.norms.strip_radius = hx(j, "strip_radius");
  r.f11_plain = hx(j, "f11_plain");
  r.budget_s0_lhs = hx(j, "b0l");
  r.budget_s0_rhs = hx(j, "b0r");
  r.budget_s1_lhs = hx(j, "b1l");
  r.budget_s1_rhs = hx(j, "b1r");
  r.leakage = hx(j, "leakage");
  r.l2_log_ratio = hx(j, "l2_log_ratio");
  return r;
}
}  // namespace

json checkpoint_json(const RunState& st, const std::string& config_hash) {
  json j;
  j["format"] = "muskat-checkpoint";
  j["version"] = kCheckpointVersion;
  j["config_hash"] = config_hash;
  j["step"] = st.step;
  j["n_points"] = st.f.grid.n_points;
  j["domain_length"] = hexfloat(st.f.grid.domain_length);
  j["time"] = hexfloat(st.f.time_tag);
  json coeffs = json::array();
  for (const auto& c : st.f.c) coeffs.push_back({hexfloat(c.real()), hexfloat(c.imag())});
  j["coefficients"] = std::move(coeffs);
  j["integral0"] = hexfloat(st.integral0);
  j["integral1"] = hexfloat(st.integral1);
  j["integrand0"] = hexfloat(st.integrand0);
  j["integrand1"] = hexfloat(st.integrand1);
  j["f01_initial"] = hexfloat(st.f01_initial);
  j["f11_initial"] = hexfloat(st.f11_initial);
  j["l2_initial"] = hexfloat(st.l2_initial);
  json rows = json::array();
  for (const auto& r : st.rows) rows.push_back(row_json(r));
  j["rows"] = std::move(rows);
  return j;
}

RunState checkpoint_from_json(const json& j, const std::string& expected_hash) {
  try {
    if (j.value("format", "") != "muskat-checkpoint") throw IoError("not a checkpoint file");
    if (j.at("version").get<int>() != kCheckpointVersion) throw IoError("unsupported checkpoint version");
    const std::string hash = j.at("config_hash").get<std::string>();
    if (!expected_hash.empty() && hash != expected_hash)
      throw ConfigError("checkpoint config hash " + hash + " does not match config " + expected_hash);
    RunState st;
    st.step = j.at("step").get<long>();
    GridSpec g(j.at("n_points").get<int>(), hx(j, "domain_length"));
    st.f = SpectralField(g, hx(j, "time"));
    const json& cs = j.at("coefficients");
    if (cs.size() != static_cast<size_t>(g.n_points)) throw IoError("checkpoint: coefficient count");
    for (size_t s = 0; s < cs.size(); ++s)
      st.f.c[s] = cplx(parse_hexfloat(cs[s][0].get<std::string>()), parse_hexfloat(cs[s][1].get<std::string>()));
    st.integral0 = hx(j, "integral0");
    st.integral1 = hx(j, "integral1");
    st.integrand0 = hx(j, "integrand0");
    st.integrand1 = hx(j, "integrand1");
    st.f01_initial = hx(j, "f01_initial");
    st.f11_initial = hx(j, "f11_initial");
    st.l2_initial = hx(j, "l2_initial");
    for (const auto& r : j.at("rows")) st.rows.push_back(row_from_json(r));
    return st;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed checkpoint: ") + e.what());
  }
}

json certificate_json(const Certificate& c) {
  json j;
  j["schema"] = "muskat-certificate";
  j["schema_version"] = kCertificateSchemaVersion;
  j["fluid"] = {{"a_rho", c.cfg.a_rho}, {"a_kappa", c.cfg.a_kappa}, {"a_mu", c.cfg.a_mu}, {"h2", c.cfg.h2}};
  j["verdict"] = verdict_name(c.verdict);
  j["reason"] = c.reason;
  j["a0"] = c.a0;
  j["a1"] = c.a1;
  j["a_half"] = c.a_half;
  j["a_three_half"] = c.a_three_half;
  j["theta"] = c.theta;
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  j["margins"] = {num(c.margin0), num(c.margin1), num(c.margin2)};
  j["nu"] = c.nu;
  j["thresholds"] = {{"k0", c.thr.k0}, {"k1", c.thr.k1}, {"tau_star", c.thr.tau_star}};
  if (c.ledger) {
    json led;
    for (const auto& [k, v] : c.ledger->values()) led[k] = num(v);
    json tails;
    for (const auto& [k, s] : c.ledger->series)
      tails[k] = {{"value", num(s.value)}, {"tail_bound", num(s.tail_bound)}, {"terms", s.terms},
                  {"divergent", s.divergent}};
    led["series"] = std::move(tails);
    j["ledger"] = std::move(led);
  } else {
    j["ledger"] = nullptr;
  }
  return j;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace muskat
