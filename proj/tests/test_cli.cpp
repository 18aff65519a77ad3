// SPDX-License-Identifier: MIT
// Drives the muskat binary as a subprocess.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kBin = MUSKAT_CLI_PATH;
const fs::path kConfigs = fs::path(MUSKAT_SOURCE_DIR) / "configs";

fs::path scratch(const std::string& name) {
  auto p = fs::path(MUSKAT_CLI_PATH).parent_path() / "cli_scratch" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Result {
  int code;
  std::string out, err;
};

// args are appended verbatim; cwd is the scratch dir
Result cli(const fs::path& dir, const std::string& args, const std::string& env = "") {
  const auto o = dir / "stdout.txt", e = dir / "stderr.txt";
  const std::string cmd = "cd '" + dir.string() + "' && " + env + " '" + kBin + "' " + args + " >'" + o.string() +
                          "' 2>'" + e.string() + "'";
  const int st = std::system(cmd.c_str());
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, slurp(o), slurp(e)};
}

std::string cfg(const std::string& name) { return "--config '" + (kConfigs / name).string() + "'"; }

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

fs::path write_json(const fs::path& dir, const std::string& name, const json& j) {
  auto p = dir / name;
  std::ofstream(p) << j.dump(2);
  return p;
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

}  // namespace

TEST_CASE("zero datum writes a trajectory of zeros") {
  auto d = scratch("zero");
  auto r = cli(d, "run " + cfg("zero.json") + " --output-dir out");
  REQUIRE(r.code == 0);
  auto rows = read_csv(d / "out/trajectory.csv");
  REQUIRE(rows.size() == 7);  // header + t = 0, 0.02, ..., 0.1
  CHECK(rows[0][0] == "t");
  for (size_t i = 1; i < rows.size(); ++i)
    for (size_t c = 1; c < rows[i].size(); ++c) {
      if (rows[0][c] == "strip_radius") continue;  // no resolved modes
      CHECK(std::stod(rows[i][c]) == 0.0);
    }
  auto meta = load(d / "out/metadata.json");
  CHECK(meta["status"]["exit_code"] == 0);
  CHECK(meta["certificate"]["verdict"] == "admissible");
}

TEST_CASE("certify prints JSON and honours --require-certificate") {
  auto d = scratch("certify");
  auto ok = cli(d, "certify " + cfg("linear.json"));
  REQUIRE(ok.code == 0);
  auto j = json::parse(ok.out);
  CHECK(j["verdict"] == "admissible");
  CHECK(j["nu"].get<double>() == doctest::Approx(0.5 * j["margins"][1].get<double>()));
  CHECK(j["ledger"].contains("C14"));

  auto bad = cli(d, "certify " + cfg("large_bump.json"));
  CHECK(bad.code == 0);
  CHECK(json::parse(bad.out)["verdict"] == "inadmissible");
  CHECK(cli(d, "certify " + cfg("large_bump.json") + " --require-certificate").code == 5);

  auto refused = cli(d, "run " + cfg("large_bump.json") + " --require-certificate --output-dir lb");
  CHECK(refused.code == 5);
  CHECK_FALSE(fs::exists(d / "lb/trajectory.csv"));
}

TEST_CASE("linear table") {
  auto d = scratch("linear");
  auto r = cli(d, "linear " + cfg("linear.json"));
  REQUIRE(r.code == 0);
  std::stringstream ss(r.out);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "k,xi,m_exact,m_measured,rel_err");
  int n = 0;
  while (std::getline(ss, line)) {
    double k, xi, m, mm, e;
    char c;
    std::stringstream ls(line);
    ls >> k >> c >> xi >> c >> m >> c >> mm >> c >> e;
    CHECK(e < 1e-2);
    ++n;
  }
  CHECK(n == 8);

  auto cl = cli(d, "linear " + cfg("classical.json"));
  REQUIRE(cl.code == 0);
  std::stringstream cs(cl.out);
  std::getline(cs, line);
  while (std::getline(cs, line)) {
    double k, xi, m, mm, e;
    char c;
    std::stringstream ls(line);
    ls >> k >> c >> xi >> c >> m >> c >> mm >> c >> e;
    CHECK(m == doctest::Approx(std::abs(xi)).epsilon(1e-12));
    CHECK(std::abs(mm - std::abs(xi)) < 1e-2 * std::abs(xi));
  }
}

TEST_CASE("oracle-check") {
  auto d = scratch("oracle");
  auto r = cli(d, "oracle-check " + cfg("gaussian.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(cli(d, "oracle-check " + cfg("gaussian.json") + " --corrupt-fast-path").code == 7);
  // override tightens the bound below round-off
  CHECK(cli(d, "oracle-check " + cfg("gaussian.json") + " --tolerance oracle_bound=1e-30").code == 7);
}

TEST_CASE("usage errors exit 1") {
  auto d = scratch("usage");
  CHECK(cli(d, "").code == 1);
  CHECK(cli(d, "run --bogus").code == 1);
  CHECK(cli(d, "run --config missing.json").code == 1);
  CHECK(cli(d, "run " + cfg("zero.json") + " --tolerance bogus=1").code == 1);
  auto z = load(kConfigs / "zero.json");
  z["frobnicate"] = 1;
  CHECK(cli(d, "run --config '" + write_json(d, "bad.json", z).string() + "'").code == 1);
  auto v = load(kConfigs / "zero.json");
  v["schema_version"] = 99;
  CHECK(cli(d, "run --config '" + write_json(d, "ver.json", v).string() + "'").code == 1);
}

TEST_CASE("reruns and restarts are byte-identical") {
  auto d = scratch("determinism");
  REQUIRE(cli(d, "run " + cfg("gaussian.json") + " --output-dir a").code == 0);
  REQUIRE(cli(d, "run " + cfg("gaussian.json") + " --output-dir b").code == 0);
  for (auto f : {"trajectory.csv", "metadata.json", "checkpoint.json"}) CHECK(slurp(d / "a" / f) == slurp(d / "b" / f));

  std::vector<fs::path> cps;
  for (auto& e : fs::directory_iterator(d / "a/checkpoints")) cps.push_back(e.path());
  std::sort(cps.begin(), cps.end());
  REQUIRE(cps.size() >= 2);
  const auto mid = cps[cps.size() / 2];
  REQUIRE(cli(d, "run " + cfg("gaussian.json") + " --output-dir c --resume '" + mid.string() + "'").code == 0);
  CHECK(slurp(d / "a/trajectory.csv") == slurp(d / "c/trajectory.csv"));
  CHECK(slurp(d / "a/metadata.json") == slurp(d / "c/metadata.json"));

  // a checkpoint from a different configuration is refused
  CHECK(cli(d, "run " + cfg("zero.json") + " --output-dir z --resume '" + mid.string() + "'").code == 1);
}

TEST_CASE("output directory precedence") {
  auto d = scratch("outdir");
  auto z = load(kConfigs / "zero.json");
  auto plain = write_json(d, "plain.json", z);
  z["output"] = {{"dir", "from_config"}};
  auto withdir = write_json(d, "withdir.json", z);

  CHECK(cli(d, "run --config '" + plain.string() + "'", "MUSKAT_OUTPUT_DIR=from_env").code == 0);
  CHECK(fs::exists(d / "from_env/trajectory.csv"));
  CHECK(cli(d, "run --config '" + withdir.string() + "'", "MUSKAT_OUTPUT_DIR=env2").code == 0);
  CHECK(fs::exists(d / "from_config/trajectory.csv"));
  CHECK_FALSE(fs::exists(d / "env2"));
  CHECK(cli(d, "run --config '" + withdir.string() + "' --output-dir from_flag", "MUSKAT_OUTPUT_DIR=env3").code == 0);
  CHECK(fs::exists(d / "from_flag/trajectory.csv"));
  CHECK_FALSE(fs::exists(d / "env3"));
}

TEST_CASE("sweep matches individual runs") {
  auto d = scratch("sweep");
  REQUIRE(cli(d, "sweep " + cfg("zero.json") + " " + cfg("linear.json") + " --threads 2 --output-dir sw").code == 0);
  REQUIRE(cli(d, "run " + cfg("linear.json") + " --output-dir single").code == 0);
  CHECK(fs::exists(d / "sw/0_zero/trajectory.csv"));
  CHECK(slurp(d / "sw/1_linear/trajectory.csv") == slurp(d / "single/trajectory.csv"));
  CHECK(cli(d, "sweep " + cfg("zero.json") + " " + cfg("large_bump.json") + " --require-certificate --output-dir sw2").code ==
        5);
}
