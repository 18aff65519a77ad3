// SPDX-License-Identifier: MIT
//
// Subcommand implementations behind the muskat binary. Each returns a process
// exit code (see ExitCode) and never throws.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "muskat/config.hpp"

namespace muskat {

constexpr const char* kOutputDirEnv = "MUSKAT_OUTPUT_DIR";

struct CliOptions {
  std::vector<std::string> configs;  // one, except for sweep
  bool require_certificate = false;
  std::optional<std::string> output_dir;
  std::optional<std::string> resume;
  int threads = 1;
  std::vector<std::string> tolerance_overrides;
  bool corrupt_fast_path = false;  // test hook for oracle-check
};

// flag > config output.dir > $MUSKAT_OUTPUT_DIR > ./muskat_out
std::filesystem::path resolve_output_dir(const CliOptions& opt, const RunConfig& cfg);

RunConfig load_with_overrides(const std::string& path, const CliOptions& opt);

struct LinearRow {
  int k = 0;
  double xi = 0, m_exact = 0, m_measured = NAN, rel_err = NAN;
};
std::vector<LinearRow> linear_table(const RunConfig& cfg);
std::string linear_csv(const std::vector<LinearRow>& rows);

struct OracleEntry {
  std::string name;
  double value = 0;
  bool skipped = false;
  std::string note;
};
struct OracleReport {
  std::vector<OracleEntry> entries;
  double bound = 0;
  bool pass() const;
};
OracleReport oracle_check(const RunConfig& cfg, bool corrupt_fast_path = false);

int cmd_run(const CliOptions& opt, std::ostream& out, std::ostream& err);
int cmd_certify(const CliOptions& opt, std::ostream& out, std::ostream& err);
int cmd_linear(const CliOptions& opt, std::ostream& out, std::ostream& err);
int cmd_oracle_check(const CliOptions& opt, std::ostream& out, std::ostream& err);
int cmd_sweep(const CliOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace muskat
