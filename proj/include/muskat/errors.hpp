// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace muskat {

// Process exit codes. Stable: documented in README.
enum class ExitCode : int {
  ok = 0,
  usage = 1,          // bad flags, bad config, schema violation
  geometry = 2,       // interfaces touch, leakage above threshold
  divergence = 3,     // Picard failed to converge
  budget = 4,         // budget inequality violated along a run
  inadmissible = 5,   // --require-certificate refused the datum
  blowup = 6,         // NaN / step-size guard
  oracle = 7,         // fast vs oracle discrepancy above bound
  io = 8,             // checkpoint / output write failure
  internal = 9,       // internal consistency check failed
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ExitCode::usage, w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ExitCode::usage, w) {}
};
struct GeometryError : Error {
  explicit GeometryError(const std::string& w) : Error(ExitCode::geometry, w) {}
};
struct StepError : Error {
  explicit StepError(const std::string& w) : Error(ExitCode::blowup, w) {}
};
struct InternalError : Error {
  explicit InternalError(const std::string& w) : Error(ExitCode::internal, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ExitCode::io, w) {}
};

// Picard did not converge; keeps the residual trail for the report.
struct DivergenceError : Error {
  DivergenceError(const std::string& w, std::vector<double> hist)
      : Error(ExitCode::divergence, w), history(std::move(hist)) {}
  std::vector<double> history;
};

// Constant ledger cannot be evaluated (denominator <= 0).
struct RegimeError : Error {
  RegimeError(const std::string& constant, double denom)
      : Error(ExitCode::inadmissible,
              "nonpositive denominator in " + constant + " (" + std::to_string(denom) + ")"),
        offending(constant) {}
  std::string offending;
};

}  // namespace muskat
