// SPDX-License-Identifier: MIT
//
// Run configuration: strict JSON, schema version 1. Unknown keys are errors.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "muskat/evolution.hpp"
#include "muskat/fluid.hpp"
#include "muskat/interface.hpp"
#include "muskat/spectral.hpp"

namespace muskat {

constexpr int kConfigSchemaVersion = 1;

struct InitialSpec {
  // zero | single_mode | gaussian_bump | from_file | power_law | random_modes
  std::string type = "zero";
  int k = 1;                 // single_mode
  double amplitude = 0.0;
  double width = 1.0;        // gaussian_bump: amplitude exp(-alpha^2 / (2 width^2))
  std::string path;          // from_file, resolved against the config directory
  int k_max = 8;             // power_law, random_modes
  double decay = 0.0;        // random_modes: amplitude e^{-decay k} envelope
};

struct SolverSpec {
  double picard_tol = 1e-12;
  int picard_max_iter = 200;
  Omega2Method omega2_method = Omega2Method::quadrature;
  Integrator integrator = Integrator::etdrk2;
  double cfl_bound = 0.5;
};

struct ToleranceSpec {
  double budget_slack = 1e-6;
  double oracle_bound = 1e-6;
  double leakage_threshold = 1e-2;
};

struct LinearSpec {
  int k_max = 8;
  double amplitude = 1e-6;
  bool measure = true;
  double t_end = 0.5;
  double dt = 0.05;
};

struct RunConfig {
  FluidConfig fluid;
  GridSpec grid;
  InitialSpec initial;
  Schedule schedule;
  SolverSpec solver;
  ToleranceSpec tolerances;
  LinearSpec linear;
  std::string output_dir;  // may be empty
  std::uint64_t seed = 0;
  std::filesystem::path base_dir;  // directory of the config file
  nlohmann::json source;           // parsed document, for hashing

  StepOptions step_options() const;
  VorticityOptions vorticity_options() const;
};

RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

// "key=value" with key in tolerances.* or solver.* (the prefix may be omitted
// for tolerance keys)
void apply_tolerance_override(RunConfig& cfg, const std::string& assignment);

InterfaceField make_initial(const RunConfig& cfg);

// FNV-1a 64 of the canonical dump, output block excluded
std::string config_hash(const RunConfig& cfg);

}  // namespace muskat
