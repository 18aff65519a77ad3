// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "muskat/errors.hpp"
#include "muskat/fluid.hpp"
#include "muskat/interface.hpp"
#include "muskat/norms.hpp"
#include "muskat/vorticity.hpp"

namespace muskat {

// m(xi) = A_rho |xi| (1 - A_kappa (1 - A_mu) / (e^{2 h2 |xi|} - A_kappa A_mu));
// the linear part of the evolution is -m(xi) f_hat.
double linear_symbol(double xi, const FluidConfig& cfg);

struct RhsOptions {
  VorticityOptions vort;
  bool diagnostics = false;  // fill n_terms
};

struct NTerms {
  SpectralField n0;        // I1 = pi H(omega1) + 2 pi N0
  SpectralField n4;        // I3 = (flat conj-Poisson part) + 2 pi N4
  SpectralField n_omega2;  // omega2_hat + A_kappa e^{-h2|xi|} omega1_hat
};

struct RhsBreakdown {
  SpectralField i1, i2, i3, i4;
  SpectralField linear_part;     // -m(xi) f_hat
  SpectralField nonlinear_part;  // (i1+i2+i3+i4)/(2 pi) - linear_part, unfiltered
  std::optional<NTerms> n_terms;
  VorticityPair vort;

  SpectralField total() const { return linear_part + nonlinear_part; }
};

RhsBreakdown rhs(const InterfaceField& f, const FluidConfig& cfg, const RhsOptions& opt = {});

enum class Integrator { etdrk2, etdrk4 };

struct StepOptions {
  Integrator scheme = Integrator::etdrk2;
  bool linear_only = false;  // zero the nonlinear remainder (tests)
  double cfl_bound = 0.5;    // dt ||N||_{F01} / ||f||_{F01}
  RhsOptions rhs;
};

// phi_1(z) = (e^z - 1)/z, phi_2, phi_3 likewise; small-argument series near 0
double phi1(double z);
double phi2(double z);
double phi3(double z);

// nonlinear remainder after the 2/3 filter
SpectralField nonlinear_remainder(const InterfaceField& f, const FluidConfig& cfg,
                                  const StepOptions& opt);

struct BlowupError : StepError {
  BlowupError(const std::string& w, InterfaceField last) : StepError(w), last_valid(std::move(last)) {}
  InterfaceField last_valid;
};

InterfaceField step(const InterfaceField& state, double dt, const FluidConfig& cfg,
                    const StepOptions& opt = {});

struct Schedule {
  double t_end = 1.0;
  double dt = 0.01;
  int snapshot_every = 10;    // steps between snapshots
  int checkpoint_every = 0;   // snapshots between checkpoints, 0 = never
  long total_steps() const;
};

// running form of the weighted-norm budget:
//   ||f||_{F^{s,1}_nu}(t) + coef_s int_0^t ||f||_{F^{s+1,1}_nu} <= ||f0||_{F^{s,1}_0}
struct BudgetSpec {
  double coef0 = 0, coef1 = 0;
  double slack = 1e-6;
};

struct TrajectoryRow {
  double t = 0;
  NormReport norms;       // nu-weighted
  double f11_plain = 0;   // ||f||_{F^{1,1}_0}
  double budget_s0_lhs = NAN, budget_s0_rhs = NAN;
  double budget_s1_lhs = NAN, budget_s1_rhs = NAN;
  double leakage = 0;
  double l2_log_ratio = 0;  // log(||f||_{L2_nu}(t) / ||f0||_{L2})
};

// everything needed to continue a run bit-for-bit
struct RunState {
  long step = 0;
  SpectralField f;
  double integral0 = 0, integral1 = 0;  // int ||f||_{F^{s+1,1}_nu}
  double integrand0 = 0, integrand1 = 0;
  double f01_initial = 0, f11_initial = 0, l2_initial = 0;
  std::vector<TrajectoryRow> rows;
};

struct TrajectoryRecord {
  std::vector<TrajectoryRow> rows;
  std::vector<SpectralField> snapshots;  // only when keep_snapshots
  std::string config_hash;
  double nu = 0;
  bool budget_violated = false;
  std::string budget_message;
  double max_l2_log_ratio = 0;
  RunState final_state;
};

struct RunOptions {
  StepOptions step;
  double nu = 0.0;
  std::optional<BudgetSpec> budget;
  double leakage_threshold = std::numeric_limits<double>::infinity();
  bool keep_snapshots = false;
  std::string config_hash;
  std::optional<RunState> resume;
  std::function<void(const RunState&)> on_checkpoint;
  std::function<void(const TrajectoryRow&)> on_row;
};

// run aborted by a step, geometry or solver error; the partial record is kept
struct RunFailure : Error {
  RunFailure(ExitCode c, const std::string& w, TrajectoryRecord rec)
      : Error(c, w), partial(std::move(rec)) {}
  TrajectoryRecord partial;
};

TrajectoryRecord run(const InterfaceField& f0, const FluidConfig& cfg, const Schedule& sched,
                     const RunOptions& opt = {});

}  // namespace muskat
