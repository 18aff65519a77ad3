// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "muskat/errors.hpp"
#include "muskat/fluid.hpp"
#include "muskat/interface.hpp"
#include "muskat/kernels.hpp"

namespace muskat {

enum class Omega2Method { quadrature, series };

struct VorticityOptions {
  double tol = 1e-12;  // Picard stop: F^{0,1}_0 change of omega1
  int max_iter = 200;
  Omega2Method method = Omega2Method::quadrature;
  int series_nmax = 0;       // 0: choose from the C0 majorant
  double series_tol = 1e-13;
  Exec exec = Exec::parallel;
};

struct VorticityPair {
  SpectralField omega1, omega2;
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> history;    // residual per iterate
  double contraction_ratio = 0.0; // max residual ratio after the 2nd iterate
};

struct PotentialPair {
  SpectralField Omega1, Omega2;
  double gauge = 0.0;           // additive constant of Omega1
  double defect1 = 0.0, defect2 = 0.0;  // ||d Omega_i - omega_i||_{F^{0,1}_0}
};

// series path not usable (||f||_{F^{0,1}} >= h2)
struct MethodUnavailable : Error {
  explicit MethodUnavailable(const std::string& w) : Error(ExitCode::usage, w) {}
};

// Quadrature operators frozen at one interface shape; shared by the vorticity
// solve and the right-hand side.
class InterfaceOperators {
 public:
  InterfaceOperators(const InterfaceField& f, const FluidConfig& cfg, Exec exec);

  const GridSpec& grid() const { return grid_; }
  const std::vector<double>& f() const { return f_; }
  const std::vector<double>& fp() const { return fp_; }
  const OffsetTable& table() const { return table_; }
  const SelfKernels& self() const { return self_; }
  const CrossKernels& curve_from_soil() const { return cs_; }
  const CrossKernels& soil_from_curve() const { return sc_; }
  const std::vector<double>& flat_q() const { return flat_q_; }
  Exec exec() const { return exec_; }

  // A_mu/pi [pv int (f'(a) - D)/(1+D^2) w1/b + int (b f'(a) - (f+h2))/(b^2+(f+h2)^2) w2]
  std::vector<double> omega1_operator(const std::vector<double>& w1,
                                      const std::vector<double>& w2) const;
  // -A_kappa/pi int (f(a-b)+h2)/(b^2+(f(a-b)+h2)^2) w1(a-b) db
  std::vector<double> omega2_quadrature(const std::vector<double>& w1) const;

 private:
  GridSpec grid_;
  FluidConfig cfg_;
  Exec exec_;
  std::vector<double> f_, fp_;
  OffsetTable table_;
  SelfKernels self_;
  CrossKernels cs_, sc_;
  std::vector<double> j1_, j2_;  // combined omega1 kernels
  std::vector<double> flat_q_;
};

SpectralField omega2_of_omega1(const InterfaceField& f, const SpectralField& omega1,
                               const FluidConfig& cfg, Omega2Method method, int n_max = 0,
                               double tol = 1e-13);
// series path; n_used receives the truncation order
SpectralField omega2_series(const InterfaceField& f, const SpectralField& omega1,
                            const FluidConfig& cfg, int n_max, double tol, int* n_used = nullptr);
// smallest n with the C0-majorant tail below tol/10, or -1 if ||f|| >= h2
int series_order(double a0, double h2, double omega_norm, double tol);

VorticityPair solve_vorticity(const InterfaceField& f, const FluidConfig& cfg,
                              const VorticityOptions& opt = {});
VorticityPair solve_vorticity(const InterfaceOperators& ops, const InterfaceField& f,
                              const FluidConfig& cfg, const VorticityOptions& opt);

PotentialPair potentials(const VorticityPair& pair, const InterfaceField& f,
                         const FluidConfig& cfg, double tol = 1e-6);

struct BoundCheck {
  std::string name;
  double lhs = 0.0, rhs = 0.0;
  bool pass = false;
};
struct BoundReport {
  std::vector<BoundCheck> checks;
  bool all_pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

BoundReport vorticity_bound_check(const VorticityPair& pair, const InterfaceField& f,
                                  const FluidConfig& cfg, double nu, double t);

}  // namespace muskat
