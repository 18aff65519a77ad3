// SPDX-License-Identifier: MIT
//
// muskat: run / certify / linear / oracle-check / sweep
#include <CLI11.hpp>
#include <iostream>

#include "muskat/driver.hpp"
#include "muskat/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral simulator and certificate engine for the two-layer Muskat problem"};
  app.require_subcommand(1);
  muskat::CliOptions opt;

  auto add_common = [&](CLI::App* sub, bool many_configs) {
    if (many_configs)
      sub->add_option("--config", opt.configs, "run configuration (JSON); repeatable")->required();
    else
      sub->add_option("--config", opt.configs, "run configuration (JSON)")->required()->expected(1);
    sub->add_option("--tolerance", opt.tolerance_overrides,
                    "override a tolerance, e.g. oracle_bound=1e-8 or solver.picard_tol=1e-13");
  };

  auto* run = app.add_subcommand("run", "evolve the configured datum and write the trajectory");
  add_common(run, false);
  run->add_flag("--require-certificate", opt.require_certificate, "refuse inadmissible data");
  run->add_option("--output-dir", opt.output_dir, "output directory (default $MUSKAT_OUTPUT_DIR)");
  run->add_option("--resume", opt.resume, "continue from a checkpoint file");

  auto* cert = app.add_subcommand("certify", "print the admissibility certificate as JSON");
  add_common(cert, false);
  cert->add_flag("--require-certificate", opt.require_certificate, "exit 5 unless admissible");

  auto* lin = app.add_subcommand("linear", "tabulate the linear symbol and measured decay rates");
  add_common(lin, false);

  auto* orc = app.add_subcommand("oracle-check", "compare fast paths with brute-force quadrature");
  add_common(orc, false);
  orc->add_flag("--corrupt-fast-path", opt.corrupt_fast_path, "perturb the fast RHS (detector test)")
      ->group("");

  auto* sweep = app.add_subcommand("sweep", "run several configurations in parallel");
  add_common(sweep, true);
  sweep->add_option("--threads", opt.threads, "parallel workers")->check(CLI::PositiveNumber);
  sweep->add_flag("--require-certificate", opt.require_certificate, "refuse inadmissible data");
  sweep->add_option("--output-dir", opt.output_dir, "base output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(muskat::ExitCode::usage);
  }

  if (*run) return muskat::cmd_run(opt, std::cout, std::cerr);
  if (*cert) return muskat::cmd_certify(opt, std::cout, std::cerr);
  if (*lin) return muskat::cmd_linear(opt, std::cout, std::cerr);
  if (*orc) return muskat::cmd_oracle_check(opt, std::cout, std::cerr);
  if (*sweep) return muskat::cmd_sweep(opt, std::cout, std::cerr);
  return static_cast<int>(muskat::ExitCode::usage);
}
