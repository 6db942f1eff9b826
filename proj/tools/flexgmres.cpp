// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line harness: worst-case and stagnating systems, PDE-style solves
// with a residual-targeting inner GMRES, and the convergence-rate tables.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "flexkrylov/errors.hpp"
#include "flexkrylov/experiments.hpp"

namespace {

// exit codes: 0 success, 1 usage error, 2 numerical failure, 3 I/O error
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

void add_common_flags(CLI::App *cmd, flexkrylov::ExperimentConfig &cfg) {
  cmd->add_option("--mu", cfg.mu, "inner contraction factor");
  cmd->add_option("--outer", cfg.outer, "outer iterations m");
  cmd->add_option("--inner", cfg.inner, "inner GMRES iterations k");
  cmd->add_option("--n", cfg.n, "dimension (grid size for generated matrices)");
  cmd->add_option("--out", cfg.out_path, "trace output file (.dat)");
  cmd->add_option("--seed", cfg.seed, "seed for randomized probes");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"flexible GMRES with sharp convergence bounds"};
  app.require_subcommand(1);

  flexkrylov::ExperimentConfig sharp_cfg;
  sharp_cfg.out_path = "sharp.dat";
  CLI::App *sharp = app.add_subcommand(
      "sharp", "worst-case system on which the residual bound is attained");
  add_common_flags(sharp, sharp_cfg);
  sharp->add_option("--export-matrix", sharp_cfg.export_matrix_path,
                    "write the materialized matrix (Matrix Market, n <= 500)");
  sharp->add_option("--dump-frames", sharp_cfg.dump_frames_path,
                    "write the construction frames (binary)");

  flexkrylov::ExperimentConfig stagnate_cfg;
  stagnate_cfg.mu = 0.55;
  stagnate_cfg.out_path = "stagnate.dat";
  CLI::App *stagnate = app.add_subcommand(
      "stagnate", "system whose residual stops decreasing after the stalling index");
  add_common_flags(stagnate, stagnate_cfg);
  stagnate->add_option("--export-matrix", stagnate_cfg.export_matrix_path,
                       "write the materialized matrix (Matrix Market, n <= 500)");
  stagnate->add_option("--dump-frames", stagnate_cfg.dump_frames_path,
                       "write the construction frames (binary)");

  flexkrylov::ExperimentConfig solve_cfg;
  solve_cfg.mu = 0.1;
  solve_cfg.outer = 30;
  solve_cfg.inner = 200;
  solve_cfg.n = 40;
  solve_cfg.out_path = "solve.dat";
  CLI::App *solve = app.add_subcommand(
      "solve", "FGMRES with residual-targeting inner GMRES on a PDE-style matrix");
  add_common_flags(solve, solve_cfg);
  solve->add_option("--matrix", solve_cfg.matrix_path,
                    "Matrix Market input (default: generated convection-diffusion)");
  solve->add_option("--peclet", solve_cfg.peclet,
                    "convection strength of the generated matrix");
  solve->add_option("--tol", solve_cfg.rel_tolerance, "outer relative tolerance");

  CLI::App *tables =
      app.add_subcommand("tables", "print the convergence-rate and stalling tables");

  flexkrylov::ExperimentConfig bound_cfg;
  bound_cfg.outer = 20;
  CLI::App *bound = app.add_subcommand("bound", "print the bound series for one mu");
  bound->add_option("--mu", bound_cfg.mu, "inner contraction factor")->required();
  bound->add_option("--outer", bound_cfg.outer, "iterations to tabulate");
  bound->add_option("--out", bound_cfg.out_path, "write the table to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (sharp->parsed()) {
      std::cout << flexkrylov::run_sharp(sharp_cfg).summary;
      if (!sharp_cfg.out_path.empty())
        std::cout << "trace written to " << sharp_cfg.out_path << "\n";
    } else if (stagnate->parsed()) {
      std::cout << flexkrylov::run_stagnate(stagnate_cfg).summary;
      if (!stagnate_cfg.out_path.empty())
        std::cout << "trace written to " << stagnate_cfg.out_path << "\n";
    } else if (solve->parsed()) {
      std::cout << flexkrylov::run_solve(solve_cfg).summary;
      if (!solve_cfg.out_path.empty())
        std::cout << "trace written to " << solve_cfg.out_path << "\n";
    } else if (tables->parsed()) {
      std::cout << flexkrylov::tables_text();
    } else if (bound->parsed()) {
      const std::string text =
          flexkrylov::bound_table_text(bound_cfg.mu, bound_cfg.outer);
      if (bound_cfg.out_path.empty()) {
        std::cout << text;
      } else {
        std::FILE *f = std::fopen(bound_cfg.out_path.c_str(), "w");
        if (!f) throw flexkrylov::IoError("cannot open '" + bound_cfg.out_path + "'");
        std::fputs(text.c_str(), f);
        std::fclose(f);
        std::cout << "bound table written to " << bound_cfg.out_path << "\n";
      }
    }
  } catch (const flexkrylov::IoError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const flexkrylov::NumericalError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
