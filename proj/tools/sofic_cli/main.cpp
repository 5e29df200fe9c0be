// Copyright 2026 The sofic-pressure Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// sofic-pressure: runs the analytic, solver, verification and simulation
// routines of the library and writes CSV tables plus a JSON manifest.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "report.hpp"
#include "sofic/sofic.h"

namespace {

void Register(CLI::App& app, sofic_cli::Options& opt) {
  app.add_option("command", opt.command, "Subcommand to run")
      ->required()
      ->check(CLI::IsMember(sofic_cli::CommandNames()));
  app.add_option("--r", opt.r, "Rank of the free group");
  app.add_option("--J", opt.coupling, "Interaction strength");
  app.add_option("--J-min", opt.j_min, "Smallest J of the grid");
  app.add_option("--J-max", opt.j_max, "Largest J of the grid");
  app.add_option("--J-steps", opt.j_steps, "Number of J grid points");
  app.add_option("--t-min", opt.t_min, "Smallest t of the grid");
  app.add_option("--t-max", opt.t_max, "Largest t of the grid");
  app.add_option("--t-steps", opt.t_steps, "Number of t grid points");
  app.add_option("--t", opt.t, "Chain parameter for annealed: number, plus or minus");
  app.add_option("--n", opt.n, "Number of vertices");
  app.add_option("--eps", opt.eps,
                 "Good-model TV tolerance; 'lattice' for the 2/n ball around the "
                 "nearest lattice profile");
  app.add_option("--samples", opt.samples, "Number of sampled maps");
  app.add_option("--seed", opt.seed, "Master seed");
  app.add_option("--out", opt.out, "Output directory");
  app.add_option("--threads", opt.threads,
                 "Worker threads (0: SOFIC_PRESSURE_THREADS or all cores)");
  app.add_option("--q", opt.q, "Alphabet size for potts-curve");
  app.add_option("--family", opt.family, "Potts family index (default: all)");
  app.add_option("--tol", opt.tol, "Solver or bisection tolerance");
  app.add_option("--eps-m", opt.eps_m, "Magnetization window half-width");
  app.add_option("--n-list", opt.n_list, "Comma-separated system sizes");
  app.add_option("--steps", opt.steps, "Glauber steps, or J steps for region");
  app.add_option("--record-every", opt.record_every, "Glauber recording interval");
  app.add_option("--r-max", opt.r_max, "Largest rank considered");
  app.add_option("--grid", opt.grid, "J grid size for verify-theoremB");
  app.add_option("--r-extra", opt.r_extra, "Extra ranks for constant-search");
  app.add_option("--window", opt.window, "Magnetization window: closed or open");
  app.add_option("--init", opt.init, "Glauber start: plus or minus");
  app.add_flag("--exhaustive", opt.exhaustive,
               "annealed: average over every map instead of sampling");
  app.set_config("--config", "", "Read options from a key = value file; flags override it");
  app.set_version_flag("--version", std::string(sofic_version()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pressure, Gibbs-state and permutation-model computations for the "
               "Ising model on free groups"};
  sofic_cli::Options opt;
  Register(app, opt);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sofic_cli::kExitInvalid;
  }

  const std::filesystem::path out_dir = opt.out;
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::ofstream(out_dir / "manifest.json", std::ios::app)) {
    std::fprintf(stderr, "error: output directory '%s' is not writable\n",
                 opt.out.c_str());
    return sofic_cli::kExitInvalid;
  }

  sofic_cli::Report report;
  int code = sofic_cli::kExitOk;
  const auto start = std::chrono::steady_clock::now();
  try {
    sofic_cli::RunCommand(opt, report);
  } catch (const sofic_cli::CommandError& e) {
    code = e.exit_code();
    report.status = code == sofic_cli::kExitInvalid ? "invalid" : "numerical-failure";
    report.failure_reason = e.what();
  } catch (const std::exception& e) {
    code = sofic_cli::kExitInvalid;
    report.status = "invalid";
    report.failure_reason = e.what();
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  sofic_cli::WriteManifest(out_dir, opt.command, opt.seed, wall, report);
  if (code != sofic_cli::kExitOk) {
    std::fprintf(stderr, "error: %s\n", report.failure_reason.c_str());
  }
  return code;
}
