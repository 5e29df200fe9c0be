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

// Subcommands of the sofic-pressure CLI.

#ifndef SOFIC_CLI_COMMANDS_HPP_
#define SOFIC_CLI_COMMANDS_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "report.hpp"

namespace sofic_cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;

const std::vector<std::string>& CommandNames();

// Unset optionals take a per-command default.
struct Options {
  std::string command;
  std::optional<int> r;
  std::optional<double> coupling;
  std::optional<double> j_min, j_max;
  std::optional<int> j_steps;
  std::optional<double> t_min, t_max;
  std::optional<int> t_steps;
  std::optional<std::string> t;  // annealed: a number, "plus" or "minus"
  std::optional<int> n;
  std::optional<std::string> eps;  // a number, or "lattice" for annealed
  std::optional<std::int64_t> samples;
  std::uint64_t seed = 1;
  std::string out = "out";
  int threads = 0;
  std::optional<int> q;
  std::optional<int> family;
  std::optional<double> tol;
  std::optional<double> eps_m;
  std::optional<std::string> n_list;
  std::optional<std::int64_t> steps;
  std::optional<std::int64_t> record_every;
  std::optional<int> r_max;
  std::optional<int> grid;
  std::optional<std::string> r_extra;
  std::string window = "closed";
  std::string init = "plus";
  bool exhaustive = false;
};

class CommandError : public std::runtime_error {
 public:
  CommandError(int exit_code, const std::string& what)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

// Runs opt.command, writing CSVs into opt.out and filling report. Throws
// CommandError on failure.
void RunCommand(const Options& opt, Report& report);

}  // namespace sofic_cli

#endif  // SOFIC_CLI_COMMANDS_HPP_
