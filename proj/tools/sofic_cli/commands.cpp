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

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "sofic/sofic.h"

namespace sofic_cli {
namespace {

void Check(sofic_status s) {
  if (s == SOFIC_OK) return;
  const bool numerical = s == SOFIC_NO_CONVERGENCE || s == SOFIC_INTERNAL ||
                         s == SOFIC_BUFFER_TOO_SMALL;
  throw CommandError(numerical ? kExitNumerical : kExitInvalid,
                     std::string(sofic_status_name(s)) + ": " + sofic_last_error());
}

void Require(bool ok, const std::string& message) {
  if (!ok) throw CommandError(kExitInvalid, message);
}

template <class T>
T Resolve(const std::optional<T>& v, T fallback, const char* key, Report& report) {
  const T x = v.value_or(fallback);
  if constexpr (std::is_floating_point_v<T>) {
    Require(std::isfinite(x), std::string("--") + key + " must be finite");
    report.config[key] = JsonReal(x);
  } else {
    report.config[key] = x;
  }
  return x;
}

std::string Resolve(const std::optional<std::string>& v, const char* fallback,
                    const char* key, Report& report) {
  std::string x = v.value_or(fallback);
  report.config[key] = x;
  return x;
}

std::vector<double> Linspace(const char* name, double lo, double hi, int steps) {
  Require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi,
          std::string(name) + " grid needs finite min <= max");
  Require(steps >= 1 && steps <= 10'000'000,
          std::string(name) + " grid needs 1 <= steps <= 10^7");
  std::vector<double> grid(steps);
  for (int k = 0; k < steps; ++k) {
    grid[k] = steps == 1 ? lo : lo + (hi - lo) * k / (steps - 1);
  }
  return grid;
}

std::vector<double> TGrid(const Options& opt, Report& report, double lo, double hi,
                          int steps) {
  return Linspace("t", Resolve(opt.t_min, lo, "t-min", report),
                  Resolve(opt.t_max, hi, "t-max", report),
                  Resolve(opt.t_steps, steps, "t-steps", report));
}

double ParseReal(const std::string& text, const char* name) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  Require(used == text.size() && used > 0 && std::isfinite(v),
          std::string("--") + name + " is not a number: '" + text + "'");
  return v;
}

std::vector<int> ParseIntList(const std::string& text, const char* name) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    Require(used == item.size() && used > 0,
            std::string("--") + name + " must be a comma-separated integer list");
    out.push_back(v);
  }
  Require(!out.empty(), std::string("--") + name + " must not be empty");
  return out;
}

using IsingChainPtr =
    std::unique_ptr<sofic_ising_chain, decltype(&sofic_ising_chain_destroy)>;
using ModelPtr = std::unique_ptr<sofic_nn_model, decltype(&sofic_nn_model_destroy)>;
using MapPtr = std::unique_ptr<sofic_map, decltype(&sofic_map_destroy)>;

IsingChainPtr MakeChain(double t, double coupling, int r) {
  sofic_ising_chain* c = nullptr;
  Check(sofic_ising_chain_create(t, coupling, r, &c));
  return {c, &sofic_ising_chain_destroy};
}

std::filesystem::path OutDir(const Options& opt) { return opt.out; }

void Thresholds(const Options& opt, Report& report) {
  const int r = Resolve(opt.r, 2, "r", report);
  sofic_threshold uniq{}, rec{};
  Check(sofic_uniqueness_threshold(r, &uniq));
  Check(sofic_reconstruction_threshold(r, &rec));
  CsvTable table({"r", "J_uniq", "J_rec"});
  table.Add(r).Add(uniq.value).Add(rec.value).EndRow();
  WriteCsv(OutDir(opt), "thresholds.csv", table, report);
  report.summary["J_uniq"] = JsonReal(uniq.value);
  report.summary["J_rec"] = JsonReal(rec.value);
  report.summary["degenerate"] = uniq.degenerate != 0;
  std::printf("J_uniq(%d) = %s\nJ_rec(%d) = %s\n", r, FormatReal(uniq.value).c_str(),
              r, FormatReal(rec.value).c_str());
}

void PressureCurve(const Options& opt, Report& report) {
  const int r = Resolve(opt.r, 2, "r", report);
  const double j = Resolve(opt.coupling, 0.5, "J", report);
  const std::vector<double> grid = TGrid(opt, report, -2.0, 2.0, 81);
  CsvTable table({"t", "alpha", "energy", "f_invariant", "f_pressure", "edge_pressure"});
  for (double t : grid) {
    const IsingChainPtr chain = MakeChain(t, j, r);
    sofic_ising_chain_info info{};
    sofic_pressure_report p{};
    Check(sofic_ising_chain_get_info(chain.get(), &info));
    Check(sofic_ising_chain_pressure(chain.get(), &p));
    table.Add(t).Add(info.alpha).Add(p.energy).Add(p.f_invariant).Add(p.f_pressure)
        .Add(p.edge_pressure).EndRow();
  }
  WriteCsv(OutDir(opt), "pressure_curve.csv", table, report);
}

void FixedPoints(const Options& opt, Report& report) {
  const int r = Resolve(opt.r, 2, "r", report);
  const double j = Resolve(opt.coupling, 0.5, "J", report);
  const double tol = Resolve(opt.tol, 1e-12, "tol", report);
  Require(tol > 0.0, "--tol must be > 0");
  sofic_fixed_points fp{};
  Check(sofic_solve_fixed_points(j, r, tol, &fp));
  CsvTable table({"root", "residual"});
  if (fp.has_pair) table.Add(fp.t_minus).Add(fp.residual_minus).EndRow();
  table.Add(fp.t_zero).Add(fp.residual_zero).EndRow();
  if (fp.has_pair) table.Add(fp.t_plus).Add(fp.residual_plus).EndRow();
  WriteCsv(OutDir(opt), "fixed_points.csv", table, report);
  report.summary["has_pair"] = fp.has_pair != 0;
  if (fp.has_pair) report.summary["t_plus"] = fp.t_plus;
  report.summary["extra_positive_roots"] = fp.extra_positive_roots;
}

void Region(const Options& opt, Report& report) {
  const int r_max = Resolve(opt.r_max, 6, "r-max", report);
  const double j_max = Resolve(opt.j_max, 1.5, "J-max", report);
  const std::int64_t steps = Resolve<std::int64_t>(opt.steps, 100, "steps", report);
  Require(r_max >= 2 && r_max <= 100'000, "--r-max must lie in [2, 10^5]");
  Require(j_max > 0.0, "--J-max must be > 0");
  Require(steps >= 1 && steps <= 1'000'000, "--steps must lie in [1, 10^6]");
  CsvTable table({"r", "J", "class"});
  for (int r = 2; r <= r_max; ++r) {
    for (std::int64_t k = 1; k <= steps; ++k) {
      const double j = j_max * static_cast<double>(k) / static_cast<double>(steps);
      sofic_region region{};
      Check(sofic_classify_region(j, r, &region));
      table.Add(r).Add(j).Add(std::string(sofic_region_name(region))).EndRow();
    }
  }
  WriteCsv(OutDir(opt), "region.csv", table, report);
}

void Figure5(const Options& opt, Report& report) {
  const int r = Resolve(opt.r, 2, "r", report);
  const double lo = Resolve(opt.j_min, 0.05, "J-min", report);
  const double hi = Resolve(opt.j_max, 3.0, "J-max", report);
  const int steps = Resolve(opt.j_steps, 60, "J-steps", report);
  Require(lo > 0.0, "--J-min must be > 0");
  CsvTable table({"T", "P_edge_FB", "P_delta_plus", "P_f_plus"});
  for (double j : Linspace("J", lo, hi, steps)) {
    sofic_figure5_row row{};
    Check(sofic_figure5_row_compute(j, r, &row));
    table.Add(1.0 / j).Add(row.edge_pressure_fb).Add(row.delta_plus_pressure)
        .Add(row.f_pressure_plus).EndRow();
  }
  WriteCsv(OutDir(opt), "figure5.csv", table, report);
}

void PottsCurve(const Options& opt, Report& report) {
  const int q = Resolve(opt.q, 3, "q", report);
  const int r = Resolve(opt.r, 2, "r", report);
  const double j = Resolve(opt.coupling, 1.0, "J", report);
  Require(q >= 2 && q <= 64, "--q must lie in [2, 64]");
  std::vector<int> families;
  if (opt.family) {
    Require(*opt.family >= 1 && *opt.family <= q - 1, "--family must lie in [1, q - 1]");
    families.push_back(*opt.family);
    report.config["family"] = *opt.family;
  } else {
    for (int k = 1; k < q; ++k) families.push_back(k);
    report.config["family"] = "all";
  }
  const std::vector<double> grid = TGrid(opt, report, -1.0, 1.0, 41);
  sofic_nn_model* raw = nullptr;
  Check(sofic_nn_model_create_potts(q, r, j, &raw));
  const ModelPtr model(raw, &sofic_nn_model_destroy);
  CsvTable table({"t", "family", "f_pressure"});
  for (int family : families) {
    for (double t : grid) {
      double p = 0.0;
      Check(sofic_potts_family_pressure(model.get(), family, t, &p));
      table.Add(t).Add(family).Add(p).EndRow();
    }
  }
  WriteCsv(OutDir(opt), "potts_curve.csv", table, report);
}

void VerifyTheoremB(const Options& opt, Report& report) {
  const int r_max = Resolve(opt.r_max, 100, "r-max", report);
  const int grid = Resolve(opt.grid, 10'000, "grid", report);
  Require(r_max >= 2 && r_max <= 1'000'000, "--r-max must lie in [2, 10^6]");
  Require(grid >= 1 && grid <= 100'000'000, "--grid must lie in [1, 10^8]");
  sofic_theorem_b_report rep{};
  Check(sofic_verify_theorem_b(r_max, grid, &rep));
  CsvTable table({"check", "min_margin", "holds"});
  const std::pair<const char*, double> rows[] = {
      {"rho_at_2J_uniq", rep.rho_margin_min},
      {"rearranged", rep.rearranged_margin_min},
      {"taylor", rep.taylor_margin_min},
      {"phi_at_2J_uniq", rep.phi_margin_at_double_uniq_min},
      {"phi_at_J_rec", rep.phi_margin_at_rec_min},
      {"dagger", rep.dagger_margin_min},
  };
  for (const auto& [name, margin] : rows) {
    table.Add(std::string(name)).Add(margin).Add(std::string(margin > 0 ? "true" : "false"))
        .EndRow();
    report.summary[name] = JsonReal(margin);
  }
  WriteCsv(OutDir(opt), "theoremB.csv", table, report);
  report.summary["failures"] = rep.failure_count;
  if (rep.failure_count > 0) {
    throw CommandError(kExitNumerical,
                       std::string("inequality '") + rep.first_failure_check +
                           "' fails at r = " + std::to_string(rep.first_failure_r) +
                           ", J = " + FormatReal(rep.first_failure_coupling) +
                           " (margin " + FormatReal(rep.first_failure_margin) + ")");
  }
}

void ConstantSearch(const Options& opt, Report& report) {
  const int r_max = Resolve(opt.r_max, 50, "r-max", report);
  const double tol = Resolve(opt.tol, 1e-4, "tol", report);
  const std::vector<int> extra =
      ParseIntList(Resolve(opt.r_extra, "10000", "r-extra", report), "r-extra");
  Require(r_max >= 2 && r_max <= 1'000'000, "--r-max must lie in [2, 10^6]");
  Require(tol > 0.0 && tol < 1.0, "--tol must lie in (0, 1)");
  std::vector<int> ranks;
  for (int r = 2; r <= r_max; ++r) ranks.push_back(r);
  for (int r : extra) {
    Require(r >= 2, "--r-extra entries must be >= 2");
    ranks.push_back(r);
  }
  CsvTable table({"r", "c", "monotone_verified"});
  double sup = -1.0;
  int sup_r = 0;
  std::string not_monotone;
  for (int r : ranks) {
    sofic_minimal_constant c{};
    Check(sofic_minimal_constant_find(r, tol, &c));
    table.Add(r).Add(c.c).Add(std::string(c.monotone_verified ? "true" : "false")).EndRow();
    if (r <= r_max && c.c > sup) {
      sup = c.c;
      sup_r = r;
    }
    if (!c.monotone_verified && not_monotone.empty()) not_monotone = std::to_string(r);
  }
  WriteCsv(OutDir(opt), "constants.csv", table, report);
  report.summary["sup_c"] = sup;
  report.summary["sup_r"] = sup_r;
  std::printf("sup of c(r) over r in [2, %d]: %s at r = %d\n", r_max,
              FormatReal(sup).c_str(), sup_r);
  if (!not_monotone.empty()) {
    throw CommandError(kExitNumerical,
                       "margin is not increasing in J for r = " + not_monotone +
                           "; the bisection result is not trustworthy");
  }
}

void Annealed(const Options& opt, Report& report) {
  const int n = Resolve(opt.n, 2000, "n", report);
  const int r = Resolve(opt.r, 2, "r", report);
  const double j = Resolve(opt.coupling, 0.5, "J", report);
  const std::string t_text = Resolve(opt.t, "0", "t", report);
  const std::string eps_text = Resolve(opt.eps, "lattice", "eps", report);
  const std::int64_t samples = Resolve<std::int64_t>(opt.samples, 0, "samples", report);
  report.config["exhaustive"] = opt.exhaustive;
  Require(n >= 1 && n <= 1'000'000, "--n must lie in [1, 10^6]");
  Require(samples >= 0, "--samples must be >= 0");

  double t = 0.0;
  if (t_text == "plus" || t_text == "minus") {
    sofic_fixed_points fp{};
    Check(sofic_solve_fixed_points(j, r, 0.0, &fp));
    Require(fp.has_pair != 0, "--t " + t_text + " needs J above the uniqueness threshold");
    t = t_text == "plus" ? fp.t_plus : fp.t_minus;
  } else {
    t = ParseReal(t_text, "t");
  }
  const IsingChainPtr chain = MakeChain(t, j, r);
  sofic_pressure_report p{};
  Check(sofic_ising_chain_pressure(chain.get(), &p));

  const bool lattice = eps_text == "lattice";
  double eps = 0.0;
  double log_count = 0.0;
  if (lattice) {
    sofic_lattice_profile profile{};
    Check(sofic_nearest_lattice_profile(n, chain.get(), &profile));
    eps = 2.0 / n;
    Check(sofic_annealed_log_count_target(n, r, profile.law, eps, &log_count));
    report.summary["lattice_tv"] = profile.tv;
  } else {
    eps = ParseReal(eps_text, "eps");
    Require(eps >= 0.0, "--eps must be >= 0");
    Check(sofic_annealed_log_count(n, r, chain.get(), eps, &log_count));
  }
  const double rate = log_count / n;
  CsvTable table({"n", "r", "J", "t", "eps", "ball", "log_expected_count", "rate",
                  "f_invariant", "rate_minus_f"});
  table.Add(n).Add(r).Add(j).Add(t).Add(eps)
      .Add(std::string(lattice ? "nearest-lattice" : "chain"))
      .Add(log_count).Add(rate).Add(p.f_invariant).Add(rate - p.f_invariant).EndRow();
  WriteCsv(OutDir(opt), "annealed.csv", table, report);
  report.summary["rate"] = JsonReal(rate);
  report.summary["f_invariant"] = JsonReal(p.f_invariant);

  if (samples > 0 || opt.exhaustive) {
    Require(!lattice, "second moments need a numeric --eps");
    sofic_moment_estimate m{};
    if (opt.exhaustive) {
      Check(sofic_second_moment_exhaustive(n, r, chain.get(), eps, opt.threads, &m));
    } else {
      Check(sofic_second_moment_mc(n, r, chain.get(), eps, samples, opt.seed,
                                   opt.threads, &m));
    }
    CsvTable moments({"n", "samples", "exhaustive", "mean", "mean_sq", "std_error",
                      "pz_ratio"});
    moments.Add(n).Add(m.samples).Add(std::string(m.exhaustive ? "true" : "false"))
        .Add(m.mean).Add(m.mean_sq).Add(m.std_error).Add(m.pz_ratio).EndRow();
    WriteCsv(OutDir(opt), "moments.csv", moments, report);
    report.summary["pz_ratio"] = m.pz_ratio;
  }
}

void Simulate(const Options& opt, Report& report) {
  const int n = Resolve(opt.n, 1000, "n", report);
  const int r = Resolve(opt.r, 2, "r", report);
  const double j = Resolve(opt.coupling, 1.2, "J", report);
  const std::int64_t steps = Resolve<std::int64_t>(opt.steps, 100'000, "steps", report);
  const std::int64_t every =
      Resolve<std::int64_t>(opt.record_every, 1000, "record-every", report);
  report.config["init"] = opt.init;
  Require(n >= 1 && n <= 100'000'000, "--n must lie in [1, 10^8]");
  Require(steps >= 0, "--steps must be >= 0");
  Require(every >= 1, "--record-every must be >= 1");
  Require(steps / every < 100'000'000, "too many records; raise --record-every");
  Require(opt.init == "plus" || opt.init == "minus", "--init must be plus or minus");

  sofic_map* raw = nullptr;
  Check(sofic_map_sample(n, r, opt.seed, 0, &raw));
  const MapPtr map(raw, &sofic_map_destroy);
  std::vector<std::int8_t> init(n, opt.init == "plus" ? 1 : -1);
  std::size_t count = 0;
  Check(sofic_glauber_record_count(steps, every, &count));
  std::vector<std::int64_t> step_out(count);
  std::vector<double> mag(count);
  std::size_t written = 0;
  Check(sofic_glauber_run(map.get(), j, steps, opt.seed, every, init.data(),
                          step_out.data(), mag.data(), count, &written));
  CsvTable table({"step", "magnetization"});
  for (std::size_t k = 0; k < written; ++k) table.Add(step_out[k]).Add(mag[k]).EndRow();
  WriteCsv(OutDir(opt), "simulate.csv", table, report);
  report.summary["final_magnetization"] = mag[written - 1];
}

void Coexistence(const Options& opt, Report& report) {
  const std::vector<int> ns =
      ParseIntList(Resolve(opt.n_list, "8,12,16,20", "n-list", report), "n-list");
  const int r = Resolve(opt.r, 2, "r", report);
  const double j = Resolve(opt.coupling, 0.5, "J", report);
  const double eps_m = Resolve(opt.eps_m, 0.1, "eps-m", report);
  const std::int64_t samples = Resolve<std::int64_t>(opt.samples, 100, "samples", report);
  report.config["window"] = opt.window;
  Require(opt.window == "closed" || opt.window == "open", "--window must be closed or open");
  Require(samples >= 1, "--samples must be >= 1");
  std::vector<sofic_coexistence_row> rows(ns.size());
  Check(sofic_coexistence(ns.data(), ns.size(), r, j, eps_m, samples, opt.seed,
                          opt.threads, opt.window == "open" ? 1 : 0, rows.data()));
  CsvTable table({"n", "mean_weight", "std_error", "samples"});
  for (const sofic_coexistence_row& row : rows) {
    table.Add(row.n).Add(row.mean_weight).Add(row.std_error).Add(row.samples).EndRow();
  }
  WriteCsv(OutDir(opt), "coexistence.csv", table, report);
}

using Handler = std::function<void(const Options&, Report&)>;

const std::map<std::string, Handler>& Handlers() {
  static const std::map<std::string, Handler> handlers = {
      {"thresholds", Thresholds},
      {"pressure-curve", PressureCurve},
      {"fixed-points", FixedPoints},
      {"region", Region},
      {"figure5", Figure5},
      {"potts-curve", PottsCurve},
      {"verify-theoremB", VerifyTheoremB},
      {"constant-search", ConstantSearch},
      {"annealed", Annealed},
      {"simulate", Simulate},
      {"coexistence", Coexistence},
  };
  return handlers;
}

}  // namespace

const std::vector<std::string>& CommandNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, handler] : Handlers()) v.push_back(name);
    return v;
  }();
  return names;
}

void RunCommand(const Options& opt, Report& report) {
  const auto it = Handlers().find(opt.command);
  Require(it != Handlers().end(), "unknown command '" + opt.command + "'");
  report.config["seed"] = opt.seed;
  report.config["out"] = opt.out;
  report.config["threads"] = sofic_resolve_threads(opt.threads);
  it->second(opt, report);
}

}  // namespace sofic_cli
