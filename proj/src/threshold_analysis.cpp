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

#include "sofic/threshold_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sofic/bp_solver.hpp"
#include "sofic/error.hpp"

namespace sofic {

double Phi(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) ThrowInvalid("phi requires t > 0");
  return t * std::log(t);
}

double PhiIncrement(double coupling) {
  if (!(coupling >= 0.0) || !std::isfinite(coupling)) {
    ThrowInvalid("coupling must be finite and >= 0");
  }
  // With x = e^{2J}, y = 1/x: (1 + x) log(1 + x) - x log x
  //   = 2J + log(1 + y) + log(1 + y) / y.
  const double y = std::exp(-2.0 * coupling);
  const double tail = y > 0.0 ? std::log1p(y) / y : 1.0;
  return 2.0 * coupling + std::log1p(y) + tail;
}

DeltaPlusComparison DeltaPlusBeatsFb(const IsingParams& params) {
  params.Validate();
  DeltaPlusComparison out;
  out.margin = 2.0 * params.coupling * params.rank - PhiIncrement(params.coupling);
  out.beats = out.margin > 0.0;
  return out;
}

double Rho(double coupling) {
  if (!(coupling > 0.0) || !std::isfinite(coupling)) {
    ThrowInvalid("rho requires finite J > 0");
  }
  return 1.0 + (1.0 + std::exp(-2.0 * coupling)) / (2.0 * coupling);
}

double DaggerMargin(double coupling) {
  // 2 cosh 2J - 2 = 4 sinh^2 J.
  const double s = std::sinh(coupling);
  const double d = std::expm1(-2.0 * coupling);
  return 4.0 * coupling - 4.0 * s * s - d * d;
}

namespace {

void Track(TheoremBReport& report, double& slot, const char* check, int r,
           double coupling, double margin) {
  slot = std::min(slot, margin);
  if (!(margin > 0.0)) report.failures.push_back({check, r, coupling, margin});
}

}  // namespace

TheoremBReport VerifyTheoremB(int r_max, int grid_points) {
  if (r_max < 2) ThrowInvalid("r_max must be >= 2");
  if (grid_points < 1) ThrowInvalid("grid_points must be >= 1");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  TheoremBReport report;
  report.r_max = r_max;
  report.grid_points = grid_points;
  report.rho_margin_min = kInf;
  report.rearranged_margin_min = kInf;
  report.dagger_margin_min = kInf;
  report.taylor_margin_min = kInf;
  report.phi_margin_at_double_uniq_min = kInf;
  report.phi_margin_at_rec_min = kInf;

  for (int r = 2; r <= r_max; ++r) {
    const double j_uniq = UniquenessThreshold(r).value;
    const double j_rec = ReconstructionThreshold(r).value;
    // r log(r / (r - 1)), written as -r log(1 - 1/r).
    const double rl = -r * std::log1p(-1.0 / r);
    Track(report, report.rho_margin_min, "rho", r, 2.0 * j_uniq,
          r - Rho(2.0 * j_uniq));
    Track(report, report.rearranged_margin_min, "rearranged", r, 2.0 * j_uniq,
          2.0 * r * (r - 1.0) * (rl - 1.0) - 1.0);
    Track(report, report.taylor_margin_min, "taylor", r, 0.0,
          rl - 1.0 - 1.0 / (2.0 * r));
    Track(report, report.phi_margin_at_double_uniq_min, "phi@2Juniq", r,
          2.0 * j_uniq, DeltaPlusBeatsFb({2.0 * j_uniq, r}).margin);
    Track(report, report.phi_margin_at_rec_min, "phi@Jrec", r, j_rec,
          DeltaPlusBeatsFb({j_rec, r}).margin);
  }
  const double j_rec2 = ReconstructionThreshold(2).value;
  for (int k = 1; k <= grid_points; ++k) {
    const double j = j_rec2 * k / grid_points;
    Track(report, report.dagger_margin_min, "dagger", 2, j, DaggerMargin(j));
  }
  return report;
}

MinimalConstant FindMinimalConstant(int r, double tol) {
  if (r < 2) ThrowInvalid("r must be >= 2");
  if (!(tol > 0.0)) ThrowInvalid("tolerance must be > 0");
  const double j_uniq = UniquenessThreshold(r).value;
  auto margin = [&](double c) { return DeltaPlusBeatsFb({c * j_uniq, r}).margin; };

  double lo = 0.0;
  double hi = 2.0;
  while (!(margin(hi) > 0.0)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e9) {
      throw Error(ErrorCode::kNoConvergence,
                  "no c with positive margin found for r = " + std::to_string(r));
    }
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (margin(mid) > 0.0 ? hi : lo) = mid;
  }

  MinimalConstant out;
  out.r = r;
  out.c = hi;
  constexpr int kChecks = 400;
  const double c_max = std::max(4.0, 2.0 * hi);
  out.monotone_verified = true;
  double prev = margin(0.0);
  for (int k = 1; k <= kChecks; ++k) {
    const double m = margin(c_max * k / kChecks);
    if (!(m > prev)) out.monotone_verified = false;
    prev = m;
  }
  return out;
}

ConstantSearchResult MinimalConstantSearch(std::span<const int> r_set,
                                           double tol) {
  if (r_set.empty()) ThrowInvalid("r set must be nonempty");
  ConstantSearchResult result;
  result.sup = -std::numeric_limits<double>::infinity();
  for (int r : r_set) {
    result.rows.push_back(FindMinimalConstant(r, tol));
    if (result.rows.back().c > result.sup) {
      result.sup = result.rows.back().c;
      result.sup_r = r;
    }
  }
  return result;
}

std::string_view ToString(RegionClass c) {
  switch (c) {
    case RegionClass::kUniqueGibbs:
      return "unique-Gibbs";
    case RegionClass::kNonequilibriumTypical:
      return "nonequilibrium-typical";
    case RegionClass::kNonequilibriumAlways:
      return "nonequilibrium-always";
    case RegionClass::kUndetermined:
      return "undetermined";
  }
  return "undetermined";
}

RegionClass ClassifyRegion(const IsingParams& params) {
  params.Validate();
  const double j = params.coupling;
  const double j_uniq = UniquenessThreshold(params.rank).value;
  const double j_rec = ReconstructionThreshold(params.rank).value;
  if (j <= j_uniq) return RegionClass::kUniqueGibbs;
  if (j >= std::min(2.0 * j_uniq, j_rec) || DeltaPlusBeatsFb(params).beats) {
    return RegionClass::kNonequilibriumAlways;
  }
  if (j <= j_rec) return RegionClass::kNonequilibriumTypical;
  return RegionClass::kUndetermined;
}

std::vector<RegionPoint> RegionData(std::span<const int> r_grid,
                                    std::span<const double> j_grid) {
  if (r_grid.empty() || j_grid.empty()) ThrowInvalid("grids must be nonempty");
  std::vector<RegionPoint> out;
  out.reserve(r_grid.size() * j_grid.size());
  for (int r : r_grid) {
    for (double j : j_grid) out.push_back({r, j, ClassifyRegion({j, r})});
  }
  return out;
}

std::vector<Figure5Row> Figure5Data(int r, std::span<const double> j_grid) {
  if (j_grid.empty()) ThrowInvalid("J grid must be nonempty");
  std::vector<Figure5Row> rows;
  rows.reserve(j_grid.size());
  for (double j : j_grid) {
    if (!(j > 0.0)) ThrowInvalid("figure 5 requires J > 0");
    const IsingParams params{j, r};
    params.Validate();
    Figure5Row row;
    row.coupling = j;
    row.edge_pressure_fb = ComputePressureReport(BuildMuT(0.0, params)).edge_pressure;
    row.delta_plus_pressure = DeltaPlusPressure(params);
    const FixedPointSet roots = SolveFixedPoints(params);
    row.f_pressure_plus = FPressure(roots.t_plus.value_or(0.0), params);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sofic
