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

// Inequalities comparing the free boundary state against the plus state and
// the all-plus point mass, and the region / figure data built from them.

#ifndef SOFIC_THRESHOLD_ANALYSIS_HPP_
#define SOFIC_THRESHOLD_ANALYSIS_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sofic/ising_analytics.hpp"

namespace sofic {

// t log t for t > 0.
double Phi(double t);

struct DeltaPlusComparison {
  bool beats = false;
  // 2Jr - [phi(1 + e^{2J}) - phi(e^{2J})]; positive iff P(delta_+) exceeds the
  // edge bound of the free boundary state.
  double margin = 0.0;
};

DeltaPlusComparison DeltaPlusBeatsFb(const IsingParams& params);

// phi(1 + e^{2J}) - phi(e^{2J}), evaluated without cancellation at large J.
double PhiIncrement(double coupling);

// 1 + (1 + e^{-2J}) / (2J) for J > 0.
double Rho(double coupling);

struct TheoremBFailure {
  std::string check;
  int r = 0;
  double coupling = 0.0;
  double margin = 0.0;
};

struct TheoremBReport {
  int r_max = 0;
  int grid_points = 0;
  // Minimum over r in [2, r_max] of r - rho(2 J_uniq(r)).
  double rho_margin_min = 0.0;
  // Minimum over r of 2r(r-1)(r log(r/(r-1)) - 1) - 1.
  double rearranged_margin_min = 0.0;
  // Minimum over the J grid of (4J + 2) - [2 cosh 2J + (e^{-2J} - 1)^2].
  double dagger_margin_min = 0.0;
  // Minimum over r of r log(r/(r-1)) - 1 - 1/(2r).
  double taylor_margin_min = 0.0;
  // Minima over r of the phi-condition margin at J = 2 J_uniq(r) and J_rec(r).
  double phi_margin_at_double_uniq_min = 0.0;
  double phi_margin_at_rec_min = 0.0;
  std::vector<TheoremBFailure> failures;

  bool ok() const { return failures.empty(); }
};

// Checks the inequalities behind the two sufficient conditions for every
// 2 <= r <= r_max and on grid_points equally spaced J in (0, J_rec(2)].
TheoremBReport VerifyTheoremB(int r_max, int grid_points);

// 4J - 4 sinh^2 J - (e^{-2J} - 1)^2, the (4J + 2) - RHS gap in stable form.
double DaggerMargin(double coupling);

inline constexpr double kDefaultConstantTol = 1e-4;

struct MinimalConstant {
  int r = 0;
  double c = 0.0;  // upper end of the final bisection bracket
  // The phi-margin was strictly increasing along the checked J grid.
  bool monotone_verified = false;
};

// Smallest c (to within tol) with phi-margin > 0 for all J >= c J_uniq(r).
MinimalConstant FindMinimalConstant(int r, double tol = kDefaultConstantTol);

struct ConstantSearchResult {
  std::vector<MinimalConstant> rows;
  double sup = 0.0;
  int sup_r = 0;
};

ConstantSearchResult MinimalConstantSearch(std::span<const int> r_set,
                                           double tol = kDefaultConstantTol);

enum class RegionClass {
  kUniqueGibbs,
  kNonequilibriumTypical,
  kNonequilibriumAlways,
  kUndetermined,
};

std::string_view ToString(RegionClass c);

RegionClass ClassifyRegion(const IsingParams& params);

struct RegionPoint {
  int r = 0;
  double coupling = 0.0;
  RegionClass classification = RegionClass::kUndetermined;
};

// Row-major over (r_grid, J_grid), r outer.
std::vector<RegionPoint> RegionData(std::span<const int> r_grid,
                                    std::span<const double> j_grid);

struct Figure5Row {
  double coupling = 0.0;
  double edge_pressure_fb = 0.0;
  double delta_plus_pressure = 0.0;
  double f_pressure_plus = 0.0;
};

// J values must be > 0. The plus column falls back to mu_0 where no positive
// fixed point exists.
std::vector<Figure5Row> Figure5Data(int r, std::span<const double> j_grid);

}  // namespace sofic

#endif  // SOFIC_THRESHOLD_ANALYSIS_HPP_
