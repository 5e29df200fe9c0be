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

// Homogeneous Markov Gibbs states of the zero-field Ising model on the
// 2r-regular tree: the scalar fixed-point equation for the boundary field t,
// the uniqueness and reconstruction thresholds, and a DLR check on a star.

#ifndef SOFIC_BP_SOLVER_HPP_
#define SOFIC_BP_SOLVER_HPP_

#include <optional>
#include <vector>

#include "sofic/ising_analytics.hpp"

namespace sofic {

// ((2r - 1) / 2) log(cosh(t + J) / cosh(t - J)).
double FixedPointRhs(double t, const IsingParams& params);

struct FixedPointSet {
  double t_zero = 0.0;
  std::optional<double> t_plus;
  std::optional<double> t_minus;
  // |t - rhs(t)| for t_zero, t_plus and t_minus (the latter two only when
  // present).
  double residual_zero = 0.0;
  double residual_plus = 0.0;
  double residual_minus = 0.0;
  // Positive roots beyond the first. Expected to be empty; the scan reports
  // rather than assumes uniqueness of the positive root.
  std::vector<double> extra_positive_roots;

  bool has_pair() const { return t_plus.has_value(); }
};

inline constexpr double kDefaultFixedPointTol = 1e-12;

// All solutions of t = rhs(t). t = 0 is always present; the pair t_+ = -t_-
// is present iff J > J_uniq(r) (the boundary J = J_uniq counts as uniqueness).
// Throws if tol <= 0, or kNoConvergence if a bracketed root cannot be
// resolved to within tol.
FixedPointSet SolveFixedPoints(const IsingParams& params,
                               double tol = kDefaultFixedPointTol);

struct Threshold {
  double value = 0.0;
  // Set for r = 1, where the threshold is +inf.
  bool degenerate = false;
};

// arctanh(1 / (2r - 1)), equal to (1/2) log(r / (r - 1)).
Threshold UniquenessThreshold(int rank);

// arctanh((2r - 1)^{-1/2}).
Threshold ReconstructionThreshold(int rank);

// Maximum over neighbour spin patterns of a star (centre plus 2r neighbours)
// of |P_chain(centre = +1 | pattern) - e^{JS} / (e^{JS} + e^{-JS})|, S the
// neighbour spin sum. Zero up to rounding iff chain.t solves the fixed-point
// equation.
double GibbsConditionalResidual(const IsingChain& chain);

}  // namespace sofic

#endif  // SOFIC_BP_SOLVER_HPP_
