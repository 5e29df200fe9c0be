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

#include "sofic/bp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sofic/error.hpp"
#include "sofic/numerics.hpp"

namespace sofic {

double FixedPointRhs(double t, const IsingParams& params) {
  params.Validate();
  const double j = params.coupling;
  const double half_branching = (2.0 * params.rank - 1.0) / 2.0;
  // rhs is odd; evaluating at |t| keeps the log1p argument positive.
  const double a = std::fabs(t);
  double value;
  if (a + j < 300.0) {
    // cosh(a+J) - cosh(a-J) = 2 sinh a sinh J; exact near a = 0.
    const double ratio_minus_one =
        2.0 * std::sinh(a) * std::sinh(j) / std::cosh(a - j);
    value = half_branching * std::log1p(ratio_minus_one);
  } else {
    value = half_branching * (LogCosh(a + j) - LogCosh(a - j));
  }
  return std::copysign(value, t);
}

namespace {

// g(t) / t for g(t) = rhs(t) - t, extended to t = 0 by g'(0). Its zeros on
// t > 0 are exactly the positive roots of g, and it is positive near 0 iff
// (2r - 1) tanh J > 1.
double ScaledGap(double t, const IsingParams& params) {
  if (t == 0.0) {
    return (2.0 * params.rank - 1.0) * std::tanh(params.coupling) - 1.0;
  }
  return (FixedPointRhs(t, params) - t) / t;
}

double Gap(double t, const IsingParams& params) {
  return FixedPointRhs(t, params) - t;
}

// Bisection to full double precision on [lo, hi] where ScaledGap changes
// sign; positive_at_lo is the sign of ScaledGap at lo.
double Bisect(double lo, double hi, bool positive_at_lo,
              const IsingParams& params) {
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((ScaledGap(mid, params) > 0.0) == positive_at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::fabs(Gap(lo, params)) <= std::fabs(Gap(hi, params)) ? lo : hi;
}

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  bool positive_at_lo = true;
};

// Sign changes of ScaledGap found by a geometric scan of (0, (2r - 1)J].
std::vector<Bracket> PositiveBrackets(const IsingParams& params) {
  const double upper = (2.0 * params.rank - 1.0) * params.coupling;
  std::vector<double> grid{0.0};
  for (double t = 1e-6; t < upper; t *= 1.05) grid.push_back(t);
  grid.push_back(upper);

  std::vector<Bracket> brackets;
  double prev_t = grid.front();
  double prev_v = ScaledGap(prev_t, params);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double t = grid[i];
    const double v = ScaledGap(t, params);
    if (v == 0.0) {
      brackets.push_back({t, t, true});
    } else if (prev_v != 0.0 && (prev_v > 0.0) != (v > 0.0)) {
      brackets.push_back({prev_t, t, prev_v > 0.0});
    }
    prev_t = t;
    prev_v = v;
  }
  return brackets;
}

double Resolve(const Bracket& b, const IsingParams& params) {
  if (b.lo == b.hi) return b.lo;
  return Bisect(b.lo, b.hi, b.positive_at_lo, params);
}

}  // namespace

FixedPointSet SolveFixedPoints(const IsingParams& params, double tol) {
  params.Validate();
  if (!(tol > 0.0)) ThrowInvalid("tolerance must be > 0");

  FixedPointSet set;
  set.residual_zero = std::fabs(Gap(0.0, params));

  const Threshold uniq = UniquenessThreshold(params.rank);
  if (uniq.degenerate || params.coupling <= uniq.value) return set;

  const std::vector<Bracket> brackets = PositiveBrackets(params);
  if (brackets.empty()) {
    throw Error(ErrorCode::kNoConvergence,
                "no positive fixed point bracketed above the uniqueness "
                "threshold (J = " + FormatNumber(params.coupling) + ")");
  }
  const double t_plus = Resolve(brackets.front(), params);
  // g(t)/t is even, so the mirrored bracket holds the negative root. It is
  // bisected independently instead of negating t_plus.
  const Bracket& first = brackets.front();
  const double t_minus =
      Resolve({-first.hi, -first.lo, !first.positive_at_lo}, params);

  set.t_plus = t_plus;
  set.t_minus = t_minus;
  set.residual_plus = std::fabs(Gap(t_plus, params));
  set.residual_minus = std::fabs(Gap(t_minus, params));
  for (std::size_t i = 1; i < brackets.size(); ++i) {
    set.extra_positive_roots.push_back(Resolve(brackets[i], params));
  }

  const double worst = std::max(set.residual_plus, set.residual_minus);
  if (worst > tol) {
    throw Error(ErrorCode::kNoConvergence,
                "fixed-point residual " + FormatNumber(worst) +
                    " exceeds tolerance " + FormatNumber(tol));
  }
  return set;
}

Threshold UniquenessThreshold(int rank) {
  if (rank < 1) ThrowInvalid("rank r must be >= 1");
  if (rank == 1) return {std::numeric_limits<double>::infinity(), true};
  return {std::atanh(1.0 / (2.0 * rank - 1.0)), false};
}

Threshold ReconstructionThreshold(int rank) {
  if (rank < 1) ThrowInvalid("rank r must be >= 1");
  if (rank == 1) return {std::numeric_limits<double>::infinity(), true};
  return {std::atanh(1.0 / std::sqrt(2.0 * rank - 1.0)), false};
}

double GibbsConditionalResidual(const IsingChain& chain) {
  const IsingParams& params = chain.params;
  params.Validate();
  const double j = params.coupling;
  const double t = chain.t;
  const int degree = 2 * params.rank;

  // Logs of the kernel entries in overflow-safe form.
  const double log_beta_plus = -Softplus(2.0 * (j + t));    // P(+ -> -)
  const double log_stay_plus = -Softplus(-2.0 * (j + t));   // P(+ -> +)
  const double log_beta_minus = -Softplus(2.0 * (j - t));   // P(- -> +)
  const double log_stay_minus = -Softplus(-2.0 * (j - t));  // P(- -> -)

  // log((1 - alpha) / alpha) = log(e^{-2J} + e^{2t}) - log(e^{-2J} + e^{-2t}).
  const double a_plus[2] = {-2.0 * j, 2.0 * t};
  const double a_minus[2] = {-2.0 * j, -2.0 * t};
  const double log_prior_ratio = LogSumExp(a_plus) - LogSumExp(a_minus);

  double worst = 0.0;
  for (int k = 0; k <= degree; ++k) {  // k neighbours are +1
    const double logit = log_prior_ratio +
                         k * (log_stay_plus - log_beta_minus) +
                         (degree - k) * (log_beta_plus - log_stay_minus);
    const double chain_prob = Logistic(logit);
    const double spin_sum = 2.0 * k - degree;
    const double boltzmann = Logistic(2.0 * j * spin_sum);
    worst = std::max(worst, std::fabs(chain_prob - boltzmann));
  }
  return worst;
}

}  // namespace sofic
