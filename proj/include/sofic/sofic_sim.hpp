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

// Random permutation models of the rank-r free group acting on {0, ..., n-1}:
// sampling, Ising energies, exact enumeration over all 2^n spin
// configurations, good-model counts, the exact annealed first moment, Monte
// Carlo second moments, and heat-bath Glauber dynamics.
//
// Spins are stored as -1 / +1. A configuration x is a good model for an Ising
// chain at tolerance eps when, for every generator i, the empirical law of
// (x_v, x_{sigma_i(v)}) is within total variation eps of the chain's edge
// marginal.

#ifndef SOFIC_SOFIC_SIM_HPP_
#define SOFIC_SOFIC_SIM_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sofic/ising_analytics.hpp"
#include "sofic/rng.hpp"

namespace sofic {

inline constexpr int kMaxEnumerationSize = 28;
inline constexpr int kMaxExhaustiveSize = 5;

struct SoficMap {
  int n = 0;
  std::vector<std::vector<int>> perms;

  int rank() const { return static_cast<int>(perms.size()); }
  // Each perm must be a bijection of {0, ..., n-1}.
  void Validate() const;
  std::vector<int> Inverse(int generator) const;
};

struct SpinConfig {
  std::vector<std::int8_t> spins;

  static SpinConfig AllPlus(int n) { return {std::vector<std::int8_t>(n, 1)}; }
  int size() const { return static_cast<int>(spins.size()); }
  double Magnetization() const;
};

// Pair counts for one generator, in the order (++, +-, -+, --).
using PairCounts = std::array<std::int64_t, 4>;

struct TypeProfile {
  int n = 0;
  int n_plus = 0;
  std::vector<PairCounts> pairs;  // one entry per generator

  // Row and column sums match n_plus and n - n_plus.
  void Validate() const;
};

TypeProfile ProfileOf(const SoficMap& sigma, const SpinConfig& x);

// Joint law of (x_e, x_{s_i}) under the chain, order (++, +-, -+, --).
std::array<double, 4> PairLaw(const IsingChain& chain);

// TV distance between the empirical pair law of counts and target.
double PairTv(const PairCounts& counts, int n, const std::array<double, 4>& target);

// r independent uniform permutations (Fisher-Yates).
SoficMap SampleHom(int n, int r, CounterRng& rng);
SoficMap SampleHom(int n, int r, std::uint64_t seed, std::uint64_t stream = 0);

// U = -J sum_{i, v} x_v x_{sigma_i(v)}.
double TotalEnergy(const SoficMap& sigma, const SpinConfig& x, double coupling);

// log sum_x exp(-U(x)) over all 2^n configurations. Throws kTooLarge for
// n > kMaxEnumerationSize.
double LogPartitionExact(const SoficMap& sigma, double coupling);

std::uint64_t CountGoodModels(const SoficMap& sigma, const IsingChain& chain,
                              double eps);

// log E|Omega| over uniform sigma in Hom(F_r, Sym(n)) of the number of
// configurations whose per-generator pair law is within TV eps of target.
// Exact up to floating-point rounding; works for n in the thousands.
double AnnealedLogCount(int n, int r, const std::array<double, 4>& target,
                        double eps);
double AnnealedLogCountExact(int n, int r, const IsingChain& chain, double eps);

struct LatticeProfile {
  int n_plus = 0;
  int a_plus_plus = 0;
  double tv = 0.0;  // distance to the chain's pair law
  std::array<double, 4> law{};
};

// The realizable single-generator profile closest in TV to the chain's pair
// law (smallest (n_plus, a_plus_plus) on ties).
LatticeProfile NearestLatticeProfile(int n, const IsingChain& chain);

struct MomentEstimate {
  double mean = 0.0;       // mean |Omega|
  double mean_sq = 0.0;    // mean |Omega|^2
  double std_error = 0.0;  // of mean, zero in exhaustive mode
  double pz_ratio = 0.0;   // mean^2 / mean_sq, 0 if every count is 0
  std::int64_t samples = 0;
  bool exhaustive = false;
};

// samples independent sigma, sample k drawn from stream k of seed.
MomentEstimate SecondMomentMC(int n, int r, const IsingChain& chain, double eps,
                              std::int64_t samples, std::uint64_t seed,
                              int threads = 1);

// Every sigma in Sym(n)^r, n <= kMaxExhaustiveSize.
MomentEstimate SecondMomentExhaustive(int n, int r, const IsingChain& chain,
                                      double eps, int threads = 1);

// exp(J S) / (2 cosh(J S)).
double HeatBathPlusProbability(double coupling, int spin_sum);

struct Trajectory {
  std::vector<std::int64_t> steps;
  std::vector<double> magnetization;
};

// Single-site heat-bath updates at uniformly chosen sites, recording the
// magnetization at step 0 and every record_every steps. Starts from all-plus
// unless an initial configuration is given.
Trajectory GlauberRun(const SoficMap& sigma, double coupling, std::int64_t steps,
                      std::uint64_t seed, std::int64_t record_every,
                      const std::optional<SpinConfig>& initial = std::nullopt);

enum class WindowBoundary { kClosed, kOpen };

// Boltzmann weight of {x : |m(x)| <= eps_m} (or < for kOpen), exact.
double CoexistenceWeightExact(const SoficMap& sigma, double coupling, double eps_m,
                              WindowBoundary boundary = WindowBoundary::kClosed);

struct CoexistenceRow {
  int n = 0;
  double mean_weight = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

// For each n, samples sigma drawn from streams (n << 32) + k of seed.
std::vector<CoexistenceRow> CoexistenceWeight(
    std::span<const int> n_list, int r, double coupling, double eps_m,
    std::int64_t samples, std::uint64_t seed, int threads = 1,
    WindowBoundary boundary = WindowBoundary::kClosed);

}  // namespace sofic

#endif  // SOFIC_SOFIC_SIM_HPP_
