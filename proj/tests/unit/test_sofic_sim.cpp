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

#include "sofic/sofic_sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "sofic/bp_solver.hpp"
#include "sofic/error.hpp"
#include "sofic/parallel.hpp"

namespace sofic {
namespace {

SpinConfig FromMask(int n, std::uint64_t mask) {
  SpinConfig x;
  for (int v = 0; v < n; ++v) x.spins.push_back((mask >> v) & 1 ? 1 : -1);
  return x;
}

// Independent good-model test: pair frequencies by direct counting, target
// law from alpha and beta.
bool IsGoodOracle(const SoficMap& s, const SpinConfig& x, const IsingChain& c,
                  double eps) {
  const double target[4] = {(1 - c.alpha) * (1 - c.beta_plus), (1 - c.alpha) * c.beta_plus,
                            c.alpha * c.beta_minus, c.alpha * (1 - c.beta_minus)};
  for (const auto& p : s.perms) {
    double freq[4] = {0, 0, 0, 0};
    for (int v = 0; v < s.n; ++v) {
      const int from = x.spins[v] > 0 ? 0 : 1;
      const int to = x.spins[p[v]] > 0 ? 0 : 1;
      freq[2 * from + to] += 1.0 / s.n;
    }
    double tv = 0;
    for (int k = 0; k < 4; ++k) tv += std::fabs(freq[k] - target[k]);
    if (tv / 2 > eps) return false;
  }
  return true;
}

std::uint64_t CountOracle(const SoficMap& s, const IsingChain& c, double eps) {
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << s.n); ++m) {
    count += IsGoodOracle(s, FromMask(s.n, m), c, eps);
  }
  return count;
}

// Mean good-model count over every pair of permutations of {0..n-1}.
double ExhaustiveMeanOracle(int n, const IsingChain& c, double eps) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  double total = 0;
  for (const auto& a : perms) {
    for (const auto& b : perms) {
      SoficMap s{n, {a, b}};
      total += static_cast<double>(CountOracle(s, c, eps));
    }
  }
  return total / (static_cast<double>(perms.size()) * perms.size());
}

int LehmerIndex(const std::vector<int>& p) {
  int index = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    int smaller = 0;
    for (std::size_t j = i + 1; j < p.size(); ++j) smaller += p[j] < p[i];
    index = index * static_cast<int>(p.size() - i) + smaller;
  }
  return index;
}

TEST(SoficSim, SampleHomBasics) {
  const SoficMap one = SampleHom(1, 3, 42);
  for (const auto& p : one.perms) EXPECT_EQ(p, std::vector<int>{0});
  const SoficMap a = SampleHom(50, 3, 42, 7);
  const SoficMap b = SampleHom(50, 3, 42, 7);
  EXPECT_EQ(a.perms, b.perms);
  EXPECT_NO_THROW(a.Validate());
  EXPECT_NE(a.perms, SampleHom(50, 3, 42, 8).perms);
  EXPECT_THROW(SampleHom(0, 2, 1), Error);
  EXPECT_THROW(SampleHom(3, 0, 1), Error);
}

TEST(SoficSim, PermutationsAreUniform) {
  constexpr int kSamples = 100'000;
  std::array<std::array<double, 24>, 2> counts{};
  for (int k = 0; k < kSamples; ++k) {
    const SoficMap s = SampleHom(4, 2, 2026, k);
    for (int i = 0; i < 2; ++i) counts[i][LehmerIndex(s.perms[i])] += 1;
  }
  const boost::math::chi_squared dist(23);
  for (int i = 0; i < 2; ++i) {
    double stat = 0;
    const double expected = kSamples / 24.0;
    for (double c : counts[i]) stat += (c - expected) * (c - expected) / expected;
    const double p_value = boost::math::cdf(boost::math::complement(dist, stat));
    EXPECT_GT(p_value, 0.001) << "generator " << i << " chi2 = " << stat;
  }
}

TEST(SoficSim, TotalEnergy) {
  const SoficMap s = SampleHom(9, 2, 5);
  EXPECT_NEAR(TotalEnergy(s, SpinConfig::AllPlus(9), 0.7), -0.7 * 2 * 9, 1e-14);
  const SoficMap one{1, {{0}, {0}, {0}}};
  EXPECT_DOUBLE_EQ(TotalEnergy(one, FromMask(1, 0), 0.4), -0.4 * 3);

  const SoficMap three{3, {{1, 2, 0}, {0, 2, 1}}};
  const SpinConfig x{{1, -1, -1}};
  double naive = 0;
  for (const auto& p : three.perms) {
    for (int v = 0; v < 3; ++v) naive -= 0.5 * x.spins[v] * x.spins[p[v]];
  }
  // Cycle (0 1 2): -1 -1 +1 ; fixed 0, swap (1 2): +1 +1 +1 ; sum 2.
  EXPECT_DOUBLE_EQ(naive, -0.5 * 2);
  EXPECT_DOUBLE_EQ(TotalEnergy(three, x, 0.5), naive);
  EXPECT_THROW(TotalEnergy(three, SpinConfig::AllPlus(4), 0.5), Error);
}

TEST(SoficSim, ProfileInvariants) {
  std::mt19937_64 gen(9);
  for (int k = 0; k < 200; ++k) {
    const int n = 1 + k % 17;
    const SoficMap s = SampleHom(n, 3, 77, k);
    const SpinConfig x = FromMask(n, gen());
    const TypeProfile prof = ProfileOf(s, x);
    EXPECT_NO_THROW(prof.Validate());
    // The profile reproduces the energy.
    long e = 0;
    for (const PairCounts& c : prof.pairs) e += c[0] + c[3] - c[1] - c[2];
    EXPECT_DOUBLE_EQ(TotalEnergy(s, x, 1.0), -static_cast<double>(e));
  }
}

TEST(SoficSim, PartitionFunctionSmallCases) {
  const SoficMap one = SampleHom(1, 2, 3);
  EXPECT_EQ(LogPartitionExact(one, 0.8), std::log(2.0) + 0.8 * 2);
  for (int n : {1, 5, 12}) {
    EXPECT_EQ(LogPartitionExact(SampleHom(n, 2, 3), 0.0), n * std::log(2.0));
  }
  EXPECT_THROW(LogPartitionExact(SampleHom(29, 2, 3), 0.5), Error);
}

TEST(SoficSim, PartitionFunctionMatchesHighPrecisionSum) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  for (int n : {3, 8, 11}) {
    const SoficMap s = SampleHom(n, 2, 2024 + n);
    for (double j : {0.3, 1.7}) {
      Big z = 0;
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        const SpinConfig x = FromMask(n, m);
        long e = 0;
        for (const auto& p : s.perms) {
          for (int v = 0; v < n; ++v) e += x.spins[v] * x.spins[p[v]];
        }
        z += boost::multiprecision::exp(Big(j) * e);
      }
      const double ref = static_cast<double>(boost::multiprecision::log(z));
      EXPECT_NEAR(LogPartitionExact(s, j), ref, 1e-12 * std::fabs(ref));
    }
  }
}

TEST(SoficSim, PartitionFunctionBounds) {
  for (int k = 0; k < 20; ++k) {
    const int n = 4 + k % 10;
    const SoficMap s = SampleHom(n, 3, 11, k);
    const double j = 0.1 * k;
    const double per_site = LogPartitionExact(s, j) / n;
    EXPECT_GE(per_site, j * 3 - 1e-12);
    EXPECT_LE(per_site, std::log(2.0) + j * 3 + 1e-12);
  }
}

TEST(SoficSim, GoodModelCounts) {
  const IsingParams p{0.5, 2};
  const IsingChain c0 = BuildMuT(0.0, p);
  const SoficMap s6 = SampleHom(6, 2, 99);
  EXPECT_EQ(CountGoodModels(s6, c0, 0.15), CountOracle(s6, c0, 0.15));
  EXPECT_EQ(CountGoodModels(s6, c0, 1.0), 64u);
  // alpha(0) beta(0) = 0.5 / (1 + e) is not a multiple of 1/6.
  EXPECT_EQ(CountGoodModels(s6, c0, 0.0), 0u);
  for (int k = 0; k < 10; ++k) {
    const SoficMap s = SampleHom(9, 2, 5, k);
    for (double t : {0.0, 0.4, 1.2}) {
      const IsingChain c = BuildMuT(t, p);
      EXPECT_EQ(CountGoodModels(s, c, 0.2), CountOracle(s, c, 0.2));
      EXPECT_EQ(CountGoodModels(s, c, 0.23), CountGoodModels(s, BuildMuT(-t, p), 0.23));
    }
  }
  EXPECT_THROW(CountGoodModels(SampleHom(29, 1, 1), c0, 0.1), Error);
}

TEST(SoficSim, AnnealedCountMatchesExhaustiveAverage) {
  struct Setting {
    double j, t, eps;
  };
  const Setting settings[] = {{0.5, 0.0, 0.35}, {0.9, 0.7, 0.25}, {0.2, -0.4, 0.5}};
  for (int n : {3, 4}) {
    for (const Setting& st : settings) {
      const IsingChain c = BuildMuT(st.t, {st.j, 2});
      const double oracle = ExhaustiveMeanOracle(n, c, st.eps);
      ASSERT_GT(oracle, 0.0);
      const double annealed = std::exp(AnnealedLogCountExact(n, 2, c, st.eps));
      EXPECT_NEAR(annealed, oracle, 1e-12 * oracle) << "n=" << n;
      const MomentEstimate ex = SecondMomentExhaustive(n, 2, c, st.eps);
      EXPECT_NEAR(ex.mean, oracle, 1e-12 * oracle);
      EXPECT_LE(ex.pz_ratio, 1.0);
    }
  }
}

TEST(SoficSim, AnnealedCountFullBall) {
  const IsingChain c = BuildMuT(0.3, {0.5, 2});
  for (int n : {1, 10, 500}) {
    EXPECT_EQ(AnnealedLogCountExact(n, 2, c, 1.0), n * std::log(2.0));
  }
}

TEST(SoficSim, AnnealedRateApproachesFInvariant) {
  const IsingParams p{0.5, 2};
  const double t_plus = *SolveFixedPoints(p).t_plus;
  for (double t : {0.0, t_plus}) {
    const IsingChain c = BuildMuT(t, p);
    const int n = 2000;
    const LatticeProfile centre = NearestLatticeProfile(n, c);
    EXPECT_LE(centre.tv, 2.0 / n);
    const double rate = AnnealedLogCount(n, 2, centre.law, 2.0 / n) / n;
    EXPECT_NEAR(rate, FInvariant(c), 0.05);
  }
}

TEST(SoficSim, MonteCarloMeanMatchesAnnealed) {
  const IsingChain c = BuildMuT(0.0, {0.5, 2});
  const MomentEstimate mc = SecondMomentMC(10, 2, c, 0.2, 500, 314, 2);
  const double exact = std::exp(AnnealedLogCountExact(10, 2, c, 0.2));
  EXPECT_LE(std::fabs(mc.mean - exact), 3 * mc.std_error);
  EXPECT_LE(mc.pz_ratio, 1.0);
}

TEST(SoficSim, MonteCarloIsThreadCountIndependent) {
  const IsingChain c = BuildMuT(0.2, {0.4, 2});
  const MomentEstimate one = SecondMomentMC(9, 2, c, 0.2, 64, 5, 1);
  const MomentEstimate four = SecondMomentMC(9, 2, c, 0.2, 64, 5, 4);
  EXPECT_EQ(one.mean, four.mean);
  EXPECT_EQ(one.mean_sq, four.mean_sq);
  EXPECT_EQ(one.std_error, four.std_error);
}

TEST(SoficSim, PaleyZygmundRatioInUniqueness) {
  const IsingChain c = BuildMuT(0.0, {0.3, 2});
  const MomentEstimate m = SecondMomentMC(16, 2, c, 0.1, 200, 8, 2);
  EXPECT_GE(m.pz_ratio, 0.01);
  EXPECT_LE(m.pz_ratio, 1.0);
}

TEST(SoficSim, HeatBathProbability) {
  for (double j : {0.0, 0.3, 1.2}) {
    for (int s = -4; s <= 4; ++s) {
      EXPECT_NEAR(HeatBathPlusProbability(j, s), std::exp(j * s) / (2 * std::cosh(j * s)),
                  1e-15);
    }
  }
}

TEST(SoficSim, GlauberIsDeterministic) {
  const SoficMap s = SampleHom(200, 2, 1);
  const Trajectory a = GlauberRun(s, 0.8, 50'000, 3, 500);
  const Trajectory b = GlauberRun(s, 0.8, 50'000, 3, 500);
  EXPECT_EQ(a.magnetization, b.magnetization);
  ASSERT_EQ(a.steps.size(), 101u);
  EXPECT_EQ(a.steps.back(), 50'000);
  EXPECT_EQ(a.magnetization.front(), 1.0);
}

TEST(SoficSim, GlauberInfiniteTemperatureDecorrelates) {
  const int n = 1000;
  const Trajectory tr = GlauberRun(SampleHom(n, 2, 4), 0.0, 200'000, 6, 1000);
  double mean_abs = 0;
  int counted = 0;
  for (std::size_t k = 50; k < tr.magnetization.size(); ++k, ++counted) {
    mean_abs += std::fabs(tr.magnetization[k]);
  }
  mean_abs /= counted;
  EXPECT_LT(mean_abs, 3.0 / std::sqrt(n));
}

TEST(SoficSim, GlauberLowTemperatureTrapping) {
  const Trajectory tr = GlauberRun(SampleHom(1000, 2, 12), 1.2, 1'000'000, 13, 10'000);
  EXPECT_GT(*std::min_element(tr.magnetization.begin(), tr.magnetization.end()), 0.5);
}

TEST(SoficSim, CoexistenceWeightLimits) {
  const SoficMap s = SampleHom(10, 2, 21);
  EXPECT_EQ(CoexistenceWeightExact(s, 0.9, 1.0), 1.0);
  // J = 0: the binomial mass of |2k - n| <= 0.2 n, i.e. k in {4, 5, 6}.
  const double binom = (210.0 + 252.0 + 210.0) / 1024.0;
  EXPECT_NEAR(CoexistenceWeightExact(s, 0.0, 0.2), binom, 1e-15);
  // Open window drops the boundary k = 4, 6.
  EXPECT_NEAR(CoexistenceWeightExact(s, 0.0, 0.2, WindowBoundary::kOpen), 252.0 / 1024.0,
              1e-15);
}

TEST(SoficSim, CoexistenceOpenWindowDecreases) {
  const std::vector<int> ns = {8, 12, 16, 20};
  const auto rows = CoexistenceWeight(ns, 2, 0.5, 0.1, 40, 17, 2, WindowBoundary::kOpen);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LT(rows[i].mean_weight, rows[i - 1].mean_weight);
  }
}

TEST(SoficSim, CoexistenceIsThreadCountIndependent) {
  const std::vector<int> ns = {6, 9};
  const auto a = CoexistenceWeight(ns, 2, 0.5, 0.1, 30, 2, 1);
  const auto b = CoexistenceWeight(ns, 2, 0.5, 0.1, 30, 2, 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].mean_weight, b[i].mean_weight);
    EXPECT_EQ(a[i].std_error, b[i].std_error);
  }
}

TEST(SoficSim, ResolveThreads) {
  EXPECT_EQ(ResolveThreads(3), 3);
  EXPECT_GE(ResolveThreads(0), 1);
}

}  // namespace
}  // namespace sofic
