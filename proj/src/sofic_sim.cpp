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
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

#include "sofic/error.hpp"
#include "sofic/numerics.hpp"
#include "sofic/parallel.hpp"

namespace sofic {

int ResolveThreads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SOFIC_PRESSURE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 4096) return static_cast<int>(v);
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Kept away from the small stream indices used for sampling maps.
constexpr std::uint64_t kGlauberStream = 0xD1B54A32D192ED03ULL;

void CheckEnumerable(int n) {
  if (n > kMaxEnumerationSize) {
    throw Error(ErrorCode::kTooLarge,
                "exact enumeration is limited to n <= " +
                    std::to_string(kMaxEnumerationSize) + ", got n = " +
                    std::to_string(n) + "; use Glauber dynamics instead");
  }
}

void CheckEps(double eps) {
  if (!(eps >= 0.0) || std::isnan(eps)) ThrowInvalid("eps must be >= 0");
}

void CheckCoupling(double coupling) {
  if (!std::isfinite(coupling)) ThrowInvalid("coupling must be finite");
}

// log of a positive sum S, split as S = f 2^k so that S = 2^n gives exactly
// n log 2.
double LogOfSum(double s) {
  int k = 0;
  const double f = std::frexp(s, &k);
  return std::log(2.0 * f) + (k - 1) * std::log(2.0);
}

// Visits every x in {-1, +1}^n in Gray-code order as (n_plus, a), where a[i]
// counts sites v with x_v = x_{sigma_i(v)} = +1.
template <class Visit>
void EnumerateConfigs(const SoficMap& sigma, Visit&& visit) {
  const int n = sigma.n;
  const int r = sigma.rank();
  std::vector<int> fwd(static_cast<std::size_t>(r) * n);
  std::vector<int> bwd(static_cast<std::size_t>(r) * n);
  for (int i = 0; i < r; ++i) {
    for (int v = 0; v < n; ++v) {
      fwd[static_cast<std::size_t>(i) * n + v] = sigma.perms[i][v];
      bwd[static_cast<std::size_t>(i) * n + sigma.perms[i][v]] = v;
    }
  }
  std::vector<std::uint8_t> plus(n, 0);
  std::vector<int> a(r, 0);
  int n_plus = 0;
  visit(n_plus, std::span<const int>(a));
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const int j = std::countr_zero(k);
    const int sign = plus[j] ? -1 : 1;
    for (int i = 0; i < r; ++i) {
      const int f = fwd[static_cast<std::size_t>(i) * n + j];
      const int b = bwd[static_cast<std::size_t>(i) * n + j];
      a[i] += sign * (f == j ? 1 : plus[f] + plus[b]);
    }
    plus[j] ^= 1;
    n_plus += sign;
    visit(n_plus, std::span<const int>(a));
  }
}

// sum_{i, v} x_v x_{sigma_i(v)} from the profile.
int PairSum(int n, int n_plus, std::span<const int> a) {
  int e = 0;
  for (int ai : a) e += n - 4 * (n_plus - ai);
  return e;
}

}  // namespace

void SoficMap::Validate() const {
  if (n < 1) ThrowInvalid("n must be >= 1");
  if (perms.empty()) ThrowInvalid("a sofic map needs at least one generator");
  std::vector<char> seen(n);
  for (std::size_t i = 0; i < perms.size(); ++i) {
    if (static_cast<int>(perms[i].size()) != n) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "permutation " + std::to_string(i) + " has the wrong length");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (int v : perms[i]) {
      if (v < 0 || v >= n || seen[v]) {
        ThrowInvalid("permutation " + std::to_string(i) + " is not a bijection");
      }
      seen[v] = 1;
    }
  }
}

std::vector<int> SoficMap::Inverse(int generator) const {
  const std::vector<int>& p = perms.at(generator);
  std::vector<int> inv(p.size());
  for (int v = 0; v < static_cast<int>(p.size()); ++v) inv[p[v]] = v;
  return inv;
}

double SpinConfig::Magnetization() const {
  if (spins.empty()) return 0.0;
  long total = 0;
  for (std::int8_t s : spins) total += s;
  return static_cast<double>(total) / static_cast<double>(spins.size());
}

namespace {

void CheckConfig(const SoficMap& sigma, const SpinConfig& x) {
  sigma.Validate();
  if (x.size() != sigma.n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "configuration length " + std::to_string(x.size()) +
                    " does not match n = " + std::to_string(sigma.n));
  }
  for (std::int8_t s : x.spins) {
    if (s != 1 && s != -1) ThrowInvalid("spins must be -1 or +1");
  }
}

}  // namespace

void TypeProfile::Validate() const {
  for (const PairCounts& c : pairs) {
    for (std::int64_t v : c) {
      if (v < 0) ThrowInvalid("pair counts must be nonnegative");
    }
    if (c[0] + c[1] != n_plus || c[2] + c[3] != n - n_plus ||
        c[0] + c[2] != n_plus || c[1] + c[3] != n - n_plus) {
      ThrowInvalid("pair counts violate the row/column sums");
    }
  }
}

TypeProfile ProfileOf(const SoficMap& sigma, const SpinConfig& x) {
  CheckConfig(sigma, x);
  TypeProfile profile;
  profile.n = sigma.n;
  profile.n_plus = static_cast<int>(
      std::count(x.spins.begin(), x.spins.end(), std::int8_t{1}));
  for (const std::vector<int>& p : sigma.perms) {
    PairCounts c{0, 0, 0, 0};
    for (int v = 0; v < sigma.n; ++v) {
      const bool from = x.spins[v] > 0;
      const bool to = x.spins[p[v]] > 0;
      ++c[(from ? 0 : 2) + (to ? 0 : 1)];
    }
    profile.pairs.push_back(c);
  }
  return profile;
}

std::array<double, 4> PairLaw(const IsingChain& chain) {
  const auto joint = chain.EdgeMarginal();  // index 0 = spin -1
  return {joint[1][1], joint[1][0], joint[0][1], joint[0][0]};
}

double PairTv(const PairCounts& counts, int n, const std::array<double, 4>& target) {
  const double inv = 1.0 / n;
  double tv = 0.0;
  for (int k = 0; k < 4; ++k) tv += std::fabs(counts[k] * inv - target[k]);
  return 0.5 * tv;
}

SoficMap SampleHom(int n, int r, CounterRng& rng) {
  if (n < 1) ThrowInvalid("n must be >= 1");
  if (r < 1) ThrowInvalid("r must be >= 1");
  SoficMap sigma;
  sigma.n = n;
  sigma.perms.resize(r);
  for (std::vector<int>& p : sigma.perms) {
    p.resize(n);
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i) {
      const auto j = static_cast<int>(rng.Bounded(static_cast<std::uint64_t>(i) + 1));
      std::swap(p[i], p[j]);
    }
  }
  return sigma;
}

SoficMap SampleHom(int n, int r, std::uint64_t seed, std::uint64_t stream) {
  CounterRng rng(seed, stream);
  return SampleHom(n, r, rng);
}

double TotalEnergy(const SoficMap& sigma, const SpinConfig& x, double coupling) {
  CheckConfig(sigma, x);
  CheckCoupling(coupling);
  long sum = 0;
  for (const std::vector<int>& p : sigma.perms) {
    for (int v = 0; v < sigma.n; ++v) sum += x.spins[v] * x.spins[p[v]];
  }
  return -coupling * static_cast<double>(sum);
}

double LogPartitionExact(const SoficMap& sigma, double coupling) {
  sigma.Validate();
  CheckCoupling(coupling);
  CheckEnumerable(sigma.n);
  const int n = sigma.n;
  const int span = sigma.rank() * n;
  std::vector<std::uint64_t> hist(2 * static_cast<std::size_t>(span) + 1, 0);
  EnumerateConfigs(sigma, [&](int n_plus, std::span<const int> a) {
    ++hist[PairSum(n, n_plus, a) + span];
  });
  // Weight exp(J E); factor out the largest exponent.
  double top = kNegInf;
  for (int e = -span; e <= span; ++e) {
    if (hist[e + span] > 0) top = std::max(top, coupling * e);
  }
  double s = 0.0;
  for (int e = -span; e <= span; ++e) {
    if (hist[e + span] > 0) {
      s += static_cast<double>(hist[e + span]) * std::exp(coupling * e - top);
    }
  }
  return top + LogOfSum(s);
}

std::uint64_t CountGoodModels(const SoficMap& sigma, const IsingChain& chain,
                              double eps) {
  sigma.Validate();
  CheckEps(eps);
  CheckEnumerable(sigma.n);
  const int n = sigma.n;
  if (eps >= 1.0) return std::uint64_t{1} << n;
  const std::array<double, 4> target = PairLaw(chain);
  // good[m * (n + 1) + a]: profile (n_plus = m, a_{++} = a) is within eps.
  std::vector<std::uint8_t> good(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  for (int m = 0; m <= n; ++m) {
    for (int a = std::max(0, 2 * m - n); a <= m; ++a) {
      const PairCounts c{a, m - a, m - a, n - 2 * m + a};
      good[static_cast<std::size_t>(m) * (n + 1) + a] = PairTv(c, n, target) <= eps;
    }
  }
  std::uint64_t count = 0;
  EnumerateConfigs(sigma, [&](int n_plus, std::span<const int> a) {
    const std::uint8_t* row = good.data() + static_cast<std::size_t>(n_plus) * (n + 1);
    for (int ai : a) {
      if (!row[ai]) return;
    }
    ++count;
  });
  return count;
}

double AnnealedLogCount(int n, int r, const std::array<double, 4>& target,
                        double eps) {
  if (n < 1) ThrowInvalid("n must be >= 1");
  if (r < 1) ThrowInvalid("r must be >= 1");
  CheckEps(eps);
  double mass = 0.0;
  for (double p : target) {
    if (!(p >= 0.0 && p <= 1.0)) ThrowInvalid("target law entries must lie in [0, 1]");
    mass += p;
  }
  if (std::fabs(mass - 1.0) > 1e-9) ThrowInvalid("target law must sum to 1");
  if (eps >= 1.0) return n * std::log(2.0);

  std::vector<double> log_fact(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) log_fact[k] = std::lgamma(k + 1.0);
  auto log_choose = [&](int a, int b) {
    return log_fact[a] - log_fact[b] - log_fact[a - b];
  };

  std::vector<double> outer;
  std::vector<double> inner;
  for (int m = 0; m <= n; ++m) {
    inner.clear();
    // Fraction of permutations with |sigma(P) cap P| = a for a plus set P of
    // size m: C(m, a) C(n - m, m - a) m! (n - m)! / n!.
    const double base = log_fact[m] + log_fact[n - m] - log_fact[n];
    for (int a = std::max(0, 2 * m - n); a <= m; ++a) {
      const PairCounts c{a, m - a, m - a, n - 2 * m + a};
      if (PairTv(c, n, target) <= eps) {
        inner.push_back(log_choose(m, a) + log_choose(n - m, m - a) + base);
      }
    }
    if (inner.empty()) continue;
    outer.push_back(log_choose(n, m) + r * LogSumExp(inner));
  }
  return LogSumExp(outer);
}

double AnnealedLogCountExact(int n, int r, const IsingChain& chain, double eps) {
  return AnnealedLogCount(n, r, PairLaw(chain), eps);
}

LatticeProfile NearestLatticeProfile(int n, const IsingChain& chain) {
  if (n < 1) ThrowInvalid("n must be >= 1");
  const std::array<double, 4> target = PairLaw(chain);
  LatticeProfile best;
  best.tv = std::numeric_limits<double>::infinity();
  for (int m = 0; m <= n; ++m) {
    for (int a = std::max(0, 2 * m - n); a <= m; ++a) {
      const PairCounts c{a, m - a, m - a, n - 2 * m + a};
      const double tv = PairTv(c, n, target);
      if (tv < best.tv) {
        best.n_plus = m;
        best.a_plus_plus = a;
        best.tv = tv;
      }
    }
  }
  const int m = best.n_plus;
  const int a = best.a_plus_plus;
  const double inv = 1.0 / n;
  best.law = {a * inv, (m - a) * inv, (m - a) * inv, (n - 2 * m + a) * inv};
  return best;
}

namespace {

MomentEstimate Summarize(const std::vector<std::uint64_t>& counts, bool exhaustive) {
  MomentEstimate out;
  out.samples = static_cast<std::int64_t>(counts.size());
  out.exhaustive = exhaustive;
  // Counts are below 2^28, so these sums are exact in long double.
  long double sum = 0.0L;
  long double sum_sq = 0.0L;
  for (std::uint64_t c : counts) {
    const auto v = static_cast<long double>(c);
    sum += v;
    sum_sq += v * v;
  }
  const auto s = static_cast<long double>(counts.size());
  out.mean = static_cast<double>(sum / s);
  out.mean_sq = static_cast<double>(sum_sq / s);
  if (sum_sq > 0.0L) {
    // Cauchy-Schwarz bounds this by 1; the min only absorbs final rounding.
    out.pz_ratio = std::min(1.0, static_cast<double>(sum * sum / (s * sum_sq)));
  }
  if (!exhaustive && counts.size() > 1) {
    const long double var = (sum_sq - sum * sum / s) / (s - 1.0L);
    out.std_error = std::sqrt(static_cast<double>(std::max(var, 0.0L) / s));
  }
  return out;
}

}  // namespace

MomentEstimate SecondMomentMC(int n, int r, const IsingChain& chain, double eps,
                              std::int64_t samples, std::uint64_t seed,
                              int threads) {
  if (n < 1) ThrowInvalid("n must be >= 1");
  if (r < 1) ThrowInvalid("r must be >= 1");
  CheckEps(eps);
  CheckEnumerable(n);
  if (samples < 1) ThrowInvalid("samples must be >= 1");
  const auto counts = ParallelMap<std::uint64_t>(
      static_cast<std::size_t>(samples), threads, [&](std::size_t k) {
        return CountGoodModels(SampleHom(n, r, seed, k), chain, eps);
      });
  return Summarize(counts, false);
}

MomentEstimate SecondMomentExhaustive(int n, int r, const IsingChain& chain,
                                      double eps, int threads) {
  if (n < 1) ThrowInvalid("n must be >= 1");
  if (r < 1) ThrowInvalid("r must be >= 1");
  CheckEps(eps);
  if (n > kMaxExhaustiveSize) {
    throw Error(ErrorCode::kTooLarge,
                "exhaustive mode is limited to n <= " +
                    std::to_string(kMaxExhaustiveSize));
  }
  std::vector<std::vector<int>> all;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    all.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const auto per = static_cast<std::uint64_t>(all.size());
  std::uint64_t total = 1;
  for (int i = 0; i < r; ++i) {
    if (total > 10'000'000 / per) {
      throw Error(ErrorCode::kTooLarge, "exhaustive mode needs (n!)^r <= 10^7");
    }
    total *= per;
  }
  const auto counts = ParallelMap<std::uint64_t>(
      static_cast<std::size_t>(total), threads, [&](std::size_t index) {
        SoficMap sigma;
        sigma.n = n;
        for (int i = 0; i < r; ++i) {
          sigma.perms.push_back(all[index % per]);
          index /= per;
        }
        return CountGoodModels(sigma, chain, eps);
      });
  return Summarize(counts, true);
}

double HeatBathPlusProbability(double coupling, int spin_sum) {
  return Logistic(2.0 * coupling * spin_sum);
}

Trajectory GlauberRun(const SoficMap& sigma, double coupling, std::int64_t steps,
                      std::uint64_t seed, std::int64_t record_every,
                      const std::optional<SpinConfig>& initial) {
  sigma.Validate();
  CheckCoupling(coupling);
  if (steps < 0) ThrowInvalid("steps must be >= 0");
  if (record_every < 1) ThrowInvalid("record_every must be >= 1");
  const int n = sigma.n;
  SpinConfig x = initial ? *initial : SpinConfig::AllPlus(n);
  CheckConfig(sigma, x);

  // Neighbour lists without self-loops, which do not depend on the spin.
  std::vector<int> offset(n + 1, 0);
  std::vector<int> nbr;
  nbr.reserve(static_cast<std::size_t>(2) * sigma.rank() * n);
  std::vector<std::vector<int>> inverse;
  for (int i = 0; i < sigma.rank(); ++i) inverse.push_back(sigma.Inverse(i));
  for (int v = 0; v < n; ++v) {
    for (int i = 0; i < sigma.rank(); ++i) {
      if (sigma.perms[i][v] == v) continue;
      nbr.push_back(sigma.perms[i][v]);
      nbr.push_back(inverse[i][v]);
    }
    offset[v + 1] = static_cast<int>(nbr.size());
  }

  // P(+) only depends on the spin sum S in [-2r, 2r].
  const int max_sum = 2 * sigma.rank();
  std::vector<double> p_plus(2 * static_cast<std::size_t>(max_sum) + 1);
  for (int s = -max_sum; s <= max_sum; ++s) {
    p_plus[s + max_sum] = HeatBathPlusProbability(coupling, s);
  }

  CounterRng rng(seed, kGlauberStream);
  long total = 0;
  for (std::int8_t s : x.spins) total += s;
  Trajectory traj;
  auto record = [&](std::int64_t step) {
    traj.steps.push_back(step);
    traj.magnetization.push_back(static_cast<double>(total) / n);
  };
  record(0);
  for (std::int64_t step = 1; step <= steps; ++step) {
    const auto v = static_cast<int>(rng.Bounded(static_cast<std::uint64_t>(n)));
    int s = 0;
    for (int k = offset[v]; k < offset[v + 1]; ++k) s += x.spins[nbr[k]];
    const std::int8_t spin = rng.Uniform01() < p_plus[s + max_sum] ? 1 : -1;
    total += spin - x.spins[v];
    x.spins[v] = spin;
    if (step % record_every == 0) record(step);
  }
  return traj;
}

double CoexistenceWeightExact(const SoficMap& sigma, double coupling, double eps_m,
                              WindowBoundary boundary) {
  sigma.Validate();
  CheckCoupling(coupling);
  if (!(eps_m >= 0.0)) ThrowInvalid("eps_m must be >= 0");
  CheckEnumerable(sigma.n);
  const int n = sigma.n;
  const int span = sigma.rank() * n;
  const std::size_t width = 2 * static_cast<std::size_t>(span) + 1;
  std::vector<std::uint64_t> hist((static_cast<std::size_t>(n) + 1) * width, 0);
  EnumerateConfigs(sigma, [&](int n_plus, std::span<const int> a) {
    ++hist[static_cast<std::size_t>(n_plus) * width + PairSum(n, n_plus, a) + span];
  });
  double top = kNegInf;
  for (int m = 0; m <= n; ++m) {
    for (int e = -span; e <= span; ++e) {
      if (hist[m * width + e + span] > 0) top = std::max(top, coupling * e);
    }
  }
  double all = 0.0;
  double window = 0.0;
  for (int m = 0; m <= n; ++m) {
    const double mag = std::fabs(static_cast<double>(2 * m - n) / n);
    const bool inside =
        boundary == WindowBoundary::kClosed ? mag <= eps_m : mag < eps_m;
    for (int e = -span; e <= span; ++e) {
      const std::uint64_t c = hist[m * width + e + span];
      if (c == 0) continue;
      const double w = static_cast<double>(c) * std::exp(coupling * e - top);
      all += w;
      if (inside) window += w;
    }
  }
  return window / all;
}

std::vector<CoexistenceRow> CoexistenceWeight(std::span<const int> n_list, int r,
                                              double coupling, double eps_m,
                                              std::int64_t samples,
                                              std::uint64_t seed, int threads,
                                              WindowBoundary boundary) {
  if (n_list.empty()) ThrowInvalid("n list must be nonempty");
  if (r < 1) ThrowInvalid("r must be >= 1");
  if (samples < 1) ThrowInvalid("samples must be >= 1");
  CheckCoupling(coupling);
  if (!(eps_m >= 0.0)) ThrowInvalid("eps_m must be >= 0");
  for (int n : n_list) {
    if (n < 1) ThrowInvalid("every n must be >= 1");
    CheckEnumerable(n);
  }
  std::vector<CoexistenceRow> rows;
  for (int n : n_list) {
    const auto weights = ParallelMap<double>(
        static_cast<std::size_t>(samples), threads, [&](std::size_t k) {
          const std::uint64_t stream = (static_cast<std::uint64_t>(n) << 32) + k;
          return CoexistenceWeightExact(SampleHom(n, r, seed, stream), coupling,
                                        eps_m, boundary);
        });
    double sum = 0.0;
    for (double w : weights) sum += w;
    const double mean = sum / static_cast<double>(samples);
    double ss = 0.0;
    for (double w : weights) ss += (w - mean) * (w - mean);
    CoexistenceRow row;
    row.n = n;
    row.mean_weight = mean;
    row.samples = samples;
    row.std_error =
        samples > 1 ? std::sqrt(ss / static_cast<double>(samples - 1) /
                                static_cast<double>(samples))
                    : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sofic
