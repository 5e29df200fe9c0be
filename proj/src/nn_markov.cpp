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

#include "sofic/nn_markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sofic/error.hpp"
#include "sofic/numerics.hpp"

namespace sofic {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void CheckDimensions(const NNChain& chain, const NNInteraction& inter) {
  if (chain.q() != inter.q || chain.rank() != inter.rank) {
    throw Error(ErrorCode::kDimensionMismatch,
                "chain has q = " + std::to_string(chain.q()) + ", r = " +
                    std::to_string(chain.rank()) + " but interaction has q = " +
                    std::to_string(inter.q) + ", r = " +
                    std::to_string(inter.rank));
  }
}

void CheckSupport(const NNChain& chain, const NNInteraction& inter) {
  if (!inter.constraint) return;
  const SquareMatrix& m = *inter.constraint;
  for (int i = 0; i < chain.rank(); ++i) {
    for (int a = 0; a < chain.q(); ++a) {
      for (int b = 0; b < chain.q(); ++b) {
        if (m(a, b) == 0.0 && chain.marginal[a] > 0.0 &&
            chain.kernels[i](a, b) > 0.0) {
          ThrowInvalid("kernel " + std::to_string(i) + " puts mass on (" +
                       std::to_string(a) + ", " + std::to_string(b) +
                       "), which the constraint matrix forbids");
        }
      }
    }
  }
}

double ExpectedSiteEnergy(const NNChain& chain, const NNInteraction& inter) {
  double e = 0.0;
  for (int a = 0; a < chain.q(); ++a) e += chain.marginal[a] * inter.site_energy[a];
  return e;
}

double ExpectedEdgeEnergy(const SquareMatrix& joint, const SquareMatrix& energy) {
  double e = 0.0;
  for (int a = 0; a < joint.size(); ++a) {
    for (int b = 0; b < joint.size(); ++b) e += joint(a, b) * energy(a, b);
  }
  return e;
}

// log sum_b exp(values[b]), summed in sorted order so that rows which are
// permutations of each other give bit-identical results.
double SortedLogSumExp(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const double m = values.back();
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double v : values) s += std::exp(v - m);
  return m + std::log(s);
}

void SubtractMax(std::vector<double>& h) {
  const double m = *std::max_element(h.begin(), h.end());
  for (double& v : h) v -= m;
}

std::vector<double> BpMap(const std::vector<double>& h,
                          const NNInteraction& inter) {
  const int q = inter.q;
  std::vector<double> out(q);
  std::vector<double> terms(q);
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) terms[b] = -inter.edge_energy(a, b) + h[b];
    out[a] = -inter.site_energy[a] +
             (2.0 * inter.rank - 1.0) * SortedLogSumExp(terms);
  }
  SubtractMax(out);
  return out;
}

double MaxAbs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

void NNInteraction::Validate() const {
  if (q < 2) ThrowInvalid("alphabet size q must be >= 2");
  if (rank < 1) ThrowInvalid("rank r must be >= 1");
  if (static_cast<int>(site_energy.size()) != q || edge_energy.size() != q) {
    throw Error(ErrorCode::kDimensionMismatch,
                "site/edge energy dimensions do not match q = " +
                    std::to_string(q));
  }
  for (double b : site_energy) {
    if (!std::isfinite(b)) ThrowInvalid("site energy must be finite");
  }
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (!std::isfinite(edge_energy(a, b))) {
        ThrowInvalid("edge energy must be finite");
      }
      if (std::fabs(edge_energy(a, b) - edge_energy(b, a)) > 1e-12) {
        ThrowInvalid("edge energy matrix must be symmetric");
      }
    }
  }
  if (constraint) {
    const SquareMatrix& m = *constraint;
    if (m.size() != q) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "constraint matrix must be q x q");
    }
    for (int a = 0; a < q; ++a) {
      bool any = false;
      for (int b = 0; b < q; ++b) {
        if (m(a, b) != 0.0 && m(a, b) != 1.0) {
          ThrowInvalid("constraint matrix entries must be 0 or 1");
        }
        if (m(a, b) != m(b, a)) ThrowInvalid("constraint matrix must be symmetric");
        any = any || m(a, b) == 1.0;
      }
      if (!any) {
        ThrowInvalid("constraint matrix row " + std::to_string(a) +
                     " allows no successor");
      }
    }
  }
}

NNInteraction IsingInteraction(const IsingParams& params) {
  params.Validate();
  NNInteraction inter;
  inter.q = 2;
  inter.rank = params.rank;
  inter.site_energy = {0.0, 0.0};
  inter.edge_energy = SquareMatrix(2);
  const double spin[2] = {-1.0, 1.0};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      inter.edge_energy(a, b) = -params.coupling * spin[a] * spin[b];
    }
  }
  return inter;
}

NNInteraction PottsInteraction(int q, int rank, double coupling) {
  NNInteraction inter;
  inter.q = q;
  inter.rank = rank;
  inter.site_energy.assign(std::max(q, 0), 0.0);
  inter.edge_energy = SquareMatrix(std::max(q, 0));
  for (int a = 0; a < q; ++a) inter.edge_energy(a, a) = -coupling;
  inter.Validate();
  return inter;
}

void NNChain::Validate(double tol) const {
  const int n = q();
  if (n < 1) ThrowInvalid("chain marginal is empty");
  double total = 0.0;
  for (double p : marginal) {
    if (!(p >= 0.0 && p <= 1.0)) ThrowInvalid("marginal entries must lie in [0, 1]");
    total += p;
  }
  if (std::fabs(total - 1.0) > kRowSumTol) ThrowInvalid("marginal must sum to 1");
  for (int i = 0; i < rank(); ++i) {
    const SquareMatrix& k = kernels[i];
    if (k.size() != n) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "kernel " + std::to_string(i) + " is not q x q");
    }
    for (int a = 0; a < n; ++a) {
      double row = 0.0;
      for (int b = 0; b < n; ++b) {
        if (!(k(a, b) >= 0.0 && k(a, b) <= 1.0)) {
          ThrowInvalid("kernel entries must lie in [0, 1]");
        }
        row += k(a, b);
      }
      if (std::fabs(row - 1.0) > kRowSumTol) {
        ThrowInvalid("kernel " + std::to_string(i) + " row " +
                     std::to_string(a) + " does not sum to 1");
      }
    }
    for (int b = 0; b < n; ++b) {
      double pushed = 0.0;
      for (int a = 0; a < n; ++a) pushed += marginal[a] * k(a, b);
      if (std::fabs(pushed - marginal[b]) > tol) {
        ThrowInvalid("marginal is not stationary for kernel " +
                     std::to_string(i));
      }
    }
  }
}

bool NNChain::IsHomogeneous() const {
  for (int i = 1; i < rank(); ++i) {
    if (!(kernels[i] == kernels[0])) return false;
  }
  return true;
}

SquareMatrix NNChain::EdgeMarginal(int generator) const {
  const SquareMatrix& k = kernels.at(generator);
  SquareMatrix joint(q());
  for (int a = 0; a < q(); ++a) {
    for (int b = 0; b < q(); ++b) joint(a, b) = marginal[a] * k(a, b);
  }
  return joint;
}

NNChain FromIsingChain(const IsingChain& chain) {
  NNChain out;
  const auto p = chain.Marginal();
  const auto t = chain.Transition();
  out.marginal = {p[0], p[1]};
  SquareMatrix k(2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) k(a, b) = t[a][b];
  }
  out.kernels.assign(chain.params.rank, k);
  return out;
}

std::vector<double> GeneratorTerms(const NNChain& chain,
                                   const NNInteraction& inter) {
  CheckDimensions(chain, inter);
  std::vector<double> terms(chain.rank());
  for (int i = 0; i < chain.rank(); ++i) {
    const SquareMatrix joint = chain.EdgeMarginal(i);
    terms[i] = ShannonEntropy(joint.data()) -
               ExpectedEdgeEnergy(joint, inter.edge_energy);
  }
  return terms;
}

double FPressureNN(const NNChain& chain, const NNInteraction& inter) {
  inter.Validate();
  CheckDimensions(chain, inter);
  chain.Validate();
  CheckSupport(chain, inter);
  const double r = inter.rank;
  double pressure = (1.0 - 2.0 * r) * ShannonEntropy(chain.marginal) -
                    ExpectedSiteEnergy(chain, inter);
  for (double term : GeneratorTerms(chain, inter)) pressure += term;
  return pressure;
}

double FPressureNNConditional(const NNChain& chain, const NNInteraction& inter) {
  inter.Validate();
  CheckDimensions(chain, inter);
  chain.Validate();
  CheckSupport(chain, inter);
  const double r = inter.rank;
  double entropy = (1.0 - r) * ShannonEntropy(chain.marginal);
  double energy = ExpectedSiteEnergy(chain, inter);
  for (int i = 0; i < chain.rank(); ++i) {
    for (int a = 0; a < chain.q(); ++a) {
      entropy += chain.marginal[a] * ShannonEntropy(chain.kernels[i].row(a));
    }
    energy += ExpectedEdgeEnergy(chain.EdgeMarginal(i), inter.edge_energy);
  }
  return entropy - energy;
}

NNChain Homogenize(const NNChain& chain, const NNInteraction& inter) {
  inter.Validate();
  chain.Validate();
  const std::vector<double> terms = GeneratorTerms(chain, inter);
  int best = 0;
  for (int i = 1; i < static_cast<int>(terms.size()); ++i) {
    // Differences at rounding level are ties.
    const double slack =
        4.0 * std::numeric_limits<double>::epsilon() *
        std::max(1.0, std::fabs(terms[best]));
    if (terms[i] > terms[best] + slack) best = i;
  }
  NNChain out;
  out.marginal = chain.marginal;
  out.kernels.assign(chain.rank(), chain.kernels[best]);
  return out;
}

namespace {

struct NeighbourGroup {
  SquareMatrix kernel;
  int count = 0;
};

bool NearlyEqual(const SquareMatrix& x, const SquareMatrix& y) {
  for (int a = 0; a < x.size(); ++a) {
    for (int b = 0; b < x.size(); ++b) {
      if (std::fabs(x(a, b) - y(a, b)) > 1e-13) return false;
    }
  }
  return true;
}

class StarEnumerator {
 public:
  StarEnumerator(const NNChain& chain, const NNInteraction& inter,
                 std::vector<NeighbourGroup> groups)
      : chain_(chain), inter_(inter), groups_(std::move(groups)) {
    const int q = chain.q();
    log_kernels_.reserve(groups_.size());
    for (const NeighbourGroup& g : groups_) {
      SquareMatrix lk(q);
      for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
          lk(a, b) = g.kernel(a, b) > 0.0 ? std::log(g.kernel(a, b)) : kNegInf;
        }
      }
      log_kernels_.push_back(std::move(lk));
    }
  }

  double Run() {
    const int q = chain_.q();
    std::vector<double> chain_log(q), energy(q);
    for (int a = 0; a < q; ++a) {
      chain_log[a] = chain_.marginal[a] > 0.0 ? std::log(chain_.marginal[a])
                                             : kNegInf;
      energy[a] = inter_.site_energy[a];
    }
    Group(0, chain_log, energy);
    return worst_;
  }

 private:
  void Group(std::size_t g, std::vector<double>& chain_log,
             std::vector<double>& energy) {
    if (g == groups_.size()) {
      Evaluate(chain_log, energy);
      return;
    }
    Symbol(g, 0, groups_[g].count, chain_log, energy);
  }

  // Distributes `remaining` neighbours of group g over symbols >= b.
  void Symbol(std::size_t g, int b, int remaining, std::vector<double>& chain_log,
              std::vector<double>& energy) {
    const int q = chain_.q();
    if (b == q - 1) {
      Add(g, b, remaining, chain_log, energy, +1);
      Group(g + 1, chain_log, energy);
      Add(g, b, remaining, chain_log, energy, -1);
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      Add(g, b, c, chain_log, energy, +1);
      Symbol(g, b + 1, remaining - c, chain_log, energy);
      Add(g, b, c, chain_log, energy, -1);
    }
  }

  void Add(std::size_t g, int b, int count, std::vector<double>& chain_log,
           std::vector<double>& energy, int sign) {
    if (count == 0) return;
    for (int a = 0; a < chain_.q(); ++a) {
      const double lk = log_kernels_[g](a, b);
      if (lk == kNegInf) {
        // -inf cannot be undone by subtraction; track impossible centres
        // through a counter instead.
        blocked_[static_cast<std::size_t>(a)] += sign;
      } else {
        chain_log[a] += sign * count * lk;
      }
      energy[a] += sign * count * inter_.edge_energy(a, b);
    }
  }

  void Evaluate(const std::vector<double>& chain_log,
                const std::vector<double>& energy) {
    const int q = chain_.q();
    std::vector<double> lc(q), lb(q);
    for (int a = 0; a < q; ++a) {
      lc[a] = blocked_[static_cast<std::size_t>(a)] > 0 ? kNegInf : chain_log[a];
      lb[a] = -energy[a];
    }
    const double zc = LogSumExp(lc);
    if (zc == kNegInf) return;  // pattern has probability zero under the chain
    const double zb = LogSumExp(lb);
    for (int a = 0; a < q; ++a) {
      const double pc = lc[a] == kNegInf ? 0.0 : std::exp(lc[a] - zc);
      const double pb = std::exp(lb[a] - zb);
      worst_ = std::max(worst_, std::fabs(pc - pb));
    }
  }

  const NNChain& chain_;
  const NNInteraction& inter_;
  std::vector<NeighbourGroup> groups_;
  std::vector<SquareMatrix> log_kernels_;
  std::vector<int> blocked_ = std::vector<int>(static_cast<std::size_t>(chain_.q()), 0);
  double worst_ = 0.0;
};

double BinomialCount(int n, int k) {
  return std::round(std::exp(LogBinomial(n, k)));
}

}  // namespace

double StarConditionalResidual(const NNChain& chain, const NNInteraction& inter,
                               std::size_t max_patterns) {
  inter.Validate();
  CheckDimensions(chain, inter);
  chain.Validate();
  const int q = chain.q();

  // The 2r neighbours of the identity: s_i (forward kernel K_i) and s_i^{-1}
  // (reverse kernel p(b) K_i(b, a) / p(a)).
  std::vector<SquareMatrix> neighbour_kernels;
  for (int i = 0; i < chain.rank(); ++i) {
    const SquareMatrix& k = chain.kernels[i];
    SquareMatrix rev(q);
    for (int a = 0; a < q; ++a) {
      for (int b = 0; b < q; ++b) {
        rev(a, b) = chain.marginal[a] > 0.0
                        ? chain.marginal[b] * k(b, a) / chain.marginal[a]
                        : k(a, b);
      }
    }
    neighbour_kernels.push_back(k);
    neighbour_kernels.push_back(std::move(rev));
  }
  std::vector<NeighbourGroup> groups;
  for (SquareMatrix& k : neighbour_kernels) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const NeighbourGroup& g) {
      return NearlyEqual(g.kernel, k);
    });
    if (it != groups.end()) {
      ++it->count;
    } else {
      groups.push_back({std::move(k), 1});
    }
  }
  double patterns = 1.0;
  for (const NeighbourGroup& g : groups) patterns *= BinomialCount(g.count + q - 1, q - 1);
  if (patterns > static_cast<double>(max_patterns)) {
    throw Error(ErrorCode::kTooLarge,
                "star has " + std::to_string(patterns) +
                    " neighbour patterns, more than the limit " +
                    std::to_string(max_patterns));
  }
  return StarEnumerator(chain, inter, std::move(groups)).Run();
}

NNChain ChainFromField(std::span<const double> field, const NNInteraction& inter) {
  inter.Validate();
  const int q = inter.q;
  if (static_cast<int>(field.size()) != q) {
    throw Error(ErrorCode::kDimensionMismatch, "field length must equal q");
  }
  for (double h : field) {
    if (!std::isfinite(h)) ThrowInvalid("field entries must be finite");
  }
  SquareMatrix log_joint(q);
  double top = kNegInf;
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      log_joint(a, b) = field[a] - inter.edge_energy(a, b) + field[b];
      top = std::max(top, log_joint(a, b));
    }
  }
  SquareMatrix weight(q);
  std::vector<double> row_mass(q, 0.0);
  double total = 0.0;
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      weight(a, b) = std::exp(log_joint(a, b) - top);
      row_mass[a] += weight(a, b);
    }
    total += row_mass[a];
  }
  NNChain chain;
  chain.marginal.resize(q);
  SquareMatrix kernel(q);
  for (int a = 0; a < q; ++a) {
    chain.marginal[a] = row_mass[a] / total;
    for (int b = 0; b < q; ++b) kernel(a, b) = weight(a, b) / row_mass[a];
  }
  chain.kernels.assign(inter.rank, kernel);
  return chain;
}

GibbsSolution SolveMarkovGibbs(const NNInteraction& inter,
                               std::span<const double> init_field, double tol,
                               int max_iterations) {
  inter.Validate();
  if (!(tol > 0.0)) ThrowInvalid("tolerance must be > 0");
  if (max_iterations < 1) ThrowInvalid("max_iterations must be >= 1");
  if (static_cast<int>(init_field.size()) != inter.q) {
    throw Error(ErrorCode::kDimensionMismatch, "initial field length must equal q");
  }
  std::vector<double> h(init_field.begin(), init_field.end());
  for (double v : h) {
    if (!std::isfinite(v)) ThrowInvalid("initial field entries must be finite");
  }
  SubtractMax(h);

  GibbsSolution sol;
  std::vector<double> prev_step(inter.q, 0.0);
  double prev_norm = std::numeric_limits<double>::infinity();
  double residual = std::numeric_limits<double>::infinity();
  int stalled = 0;
  for (int it = 1; it <= max_iterations; ++it) {
    std::vector<double> next = BpMap(h, inter);
    if (sol.damped) {
      for (int a = 0; a < inter.q; ++a) next[a] = 0.5 * (h[a] + next[a]);
      SubtractMax(next);
    }
    std::vector<double> step(inter.q);
    double dot = 0.0;
    for (int a = 0; a < inter.q; ++a) {
      step[a] = next[a] - h[a];
      dot += step[a] * prev_step[a];
    }
    const double norm = MaxAbs(step);
    if (!sol.damped && dot < 0.0 && norm > 0.5 * prev_norm) sol.damped = true;
    h = std::move(next);
    sol.iterations = it;

    const double scale = 1.0 + MaxAbs(h);
    if (norm <= 1e-11 * scale) {
      sol.chain = ChainFromField(h, inter);
      residual = StarConditionalResidual(sol.chain, inter);
      if (residual <= tol) {
        sol.field = h;
        sol.residual = residual;
        return sol;
      }
      // At a floating-point fixed point further iterations cannot help.
      if (norm == 0.0 || ++stalled > 1000) break;
    }
    prev_step = std::move(step);
    prev_norm = norm;
  }
  throw Error(ErrorCode::kNoConvergence,
              "belief propagation did not reach residual " + FormatNumber(tol) +
                  " after " + std::to_string(sol.iterations) +
                  " iterations (last residual " + FormatNumber(residual) +
                  (sol.damped ? ", damped" : "") + ")");
}

std::vector<double> FamilyField(int q, int family, double t) {
  if (q < 2) ThrowInvalid("q must be >= 2");
  if (family < 1 || family > q - 1) {
    ThrowInvalid("family index must lie in [1, q - 1], got " +
                 std::to_string(family));
  }
  const double share = static_cast<double>(family) / q;
  std::vector<double> h(q);
  for (int a = 0; a < q; ++a) h[a] = 2.0 * t * ((a < family ? 1.0 : 0.0) - share);
  return h;
}

double FamilyParameter(std::span<const double> field, int family) {
  const int q = static_cast<int>(field.size());
  if (family < 1 || family > q - 1) ThrowInvalid("family index out of range");
  double in = 0.0, out = 0.0;
  for (int a = 0; a < q; ++a) (a < family ? in : out) += field[a];
  return 0.5 * (in / family - out / (q - family));
}

std::vector<CurvePoint> PottsFamilyCurve(const NNInteraction& inter,
                                         std::span<const double> t_grid,
                                         int family) {
  inter.Validate();
  if (family < 1 || family > inter.q - 1) {
    ThrowInvalid("family index must lie in [1, q - 1], got " +
                 std::to_string(family));
  }
  std::vector<CurvePoint> curve;
  curve.reserve(t_grid.size());
  for (double t : t_grid) {
    const NNChain chain = ChainFromField(FamilyField(inter.q, family, t), inter);
    curve.push_back({t, FPressureNN(chain, inter)});
  }
  return curve;
}

}  // namespace sofic
