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

// f-pressure of completely homogeneous (and per-generator) tree-indexed
// Markov chains over a q-symbol alphabet under a nearest-neighbour energy
//
//   u(x) = B(x(e)) + sum_i J(x(e), x(s_i)),
//
// homogenization over generator kernels, and a belief-propagation solver for
// the homogeneous Markov Gibbs states. Specialized to q = 2 with
// J(a, b) = -J a b this reproduces the Ising family mu_t.

#ifndef SOFIC_NN_MARKOV_HPP_
#define SOFIC_NN_MARKOV_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sofic/ising_analytics.hpp"

namespace sofic {

// Dense row-major q x q matrix.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int size, double fill = 0.0)
      : size_(size), data_(static_cast<std::size_t>(size) * size, fill) {}

  int size() const { return size_; }
  double& operator()(int i, int j) { return data_[index(i, j)]; }
  double operator()(int i, int j) const { return data_[index(i, j)]; }
  std::span<const double> row(int i) const {
    return {data_.data() + static_cast<std::size_t>(i) * size_,
            static_cast<std::size_t>(size_)};
  }
  std::span<const double> data() const { return data_; }
  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * size_ + j;
  }
  int size_ = 0;
  std::vector<double> data_;
};

struct NNInteraction {
  int q = 2;
  int rank = 1;
  std::vector<double> site_energy;  // B, length q
  SquareMatrix edge_energy;         // J(a, b), symmetric
  // Optional {0,1} constraint matrix of a topological Markov chain.
  std::optional<SquareMatrix> constraint;

  // Throws kInvalidArgument / kDimensionMismatch on a malformed interaction.
  void Validate() const;
};

// J(a, b) = -J a b over symbols (-1, +1), B = 0.
NNInteraction IsingInteraction(const IsingParams& params);

// Ferromagnetic Potts: J(a, b) = -J [a == b], B = 0.
NNInteraction PottsInteraction(int q, int rank, double coupling);

struct NNChain {
  std::vector<double> marginal;       // p, length q
  std::vector<SquareMatrix> kernels;  // one row-stochastic kernel per generator

  int q() const { return static_cast<int>(marginal.size()); }
  int rank() const { return static_cast<int>(kernels.size()); }
  // Rows sum to 1, entries in [0, 1], p K_i = p for every generator.
  void Validate(double tol = 1e-10) const;
  bool IsHomogeneous() const;
  // p(a) K_i(a, b).
  SquareMatrix EdgeMarginal(int generator) const;
};

NNChain FromIsingChain(const IsingChain& chain);

// [(1 - 2r) H(X_e) - E B(X_e)] + sum_i [H(X_e, X_i) - E J(X_e, X_i)].
double FPressureNN(const NNChain& chain, const NNInteraction& inter);

// The same pressure as (1 - r) H(X_e) + sum_i H(X_i | X_e) - E u.
double FPressureNNConditional(const NNChain& chain, const NNInteraction& inter);

// H(X_e, X_i) - E J(X_e, X_i) for each generator.
std::vector<double> GeneratorTerms(const NNChain& chain,
                                   const NNInteraction& inter);

// Replaces every kernel by the one with the largest generator term (lowest
// index on ties). The f-pressure does not decrease.
NNChain Homogenize(const NNChain& chain, const NNInteraction& inter);

// Max over neighbour patterns of the star (centre plus its 2r neighbours) of
// the sup-distance between P_chain(centre | neighbours) and the Boltzmann
// conditional proportional to exp(-B(a) - sum_j J(a, y_j)). Throws kTooLarge
// if the number of distinct patterns exceeds max_patterns.
double StarConditionalResidual(const NNChain& chain, const NNInteraction& inter,
                               std::size_t max_patterns = 20'000'000);

// Homogeneous reversible chain induced by a cavity log-field h:
// pi(a, b) proportional to exp(h(a) - J(a, b) + h(b)).
NNChain ChainFromField(std::span<const double> field,
                       const NNInteraction& inter);

struct GibbsSolution {
  NNChain chain;
  std::vector<double> field;  // cavity log-field at the fixed point
  double residual = 0.0;      // StarConditionalResidual of chain
  int iterations = 0;
  bool damped = false;
};

inline constexpr int kDefaultMaxBpIterations = 200'000;

// Iterates h <- -B + (2r - 1) log sum_b exp(-J(., b) + h(b)) from init_field
// until the induced chain's star-conditional residual is <= tol. Switches to
// 0.5 damping when successive steps oscillate. Throws kNoConvergence with the
// last residual if max_iterations is reached.
GibbsSolution SolveMarkovGibbs(const NNInteraction& inter,
                               std::span<const double> init_field, double tol,
                               int max_iterations = kDefaultMaxBpIterations);

// Field 2t (1_S - (k/q) 1) with S the first k = family symbols; family in
// [1, q - 1]. For q = 2 this is the Ising boundary field of mu_{-t}.
std::vector<double> FamilyField(int q, int family, double t);

// Inverse of FamilyField along its direction: half the gap between the
// favoured and the unfavoured cavity fields.
double FamilyParameter(std::span<const double> field, int family);

struct CurvePoint {
  double t = 0.0;
  double f_pressure = 0.0;
};

std::vector<CurvePoint> PottsFamilyCurve(const NNInteraction& inter,
                                         std::span<const double> t_grid,
                                         int family);

}  // namespace sofic

#endif  // SOFIC_NN_MARKOV_HPP_
