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

// Closed-form quantities for the one-parameter family of completely
// homogeneous Ising Markov chains mu_t on the free group of rank r.
//
// Symbol order throughout is (-1, +1): index 0 is spin -1 and index 1 is
// spin +1. All entropies are in nats. The external field is zero.

#ifndef SOFIC_ISING_ANALYTICS_HPP_
#define SOFIC_ISING_ANALYTICS_HPP_

#include <array>

namespace sofic {

// Coupling J (inverse temperature absorbed) and free-group rank r. The tree
// degree is 2r. J = 0 is accepted as the infinite-temperature limit.
struct IsingParams {
  double coupling = 0.0;
  int rank = 1;

  // Throws Error(kInvalidArgument) unless J >= 0 is finite and r >= 1.
  void Validate() const;
  // r = 1 is the integer line; both phase-transition thresholds are infinite.
  bool degenerate() const { return rank == 1; }
};

// alpha(t) = (e^{-2J} + e^{-2t}) / (2 e^{-2J} + 2 cosh 2t), the probability of
// spin -1 at a site.
double Alpha(double t, const IsingParams& params);

// beta(t) = 1 / (e^{2(J+t)} + 1), the probability of a +1 -> -1 transition.
double Beta(double t, const IsingParams& params);

struct IsingChain {
  double t = 0.0;
  double alpha = 0.5;       // P(-1)
  double beta_plus = 0.5;   // beta(t)  = P(+1 -> -1)
  double beta_minus = 0.5;  // beta(-t) = P(-1 -> +1)
  IsingParams params;

  std::array<double, 2> Marginal() const { return {alpha, 1.0 - alpha}; }
  // Row-stochastic kernel, rows indexed by the current spin.
  std::array<std::array<double, 2>, 2> Transition() const {
    return {{{1.0 - beta_minus, beta_minus}, {beta_plus, 1.0 - beta_plus}}};
  }
  // Joint law of (x(e), x(s_i)); symmetric by detailed balance.
  std::array<std::array<double, 2>, 2> EdgeMarginal() const;
  // |alpha beta(-t) - (1 - alpha) beta(t)|.
  double StationarityResidual() const;
};

IsingChain BuildMuT(double t, const IsingParams& params);

// u(mu_t) = -Jr (1 + 2 alpha [beta(t) - beta(-t)] - 2 beta(t)). Each edge
// contributes half its energy to each endpoint.
double EnergyDensity(const IsingChain& chain);

// The same energy computed as -Jr E[x(e) x(s_i)] directly from the joint law.
double EnergyDensityFromJoint(const IsingChain& chain);

// (1 - r) H(alpha) + r [alpha H(beta(-t)) + (1 - alpha) H(beta(t))].
double FInvariant(const IsingChain& chain);

// Conditional entropy of x(s_i) given x(e). For a completely homogeneous chain
// every generator gives the same value, so this is also the minimum.
double EdgeEntropy(const IsingChain& chain);

struct PressureReport {
  double energy = 0.0;          // u
  double f_invariant = 0.0;     // f
  double f_pressure = 0.0;      // f - u
  double edge_entropy = 0.0;    // H^edge
  double edge_pressure = 0.0;   // H^edge - u, an upper bound for any sofic pressure
};

PressureReport ComputePressureReport(const IsingChain& chain);

// t -> f-pressure of mu_t.
double FPressure(double t, const IsingParams& params);

// Closed form of the second t-derivative of the f-pressure at t = 0:
// (tanh J + 1) ((2r - 1) tanh J - 1).
double D2PressureAtZero(const IsingParams& params);

// Central second difference of FPressure at t = 0. Requires 0 < h <= 1e-2.
double D2PressureFiniteDifference(const IsingParams& params, double h);

// Central first difference of FPressure at t = 0. Requires 0 < h <= 1e-2.
double D1PressureFiniteDifference(const IsingParams& params, double h);

// Energy of the free-boundary state mu_0, -Jr tanh J.
double FreeBoundaryEnergy(const IsingParams& params);

// The all-plus point mass has zero entropy and energy -Jr, so its pressure is
// Jr over every sofic approximation.
double DeltaPlusEnergy(const IsingParams& params);
double DeltaPlusPressure(const IsingParams& params);

}  // namespace sofic

#endif  // SOFIC_ISING_ANALYTICS_HPP_
