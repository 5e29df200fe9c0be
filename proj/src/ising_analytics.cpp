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

#include "sofic/ising_analytics.hpp"

#include <cmath>
#include <string>

#include "sofic/error.hpp"
#include "sofic/numerics.hpp"

namespace sofic {

void IsingParams::Validate() const {
  if (!std::isfinite(coupling) || coupling < 0.0) {
    ThrowInvalid("coupling J must be finite and >= 0, got " +
                 FormatNumber(coupling));
  }
  if (rank < 1) ThrowInvalid("rank r must be >= 1, got " + std::to_string(rank));
}

double Alpha(double t, const IsingParams& params) {
  params.Validate();
  const double j = params.coupling;
  // Divide numerator and denominator by e^{2|t|} (the largest exponential,
  // since -2J <= 0 <= 2|t|).
  const double m = 2.0 * std::fabs(t);
  const double a = std::exp(-2.0 * j - m);
  const double num = a + std::exp(-2.0 * t - m);
  const double den = 2.0 * a + std::exp(2.0 * t - m) + std::exp(-2.0 * t - m);
  return num / den;
}

double Beta(double t, const IsingParams& params) {
  params.Validate();
  return Logistic(-2.0 * (params.coupling + t));
}

std::array<std::array<double, 2>, 2> IsingChain::EdgeMarginal() const {
  const auto k = Transition();
  const auto p = Marginal();
  return {{{p[0] * k[0][0], p[0] * k[0][1]}, {p[1] * k[1][0], p[1] * k[1][1]}}};
}

double IsingChain::StationarityResidual() const {
  return std::fabs(alpha * beta_minus - (1.0 - alpha) * beta_plus);
}

IsingChain BuildMuT(double t, const IsingParams& params) {
  if (!std::isfinite(t)) ThrowInvalid("t must be finite");
  IsingChain chain;
  chain.t = t;
  chain.params = params;
  chain.alpha = Alpha(t, params);
  chain.beta_plus = Beta(t, params);
  chain.beta_minus = Beta(-t, params);
  return chain;
}

double EnergyDensity(const IsingChain& chain) {
  const double j = chain.params.coupling;
  const double r = chain.params.rank;
  return -j * r *
         (1.0 + 2.0 * chain.alpha * (chain.beta_plus - chain.beta_minus) -
          2.0 * chain.beta_plus);
}

double EnergyDensityFromJoint(const IsingChain& chain) {
  const auto joint = chain.EdgeMarginal();
  const double correlation =
      joint[0][0] + joint[1][1] - joint[0][1] - joint[1][0];
  return -chain.params.coupling * chain.params.rank * correlation;
}

double EdgeEntropy(const IsingChain& chain) {
  return chain.alpha * BinaryEntropy(chain.beta_minus) +
         (1.0 - chain.alpha) * BinaryEntropy(chain.beta_plus);
}

double FInvariant(const IsingChain& chain) {
  const double r = chain.params.rank;
  return (1.0 - r) * BinaryEntropy(chain.alpha) + r * EdgeEntropy(chain);
}

PressureReport ComputePressureReport(const IsingChain& chain) {
  PressureReport report;
  report.energy = EnergyDensity(chain);
  report.f_invariant = FInvariant(chain);
  report.edge_entropy = EdgeEntropy(chain);
  report.f_pressure = report.f_invariant - report.energy;
  report.edge_pressure = report.edge_entropy - report.energy;
  return report;
}

double FPressure(double t, const IsingParams& params) {
  const IsingChain chain = BuildMuT(t, params);
  return FInvariant(chain) - EnergyDensity(chain);
}

double D2PressureAtZero(const IsingParams& params) {
  params.Validate();
  const double th = std::tanh(params.coupling);
  return (th + 1.0) * ((2.0 * params.rank - 1.0) * th - 1.0);
}

namespace {

void CheckStep(double h) {
  if (!(h > 0.0) || h > 1e-2) {
    ThrowInvalid("finite-difference step must satisfy 0 < h <= 1e-2, got " +
                 FormatNumber(h));
  }
}

}  // namespace

double D2PressureFiniteDifference(const IsingParams& params, double h) {
  CheckStep(h);
  const double p0 = FPressure(0.0, params);
  return (FPressure(h, params) - 2.0 * p0 + FPressure(-h, params)) / (h * h);
}

double D1PressureFiniteDifference(const IsingParams& params, double h) {
  CheckStep(h);
  return (FPressure(h, params) - FPressure(-h, params)) / (2.0 * h);
}

double FreeBoundaryEnergy(const IsingParams& params) {
  params.Validate();
  return -params.coupling * params.rank * std::tanh(params.coupling);
}

double DeltaPlusEnergy(const IsingParams& params) {
  params.Validate();
  return -params.coupling * params.rank;
}

double DeltaPlusPressure(const IsingParams& params) {
  return 0.0 - DeltaPlusEnergy(params);
}

}  // namespace sofic
