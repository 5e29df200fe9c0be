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

// Small numerically careful helpers shared by the analytic modules.

#ifndef SOFIC_NUMERICS_HPP_
#define SOFIC_NUMERICS_HPP_

#include <span>

namespace sofic {

// x * log(x) with the continuous extension 0 at x = 0.
double XLogX(double x);

// Binary entropy in nats; H(0) = H(1) = 0.
double BinaryEntropy(double p);

// Shannon entropy in nats of a (not necessarily normalized) weight vector
// that is assumed to sum to one. Zero cells contribute nothing.
double ShannonEntropy(std::span<const double> probabilities);

// log(1 + exp(x)) without overflow.
double Softplus(double x);

// 1 / (1 + exp(-x)) without overflow.
double Logistic(double x);

// log(cosh(x)) without overflow.
double LogCosh(double x);

// log(sum(exp(values))). Returns -inf for an empty span or all -inf input.
double LogSumExp(std::span<const double> values);

// log of the binomial coefficient C(n, k) via lgamma; -inf when k is out of
// range.
double LogBinomial(long n, long k);

}  // namespace sofic

#endif  // SOFIC_NUMERICS_HPP_
