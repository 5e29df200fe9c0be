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

#include "sofic/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sofic {

double XLogX(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double BinaryEntropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  // log1p keeps the (1-p) term accurate when p is tiny.
  return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

double ShannonEntropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) h -= XLogX(p);
  return h;
}

double Softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double Logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double LogCosh(double x) {
  const double a = std::fabs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

double LogSumExp(std::span<const double> values) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (values.empty()) return kNegInf;
  const double m = *std::max_element(values.begin(), values.end());
  if (m == kNegInf) return kNegInf;
  if (std::isinf(m)) return m;
  double s = 0.0;
  for (double v : values) s += std::exp(v - m);
  return m + std::log(s);
}

double LogBinomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return -std::numeric_limits<double>::infinity();
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace sofic
