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
#include <random>

#include <gtest/gtest.h>

#include "random_chain.hpp"
#include "sofic/bp_solver.hpp"
#include "sofic/error.hpp"

namespace sofic {
namespace {

using testing::RandomChain;
using testing::RandomInteraction;

TEST(NNMarkov, RandomChainsAreValid) {
  std::mt19937_64 gen(1);
  for (int q : {2, 3, 5}) {
    EXPECT_NO_THROW(RandomChain(q, 3, gen).Validate());
  }
}

TEST(NNMarkov, TwoPressureFormsAgree) {
  std::mt19937_64 gen(11);
  for (int k = 0; k < 1000; ++k) {
    const int q = std::array{2, 3, 5}[k % 3];
    const int r = 2 + (k / 3) % 2;
    const NNChain c = RandomChain(q, r, gen);
    const NNInteraction inter = RandomInteraction(q, r, gen);
    EXPECT_NEAR(FPressureNN(c, inter), FPressureNNConditional(c, inter), 1e-12);
  }
}

TEST(NNMarkov, HomogenizeNeverDecreasesPressure) {
  std::mt19937_64 gen(12);
  for (int k = 0; k < 1000; ++k) {
    const int q = std::array{2, 3, 5}[k % 3];
    const int r = 2 + (k / 3) % 2;
    const NNChain c = RandomChain(q, r, gen);
    const NNInteraction inter = RandomInteraction(q, r, gen);
    const NNChain h = Homogenize(c, inter);
    EXPECT_TRUE(h.IsHomogeneous());
    EXPECT_GE(FPressureNN(h, inter), FPressureNN(c, inter) - 1e-12);
  }
}

TEST(NNMarkov, HomogenizeKeepsFirstKernelOnTies) {
  std::mt19937_64 gen(13);
  NNChain c = RandomChain(3, 1, gen);
  c.kernels.push_back(c.kernels[0]);
  c.kernels.push_back(c.kernels[0]);
  const NNInteraction inter = RandomInteraction(3, 3, gen);
  const NNChain h = Homogenize(c, inter);
  EXPECT_EQ(h.kernels[0], c.kernels[0]);
}

TEST(NNMarkov, IsingReduction) {
  for (double j : {0.2, 0.5, 1.1}) {
    for (int r : {2, 3}) {
      const IsingParams p{j, r};
      const NNInteraction inter = IsingInteraction(p);
      for (double t : {-1.0, 0.0, 0.4, 1.3}) {
        const IsingChain c = BuildMuT(t, p);
        const NNChain nn = FromIsingChain(c);
        EXPECT_NEAR(FPressureNN(nn, inter), FPressure(t, p), 1e-12);
        EXPECT_NEAR(StarConditionalResidual(nn, inter), GibbsConditionalResidual(c), 1e-12);
      }
    }
  }
}

TEST(NNMarkov, FieldParametrizationMatchesMuT) {
  const IsingParams p{0.5, 2};
  const NNInteraction inter = IsingInteraction(p);
  for (double t : {-2.0, -0.3, 0.0, 0.8}) {
    // FamilyField(2, 1, s) favours spin -1 for s > 0, giving mu_{-s}.
    const NNChain nn = ChainFromField(FamilyField(2, 1, -t), inter);
    const NNChain ref = FromIsingChain(BuildMuT(t, p));
    for (int a = 0; a < 2; ++a) {
      EXPECT_NEAR(nn.marginal[a], ref.marginal[a], 1e-14);
      for (int b = 0; b < 2; ++b) EXPECT_NEAR(nn.kernels[0](a, b), ref.kernels[0](a, b), 1e-14);
    }
  }
}

TEST(NNMarkov, BeliefPropagationReproducesPlusState) {
  for (int r = 2; r <= 4; ++r) {
    const IsingParams p{1.3 * UniquenessThreshold(r).value, r};
    const FixedPointSet roots = SolveFixedPoints(p);
    ASSERT_TRUE(roots.has_pair());
    const NNInteraction inter = IsingInteraction(p);
    const std::vector<double> init = {-1.0, 1.0};
    const GibbsSolution sol = SolveMarkovGibbs(inter, init, 1e-12);
    const NNChain ref = FromIsingChain(BuildMuT(*roots.t_plus, p));
    for (int a = 0; a < 2; ++a) {
      EXPECT_NEAR(sol.chain.marginal[a], ref.marginal[a], 1e-8);
      for (int b = 0; b < 2; ++b) {
        EXPECT_NEAR(sol.chain.kernels[0](a, b), ref.kernels[0](a, b), 1e-8);
      }
    }
    EXPECT_NEAR(-FamilyParameter(sol.field, 1), *roots.t_plus, 1e-8);
  }
}

TEST(NNMarkov, BeliefPropagationBelowUniquenessFindsFreeState) {
  const IsingParams p{0.8 * UniquenessThreshold(2).value, 2};
  const std::vector<double> init = {-3.0, 3.0};
  const GibbsSolution sol = SolveMarkovGibbs(IsingInteraction(p), init, 1e-12);
  EXPECT_NEAR(sol.chain.marginal[0], 0.5, 1e-9);
}

TEST(NNMarkov, PottsTwoColoursIsShiftedIsing) {
  // -2J [a == b] = -J ab - J, so the Potts pressure at coupling 2J exceeds
  // the Ising one by rJ.
  const double j = 0.45;
  const int r = 3;
  const NNInteraction potts = PottsInteraction(2, r, 2 * j);
  const std::vector<double> grid = {-1.0, -0.2, 0.0, 0.5, 1.5};
  const auto curve = PottsFamilyCurve(potts, grid, 1);
  for (const CurvePoint& pt : curve) {
    EXPECT_NEAR(pt.f_pressure - r * j, FPressure(pt.t, {j, r}), 1e-12);
  }
}

TEST(NNMarkov, PottsSolverPreservesSymmetry) {
  const NNInteraction potts = PottsInteraction(3, 2, 1.2);
  const std::vector<double> flat = {0.0, 0.0, 0.0};
  const GibbsSolution free_state = SolveMarkovGibbs(potts, flat, 1e-12);
  EXPECT_EQ(free_state.field[0], free_state.field[1]);
  EXPECT_EQ(free_state.field[1], free_state.field[2]);

  const std::vector<double> tilt = FamilyField(3, 1, 0.7);
  const GibbsSolution ordered = SolveMarkovGibbs(potts, tilt, 1e-12);
  EXPECT_EQ(ordered.field[1], ordered.field[2]);
  EXPECT_LE(ordered.residual, 1e-12);

  // Relabelling the colours relabels the solution exactly.
  const std::vector<double> permuted = {tilt[2], tilt[0], tilt[1]};
  const GibbsSolution moved = SolveMarkovGibbs(potts, permuted, 1e-12);
  EXPECT_EQ(moved.field[0], ordered.field[2]);
  EXPECT_EQ(moved.field[1], ordered.field[0]);
  EXPECT_EQ(moved.field[2], ordered.field[1]);
}

TEST(NNMarkov, FamilyFieldShape) {
  const std::vector<double> h = FamilyField(5, 2, 0.5);
  EXPECT_DOUBLE_EQ(h[0], 2 * 0.5 * (1 - 0.4));
  EXPECT_DOUBLE_EQ(h[4], -2 * 0.5 * 0.4);
  EXPECT_NEAR(FamilyParameter(h, 2), 0.5, 1e-15);
  EXPECT_THROW(FamilyField(5, 0, 0.1), Error);
  EXPECT_THROW(FamilyField(5, 5, 0.1), Error);
}

TEST(NNMarkov, StarEnumerationLimit) {
  std::mt19937_64 gen(3);
  const NNChain c = RandomChain(5, 3, gen);
  const NNInteraction inter = RandomInteraction(5, 3, gen);
  try {
    StarConditionalResidual(c, inter, 10);
    FAIL() << "expected kTooLarge";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
  EXPECT_NO_THROW(StarConditionalResidual(c, inter));
}

TEST(NNMarkov, ValidationErrors) {
  std::mt19937_64 gen(4);
  NNChain c = RandomChain(3, 2, gen);
  const NNInteraction inter3 = RandomInteraction(3, 2, gen);
  const NNInteraction inter2 = RandomInteraction(2, 2, gen);
  try {
    FPressureNN(c, inter2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
  NNChain bad_row = c;
  bad_row.kernels[0](0, 0) += 0.01;
  EXPECT_THROW(FPressureNN(bad_row, inter3), Error);
  NNChain bad_marginal = c;
  bad_marginal.marginal = {0.2, 0.3, 0.5};
  EXPECT_THROW(bad_marginal.Validate(), Error);
  NNInteraction asym = inter3;
  asym.edge_energy(0, 1) += 1.0;
  EXPECT_THROW(asym.Validate(), Error);
  EXPECT_THROW(PottsInteraction(1, 2, 1.0), Error);
}

TEST(NNMarkov, ConstraintSupportIsEnforced) {
  NNInteraction inter = PottsInteraction(2, 2, 0.3);
  SquareMatrix m(2, 1.0);
  m(1, 1) = 0.0;  // hard-core: two occupied sites may not be adjacent
  inter.constraint = m;
  const std::vector<double> field = {0.0, 0.0};
  const NNChain free_chain = ChainFromField(field, PottsInteraction(2, 2, 0.3));
  EXPECT_THROW(FPressureNN(free_chain, inter), Error);

  NNChain ok;
  ok.marginal = {2.0 / 3.0, 1.0 / 3.0};
  SquareMatrix k(2);
  k(0, 0) = 0.5;
  k(0, 1) = 0.5;
  k(1, 0) = 1.0;
  ok.kernels = {k, k};
  EXPECT_NO_THROW(FPressureNN(ok, inter));
}

}  // namespace
}  // namespace sofic
