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

#include "sofic/sofic.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace {

TEST(CApi, VersionAndNames) {
  EXPECT_STREQ(sofic_version(), "0.1.0");
  EXPECT_STREQ(sofic_status_name(SOFIC_OK), "ok");
  EXPECT_STREQ(sofic_region_name(SOFIC_REGION_UNIQUE_GIBBS), "unique-Gibbs");
  EXPECT_EQ(sofic_resolve_threads(5), 5);
}

TEST(CApi, NullPointersAreRejected) {
  EXPECT_EQ(sofic_phi(1.0, nullptr), SOFIC_INVALID_ARGUMENT);
  EXPECT_NE(std::string(sofic_last_error()), "");
  sofic_ising_chain_info info;
  EXPECT_EQ(sofic_ising_chain_get_info(nullptr, &info), SOFIC_INVALID_ARGUMENT);
  EXPECT_EQ(sofic_map_sample(5, 2, 1, 0, nullptr), SOFIC_INVALID_ARGUMENT);
  sofic_ising_chain_destroy(nullptr);
  sofic_nn_model_destroy(nullptr);
  sofic_nn_chain_destroy(nullptr);
  sofic_map_destroy(nullptr);
}

TEST(CApi, InvalidArgumentsSetLastError) {
  sofic_ising_chain* chain = nullptr;
  EXPECT_EQ(sofic_ising_chain_create(0.0, -1.0, 2, &chain), SOFIC_INVALID_ARGUMENT);
  EXPECT_EQ(chain, nullptr);
  EXPECT_GT(std::strlen(sofic_last_error()), 0u);
  EXPECT_EQ(sofic_ising_chain_create(0.0, 0.5, 0, &chain), SOFIC_INVALID_ARGUMENT);
  EXPECT_EQ(sofic_ising_chain_create(std::nan(""), 0.5, 2, &chain), SOFIC_INVALID_ARGUMENT);
  // A success clears the message.
  double v = 0;
  EXPECT_EQ(sofic_phi(1.0, &v), SOFIC_OK);
  EXPECT_STREQ(sofic_last_error(), "");
}

TEST(CApi, IsingChainRoundTrip) {
  sofic_ising_chain* chain = nullptr;
  ASSERT_EQ(sofic_ising_chain_create(0.0, 0.5, 2, &chain), SOFIC_OK);
  sofic_ising_chain_info info;
  ASSERT_EQ(sofic_ising_chain_get_info(chain, &info), SOFIC_OK);
  EXPECT_DOUBLE_EQ(info.alpha, 0.5);
  EXPECT_NEAR(info.beta_plus, 0.26894142136999512, 1e-15);
  sofic_pressure_report rep;
  ASSERT_EQ(sofic_ising_chain_pressure(chain, &rep), SOFIC_OK);
  EXPECT_NEAR(rep.f_pressure, 0.93337619447650036, 1e-13);
  double joint[4];
  ASSERT_EQ(sofic_ising_chain_edge_marginal(chain, joint), SOFIC_OK);
  EXPECT_NEAR(joint[0] + joint[1] + joint[2] + joint[3], 1.0, 1e-15);
  double residual = 1;
  ASSERT_EQ(sofic_ising_chain_gibbs_residual(chain, &residual), SOFIC_OK);
  EXPECT_LT(residual, 1e-12);

  sofic_nn_chain* nn = nullptr;
  sofic_nn_model* model = nullptr;
  ASSERT_EQ(sofic_nn_chain_from_ising(chain, &nn), SOFIC_OK);
  ASSERT_EQ(sofic_nn_model_create_ising(0.5, 2, &model), SOFIC_OK);
  double nn_pressure = 0;
  ASSERT_EQ(sofic_nn_f_pressure(nn, model, &nn_pressure), SOFIC_OK);
  EXPECT_NEAR(nn_pressure, rep.f_pressure, 1e-12);
  sofic_nn_chain_destroy(nn);
  sofic_nn_model_destroy(model);
  sofic_ising_chain_destroy(chain);
}

TEST(CApi, FixedPointsAndThresholds) {
  sofic_fixed_points fp;
  ASSERT_EQ(sofic_solve_fixed_points(0.5, 2, 0.0, &fp), SOFIC_OK);
  ASSERT_TRUE(fp.has_pair);
  EXPECT_NEAR(fp.t_plus, 1.2360068090648183, 1e-10);
  EXPECT_DOUBLE_EQ(fp.t_minus, -fp.t_plus);
  sofic_threshold th;
  ASSERT_EQ(sofic_uniqueness_threshold(1, &th), SOFIC_OK);
  EXPECT_TRUE(th.degenerate);
  EXPECT_TRUE(std::isinf(th.value));
  ASSERT_EQ(sofic_reconstruction_threshold(2, &th), SOFIC_OK);
  EXPECT_NEAR(th.value, 0.65847894846240835, 1e-12);
  sofic_region region;
  ASSERT_EQ(sofic_classify_region(0.2, 2, &region), SOFIC_OK);
  EXPECT_EQ(region, SOFIC_REGION_UNIQUE_GIBBS);
}

TEST(CApi, TheoremBSmallGrid) {
  sofic_theorem_b_report rep;
  ASSERT_EQ(sofic_verify_theorem_b(10, 200, &rep), SOFIC_OK);
  EXPECT_EQ(rep.failure_count, 0u);
  EXPECT_GT(rep.rho_margin_min, 0);
}

TEST(CApi, NnChainBuffers) {
  sofic_nn_model* model = nullptr;
  ASSERT_EQ(sofic_nn_model_create_potts(3, 2, 1.0, &model), SOFIC_OK);
  const double field[2] = {0, 0};
  sofic_nn_chain* chain = nullptr;
  EXPECT_EQ(sofic_nn_chain_from_field(model, field, 2, &chain), SOFIC_DIMENSION);
  const double field3[3] = {0.3, 0.0, 0.0};
  ASSERT_EQ(sofic_nn_chain_from_field(model, field3, 3, &chain), SOFIC_OK);
  int q = 0, r = 0;
  ASSERT_EQ(sofic_nn_chain_shape(chain, &q, &r), SOFIC_OK);
  EXPECT_EQ(q, 3);
  EXPECT_EQ(r, 2);
  std::vector<double> marginal(3), kernels(18);
  EXPECT_EQ(sofic_nn_chain_get(chain, marginal.data(), 2, nullptr, 0), SOFIC_BUFFER_TOO_SMALL);
  ASSERT_EQ(sofic_nn_chain_get(chain, marginal.data(), 3, kernels.data(), 18), SOFIC_OK);
  EXPECT_NEAR(marginal[0] + marginal[1] + marginal[2], 1.0, 1e-14);

  sofic_nn_chain* copy = nullptr;
  ASSERT_EQ(sofic_nn_chain_create(3, 2, marginal.data(), kernels.data(), &copy), SOFIC_OK);
  double a = 0, b = 0;
  ASSERT_EQ(sofic_nn_f_pressure(chain, model, &a), SOFIC_OK);
  ASSERT_EQ(sofic_nn_f_pressure_conditional(copy, model, &b), SOFIC_OK);
  EXPECT_NEAR(a, b, 1e-12);

  // Mismatched rank between chain and model.
  sofic_nn_model* model3 = nullptr;
  ASSERT_EQ(sofic_nn_model_create_potts(3, 3, 1.0, &model3), SOFIC_OK);
  EXPECT_EQ(sofic_nn_f_pressure(chain, model3, &a), SOFIC_DIMENSION);

  sofic_nn_chain_destroy(copy);
  sofic_nn_chain_destroy(chain);
  sofic_nn_model_destroy(model3);
  sofic_nn_model_destroy(model);
}

TEST(CApi, SolveGibbsRecoversPlusState) {
  sofic_nn_model* model = nullptr;
  ASSERT_EQ(sofic_nn_model_create_ising(0.5, 2, &model), SOFIC_OK);
  const double init[2] = {0.0, 3.0};
  sofic_nn_chain* chain = nullptr;
  double field[2];
  sofic_gibbs_info info;
  ASSERT_EQ(sofic_nn_solve_gibbs(model, init, 2, 1e-13, 0, &chain, field, &info), SOFIC_OK);
  EXPECT_LT(info.residual, 1e-10);
  double marginal[2];
  ASSERT_EQ(sofic_nn_chain_get(chain, marginal, 2, nullptr, 0), SOFIC_OK);
  sofic_ising_chain* plus = nullptr;
  ASSERT_EQ(sofic_ising_chain_create(1.2360068090648183, 0.5, 2, &plus), SOFIC_OK);
  sofic_ising_chain_info pi;
  ASSERT_EQ(sofic_ising_chain_get_info(plus, &pi), SOFIC_OK);
  EXPECT_NEAR(marginal[0], pi.alpha, 1e-8);
  sofic_ising_chain_destroy(plus);
  sofic_nn_chain_destroy(chain);
  sofic_nn_model_destroy(model);
}

TEST(CApi, MapRoundTripAndLimits) {
  const int perms[6] = {1, 2, 0, 0, 2, 1};
  sofic_map* map = nullptr;
  ASSERT_EQ(sofic_map_create(3, 2, perms, &map), SOFIC_OK);
  int n = 0, r = 0;
  ASSERT_EQ(sofic_map_shape(map, &n, &r), SOFIC_OK);
  EXPECT_EQ(n, 3);
  EXPECT_EQ(r, 2);
  int back[3];
  ASSERT_EQ(sofic_map_get_perm(map, 1, back, 3), SOFIC_OK);
  EXPECT_EQ(back[0], 0);
  EXPECT_EQ(back[1], 2);
  EXPECT_EQ(sofic_map_get_perm(map, 2, back, 3), SOFIC_INVALID_ARGUMENT);
  EXPECT_EQ(sofic_map_get_perm(map, 0, back, 2), SOFIC_BUFFER_TOO_SMALL);
  const int8_t spins[3] = {1, -1, -1};
  double e = 0;
  ASSERT_EQ(sofic_total_energy(map, spins, 3, 0.5, &e), SOFIC_OK);
  EXPECT_DOUBLE_EQ(e, -1.0);
  EXPECT_EQ(sofic_total_energy(map, spins, 2, 0.5, &e), SOFIC_DIMENSION);
  sofic_map_destroy(map);

  const int bad[3] = {0, 0, 1};
  EXPECT_EQ(sofic_map_create(3, 1, bad, &map), SOFIC_INVALID_ARGUMENT);

  sofic_map* big = nullptr;
  ASSERT_EQ(sofic_map_sample(40, 2, 1, 0, &big), SOFIC_OK);
  double logz = 0;
  EXPECT_EQ(sofic_log_partition_exact(big, 0.5, &logz), SOFIC_TOO_LARGE);
  sofic_map_destroy(big);

  sofic_ising_chain* chain = nullptr;
  ASSERT_EQ(sofic_ising_chain_create(0.0, 0.5, 2, &chain), SOFIC_OK);
  sofic_moment_estimate est;
  EXPECT_EQ(sofic_second_moment_exhaustive(8, 2, chain, 0.1, 1, &est), SOFIC_TOO_LARGE);
  double a = 0;
  ASSERT_EQ(sofic_annealed_log_count(10, 2, chain, 1.0, &a), SOFIC_OK);
  EXPECT_EQ(a, 10 * std::log(2.0));
  sofic_ising_chain_destroy(chain);
}

TEST(CApi, GlauberBuffer) {
  sofic_map* map = nullptr;
  ASSERT_EQ(sofic_map_sample(50, 2, 3, 0, &map), SOFIC_OK);
  size_t needed = 0;
  ASSERT_EQ(sofic_glauber_record_count(1000, 100, &needed), SOFIC_OK);
  EXPECT_EQ(needed, 11u);
  std::vector<int64_t> steps(needed);
  std::vector<double> mag(needed);
  size_t written = 0;
  EXPECT_EQ(sofic_glauber_run(map, 0.5, 1000, 9, 100, nullptr, steps.data(), mag.data(), 5,
                              &written),
            SOFIC_BUFFER_TOO_SMALL);
  EXPECT_EQ(written, needed);
  ASSERT_EQ(sofic_glauber_run(map, 0.5, 1000, 9, 100, nullptr, steps.data(), mag.data(),
                              needed, &written),
            SOFIC_OK);
  EXPECT_EQ(written, needed);
  EXPECT_EQ(mag[0], 1.0);
  EXPECT_EQ(steps.back(), 1000);
  sofic_map_destroy(map);
}

TEST(CApi, Coexistence) {
  const int ns[2] = {6, 8};
  sofic_coexistence_row rows[2];
  ASSERT_EQ(sofic_coexistence(ns, 2, 2, 0.5, 0.1, 10, 1, 1, 0, rows), SOFIC_OK);
  EXPECT_EQ(rows[0].n, 6);
  EXPECT_EQ(rows[1].samples, 10);
  EXPECT_EQ(sofic_coexistence(ns, 2, 2, 0.5, 0.1, 0, 1, 1, 0, rows), SOFIC_INVALID_ARGUMENT);
}

}  // namespace
