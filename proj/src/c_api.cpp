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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "sofic/bp_solver.hpp"
#include "sofic/error.hpp"
#include "sofic/ising_analytics.hpp"
#include "sofic/nn_markov.hpp"
#include "sofic/parallel.hpp"
#include "sofic/sofic_sim.hpp"
#include "sofic/threshold_analysis.hpp"

#ifndef SOFIC_VERSION_STRING
#define SOFIC_VERSION_STRING "unknown"
#endif

struct sofic_ising_chain {
  sofic::IsingChain value;
};
struct sofic_nn_model {
  sofic::NNInteraction value;
};
struct sofic_nn_chain {
  sofic::NNChain value;
};
struct sofic_map {
  sofic::SoficMap value;
};

namespace {

thread_local std::string g_last_error;

sofic_status Fail(sofic_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

sofic_status FromCode(sofic::ErrorCode code) {
  switch (code) {
    case sofic::ErrorCode::kInvalidArgument:
      return SOFIC_INVALID_ARGUMENT;
    case sofic::ErrorCode::kDimensionMismatch:
      return SOFIC_DIMENSION;
    case sofic::ErrorCode::kTooLarge:
      return SOFIC_TOO_LARGE;
    case sofic::ErrorCode::kNoConvergence:
      return SOFIC_NO_CONVERGENCE;
  }
  return SOFIC_INTERNAL;
}

template <class F>
sofic_status Guard(F&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const sofic::Error& e) {
    return Fail(FromCode(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(SOFIC_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(SOFIC_INTERNAL, e.what());
  } catch (...) {
    return Fail(SOFIC_INTERNAL, "unknown error");
  }
}

// Returns true if any pointer is null.
template <class... Ptr>
bool AnyNull(const Ptr*... p) {
  return ((p == nullptr) || ...);
}

sofic_status NullArgument() {
  return Fail(SOFIC_INVALID_ARGUMENT, "null pointer argument");
}

sofic::IsingParams Params(double coupling, int rank) {
  sofic::IsingParams p{coupling, rank};
  p.Validate();
  return p;
}

sofic::SquareMatrix MatrixFrom(const double* data, int q) {
  sofic::SquareMatrix m(q);
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) m(a, b) = data[a * q + b];
  }
  return m;
}

}  // namespace

extern "C" {

const char* sofic_version(void) { return SOFIC_VERSION_STRING; }

const char* sofic_last_error(void) { return g_last_error.c_str(); }

const char* sofic_status_name(sofic_status status) {
  switch (status) {
    case SOFIC_OK:
      return "ok";
    case SOFIC_INVALID_ARGUMENT:
      return "invalid argument";
    case SOFIC_DIMENSION:
      return "dimension mismatch";
    case SOFIC_TOO_LARGE:
      return "problem too large";
    case SOFIC_NO_CONVERGENCE:
      return "no convergence";
    case SOFIC_BUFFER_TOO_SMALL:
      return "buffer too small";
    case SOFIC_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

int sofic_resolve_threads(int requested) { return sofic::ResolveThreads(requested); }

sofic_status sofic_ising_chain_create(double t, double coupling, int rank,
                                      sofic_ising_chain** out) {
  if (AnyNull(out)) return NullArgument();
  return Guard([&] {
    *out = new sofic_ising_chain{sofic::BuildMuT(t, Params(coupling, rank))};
    return SOFIC_OK;
  });
}

void sofic_ising_chain_destroy(sofic_ising_chain* chain) { delete chain; }

sofic_status sofic_ising_chain_get_info(const sofic_ising_chain* chain,
                                        sofic_ising_chain_info* out) {
  if (AnyNull(chain, out)) return NullArgument();
  const sofic::IsingChain& c = chain->value;
  *out = {c.t, c.alpha, c.beta_plus, c.beta_minus, c.params.coupling, c.params.rank};
  return SOFIC_OK;
}

sofic_status sofic_ising_chain_edge_marginal(const sofic_ising_chain* chain,
                                             double out[4]) {
  if (AnyNull(chain, out)) return NullArgument();
  const auto joint = chain->value.EdgeMarginal();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) out[2 * a + b] = joint[a][b];
  }
  return SOFIC_OK;
}

sofic_status sofic_ising_chain_pressure(const sofic_ising_chain* chain,
                                        sofic_pressure_report* out) {
  if (AnyNull(chain, out)) return NullArgument();
  return Guard([&] {
    const sofic::PressureReport r = sofic::ComputePressureReport(chain->value);
    *out = {r.energy, r.f_invariant, r.f_pressure, r.edge_entropy, r.edge_pressure};
    return SOFIC_OK;
  });
}

sofic_status sofic_ising_chain_gibbs_residual(const sofic_ising_chain* chain,
                                              double* out) {
  if (AnyNull(chain, out)) return NullArgument();
  return Guard([&] {
    *out = sofic::GibbsConditionalResidual(chain->value);
    return SOFIC_OK;
  });
}

sofic_status sofic_f_pressure(double t, double coupling, int rank, double* out) {
  if (AnyNull(out)) return NullArgument();
  return Guard([&] {
    if (!std::isfinite(t)) sofic::ThrowInvalid("t must be finite");
    *out = sofic::FPressure(t, Params(coupling, rank));
    return SOFIC_OK;
  });
}

sofic_status sofic_d2_pressure_at_zero(double coupling, int rank, double* out) {
  if (AnyNull(out)) return NullArgument();
  return Guard([&] {
    *out = sofic::D2PressureAtZero(Params(coupling, rank));
    return SOFIC_OK;
  });
}

sofic_status sofic_d2_pressure_fd(double coupling, int rank, double step,
                                  double* out) {
  if (AnyNull(out)) return NullArgument();
  return Guard([&] {
    *out = sofic::D2PressureFiniteDifference(Params(coupling, rank), step);
    return SOFIC_OK;
  });
}

sofic_status sofic_d1_pressure_fd(double coupling, int rank, double step,
                                  double* out) {
  if (AnyNull(out)) return NullArgument();
  return Guard([&] {
    *out = sofic::D1PressureFiniteDifference(Params(coupling, rank), step);
    return SOFIC_OK;
  });
}

sofic_status sofic_delta_plus_pressure(double coupling, int rank, double* out) {
  if (AnyNull(out)) return NullArgument();
  return Guard([&] {
    *out = sofic::DeltaPlusPressure(Params(coupling, rank));
    return SOFIC_OK;
  });
}

sofic_status sofic_uniqueness_threshold(int rank, sofic_threshold* out) {
  if (AnyNull(out)) return NullArgument();
  return Guard([&] {
    const sofic::Threshold t = sofic::UniquenessThreshold(rank);
    *out = {t.value, t.degenerate ? 1 : 0};
    return SOFIC_OK;
  });
}

sofic_status sofic_reconstruction_threshold(int rank, sofic_threshold* out) {
  if (AnyNull(out)) return NullArgument();
  return Guard([&] {
    const sofic::Threshold t = sofic::ReconstructionThreshold(rank);
    *out = {t.value, t.degenerate ? 1 : 0};
    return SOFIC_OK;
  });
}

sofic_status sofic_solve_fixed_points(double coupling, int rank, double tol,
                                      sofic_fixed_points* out) {
  if (AnyNull(out)) return NullArgument();
  return Guard([&] {
    const double use_tol = tol > 0.0 ? tol : sofic::kDefaultFixedPointTol;
    const sofic::FixedPointSet s =
        sofic::SolveFixedPoints(Params(coupling, rank), use_tol);
    sofic_fixed_points r{};
    r.t_zero = s.t_zero;
    r.residual_zero = s.residual_zero;
    r.has_pair = s.has_pair() ? 1 : 0;
    if (s.has_pair()) {
      r.t_plus = *s.t_plus;
      r.t_minus = *s.t_minus;
      r.residual_plus = s.residual_plus;
      r.residual_minus = s.residual_minus;
    }
    r.extra_positive_roots = s.extra_positive_roots.size();
    *out = r;
    return SOFIC_OK;
  });
}

sofic_status sofic_phi(double t, double* out) {
  if (AnyNull(out)) return NullArgument();
  return Guard([&] {
    *out = sofic::Phi(t);
    return SOFIC_OK;
  });
}

sofic_status sofic_delta_plus_margin(double coupling, int rank, double* margin,
                                     int* beats) {
  if (AnyNull(margin, beats)) return NullArgument();
  return Guard([&] {
    const sofic::DeltaPlusComparison c =
        sofic::DeltaPlusBeatsFb(Params(coupling, rank));
    *margin = c.margin;
    *beats = c.beats ? 1 : 0;
    return SOFIC_OK;
  });
}

sofic_status sofic_rho(double coupling, double* out) {
  if (AnyNull(out)) return NullArgument();
  return Guard([&] {
    *out = sofic::Rho(coupling);
    return SOFIC_OK;
  });
}

sofic_status sofic_verify_theorem_b(int r_max, int grid_points,
                                    sofic_theorem_b_report* out) {
  if (AnyNull(out)) return NullArgument();
  return Guard([&] {
    const sofic::TheoremBReport rep = sofic::VerifyTheoremB(r_max, grid_points);
    sofic_theorem_b_report r{};
    r.r_max = rep.r_max;
    r.grid_points = rep.grid_points;
    r.rho_margin_min = rep.rho_margin_min;
    r.rearranged_margin_min = rep.rearranged_margin_min;
    r.dagger_margin_min = rep.dagger_margin_min;
    r.taylor_margin_min = rep.taylor_margin_min;
    r.phi_margin_at_double_uniq_min = rep.phi_margin_at_double_uniq_min;
    r.phi_margin_at_rec_min = rep.phi_margin_at_rec_min;
    r.failure_count = rep.failures.size();
    if (!rep.failures.empty()) {
      const sofic::TheoremBFailure& f = rep.failures.front();
      std::strncpy(r.first_failure_check, f.check.c_str(),
                   sizeof(r.first_failure_check) - 1);
      r.first_failure_r = f.r;
      r.first_failure_coupling = f.coupling;
      r.first_failure_margin = f.margin;
    }
    *out = r;
    return SOFIC_OK;
  });
}

sofic_status sofic_minimal_constant_find(int rank, double tol,
                                         sofic_minimal_constant* out) {
  if (AnyNull(out)) return NullArgument();
  return Guard([&] {
    const sofic::MinimalConstant c = sofic::FindMinimalConstant(
        rank, tol > 0.0 ? tol : sofic::kDefaultConstantTol);
    *out = {c.r, c.c, c.monotone_verified ? 1 : 0};
    return SOFIC_OK;
  });
}

sofic_status sofic_classify_region(double coupling, int rank, sofic_region* out) {
  if (AnyNull(out)) return NullArgument();
  return Guard([&] {
    *out = static_cast<sofic_region>(sofic::ClassifyRegion(Params(coupling, rank)));
    return SOFIC_OK;
  });
}

const char* sofic_region_name(sofic_region region) {
  switch (region) {
    case SOFIC_REGION_UNIQUE_GIBBS:
    case SOFIC_REGION_NONEQUILIBRIUM_TYPICAL:
    case SOFIC_REGION_NONEQUILIBRIUM_ALWAYS:
    case SOFIC_REGION_UNDETERMINED:
      return sofic::ToString(static_cast<sofic::RegionClass>(region)).data();
  }
  return "invalid";
}

sofic_status sofic_figure5_row_compute(double coupling, int rank,
                                       sofic_figure5_row* out) {
  if (AnyNull(out)) return NullArgument();
  return Guard([&] {
    const double grid[1] = {coupling};
    const sofic::Figure5Row row = sofic::Figure5Data(rank, grid).front();
    *out = {row.coupling, row.edge_pressure_fb, row.delta_plus_pressure,
            row.f_pressure_plus};
    return SOFIC_OK;
  });
}

sofic_status sofic_nn_model_create(int q, int rank, const double* site_energy,
                                   const double* edge_energy,
                                   const double* constraint,
                                   sofic_nn_model** out) {
  if (AnyNull(site_energy, edge_energy, out)) return NullArgument();
  return Guard([&] {
    if (q < 2 || q > 4096) sofic::ThrowInvalid("q must lie in [2, 4096]");
    sofic::NNInteraction inter;
    inter.q = q;
    inter.rank = rank;
    inter.site_energy.assign(site_energy, site_energy + q);
    inter.edge_energy = MatrixFrom(edge_energy, q);
    if (constraint != nullptr) inter.constraint = MatrixFrom(constraint, q);
    inter.Validate();
    *out = new sofic_nn_model{std::move(inter)};
    return SOFIC_OK;
  });
}

sofic_status sofic_nn_model_create_potts(int q, int rank, double coupling,
                                         sofic_nn_model** out) {
  if (AnyNull(out)) return NullArgument();
  return Guard([&] {
    if (!std::isfinite(coupling)) sofic::ThrowInvalid("coupling must be finite");
    *out = new sofic_nn_model{sofic::PottsInteraction(q, rank, coupling)};
    return SOFIC_OK;
  });
}

sofic_status sofic_nn_model_create_ising(double coupling, int rank,
                                         sofic_nn_model** out) {
  if (AnyNull(out)) return NullArgument();
  return Guard([&] {
    *out = new sofic_nn_model{sofic::IsingInteraction(Params(coupling, rank))};
    return SOFIC_OK;
  });
}

void sofic_nn_model_destroy(sofic_nn_model* model) { delete model; }

sofic_status sofic_nn_chain_create(int q, int rank, const double* marginal,
                                   const double* kernels, sofic_nn_chain** out) {
  if (AnyNull(marginal, kernels, out)) return NullArgument();
  return Guard([&] {
    if (q < 1 || q > 4096) sofic::ThrowInvalid("q must lie in [1, 4096]");
    if (rank < 1) sofic::ThrowInvalid("rank must be >= 1");
    sofic::NNChain chain;
    chain.marginal.assign(marginal, marginal + q);
    for (int i = 0; i < rank; ++i) {
      chain.kernels.push_back(MatrixFrom(kernels + static_cast<std::size_t>(i) * q * q, q));
    }
    chain.Validate();
    *out = new sofic_nn_chain{std::move(chain)};
    return SOFIC_OK;
  });
}

sofic_status sofic_nn_chain_from_ising(const sofic_ising_chain* chain,
                                       sofic_nn_chain** out) {
  if (AnyNull(chain, out)) return NullArgument();
  return Guard([&] {
    *out = new sofic_nn_chain{sofic::FromIsingChain(chain->value)};
    return SOFIC_OK;
  });
}

sofic_status sofic_nn_chain_from_field(const sofic_nn_model* model,
                                       const double* field, int q,
                                       sofic_nn_chain** out) {
  if (AnyNull(model, field, out)) return NullArgument();
  return Guard([&] {
    if (q != model->value.q) {
      throw sofic::Error(sofic::ErrorCode::kDimensionMismatch,
                         "field length must equal the model's q");
    }
    *out = new sofic_nn_chain{sofic::ChainFromField(
        std::span<const double>(field, static_cast<std::size_t>(q)), model->value)};
    return SOFIC_OK;
  });
}

void sofic_nn_chain_destroy(sofic_nn_chain* chain) { delete chain; }

sofic_status sofic_nn_chain_shape(const sofic_nn_chain* chain, int* q, int* rank) {
  if (AnyNull(chain, q, rank)) return NullArgument();
  *q = chain->value.q();
  *rank = chain->value.rank();
  return SOFIC_OK;
}

sofic_status sofic_nn_chain_get(const sofic_nn_chain* chain, double* marginal,
                                size_t marginal_len, double* kernels,
                                size_t kernels_len) {
  if (AnyNull(chain)) return NullArgument();
  const sofic::NNChain& c = chain->value;
  const auto q = static_cast<std::size_t>(c.q());
  if (marginal != nullptr) {
    if (marginal_len < q) return Fail(SOFIC_BUFFER_TOO_SMALL, "marginal buffer too small");
    std::copy(c.marginal.begin(), c.marginal.end(), marginal);
  }
  if (kernels != nullptr) {
    if (kernels_len < q * q * c.kernels.size()) {
      return Fail(SOFIC_BUFFER_TOO_SMALL, "kernel buffer too small");
    }
    for (std::size_t i = 0; i < c.kernels.size(); ++i) {
      const auto data = c.kernels[i].data();
      std::copy(data.begin(), data.end(), kernels + i * q * q);
    }
  }
  return SOFIC_OK;
}

sofic_status sofic_nn_f_pressure(const sofic_nn_chain* chain,
                                 const sofic_nn_model* model, double* out) {
  if (AnyNull(chain, model, out)) return NullArgument();
  return Guard([&] {
    *out = sofic::FPressureNN(chain->value, model->value);
    return SOFIC_OK;
  });
}

sofic_status sofic_nn_f_pressure_conditional(const sofic_nn_chain* chain,
                                             const sofic_nn_model* model,
                                             double* out) {
  if (AnyNull(chain, model, out)) return NullArgument();
  return Guard([&] {
    *out = sofic::FPressureNNConditional(chain->value, model->value);
    return SOFIC_OK;
  });
}

sofic_status sofic_nn_homogenize(const sofic_nn_chain* chain,
                                 const sofic_nn_model* model, sofic_nn_chain** out) {
  if (AnyNull(chain, model, out)) return NullArgument();
  return Guard([&] {
    *out = new sofic_nn_chain{sofic::Homogenize(chain->value, model->value)};
    return SOFIC_OK;
  });
}

sofic_status sofic_nn_star_residual(const sofic_nn_chain* chain,
                                    const sofic_nn_model* model, double* out) {
  if (AnyNull(chain, model, out)) return NullArgument();
  return Guard([&] {
    *out = sofic::StarConditionalResidual(chain->value, model->value);
    return SOFIC_OK;
  });
}

sofic_status sofic_nn_solve_gibbs(const sofic_nn_model* model,
                                  const double* init_field, int q, double tol,
                                  int max_iterations, sofic_nn_chain** chain_out,
                                  double* field_out, sofic_gibbs_info* info) {
  if (AnyNull(model, init_field, chain_out)) return NullArgument();
  return Guard([&] {
    if (q != model->value.q) {
      throw sofic::Error(sofic::ErrorCode::kDimensionMismatch,
                         "field length must equal the model's q");
    }
    sofic::GibbsSolution sol = sofic::SolveMarkovGibbs(
        model->value, std::span<const double>(init_field, static_cast<std::size_t>(q)),
        tol, max_iterations > 0 ? max_iterations : sofic::kDefaultMaxBpIterations);
    if (field_out != nullptr) std::copy(sol.field.begin(), sol.field.end(), field_out);
    if (info != nullptr) *info = {sol.residual, sol.iterations, sol.damped ? 1 : 0};
    *chain_out = new sofic_nn_chain{std::move(sol.chain)};
    return SOFIC_OK;
  });
}

sofic_status sofic_family_field(int q, int family, double t, double* out,
                                size_t len) {
  if (AnyNull(out)) return NullArgument();
  return Guard([&] {
    const std::vector<double> h = sofic::FamilyField(q, family, t);
    if (len < h.size()) return Fail(SOFIC_BUFFER_TOO_SMALL, "field buffer too small");
    std::copy(h.begin(), h.end(), out);
    return SOFIC_OK;
  });
}

sofic_status sofic_potts_family_pressure(const sofic_nn_model* model, int family,
                                         double t, double* out) {
  if (AnyNull(model, out)) return NullArgument();
  return Guard([&] {
    if (!std::isfinite(t)) sofic::ThrowInvalid("t must be finite");
    const double grid[1] = {t};
    *out = sofic::PottsFamilyCurve(model->value, grid, family).front().f_pressure;
    return SOFIC_OK;
  });
}

sofic_status sofic_map_sample(int n, int rank, uint64_t seed, uint64_t stream,
                              sofic_map** out) {
  if (AnyNull(out)) return NullArgument();
  return Guard([&] {
    *out = new sofic_map{sofic::SampleHom(n, rank, seed, stream)};
    return SOFIC_OK;
  });
}

sofic_status sofic_map_create(int n, int rank, const int* perms, sofic_map** out) {
  if (AnyNull(perms, out)) return NullArgument();
  return Guard([&] {
    if (n < 1) sofic::ThrowInvalid("n must be >= 1");
    if (rank < 1) sofic::ThrowInvalid("rank must be >= 1");
    sofic::SoficMap map;
    map.n = n;
    for (int i = 0; i < rank; ++i) {
      const int* p = perms + static_cast<std::size_t>(i) * n;
      map.perms.emplace_back(p, p + n);
    }
    map.Validate();
    *out = new sofic_map{std::move(map)};
    return SOFIC_OK;
  });
}

void sofic_map_destroy(sofic_map* map) { delete map; }

sofic_status sofic_map_shape(const sofic_map* map, int* n, int* rank) {
  if (AnyNull(map, n, rank)) return NullArgument();
  *n = map->value.n;
  *rank = map->value.rank();
  return SOFIC_OK;
}

sofic_status sofic_map_get_perm(const sofic_map* map, int generator, int* out,
                                size_t len) {
  if (AnyNull(map, out)) return NullArgument();
  if (generator < 0 || generator >= map->value.rank()) {
    return Fail(SOFIC_INVALID_ARGUMENT, "generator index out of range");
  }
  const std::vector<int>& p = map->value.perms[generator];
  if (len < p.size()) return Fail(SOFIC_BUFFER_TOO_SMALL, "permutation buffer too small");
  std::copy(p.begin(), p.end(), out);
  return SOFIC_OK;
}

sofic_status sofic_total_energy(const sofic_map* map, const int8_t* spins,
                                size_t len, double coupling, double* out) {
  if (AnyNull(map, spins, out)) return NullArgument();
  return Guard([&] {
    const sofic::SpinConfig x{std::vector<std::int8_t>(spins, spins + len)};
    *out = sofic::TotalEnergy(map->value, x, coupling);
    return SOFIC_OK;
  });
}

sofic_status sofic_log_partition_exact(const sofic_map* map, double coupling,
                                       double* out) {
  if (AnyNull(map, out)) return NullArgument();
  return Guard([&] {
    *out = sofic::LogPartitionExact(map->value, coupling);
    return SOFIC_OK;
  });
}

sofic_status sofic_count_good_models(const sofic_map* map,
                                     const sofic_ising_chain* chain, double eps,
                                     uint64_t* out) {
  if (AnyNull(map, chain, out)) return NullArgument();
  return Guard([&] {
    *out = sofic::CountGoodModels(map->value, chain->value, eps);
    return SOFIC_OK;
  });
}

sofic_status sofic_annealed_log_count(int n, int rank,
                                      const sofic_ising_chain* chain, double eps,
                                      double* out) {
  if (AnyNull(chain, out)) return NullArgument();
  return Guard([&] {
    *out = sofic::AnnealedLogCountExact(n, rank, chain->value, eps);
    return SOFIC_OK;
  });
}

sofic_status sofic_annealed_log_count_target(int n, int rank,
                                             const double target[4], double eps,
                                             double* out) {
  if (AnyNull(target, out)) return NullArgument();
  return Guard([&] {
    *out = sofic::AnnealedLogCount(n, rank, {target[0], target[1], target[2], target[3]},
                                   eps);
    return SOFIC_OK;
  });
}

sofic_status sofic_nearest_lattice_profile(int n, const sofic_ising_chain* chain,
                                           sofic_lattice_profile* out) {
  if (AnyNull(chain, out)) return NullArgument();
  return Guard([&] {
    const sofic::LatticeProfile p = sofic::NearestLatticeProfile(n, chain->value);
    *out = {p.n_plus, p.a_plus_plus, p.tv, {p.law[0], p.law[1], p.law[2], p.law[3]}};
    return SOFIC_OK;
  });
}

namespace {

sofic_moment_estimate ToC(const sofic::MomentEstimate& m) {
  return {m.mean, m.mean_sq, m.std_error, m.pz_ratio, m.samples, m.exhaustive ? 1 : 0};
}

}  // namespace

sofic_status sofic_second_moment_mc(int n, int rank, const sofic_ising_chain* chain,
                                    double eps, int64_t samples, uint64_t seed,
                                    int threads, sofic_moment_estimate* out) {
  if (AnyNull(chain, out)) return NullArgument();
  return Guard([&] {
    *out = ToC(sofic::SecondMomentMC(n, rank, chain->value, eps, samples, seed,
                                     sofic::ResolveThreads(threads)));
    return SOFIC_OK;
  });
}

sofic_status sofic_second_moment_exhaustive(int n, int rank,
                                            const sofic_ising_chain* chain,
                                            double eps, int threads,
                                            sofic_moment_estimate* out) {
  if (AnyNull(chain, out)) return NullArgument();
  return Guard([&] {
    *out = ToC(sofic::SecondMomentExhaustive(n, rank, chain->value, eps,
                                             sofic::ResolveThreads(threads)));
    return SOFIC_OK;
  });
}

sofic_status sofic_heat_bath_plus_probability(double coupling, int spin_sum,
                                              double* out) {
  if (AnyNull(out)) return NullArgument();
  if (!std::isfinite(coupling)) return Fail(SOFIC_INVALID_ARGUMENT, "coupling must be finite");
  *out = sofic::HeatBathPlusProbability(coupling, spin_sum);
  return SOFIC_OK;
}

sofic_status sofic_glauber_record_count(int64_t steps, int64_t record_every,
                                        size_t* out) {
  if (AnyNull(out)) return NullArgument();
  if (steps < 0 || record_every < 1) {
    return Fail(SOFIC_INVALID_ARGUMENT, "need steps >= 0 and record_every >= 1");
  }
  *out = static_cast<size_t>(steps / record_every) + 1;
  return SOFIC_OK;
}

sofic_status sofic_glauber_run(const sofic_map* map, double coupling, int64_t steps,
                               uint64_t seed, int64_t record_every,
                               const int8_t* initial, int64_t* steps_out,
                               double* magnetization_out, size_t capacity,
                               size_t* written) {
  if (AnyNull(map, steps_out, magnetization_out, written)) return NullArgument();
  size_t needed = 0;
  if (const sofic_status s = sofic_glauber_record_count(steps, record_every, &needed);
      s != SOFIC_OK) {
    return s;
  }
  if (capacity < needed) {
    *written = needed;
    return Fail(SOFIC_BUFFER_TOO_SMALL,
                "trajectory needs " + std::to_string(needed) + " records");
  }
  return Guard([&] {
    std::optional<sofic::SpinConfig> init;
    if (initial != nullptr) {
      init = sofic::SpinConfig{std::vector<std::int8_t>(initial, initial + map->value.n)};
    }
    const sofic::Trajectory traj =
        sofic::GlauberRun(map->value, coupling, steps, seed, record_every, init);
    std::copy(traj.steps.begin(), traj.steps.end(), steps_out);
    std::copy(traj.magnetization.begin(), traj.magnetization.end(), magnetization_out);
    *written = traj.steps.size();
    return SOFIC_OK;
  });
}

sofic_status sofic_coexistence_weight_exact(const sofic_map* map, double coupling,
                                            double eps_m, int open_window,
                                            double* out) {
  if (AnyNull(map, out)) return NullArgument();
  return Guard([&] {
    *out = sofic::CoexistenceWeightExact(
        map->value, coupling, eps_m,
        open_window ? sofic::WindowBoundary::kOpen : sofic::WindowBoundary::kClosed);
    return SOFIC_OK;
  });
}

sofic_status sofic_coexistence(const int* n_list, size_t n_count, int rank,
                               double coupling, double eps_m, int64_t samples,
                               uint64_t seed, int threads, int open_window,
                               sofic_coexistence_row* out) {
  if (AnyNull(n_list, out)) return NullArgument();
  return Guard([&] {
    const auto rows = sofic::CoexistenceWeight(
        std::span<const int>(n_list, n_count), rank, coupling, eps_m, samples, seed,
        sofic::ResolveThreads(threads),
        open_window ? sofic::WindowBoundary::kOpen : sofic::WindowBoundary::kClosed);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      out[k] = {rows[k].n, rows[k].mean_weight, rows[k].std_error, rows[k].samples};
    }
    return SOFIC_OK;
  });
}

}  // extern "C"
