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

/* C interface to the sofic-pressure library.
 *
 * Every fallible function returns a sofic_status. On failure the message is
 * available from sofic_last_error() until the next call on the same thread.
 * Handles are opaque and owned by the caller; destroy functions accept NULL.
 * Spins are -1 / +1 bytes. Symbol order for q = 2 chains is (-1, +1). */

#ifndef SOFIC_SOFIC_H_
#define SOFIC_SOFIC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(SOFIC_BUILDING_LIBRARY)
#define SOFIC_API __attribute__((visibility("default")))
#else
#define SOFIC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sofic_status {
  SOFIC_OK = 0,
  SOFIC_INVALID_ARGUMENT = 1,
  SOFIC_DIMENSION = 2,
  SOFIC_TOO_LARGE = 3,
  SOFIC_NO_CONVERGENCE = 4,
  SOFIC_BUFFER_TOO_SMALL = 5,
  SOFIC_INTERNAL = 6
} sofic_status;

SOFIC_API const char* sofic_version(void);
SOFIC_API const char* sofic_last_error(void);
SOFIC_API const char* sofic_status_name(sofic_status status);
/* requested > 0, else SOFIC_PRESSURE_THREADS, else hardware concurrency. */
SOFIC_API int sofic_resolve_threads(int requested);

/* ---- Ising family mu_t ------------------------------------------------- */

typedef struct sofic_ising_chain sofic_ising_chain;

typedef struct sofic_ising_chain_info {
  double t;
  double alpha;      /* P(x_e = -1) */
  double beta_plus;  /* P(+1 -> -1) */
  double beta_minus; /* P(-1 -> +1) */
  double coupling;
  int rank;
} sofic_ising_chain_info;

typedef struct sofic_pressure_report {
  double energy;
  double f_invariant;
  double f_pressure;
  double edge_entropy;
  double edge_pressure;
} sofic_pressure_report;

SOFIC_API sofic_status sofic_ising_chain_create(double t, double coupling,
                                                int rank,
                                                sofic_ising_chain** out);
SOFIC_API void sofic_ising_chain_destroy(sofic_ising_chain* chain);
SOFIC_API sofic_status sofic_ising_chain_get_info(const sofic_ising_chain* chain,
                                                  sofic_ising_chain_info* out);
/* Row-major 2 x 2 joint law of (x_e, x_{s_i}). */
SOFIC_API sofic_status sofic_ising_chain_edge_marginal(
    const sofic_ising_chain* chain, double out[4]);
SOFIC_API sofic_status sofic_ising_chain_pressure(const sofic_ising_chain* chain,
                                                  sofic_pressure_report* out);
/* DLR residual of the chain against the Ising specification. */
SOFIC_API sofic_status sofic_ising_chain_gibbs_residual(
    const sofic_ising_chain* chain, double* out);

SOFIC_API sofic_status sofic_f_pressure(double t, double coupling, int rank,
                                        double* out);
SOFIC_API sofic_status sofic_d2_pressure_at_zero(double coupling, int rank,
                                                 double* out);
SOFIC_API sofic_status sofic_d2_pressure_fd(double coupling, int rank,
                                            double step, double* out);
SOFIC_API sofic_status sofic_d1_pressure_fd(double coupling, int rank,
                                            double step, double* out);
SOFIC_API sofic_status sofic_delta_plus_pressure(double coupling, int rank,
                                                 double* out);

/* ---- Thresholds and fixed points --------------------------------------- */

typedef struct sofic_threshold {
  double value; /* +inf when degenerate */
  int degenerate;
} sofic_threshold;

SOFIC_API sofic_status sofic_uniqueness_threshold(int rank, sofic_threshold* out);
SOFIC_API sofic_status sofic_reconstruction_threshold(int rank,
                                                      sofic_threshold* out);

typedef struct sofic_fixed_points {
  double t_zero;
  double residual_zero;
  int has_pair;
  double t_plus;
  double residual_plus;
  double t_minus;
  double residual_minus;
  size_t extra_positive_roots;
} sofic_fixed_points;

/* tol <= 0 selects the default 1e-12. */
SOFIC_API sofic_status sofic_solve_fixed_points(double coupling, int rank,
                                                double tol,
                                                sofic_fixed_points* out);

/* ---- Threshold analysis ------------------------------------------------ */

SOFIC_API sofic_status sofic_phi(double t, double* out);
SOFIC_API sofic_status sofic_delta_plus_margin(double coupling, int rank,
                                               double* margin, int* beats);
SOFIC_API sofic_status sofic_rho(double coupling, double* out);

typedef struct sofic_theorem_b_report {
  int r_max;
  int grid_points;
  double rho_margin_min;
  double rearranged_margin_min;
  double dagger_margin_min;
  double taylor_margin_min;
  double phi_margin_at_double_uniq_min;
  double phi_margin_at_rec_min;
  size_t failure_count;
  /* First failure, when failure_count > 0. */
  char first_failure_check[32];
  int first_failure_r;
  double first_failure_coupling;
  double first_failure_margin;
} sofic_theorem_b_report;

SOFIC_API sofic_status sofic_verify_theorem_b(int r_max, int grid_points,
                                              sofic_theorem_b_report* out);

typedef struct sofic_minimal_constant {
  int r;
  double c;
  int monotone_verified;
} sofic_minimal_constant;

/* tol <= 0 selects the default 1e-4. */
SOFIC_API sofic_status sofic_minimal_constant_find(int rank, double tol,
                                                   sofic_minimal_constant* out);

typedef enum sofic_region {
  SOFIC_REGION_UNIQUE_GIBBS = 0,
  SOFIC_REGION_NONEQUILIBRIUM_TYPICAL = 1,
  SOFIC_REGION_NONEQUILIBRIUM_ALWAYS = 2,
  SOFIC_REGION_UNDETERMINED = 3
} sofic_region;

SOFIC_API sofic_status sofic_classify_region(double coupling, int rank,
                                             sofic_region* out);
SOFIC_API const char* sofic_region_name(sofic_region region);

typedef struct sofic_figure5_row {
  double coupling;
  double edge_pressure_fb;
  double delta_plus_pressure;
  double f_pressure_plus;
} sofic_figure5_row;

SOFIC_API sofic_status sofic_figure5_row_compute(double coupling, int rank,
                                                 sofic_figure5_row* out);

/* ---- Nearest-neighbour Markov chains ----------------------------------- */

typedef struct sofic_nn_model sofic_nn_model;
typedef struct sofic_nn_chain sofic_nn_chain;

/* site_energy has q entries, edge_energy and constraint q * q (row-major);
 * constraint may be NULL. */
SOFIC_API sofic_status sofic_nn_model_create(int q, int rank,
                                             const double* site_energy,
                                             const double* edge_energy,
                                             const double* constraint,
                                             sofic_nn_model** out);
SOFIC_API sofic_status sofic_nn_model_create_potts(int q, int rank,
                                                   double coupling,
                                                   sofic_nn_model** out);
SOFIC_API sofic_status sofic_nn_model_create_ising(double coupling, int rank,
                                                   sofic_nn_model** out);
SOFIC_API void sofic_nn_model_destroy(sofic_nn_model* model);

/* kernels holds rank consecutive row-major q x q matrices. */
SOFIC_API sofic_status sofic_nn_chain_create(int q, int rank,
                                             const double* marginal,
                                             const double* kernels,
                                             sofic_nn_chain** out);
SOFIC_API sofic_status sofic_nn_chain_from_ising(const sofic_ising_chain* chain,
                                                 sofic_nn_chain** out);
SOFIC_API sofic_status sofic_nn_chain_from_field(const sofic_nn_model* model,
                                                 const double* field, int q,
                                                 sofic_nn_chain** out);
SOFIC_API void sofic_nn_chain_destroy(sofic_nn_chain* chain);
SOFIC_API sofic_status sofic_nn_chain_shape(const sofic_nn_chain* chain, int* q,
                                            int* rank);
/* marginal needs q entries, kernels rank * q * q; either may be NULL. */
SOFIC_API sofic_status sofic_nn_chain_get(const sofic_nn_chain* chain,
                                          double* marginal, size_t marginal_len,
                                          double* kernels, size_t kernels_len);
SOFIC_API sofic_status sofic_nn_f_pressure(const sofic_nn_chain* chain,
                                           const sofic_nn_model* model,
                                           double* out);
SOFIC_API sofic_status sofic_nn_f_pressure_conditional(
    const sofic_nn_chain* chain, const sofic_nn_model* model, double* out);
SOFIC_API sofic_status sofic_nn_homogenize(const sofic_nn_chain* chain,
                                           const sofic_nn_model* model,
                                           sofic_nn_chain** out);
SOFIC_API sofic_status sofic_nn_star_residual(const sofic_nn_chain* chain,
                                              const sofic_nn_model* model,
                                              double* out);

typedef struct sofic_gibbs_info {
  double residual;
  int iterations;
  int damped;
} sofic_gibbs_info;

/* field_out (q entries) may be NULL. max_iterations <= 0 selects the
 * default. */
SOFIC_API sofic_status sofic_nn_solve_gibbs(const sofic_nn_model* model,
                                            const double* init_field, int q,
                                            double tol, int max_iterations,
                                            sofic_nn_chain** chain_out,
                                            double* field_out,
                                            sofic_gibbs_info* info);
SOFIC_API sofic_status sofic_family_field(int q, int family, double t,
                                          double* out, size_t len);
SOFIC_API sofic_status sofic_potts_family_pressure(const sofic_nn_model* model,
                                                   int family, double t,
                                                   double* out);

/* ---- Random permutation models ----------------------------------------- */

typedef struct sofic_map sofic_map;

SOFIC_API sofic_status sofic_map_sample(int n, int rank, uint64_t seed,
                                        uint64_t stream, sofic_map** out);
/* perms holds rank consecutive permutations of {0, ..., n-1}. */
SOFIC_API sofic_status sofic_map_create(int n, int rank, const int* perms,
                                        sofic_map** out);
SOFIC_API void sofic_map_destroy(sofic_map* map);
SOFIC_API sofic_status sofic_map_shape(const sofic_map* map, int* n, int* rank);
SOFIC_API sofic_status sofic_map_get_perm(const sofic_map* map, int generator,
                                          int* out, size_t len);

SOFIC_API sofic_status sofic_total_energy(const sofic_map* map,
                                          const int8_t* spins, size_t len,
                                          double coupling, double* out);
SOFIC_API sofic_status sofic_log_partition_exact(const sofic_map* map,
                                                 double coupling, double* out);
SOFIC_API sofic_status sofic_count_good_models(const sofic_map* map,
                                               const sofic_ising_chain* chain,
                                               double eps, uint64_t* out);
SOFIC_API sofic_status sofic_annealed_log_count(int n, int rank,
                                                const sofic_ising_chain* chain,
                                                double eps, double* out);
/* target is the (++, +-, -+, --) pair law of the ball centre. */
SOFIC_API sofic_status sofic_annealed_log_count_target(int n, int rank,
                                                       const double target[4],
                                                       double eps, double* out);

typedef struct sofic_lattice_profile {
  int n_plus;
  int a_plus_plus;
  double tv;
  double law[4];
} sofic_lattice_profile;

SOFIC_API sofic_status sofic_nearest_lattice_profile(
    int n, const sofic_ising_chain* chain, sofic_lattice_profile* out);

typedef struct sofic_moment_estimate {
  double mean;
  double mean_sq;
  double std_error;
  double pz_ratio;
  int64_t samples;
  int exhaustive;
} sofic_moment_estimate;

SOFIC_API sofic_status sofic_second_moment_mc(int n, int rank,
                                              const sofic_ising_chain* chain,
                                              double eps, int64_t samples,
                                              uint64_t seed, int threads,
                                              sofic_moment_estimate* out);
SOFIC_API sofic_status sofic_second_moment_exhaustive(
    int n, int rank, const sofic_ising_chain* chain, double eps, int threads,
    sofic_moment_estimate* out);

SOFIC_API sofic_status sofic_heat_bath_plus_probability(double coupling,
                                                        int spin_sum,
                                                        double* out);
/* Number of records a Glauber run of this length produces. */
SOFIC_API sofic_status sofic_glauber_record_count(int64_t steps,
                                                  int64_t record_every,
                                                  size_t* out);
/* initial (n spins) may be NULL for all-plus. Fails with
 * SOFIC_BUFFER_TOO_SMALL, writing the required size to *written, when
 * capacity is too small. */
SOFIC_API sofic_status sofic_glauber_run(const sofic_map* map, double coupling,
                                         int64_t steps, uint64_t seed,
                                         int64_t record_every,
                                         const int8_t* initial,
                                         int64_t* steps_out,
                                         double* magnetization_out,
                                         size_t capacity, size_t* written);

SOFIC_API sofic_status sofic_coexistence_weight_exact(const sofic_map* map,
                                                      double coupling,
                                                      double eps_m,
                                                      int open_window,
                                                      double* out);

typedef struct sofic_coexistence_row {
  int n;
  double mean_weight;
  double std_error;
  int64_t samples;
} sofic_coexistence_row;

/* out needs n_count rows. */
SOFIC_API sofic_status sofic_coexistence(const int* n_list, size_t n_count,
                                         int rank, double coupling,
                                         double eps_m, int64_t samples,
                                         uint64_t seed, int threads,
                                         int open_window,
                                         sofic_coexistence_row* out);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* SOFIC_SOFIC_H_ */
