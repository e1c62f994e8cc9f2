// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo sampling of the joint eigenvalue densities of both ensemble
// cases: a Metropolis log-gas chain (the general-purpose sampler, and the
// only one available for case A), a matrix-model sampler for case B that
// draws Haar unitaries and diagonalizes the projected block, and an
// experimental matrix-model cross-check for case A via Haar orthogonal
// conjugation of the block-diagonal pure-state form.  Estimation utilities
// turn entropy samples into moment reports with standard errors and
// Gaussian-approximation diagnostics (KS distance, skewness).

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "fgent/ensemble.hpp"
#include "fgent/moments.hpp"

namespace fgent {

/// Metropolis chain controls.  Non-positive burn_in / thinning select the
/// defaults 10*m*1000 and m*100 proposals respectively.  Step sizes adapt
/// per coordinate toward target_acceptance during burn-in and are frozen
/// afterwards, preserving detailed balance over the sampling phase.
struct McmcTuning {
  long long burn_in = 0;
  long long thinning = 0;
  double target_acceptance = 0.4;
  double initial_step = 0.25;

  long long resolved_burn_in(int m) const {
    return burn_in > 0 ? burn_in : 10LL * m * 1000LL;
  }
  long long resolved_thinning(int m) const {
    return thinning > 0 ? thinning : 100LL * m;
  }
};

/// Post-adaptation chain diagnostics (absent for matrix-model batches).
struct McmcDiagnostics {
  double acceptance_rate = 0.0;  // over the frozen sampling phase
  long long burn_in = 0;         // proposals discarded per chain
  long long thinning = 0;        // proposals between retained samples
};

/// A set of eigenvalue configurations plus the entropy of each.
/// Every configuration is sorted ascending and lies in the spec's support;
/// entropies lie in [0, m*ln 2].
struct SampleBatch {
  EnsembleSpec spec;
  std::vector<std::vector<double>> configs;
  std::vector<double> entropies;
  std::uint64_t seed = 0;
  std::optional<McmcDiagnostics> mcmc_diag;
};

/// Gaussian-approximation diagnostics of standardized entropies
/// X = (S - mean) / sqrt(variance), standardized with the exact
/// closed-form moments of the batch's ensemble.
struct GaussianCheck {
  double ks_distance = 0.0;       // sup |F_emp - Phi|
  double ks_p_value = 0.0;        // asymptotic Kolmogorov p-value
  double sample_skewness = 0.0;
  bool degenerate = false;        // all samples equal: KS is meaningless
  std::vector<double> standardized;
};

/// Moment estimates from a batch, with Monte Carlo standard errors.
/// report.error_estimate carries mean_se; variance_se uses the
/// fourth-central-moment formula for the variance of a sample variance.
struct EstimateReport {
  MomentReport report;
  double mean_se = 0.0;
  double variance_se = 0.0;
  std::size_t n_samples = 0;
  GaussianCheck gaussian;
};

/// Two-sample Kolmogorov-Smirnov comparison.
struct TwoSampleKs {
  double distance = 0.0;
  double p_value = 0.0;
};

/// Metropolis log-gas sampler for either case.  The chain moves one
/// coordinate at a time with Gaussian proposals on the log-density
///   sum_{i<j} 2 ln|x_i^g - x_j^g| + sum_i (a ln(1-x_i) + b ln(1+x_i)),
/// g the case's interaction power; proposals outside the support are
/// rejected outright (the density vanishes there, -inf log-density).
/// Four logical chains, seeded by (seed, chain index), each produce a
/// contiguous slice of the batch, so results are bit-identical for a
/// fixed (spec, n_samples, seed, tuning) regardless of thread count.
/// Throws std::runtime_error if any chain's frozen-phase acceptance rate
/// leaves [0.1, 0.7], and std::invalid_argument for n_samples == 0.
SampleBatch sample_mcmc(const EnsembleSpec& spec, std::size_t n_samples,
                        std::uint64_t seed, const McmcTuning& tuning = {});

/// Case-B matrix-model sampler: draws a Haar-distributed (m+n)x(m+n)
/// unitary (QR of a complex standard-Gaussian matrix with the R diagonal
/// phase-normalized), forms the m x m block G_A = U_{m x p} U_{m x p}^dag,
/// takes its eigenvalues y_i in [0,1] and maps x_i = 2 y_i - 1.  Exact
/// independent draws -- no chain diagnostics.  Throws std::invalid_argument
/// unless the spec is case B and n_samples > 0.
SampleBatch sample_matrix_caseB(const EnsembleSpec& spec, std::size_t n_samples,
                                std::uint64_t seed);

/// Experimental case-A cross-check (not an oracle): conjugates the
/// block-diagonal antisymmetric pure-state form J0 by a Haar orthogonal
/// 2(m+n) x 2(m+n) matrix, restricts to the leading 2m x 2m block, and
/// keeps the m nonnegative eigenvalues of i J_A.  Throws
/// std::invalid_argument unless the spec is case A and n_samples > 0.
SampleBatch sample_matrix_caseA_experimental(const EnsembleSpec& spec,
                                             std::size_t n_samples,
                                             std::uint64_t seed);

/// Sample mean/variance with standard errors plus Gaussian diagnostics.
/// Standardization uses the exact closed-form moments of batch.spec.
/// Throws std::invalid_argument on an empty batch.
EstimateReport estimate(const SampleBatch& batch);

/// Two-sample KS statistic and asymptotic p-value between two entropy
/// samples.  Throws std::invalid_argument if either sample is empty.
TwoSampleKs two_sample_ks(const std::vector<double>& a, const std::vector<double>& b);

/// Standard normal CDF.
double standard_normal_cdf(double x);

/// Asymptotic Kolmogorov tail Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} e^{-2 j^2 lambda^2}.
double kolmogorov_p(double lambda);

/// Worker threads used by the samplers: FGENT_THREADS when set and positive,
/// else min(4, hardware concurrency).  Affects wall time only, never output.
int sampler_worker_count();

/// Writes a batch as CSV rows x_1,...,x_m,entropy preceded by a single
/// JSON header comment line carrying {spec, seed, diagnostics}.
void write_batch_csv(const SampleBatch& batch, std::ostream& os);

}  // namespace fgent
