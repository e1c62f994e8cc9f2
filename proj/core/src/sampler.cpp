// SPDX-License-Identifier: Apache-2.0

#include "fgent/sampler.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <exception>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fgent/accum.hpp"
#include "fgent/rng.hpp"

namespace fgent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Logical sample streams.  Fixed, so a batch depends only on
// (spec, n_samples, seed, tuning) and never on the executing machine.
constexpr unsigned kStreams = 4;

struct StreamSlice {
  std::size_t begin = 0;
  std::size_t count = 0;
};

std::array<StreamSlice, kStreams> partition(std::size_t n) {
  std::array<StreamSlice, kStreams> slices{};
  const std::size_t base = n / kStreams;
  const std::size_t rem = n % kStreams;
  std::size_t at = 0;
  for (unsigned w = 0; w < kStreams; ++w) {
    slices[w].begin = at;
    slices[w].count = base + (w < rem ? 1 : 0);
    at += slices[w].count;
  }
  return slices;
}

// Runs job(w) for w = 0..kStreams-1 on up to sampler_worker_count() threads.
// The assignment of streams to threads never changes results: each stream
// owns its slice of the output arrays.  The first exception thrown by any
// stream is rethrown on the calling thread after all workers join.
template <typename Job>
void run_streams(Job&& job) {
  const int workers = std::min<int>(sampler_worker_count(), static_cast<int>(kStreams));
  std::array<std::exception_ptr, kStreams> errors{};
  const auto guarded = [&](unsigned w) {
    try {
      job(w);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers <= 1) {
    for (unsigned w = 0; w < kStreams; ++w) guarded(w);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&guarded, t, workers] {
        for (unsigned w = static_cast<unsigned>(t); w < kStreams;
             w += static_cast<unsigned>(workers))
          guarded(w);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
}

double batch_entropy(const std::vector<double>& config) {
  CompensatedSum s;
  for (double x : config) s.add(entropy_v(x));
  return -s.value();
}

// ---------------------------------------------------------------------------
// Metropolis log-gas chain
// ---------------------------------------------------------------------------

// Log interaction of coordinate value xi with the rest of the configuration:
// sum_{j != i} 2 ln|xi^g - xj^g|, with g = 1 or 2.  Returns -inf on a
// coincidence (zero density).
double log_interaction(const std::vector<double>& x, std::size_t i, double xi, int gamma) {
  const double ui = gamma == 2 ? xi * xi : xi;
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j == i) continue;
    const double uj = gamma == 2 ? x[j] * x[j] : x[j];
    const double d = std::abs(ui - uj);
    if (d == 0.0) return -kInf;
    acc += 2.0 * std::log(d);
  }
  return acc;
}

// Log one-body weight a ln(1-x) + b ln(1+x); -inf at a vanishing factor
// with positive exponent.
double log_weight_term(double x, int a, int b) {
  double acc = 0.0;
  if (a != 0) {
    const double om = 1.0 - x;
    if (om <= 0.0) return -kInf;
    acc += a * std::log(om);
  }
  if (b != 0) {
    const double op = 1.0 + x;
    if (op <= 0.0) return -kInf;
    acc += b * std::log(op);
  }
  return acc;
}

struct ChainResult {
  double sampling_acceptance = 0.0;
  long long sampling_proposals = 0;
  long long sampling_accepts = 0;
};

// One independent Metropolis chain filling configs/entropies[slice].
ChainResult run_chain(const EnsembleSpec& spec, const McmcTuning& tuning,
                      std::uint64_t chain_seed, StreamSlice slice,
                      std::vector<std::vector<double>>& configs,
                      std::vector<double>& entropies) {
  ChainResult res;
  if (slice.count == 0) return res;

  const int m = spec.m;
  const int a = spec.a();
  const int b = spec.b();
  const int gamma = spec.interaction_power();
  const double lo = spec.support_lo();
  const double hi = spec.support_hi();
  const double width = hi - lo;

  Rng rng(chain_seed);

  // Deterministic spread start, strictly interior.
  std::vector<double> x(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    x[static_cast<std::size_t>(i)] = lo + width * (i + 1.0) / (m + 1.0);

  std::vector<double> step(static_cast<std::size_t>(m), tuning.initial_step * width);

  // Per-coordinate adaptation bookkeeping (burn-in only).
  constexpr int kWindow = 100;
  std::vector<int> win_props(static_cast<std::size_t>(m), 0);
  std::vector<int> win_accs(static_cast<std::size_t>(m), 0);
  const double step_min = 1e-4 * width;
  const double step_max = width;

  const long long burn_in = tuning.resolved_burn_in(m);
  const long long thinning = tuning.resolved_thinning(m);

  // One single-coordinate proposal; returns true when accepted.
  const auto propose = [&](std::size_t i) -> bool {
    const double xi = x[i];
    const double xp = xi + step[i] * rng.gaussian();
    const double u = rng.uniform01();  // drawn unconditionally: fixed stream layout
    if (xp <= lo || xp >= hi) return false;
    const double cur = log_interaction(x, i, xi, gamma) + log_weight_term(xi, a, b);
    const double nxt = log_interaction(x, i, xp, gamma) + log_weight_term(xp, a, b);
    if (nxt == -kInf) return false;
    const double dlog = nxt - cur;
    if (dlog >= 0.0 || u < std::exp(dlog)) {
      x[i] = xp;
      return true;
    }
    return false;
  };

  // Burn-in with step adaptation.
  for (long long t = 0; t < burn_in; ++t) {
    const std::size_t i = static_cast<std::size_t>(t % m);
    const bool acc = propose(i);
    win_props[i] += 1;
    if (acc) win_accs[i] += 1;
    if (win_props[i] == kWindow) {
      const double rate = static_cast<double>(win_accs[i]) / kWindow;
      step[i] = std::clamp(step[i] * std::exp(rate - tuning.target_acceptance),
                           step_min, step_max);
      win_props[i] = 0;
      win_accs[i] = 0;
    }
  }

  // Frozen-step sampling phase.
  long long t = 0;
  std::vector<double> sorted(static_cast<std::size_t>(m));
  for (std::size_t k = 0; k < slice.count; ++k) {
    for (long long s = 0; s < thinning; ++s, ++t) {
      const std::size_t i = static_cast<std::size_t>(t % m);
      const bool acc = propose(i);
      res.sampling_proposals += 1;
      if (acc) res.sampling_accepts += 1;
    }
    sorted = x;
    std::sort(sorted.begin(), sorted.end());
    entropies[slice.begin + k] = batch_entropy(sorted);
    configs[slice.begin + k] = sorted;
  }
  res.sampling_acceptance = res.sampling_proposals > 0
                                ? static_cast<double>(res.sampling_accepts) /
                                      static_cast<double>(res.sampling_proposals)
                                : 0.0;
  return res;
}

// ---------------------------------------------------------------------------
// Matrix models
// ---------------------------------------------------------------------------

// Haar-distributed N x N unitary: QR of an iid complex standard-Gaussian
// matrix with the R diagonal phase factored into Q.
Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      z(i, j) = std::complex<double>(re, im);
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= mag == 0.0 ? std::complex<double>(1.0, 0.0) : d / mag;
  }
  return q;
}

// Haar-distributed N x N real orthogonal matrix, sign-normalized likewise.
Eigen::MatrixXd haar_orthogonal(int n, Rng& rng) {
  Eigen::MatrixXd z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  Eigen::MatrixXd q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace

int sampler_worker_count() {
  if (const char* env = std::getenv("FGENT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(std::min(v, 64L));
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(4u, hc == 0 ? 1u : hc));
}

SampleBatch sample_mcmc(const EnsembleSpec& spec, std::size_t n_samples,
                        std::uint64_t seed, const McmcTuning& tuning) {
  spec.validate();
  if (n_samples == 0) throw std::invalid_argument("sample_mcmc: n_samples must be positive");

  SampleBatch batch;
  batch.spec = spec;
  batch.seed = seed;
  batch.configs.resize(n_samples);
  batch.entropies.resize(n_samples);

  const auto slices = partition(n_samples);
  std::array<ChainResult, kStreams> results{};
  run_streams([&](unsigned w) {
    results[w] = run_chain(spec, tuning, stream_seed(seed, w), slices[w],
                           batch.configs, batch.entropies);
  });

  long long props = 0, accs = 0;
  for (unsigned w = 0; w < kStreams; ++w) {
    if (slices[w].count == 0) continue;
    const double rate = results[w].sampling_acceptance;
    if (rate < 0.1 || rate > 0.7)
      throw std::runtime_error(
          "sample_mcmc: tuning failure, frozen-phase acceptance rate " +
          std::to_string(rate) + " outside [0.1, 0.7]");
    props += results[w].sampling_proposals;
    accs += results[w].sampling_accepts;
  }

  McmcDiagnostics diag;
  diag.acceptance_rate = props > 0 ? static_cast<double>(accs) / static_cast<double>(props) : 0.0;
  diag.burn_in = tuning.resolved_burn_in(spec.m);
  diag.thinning = tuning.resolved_thinning(spec.m);
  batch.mcmc_diag = diag;
  return batch;
}

SampleBatch sample_matrix_caseB(const EnsembleSpec& spec, std::size_t n_samples,
                                std::uint64_t seed) {
  spec.validate();
  if (spec.kind != EnsembleCase::B)
    throw std::invalid_argument("sample_matrix_caseB: requires a case-B ensemble");
  if (n_samples == 0)
    throw std::invalid_argument("sample_matrix_caseB: n_samples must be positive");

  SampleBatch batch;
  batch.spec = spec;
  batch.seed = seed;
  batch.configs.resize(n_samples);
  batch.entropies.resize(n_samples);

  const int m = spec.m;
  const int p = spec.p;
  const int dim = spec.m + spec.n;

  const auto slices = partition(n_samples);
  run_streams([&](unsigned w) {
    const auto& slice = slices[w];
    if (slice.count == 0) return;
    Rng rng(stream_seed(seed, w));
    for (std::size_t k = 0; k < slice.count; ++k) {
      const Eigen::MatrixXcd u = haar_unitary(dim, rng);
      const Eigen::MatrixXcd sub = u.topLeftCorner(m, p);
      const Eigen::MatrixXcd ga = sub * sub.adjoint();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ga);
      if (es.info() != Eigen::Success)
        throw std::runtime_error("sample_matrix_caseB: eigensolver failed");
      std::vector<double> config(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) {
        const double y = std::clamp(es.eigenvalues()(i), 0.0, 1.0);
        config[static_cast<std::size_t>(i)] = 2.0 * y - 1.0;
      }
      batch.entropies[slice.begin + k] = batch_entropy(config);
      batch.configs[slice.begin + k] = std::move(config);
    }
  });
  return batch;
}

SampleBatch sample_matrix_caseA_experimental(const EnsembleSpec& spec,
                                             std::size_t n_samples,
                                             std::uint64_t seed) {
  spec.validate();
  if (spec.kind != EnsembleCase::A)
    throw std::invalid_argument("sample_matrix_caseA_experimental: requires a case-A ensemble");
  if (n_samples == 0)
    throw std::invalid_argument("sample_matrix_caseA_experimental: n_samples must be positive");

  SampleBatch batch;
  batch.spec = spec;
  batch.seed = seed;
  batch.configs.resize(n_samples);
  batch.entropies.resize(n_samples);

  const int m = spec.m;
  const int dim2 = 2 * (spec.m + spec.n);

  const auto slices = partition(n_samples);
  run_streams([&](unsigned w) {
    const auto& slice = slices[w];
    if (slice.count == 0) return;
    Rng rng(stream_seed(seed, w));
    for (std::size_t k = 0; k < slice.count; ++k) {
      const Eigen::MatrixXd mat = haar_orthogonal(dim2, rng);
      // J = M^T J0 M with J0 block-diagonal in 2x2 antisymmetric blocks
      // [[0,1],[-1,0]] (pure state), restricted to the leading 2m x 2m
      // block: J_A = C^T (J0 C) for C the first 2m columns of M.
      const Eigen::MatrixXd c = mat.leftCols(2 * m);
      Eigen::MatrixXd j0c(dim2, 2 * m);
      for (int r = 0; r < dim2; r += 2) {
        j0c.row(r) = c.row(r + 1);
        j0c.row(r + 1) = -c.row(r);
      }
      const Eigen::MatrixXd ja = c.transpose() * j0c;
      Eigen::MatrixXcd h(2 * m, 2 * m);
      for (int r = 0; r < 2 * m; ++r)
        for (int s = 0; s < 2 * m; ++s) h(r, s) = std::complex<double>(0.0, ja(r, s));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
      if (es.info() != Eigen::Success)
        throw std::runtime_error("sample_matrix_caseA_experimental: eigensolver failed");
      // Spectrum of i J_A is symmetric about zero; the m nonnegative
      // eigenvalues are the entanglement spectrum, already ascending.
      std::vector<double> config(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i)
        config[static_cast<std::size_t>(i)] = std::clamp(es.eigenvalues()(m + i), 0.0, 1.0);
      batch.entropies[slice.begin + k] = batch_entropy(config);
      batch.configs[slice.begin + k] = std::move(config);
    }
  });
  return batch;
}

double standard_normal_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

double kolmogorov_p(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  // Dual series for the Kolmogorov tail: the theta form converges fast for
  // small lambda, the direct alternating form for large lambda.
  if (lambda < 1.18) {
    const double y = std::exp(-1.23370055013616983 / (lambda * lambda));  // pi^2/8
    const double p = 1.0 - 2.50662827463100050 / lambda *                 // sqrt(2 pi)
                               (y + std::pow(y, 9) + std::pow(y, 25) + std::pow(y, 49));
    return std::clamp(p, 0.0, 1.0);
  }
  const double e = std::exp(-2.0 * lambda * lambda);
  const double p = 2.0 * (e - std::pow(e, 4) + std::pow(e, 9) - std::pow(e, 16));
  return std::clamp(p, 0.0, 1.0);
}

EstimateReport estimate(const SampleBatch& batch) {
  const std::size_t n = batch.entropies.size();
  if (n == 0) throw std::invalid_argument("estimate: empty batch");
  batch.spec.validate();

  CompensatedSum acc;
  for (double s : batch.entropies) acc.add(s);
  const double mean = acc.value() / static_cast<double>(n);

  CompensatedSum c2, c3, c4;
  for (double s : batch.entropies) {
    const double d = s - mean;
    c2.add(d * d);
    c3.add(d * d * d);
    c4.add(d * d * d * d);
  }
  const double nn = static_cast<double>(n);
  const double m2 = c2.value() / nn;
  const double m3 = c3.value() / nn;
  const double m4 = c4.value() / nn;
  const double variance = n > 1 ? c2.value() / (nn - 1.0) : 0.0;

  EstimateReport out;
  out.n_samples = n;
  out.report.spec = batch.spec;
  out.report.method = Method::monte_carlo;
  out.report.mean = mean;
  out.report.variance = variance;
  out.mean_se = n > 1 ? std::sqrt(variance / nn) : 0.0;
  // Var(sample variance) ~ (m4 - s^4 (n-3)/(n-1)) / n for iid samples.
  out.variance_se =
      n > 1 ? std::sqrt(std::max(0.0, m4 - variance * variance * (nn - 3.0) / (nn - 1.0)) / nn)
            : 0.0;
  out.report.error_estimate = out.mean_se;

  const MomentReport exact = moments_closed_form(batch.spec);
  const double sd_exact = std::sqrt(exact.variance);

  GaussianCheck& g = out.gaussian;
  g.degenerate = !(m2 > 0.0);
  g.sample_skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
  g.standardized.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    g.standardized[i] = (batch.entropies[i] - exact.mean) / sd_exact;

  std::vector<double> sorted = g.standardized;
  std::sort(sorted.begin(), sorted.end());
  double dmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double phi = standard_normal_cdf(sorted[i]);
    const double hi = static_cast<double>(i + 1) / nn - phi;
    const double lo = phi - static_cast<double>(i) / nn;
    dmax = std::max({dmax, hi, lo});
  }
  g.ks_distance = dmax;
  const double root = std::sqrt(nn);
  g.ks_p_value = kolmogorov_p((root + 0.12 + 0.11 / root) * dmax);
  return out;
}

TwoSampleKs two_sample_ks(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("two_sample_ks: both samples must be nonempty");
  std::vector<double> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double dmax = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double da = sa[i];
    const double db = sb[j];
    if (da <= db) {
      while (i < sa.size() && sa[i] == da) ++i;
    }
    if (db <= da) {
      while (j < sb.size() && sb[j] == db) ++j;
    }
    dmax = std::max(dmax, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  TwoSampleKs out;
  out.distance = dmax;
  const double ne = std::sqrt(na * nb / (na + nb));
  out.p_value = kolmogorov_p((ne + 0.12 + 0.11 / ne) * dmax);
  return out;
}

void write_batch_csv(const SampleBatch& batch, std::ostream& os) {
  char buf[64];
  os << "# {\"spec\":\"" << batch.spec.label() << "\",\"seed\":" << batch.seed
     << ",\"n_samples\":" << batch.entropies.size();
  if (batch.mcmc_diag) {
    std::snprintf(buf, sizeof buf, "%.17g", batch.mcmc_diag->acceptance_rate);
    os << ",\"mcmc_diag\":{\"acceptance_rate\":" << buf
       << ",\"burn_in\":" << batch.mcmc_diag->burn_in
       << ",\"thinning\":" << batch.mcmc_diag->thinning << "}";
  }
  os << "}\n";
  for (int i = 0; i < batch.spec.m; ++i) os << "x" << (i + 1) << ",";
  os << "entropy\n";
  for (std::size_t k = 0; k < batch.entropies.size(); ++k) {
    for (double x : batch.configs[k]) {
      std::snprintf(buf, sizeof buf, "%.17g", x);
      os << buf << ",";
    }
    std::snprintf(buf, sizeof buf, "%.17g", batch.entropies[k]);
    os << buf << "\n";
  }
}

}  // namespace fgent
