// Monte Carlo samplers: seed determinism and thread-count independence,
// distributional anchors against the exact moments and the kernel one-point
// density, estimation standard errors, KS utilities, and error paths.

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <fgent/kernel.hpp>
#include <fgent/moments.hpp>
#include <fgent/rng.hpp>
#include <fgent/sampler.hpp>

using namespace fgent;

TEST_CASE("shared rng: deterministic streams with sane marginals") {
  CHECK(stream_seed(42, 0) == stream_seed(42, 0));
  CHECK(stream_seed(42, 0) != stream_seed(42, 1));
  CHECK(stream_seed(42, 0) != stream_seed(43, 0));

  Rng rng(2026);
  double sum = 0.0, sum2 = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.005);

  double gm = 0.0, gv = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    gm += g;
    gv += g * g;
  }
  gm /= n;
  gv = gv / n - gm * gm;
  CHECK(std::abs(gm) < 0.02);
  CHECK(std::abs(gv - 1.0) < 0.03);
}

TEST_CASE("normal cdf and kolmogorov tail pinned values") {
  CHECK(standard_normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(standard_normal_cdf(1.96) == doctest::Approx(0.9750021048517795).epsilon(1e-12));
  CHECK(standard_normal_cdf(-1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-12));

  CHECK(kolmogorov_p(0.5) == doctest::Approx(0.9639452436648751).epsilon(1e-6));
  CHECK(kolmogorov_p(1.0) == doctest::Approx(0.26999967167735455).epsilon(1e-6));
  CHECK(kolmogorov_p(2.0) == doctest::Approx(6.7092525564e-4).epsilon(1e-4));
  CHECK(kolmogorov_p(0.0) == 1.0);
  // Reference values from the direct alternating series pin both internal
  // branches: 1.1 evaluates on the small-lambda theta side, 1.18 on the
  // large-lambda side.
  CHECK(kolmogorov_p(1.1) == doctest::Approx(0.177718192606).epsilon(1e-8));
  CHECK(kolmogorov_p(1.18) == doctest::Approx(0.123453809430).epsilon(1e-8));
  // Continuity across the crossover: the gap must stay within what the
  // tail's own slope (about -0.58 there) produces over the interval.
  CHECK(std::abs(kolmogorov_p(1.1799) - kolmogorov_p(1.1801)) < 3e-4);
}

namespace {

void check_batch_invariants(const SampleBatch& batch, std::size_t n_expected) {
  REQUIRE(batch.configs.size() == n_expected);
  REQUIRE(batch.entropies.size() == n_expected);
  const double smax = batch.spec.m * std::log(2.0);
  for (std::size_t k = 0; k < n_expected; ++k) {
    const auto& c = batch.configs[k];
    REQUIRE(c.size() == static_cast<std::size_t>(batch.spec.m));
    CHECK(std::is_sorted(c.begin(), c.end()));
    for (double x : c) CHECK(batch.spec.in_support(x));
    CHECK(batch.entropies[k] >= -1e-12);
    CHECK(batch.entropies[k] <= smax + 1e-12);
  }
}

}  // namespace

TEST_CASE("seed determinism and thread-count independence") {
  const auto spec = EnsembleSpec::case_b(3, 7, 5);

  const auto mm1 = sample_matrix_caseB(spec, 400, 99);
  const auto mm2 = sample_matrix_caseB(spec, 400, 99);
  CHECK(mm1.entropies == mm2.entropies);
  CHECK(mm1.configs == mm2.configs);
  CHECK_FALSE(mm1.mcmc_diag.has_value());

  McmcTuning fast;
  fast.burn_in = 2000;
  fast.thinning = 50;
  const auto mc1 = sample_mcmc(spec, 300, 99, fast);
  const auto mc2 = sample_mcmc(spec, 300, 99, fast);
  CHECK(mc1.entropies == mc2.entropies);
  REQUIRE(mc1.mcmc_diag.has_value());
  CHECK(mc1.mcmc_diag->acceptance_rate == mc2.mcmc_diag->acceptance_rate);

  const auto mc3 = sample_mcmc(spec, 300, 100, fast);
  CHECK(mc1.entropies != mc3.entropies);

  // Physical thread count may change wall time, never output.
  setenv("FGENT_THREADS", "1", 1);
  const auto serial_mm = sample_matrix_caseB(spec, 400, 99);
  const auto serial_mc = sample_mcmc(spec, 300, 99, fast);
  setenv("FGENT_THREADS", "3", 1);
  const auto odd_mm = sample_matrix_caseB(spec, 400, 99);
  unsetenv("FGENT_THREADS");
  CHECK(serial_mm.entropies == mm1.entropies);
  CHECK(serial_mm.configs == mm1.configs);
  CHECK(serial_mc.entropies == mc1.entropies);
  CHECK(odd_mm.entropies == mm1.entropies);

  check_batch_invariants(mm1, 400);
  check_batch_invariants(mc1, 300);
}

TEST_CASE("mcmc anchors: uniform single-eigenvalue chain") {
  // m = 1, n = 1 makes the weight flat, so x is uniform on [0,1] and the
  // entropy mean is exactly 1/2.
  const auto spec = EnsembleSpec::case_a(1, 1);
  const std::size_t n = 100000;
  const auto batch = sample_mcmc(spec, n, 42);
  check_batch_invariants(batch, n);
  REQUIRE(batch.mcmc_diag.has_value());
  CHECK(batch.mcmc_diag->acceptance_rate > 0.3);
  CHECK(batch.mcmc_diag->acceptance_rate < 0.5);
  CHECK(batch.mcmc_diag->burn_in == 10000);
  CHECK(batch.mcmc_diag->thinning == 100);

  double xm = 0.0;
  for (const auto& c : batch.configs) xm += c[0];
  xm /= static_cast<double>(n);
  CHECK(std::abs(xm - 0.5) <= 3.0 / std::sqrt(12.0 * static_cast<double>(n)));

  const auto est = estimate(batch);
  CHECK(std::abs(est.report.mean - 0.5) <= 3.0 * est.mean_se);
  CHECK(est.report.method == Method::monte_carlo);
  CHECK(est.report.error_estimate == est.mean_se);
}

TEST_CASE("matrix model anchors: smallest case is flat in x") {
  // m = p = n = 1: the Haar matrix element modulus squared is uniform on
  // [0,1], so x = 2y - 1 is flat on [-1,1] and the entropy mean is 1/2.
  const auto spec = EnsembleSpec::case_b(1, 1, 1);
  const std::size_t n = 50000;
  const auto batch = sample_matrix_caseB(spec, n, 7);
  check_batch_invariants(batch, n);

  double xm = 0.0, below = 0.0;
  for (const auto& c : batch.configs) {
    xm += c[0];
    if (c[0] < 0.0) below += 1.0;
  }
  xm /= static_cast<double>(n);
  CHECK(std::abs(xm) <= 4.0 * std::sqrt(1.0 / (3.0 * static_cast<double>(n))));
  CHECK(std::abs(below / static_cast<double>(n) - 0.5) <=
        4.0 * 0.5 / std::sqrt(static_cast<double>(n)));

  const auto est = estimate(batch);
  CHECK(std::abs(est.report.mean - 0.5) <= 4.0 * est.mean_se);
}

TEST_CASE("matrix model eigenvalues follow the kernel one-point density") {
  const auto spec = EnsembleSpec::case_b(2, 4, 2);
  const std::size_t n = 50000;
  const auto batch = sample_matrix_caseB(spec, n, 31);

  // Empirical CDF of all eigenvalues vs the numerically integrated
  // one-point density from the determinantal kernel.
  const auto ctx = make_kernel_context(spec);
  const int grid = 4000;
  std::vector<double> cdf(static_cast<std::size_t>(grid) + 1, 0.0);
  const double lo = spec.support_lo(), hi = spec.support_hi();
  const double h = (hi - lo) / grid;
  double accum = 0.0;
  double prev = density_one_point(ctx, lo + 1e-12);
  for (int i = 1; i <= grid; ++i) {
    const double x = lo + h * i;
    const double cur = density_one_point(ctx, std::min(x, hi - 1e-12));
    accum += 0.5 * (prev + cur) * h;
    cdf[static_cast<std::size_t>(i)] = accum;
    prev = cur;
  }
  CHECK(std::abs(accum - 1.0) < 1e-4);
  for (auto& c : cdf) c /= accum;

  std::vector<double> pooled;
  pooled.reserve(n * 2);
  for (const auto& c : batch.configs) pooled.insert(pooled.end(), c.begin(), c.end());
  std::sort(pooled.begin(), pooled.end());
  double dmax = 0.0;
  const double np = static_cast<double>(pooled.size());
  for (std::size_t k = 0; k < pooled.size(); ++k) {
    const double t = (pooled[k] - lo) / h;
    const auto i0 = static_cast<std::size_t>(std::clamp(t, 0.0, static_cast<double>(grid - 1)));
    const double frac = t - static_cast<double>(i0);
    const double f = cdf[i0] + std::clamp(frac, 0.0, 1.0) * (cdf[i0 + 1] - cdf[i0]);
    dmax = std::max(dmax, std::abs(f - (static_cast<double>(k) + 0.5) / np));
  }
  CHECK(dmax < 0.01);
}

TEST_CASE("experimental orthogonal-conjugation sampler matches exact moments") {
  const auto spec = EnsembleSpec::case_a(2, 3);
  const std::size_t n = 30000;
  const auto batch = sample_matrix_caseA_experimental(spec, n, 5);
  check_batch_invariants(batch, n);
  CHECK_FALSE(batch.mcmc_diag.has_value());

  const auto est = estimate(batch);
  CHECK(std::abs(est.report.mean - mean_exact(spec)) <= 4.0 * est.mean_se);
  CHECK(std::abs(est.report.variance - variance_exact(spec)) <= 4.0 * est.variance_se);
}

TEST_CASE("mcmc agrees with the exact matrix model on a case-B ensemble") {
  const auto spec = EnsembleSpec::case_b(2, 5, 3);
  const auto mm = sample_matrix_caseB(spec, 20000, 17);
  const auto mc = sample_mcmc(spec, 20000, 23);

  const auto ks = two_sample_ks(mm.entropies, mc.entropies);
  CHECK(ks.p_value > 0.001);

  const double me = mean_exact(spec);
  const double ve = variance_exact(spec);
  const auto em = estimate(mm);
  const auto ec = estimate(mc);
  CHECK(std::abs(em.report.mean - me) <= 4.0 * em.mean_se);
  CHECK(std::abs(em.report.variance - ve) <= 4.0 * em.variance_se);
  CHECK(std::abs(ec.report.mean - me) <= 4.0 * ec.mean_se);
  CHECK(std::abs(ec.report.variance - ve) <= 4.0 * ec.variance_se);
}

TEST_CASE("estimate: standardized diagnostics against exact moments") {
  const auto spec = EnsembleSpec::case_b(4, 12, 8);
  const std::size_t n = 20000;
  const auto batch = sample_matrix_caseB(spec, n, 11);
  const auto est = estimate(batch);

  REQUIRE(est.gaussian.standardized.size() == n);
  CHECK_FALSE(est.gaussian.degenerate);

  double zm = 0.0;
  for (double z : est.gaussian.standardized) zm += z;
  zm /= static_cast<double>(n);
  double zv = 0.0;
  for (double z : est.gaussian.standardized) zv += (z - zm) * (z - zm);
  zv /= static_cast<double>(n - 1);
  const double root = std::sqrt(static_cast<double>(n));
  CHECK(std::abs(zm) <= 5.0 / root);
  CHECK(std::abs(zv - 1.0) <= 10.0 / root);

  CHECK(est.gaussian.ks_distance > 0.0);
  CHECK(est.gaussian.ks_distance < 0.1);
  CHECK(est.gaussian.sample_skewness < 0.0);  // small dimensions skew left
  CHECK(est.variance_se > 0.0);
  CHECK(est.n_samples == n);
}

TEST_CASE("estimate: constant batch is degenerate with zero variance") {
  SampleBatch batch;
  batch.spec = EnsembleSpec::case_a(1, 1);
  batch.seed = 0;
  for (int i = 0; i < 10; ++i) {
    batch.configs.push_back({0.5});
    batch.entropies.push_back(-entropy_v(0.5));
  }
  const auto est = estimate(batch);
  CHECK(est.report.variance == 0.0);
  CHECK(est.mean_se == 0.0);
  CHECK(est.variance_se == 0.0);
  CHECK(est.gaussian.degenerate);
  CHECK(est.gaussian.sample_skewness == 0.0);
}

TEST_CASE("two-sample ks extremes") {
  const std::vector<double> a{0.1, 0.2, 0.3, 0.4, 0.5};
  const auto same = two_sample_ks(a, a);
  CHECK(same.distance == 0.0);
  CHECK(same.p_value == 1.0);

  std::vector<double> lo(200), hi(200);
  for (int i = 0; i < 200; ++i) {
    lo[static_cast<std::size_t>(i)] = i * 0.001;
    hi[static_cast<std::size_t>(i)] = 10.0 + i * 0.001;
  }
  const auto apart = two_sample_ks(lo, hi);
  CHECK(apart.distance == 1.0);
  CHECK(apart.p_value < 1e-10);
}

TEST_CASE("error paths: domain validation and tuning failure") {
  const auto a = EnsembleSpec::case_a(2, 3);
  const auto b = EnsembleSpec::case_b(2, 5, 3);

  CHECK_THROWS_AS((void)sample_mcmc(a, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)sample_matrix_caseB(b, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)sample_matrix_caseB(a, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)sample_matrix_caseA_experimental(b, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)sample_matrix_caseA_experimental(a, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)estimate(SampleBatch{}), std::invalid_argument);
  CHECK_THROWS_AS((void)two_sample_ks({}, {1.0}), std::invalid_argument);

  // A nearly-zero step without adaptation accepts almost every proposal,
  // which the frozen-phase acceptance monitor must reject.
  McmcTuning stuck;
  stuck.burn_in = 1;
  stuck.thinning = 10;
  stuck.initial_step = 1e-9;
  CHECK_THROWS_AS((void)sample_mcmc(a, 200, 3, stuck), std::runtime_error);
}

TEST_CASE("batch csv carries a json header and one row per sample") {
  const auto spec = EnsembleSpec::case_b(2, 5, 3);
  const auto batch = sample_matrix_caseB(spec, 25, 13);
  std::ostringstream os;
  write_batch_csv(batch, os);
  const std::string text = os.str();

  std::istringstream is(text);
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line.rfind("# {\"spec\":\"B(m=2,n=5,p=3)\"", 0) == 0);
  CHECK(line.find("\"seed\":13") != std::string::npos);
  CHECK(line.find("\"n_samples\":25") != std::string::npos);
  CHECK(line.find("mcmc_diag") == std::string::npos);

  REQUIRE(std::getline(is, line));
  CHECK(line == "x1,x2,entropy");

  std::size_t rows = 0;
  while (std::getline(is, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 2);
    ++rows;
  }
  CHECK(rows == 25);

  // MCMC batches carry their diagnostics in the header.
  McmcTuning fast;
  fast.burn_in = 500;
  fast.thinning = 20;
  const auto chain = sample_mcmc(spec, 5, 3, fast);
  std::ostringstream os2;
  write_batch_csv(chain, os2);
  CHECK(os2.str().find("\"mcmc_diag\":{\"acceptance_rate\":") != std::string::npos);
  CHECK(os2.str().find("\"burn_in\":500") != std::string::npos);
}
