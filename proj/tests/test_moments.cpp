// Closed-form moments: exact small-dimension anchors, global sanity
// bounds, the particle-hole reflection symmetry of the fixed-particle
// ensemble, and convergence of the exact variance to its fixed-fraction
// asymptotics.

#include "doctest.h"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <fgent/moments.hpp>

using namespace fgent;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.6931471805599453094172321;
}  // namespace

TEST_CASE("entropy summand: endpoints, center, range, domain") {
  CHECK(entropy_v(1.0) == 0.0);
  CHECK(entropy_v(-1.0) == 0.0);
  CHECK(entropy_v(0.0) == doctest::Approx(-kLn2).epsilon(1e-15));
  for (double x : {-0.99, -0.5, 0.2, 0.77}) {
    CHECK(entropy_v(x) <= 0.0);
    CHECK(entropy_v(x) >= -kLn2);
    CHECK(entropy_v(x) == doctest::Approx(entropy_v(-x)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(entropy_v(1.0001), std::domain_error);
}

TEST_CASE("single-mode anchors are exact") {
  const auto a11 = EnsembleSpec::case_a(1, 1);
  CHECK(std::abs(mean_exact(a11) - 0.5) <= 1e-12);
  CHECK(std::abs(variance_exact(a11) - (7.0 / 12 - kPi * kPi / 18)) <= 1e-10);

  const auto b111 = EnsembleSpec::case_b(1, 1, 1);
  CHECK(std::abs(mean_exact(b111) - 0.5) <= 1e-12);
}

TEST_CASE("moments stay inside the information-theoretic bounds") {
  for (int m = 1; m <= 8; ++m) {
    for (int n = m; n <= 10; ++n) {
      const auto sa = EnsembleSpec::case_a(m, n);
      const double mu = mean_exact(sa);
      CHECK(mu > 0.0);
      CHECK(mu < m * kLn2);
      CHECK(variance_exact(sa) > 0.0);
      for (int p = m; p <= n; ++p) {
        const auto sb = EnsembleSpec::case_b(m, n, p);
        const double mb = mean_exact(sb);
        CHECK(mb >= 0.0);
        CHECK(mb <= m * kLn2 + 1e-12);
        CHECK(variance_exact(sb) >= -1e-14);
      }
    }
  }
}

TEST_CASE("fixed-particle moments are particle-hole symmetric") {
  // Replacing p by m+n-p swaps the two weight exponents and reflects the
  // spectrum, which leaves the entropy distribution invariant.
  for (auto [m, n, p] : {std::array{2, 5, 2}, std::array{3, 7, 4},
                         std::array{4, 9, 5}, std::array{5, 11, 6}}) {
    const auto s1 = EnsembleSpec::case_b(m, n, p);
    const auto s2 = EnsembleSpec::case_b(m, n, m + n - p);
    CHECK(mean_exact(s1) == doctest::Approx(mean_exact(s2)).epsilon(1e-12));
    CHECK(variance_exact(s1) == doctest::Approx(variance_exact(s2)).epsilon(1e-12));
  }
}

TEST_CASE("closed-form report carries the exact values") {
  const auto spec = EnsembleSpec::case_a(3, 7);
  const auto rep = moments_closed_form(spec);
  CHECK(rep.mean == mean_exact(spec));
  CHECK(rep.variance == variance_exact(spec));
  CHECK(rep.method == Method::closed_form);
  CHECK(rep.error_estimate == 0.0);
  CHECK(std::string(method_name(rep.method)) == "closed_form");
}

TEST_CASE("variance approaches the fixed-fraction limit on n = 3m") {
  // f1 = 1/4. By m = 30 the exact variance should sit within 2% of the
  // limit, and the relative gap should shrink as m grows.
  AsymptoticPoint pa{0.25, 0.0, AsymptoticOrder::leading, 0};
  const double va = variance_asymptotic(pa, EnsembleCase::A);
  double prev_gap = 1e9;
  for (int m : {5, 10, 20, 30}) {
    const double v = variance_exact(EnsembleSpec::case_a(m, 3 * m));
    const double gap = std::abs(v - va) / va;
    CHECK(gap < prev_gap);
    prev_gap = gap;
    if (m == 30) CHECK(gap <= 0.02);
  }

  AsymptoticPoint pb{0.25, 0.5, AsymptoticOrder::leading, 0};
  const double vb = variance_asymptotic(pb, EnsembleCase::B);
  prev_gap = 1e9;
  for (int m : {5, 10, 20, 30}) {
    const double v = variance_exact(EnsembleSpec::case_b(m, 3 * m, 2 * m));
    const double gap = std::abs(v - vb) / vb;
    CHECK(gap < prev_gap);
    prev_gap = gap;
    if (m == 30) CHECK(gap <= 0.02);
  }
}

TEST_CASE("corrected asymptotics tighten the fixed-particle limit") {
  for (int m : {8, 16}) {
    const int n = 3 * m, p = 2 * m;
    const double exact = variance_exact(EnsembleSpec::case_b(m, n, p));
    AsymptoticPoint lead{0.25, 0.5, AsymptoticOrder::leading, 0};
    AsymptoticPoint corr{0.25, 0.5, AsymptoticOrder::corrected, m + n};
    const double gap_lead = std::abs(exact - variance_asymptotic(lead, EnsembleCase::B));
    const double gap_corr = std::abs(exact - variance_asymptotic(corr, EnsembleCase::B));
    CHECK(gap_corr < gap_lead);
  }
}

TEST_CASE("asymptotic domain errors") {
  AsymptoticPoint bad_f1{0.75, 0.0, AsymptoticOrder::leading, 0};
  CHECK_THROWS_AS(variance_asymptotic(bad_f1, EnsembleCase::A), std::domain_error);
  AsymptoticPoint bad_f2{0.25, 0.1, AsymptoticOrder::leading, 0};
  CHECK_THROWS_AS(variance_asymptotic(bad_f2, EnsembleCase::B), std::domain_error);
  AsymptoticPoint no_dim{0.25, 0.5, AsymptoticOrder::corrected, 0};
  CHECK_THROWS_AS(variance_asymptotic(no_dim, EnsembleCase::B), std::domain_error);
  AsymptoticPoint a_corr{0.25, 0.0, AsymptoticOrder::corrected, 16};
  CHECK_THROWS_AS(variance_asymptotic(a_corr, EnsembleCase::A), std::domain_error);
}

TEST_CASE("ensemble spec validation") {
  CHECK_THROWS_AS(EnsembleSpec::case_a(0, 1), std::domain_error);
  CHECK_THROWS_AS(EnsembleSpec::case_a(3, 2), std::domain_error);
  CHECK_THROWS_AS(EnsembleSpec::case_b(2, 5, 1), std::domain_error);
  CHECK_THROWS_AS(EnsembleSpec::case_b(2, 5, 6), std::domain_error);
  CHECK(EnsembleSpec::case_a(2, 3).label() == "A(m=2,n=3)");
  CHECK(EnsembleSpec::case_b(2, 5, 3).label() == "B(m=2,n=5,p=3)");
}
