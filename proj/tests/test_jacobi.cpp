// Jacobi polynomial layer: endpoint normalization, parity, two
// independent series evaluations against the recurrence, quadrature-rule
// sanity and exactness, and the ensemble norm table.

#include "doctest.h"

#include <cmath>
#include <vector>

#include <fgent/jacobi.hpp>
#include <fgent/specfun.hpp>

using namespace fgent;

namespace {
double scale_rel(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}
}  // namespace

TEST_CASE("endpoint normalization J_k(1) = (alpha+1)_k / k!") {
  for (double alpha : {0.0, 0.5, 2.0, 5.0}) {
    for (double beta : {0.0, 1.5, 4.0}) {
      for (int k : {0, 1, 2, 5, 12, 25}) {
        const double want = pochhammer(alpha + 1, k) / pochhammer(1.0, k);
        CHECK(scale_rel(jacobi_eval(k, alpha, beta, 1.0), want) <= 1e-12);
      }
    }
  }
}

TEST_CASE("symmetric-weight parity J_k(-x) = (-1)^k J_k(x)") {
  for (double alpha : {0.0, 1.0, 3.5}) {
    for (int k = 0; k <= 20; ++k) {
      for (double x : {0.15, 0.45, 0.8, 0.97}) {
        const double plus = jacobi_eval(k, alpha, alpha, x);
        const double minus = jacobi_eval(k, alpha, alpha, -x);
        const double want = (k % 2 == 0) ? plus : -plus;
        CHECK(std::abs(minus - want) <= 1e-11 * std::max(1.0, std::abs(plus)));
      }
    }
  }
}

// Both series are alternating sums, so each is exercised in the regime where
// its expansion variable stays small and cancellation cannot dominate: the
// ascending series (powers of (1+x)/2) near x = -1 and the split series
// (mixed powers of (1-x)/2) near x = +1.  At moderate x the degree is capped
// so the row of alternating terms stays short enough to retain full accuracy.
TEST_CASE("series evaluations agree with the recurrence up to k = 40") {
  for (double alpha : {0.0, 0.5, 3.0}) {
    for (double beta : {0.0, 2.5}) {
      for (int k : {0, 1, 2, 3, 5, 8, 13, 21, 30, 40}) {
        for (double x : {-0.999, -0.99, -0.97}) {
          const double rec = jacobi_eval(k, alpha, beta, x);
          CHECK(scale_rel(jacobi_series_ascending(k, alpha, beta, x), rec) <= 1e-10);
        }
        for (double x : {0.999, 0.99}) {
          const double rec = jacobi_eval(k, alpha, beta, x);
          CHECK(scale_rel(jacobi_series_split(k, alpha, beta, x), rec) <= 1e-10);
        }
      }
      for (double x : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
        for (int k = 0; k <= 6; ++k) {
          const double rec = jacobi_eval(k, alpha, beta, x);
          CHECK(scale_rel(jacobi_series_ascending(k, alpha, beta, x), rec) <= 1e-10);
        }
        for (int k = 0; k <= 10; ++k) {
          const double rec = jacobi_eval(k, alpha, beta, x);
          CHECK(scale_rel(jacobi_series_split(k, alpha, beta, x), rec) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("bulk evaluation matches single evaluation") {
  const double alpha = 1.5, beta = 0.5, x = 0.37;
  const auto all = jacobi_eval_upto(30, alpha, beta, x);
  REQUIRE(all.size() == 31);
  for (int k = 0; k <= 30; ++k)
    CHECK(all[static_cast<std::size_t>(k)] == jacobi_eval(k, alpha, beta, x));
}

TEST_CASE("Gauss-Jacobi rules: structure and total mass") {
  for (double alpha : {0.0, 0.5, 2.0}) {
    for (double beta : {0.0, 3.0}) {
      const auto rule = gauss_jacobi_rule(24, alpha, beta);
      REQUIRE(rule.nodes.size() == 24);
      REQUIRE(rule.weights.size() == 24);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        CHECK(rule.nodes[i] > -1.0);
        CHECK(rule.nodes[i] < 1.0);
        CHECK(rule.weights[i] > 0.0);
        if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
      }
      // Total mass: 2^(alpha+beta+1) B(alpha+1, beta+1).
      const double mass = std::exp((alpha + beta + 1) * std::log(2.0) +
                                   log_gamma(alpha + 1) + log_gamma(beta + 1) -
                                   log_gamma(alpha + beta + 2));
      CHECK(scale_rel(rule.integrate([](double) { return 1.0; }), mass) <= 1e-13);
    }
  }
}

TEST_CASE("quadrature orthogonality of the Jacobi family") {
  const double alpha = 2.0, beta = 1.0;
  const int kmax = 12;
  const auto rule = gauss_jacobi_rule(2 * kmax + 8, alpha, beta);
  for (int j = 0; j <= kmax; ++j) {
    for (int k = j; k <= kmax; ++k) {
      const double integral = rule.integrate([&](double x) {
        return jacobi_eval(j, alpha, beta, x) * jacobi_eval(k, alpha, beta, x);
      });
      if (j == k) {
        CHECK(integral > 0.0);
      } else {
        // Scale against the diagonal entries.
        const double dj = rule.integrate([&](double x) {
          const double v = jacobi_eval(j, alpha, beta, x);
          return v * v;
        });
        const double dk = rule.integrate([&](double x) {
          const double v = jacobi_eval(k, alpha, beta, x);
          return v * v;
        });
        CHECK(std::abs(integral) <= 1e-10 * std::sqrt(dj * dk));
      }
    }
  }
}

TEST_CASE("ensemble norms match direct quadrature, both cases") {
  SUBCASE("arbitrary particle number (even subfamily)") {
    const auto spec = EnsembleSpec::case_a(4, 7);
    const double a = spec.a();
    const auto rule = gauss_jacobi_rule(40, a, a);
    for (int k = 0; k < spec.m; ++k) {
      // Half-interval ensemble weight: ((1-x)/2)^a ((1+x)/2)^a on [0,1];
      // the integrand is even, so it is half the full-interval integral.
      const double full = rule.integrate([&](double x) {
        const double v = jacobi_eval(2 * k, a, a, x);
        return v * v;
      });
      const double want = 0.5 * std::pow(2.0, -2 * a) * full;
      CHECK(scale_rel(norm_h(k, spec), want) <= 1e-12);
    }
  }
  SUBCASE("fixed particle number (full family)") {
    const auto spec = EnsembleSpec::case_b(4, 9, 6);
    const double a = spec.a(), b = spec.b();
    const auto rule = gauss_jacobi_rule(40, a, b);
    for (int k = 0; k < spec.m; ++k) {
      const double full = rule.integrate([&](double x) {
        const double v = jacobi_eval(k, a, b, x);
        return v * v;
      });
      const double want = std::pow(2.0, -(a + b)) * full;
      CHECK(scale_rel(norm_h(k, spec), want) <= 1e-12);
    }
  }
}

TEST_CASE("basis descriptors") {
  const auto ba = make_basis(EnsembleSpec::case_a(3, 5));
  CHECK(ba.alpha == 2.0);
  CHECK(ba.beta == 2.0);
  CHECK(ba.max_degree == 4);  // even subfamily up to J_{2(m-1)}
  REQUIRE(ba.norms.size() == 3);
  for (double h : ba.norms) CHECK(h > 0.0);

  const auto bb = make_basis(EnsembleSpec::case_b(3, 8, 5));
  CHECK(bb.alpha == 3.0);
  CHECK(bb.beta == 2.0);
  CHECK(bb.max_degree == 2);
  REQUIRE(bb.norms.size() == 3);
  for (double h : bb.norms) CHECK(h > 0.0);
}
