// Scalar special functions: pinned values, functional equations
// (recurrence, reflection-free duplication), asymptotic regime, and the
// exact Pochhammer / log-gamma-ratio building blocks.

#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <fgent/specfun.hpp>

using namespace fgent;

namespace {
constexpr double kPi = 3.14159265358979323846;

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}
}  // namespace

TEST_CASE("log_gamma pinned values and std agreement") {
  CHECK(std::abs(log_gamma(1.0)) <= 1e-15);
  CHECK(std::abs(log_gamma(2.0)) <= 1e-15);
  CHECK(rel_err(log_gamma(0.5), 0.5 * std::log(kPi)) <= 1e-14);
  for (double x : {0.1, 0.7, 1.3, 4.5, 11.25, 40.0, 123.75, 5000.5})
    CHECK(rel_err(log_gamma(x), std::lgamma(x)) <= 1e-13);
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-2.5), std::domain_error);
}

TEST_CASE("gamma recurrence ln G(x+1) - ln G(x) = ln x") {
  for (double x : {0.05, 0.5, 1.0, 2.75, 7.2, 11.9, 35.0, 211.5}) {
    CHECK(std::abs(log_gamma(x + 1) - log_gamma(x) - std::log(x)) <= 1e-12);
  }
}

TEST_CASE("gamma duplication G(2x) = G(x) G(x+1/2) 2^(2x-1)/sqrt(pi)") {
  for (double x : {0.3, 0.75, 1.5, 3.25, 8.8, 21.0}) {
    const double lhs = log_gamma(2 * x);
    const double rhs = log_gamma(x) + log_gamma(x + 0.5) +
                       (2 * x - 1) * std::log(2.0) - 0.5 * std::log(kPi);
    CHECK(std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)) <= 1e-12);
  }
}

TEST_CASE("digamma pinned values, recurrence, duplication") {
  CHECK(std::abs(digamma(1.0) + euler_gamma) <= 1e-14);
  CHECK(std::abs(digamma(0.5) + euler_gamma + 2 * std::log(2.0)) <= 1e-13);
  CHECK(std::abs(digamma(2.0) - (1.0 - euler_gamma)) <= 1e-14);
  for (double x : {0.1, 0.9, 1.5, 3.3, 10.7, 55.0})
    CHECK(std::abs(digamma(x + 1) - digamma(x) - 1.0 / x) <= 1e-12);
  for (double x : {0.4, 1.1, 2.5, 9.75}) {
    const double lhs = digamma(2 * x);
    const double rhs = 0.5 * digamma(x) + 0.5 * digamma(x + 0.5) + std::log(2.0);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("trigamma pinned values, recurrence, duplication") {
  CHECK(std::abs(trigamma(1.0) - kPi * kPi / 6) <= 1e-13);
  CHECK(std::abs(trigamma(0.5) - kPi * kPi / 2) <= 1e-13);
  for (double x : {0.2, 0.8, 1.6, 4.4, 12.5, 80.0})
    CHECK(std::abs(trigamma(x + 1) - trigamma(x) + 1.0 / (x * x)) <= 1e-12);
  for (double x : {0.6, 1.25, 3.5, 14.0}) {
    const double lhs = trigamma(2 * x);
    const double rhs = 0.25 * (trigamma(x) + trigamma(x + 0.5));
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("asymptotic regime matches the Stirling-type expansions") {
  for (double x : {1e5, 1e7, 1e9}) {
    const double dg = std::log(x) - 1 / (2 * x) - 1 / (12 * x * x);
    CHECK(std::abs(digamma(x) - dg) / std::abs(dg) <= 1e-10);
    const double tg = 1 / x + 1 / (2 * x * x) + 1 / (6 * x * x * x);
    CHECK(std::abs(trigamma(x) - tg) / tg <= 1e-10);
  }
}

TEST_CASE("pochhammer is an exact product") {
  CHECK(pochhammer(3.0, 4) == 360.0);
  CHECK(pochhammer(1.0, 5) == 120.0);
  CHECK(pochhammer(7.5, 0) == 1.0);
  CHECK(pochhammer(-2.5, 3) == doctest::Approx(-2.5 * -1.5 * -0.5).epsilon(1e-15));
  CHECK(pochhammer(-3.0, 5) == 0.0);  // hits zero factor at a+3
  CHECK_THROWS_AS(pochhammer(1.0, -1), std::domain_error);
  // Agreement with the gamma-ratio form on positive arguments.
  for (double a : {0.5, 2.0, 6.25}) {
    for (int k : {1, 3, 9}) {
      const double via_gamma = std::exp(log_gamma_ratio({a + k}, {a}));
      CHECK(rel_err(pochhammer(a, k), via_gamma) <= 1e-13);
    }
  }
}

TEST_CASE("log_gamma_ratio folds numerators and denominators") {
  CHECK(std::abs(log_gamma_ratio({}, {})) == 0.0);
  CHECK(rel_err(std::exp(log_gamma_ratio({10.0}, {8.0})), 72.0) <= 1e-14);
  // Balanced huge arguments stay finite even though each gamma overflows.
  const double r = log_gamma_ratio({400.25, 401.0}, {400.0, 401.25});
  CHECK(std::isfinite(r));
  CHECK(std::abs(r) < 2.0);
  CHECK_THROWS_AS(log_gamma_ratio({1.0}, {0.0}), std::domain_error);
  // span overload agrees with the initializer-list overload.
  const std::vector<double> num = {5.5, 2.0};
  const std::vector<double> den = {3.5, 4.0};
  CHECK(log_gamma_ratio(std::span<const double>(num), std::span<const double>(den)) ==
        log_gamma_ratio({5.5, 2.0}, {3.5, 4.0}));
}
