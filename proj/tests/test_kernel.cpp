// Determinantal-kernel property suite: projection trace, the reproducing
// identity, the confluent two-term diagonal recapture, symmetry, and
// one-point-density sanity. The whole binary is budgeted to run fast.

#include "doctest.h"

#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include <fgent/kernel.hpp>

using namespace fgent;

namespace {

// Integrate f against the ensemble weight over the ensemble support.
// The Gauss-Jacobi rule carries (1-x)^a (1+x)^b on [-1,1]; the ensemble
// weight is the same with halved factors, and for the arbitrary-particle
// ensemble the support is [0,1] with an even integrand.
double weighted_integral(const KernelContext& ctx, int order,
                         const std::function<double(double)>& f) {
  const double a = ctx.spec.a(), b = ctx.spec.b();
  const auto rule = gauss_jacobi_rule(order, a, b);
  const double half_powers = std::pow(2.0, -(a + b));
  const double support_factor = ctx.spec.kind == EnsembleCase::A ? 0.5 : 1.0;
  return support_factor * half_powers * rule.integrate(f);
}

std::vector<EnsembleSpec> property_specs() {
  return {
      EnsembleSpec::case_a(1, 1), EnsembleSpec::case_a(2, 3),
      EnsembleSpec::case_a(4, 6), EnsembleSpec::case_a(8, 12),
      EnsembleSpec::case_b(1, 1, 1), EnsembleSpec::case_b(2, 4, 3),
      EnsembleSpec::case_b(4, 9, 6), EnsembleSpec::case_b(8, 12, 10),
  };
}

}  // namespace

TEST_CASE("projection trace: integral of K(x,x) equals m") {
  for (const auto& spec : property_specs()) {
    const auto ctx = make_kernel_context(spec);
    const int order = 4 * spec.m + 2 * (spec.a() + spec.b()) + 24;
    const double trace = weighted_integral(
        ctx, order, [&](double x) { return kernel_polynomial_part(ctx, x, x); });
    INFO("spec ", spec.label());
    CHECK(std::abs(trace - spec.m) <= 1e-10 * spec.m);
  }
}

TEST_CASE("reproducing identity: K convolved with itself returns K") {
  for (const auto& spec : property_specs()) {
    const auto ctx = make_kernel_context(spec);
    const int order = 4 * spec.m + 2 * (spec.a() + spec.b()) + 24;
    const double lox = spec.support_lo();
    const std::vector<std::pair<double, double>> points = {
        {lox + 0.15, lox + 0.15},
        {lox + 0.2, 0.55},
        {0.1 + lox * 0.5, 0.85},
    };
    for (auto [x, y] : points) {
      const double direct = kernel_polynomial_part(ctx, x, y);
      const double reproduced = weighted_integral(ctx, order, [&](double z) {
        return kernel_polynomial_part(ctx, x, z) * kernel_polynomial_part(ctx, z, y);
      });
      INFO("spec ", spec.label(), " x=", x, " y=", y);
      CHECK(std::abs(reproduced - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("confluent two-term diagonal matches the direct basis sum") {
  for (const auto& spec :
       {EnsembleSpec::case_b(1, 2, 1), EnsembleSpec::case_b(2, 4, 3),
        EnsembleSpec::case_b(4, 9, 6), EnsembleSpec::case_b(6, 11, 8),
        EnsembleSpec::case_b(8, 12, 10)}) {
    const auto ctx = make_kernel_context(spec);
    for (double x : {-0.9, -0.35, 0.0, 0.25, 0.6, 0.95}) {
      const double direct = kernel_polynomial_part(ctx, x, x);
      const double cd = kernel_diag_cd(ctx, x);
      INFO("spec ", spec.label(), " x=", x);
      CHECK(std::abs(cd - direct) <= 1e-10 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("kernel symmetry and support checking") {
  const auto ctx = make_kernel_context(EnsembleSpec::case_b(3, 7, 5));
  for (double x : {-0.7, 0.1, 0.8}) {
    for (double y : {-0.4, 0.3, 0.9}) {
      CHECK(kernel_eval(ctx, x, y) ==
            doctest::Approx(kernel_eval(ctx, y, x)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(kernel_eval(ctx, -1.5, 0.0), std::domain_error);

  const auto ctx_a = make_kernel_context(EnsembleSpec::case_a(2, 4));
  CHECK_THROWS_AS(kernel_eval(ctx_a, -0.5, 0.2), std::domain_error);
}

TEST_CASE("one-point density is nonnegative and integrates to one") {
  for (const auto& spec : {EnsembleSpec::case_a(3, 5), EnsembleSpec::case_b(3, 6, 4)}) {
    const auto ctx = make_kernel_context(spec);
    const double lo = spec.support_lo();
    for (int i = 0; i <= 20; ++i) {
      const double x = lo + (1.0 - lo) * i / 20.0;
      CHECK(density_one_point(ctx, x) >= -1e-12);
    }
    const int order = 4 * spec.m + 2 * (spec.a() + spec.b()) + 24;
    const double mass = weighted_integral(ctx, order, [&](double x) {
      return kernel_polynomial_part(ctx, x, x) / spec.m;
    });
    CHECK(std::abs(mass - 1.0) <= 1e-10);
  }
}

TEST_CASE("weight logarithm endpoint convention") {
  const auto spec_a = EnsembleSpec::case_a(2, 2);  // zero exponents
  CHECK(log_weight(spec_a, 1.0) == 0.0);
  const auto spec = EnsembleSpec::case_b(2, 5, 3);
  CHECK(std::isfinite(log_weight(spec, 0.3)));
  // Positive exponents push the log-weight to -inf at the endpoint.
  CHECK(log_weight(spec, 1.0) == -std::numeric_limits<double>::infinity());
}
