// Oracle cross-checks on a spot grid: the closed forms, the literal
// summation representations, and the kernel quadrature must agree to
// tight tolerances while sharing no code path. The exhaustive grid runs
// in the acceptance suite; this binary keeps a fast representative set.

#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include <fgent/moments.hpp>
#include <fgent/oracles.hpp>

using namespace fgent;

namespace {

std::vector<EnsembleSpec> spot_specs() {
  return {
      EnsembleSpec::case_a(1, 1),    EnsembleSpec::case_a(1, 4),
      EnsembleSpec::case_a(2, 3),    EnsembleSpec::case_a(3, 7),
      EnsembleSpec::case_a(5, 8),    EnsembleSpec::case_b(1, 1, 1),
      EnsembleSpec::case_b(1, 3, 2), EnsembleSpec::case_b(2, 5, 3),
      EnsembleSpec::case_b(3, 7, 5), EnsembleSpec::case_b(4, 8, 6),
  };
}

double var_tol(double v) { return std::max(1e-8, 1e-10 * std::abs(v)); }

}  // namespace

TEST_CASE("summation oracle reproduces the closed-form variance") {
  for (const auto& spec : spot_specs()) {
    const double exact = variance_exact(spec);
    const auto sum = variance_summation(spec);
    INFO("spec ", spec.label());
    CHECK(sum.reliable);
    CHECK(std::abs(sum.value - exact) <= var_tol(exact));
    for (const auto& piece : sum.pieces) {
      CHECK(piece.reliable);
      CHECK(piece.condition_estimate < summation_condition_threshold);
    }
  }
}

TEST_CASE("quadrature oracle reproduces both closed-form moments") {
  for (const auto& spec : spot_specs()) {
    INFO("spec ", spec.label());
    const auto mq = mean_quadrature(spec, 300);
    CHECK(std::abs(mq.value - mean_exact(spec)) <= 1e-9);
    const double exact = variance_exact(spec);
    const auto vq = variance_quadrature(spec, 300);
    CHECK(std::abs(vq.value - exact) <= var_tol(exact));
    CHECK(vq.error_estimate <= 1e-8);
  }
}

TEST_CASE("summation pieces match their quadrature counterparts") {
  for (const auto& spec :
       {EnsembleSpec::case_a(2, 4), EnsembleSpec::case_a(4, 7),
        EnsembleSpec::case_b(2, 6, 4), EnsembleSpec::case_b(3, 8, 5)}) {
    const auto sum = variance_summation(spec);
    const auto quad = variance_pieces_quadrature(spec, 300);
    for (int i = 0; i < 4; ++i) {
      INFO("spec ", spec.label(), " piece ",
           sum_label_name(sum.pieces[static_cast<std::size_t>(i)].label));
      CHECK(std::abs(sum.pieces[static_cast<std::size_t>(i)].value -
                     quad[static_cast<std::size_t>(i)]) <= 1e-8);
    }
  }
}

TEST_CASE("squared-kernel pieces are nonnegative") {
  // Both I_B-type pieces integrate v v' K^2-type squares, so each must
  // be nonnegative whichever representation computes it.
  for (const auto& spec : spot_specs()) {
    const auto sum = variance_summation(spec);
    INFO("spec ", spec.label());
    CHECK(sum.pieces[2].value >= -1e-12);
    CHECK(sum.pieces[3].value >= -1e-12);
  }
}

TEST_CASE("variance decomposition: value equals (A-pieces) - (B-pieces)") {
  for (const auto& spec : {EnsembleSpec::case_a(3, 5), EnsembleSpec::case_b(3, 6, 4)}) {
    const auto sum = variance_summation(spec);
    const double recomposed = sum.pieces[0].value + sum.pieces[1].value -
                              sum.pieces[2].value - sum.pieces[3].value;
    CHECK(std::abs(sum.value - recomposed) <= 1e-12 * std::max(1.0, std::abs(sum.value)));
  }
}

TEST_CASE("default quadrature order grows with the spec") {
  const auto small = EnsembleSpec::case_a(1, 1);
  const auto large = EnsembleSpec::case_a(8, 20);
  CHECK(quadrature_default_order(small) >= 40);
  CHECK(quadrature_default_order(large) > quadrature_default_order(small));
  // order = 0 selects the default.
  const auto est = mean_quadrature(small);
  CHECK(est.order == quadrature_default_order(small));
}

TEST_CASE("piece labels are distinct per ensemble family") {
  const auto sa = variance_summation(EnsembleSpec::case_a(2, 3));
  CHECK(sa.pieces[0].label == SumLabel::A1);
  CHECK(sa.pieces[1].label == SumLabel::A2);
  CHECK(sa.pieces[2].label == SumLabel::B1);
  CHECK(sa.pieces[3].label == SumLabel::B2);
  const auto sb = variance_summation(EnsembleSpec::case_b(2, 4, 3));
  CHECK(sb.pieces[0].label == SumLabel::fA1);
  CHECK(sb.pieces[1].label == SumLabel::fA2);
  CHECK(sb.pieces[2].label == SumLabel::fB1);
  CHECK(sb.pieces[3].label == SumLabel::fB2);
  CHECK(std::string(sum_label_name(SumLabel::A1)) == "A1");
  CHECK(std::string(sum_label_name(SumLabel::fB2)) == "fB2");
}
