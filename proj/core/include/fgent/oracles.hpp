// SPDX-License-Identifier: Apache-2.0
//
// Two independent verification oracles for the closed-form moments:
//
//  (i)  variance_summation — the nested finite-sum representations of
//       the variance integrals, evaluated literally term by term with
//       log-space gamma ratios and compensated accumulation;
//  (ii) mean_quadrature / variance_quadrature — Gauss–Jacobi quadrature
//       of the defining kernel integrals
//         E[S] = −∫ v·K(x,x),  V[S] = I_A − I_B,
//         I_A  = ∫ v²(x) K(x,x) dx,
//         I_B  = ∬ v(x) v(y) K²(x,y) dx dy.
//
// The two oracles share no code path with the closed forms (moments) —
// triple agreement is the correctness argument for all of them.

#pragma once

#include <array>

#include "fgent/ensemble.hpp"

namespace fgent {

/// Which piece of the variance decomposition a trace row belongs to.
/// A1/A2 split I_A and B1/B2 split I_B for the arbitrary-particle-number
/// ensemble; the f-prefixed labels are the fixed-particle-number pieces.
enum class SumLabel { A1, A2, B1, B2, fA1, fA2, fB1, fB2 };

const char* sum_label_name(SumLabel label);

/// Evaluation trace of one summation piece. condition_estimate is the
/// ratio of the peak partial-sum magnitude to the final value; values
/// above 1e8 are flagged unreliable (catastrophic cancellation in
/// alternating gamma-ratio sums).
struct SummationTermTrace {
  SumLabel label{};
  double value = 0.0;
  double condition_estimate = 0.0;
  bool reliable = true;
};

inline constexpr double summation_condition_threshold = 1e8;

/// Result of the summation oracle: value = (A1+A2) − (B1+B2) (or the
/// f-labelled analogue), with a per-piece trace.
struct SummationResult {
  double value = 0.0;
  std::array<SummationTermTrace, 4> pieces{};
  bool reliable = true;
};

/// Literal evaluation of the printed summation representations of the
/// variance. Conventions: empty sums (upper limit below lower) are 0;
/// a reciprocal gamma of a nonpositive integer kills its term; rational
/// prefactors are evaluated exactly first so that zero prefactors skip
/// the polygamma evaluation of their term.
SummationResult variance_summation(const EnsembleSpec& spec);

/// A quadrature value with a conservative error estimate (difference
/// against the half-order rule; the returned value uses the doubled
/// order).
struct QuadratureEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  int order = 0;  ///< base rule order per dimension (doubled internally)
};

/// Default per-dimension rule order for a spec: 4m + 2(a+b) + 40.
int quadrature_default_order(const EnsembleSpec& spec);

/// E[S] = −∫ v·K(x,x) dx by Gauss–Jacobi quadrature with the ensemble
/// weight absorbed into the rule. order == 0 selects the default.
QuadratureEstimate mean_quadrature(const EnsembleSpec& spec, int order = 0);

/// V[S] = I_A − I_B by quadrature; I_B uses the expansion
/// I_B = Σ_{k,l} N_{kl}²/(h_k h_l) with N_{kl} = ∫ v·w·J_(k) J_(l),
/// which is exact for the projection kernel and needs only
/// one-dimensional rules.
QuadratureEstimate variance_quadrature(const EnsembleSpec& spec, int order = 0);

/// Quadrature reference values for the four summation pieces, in the
/// same order as SummationResult.pieces. Used to validate each printed
/// sum independently.
std::array<double, 4> variance_pieces_quadrature(const EnsembleSpec& spec, int order = 0);

}  // namespace fgent
