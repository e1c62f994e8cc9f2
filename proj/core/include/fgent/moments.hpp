// SPDX-License-Identifier: Apache-2.0
//
// Closed-form mean and variance of the von Neumann entanglement entropy
// over both ensembles, the entropy functional v itself, and the
// large-dimension asymptotic expansions of the variance at fixed
// subsystem-fraction parameters f1 = m/(m+n), f2 = p/(m+n).
//
// The closed forms are evaluated exactly as printed, term by term; the
// independent oracles (summation / quadrature / Monte Carlo) are the
// correctness authority, so no algebraic rearrangement is applied here.

#pragma once

#include "fgent/ensemble.hpp"

namespace fgent {

/// Provenance of a moment value.
enum class Method { closed_form, summation, quadrature, monte_carlo };

const char* method_name(Method method);

/// A mean/variance pair with its computation method and an error scale
/// (0 for exact closed forms; rule-doubling or standard-error estimates
/// for the numerical methods).
struct MomentReport {
  double mean = 0.0;      ///< E[S] in nats; in (0, m ln 2).
  double variance = 0.0;  ///< V[S] in nats^2; positive.
  Method method = Method::closed_form;
  double error_estimate = 0.0;
  EnsembleSpec spec;
};

/// Entropy summand v(x) = ((1-x)/2)ln((1-x)/2) + ((1+x)/2)ln((1+x)/2),
/// with v(+-1) = 0 by the 0*ln(0) -> 0 convention; range [-ln 2, 0].
/// The chain entropy is S = -sum_i v(x_i). Throws for |x| > 1.
double entropy_v(double x);

/// Exact mean E[S]:
///   case A: (m+n-1/2) psi0(2m+2n) + (1/4-m) psi0(m+n)
///           + (1/2-n) psi0(2n) - (1/4) psi0(n) - m.
///   case B: -(m(m+n-p)/(m+n)) psi0(m+n-p) + (m+n) psi0(m+n+1)
///           - (mp/(m+n)) psi0(p+1) - n psi0(n+1) - m.
double mean_exact(const EnsembleSpec& spec);

/// Exact variance V[S]:
///   case A: (1/2-m-n) psi1(2m+2n) + (n-1/2) psi1(2n)
///           + (m(2m+n-1)/(2m+2n-1) - 1/8) psi1(m+n) + psi1(n)/8
///           - (1/2)(psi0(2m+2n) - psi0(2n)).
///   case B: c0 psi1(m+n-p) - (m+n) psi1(m+n) + n psi1(n) + c1 psi1(p)
///           + c2 (psi0(m+n-p) - psi0(p))^2
///           + c3 (psi0(m+n-p) - psi0(p))
///           - psi0(m+n) + psi0(n) + c4,
/// with the rational coefficients c0..c4 formed from Pochhammer
/// products so they stay exact for small integer dimensions.
double variance_exact(const EnsembleSpec& spec);

/// Convenience: closed-form mean and variance as a MomentReport.
MomentReport moments_closed_form(const EnsembleSpec& spec);

/// Expansion order of the asymptotic variance.
enum class AsymptoticOrder {
  leading,    ///< constant term of the fixed-fraction limit
  corrected,  ///< case B only: leading plus the 1/(12(m+n)^2) bracket
};

/// Fixed-fraction evaluation point of the asymptotic variance.
/// total_dim = m+n is required only for the corrected order, where the
/// bracket carries an explicit 1/(12(m+n)^2) prefactor.
struct AsymptoticPoint {
  double f1 = 0.0;  ///< m/(m+n), in (0, 1/2]
  double f2 = 0.0;  ///< p/(m+n), case B only, f1 <= f2 <= 1/2
  AsymptoticOrder order = AsymptoticOrder::leading;
  int total_dim = 0;  ///< m+n; needed when order == corrected
};

/// Asymptotic variance at a fixed-fraction point.
///   case A leading:  (1/2)(f1 + f1^2 + ln(1-f1)); remainder o(1/(m+n)).
///   case B leading:  f1 + f1^2 + ln(1-f1)
///                    + f1 f2 (1-f1)(1-f2) ln^2((1-f2)/f2)
///                    + f1^2 (2 f2 - 1) ln((1-f2)/f2);
///                    remainder o(1/(m+n)^2).
///   case B corrected: adds the full 1/(12(m+n)^2) bracket; remainder
///                    o(1/(m+n)^4).
///// Throws std::domain_error outside the regime (f1 out of (0,1/2];
/// case B f2 out of [f1,1/2]; corrected order without total_dim or for
/// case A, which has no printed correction).
double variance_asymptotic(const AsymptoticPoint& point, EnsembleCase kind);

}  // namespace fgent
