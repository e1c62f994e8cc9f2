// SPDX-License-Identifier: Apache-2.0
//
// Determinantal correlation kernel of the eigenvalue process,
//
//   K(x,y) = sqrt(w(x) w(y)) * sum_{k=0}^{m-1} J_(k)(x) J_(k)(y) / h_k,
//   w(x)   = ((1-x)/2)^a ((1+x)/2)^b,
//
// where J_(k) runs over the ensemble basis (even-degree subfamily for
// case A, full family for case B). K is a projection kernel: it
// reproduces itself under the support integral and has trace m; the
// one-point density is K(x,x)/m.

#pragma once

#include "fgent/ensemble.hpp"
#include "fgent/jacobi.hpp"

namespace fgent {

/// Immutable evaluation context: ensemble, basis norms, and the
/// coefficients of the confluent two-term form of the diagonal sum
/// (case B only; zero for case A, which has no such shortcut).
struct KernelContext {
  EnsembleSpec spec;
  JacobiBasis basis;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
};

KernelContext make_kernel_context(const EnsembleSpec& spec);

/// ln w(x) with the 0*ln(0) -> 0 convention at the endpoints, so that a
/// zero exponent never produces NaN there.
double log_weight(const EnsembleSpec& spec, double x);

/// The polynomial part sum_k J_(k)(x) J_(k)(y) / h_k (kernel divided by
/// the weight factors); exposed separately because quadrature callers
/// fold the weight into the rule.
double kernel_polynomial_part(const KernelContext& ctx, double x, double y);

/// K(x,y); algebraically symmetric in (x,y). Throws outside support.
double kernel_eval(const KernelContext& ctx, double x, double y);

/// Diagonal polynomial part sum_k J_k(x)^2 / h_k evaluated through the
/// confluent two-term recapture (case B only):
///   alpha1 J_{m-1}^{(a+1,b+1)} J_{m-1}^{(a,b)} - alpha2 J_{m-2}^{(a+1,b+1)} J_m^{(a,b)}
/// with J_{-1} = 0 at m = 1.
double kernel_diag_cd(const KernelContext& ctx, double x);

/// One-point density g_1(x) = K(x,x)/m; nonnegative, integrates to 1.
double density_one_point(const KernelContext& ctx, double x);

}  // namespace fgent
