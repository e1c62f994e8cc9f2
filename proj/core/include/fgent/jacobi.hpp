// SPDX-License-Identifier: Apache-2.0
//
// Jacobi polynomials J_k^{(alpha,beta)} in the normalization
// J_k^{(alpha,beta)}(1) = (alpha+1)_k / k!, their squared norms against the
// half-interval weight ((1-x)/2)^alpha ((1+x)/2)^beta used by the
// correlation kernels, and Gauss-Jacobi quadrature rules.

#pragma once

#include <vector>

#include "fgent/accum.hpp"
#include "fgent/ensemble.hpp"

namespace fgent {

/// Nodes/weights for integrals of the form
///   int_{-1}^{1} f(x) (1-x)^alpha (1+x)^beta dx  ~=  sum_i weights[i] f(nodes[i]).
struct QuadratureRule {
  std::vector<double> nodes;    ///< strictly increasing, inside (-1,1)
  std::vector<double> weights;  ///< strictly positive
  double alpha = 0.0;
  double beta = 0.0;

  template <typename F>
  double integrate(F&& f) const {
    CompensatedSum s;
    for (std::size_t i = 0; i < nodes.size(); ++i) s.add(weights[i] * f(nodes[i]));
    return s.value();
  }
};

/// Gauss-Jacobi rule of the given order (node count) for exponents
/// alpha, beta > -1. Exact for polynomial factors of degree <= 2*order-1.
/// Nodes come from the symmetric-eigenvalue reduction of the three-term
/// recurrence matrix; weights from the first eigenvector components.
QuadratureRule gauss_jacobi_rule(int order, double alpha, double beta);

/// J_k^{(alpha,beta)}(x) by the three-term recurrence (the numerically
/// stable path used everywhere outside tests). Requires alpha, beta > -1.
double jacobi_eval(int k, double alpha, double beta, double x);

/// Values J_0..J_kmax at one point, one recurrence pass.
std::vector<double> jacobi_eval_upto(int kmax, double alpha, double beta, double x);

/// Finite-series evaluation in ascending powers of (1+x)/2 — slow,
/// alternating, kept as an independent test oracle for the recurrence.
double jacobi_series_ascending(int k, double alpha, double beta, double x);

/// Finite-series evaluation in mixed powers of (1-x)/2 and (1+x)/2 —
/// the second independent test oracle.
double jacobi_series_split(int k, double alpha, double beta, double x);

/// Squared norm h_k of the ensemble's k-th basis polynomial against the
/// kernel weight ((1-x)/2)^a ((1+x)/2)^b:
///   case A (even subfamily, degree 2k): int_{-1}^{1} w J_{2k}^2 with a = b
///   case B (full family, degree k):     int_{-1}^{1} w J_k^2
/// Requires 0 <= k < spec.m.
double norm_h(int k, const EnsembleSpec& spec);

/// Jacobi parameters plus the first max_degree+1 ensemble norms.
struct JacobiBasis {
  double alpha = 0.0;          ///< exponent of (1-x)/2
  double beta = 0.0;           ///< exponent of (1+x)/2
  int max_degree = 0;          ///< highest polynomial degree the kernel uses
  std::vector<double> norms;   ///< h_0..h_{m-1}, all > 0
};

/// Basis backing the ensemble's correlation kernel: case A uses the
/// even-degree subfamily J_{2k}^{(a,a)} (max degree 2m-2), case B the
/// full family J_k^{(a,b)} (max degree m-1).
JacobiBasis make_basis(const EnsembleSpec& spec);

}  // namespace fgent
