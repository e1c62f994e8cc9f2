// SPDX-License-Identifier: Apache-2.0
//
// Ensemble description for the two families of fermionic Gaussian states:
// case A (arbitrary particle number) and case B (fixed particle number).
// Both joint eigenvalue densities share one functional form,
//
//   p(x_1..x_m)  ∝  prod_{i<j} (x_i^g - x_j^g)^2 * prod_i (1-x_i)^a (1+x_i)^b,
//
// differing only in the exponent map and the support:
//   case A: g = 2, a = b = n - m,        support [0, 1]
//   case B: g = 1, a = n - p, b = p - m, support [-1, 1], with m <= p <= n.

#pragma once

#include <stdexcept>
#include <string>

namespace fgent {

enum class EnsembleCase { A, B };

/// Dimensions and case tag of one ensemble; all derived parameters
/// (exponents, interaction power, support) are computed on demand.
struct EnsembleSpec {
  EnsembleCase kind = EnsembleCase::A;
  int m = 1;  ///< number of eigenvalues (subsystem modes)
  int n = 1;  ///< total modes; m <= n
  int p = 0;  ///< particle number, case B only; m <= p <= n

  static EnsembleSpec case_a(int m, int n) {
    EnsembleSpec s{EnsembleCase::A, m, n, 0};
    s.validate();
    return s;
  }
  static EnsembleSpec case_b(int m, int n, int p) {
    EnsembleSpec s{EnsembleCase::B, m, n, p};
    s.validate();
    return s;
  }

  /// Exponent of (1-x) in the joint density.
  int a() const { return kind == EnsembleCase::A ? n - m : n - p; }
  /// Exponent of (1+x) in the joint density.
  int b() const { return kind == EnsembleCase::A ? n - m : p - m; }
  /// Power g in the squared Vandermonde interaction prod (x_i^g - x_j^g)^2.
  int interaction_power() const { return kind == EnsembleCase::A ? 2 : 1; }
  double support_lo() const { return kind == EnsembleCase::A ? 0.0 : -1.0; }
  double support_hi() const { return 1.0; }
  bool in_support(double x) const { return x >= support_lo() && x <= support_hi(); }

  /// Throws std::domain_error with a one-line message on an invalid spec.
  void validate() const {
    if (m < 1) throw std::domain_error("EnsembleSpec: m must be >= 1");
    if (n < m) throw std::domain_error("EnsembleSpec: requires m <= n");
    if (kind == EnsembleCase::B && (p < m || p > n))
      throw std::domain_error("EnsembleSpec: case B requires m <= p <= n");
  }

  /// Short human-readable tag, e.g. "A(m=2,n=3)" or "B(m=2,n=5,p=3)".
  std::string label() const {
    if (kind == EnsembleCase::A)
      return "A(m=" + std::to_string(m) + ",n=" + std::to_string(n) + ")";
    return "B(m=" + std::to_string(m) + ",n=" + std::to_string(n) +
           ",p=" + std::to_string(p) + ")";
  }
};

}  // namespace fgent
