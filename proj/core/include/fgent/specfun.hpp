// SPDX-License-Identifier: Apache-2.0
//
// Scalar special functions underlying every closed form in the library:
// log-gamma, digamma, trigamma, the Pochhammer symbol, and stable log-space
// gamma ratios. All functions are pure and reentrant.

#pragma once

#include <initializer_list>
#include <span>

namespace fgent {

/// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;

/// ln Gamma(x) for x > 0; throws std::domain_error otherwise.
double log_gamma(double x);

/// Digamma psi_0(x) = d/dx ln Gamma(x), x > 0.
/// Relative accuracy ~1e-14 (upward recurrence to x >= 12, then the
/// Bernoulli asymptotic series truncated after the x^-12 term).
double digamma(double x);

/// Trigamma psi_1(x) = d^2/dx^2 ln Gamma(x), x > 0. Same strategy.
double trigamma(double x);

/// Pochhammer symbol (a)_k = a(a+1)...(a+k-1) as an exact product,
/// including nonpositive a (where a gamma-ratio form would break down).
/// (a)_0 = 1. Requires k >= 0.
double pochhammer(double a, int k);

/// sum ln Gamma(num_i) - sum ln Gamma(den_j), with all arguments > 0.
/// Keeps gamma-ratio prefactors representable far beyond the overflow
/// point of the raw gammas.
double log_gamma_ratio(std::span<const double> num_args, std::span<const double> den_args);
double log_gamma_ratio(std::initializer_list<double> num_args,
                       std::initializer_list<double> den_args);

}  // namespace fgent
