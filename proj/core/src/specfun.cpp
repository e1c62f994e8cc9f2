// SPDX-License-Identifier: Apache-2.0

#include "fgent/specfun.hpp"

#include <cmath>
#include <stdexcept>

#include "fgent/accum.hpp"

namespace fgent {

namespace {

[[noreturn]] void throw_nonpositive(const char* fn) {
  throw std::domain_error(std::string(fn) + ": argument must be positive");
}

// Threshold above which the Bernoulli asymptotic series is accurate to
// better than 1e-15 relative when truncated after the B_12 term.
constexpr double kAsymptoticCut = 12.0;

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw_nonpositive("log_gamma");
  return std::lgamma(x);
}

double digamma(double x) {
  if (!(x > 0.0)) throw_nonpositive("digamma");
  // psi0(x) = psi0(x+1) - 1/x : shift upward until the series applies.
  double shift = 0.0;
  while (x < kAsymptoticCut) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  // psi0(x) ~ ln x - 1/(2x) - sum_{l>=1} B_{2l} / (2l x^{2l});
  // coefficients B_{2l}/(2l) for l = 1..6.
  const double u = 1.0 / (x * x);
  const double tail =
      u * (1.0 / 12.0 +
           u * (-1.0 / 120.0 +
                u * (1.0 / 252.0 +
                     u * (-1.0 / 240.0 +
                          u * (1.0 / 132.0 + u * (-691.0 / 32760.0))))));
  return shift + std::log(x) - 0.5 / x - tail;
}

double trigamma(double x) {
  if (!(x > 0.0)) throw_nonpositive("trigamma");
  // psi1(x) = psi1(x+1) + 1/x^2.
  double shift = 0.0;
  while (x < kAsymptoticCut) {
    shift += 1.0 / (x * x);
    x += 1.0;
  }
  // psi1(x) ~ 1/x + 1/(2x^2) + sum_{l>=1} B_{2l} / x^{2l+1}.
  const double inv = 1.0 / x;
  const double u = inv * inv;
  const double tail =
      inv * u *
      (1.0 / 6.0 +
       u * (-1.0 / 30.0 +
            u * (1.0 / 42.0 +
                 u * (-1.0 / 30.0 + u * (5.0 / 66.0 + u * (-691.0 / 2730.0))))));
  return shift + inv + 0.5 * u + tail;
}

double pochhammer(double a, int k) {
  if (k < 0) throw std::domain_error("pochhammer: k must be >= 0");
  double r = 1.0;
  for (int j = 0; j < k; ++j) r *= a + j;
  return r;
}

double log_gamma_ratio(std::span<const double> num_args, std::span<const double> den_args) {
  CompensatedSum s;
  for (double x : num_args) {
    if (!(x > 0.0)) throw_nonpositive("log_gamma_ratio");
    s.add(std::lgamma(x));
  }
  for (double x : den_args) {
    if (!(x > 0.0)) throw_nonpositive("log_gamma_ratio");
    s.add(-std::lgamma(x));
  }
  return s.value();
}

double log_gamma_ratio(std::initializer_list<double> num_args,
                       std::initializer_list<double> den_args) {
  return log_gamma_ratio(std::span<const double>(num_args.begin(), num_args.size()),
                         std::span<const double>(den_args.begin(), den_args.size()));
}

}  // namespace fgent
