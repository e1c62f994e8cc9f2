// SPDX-License-Identifier: Apache-2.0

#include "fgent/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "fgent/specfun.hpp"

namespace fgent {

const char* method_name(Method method) {
  switch (method) {
    case Method::closed_form: return "closed_form";
    case Method::summation: return "summation";
    case Method::quadrature: return "quadrature";
    case Method::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

double entropy_v(double x) {
  if (std::fabs(x) > 1.0) {
    throw std::domain_error("entropy_v: argument outside [-1, 1]");
  }
  const double up = 0.5 * (1.0 + x);
  const double dn = 0.5 * (1.0 - x);
  double v = 0.0;
  if (up > 0.0) v += up * std::log(up);
  if (dn > 0.0) v += dn * std::log(dn);
  return v;
}

namespace {

double mean_case_a(double m, double n) {
  return (m + n - 0.5) * digamma(2.0 * m + 2.0 * n) + (0.25 - m) * digamma(m + n) +
         (0.5 - n) * digamma(2.0 * n) - 0.25 * digamma(n) - m;
}

double mean_case_b(double m, double n, double p) {
  return -(m * (m + n - p) / (m + n)) * digamma(m + n - p) + (m + n) * digamma(m + n + 1.0) -
         (m * p / (m + n)) * digamma(p + 1.0) - n * digamma(n + 1.0) - m;
}

double variance_case_a(double m, double n) {
  return (0.5 - m - n) * trigamma(2.0 * m + 2.0 * n) + (n - 0.5) * trigamma(2.0 * n) +
         (m * (2.0 * m + n - 1.0) / (2.0 * m + 2.0 * n - 1.0) - 0.125) * trigamma(m + n) +
         0.125 * trigamma(n) - 0.5 * (digamma(2.0 * m + 2.0 * n) - digamma(2.0 * n));
}

double variance_case_b(double m, double n, double p) {
  // Rational coefficients built from Pochhammer products, exact for
  // small integer dimensions.
  const double poch3 = pochhammer(m + n - 1.0, 3);  // (m+n-1)(m+n)(m+n+1)
  const double poch2 = pochhammer(m + n, 2);        // (m+n)(m+n+1)
  const double c0 = m * (m + n - p) * (m * m + 2.0 * m * n + n * n - n * p - 1.0) / poch3;
  const double c1 = m * p * (m * m + m * n + n * p - 1.0) / poch3;
  const double c2 = m * n * p * (m + n - p) / ((m + n) * poch3);
  const double c3 = -m * (m + 1.0) * (m + n - 2.0 * p) / ((m + n) * poch2);
  const double c4 = -m * (2.0 * m + n + 2.0) / ((m + n) * poch2);
  const double d = digamma(m + n - p) - digamma(p);
  return c0 * trigamma(m + n - p) - (m + n) * trigamma(m + n) + n * trigamma(n) +
         c1 * trigamma(p) + c2 * d * d + c3 * d - digamma(m + n) + digamma(n) + c4;
}

}  // namespace

double mean_exact(const EnsembleSpec& spec) {
  spec.validate();
  const double m = spec.m, n = spec.n;
  return spec.kind == EnsembleCase::A ? mean_case_a(m, n)
                                      : mean_case_b(m, n, static_cast<double>(spec.p));
}

double variance_exact(const EnsembleSpec& spec) {
  spec.validate();
  const double m = spec.m, n = spec.n;
  return spec.kind == EnsembleCase::A ? variance_case_a(m, n)
                                      : variance_case_b(m, n, static_cast<double>(spec.p));
}

MomentReport moments_closed_form(const EnsembleSpec& spec) {
  MomentReport rep;
  rep.mean = mean_exact(spec);
  rep.variance = variance_exact(spec);
  rep.method = Method::closed_form;
  rep.error_estimate = 0.0;
  rep.spec = spec;
  return rep;
}

double variance_asymptotic(const AsymptoticPoint& point, EnsembleCase kind) {
  const double f1 = point.f1;
  if (!(f1 > 0.0 && f1 <= 0.5)) {
    throw std::domain_error("variance_asymptotic: f1 must lie in (0, 1/2]");
  }
  if (kind == EnsembleCase::A) {
    if (point.order == AsymptoticOrder::corrected) {
      throw std::domain_error(
          "variance_asymptotic: corrected order is defined for case B only");
    }
    return 0.5 * (f1 + f1 * f1 + std::log1p(-f1));
  }

  const double f2 = point.f2;
  if (!(f2 >= f1 && f2 <= 0.5)) {
    throw std::domain_error("variance_asymptotic: case B requires f1 <= f2 <= 1/2");
  }
  const double lg = std::log((1.0 - f2) / f2);
  double v = f1 + f1 * f1 + std::log1p(-f1) +
             f1 * f2 * (1.0 - f1) * (1.0 - f2) * lg * lg +
             f1 * f1 * (2.0 * f2 - 1.0) * lg;
  if (point.order == AsymptoticOrder::corrected) {
    if (point.total_dim < 1) {
      throw std::domain_error(
          "variance_asymptotic: corrected order needs total_dim = m+n >= 1");
    }
    const double s = static_cast<double>(point.total_dim);
    const double f2m1 = f2 - 1.0;
    const double f1m1 = f1 - 1.0;
    const double bracket =
        f1 * f1 / (f2m1 * f2m1) + f1 * f1 / (f2 * f2) + 12.0 * f1 * f1 - 12.0 * f1 +
        1.0 / (f1m1 * f1m1) + (f1 - 3.0 * f1 * f1) / f2m1 + (3.0 * f1 * f1 - f1) / f2 - 1.0 +
        (2.0 * f1m1 * f1 * (12.0 * f2 * f2 * f2 - 18.0 * f2 * f2 + 4.0 * f2 + 1.0) /
         (f2m1 * f2)) * lg +
        12.0 * f1m1 * f1 * f2m1 * f2 * lg * lg;
    v += bracket / (12.0 * s * s);
  }
  return v;
}

}  // namespace fgent
