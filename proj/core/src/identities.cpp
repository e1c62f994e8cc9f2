// SPDX-License-Identifier: Apache-2.0
//
// Identity catalogue implementation. Every evaluator computes the two
// sides of one finite-sum identity exactly as recorded — gamma-ratio
// prefactors in log space, compensated accumulation for every sum, and
// terminating series evaluated term-recursively — so a small residual is
// evidence for the identity itself, not for any shared simplification.

#include "fgent/identities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <thread>
#include <utility>

#include "fgent/accum.hpp"
#include "fgent/oracles.hpp"
#include "fgent/rng.hpp"
#include "fgent/specfun.hpp"

namespace fgent {

namespace {

// Names in IdentityId declaration order.
constexpr std::array<const char*, identity_count> kNames = {
    "lemma1", "lemma2", "lemma3", "lemma4", "lemma5",  "lemma6",
    "lemma6I", "dumys", "gauss2f1", "tf1", "tf2", "tf3", "tf4",
    "B1", "B3", "B31", "B32", "B2", "B30", "B4", "B5", "B6",
    "B7", "B71", "B72", "B9", "B12c1", "B11ic", "B12c2", "B12c3",
    "B20", "B21", "B22", "B201", "B202",
    "Bn0", "Bn1", "Bn2", "Bn3", "Bn4", "Bn5", "Bn6", "Bn7", "Bn8",
    "chu_vandermonde", "s_4r", "s_5r", "s6r", "lemma5c0",
};

constexpr std::array<IdentityId, identity_count> kAllIds = [] {
  std::array<IdentityId, identity_count> a{};
  for (int i = 0; i < identity_count; ++i) a[i] = static_cast<IdentityId>(i);
  return a;
}();

[[noreturn]] void fail_domain(IdentityId id, const std::string& what) {
  throw std::domain_error(std::string(identity_name(id)) + ": " + what);
}

void need(bool ok, IdentityId id, const char* constraint) {
  if (!ok) fail_domain(id, constraint);
}

double getp(const IdentityCase& ic, const char* key) {
  auto it = ic.params.find(key);
  if (it == ic.params.end())
    fail_domain(ic.id, std::string("missing parameter '") + key + "'");
  if (!std::isfinite(it->second))
    fail_domain(ic.id, std::string("parameter '") + key + "' must be finite");
  return it->second;
}

int geti(const IdentityCase& ic, const char* key) {
  const double v = getp(ic, key);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    fail_domain(ic.id, std::string("parameter '") + key + "' must be an integer");
  return static_cast<int>(v);
}

int get_m(const IdentityCase& ic, int minimum = 1) {
  const int m = geti(ic, "m");
  if (m < minimum)
    fail_domain(ic.id, "m must be an integer >= " + std::to_string(minimum));
  return m;
}

// Tracks the worst cancellation seen across all sums of one evaluation.
struct EvalCtx {
  double cond = 1.0;
  double take(CompensatedSum& s) {
    cond = std::max(cond, s.condition_estimate());
    return s.value();
  }
};

// Gamma ratio prod Γ(num_i) / prod Γ(den_j) through log space.
double gr(std::initializer_list<double> num, std::initializer_list<double> den) {
  return std::exp(log_gamma_ratio(num, den));
}

// Γ(x+k)/Γ(x) as an exact product (k may be negative).
double gamma_ratio_shift(double x, int k) {
  if (k >= 0) return pochhammer(x, k);
  return 1.0 / pochhammer(x + k, -k);
}

// Terminating series at unit argument, sum_{j>=0} prod(u+j)/prod(l+j)/(j+1)
// term recurrence. A vanishing upper-parameter factor terminates the
// series; a vanishing lower-parameter factor before termination is a
// domain violation.
double hyp_sum(std::initializer_list<double> upper, std::initializer_list<double> lower,
               int n_terms, EvalCtx& cx, IdentityId id) {
  CompensatedSum s;
  double t = 1.0;
  s.add(t);
  for (int j = 0; j < n_terms; ++j) {
    double num = 1.0;
    for (double u : upper) num *= u + j;
    if (num == 0.0) break;
    double den = static_cast<double>(j + 1);
    for (double l : lower) den *= l + j;
    if (den == 0.0)
      fail_domain(id, "series lower parameter hits a nonpositive integer inside the summation range");
    t *= num / den;
    s.add(t);
  }
  return cx.take(s);
}

// Building block Γ(x+c+1)Γ(x+d+1) / (Γ(x+a+1)Γ(x+b+1)).
double phi4(double a, double b, double c, double d, double x) {
  return gr({x + c + 1, x + d + 1}, {x + a + 1, x + b + 1});
}

double d0(double x) { return digamma(x); }
double d1(double x) { return trigamma(x); }

// ---------------------------------------------------------------------
// Re-summation lemmas.
// ---------------------------------------------------------------------

// Partial-fraction re-summation of a reciprocal gamma-kernel sum with a
// simple pole factor 1/(c+i).
void eval_lemma1(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b"), c = getp(ic, "c");
  need(a > 0 && b > 0 && c > 0, ic.id, "a, b, c must be positive reals");
  CompensatedSum sl, sr;
  for (int i = 1; i <= m; ++i) {
    sl.add(gr({}, {double(i), a + i, double(m + 1 - i), m + b + 1 - i}) / (c + i));
    sr.add(gr({c - i + m + 1, a + b - i + 2 * m},
              {double(m - i + 1), a - i + m + 1, b + m, c + m + 1, a + b + m}));
  }
  L = cx.take(sl);
  R = cx.take(sr);
}

// Dummy-summation re-indexing of the plain reciprocal gamma-kernel sum;
// needs the offset c to be a positive integer.
void eval_lemma2(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b");
  const int c = geti(ic, "c");
  need(a > 0 && b > 0, ic.id, "a, b must be positive reals");
  need(c >= 1, ic.id, "c must be a positive integer");
  CompensatedSum sl, sr;
  for (int i = 1; i <= m; ++i) {
    sl.add(gr({}, {double(c + i), a + i, double(m + 1 - i), m + b + 1 - i}));
    sr.add(gr({m + a + b + i - 1, double(m + c - i)},
              {a + i, double(m - i + 1), m + b, m + a + b, double(c), double(m + c)}));
  }
  L = cx.take(sl);
  R = cx.take(sr);
}

// Variant with an extra 1/i factor; the re-summed side picks up a
// digamma difference.
void eval_lemma3(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b");
  const int c = geti(ic, "c");
  need(a > 0 && b > 0, ic.id, "a, b must be positive reals");
  need(c >= 1, ic.id, "c must be a positive integer");
  CompensatedSum sl, sr;
  for (int i = 1; i <= m; ++i) {
    sl.add(gr({}, {double(c + i), a + i, double(m - i + 1), b - i + m + 1}) / i);
    sr.add(gr({a - i + m, b + c + i + m},
              {double(c + i), double(m - i + 1), a, a + m, 1 + b + m, b + c + m}) / i);
  }
  L = cx.take(sl);
  R = cx.take(sr) + (d0(a) - d0(a + m)) * gr({}, {a, double(c), double(m + 1), b + m + 1});
}

// Two-offset version: both integer offsets re-summed symmetrically.
void eval_lemma4(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b");
  const int c = geti(ic, "c"), d = geti(ic, "d");
  need(a > 0 && b > 0, ic.id, "a, b must be positive reals");
  need(c >= 1 && d >= 1, ic.id, "c and d must be positive integers");
  CompensatedSum sl, sr;
  for (int i = 1; i <= m; ++i) {
    sl.add(gr({}, {double(c + i), a + i, double(d + m - i + 1), b + m - i + 1}));
    sr.add(gr({double(c + d + i - 1), a + b - i + 2 * m},
              {double(c + i), b - i + m + 1, double(d), a + m, a + b + m, double(c + d + m)}));
    sr.add(gr({double(c + d + i - 1), a + b - i + 2 * m},
              {double(d + i), a - i + m + 1, double(c), b + m, a + b + m, double(c + d + m)}));
  }
  L = cx.take(sl);
  R = cx.take(sr);
}

// Alternating gamma-ratio sum with two simple-pole factors; the closed
// side is a three-part gamma-ratio sum.
void eval_lemma5(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), c = getp(ic, "c");
  need(a >= 0 && c >= 0, ic.id, "a and c must be >= 0");
  CompensatedSum sl, sr;
  for (int i = 1; i <= m; ++i) {
    const double sgn = (i % 2 == 0) ? 1.0 : -1.0;
    sl.add(sgn * gr({a - i + m + 1}, {double(m - i + 1)}) *
           (1.0 / (a + c - i + 2 * m + 1) - 1.0 / (c + i)));
    const double x = double(m - i);
    sr.add(phi4(0, a + c, a, c, x) / (a + c - 2 * i + 2 * m + 1) +
           a * phi4(1, a + c + 1, a, c, x) -
           phi4(1, a + c, a + 1, c, x) / (a + c - 2 * i + 2 * m + 2));
  }
  L = cx.take(sl);
  R = gr({a + c + m + 1}, {c + m + 1}) * cx.take(sr);
}

// Fully re-summed variant with a nontrivial shifted kernel; holds for
// a > -1 (the half-integer application uses a = -1/2), and a + b must
// stay away from zero because of the 1/(a+b+i-1) pole at i = 1.
void eval_lemma6(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b"), c = getp(ic, "c");
  need(a > -1 && a != 0.0, ic.id, "a must be > -1 and nonzero");
  need(b > 0 && c > 0, ic.id, "b and c must be positive reals");
  need(a + b != 0.0, ic.id, "a + b must be nonzero");
  const auto phi_ab = [&](double x) { return gr({x + b + 1, x + a + b + 1}, {x + 1, x + a + 1}); };
  const auto phi_inv = [&](double x) { return gr({x + 1, x + a + 1}, {x + b + 1, x + a + b + 1}); };
  CompensatedSum sl, sr;
  for (int i = 1; i <= m; ++i) {
    sl.add(phi_ab(double(m - i)) *
           (1.0 / (a + b + c - i + 2 * m + 1) - 1.0 / (c + i)));
    const double bracket =
        1.0 / (a + b + c + 2 * i - 1) -
        b * (a + b) / (a * i * (a + b + c + i)) -
        b * (a - b) / (a * (a + i) * (b + c + i)) +
        (b + i) * (a + b + i) / (i * (a + i) * (a + b + c + 2 * i)) -
        (a + b + 2 * i - 2) / ((b + i - 1) * (a + b + i - 1));
    sr.add(phi_ab(double(i - 1)) * phi_inv(c + i - 1) * bracket);
  }
  L = cx.take(sl);
  R = phi_ab(m + c) * cx.take(sr) + phi_ab(double(m - 1)) / b;
}

// Telescoping recurrence for shifted gamma-ratio kernels: a weighted pair
// of kernel sums collapses to boundary terms.
void eval_lemma6I(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b");
  const double c = getp(ic, "c"), d = getp(ic, "d");
  need(a > 0 && b > 0 && c > 0 && d > 0, ic.id, "a, b, c, d must be positive reals");
  CompensatedSum s1, s2, sr;
  for (int j = 1; j <= m; ++j) {
    const double x = double(m - j);
    s1.add(gr({x + c + 1, x + d + 2}, {x + a + 1, x + b + 2}));
    s2.add(gr({x + c + 1, x + d + 1}, {x + a + 1, x + b + 1}));
  }
  L = (c - b) * cx.take(s1) + (d - a + 1) * cx.take(s2);
  sr.add(gr({m + c + 1, m + d + 1}, {m + a, m + b + 1}));
  sr.add(-gr({c + 1, d + 1}, {a, b + 1}));
  R = cx.take(sr);
}

// ---------------------------------------------------------------------
// Dummy summation, Gauss closed form, Chu–Vandermonde special case.
// ---------------------------------------------------------------------

// A reciprocal gamma ratio written as an alternating partial-fraction sum
// over its integer displacement.
void eval_dumys(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int c = geti(ic, "c");
  const double x = getp(ic, "x");
  need(c >= 1, ic.id, "c must be a positive integer");
  need(x > 0, ic.id, "x must be positive");
  L = gr({x}, {c + x});
  CompensatedSum sr;
  for (int j = 1; j <= c; ++j) {
    const double sgn = (j % 2 == 1) ? 1.0 : -1.0;
    sr.add(sgn * gr({}, {double(j), double(c - j + 1)}) / (x + j - 1));
  }
  R = cx.take(sr);
}

// Terminating Gauss sum at unit argument equals a gamma-ratio product.
void eval_gauss2f1(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int N = geti(ic, "N");
  const double b = getp(ic, "b"), c = getp(ic, "c");
  need(N >= 1, ic.id, "N must be a positive integer");
  need(b > 0, ic.id, "b must be positive");
  need(c > b, ic.id, "c must exceed b");
  L = hyp_sum({double(-N), b}, {c}, N + 1, cx, ic.id);
  R = gr({c - b + N, c}, {c - b, c + N});
}

// Chu–Vandermonde special case: sum of falling-factorial ratios with an
// exact rational closed form. Integer displacement, so both sides are
// evaluated as exact products.
void eval_chu(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const int n = geti(ic, "n");
  need(n >= m, ic.id, "n must be an integer >= m");
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i)
    sl.add(gamma_ratio_shift(double(m - i + 1), n - m));
  L = cx.take(sl);
  R = gamma_ratio_shift(double(m), n - m + 1) / (n - m + 1);
}

// ---------------------------------------------------------------------
// Unit-argument transformation formulas for terminating series.
// ---------------------------------------------------------------------

void eval_tf1(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b"), c = getp(ic, "c");
  need(a > 0 && b > 0 && c > 0, ic.id, "a, b, c must be positive reals");
  L = hyp_sum({c + 1, double(1 - m), 1 - b - m}, {a + 1, c + 2}, m, cx, ic.id);
  R = (c + 1) / (c + m) * gr({a + 1, a + b + 2 * m - 1}, {a + m, a + b + m}) *
      hyp_sum({1, double(1 - m), 1 - a - m}, {2 - a - b - 2 * m, 1 - c - m}, m, cx, ic.id);
}

void eval_tf2(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b"), c = getp(ic, "c");
  need(a > 0 && b > 0 && c > 0, ic.id, "a, b, c must be positive reals");
  need(!(c == std::floor(c) && c <= 1), ic.id,
       "c must not be an integer <= 1 (series lower parameter 2-c-m would vanish)");
  L = hyp_sum({1, double(1 - m), 1 - b - m}, {a + 1, c + 1}, m, cx, ic.id);
  R = c / (c + m - 1) *
      hyp_sum({1, double(1 - m), a + b + m}, {a + 1, 2 - c - m}, m, cx, ic.id);
}

void eval_tf3(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b"), c = getp(ic, "c");
  need(a > 0 && b > 0 && c > 0, ic.id, "a, b, c must be positive reals");
  need(!(a == std::floor(a) && a <= 1), ic.id,
       "a must not be an integer <= 1 (series lower parameter 2-a-m would vanish)");
  L = hyp_sum({1, 1, double(1 - m), 1 - b - m}, {2, a + 1, c + 1}, m, cx, ic.id);
  R = a * (b + c + m) / ((a + m - 1) * (b + m)) *
          hyp_sum({1, 1, double(1 - m), b + c + m + 1}, {2, c + 1, 2 - a - m}, m, cx, ic.id) +
      a * c * (d0(a) - d0(a + m)) / (m * (b + m));
}

void eval_tf4(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const int a = geti(ic, "a"), b = geti(ic, "b"), d = geti(ic, "d");
  const double c = getp(ic, "c");
  need(a >= 1 && b >= 1 && d >= 1, ic.id, "a, b, d must be positive integers");
  need(c > 0, ic.id, "c must be positive");
  const double ad = a, bd = b, dd = d;
  L = hyp_sum({1, 1 - bd - m, 1 - dd - m}, {ad + 1, c + 1}, b + d + 2 * m, cx, ic.id) *
      gr({}, {ad + 1, c + 1, bd + m, dd + m});
  CompensatedSum sr;
  sr.add(hyp_sum({1, 1 - bd, 1 - dd}, {ad + m + 1, c + m + 1}, b + d, cx, ic.id) *
         gr({}, {bd, dd, ad + m + 1, c + m + 1}));
  sr.add(-(hyp_sum({1, 1 - ad, c + dd + m}, {2 - ad - bd - m, dd + m + 1}, a + 1, cx, ic.id) *
               gr({}, {ad, c, bd + m, dd + m + 1}) +
           hyp_sum({1, 1 - bd, c + dd + m}, {2 - ad - bd - m, c + m + 1}, b + 1, cx, ic.id) *
               gr({}, {bd, dd, ad + m, c + m + 1})) /
         (ad + bd + m - 1));
  sr.add(gr({c + dd, ad + bd + 2 * m - 1},
            {c, dd, ad + m, bd + m, ad + bd + m, c + dd + m}) *
         (hyp_sum({1, c + dd, 1 - ad - m}, {dd + 1, 2 - ad - bd - 2 * m}, a + m, cx, ic.id) / dd +
          hyp_sum({1, c + dd, 1 - bd - m}, {c + 1, 2 - ad - bd - 2 * m}, b + m, cx, ic.id) / c));
  R = cx.take(sr);
}

// ---------------------------------------------------------------------
// First-type polygamma summation identities.
// ---------------------------------------------------------------------

void eval_B1(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a");
  need(a > 0, ic.id, "a must be positive");
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i) sl.add(d0(i + a));
  L = cx.take(sl);
  R = (m + a) * d0(m + a + 1) - a * d0(a + 1) - m;
}

void eval_B3(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a");
  need(a > 0, ic.id, "a must be positive");
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i) sl.add(i * d0(i + a));
  L = cx.take(sl);
  R = -(a - m - 1) * (a + m) * d0(a + m + 1) / 2 + (a - 1) * a * d0(a + 1) / 2 -
      m * (-2 * a + m + 3) / 4.0;
}

void eval_B31(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a");
  need(a > 0, ic.id, "a must be positive");
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i) sl.add(double(i) * i * d0(i + a));
  L = cx.take(sl);
  const double md = m;
  R = (2 * a * a * a - 3 * a * a + a + 2 * md * md * md + 3 * md * md + md) *
          d0(a + m + 1) / 6 -
      a * (2 * a * a - 3 * a + 1) * d0(a + 1) / 6 -
      md * (12 * a * a - 6 * a * md - 24 * a + 4 * md * md + 15 * md + 17) / 36.0;
}

void eval_B32(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a");
  need(a > 0, ic.id, "a must be positive");
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i) sl.add(double(i) * i * i * d0(i + a));
  L = cx.take(sl);
  const double md = m;
  R = -(a * a * a * a - 2 * a * a * a + a * a - md * md * md * md -
        2 * md * md * md - md * md) *
          d0(a + m + 1) / 4 +
      (a - 1) * (a - 1) * a * a * d0(a + 1) / 4 -
      md *
          (-12 * a * a * a + 6 * a * a * md + 30 * a * a - 4 * a * md * md -
           18 * a * md - 26 * a + 3 * md * md * md + 14 * md * md + 21 * md + 10) /
          48.0;
}

void eval_B2(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a");
  need(a > 0, ic.id, "a must be positive");
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i) sl.add(d1(i + a));
  L = cx.take(sl);
  R = (m + a) * d1(m + a + 1) - a * d1(a + 1) + d0(m + a + 1) - d0(a + 1);
}

void eval_B30(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a");
  need(a > 0, ic.id, "a must be positive");
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i) sl.add(d0(i + a) * d0(i + a));
  L = cx.take(sl);
  R = (a + m) * d0(a + m) * d0(a + m) - (2 * a + 2 * m - 1) * d0(a + m) -
      a * d0(a) * d0(a) + (2 * a - 1) * d0(a) + 2 * m;
}

void eval_B4(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a");
  need(a > 0, ic.id, "a must be positive");
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i) sl.add(d0(i + a) / (i + a));
  L = cx.take(sl);
  R = (d1(m + a + 1) - d1(a + 1) + d0(m + a + 1) * d0(m + a + 1) -
       d0(a + 1) * d0(a + 1)) / 2;
}

void eval_B5(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i) sl.add(d0(double(m + 1 - i)) / i);
  L = cx.take(sl);
  R = d0(m + 1.0) * d0(m + 1.0) - d0(1.0) * d0(m + 1.0) + d1(m + 1.0) - d1(1.0);
}

void eval_B6(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i) sl.add(d0(double(m + 1 + i)) / i);
  L = cx.take(sl);
  R = d0(m + 1.0) * d0(m + 1.0) - d0(1.0) * d0(m + 1.0) - d1(m + 1.0) / 2 +
      d1(1.0) / 2;
}

// Common semi-closed basis sum_{i=1}^{m-1} psi0(a+i)/(b+i) of the
// bilinear digamma identities.
double b7_basis(double a, double b, int m, EvalCtx& cx) {
  CompensatedSum s;
  for (int i = 1; i < m; ++i) s.add(digamma(a + i) / (b + i));
  return cx.take(s);
}

void eval_B7(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b");
  need(a > 0 && b > 0, ic.id, "a, b must be positive reals");
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i) sl.add(d0(i + a) * d0(i + b));
  L = cx.take(sl);
  R = (b - a) * b7_basis(a, b, m, cx) - a * d0(a + 1) * d0(b + 1) +
      (m + a) * d0(m + a) * d0(m + b) + a * d0(a + 1) -
      (m + a - 1) * d0(m + a) - (m + b) * d0(m + b) + (b + 1) * d0(b + 1) +
      2 * m - 2;
}

// i-weighted bilinear digamma sum. The basis-sum coefficient here is the
// repaired (a-b)(a+b-1)/2 — the recorded (b-a+1)(a-b)/2 leaves a residual
// proportional to (a-1)(a-b) * sum 1/(b+i) at every m.
void eval_B71(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b");
  need(a > 0 && b > 0, ic.id, "a, b must be positive reals");
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i) sl.add(i * d0(i + a) * d0(i + b));
  L = cx.take(sl);
  R = (a - b) * (a + b - 1) * b7_basis(a, b, m, cx) / 2 -
      a * (a + 2 * b - 3) * d0(a + 1) / 4 -
      (b + 1) * (2 * a + b - 2) * d0(b + 1) / 4 +
      (a - 1) * a * d0(a + 1) * d0(b + 1) / 2 +
      (a + m - 1) * (a + 2 * b - m - 2) * d0(a + m) / 4 +
      (b + m) * (2 * a + b - m - 1) * d0(b + m) / 4 -
      (a * a - a - double(m) * (m + 1)) * d0(a + m) * d0(b + m) / 2 -
      (m - 1) * (3 * a + 3 * b - m - 4) / 4.0;
}

// i^2-weighted bilinear digamma sum — documented-unresolved entry. The
// stipulated reading of its cubic coefficient still leaves an m-dependent
// defect in both single-digamma groups (vanishing only at a=1 or a=b),
// so the closed side below does not reproduce the sum; sweeps report it
// separately rather than as a failure.
void eval_B72(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b");
  need(a > 0 && b > 0, ic.id, "a, b must be positive reals");
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i) sl.add(double(i) * i * d0(i + a) * d0(i + b));
  L = cx.take(sl);
  const double md = m;
  CompensatedSum sr;
  sr.add((a - b) * (3 * a * a + 2 * a * b - 4 * a - 2 * b * b - b + 1) *
         b7_basis(a, b, m, cx) / 6);
  sr.add(-(-a * a * (5 * b + 2) + 3 * a * a * a + a * (5 * b - 1) -
           md * (2 * md * md + 3 * md + 1)) *
         d0(a + m) * d0(b + m) / 6);
  sr.add((a - 1) * a * (3 * a - 5 * b + 1) * d0(a + 1) * d0(b + 1) / 6);
  sr.add(-(-(2 * b - 1) * md * md / 12 +
           md * (24 * a * a - 24 * a * b - 24 * a + 12 * b * b + 12 * b - 1) / 36 +
           (a - 1) * (28 * a * a - 18 * a * b - 5 * a + 6 * b + 12 * b * b + 6) / 36 +
           (a - 1) * (a - b) / (3 * (b + m - 1)) + md * md * md / 9) *
         d0(a + m));
  sr.add(-(4 * md * md * md + 12 * a * a * b - 3 * (2 * a - 1) * md * md +
           (12 * a * a - 12 * a - 1) * md - 30 * a * a + 6 * a * b * b -
           12 * a * b + 30 * a + 4 * b * b * b - 3 * b * b - b) *
         d0(b + m) / 36);
  sr.add(a * (28 * a * a - 9 * a * (2 * b + 1) + 12 * b * b - 13) * d0(a + 1) / 36);
  sr.add((6 * a * a * (2 * b - 3) + 6 * a * (b * b - 2 * b + 2) + 4 * b * b * b -
          3 * b * b - b + 6) *
         d0(b + 1) / 36);
  sr.add(2 * md * md * md / 27 - 5 * md * md * (a + b - 1) / 36);
  sr.add((-40 * a * a + 12 * a * b + 51 * a - 16 * b * b + 3 * b - 16) / 36);
  sr.add(md * (120 * a * a - 36 * a * b - 138 * a + 48 * b * b + 6 * b + 25) / 108);
  sr.add((a - 1) / (3 * (b + m - 1)) - (a - 1) / (3 * (a + m - 1)));
  R = cx.take(sr);
}

void eval_B9(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a");
  need(a > m, ic.id, "a must exceed m");
  CompensatedSum sl, sr;
  for (int i = 1; i <= m; ++i) {
    sl.add(d0(a + 1 - i) / i);
    sr.add(-d0(i + a - m) / i);
  }
  L = cx.take(sl);
  R = cx.take(sr) + (d1(a + 1) - d1(a - m)) / 2 +
      (d0(a - m) + d0(a + 1)) * (d0(m + 1.0) - d0(1.0)) +
      (d0(a - m) - d0(a + 1)) * (d0(a - m) - d0(a + 1)) / 2;
}

void eval_B12c1(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b");
  need(a > 0 && b > 0, ic.id, "a, b must be positive reals");
  need(a != b, ic.id, "a and b must be distinct (closed form has a 1/(a-b) pole)");
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i)
    sl.add(d0(i + b) / (i + a) + d0(i + a) / (i + b));
  L = cx.take(sl);
  R = d0(m + a + 1) * d0(m + b + 1) - d0(a + 1) * d0(b + 1) +
      (d0(m + a + 1) - d0(m + b + 1) - d0(a + 1) + d0(b + 1)) / (a - b);
}

void eval_B11ic(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const int a = geti(ic, "a");
  const double b = getp(ic, "b");
  need(a >= 1, ic.id, "a must be a positive integer");
  need(b > 0, ic.id, "b must be positive");
  CompensatedSum sl, sr;
  for (int i = 1; i <= m; ++i) {
    sl.add(d0(a + b + i) / i);
    sr.add(d0(b + i) / i);
  }
  for (int i = 1; i <= a; ++i) sr.add(-d0(b + i + m) / (b + i - 1));
  L = cx.take(sl);
  R = cx.take(sr) +
      ((d0(a + b) - d0(b)) * (d0(a + b) + d0(b) + 2 * (d0(m + 1.0) - d0(1.0))) -
       d1(a + b) + d1(b)) / 2;
}

void eval_B12c2(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b");
  need(a > 0 && b > 0, ic.id, "a, b must be positive reals");
  need(a != b, ic.id, "a and b must be distinct (closed form has a 1/(b-a) pole)");
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i)
    sl.add(d0(a + b + i + m) / (b + i) + d0(a + i) / (b + i) +
           d0(a + b + 2.0 * i) / (a + i) - d0(a + b + i) / (a + i) -
           d0(a + b + 2.0 * i) / (b + i));
  L = cx.take(sl);
  R = d0(a / 2 + b / 2 + m) / (b - a) -
      (a + b + m) * d0(a + b + m) / (b * (a + m)) + d0(a + b + 2 * m) / (a + m) +
      d0(a + m) * (d0(b + m + 1) - d0(b) - 1.0 / (b - a)) +
      a * d0(a) / (b * (b - a)) + d0(a + b) / b - d0(a / 2 + b / 2) / (b - a);
}

void eval_B12c3(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b");
  need(a > 0 && b > 0, ic.id, "a, b must be positive reals");
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i)
    sl.add(d0(a + b + i + m) / (a + i) + d0(a + b + i + m) / (b + i) -
           d0(a + b + i) / (a + i) - d0(a + b + i) / (b + i));
  L = cx.take(sl);
  R = (a + b + 2 * m) * d0(a + b + 2 * m) / ((a + m) * (b + m)) -
      (1.0 / (a + m) + 1.0 / a + 1.0 / (b + m) + 1.0 / b) * d0(a + b + m) +
      (1.0 / a + 1.0 / b) * d0(a + b) +
      (d0(a + m) - d0(a)) * (d0(b + m) - d0(b));
}

// ---------------------------------------------------------------------
// Second-type sums: factorial-ratio kernels with harmonic weights.
// ---------------------------------------------------------------------

void eval_B21(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const int n = geti(ic, "n");
  need(n >= m, ic.id, "n must be an integer >= m");
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i)
    sl.add(gamma_ratio_shift(double(m - i + 1), n - m) / i);
  L = cx.take(sl);
  R = gamma_ratio_shift(double(m + 1), n - m) * (d0(n + 1.0) - d0(n - m + 1.0));
}

void eval_B22(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const int n = geti(ic, "n");
  need(n >= m + 1, ic.id, "n must be an integer >= m + 1");
  CompensatedSum sl, si;
  for (int i = 1; i <= m; ++i) {
    sl.add(gamma_ratio_shift(double(m - i + 1), n - m) / (double(i) * i));
    si.add(d0(double(i + n - m)) / i);
  }
  L = cx.take(sl);
  const double nm = n - m;
  R = gamma_ratio_shift(double(m + 1), n - m) *
      (cx.take(si) +
       (d1(nm + 1) - d1(n + 1.0) + d0(nm + 1) * d0(nm + 1) -
        d0(n + 1.0) * d0(n + 1.0)) / 2 +
       d0(nm) * (-d0(nm + 1) + d0(n + 1.0) - d0(m + 1.0) + d0(1.0)));
}

void eval_B201(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const int n = geti(ic, "n");
  const double a = getp(ic, "a");
  need(n >= m, ic.id, "n must be an integer >= m");
  need(a > 0, ic.id, "a must be positive");
  need(a != double(n - m + 1), ic.id,
       "a must differ from n - m + 1 (closed form divides by n - m - a + 1)");
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i)
    sl.add(gr({double(n - i + 1)}, {m + a - i + 1}));
  L = cx.take(sl);
  CompensatedSum sr;
  sr.add(gr({double(n + 1)}, {a + m}));
  sr.add(-gr({double(n - m + 1)}, {a}));
  R = cx.take(sr) / (n - m - a + 1);
}

void eval_B202(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const int n = geti(ic, "n");
  const double a = getp(ic, "a");
  need(n >= m, ic.id, "n must be an integer >= m");
  need(a > 0, ic.id, "a must be positive");
  need(a != double(n - m + 1), ic.id,
       "a must differ from n - m + 1 (closed form divides by 1 - a - m + n)");
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i)
    sl.add(gr({double(n - i + 1)}, {m + a - i + 1}) * d0(m + a - i + 1));
  L = cx.take(sl);
  const double q = 1 - a - m + n;
  CompensatedSum sr;
  sr.add(gr({double(n + 1)}, {a + m}) * (d0(a + m) - 1.0 / q));
  sr.add(-gr({double(n - m + 1)}, {a}) * (d0(a) - 1.0 / q));
  R = cx.take(sr) / q;
}

// ---------------------------------------------------------------------
// Kernel-weighted summation identities. The common left-side weight is
// 1/(Γ(i)Γ(a+i)Γ(m-i+1)Γ(b-i+m+1)).
// ---------------------------------------------------------------------

double kernel_weight(double a, double b, int m, int i) {
  return gr({}, {double(i), a + i, double(m - i + 1), b - i + m + 1});
}

void eval_Bn0(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b");
  need(a > 0 && b > 0, ic.id, "a, b must be positive reals");
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i)
    sl.add((d0(a + i) * d0(a + i) - d1(a + i)) * kernel_weight(a, b, m, i));
  L = cx.take(sl);
  const double br = d0(a + b + m) - d0(a + b + 2 * m - 1) + d0(a + m);
  R = gr({a + b + 2 * m - 1}, {double(m), a + m, b + m, a + b + m}) *
      (d1(a + b + 2 * m - 1) - d1(a + b + m) - d1(a + m) + br * br);
}

void eval_Bn1(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b");
  need(a > 0 && b > 0, ic.id, "a, b must be positive reals");
  CompensatedSum sl, sr;
  for (int i = 1; i <= m; ++i) sl.add(d0(double(i)) * kernel_weight(a, b, m, i));
  for (int i = 1; i < m; ++i)
    sr.add(-gr({a + b - i + 2 * m - 1}, {a - i + m, double(m), b + m, a + b + m}) / i);
  L = cx.take(sl);
  R = cx.take(sr) +
      d0(double(m)) * gr({a + b + 2 * m - 1}, {double(m), a + m, b + m, a + b + m});
}

void eval_Bn2(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b");
  need(a > 0 && b > 0, ic.id, "a, b must be positive reals");
  CompensatedSum sl, sr;
  for (int i = 1; i <= m; ++i)
    sl.add(d0(double(i)) * d0(b - i + m + 1) * kernel_weight(a, b, m, i));
  for (int i = 1; i < m; ++i)
    sr.add(gr({a + b - i + 2 * m - 1}, {a - i + m, double(m), b + m, a + b + m}) *
           (-d0(a + b + m) + d0(a + b - i + 2 * m - 1) - d0(b + m)) / i);
  L = cx.take(sl);
  R = cx.take(sr) +
      gr({a + b + 2 * m - 1}, {double(m), a + m, b + m, a + b + m}) * d0(double(m)) *
          (d0(a + b + m) - d0(a + b + 2 * m - 1) + d0(b + m));
}

void eval_Bn3(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b");
  need(a > 0 && b > 0, ic.id, "a, b must be positive reals");
  CompensatedSum sl, sr;
  for (int i = 1; i <= m; ++i)
    sl.add(d0(double(i)) * d0(a + i) * kernel_weight(a, b, m, i));
  for (int i = 1; i < m; ++i)
    sr.add(gr({a + b - i + 2 * m - 1}, {a - i + m, double(m), b + m, a + b + m}) *
           (-d0(a + b + m) + d0(a + b - i + 2 * m - 1) - d0(a - i + m)) / i);
  L = cx.take(sl);
  R = cx.take(sr) +
      d0(double(m)) * gr({a + b + 2 * m - 1}, {double(m), b + m, a + b + m, a + m}) *
          (d0(a + b + m) - d0(a + b + 2 * m - 1) + d0(a + m));
}

void eval_Bn4(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b");
  need(a > 0 && b > 0, ic.id, "a, b must be positive reals");
  CompensatedSum sl, sr;
  for (int i = 1; i <= m; ++i)
    sl.add((d0(double(i)) * d0(double(i)) - d1(double(i))) * kernel_weight(a, b, m, i));
  for (int i = 1; i < m; ++i)
    sr.add(2 * gr({a + b - i + 2 * m - 1}, {a - i + m, double(m), b + m, a + b + m}) *
           (d0(double(i)) - d0(double(m)) - d0(1.0)) / i);
  L = cx.take(sl);
  R = cx.take(sr) +
      gr({a + b + 2 * m - 1}, {double(m), a + m, b + m, a + b + m}) *
          (d0(double(m)) * d0(double(m)) - d1(double(m)));
}

void eval_Bn5(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b");
  need(a > 0 && b > 0, ic.id, "a, b must be positive reals");
  CompensatedSum sl, sr;
  for (int i = 1; i <= m; ++i)
    sl.add(d0(double(i)) * d0(double(m - i + 1)) * kernel_weight(a, b, m, i));
  const double pm = d0(double(m));
  for (int i = 1; i < m; ++i) {
    const double gb = gr({a + b - i + 2 * m - 1}, {b - i + m, a + m, double(m), a + b + m});
    const double ga = gr({a + b - i + 2 * m - 1}, {a - i + m, b + m, double(m), a + b + m});
    sr.add(-gb / (double(i) * i));
    sr.add(-ga / (double(i) * i));
    sr.add(-pm * gb / i);
    sr.add(-pm * ga / i);
  }
  L = cx.take(sl);
  R = cx.take(sr) +
      gr({a + b + 2 * m - 1}, {double(m), a + m, b + m, a + b + m}) *
          (pm * pm - d1(double(m)) + d1(1.0));
}

// Digamma-weighted gamma-kernel sum over i of
// Γ(c-i+m)Γ(a+b+i+m)/(Γ(i)Γ(m-i+1)) — the closed side is written in the
// shifted parameter a+b+m throughout.
void eval_Bn6(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b"), c = getp(ic, "c");
  need(a > 0 && b > 0 && c > 0, ic.id, "a, b, c must be positive reals");
  const double A = a + b;
  const double bt = A + m;
  CompensatedSum sl, sb;
  for (int i = 1; i <= m; ++i)
    sl.add(gr({c - i + m, A + i + m}, {double(i), double(m - i + 1)}) * d0(double(i)));
  for (int i = 1; i < m; ++i)
    sb.add(gr({bt + c - i + m}, {c - i + m}) / i);
  L = cx.take(sl);
  const double pre1 = gr({bt + 1, c, c + m}, {double(m), bt + c + 1});
  const double pre2 = gr({bt + 1, c, bt + c + m}, {double(m), bt + c + 1});
  R = -pre1 * cx.take(sb) + pre2 * (d0(bt + c + m) - d0(bt + c + 1) + d0(double(m)));
}

// Second-derivative companion of the previous identity: weight
// psi0(i)^2 - psi1(i), same Γ(i)-kernel and the same shifted parameter
// on the closed side.
void eval_Bn7(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b"), c = getp(ic, "c");
  need(a > 0 && b > 0 && c > 0, ic.id, "a, b, c must be positive reals");
  const double A = a + b;
  const double bt = A + m;
  CompensatedSum sl, sb, sb_top, sb_i;
  for (int i = 1; i <= m; ++i)
    sl.add(gr({c - i + m, A + i + m}, {double(i), double(m - i + 1)}) *
           (d0(double(i)) * d0(double(i)) - d1(double(i))));
  for (int i = 1; i < m; ++i) {
    const double g = gr({bt + c - i + m}, {c - i + m}) / i;
    sb.add(g);
    sb_top.add(g * d0(bt + c - i + m));
    sb_i.add(g * d0(double(i)));
  }
  L = cx.take(sl);
  const double pre1 = gr({bt + 1, c, c + m}, {double(m), bt + c + 1});
  const double pre2 = gr({bt + 1, c, bt + c + m}, {double(m), bt + c + 1});
  const double br = d0(bt + c + m) - d0(bt + c + 1) + d0(double(m));
  R = 2 * pre1 *
          (-cx.take(sb_top) + cx.take(sb_i) -
           (-d0(bt + c + 1) + d0(double(m)) + d0(1.0)) * cx.take(sb)) +
      pre2 * (d1(bt + c + m) - d1(bt + c + 1) - d1(double(m)) + br * br);
}

void eval_Bn8(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a"), b = getp(ic, "b"), c = getp(ic, "c");
  need(a > 0 && b > 0 && c > 0, ic.id, "a, b, c must be positive reals");
  CompensatedSum sl, sr;
  for (int i = 1; i <= m; ++i) {
    sl.add(gr({c - i + m, a + b + i + m}, {a + i, double(m - i + 1)}) *
           d0(a + b + i + m) / i);
    sr.add(gr({c + m, a + b + m, b + m + 1, c},
              {a + i, c + i, double(m - i + 1), b - i + m + 1}) *
           (d0(a + b + m) - d0(b - i + m + 1) + d0(b + m + 1)) / i);
  }
  L = cx.take(sl);
  R = gr({c + m, a + b + m}, {a, double(m + 1)}) * d0(a + b + m) *
          (d0(c + m) - d0(c)) +
      cx.take(sr);
}

// ---------------------------------------------------------------------
// Half-integer / remainder-sum derivative variants.
// ---------------------------------------------------------------------

void eval_s_4r(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic, 2);
  const int k = geti(ic, "k");
  const double a = getp(ic, "a");
  need(k >= 1 && k <= m - 1, ic.id, "k must be an integer in [1, m-1]");
  need(a > 0, ic.id, "a must be positive");
  CompensatedSum sl;
  for (int j = 1; j <= m - k; ++j)
    sl.add(gr({2 * m + 2 * a - 2 * j - 2 * k + 1}, {double(2 * m - 2 * j - 2 * k + 1)}) *
           (1.0 / (1 + a - j - 2 * k + 2 * m) - 1.0 / (j + 0.5)));
  L = cx.take(sl);
  R = gr({2 * a - 2 * k + 2 * m + 2}, {double(2 * m - 2 * k + 2)}) *
      (d0(a + 1) - d0(a - 2 * k + 2 * m + 1) -
       2 * (2 * a + 1) / (2 * a - 2 * k + 2 * m + 1) + 2);
}

void eval_s_5r(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic, 2);
  const int k = geti(ic, "k");
  const double a = getp(ic, "a");
  need(k >= 1 && k <= m - 1, ic.id, "k must be an integer in [1, m-1]");
  need(a > 0, ic.id, "a must be positive");
  need(a != 0.5, ic.id, "a must differ from 1/2 (closed form divides by 3-2a-2j at j=1)");
  CompensatedSum sl, st;
  for (int j = 1; j <= m - k; ++j) {
    const double pa = 1 + a - j - 2 * k + 2 * m;
    const double ph = j + 0.5;
    sl.add(gr({2 * m + 2 * a - 2 * j - 2 * k + 1}, {double(2 * m - 2 * j - 2 * k + 1)}) *
           (1.0 / (pa * pa) - 1.0 / (ph * ph)));
    const double ratpart = -(4 * a * a - 1) / (a + j - 1) -
                           (1 - 4 * a * a) / (a + j) -
                           (4 * a * a - 6 * a + 2) / (-2.0 * a - 2 * j + 3) -
                           2 * a * (2 * a + 1) / (2 * a + 2 * j + 1) +
                           1.0 / (a + 2 * j) -
                           (2 - 8 * a) / (2 * a + 2 * j - 1) -
                           1.0 / (-a - 2 * j + 1);
    const double psipart = d0(j + 0.5) - d0(a + j + 0.5) + d0(a - k + m + 1) +
                           d0(a - k + m + 1.5) + d0(double(j)) - d0(a + j) -
                           d0(double(m - k + 1)) - d0(m - k + 1.5);
    const double aj = a + j, a2j = a + 2.0 * j;
    const double extra =
        aj / (j * a2j * a2j) +
        (a * (2 * a - 1) * (2 * j - 1) / (j * aj * aj) -
         2 * a * (2 * a + 1) / ((a + j + 0.5) * (a + j + 0.5)) +
         (2 * j - 1) / ((a + 2 * j - 1) * (a + 2 * j - 1))) /
            (2 * a + 2 * j - 1);
    st.add(ratpart * psipart + extra);
  }
  L = cx.take(sl);
  R = gr({2 * m + 2 * a - 2 * k + 2}, {double(2 * m - 2 * k + 2)}) * cx.take(st);
}

// Remainder-sum second-derivative variant: the closed side carries a
// four-digamma bracket per term plus three rational corrections.
void eval_s6r(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic, 2);
  const int k = geti(ic, "k");
  const double a = getp(ic, "a"), b = getp(ic, "b");
  need(k >= 1 && k <= m - 1, ic.id, "k must be an integer in [1, m-1]");
  need(a > 0 && b > 0, ic.id, "a, b must be positive reals");
  CompensatedSum sl, st;
  for (int j = 1; j <= m - k - 1; ++j) {
    const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
    const double p = a + b - j - 2 * k + 2 * m - 1;
    sl.add(sgn * gr({a + b - j - k + m}, {double(m - k - j)}) *
           (1.0 / (p * p) - 1.0 / (double(j) * j)));
    const double u = double(m - k - j);
    const double v = a + b - j - k + m;
    const double rj = 1.0 / v - 1.0 / (u + v) - 1.0 / (u + v - 1);
    const double br = d0(a + b - k + m) - d0(double(m - k)) + d0(double(m - k - j)) - d0(v);
    st.add(rj * br + 1.0 / ((u + v - 1) * (u + v - 1)) + (a + b) / (u * v * v) -
           v / (u * (u + v) * (u + v)));
  }
  L = cx.take(sl);
  R = gr({a + b - k + m}, {double(m - k)}) * cx.take(st);
}

// Special case of the alternating re-summation lemma at c = 0: the
// closed side collapses to a digamma difference.
void eval_lemma5c0(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  const int m = get_m(ic);
  const double a = getp(ic, "a");
  need(a >= 0, ic.id, "a must be >= 0");
  CompensatedSum sl;
  for (int i = 1; i <= m; ++i) {
    const double sgn = (i % 2 == 0) ? 1.0 : -1.0;
    sl.add(sgn * gr({a - i + m + 1}, {double(m - i + 1)}) *
           (1.0 / (a - i + 2 * m + 1) - 1.0 / i));
  }
  L = cx.take(sl);
  R = gr({a + m + 1}, {double(m + 1)}) * (d0(a + 2 * m + 1) - d0(a + m + 1));
}

// ---------------------------------------------------------------------
// Dispatch, generation, sweeps, reporting.
// ---------------------------------------------------------------------

void evaluate(const IdentityCase& ic, EvalCtx& cx, double& L, double& R) {
  switch (ic.id) {
    case IdentityId::lemma1:   eval_lemma1(ic, cx, L, R); return;
    case IdentityId::lemma2:   eval_lemma2(ic, cx, L, R); return;
    case IdentityId::lemma3:   eval_lemma3(ic, cx, L, R); return;
    case IdentityId::lemma4:   eval_lemma4(ic, cx, L, R); return;
    case IdentityId::lemma5:   eval_lemma5(ic, cx, L, R); return;
    case IdentityId::lemma6:   eval_lemma6(ic, cx, L, R); return;
    case IdentityId::lemma6I:  eval_lemma6I(ic, cx, L, R); return;
    case IdentityId::dumys:    eval_dumys(ic, cx, L, R); return;
    case IdentityId::gauss2f1: eval_gauss2f1(ic, cx, L, R); return;
    case IdentityId::tf1:      eval_tf1(ic, cx, L, R); return;
    case IdentityId::tf2:      eval_tf2(ic, cx, L, R); return;
    case IdentityId::tf3:      eval_tf3(ic, cx, L, R); return;
    case IdentityId::tf4:      eval_tf4(ic, cx, L, R); return;
    case IdentityId::B1:       eval_B1(ic, cx, L, R); return;
    case IdentityId::B3:       eval_B3(ic, cx, L, R); return;
    case IdentityId::B31:      eval_B31(ic, cx, L, R); return;
    case IdentityId::B32:      eval_B32(ic, cx, L, R); return;
    case IdentityId::B2:       eval_B2(ic, cx, L, R); return;
    case IdentityId::B30:      eval_B30(ic, cx, L, R); return;
    case IdentityId::B4:       eval_B4(ic, cx, L, R); return;
    case IdentityId::B5:       eval_B5(ic, cx, L, R); return;
    case IdentityId::B6:       eval_B6(ic, cx, L, R); return;
    case IdentityId::B7:       eval_B7(ic, cx, L, R); return;
    case IdentityId::B71:      eval_B71(ic, cx, L, R); return;
    case IdentityId::B72:      eval_B72(ic, cx, L, R); return;
    case IdentityId::B9:       eval_B9(ic, cx, L, R); return;
    case IdentityId::B12c1:    eval_B12c1(ic, cx, L, R); return;
    case IdentityId::B11ic:    eval_B11ic(ic, cx, L, R); return;
    case IdentityId::B12c2:    eval_B12c2(ic, cx, L, R); return;
    case IdentityId::B12c3:    eval_B12c3(ic, cx, L, R); return;
    case IdentityId::B20:      eval_chu(ic, cx, L, R); return;
    case IdentityId::B21:      eval_B21(ic, cx, L, R); return;
    case IdentityId::B22:      eval_B22(ic, cx, L, R); return;
    case IdentityId::B201:     eval_B201(ic, cx, L, R); return;
    case IdentityId::B202:     eval_B202(ic, cx, L, R); return;
    case IdentityId::Bn0:      eval_Bn0(ic, cx, L, R); return;
    case IdentityId::Bn1:      eval_Bn1(ic, cx, L, R); return;
    case IdentityId::Bn2:      eval_Bn2(ic, cx, L, R); return;
    case IdentityId::Bn3:      eval_Bn3(ic, cx, L, R); return;
    case IdentityId::Bn4:      eval_Bn4(ic, cx, L, R); return;
    case IdentityId::Bn5:      eval_Bn5(ic, cx, L, R); return;
    case IdentityId::Bn6:      eval_Bn6(ic, cx, L, R); return;
    case IdentityId::Bn7:      eval_Bn7(ic, cx, L, R); return;
    case IdentityId::Bn8:      eval_Bn8(ic, cx, L, R); return;
    case IdentityId::chu_vandermonde: eval_chu(ic, cx, L, R); return;
    case IdentityId::s_4r:     eval_s_4r(ic, cx, L, R); return;
    case IdentityId::s_5r:     eval_s_5r(ic, cx, L, R); return;
    case IdentityId::s6r:      eval_s6r(ic, cx, L, R); return;
    case IdentityId::lemma5c0: eval_lemma5c0(ic, cx, L, R); return;
  }
  throw std::invalid_argument("unknown identity id");
}

// Deterministic parameter source: every draw is a fixed function of the
// mt19937_64 stream (no library distributions, whose outputs are
// implementation-defined).
class ParamRng {
 public:
  explicit ParamRng(std::uint64_t s) : eng_(s) {}

  double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Rational in (lo, hi) with denominator in {2,3,4,5,7}.
  double frac(int lo, int hi) {
    static constexpr int dens[5] = {2, 3, 4, 5, 7};
    const int den = dens[eng_() % 5];
    const int num = uniform_int(lo * den + 1, hi * den - 1);
    return static_cast<double>(num) / den;
  }

  // Rational in (lo, hi) whose reduced denominator is 3, 5, or 7 — never
  // an integer or half-integer.
  double noninteger(int lo, int hi) {
    static constexpr int dens[3] = {3, 5, 7};
    for (;;) {
      const int den = dens[eng_() % 3];
      const int num = uniform_int(lo * den + 1, hi * den - 1);
      if (num % den != 0) return static_cast<double>(num) / den;
    }
  }

  std::pair<double, double> separated_pair(int lo, int hi) {
    for (;;) {
      const double x = frac(lo, hi), y = frac(lo, hi);
      if (std::abs(x - y) >= 0.15) return {x, y};
    }
  }

  // 70% rational, 30% half-integer in {1/2, ..., 9/2} — the mix the
  // half-integer family is applied with.
  double half_or_frac(int lo, int hi) {
    const bool take_frac = u01() < 0.7;
    return take_frac ? frac(lo, hi) : uniform_int(1, 9) / 2.0;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace

std::span<const IdentityId> all_identities() {
  return {kAllIds.data(), kAllIds.size()};
}

const char* identity_name(IdentityId id) {
  const int i = static_cast<int>(id);
  if (i < 0 || i >= identity_count)
    throw std::invalid_argument("unknown identity id");
  return kNames[static_cast<std::size_t>(i)];
}

std::optional<IdentityId> identity_from_name(std::string_view name) {
  for (int i = 0; i < identity_count; ++i)
    if (name == kNames[static_cast<std::size_t>(i)]) return static_cast<IdentityId>(i);
  return std::nullopt;
}

bool identity_unresolved(IdentityId id) { return id == IdentityId::B72; }

double check_identity(IdentityCase& c) {
  EvalCtx cx;
  double L = 0.0, R = 0.0;
  evaluate(c, cx, L, R);
  c.lhs = L;
  c.rhs = R;
  if (!std::isfinite(L) || !std::isfinite(R)) {
    c.residual = std::numeric_limits<double>::infinity();
    c.condition = std::numeric_limits<double>::infinity();
    c.reliable = false;
    return c.residual;
  }
  c.residual = std::abs(L - R) / std::max({1.0, std::abs(L), std::abs(R)});
  c.condition = cx.cond;
  c.reliable = cx.cond < summation_condition_threshold;
  return c.residual;
}

IdentityCase generate_case(IdentityId id, std::uint64_t seed, int index) {
  std::uint64_t s0 = seed;
  std::uint64_t h = splitmix64(s0);
  std::uint64_t s1 = h ^ (static_cast<std::uint64_t>(static_cast<int>(id)) * 0x100000001b3ull) ^
                     (static_cast<std::uint64_t>(static_cast<std::uint32_t>(index)) *
                      0x9e3779b97f4a7c15ull);
  ParamRng rng(splitmix64(s1));

  IdentityCase ic;
  ic.id = id;
  auto& P = ic.params;
  const auto draw_m = [&](int lo, int hi) {
    const int m = rng.uniform_int(lo, hi);
    P["m"] = m;
    return m;
  };

  switch (id) {
    case IdentityId::lemma1:
      draw_m(1, 15);
      P["a"] = rng.frac(0, 6);
      P["b"] = rng.frac(0, 6);
      P["c"] = rng.frac(0, 6);
      break;
    case IdentityId::lemma2:
    case IdentityId::lemma3:
      draw_m(1, 15);
      P["a"] = rng.frac(0, 6);
      P["b"] = rng.frac(0, 6);
      P["c"] = rng.uniform_int(1, 6);
      break;
    case IdentityId::lemma4:
      draw_m(1, 15);
      P["a"] = rng.frac(0, 6);
      P["b"] = rng.frac(0, 6);
      P["c"] = rng.uniform_int(1, 5);
      P["d"] = rng.uniform_int(1, 5);
      break;
    case IdentityId::lemma5:
      // Documented tolerance domain for the alternating sum is m <= 12.
      draw_m(1, 12);
      P["a"] = rng.half_or_frac(0, 6);
      P["c"] = rng.frac(0, 6);
      break;
    case IdentityId::lemma6: {
      draw_m(1, 15);
      const double a = (rng.u01() < 0.75) ? rng.frac(0, 6) : -0.5;
      double b = rng.frac(0, 6);
      while (a + b == 0.0) b = rng.frac(0, 6);
      P["a"] = a;
      P["b"] = b;
      P["c"] = rng.frac(0, 6);
      break;
    }
    case IdentityId::lemma6I:
      draw_m(1, 15);
      P["a"] = rng.frac(0, 6);
      P["b"] = rng.frac(0, 6);
      P["c"] = rng.frac(0, 6);
      P["d"] = rng.frac(0, 6);
      break;
    case IdentityId::dumys:
      P["c"] = rng.uniform_int(1, 8);
      P["x"] = rng.frac(0, 6);
      break;
    case IdentityId::gauss2f1: {
      P["N"] = rng.uniform_int(1, 10);
      const double b = rng.frac(0, 5);
      P["b"] = b;
      P["c"] = b + rng.frac(0, 5);
      break;
    }
    case IdentityId::tf1:
    case IdentityId::tf2:
    case IdentityId::tf3:
      draw_m(1, 15);
      P["a"] = rng.noninteger(0, 6);
      P["b"] = rng.noninteger(0, 6);
      P["c"] = rng.noninteger(0, 6);
      break;
    case IdentityId::tf4:
      draw_m(1, 15);
      P["a"] = rng.uniform_int(1, 5);
      P["b"] = rng.uniform_int(1, 5);
      P["d"] = rng.uniform_int(1, 5);
      P["c"] = rng.noninteger(0, 6);
      break;
    case IdentityId::B1:
    case IdentityId::B3:
    case IdentityId::B31:
    case IdentityId::B32:
    case IdentityId::B2:
    case IdentityId::B30:
    case IdentityId::B4:
      draw_m(1, 15);
      P["a"] = rng.frac(0, 8);
      break;
    case IdentityId::B5:
    case IdentityId::B6:
      draw_m(1, 15);
      break;
    case IdentityId::B7:
    case IdentityId::B71:
    case IdentityId::B72:
    case IdentityId::B12c1:
    case IdentityId::B12c2: {
      draw_m(1, 15);
      const auto [a, b] = rng.separated_pair(0, 8);
      P["a"] = a;
      P["b"] = b;
      break;
    }
    case IdentityId::B9: {
      const int m = draw_m(1, 15);
      P["a"] = m + rng.frac(0, 5);
      break;
    }
    case IdentityId::B11ic:
      draw_m(1, 15);
      P["a"] = rng.uniform_int(1, 6);
      P["b"] = 1 + rng.frac(0, 5);
      break;
    case IdentityId::B12c3:
      draw_m(1, 15);
      P["a"] = rng.frac(0, 8);
      P["b"] = rng.frac(0, 8);
      break;
    case IdentityId::B20:
    case IdentityId::B21:
    case IdentityId::chu_vandermonde: {
      const int m = draw_m(1, 15);
      P["n"] = m + rng.uniform_int(0, 6);
      break;
    }
    case IdentityId::B22: {
      const int m = draw_m(1, 15);
      P["n"] = m + rng.uniform_int(1, 6);
      break;
    }
    case IdentityId::B201:
    case IdentityId::B202: {
      const int m = draw_m(1, 15);
      P["n"] = m + rng.uniform_int(0, 6);
      P["a"] = 1 + rng.noninteger(0, 5);
      break;
    }
    case IdentityId::Bn0:
    case IdentityId::Bn1:
    case IdentityId::Bn2:
    case IdentityId::Bn3:
    case IdentityId::Bn4:
    case IdentityId::Bn5:
      draw_m(1, 15);
      P["a"] = rng.frac(0, 6);
      P["b"] = rng.frac(0, 6);
      break;
    case IdentityId::Bn6:
    case IdentityId::Bn7:
    case IdentityId::Bn8:
      draw_m(1, 15);
      P["a"] = rng.frac(0, 6);
      P["b"] = rng.frac(0, 6);
      P["c"] = rng.frac(0, 6);
      break;
    case IdentityId::s_4r: {
      const int m = draw_m(2, 15);
      P["k"] = rng.uniform_int(1, m - 1);
      P["a"] = rng.half_or_frac(0, 6);
      break;
    }
    case IdentityId::s_5r: {
      const int m = draw_m(2, 15);
      P["k"] = rng.uniform_int(1, m - 1);
      double a = rng.frac(0, 6);
      while (a == 0.5) a = rng.frac(0, 6);
      P["a"] = a;
      break;
    }
    case IdentityId::s6r: {
      const int m = draw_m(3, 15);
      P["k"] = rng.uniform_int(1, m - 2);
      P["a"] = rng.frac(0, 5);
      P["b"] = rng.frac(0, 5);
      break;
    }
    case IdentityId::lemma5c0:
      draw_m(1, 15);
      P["a"] = rng.frac(0, 6);
      break;
  }
  return ic;
}

SweepReport sweep(std::span<const IdentityId> ids, int n_cases, std::uint64_t seed,
                  double tolerance, int n_threads) {
  if (n_cases < 1) throw std::invalid_argument("sweep: n_cases must be >= 1");
  SweepReport rep;
  rep.tolerance = tolerance;
  const std::size_t total = ids.size() * static_cast<std::size_t>(n_cases);
  rep.cases.resize(total);

  // Cases are independent and index-seeded, so any thread partition
  // produces the same report; workers write disjoint preassigned slots
  // and the merge is a plain index-ordered reduction.
  int workers = n_threads;
  if (workers <= 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    workers = static_cast<int>(std::min(4u, hc == 0 ? 1u : hc));
  }
  workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(workers), std::max<std::size_t>(total, 1)));

  const auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const std::size_t which = idx / static_cast<std::size_t>(n_cases);
      const int case_index = static_cast<int>(idx % static_cast<std::size_t>(n_cases));
      IdentityCase ic = generate_case(ids[which], seed, case_index);
      check_identity(ic);
      rep.cases[idx] = std::move(ic);
    }
  };

  if (workers <= 1) {
    run_range(0, total);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::size_t chunk = (total + static_cast<std::size_t>(workers) - 1) /
                              static_cast<std::size_t>(workers);
    for (int w = 0; w < workers; ++w) {
      const std::size_t begin = static_cast<std::size_t>(w) * chunk;
      const std::size_t end = std::min(total, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  rep.lines.reserve(ids.size());
  for (std::size_t which = 0; which < ids.size(); ++which) {
    IdentitySweepLine line;
    line.id = ids[which];
    line.n_cases = n_cases;
    line.unresolved = identity_unresolved(ids[which]);
    for (int j = 0; j < n_cases; ++j) {
      const IdentityCase& ic =
          rep.cases[which * static_cast<std::size_t>(n_cases) + static_cast<std::size_t>(j)];
      line.max_residual = std::max(line.max_residual, ic.residual);
      line.worst_condition = std::max(line.worst_condition, ic.condition);
      if (!(ic.residual <= tolerance)) ++line.n_failures;
    }
    if (line.unresolved)
      rep.unresolved_failures += line.n_failures;
    else
      rep.total_failures += line.n_failures;
    rep.lines.push_back(line);
  }
  return rep;
}

namespace {

std::string num_json(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_json_line(const IdentityCase& c) {
  std::string out = "{\"id\":\"";
  out += identity_name(c.id);
  out += "\",\"params\":{";
  bool first = true;
  for (const auto& [key, value] : c.params) {
    if (!first) out += ',';
    first = false;
    out += '"';
    out += key;
    out += "\":";
    out += num_json(value);
  }
  out += "},\"lhs\":";
  out += num_json(c.lhs);
  out += ",\"rhs\":";
  out += num_json(c.rhs);
  out += ",\"residual\":";
  out += num_json(c.residual);
  out += ",\"condition\":";
  out += num_json(c.condition);
  out += '}';
  return out;
}

}  // namespace fgent
