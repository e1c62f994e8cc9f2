// SPDX-License-Identifier: Apache-2.0

#include "fgent/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "fgent/accum.hpp"

namespace fgent {

KernelContext make_kernel_context(const EnsembleSpec& spec) {
  spec.validate();
  KernelContext ctx;
  ctx.spec = spec;
  ctx.basis = make_basis(spec);
  if (spec.kind == EnsembleCase::B) {
    const double a = static_cast<double>(spec.a());
    const double b = static_cast<double>(spec.b());
    const double m = static_cast<double>(spec.m);
    const double h_last = ctx.basis.norms.back();
    const double denom = h_last * (a + b + 2.0 * m - 1.0) * (a + b + 2.0 * m);
    ctx.alpha1 = m * (a + b + m) * (a + b + m + 1.0) / denom;
    ctx.alpha2 = m * (a + b + m) * (a + b + m) / denom;
  }
  return ctx;
}

double log_weight(const EnsembleSpec& spec, double x) {
  if (!spec.in_support(x)) {
    throw std::domain_error("log_weight: point outside ensemble support");
  }
  const double a = static_cast<double>(spec.a());
  const double b = static_cast<double>(spec.b());
  double lw = 0.0;
  if (a != 0.0) lw += a * std::log(0.5 * (1.0 - x));
  if (b != 0.0) lw += b * std::log(0.5 * (1.0 + x));
  return lw;
}

namespace {

/// Basis degree of the k-th kernel term: the case A density is a
/// polynomial ensemble in the even-degree subfamily only.
int term_degree(const EnsembleSpec& spec, int k) {
  return spec.kind == EnsembleCase::A ? 2 * k : k;
}

}  // namespace

double kernel_polynomial_part(const KernelContext& ctx, double x, double y) {
  const double alpha = ctx.basis.alpha;
  const double beta = ctx.basis.beta;
  const auto jx = jacobi_eval_upto(ctx.basis.max_degree, alpha, beta, x);
  const auto jy = (x == y) ? jx : jacobi_eval_upto(ctx.basis.max_degree, alpha, beta, y);
  CompensatedSum acc;
  for (int k = 0; k < ctx.spec.m; ++k) {
    const int d = term_degree(ctx.spec, k);
    acc.add(jx[static_cast<std::size_t>(d)] * jy[static_cast<std::size_t>(d)] /
            ctx.basis.norms[static_cast<std::size_t>(k)]);
  }
  return acc.value();
}

double kernel_eval(const KernelContext& ctx, double x, double y) {
  const double lw = 0.5 * (log_weight(ctx.spec, x) + log_weight(ctx.spec, y));
  const double p = kernel_polynomial_part(ctx, x, y);
  return std::exp(lw) * p;
}

double kernel_diag_cd(const KernelContext& ctx, double x) {
  if (ctx.spec.kind != EnsembleCase::B) {
    throw std::domain_error("kernel_diag_cd: two-term diagonal form applies to case B only");
  }
  const double a = static_cast<double>(ctx.spec.a());
  const double b = static_cast<double>(ctx.spec.b());
  const int m = ctx.spec.m;
  const double j_up_m1 = jacobi_eval(m - 1, a + 1.0, b + 1.0, x);
  const double j_m1 = jacobi_eval(m - 1, a, b, x);
  const double j_m = jacobi_eval(m, a, b, x);
  const double j_up_m2 = (m >= 2) ? jacobi_eval(m - 2, a + 1.0, b + 1.0, x) : 0.0;
  return ctx.alpha1 * j_up_m1 * j_m1 - ctx.alpha2 * j_up_m2 * j_m;
}

double density_one_point(const KernelContext& ctx, double x) {
  return kernel_eval(ctx, x, x) / static_cast<double>(ctx.spec.m);
}

}  // namespace fgent
