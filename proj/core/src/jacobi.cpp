// SPDX-License-Identifier: Apache-2.0

#include "fgent/jacobi.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "fgent/specfun.hpp"

namespace fgent {

namespace {

void check_jacobi_params(double alpha, double beta) {
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw std::domain_error("jacobi: requires alpha > -1 and beta > -1");
}

}  // namespace

QuadratureRule gauss_jacobi_rule(int order, double alpha, double beta) {
  check_jacobi_params(alpha, beta);
  if (order < 1) throw std::domain_error("gauss_jacobi_rule: order must be >= 1");

  // Recurrence coefficients of the symmetric tridiagonal Jacobi matrix:
  // x q_k = off[k+1] q_{k+1} + diag[k] q_k + off[k] q_{k-1} for the
  // orthonormal family q_k.
  const double ab = alpha + beta;
  Eigen::VectorXd diag(order), off(order);
  off(0) = 0.0;
  for (int k = 0; k < order; ++k) {
    if (k == 0)
      diag(k) = (beta - alpha) / (ab + 2.0);
    else
      diag(k) = (beta * beta - alpha * alpha) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0));
    if (k >= 1) {
      double off2;
      if (k == 1)
        // the generic formula has a removable 0/0 at k=1 when alpha+beta = -1
        off2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
      else
        off2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
               ((2.0 * k + ab) * (2.0 * k + ab) * (2.0 * k + ab + 1.0) * (2.0 * k + ab - 1.0));
      off(k) = std::sqrt(off2);
    }
  }

  // Eigenvalues only: the dense eigenvector path would cost O(order^3),
  // while the weights are recoverable in O(order^2) as reciprocal Christoffel
  // sums 1 / sum_k q_k(x_i)^2 over the orthonormal recurrence.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off.tail(order - 1), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gauss_jacobi_rule: eigen decomposition failed");

  // Total weight mu0 = int (1-x)^alpha (1+x)^beta dx = 2^{ab+1} B(alpha+1, beta+1).
  const double log_mu0 = (ab + 1.0) * std::log(2.0) +
                         log_gamma_ratio({alpha + 1.0, beta + 1.0}, {ab + 2.0});
  const double mu0 = std::exp(log_mu0);

  QuadratureRule rule;
  rule.alpha = alpha;
  rule.beta = beta;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double q0 = 1.0 / std::sqrt(mu0);
  for (int i = 0; i < order; ++i) {
    const double x = es.eigenvalues()(i);  // ascending
    rule.nodes[i] = x;
    double q_prev = 0.0, q_curr = q0;
    double christoffel = q_curr * q_curr;
    for (int k = 0; k + 1 < order; ++k) {
      const double q_next = ((x - diag(k)) * q_curr - off(k) * q_prev) / off(k + 1);
      christoffel += q_next * q_next;
      q_prev = q_curr;
      q_curr = q_next;
    }
    rule.weights[i] = 1.0 / christoffel;
  }
  return rule;
}

double jacobi_eval(int k, double alpha, double beta, double x) {
  check_jacobi_params(alpha, beta);
  if (k < 0) throw std::domain_error("jacobi_eval: degree must be >= 0");
  if (k == 0) return 1.0;
  const double ab = alpha + beta;
  double pm1 = 1.0;
  double p = 0.5 * (alpha - beta) + 0.5 * (ab + 2.0) * x;
  for (int j = 2; j <= k; ++j) {
    // 2j(j+ab)(2j+ab-2) J_j = (2j+ab-1)[(2j+ab)(2j+ab-2)x + alpha^2-beta^2] J_{j-1}
    //                         - 2(j+alpha-1)(j+beta-1)(2j+ab) J_{j-2}
    const double c = 2.0 * j + ab;
    const double a1 = 2.0 * j * (j + ab) * (c - 2.0);
    const double a2 = (c - 1.0) * (alpha * alpha - beta * beta);
    const double a3 = (c - 1.0) * c * (c - 2.0);
    const double a4 = 2.0 * (j + alpha - 1.0) * (j + beta - 1.0) * c;
    const double next = ((a2 + a3 * x) * p - a4 * pm1) / a1;
    pm1 = p;
    p = next;
  }
  return p;
}

std::vector<double> jacobi_eval_upto(int kmax, double alpha, double beta, double x) {
  check_jacobi_params(alpha, beta);
  if (kmax < 0) throw std::domain_error("jacobi_eval_upto: degree must be >= 0");
  std::vector<double> vals(static_cast<std::size_t>(kmax) + 1);
  vals[0] = 1.0;
  if (kmax == 0) return vals;
  const double ab = alpha + beta;
  vals[1] = 0.5 * (alpha - beta) + 0.5 * (ab + 2.0) * x;
  for (int j = 2; j <= kmax; ++j) {
    const double c = 2.0 * j + ab;
    const double a1 = 2.0 * j * (j + ab) * (c - 2.0);
    const double a2 = (c - 1.0) * (alpha * alpha - beta * beta);
    const double a3 = (c - 1.0) * c * (c - 2.0);
    const double a4 = 2.0 * (j + alpha - 1.0) * (j + beta - 1.0) * c;
    vals[j] = ((a2 + a3 * x) * vals[j - 1] - a4 * vals[j - 2]) / a1;
  }
  return vals;
}

double jacobi_series_ascending(int k, double alpha, double beta, double x) {
  check_jacobi_params(alpha, beta);
  // J_k = (-1)^k (beta+1)_k / k! * sum_{i=0}^{k} (-k)_i (k+alpha+beta+1)_i
  //       / ((beta+1)_i i!) * ((1+x)/2)^i
  const double xp = 0.5 * (1.0 + x);
  CompensatedSum s;
  double term = 1.0;  // ratio of Pochhammers accumulated incrementally
  for (int i = 0; i <= k; ++i) {
    s.add(term);
    term *= (-k + i) * (k + alpha + beta + 1.0 + i) / ((beta + 1.0 + i) * (i + 1.0)) * xp;
  }
  const double prefactor =
      ((k % 2 == 0) ? 1.0 : -1.0) * pochhammer(beta + 1.0, k) / std::tgamma(k + 1.0);
  return prefactor * s.value();
}

double jacobi_series_split(int k, double alpha, double beta, double x) {
  check_jacobi_params(alpha, beta);
  // J_k = sum_{i=0}^{k} (-1)^i Gamma(alpha+k+1) (k+beta-i+1)_i
  //       / (i! Gamma(alpha+i+1) (k-i)!) * ((1-x)/2)^i ((1+x)/2)^{k-i}
  const double xm = 0.5 * (1.0 - x);
  const double xp = 0.5 * (1.0 + x);
  CompensatedSum s;
  for (int i = 0; i <= k; ++i) {
    const double lg = log_gamma_ratio({alpha + k + 1.0},
                                      {static_cast<double>(i) + 1.0, alpha + i + 1.0,
                                       static_cast<double>(k - i) + 1.0});
    double term = ((i % 2 == 0) ? 1.0 : -1.0) * std::exp(lg) * pochhammer(k + beta - i + 1.0, i);
    term *= std::pow(xm, i) * std::pow(xp, k - i);
    s.add(term);
  }
  return s.value();
}

double norm_h(int k, const EnsembleSpec& spec) {
  spec.validate();
  if (k < 0 || k >= spec.m) throw std::domain_error("norm_h: requires 0 <= k < m");
  const double a = spec.a();
  const double b = spec.b();
  if (spec.kind == EnsembleCase::A) {
    // (4k+2a+1)^{-1} Gamma(2k+a+1)^2 / (Gamma(2k+2a+1) Gamma(2k+1))
    const double lg = log_gamma_ratio({2.0 * k + a + 1.0, 2.0 * k + a + 1.0},
                                      {2.0 * k + 2.0 * a + 1.0, 2.0 * k + 1.0});
    return std::exp(lg) / (4.0 * k + 2.0 * a + 1.0);
  }
  // 2 Gamma(k+a+1) Gamma(k+b+1) / ((2k+a+b+1) Gamma(k+1) Gamma(k+a+b+1))
  const double lg = log_gamma_ratio({k + a + 1.0, k + b + 1.0},
                                    {static_cast<double>(k) + 1.0, k + a + b + 1.0});
  return 2.0 * std::exp(lg) / (2.0 * k + a + b + 1.0);
}

JacobiBasis make_basis(const EnsembleSpec& spec) {
  spec.validate();
  JacobiBasis basis;
  basis.alpha = spec.a();
  basis.beta = spec.b();
  basis.max_degree = spec.kind == EnsembleCase::A ? 2 * (spec.m - 1) : spec.m - 1;
  basis.norms.resize(spec.m);
  for (int k = 0; k < spec.m; ++k) basis.norms[k] = norm_h(k, spec);
  return basis;
}

}  // namespace fgent
