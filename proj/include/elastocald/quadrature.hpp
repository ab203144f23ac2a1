#pragma once

// Global trigonometric quadrature rules on periodic grids: the product rule
// for ln(4 sin^2((s - sig)/2)) kernels, the principal-value rule for the
// cotangent kernel, spectral differentiation, and the cosine-expansion
// product rule for ln|cos(theta) - cos(phi)| on the open-arc node set.

#include <cmath>

#include "elastocald/common.hpp"

namespace elastocald {

/// Kress weights R_{|i-j|} for int_0^{2pi} ln(4 sin^2((s-sig)/2)) f(sig) dsig
/// on n equispaced nodes (n even). Exact for trigonometric degree < n/2.
inline VecX log_rule_weights(int n) {
  const int half = n / 2;
  VecX r(n);
  for (int k = 0; k < n; ++k) {
    double ang = 2.0 * pi * k / n;
    double sum = 0.0;
    for (int m = 1; m < half; ++m) sum += std::cos(m * ang) / m;
    r[k] = -2.0 * pi / half * sum - pi / (half * half) * std::cos(half * ang);
  }
  return r;
}

/// Weights for the principal-value rule
///   PV int_0^{2pi} cot((s_i - sig)/2) f(sig) dsig ~ sum_j w[(j-i) mod n] f_j,
/// exact for trigonometric degree < n/2 (maps cos(ms) -> 2 pi sin(ms)).
inline VecX cot_pv_weights(int n) {
  VecX w(n);
  const int M = n / 2 - 1;
  for (int k = 0; k < n; ++k) {
    double d = 2.0 * pi * k / n;
    double sum;
    if (k == 0) {
      sum = 0.0;
    } else {
      sum = std::sin(0.5 * M * d) * std::sin(0.5 * (M + 1) * d) / std::sin(0.5 * d);
    }
    w[k] = -4.0 * pi / n * sum;
  }
  return w;
}

/// Spectral differentiation matrix on n equispaced nodes (n even).
inline Eigen::MatrixXd fourier_diff_matrix(int n) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) {
        int k = i - j;
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        d(i, j) = 0.5 * sign / std::tan(pi * k / n);
      }
  return d;
}

/// Product rule for int_0^pi ln|cos(theta_i) - cos(phi)| f(phi) dphi on the
/// interior cosine nodes theta_j = (2j+1) pi / (2M). Built from the expansion
/// ln|cos t - cos p| = -ln 2 - sum 2 cos(m t) cos(m p)/m truncated at M, which
/// makes the rule exact on the discrete cosine basis.
inline Eigen::MatrixXd arc_log_weights(int M) {
  Eigen::MatrixXd w(M, M);
  const double ln2 = std::log(2.0);
  for (int i = 0; i < M; ++i) {
    double ti = (2.0 * i + 1.0) * pi / (2.0 * M);
    for (int j = 0; j < M; ++j) {
      double tj = (2.0 * j + 1.0) * pi / (2.0 * M);
      double sum = 0.0;
      for (int m = 1; m < M; ++m) sum += std::cos(m * ti) * std::cos(m * tj) / m;
      w(i, j) = -pi / M * (ln2 + 2.0 * sum);
    }
  }
  return w;
}

/// Two-sided Richardson limit of f(h) as h -> 0 for smooth f, from levels
/// h0, h0/2, h0/4. Used to cross-check analytic kernel diagonals.
template <typename F>
auto richardson_diag(F&& f, double h0 = 2e-2) {
  auto g0 = 0.5 * (f(h0) + f(-h0));
  auto g1 = 0.5 * (f(0.5 * h0) + f(-0.5 * h0));
  auto g2 = 0.5 * (f(0.25 * h0) + f(-0.25 * h0));
  auto r1 = (4.0 * g1 - g0) / 3.0;
  auto r2 = (4.0 * g2 - g1) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

}  // namespace elastocald
