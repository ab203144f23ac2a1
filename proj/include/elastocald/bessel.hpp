#pragma once

// Bessel and Hankel functions of orders 0..2 for real positive arguments,
// plus the regular remainders of Y_n used to separate logarithmic kernel
// singularities. Ascending series below the switch radius, Hankel asymptotic
// expansion above it; both branches stay below ~1e-13 at the switch.

#include <cmath>
#include <stdexcept>

#include "elastocald/common.hpp"

namespace elastocald::bessel {

inline constexpr double switch_radius = 12.0;
inline constexpr double euler_gamma   = 0.57721566490153286060651209008240243;

namespace detail {

// psi(k+1) = -gamma + H_k
inline double digamma_int(int kplus1) {
  double h = 0.0;
  for (int j = 1; j < kplus1; ++j) h += 1.0 / j;
  return -euler_gamma + h;
}

inline double factorial(int n) {
  double f = 1.0;
  for (int j = 2; j <= n; ++j) f *= j;
  return f;
}

// Ascending series J_n(z) = sum_k (-1)^k (z/2)^{n+2k} / (k! (n+k)!),
// terminated when |term| < 1e-18 |sum|.
inline double j_series(int n, double z) {
  const double q  = 0.25 * z * z;
  double term     = std::pow(0.5 * z, n) / factorial(n);
  double sum      = term;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Regular part of the DLMF 10.8.1 infinite sum:
//   ypsum_n(z) = sum_k (psi(k+1)+psi(n+k+1)) (-z^2/4)^k / (k! (n+k)!)
inline double ypsum(int n, double z) {
  const double q = -0.25 * z * z;
  double pk      = 1.0 / factorial(n);  // (q^k)/(k!(n+k)!) running factor
  double sum     = (digamma_int(1) + digamma_int(n + 1)) * pk;
  double hk = 0.0, hnk = 0.0;
  for (int j = 1; j <= n; ++j) hnk += 1.0 / j;
  for (int k = 1; k < 200; ++k) {
    pk *= q / (static_cast<double>(k) * (n + k));
    hk += 1.0 / k;
    hnk += 1.0 / (n + k);
    double term = (-2.0 * euler_gamma + hk + hnk) * pk;
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return sum;
}

// Hankel asymptotic expansion, DLMF 10.17: J_n, Y_n from P_n, Q_n with
// chi = z - (2n+1) pi/4. Fixed 19 terms.
struct PQ {
  double p, q;
};
inline PQ pq_asym(int n, double z) {
  const int terms = 19;  // >= 17 per the double-precision crossover at z = 12
  double mu       = 4.0 * n * n;
  double ak       = 1.0;  // a_k = prod_j (mu - (2j-1)^2) / (k! 8^k)
  double zk       = 1.0;  // z^k
  double p = 0.0, q = 0.0;
  for (int k = 0; k <= terms; ++k) {
    double v = ak / zk;
    if (k % 2 == 0)
      p += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * v;
    else
      q += (((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0) * v;
    ak *= (mu - (2.0 * k + 1.0) * (2.0 * k + 1.0)) / (8.0 * (k + 1.0));
    zk *= z;
  }
  return {p, q};
}

inline void jy_asym(int n, double z, double& j, double& y) {
  PQ pq         = pq_asym(n, z);
  double chi    = z - (2.0 * n + 1.0) * pi / 4.0;
  double amp    = std::sqrt(2.0 / (pi * z));
  double c      = std::cos(chi), s = std::sin(chi);
  j             = amp * (pq.p * c - pq.q * s);
  y             = amp * (pq.p * s + pq.q * c);
}

}  // namespace detail

inline double bessel_j(int n, double z) {
  if (n < 0 || n > 2) throw std::domain_error("bessel_j: order must be 0, 1 or 2");
  if (!(z > 0.0)) throw std::domain_error("bessel_j: argument must be positive");
  if (z < switch_radius) return detail::j_series(n, z);
  double j, y;
  detail::jy_asym(n, z, j, y);
  return j;
}

inline double bessel_y(int n, double z) {
  if (n < 0 || n > 2) throw std::domain_error("bessel_y: order must be 0, 1 or 2");
  if (!(z > 0.0)) throw std::domain_error("bessel_y: argument must be positive");
  if (z >= switch_radius) {
    double j, y;
    detail::jy_asym(n, z, j, y);
    return y;
  }
  // DLMF 10.8.1
  double lead = 0.0;
  for (int k = 0; k <= n - 1; ++k)
    lead += detail::factorial(n - k - 1) / detail::factorial(k) * std::pow(0.25 * z * z, k);
  lead *= -std::pow(0.5 * z, -n) / pi;
  double logpart = (2.0 / pi) * std::log(0.5 * z) * detail::j_series(n, z);
  double tail    = -std::pow(0.5 * z, n) / pi * detail::ypsum(n, z);
  return lead + logpart + tail;
}

/// H_n^{(1)}(z) = J_n(z) + i Y_n(z), orders 0..2, z > 0.
inline Complex hankel1(int n, double z) { return {bessel_j(n, z), bessel_y(n, z)}; }

/// Entire even remainder of Y_0:  Y_0(z) - (2/pi) ln(z/2) J_0(z).
inline double y0_log_remainder(double z) {
  if (z < 1.0) return -detail::ypsum(0, z) / pi;
  return bessel_y(0, z) - (2.0 / pi) * std::log(0.5 * z) * bessel_j(0, z);
}

/// Entire odd remainder of Y_1:  Y_1(z) - (2/pi) ln(z/2) J_1(z) + 2/(pi z).
inline double y1_log_remainder(double z) {
  if (z < 1.0) return -0.5 * z / pi * detail::ypsum(1, z);
  return bessel_y(1, z) - (2.0 / pi) * std::log(0.5 * z) * bessel_j(1, z) + 2.0 / (pi * z);
}

/// Entire even remainder of Y_2:
///   Y_2(z) - (2/pi) ln(z/2) J_2(z) + 4/(pi z^2) + 1/pi.   O(z^2) at zero.
inline double y2_log_remainder(double z) {
  if (z < 1.0) return -0.25 * z * z / pi * detail::ypsum(2, z);
  return bessel_y(2, z) - (2.0 / pi) * std::log(0.5 * z) * bessel_j(2, z) + 4.0 / (pi * z * z) +
         1.0 / pi;
}

/// J_1(z)/z, entire in z^2; safe at z -> 0 (limit 1/2).
inline double j1_over_z(double z) {
  if (z < 1.0) {
    const double q = 0.25 * z * z;
    double term = 0.5, sum = term;
    for (int k = 1; k < 60; ++k) {
      term *= -q / (static_cast<double>(k) * (k + 1));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return bessel_j(1, z) / z;
}

/// J_2(z)/z^2, entire in z^2; limit 1/8 at zero.
inline double j2_over_z2(double z) {
  if (z < 1.0) {
    const double q = 0.25 * z * z;
    double term = 0.125, sum = term;
    for (int k = 1; k < 60; ++k) {
      term *= -q / (static_cast<double>(k) * (k + 2));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return bessel_j(2, z) / (z * z);
}

struct LogSplit {
  Complex smooth;     // A in H = A + B ln z
  Complex log_coeff;  // B = (2i/pi) J_0(z)
};

/// Split of H_0^{(1)}(z) into smooth part plus log-coefficient times ln z.
/// Reconstruction smooth + log_coeff * ln z == hankel1(0, z) holds exactly.
inline LogSplit log_split_h0(double z) {
  if (!(z > 0.0)) throw std::domain_error("log_split_h0: argument must be positive");
  double j0 = bessel_j(0, z);
  Complex b = (2.0 * iu / pi) * j0;
  Complex a = Complex(j0, 0.0) +
              iu * ((2.0 / pi) * std::log(0.5) * j0 + y0_log_remainder(z));
  return {a, b};
}

}  // namespace elastocald::bessel
