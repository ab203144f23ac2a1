#pragma once

// Shared test oracles: finite-difference generalized traction, adaptive
// Simpson quadrature, and small utilities. These stay independent of the
// implementation paths they check.

#include <functional>

#include "elastocald/common.hpp"
#include "elastocald/material.hpp"

namespace elc_test {

using namespace elastocald;

/// Generalized traction of a vector field by central differences,
/// curl u = d2 u1 - d1 u2 convention.
inline Vec2c traction_fd(const Material& m, const std::function<Vec2c(const Vec2&)>& u,
                         const Vec2& p, const Vec2& nu, double h = 1e-6) {
  Vec2c ux1 = (u(p + Vec2(h, 0)) - u(p - Vec2(h, 0))) / (2 * h);
  Vec2c ux2 = (u(p + Vec2(0, h)) - u(p - Vec2(0, h))) / (2 * h);
  Complex divu = ux1[0] + ux2[1];
  Complex curlu = ux2[0] - ux1[1];
  Vec2c dnu = nu.x() * ux1 + nu.y() * ux2;
  return (m.mu + m.mu_tilde) * dnu + m.lambda_tilde() * divu * nu.cast<Complex>() +
         m.mu_tilde * curlu * perp(nu).cast<Complex>();
}

/// Adaptive Simpson quadrature for real integrands.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 30) {
  std::function<double(double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, int d) {
        double mid = 0.5 * (lo + hi);
        double lm = f(0.5 * (lo + mid)), rm = f(0.5 * (mid + hi));
        double left = (mid - lo) / 6.0 * (flo + 4 * lm + fmid);
        double right = (hi - mid) / 6.0 * (fmid + 4 * rm + fhi);
        if (d <= 0 || std::abs(left + right - whole) < 15 * tol)
          return left + right + (left + right - whole) / 15.0;
        return rec(lo, mid, flo, lm, fmid, left, d - 1) +
               rec(mid, hi, fmid, rm, fhi, right, d - 1);
      };
  double flo = f(a), fhi = f(b), fmid = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (flo + 4 * fmid + fhi);
  return rec(a, b, flo, fmid, fhi, whole, depth);
}

inline Complex adaptive_simpson_c(const std::function<Complex(double)>& f, double a, double b,
                                  double tol = 1e-12) {
  double re = adaptive_simpson([&](double t) { return f(t).real(); }, a, b, tol);
  double im = adaptive_simpson([&](double t) { return f(t).imag(); }, a, b, tol);
  return {re, im};
}

}  // namespace elc_test
