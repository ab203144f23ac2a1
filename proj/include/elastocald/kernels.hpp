#pragma once

// Pointwise kernels of the elastodynamic layer operators and their
// log-singularity splits.
//
// The fundamental tensor is written as Pi(x,y) = a(r) I + b(r) e e^T with
// e = (x-y)/r. Every radial scalar below decomposes as
//     f(r) = f_smooth(r) + f_log(r) * ln r
// with f_smooth, f_log entire and even in r. Near zero the scalars are
// evaluated from power series generated out of the Bessel series (the
// difference combinations cancel the 1/r and 1/r^2 parts exactly); away
// from zero they are evaluated from Hankel functions directly.

#include <array>
#include <cmath>

#include "elastocald/bessel.hpp"
#include "elastocald/common.hpp"
#include "elastocald/material.hpp"

namespace elastocald {

namespace detail {

struct EvenSeries {
  static constexpr int terms = 18;
  std::array<Complex, terms> c{};  // f(r) = sum_m c[m] r^{2m}

  Complex eval(double r) const {
    double r2 = r * r;
    Complex s = c[terms - 1];
    for (int m = terms - 2; m >= 0; --m) s = s * r2 + c[m];
    return s;
  }
  Complex deriv(double r) const {
    double r2 = r * r;
    Complex s = double(2 * (terms - 1)) * c[terms - 1];
    for (int m = terms - 2; m >= 1; --m) s = s * r2 + double(2 * m) * c[m];
    return s * r;
  }
};

inline double psi_int(int k) {  // digamma at positive integer
  double h = 0.0;
  for (int j = 1; j < k; ++j) h += 1.0 / j;
  return -bessel::euler_gamma + h;
}

}  // namespace detail

/// Per-material radial scalar machinery.
class RadialCache {
 public:
  explicit RadialCache(const Material& m) : m_(m) {
    ks_ = m.ks();
    kp_ = m.kp();
    rw2_ = m.rho * m.omega * m.omega;
    bs_ = Complex(1.0, 0.0) + (2.0 * iu / pi) * std::log(0.5 * ks_);
    bp_ = Complex(1.0, 0.0) + (2.0 * iu / pi) * std::log(0.5 * kp_);
    build_series();
  }

  struct Radial {
    Complex a, b, da, db;      // Pi scalars and r-derivatives
    double la, lb, dla, dlb;   // their ln r coefficients and derivatives
    Complex gs, gp;            // Helmholtz kernels (i/4) H0(k r)
    double lgs, lgp;           // their ln r coefficients
    Complex cgrad;             // grad_x[G_ks - G_kp] = cgrad * (x - y)
    double lcgrad;             // its ln r coefficient
  };

  Radial eval(double r) const {
    Radial out{};
    if (ks_ * r < 1.0) {
      const double lr = std::log(r);
      out.la = sa_la.eval(r).real();
      out.lb = sa_lb.eval(r).real();
      out.dla = sa_la.deriv(r).real();
      out.dlb = sa_lb.deriv(r).real();
      out.a = sa_as.eval(r) + out.la * lr;
      out.b = sa_bs.eval(r) + out.lb * lr;
      out.da = sa_as.deriv(r) + sa_la.deriv(r).real() * lr + out.la / r;
      out.db = sa_bs.deriv(r) + sa_lb.deriv(r).real() * lr + out.lb / r;
      out.lgs = sa_gsl.eval(r).real();
      out.lgp = sa_gpl.eval(r).real();
      out.gs = sa_gss.eval(r) + out.lgs * lr;
      out.gp = sa_gps.eval(r) + out.lgp * lr;
      out.lcgrad = sa_cgl.eval(r).real();
      out.cgrad = sa_cgs.eval(r) + out.lcgrad * lr;
      return out;
    }
    const Complex h0s = bessel::hankel1(0, ks_ * r), h1s = bessel::hankel1(1, ks_ * r),
                  h2s = bessel::hankel1(2, ks_ * r);
    const Complex h0p = bessel::hankel1(0, kp_ * r), h1p = bessel::hankel1(1, kp_ * r),
                  h2p = bessel::hankel1(2, kp_ * r);
    const double j0s = h0s.real(), j1s = h1s.real(), j2s = h2s.real();
    const double j0p = h0p.real(), j1p = h1p.real(), j2p = h2p.real();
    const Complex combo1 = (ks_ * h1s - kp_ * h1p) / r;
    const Complex combo2 = ks_ * ks_ * h2s - kp_ * kp_ * h2p;
    const Complex dcombo1 = (ks_ * ks_ * h0s - kp_ * kp_ * h0p - 2.0 * combo1) / r;
    const Complex dcombo2 = ks_ * ks_ * ks_ * h1s - kp_ * kp_ * kp_ * h1p - 2.0 * combo2 / r;
    out.a = iu / (4.0 * m_.mu) * h0s - iu / (4.0 * rw2_) * combo1;
    out.b = iu / (4.0 * rw2_) * combo2;
    out.da = -iu / (4.0 * m_.mu) * ks_ * h1s - iu / (4.0 * rw2_) * dcombo1;
    out.db = iu / (4.0 * rw2_) * dcombo2;
    const double j1c = ks_ * ks_ * bessel::j1_over_z(ks_ * r) - kp_ * kp_ * bessel::j1_over_z(kp_ * r);
    out.la = -j0s / (2.0 * pi * m_.mu) + j1c / (2.0 * pi * rw2_);
    out.lb = -(ks_ * ks_ * j2s - kp_ * kp_ * j2p) / (2.0 * pi * rw2_);
    const double dj1c = ks_ * ks_ * ks_ * dj1_over_z(ks_ * r) - kp_ * kp_ * kp_ * dj1_over_z(kp_ * r);
    out.dla = ks_ * j1s / (2.0 * pi * m_.mu) + dj1c / (2.0 * pi * rw2_);
    const double dj2s = j1s - 2.0 * (ks_ * r) * bessel::j2_over_z2(ks_ * r);
    const double dj2p = j1p - 2.0 * (kp_ * r) * bessel::j2_over_z2(kp_ * r);
    out.dlb = -(ks_ * ks_ * ks_ * dj2s - kp_ * kp_ * kp_ * dj2p) / (2.0 * pi * rw2_);
    out.gs = 0.25 * iu * h0s;
    out.gp = 0.25 * iu * h0p;
    out.lgs = -j0s / (2.0 * pi);
    out.lgp = -j0p / (2.0 * pi);
    out.cgrad = -0.25 * iu * combo1;
    out.lcgrad = j1c / (2.0 * pi);
    return out;
  }

  /// Diagonal (r -> 0) limits of the smooth parts.
  struct Diag {
    Complex a0;   // smooth part of a
    Complex b0;   // smooth part of b (equals kelvin_dyad)
    Complex gs0, gp0;
    double la0;   // (= -kelvin_log)
  };
  Diag diag() const {
    return {sa_as.c[0], sa_bs.c[0], sa_gss.c[0], sa_gps.c[0], sa_la.c[0].real()};
  }

  const Material& material() const { return m_; }

 private:
  Material m_;
  double ks_, kp_, rw2_;
  Complex bs_, bp_;
  detail::EvenSeries sa_as, sa_la, sa_bs, sa_lb, sa_gss, sa_gsl, sa_gps, sa_gpl, sa_cgs, sa_cgl;

  static double dj1_over_z(double z) {  // d/dz [J1(z)/z]
    if (z < 1.0) {
      // J1(z)/z = (1/2) sum_m (-1)^m (z^2/4)^m / (m!(m+1)!); differentiate termwise.
      const double q = 0.25 * z * z;
      double qm = 1.0, fm = 1.0, fm1 = 1.0;  // q^m, m!, (m+1)!
      double sum = 0.0;
      for (int mm = 1; mm < 40; ++mm) {
        qm *= -q;
        fm *= mm;
        fm1 *= (mm + 1);
        double term = mm * qm / (fm * fm1);
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
      }
      return sum / z;
    }
    return (bessel::bessel_j(0, z) - 2.0 * bessel::j1_over_z(z)) / z;
  }

  void build_series() {
    const int T = detail::EvenSeries::terms;
    const double mu = m_.mu;
    // coefficient of r^{2m} in J0(k r)
    auto j0c = [](double k, int mm, double fm) {
      double s = (mm % 2 == 0) ? 1.0 : -1.0;
      return s * std::pow(0.25 * k * k, mm) / (fm * fm);
    };
    // coefficient of r^{2m} in k J1(k r)/r
    auto j1cc = [](double k, int mm, double fm, double fm1) {
      double s = (mm % 2 == 0) ? 1.0 : -1.0;
      return 0.5 * s * std::pow(0.25 * k * k, mm) * k * k / (fm * fm1);
    };
    // coefficient of r^{2m} in y0lr(k r)
    auto y0c = [](double k, int mm, double fm) {
      double s = (mm % 2 == 0) ? 1.0 : -1.0;
      return -(2.0 / pi) * detail::psi_int(mm + 1) * s * std::pow(0.25 * k * k, mm) / (fm * fm);
    };
    // coefficient of r^{2m} in k y1lr(k r)/r
    auto y1c = [](double k, int mm, double fm, double fm1) {
      double s = (mm % 2 == 0) ? 1.0 : -1.0;
      return -(0.5 / pi) * (detail::psi_int(mm + 1) + detail::psi_int(mm + 2)) * s *
             std::pow(0.25 * k * k, mm) * k * k / (fm * fm1);
    };
    // coefficient of r^{2m+2} in k^2 J2(k r)
    auto j2c = [](double k, int mm, double fm, double fm2) {
      double s = (mm % 2 == 0) ? 1.0 : -1.0;
      return s * std::pow(0.25, mm + 1) * std::pow(k, 2 * mm + 4) / (fm * fm2);
    };
    // coefficient of r^{2m+2} in k^2 y2lr(k r)
    auto y2c = [](double k, int mm, double fm, double fm2) {
      double s = (mm % 2 == 0) ? 1.0 : -1.0;
      return -(0.25 / pi) * (detail::psi_int(mm + 1) + detail::psi_int(mm + 3)) * s *
             std::pow(0.25, mm) * std::pow(k, 2 * mm + 4) / (fm * fm2);
    };
    double fm = 1.0;  // m!
    for (int mm = 0; mm < T; ++mm) {
      if (mm > 0) fm *= mm;
      const double fm1 = fm * (mm + 1);            // (m+1)!
      const double fm2 = fm1 * (mm + 2);           // (m+2)!
      const double j0s = j0c(ks_, mm, fm), j0p = j0c(kp_, mm, fm);
      const double j1s = j1cc(ks_, mm, fm, fm1), j1p = j1cc(kp_, mm, fm, fm1);
      const double y0s = y0c(ks_, mm, fm), y0p = y0c(kp_, mm, fm);
      const double y1s = y1c(ks_, mm, fm, fm1), y1p = y1c(kp_, mm, fm, fm1);

      sa_la.c[mm] = -j0s / (2.0 * pi * mu) + (j1s - j1p) / (2.0 * pi * rw2_);
      sa_gsl.c[mm] = -j0s / (2.0 * pi);
      sa_gpl.c[mm] = -j0p / (2.0 * pi);
      sa_cgl.c[mm] = (j1s - j1p) / (2.0 * pi);

      const Complex c1s = (j1s * bs_ + iu * y1s) - (j1p * bp_ + iu * y1p);
      sa_as.c[mm] = iu / (4.0 * mu) * (j0s * bs_ + iu * y0s) - iu / (4.0 * rw2_) * c1s;
      sa_gss.c[mm] = 0.25 * iu * (j0s * bs_ + iu * y0s);
      sa_gps.c[mm] = 0.25 * iu * (j0p * bp_ + iu * y0p);
      sa_cgs.c[mm] = -0.25 * iu * c1s;

      if (mm + 1 < T) {
        const double j2s = j2c(ks_, mm, fm, fm2), j2p = j2c(kp_, mm, fm, fm2);
        const double y2s = y2c(ks_, mm, fm, fm2), y2p = y2c(kp_, mm, fm, fm2);
        sa_lb.c[mm + 1] = Complex(-(j2s - j2p) / (2.0 * pi * rw2_), 0.0);
        sa_bs.c[mm + 1] = iu / (4.0 * rw2_) * ((j2s * bs_ + iu * y2s) - (j2p * bp_ + iu * y2p));
      }
    }
    // r-independent part of the dyad scalar: the Kelvin coefficient
    sa_bs.c[0] = iu / (4.0 * rw2_) * (-iu * (ks_ * ks_ - kp_ * kp_) / pi);
    sa_lb.c[0] = 0.0;
  }
};

// ---------------------------------------------------------------------------
// Matrix kernels

/// Generalized traction applied at p to the columns of Pi(p, q):
///   G = (mu+mu~)[ a' ne I + b' ne ee^T + (b/r)(nu e^T + e nu^T - 2 ne ee^T) ]
///       + lambda~ (a' + b' + b/r) nu e^T + mu~ (b/r - a') (ne I - e nu^T)
/// with e = (p-q)/r, ne = nu.e.
inline Mat2c traction_matrix(const Material& m, const Vec2& e, double r, const Vec2& nu,
                             Complex a_or_la_deriv, Complex b_deriv, Complex b_over_r) {
  const Complex da = a_or_la_deriv, db = b_deriv, br = b_over_r;
  const double ne = nu.dot(e);
  Mat2 ee = e * e.transpose();
  Mat2 nue = nu * e.transpose();
  Mat2 enu = e * nu.transpose();
  Mat2c out = (m.mu + m.mu_tilde) *
              (da * ne * Mat2c::Identity() + db * ne * ee.cast<Complex>() +
               br * (nue + enu - 2.0 * ne * ee).cast<Complex>());
  out += m.lambda_tilde() * (da + db + br) * nue.cast<Complex>();
  out += m.mu_tilde * (br - da) * (ne * Mat2c::Identity() - enu.cast<Complex>());
  return out;
}

class Kernels {
 public:
  explicit Kernels(const Material& m) : m_(m), c_(constants(m)), rc_(m) {}

  const Material& material() const { return m_; }
  const OperatorConstants& consts() const { return c_; }
  const RadialCache& radial_cache() const { return rc_; }

  // -- fundamental tensor -------------------------------------------------
  Mat2c fundamental(const Vec2& x, const Vec2& y) const {
    Vec2 d = x - y;
    double r = d.norm();
    Vec2 e = d / r;
    auto rad = rc_.eval(r);
    return rad.a * Mat2c::Identity() + rad.b * (e * e.transpose()).cast<Complex>();
  }
  Mat2c fundamental_log(const Vec2& x, const Vec2& y) const {
    Vec2 d = x - y;
    double r = d.norm();
    Vec2 e = d / r;
    auto rad = rc_.eval(r);
    return rad.la * Mat2c::Identity() + rad.lb * (e * e.transpose()).cast<Complex>();
  }
  /// r -> 0 limit of fundamental - fundamental_log * ln r along direction tau.
  Mat2c fundamental_smooth_diag(const Vec2& tau) const {
    auto d = rc_.diag();
    return d.a0 * Mat2c::Identity() + d.b0 * (tau * tau.transpose()).cast<Complex>();
  }

  Mat2c fundamental_static(const Vec2& x, const Vec2& y) const {
    Vec2 d = x - y;
    double r = d.norm();
    Vec2 e = d / r;
    return Complex(-c_.kelvin_log * std::log(r)) * Mat2c::Identity() +
           Complex(c_.kelvin_dyad) * (e * e.transpose()).cast<Complex>();
  }

  // -- traction kernels -----------------------------------------------------
  /// T~(d_p, nu) applied to the columns of Pi(p, q).
  Mat2c traction(const Vec2& p, const Vec2& q, const Vec2& nu) const {
    Vec2 d = p - q;
    double r = d.norm();
    Vec2 e = d / r;
    auto rad = rc_.eval(r);
    return traction_matrix(m_, e, r, nu, rad.da, rad.db, rad.b / r);
  }
  Mat2c traction_log(const Vec2& p, const Vec2& q, const Vec2& nu) const {
    Vec2 d = p - q;
    double r = d.norm();
    Vec2 e = d / r;
    auto rad = rc_.eval(r);
    return traction_matrix(m_, e, r, nu, Complex(rad.dla), Complex(rad.dlb), Complex(rad.lb / r));
  }
  Mat2c traction_static(const Vec2& p, const Vec2& q, const Vec2& nu) const {
    Vec2 d = p - q;
    double r = d.norm();
    Vec2 e = d / r;
    return traction_matrix(m_, e, r, nu, Complex(-c_.kelvin_log / r), Complex(0.0),
                           Complex(c_.kelvin_dyad / r));
  }

  /// Kernel of the double-layer operator: (T~(d_y, nu_y) Pi(x,y))^T.
  Mat2c dlp(const Vec2& x, const Vec2& y, const Vec2& nu_y) const {
    return traction(y, x, nu_y).transpose();
  }
  Mat2c dlp_log(const Vec2& x, const Vec2& y, const Vec2& nu_y) const {
    return traction_log(y, x, nu_y).transpose();
  }
  Mat2c dlp_static(const Vec2& x, const Vec2& y, const Vec2& nu_y) const {
    return traction_static(y, x, nu_y).transpose();
  }

  /// Cauchy part common to the double layer and its transpose:
  ///   K1(d; nu) = (nu d^T - d nu^T) / (2 pi r^2).
  static Mat2c cauchy_part(const Vec2& d, const Vec2& nu) {
    double r2 = d.squaredNorm();
    Mat2 k = (nu * d.transpose() - d * nu.transpose()) / (2.0 * pi * r2);
    return k.cast<Complex>();
  }

  /// Shared smooth diagonal of the regularized double layer and transpose:
  ///   -(kappa/2) [ (mu c1 - mu~ c2) I + 2 c2 (mu+mu~) tau tau^T ].
  Mat2c dlp_smooth_diag(double curvature, const Vec2& tau) const {
    double ci = m_.mu * c_.kelvin_log - m_.mu_tilde * c_.kelvin_dyad;
    double cd = 2.0 * c_.kelvin_dyad * (m_.mu + m_.mu_tilde);
    Mat2 v = -(0.5 * curvature) * (ci * Mat2::Identity() + cd * (tau * tau.transpose()));
    return v.cast<Complex>();
  }

  // -- pieces of the regularized hyper-singular operator --------------------
  /// Antisymmetric normal combination in the zeroth-order part. Fixed by the
  /// double-traction finite-difference oracle; see the kernel tests.
  static Mat2c normal_pair(const Vec2& nx, const Vec2& ny) {
    Mat2 j = ny * nx.transpose() - nx * ny.transpose();
    return j.cast<Complex>();
  }

  /// Zeroth-order kernel of the regularized hyper-singular form.
  Mat2c hyper_zero(const Vec2& x, const Vec2& y, const Vec2& nx, const Vec2& ny) const {
    Vec2 d = x - y;
    double r = d.norm();
    auto rad = rc_.eval(r);
    return hyper_zero_from(rad.gs, rad.gp, nx, ny);
  }
  Mat2c hyper_zero_log(const Vec2& x, const Vec2& y, const Vec2& nx, const Vec2& ny) const {
    Vec2 d = x - y;
    double r = d.norm();
    auto rad = rc_.eval(r);
    return hyper_zero_from(Complex(rad.lgs), Complex(rad.lgp), nx, ny);
  }
  Mat2c hyper_zero_from(Complex gs, Complex gp, const Vec2& nx, const Vec2& ny) const {
    const double rw2 = m_.rho * m_.omega * m_.omega;
    const double ks2 = m_.ks() * m_.ks();
    Mat2c out = -rw2 * gs * ((nx * ny.transpose()).cast<Complex>() - nx.dot(ny) * Mat2c::Identity());
    out += m_.mu_tilde * ks2 * gs * normal_pair(nx, ny);
    out += rw2 * gp * (nx * ny.transpose()).cast<Complex>();
    return out;
  }

  /// A Pi A kernel (tangential-derivative sandwich part).
  Mat2c apa(const Vec2& x, const Vec2& y) const {
    Vec2 d = x - y;
    double r = d.norm();
    Vec2 ae = perp(d / r);
    auto rad = rc_.eval(r);
    return -rad.a * Mat2c::Identity() - rad.b * (ae * ae.transpose()).cast<Complex>();
  }
  Mat2c apa_log(const Vec2& x, const Vec2& y) const {
    Vec2 d = x - y;
    double r = d.norm();
    Vec2 ae = perp(d / r);
    auto rad = rc_.eval(r);
    return -Complex(rad.la) * Mat2c::Identity() - Complex(rad.lb) * (ae * ae.transpose()).cast<Complex>();
  }
  Mat2c apa_smooth_diag(const Vec2& nu) const {
    auto d = rc_.diag();
    return -d.a0 * Mat2c::Identity() - d.b0 * (nu * nu.transpose()).cast<Complex>();
  }

  /// nu_x grad_x^T [G_ks - G_kp] A  (one tangential derivative on the density).
  Mat2c grad_row(const Vec2& x, const Vec2& y, const Vec2& nx) const {
    Vec2 d = x - y;
    auto rad = rc_.eval(d.norm());
    Vec2 ad(d.y(), -d.x());  // d^T A as a column
    return rad.cgrad * (nx * ad.transpose()).cast<Complex>();
  }
  Mat2c grad_row_log(const Vec2& x, const Vec2& y, const Vec2& nx) const {
    Vec2 d = x - y;
    auto rad = rc_.eval(d.norm());
    Vec2 ad(d.y(), -d.x());
    return Complex(rad.lcgrad) * (nx * ad.transpose()).cast<Complex>();
  }

  /// A grad_y [G_ks - G_kp] nu_y^T  (one tangential derivative on the result).
  Mat2c grad_col(const Vec2& x, const Vec2& y, const Vec2& ny) const {
    Vec2 d = x - y;
    auto rad = rc_.eval(d.norm());
    Vec2 adp = perp(d);  // A d
    return -rad.cgrad * (adp * ny.transpose()).cast<Complex>();  // grad_y flips the sign
  }
  Mat2c grad_col_log(const Vec2& x, const Vec2& y, const Vec2& ny) const {
    Vec2 d = x - y;
    auto rad = rc_.eval(d.norm());
    Vec2 adp = perp(d);
    return -Complex(rad.lcgrad) * (adp * ny.transpose()).cast<Complex>();
  }

  /// Auxiliary static kernel regularizing the hyper-singular operator:
  ///   -vkern_log ln r I + vkern_dyad e e^T.
  Mat2c vkern_static(const Vec2& x, const Vec2& y) const {
    Vec2 d = x - y;
    double r = d.norm();
    Vec2 e = d / r;
    return Complex(-c_.vkern_log * std::log(r)) * Mat2c::Identity() +
           Complex(c_.vkern_dyad) * (e * e.transpose()).cast<Complex>();
  }

  /// Dynamic kernel of the principal-value block on arcs:
  ///   (mu+mu~)^2 A Pi A + 2 (mu+mu~) G_ks I.
  Mat2c vkern(const Vec2& x, const Vec2& y) const {
    const double f = m_.mu + m_.mu_tilde;
    Vec2 d = x - y;
    auto rad = rc_.eval(d.norm());
    Vec2 ae = perp(d / d.norm());
    Mat2c out = f * f * (-rad.a * Mat2c::Identity() - rad.b * (ae * ae.transpose()).cast<Complex>());
    out += 2.0 * f * rad.gs * Mat2c::Identity();
    return out;
  }
  Mat2c vkern_log(const Vec2& x, const Vec2& y) const {
    const double f = m_.mu + m_.mu_tilde;
    Vec2 d = x - y;
    auto rad = rc_.eval(d.norm());
    Vec2 ae = perp(d / d.norm());
    Mat2c out =
        f * f * (-Complex(rad.la) * Mat2c::Identity() - Complex(rad.lb) * (ae * ae.transpose()).cast<Complex>());
    out += 2.0 * f * Complex(rad.lgs) * Mat2c::Identity();
    return out;
  }
  Mat2c vkern_smooth_diag(const Vec2& nu) const {
    const double f = m_.mu + m_.mu_tilde;
    auto d = rc_.diag();
    Mat2c out = f * f * (-d.a0 * Mat2c::Identity() - d.b0 * (nu * nu.transpose()).cast<Complex>());
    out += 2.0 * f * d.gs0 * Mat2c::Identity();
    return out;
  }

 private:
  Material m_;
  OperatorConstants c_;
  RadialCache rc_;
};

}  // namespace elastocald
