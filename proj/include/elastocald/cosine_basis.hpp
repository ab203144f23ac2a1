#pragma once

// Even 2pi-periodic function space machinery on the interior cosine nodes
// theta_j = (2j+1) pi / (2M): the discrete cosine transform pair, Sobolev
// norms, and the flat-arc reference operators with exact actions on the
// basis e_n = cos(n theta).
//
// Coefficients are stored with the half-a0 convention
//     v(theta) = a0/2 + sum_{m>=1} a_m cos(m theta),
// so the constant function 1 has a0 = 2.

#include <vector>

#include "elastocald/common.hpp"
#include "elastocald/material.hpp"

namespace elastocald {

struct CosineSeries {
  std::vector<Vec2c> a;  // a[m] per vector component
  int size() const { return static_cast<int>(a.size()); }
};

inline VecX cosine_nodes(int m) {
  VecX t(m);
  for (int j = 0; j < m; ++j) t[j] = (2.0 * j + 1.0) * pi / (2.0 * m);
  return t;
}

inline CosineSeries dct_forward(const std::vector<Vec2c>& values) {
  const int m = static_cast<int>(values.size());
  VecX th = cosine_nodes(m);
  CosineSeries out;
  out.a.resize(m);
  for (int k = 0; k < m; ++k) {
    Vec2c s = Vec2c::Zero();
    for (int j = 0; j < m; ++j) s += values[j] * std::cos(k * th[j]);
    out.a[k] = (2.0 / m) * s;
  }
  return out;
}

inline std::vector<Vec2c> dct_inverse(const CosineSeries& c, int nodes = -1) {
  const int m = c.size();
  const int n = nodes < 0 ? m : nodes;
  VecX th = cosine_nodes(n);
  std::vector<Vec2c> out(n);
  for (int j = 0; j < n; ++j) {
    Vec2c s = 0.5 * c.a[0];
    for (int k = 1; k < m; ++k) s += c.a[k] * std::cos(k * th[j]);
    out[j] = s;
  }
  return out;
}

/// || v ||^2 = |a0|^2 + 2 sum m^{2s} |a_m|^2 on the stored coefficients.
inline double sobolev_norm(const CosineSeries& c, double s) {
  if (s < 0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
  double v = c.a.empty() ? 0.0 : c.a[0].squaredNorm();
  for (int m = 1; m < c.size(); ++m) v += 2.0 * std::pow(double(m), 2.0 * s) * c.a[m].squaredNorm();
  return std::sqrt(v);
}

// ---------------------------------------------------------------------------
// Scalar coefficient maps. Coefficient vectors c (length M) represent
// sum_n c_n e_n with e_n = cos(n theta) -- note this is the plain basis, so
// the stored-series a relates by c_0 = a_0/2, c_n = a_n.

namespace basis {

/// Coefficients of sin(n theta)/sin(theta) = U_{n-1}(cos theta), n >= 1,
/// in the plain cosine basis.
inline VecX chebyshev_u_coeffs(int n, int len) {
  VecX c = VecX::Zero(len);
  for (int j = n - 1; j >= 0; j -= 2) {
    if (j < len) c[j] = (j == 0) ? 1.0 : 2.0;
  }
  return c;
}

/// T0: gamma -> d/dtheta ( gamma sin theta ). Raises degree by one.
inline VecXc t0_map(const VecXc& c) {
  const int m = static_cast<int>(c.size());
  VecXc out = VecXc::Zero(m + 1);
  out[1] += c[0];  // T0[e_0] = e_1
  for (int n = 1; n < m; ++n) {
    out[n + 1] += 0.5 * (1.0 + n) * c[n];
    if (n >= 2)
      out[n - 1] += 0.5 * (1.0 - n) * c[n];
    else
      out[0] += 0.5 * (1.0 - n) * c[n];  // n = 1 contributes 0
  }
  return out;
}

/// D0: gamma -> gamma'(theta)/sin(theta). D0[e_n] = -n U_{n-1}; D0[e_0] = 0.
inline VecXc d0_map(const VecXc& c) {
  const int m = static_cast<int>(c.size());
  VecXc out = VecXc::Zero(std::max(1, m - 1));
  for (int n = 1; n < m; ++n) {
    VecX u = chebyshev_u_coeffs(n, static_cast<int>(out.size()));
    out -= double(n) * c[n] * u.cast<Complex>();
  }
  return out;
}

/// C: e_n -> sin(n theta)/(n sin theta) for n >= 1, e_0 -> 0. Lowers degree.
inline VecXc c_map(const VecXc& c) {
  const int m = static_cast<int>(c.size());
  VecXc out = VecXc::Zero(std::max(1, m - 1));
  for (int n = 1; n < m; ++n) {
    VecX u = chebyshev_u_coeffs(n, static_cast<int>(out.size()));
    out += c[n] / double(n) * u.cast<Complex>();
  }
  return out;
}

/// Multiply a cosine expansion by cos(theta).
inline VecXc cos_multiply(const VecXc& c) {
  const int m = static_cast<int>(c.size());
  VecXc out = VecXc::Zero(m + 1);
  for (int n = 0; n < m; ++n) {
    if (n == 0) {
      out[1] += c[0];
    } else {
      out[n + 1] += 0.5 * c[n];
      if (n - 1 == 0)
        out[0] += 0.5 * c[n];
      else
        out[n - 1] += 0.5 * c[n];
    }
  }
  return out;
}

}  // namespace basis

// ---------------------------------------------------------------------------
// Reference operator eigenvalues and maps.

/// Diagonal multipliers of the flat-arc single-layer operator.
inline double symm_eig(const OperatorConstants& c, int component, int n) {
  if (n == 0)
    return component == 0 ? pi * (c.kelvin_log * std::log(2.0) + c.kelvin_dyad)
                          : pi * c.kelvin_log * std::log(2.0);
  return pi * c.kelvin_log / n;
}

/// Diagonal multipliers of the flat-arc auxiliary (regularizing) operator.
inline double vkern_eig(const OperatorConstants& c, int component, int n) {
  if (n == 0)
    return component == 0 ? pi * (c.vkern_log * std::log(2.0) + c.vkern_dyad)
                          : pi * c.vkern_log * std::log(2.0);
  return pi * c.vkern_log / n;
}

/// Vector-valued basis ops on per-component coefficient vectors.
struct FlatOps {
  OperatorConstants c;

  explicit FlatOps(const Material& m) : c(constants(m)) {}
  explicit FlatOps(const OperatorConstants& cc) : c(cc) {}

  // S0, V0 act diagonally but with different entries per vector component.
  void s0(VecXc& x, VecXc& y) const {
    for (int n = 0; n < x.size(); ++n) {
      x[n] *= symm_eig(c, 0, n);
      y[n] *= symm_eig(c, 1, n);
    }
  }
  void s0_inverse(VecXc& x, VecXc& y) const {
    for (int n = 0; n < x.size(); ++n) {
      x[n] /= symm_eig(c, 0, n);
      y[n] /= symm_eig(c, 1, n);
    }
  }
  void v0(VecXc& x, VecXc& y) const {
    for (int n = 0; n < x.size(); ++n) {
      x[n] *= vkern_eig(c, 0, n);
      y[n] *= vkern_eig(c, 1, n);
    }
  }
  void v0_inverse(VecXc& x, VecXc& y) const {
    for (int n = 0; n < x.size(); ++n) {
      x[n] /= vkern_eig(c, 0, n);
      y[n] /= vkern_eig(c, 1, n);
    }
  }

  /// Flat-arc hyper-singular operator, exact closed form:
  ///   N0[e_0] = -pi vkern_log e_0,
  ///   N0[e_n] = -pi vkern_log ( cos(theta) U_{n-1} + n e_n ),  n >= 1.
  VecXc n0(const VecXc& in) const {
    const int m = static_cast<int>(in.size());
    VecXc out = VecXc::Zero(m);
    const double f = -pi * c.vkern_log;
    out[0] += f * in[0];
    for (int n = 1; n < m; ++n) {
      VecX u = basis::chebyshev_u_coeffs(n, m);
      VecXc cu = basis::cos_multiply(u.cast<Complex>());
      for (int j = 0; j < m; ++j) out[j] += f * in[n] * cu[j];
      out[n] += f * double(n) * in[n];
    }
    return out;
  }

  /// Flat-arc composition N0 S0:
  ///   J0[e_0] = diag(flat_eig_a, flat_eig_b) e_0, per component;
  ///   J0[e_n] = flat_cluster ( cos(theta) U_{n-1}/n + e_n ), n >= 1.
  void j0(VecXc& x, VecXc& y) const {
    const int m = static_cast<int>(x.size());
    VecXc ox = VecXc::Zero(m), oy = VecXc::Zero(m);
    ox[0] = c.flat_eig_a * x[0];
    oy[0] = c.flat_eig_b * y[0];
    for (int n = 1; n < m; ++n) {
      VecX u = basis::chebyshev_u_coeffs(n, m);
      VecXc cu = basis::cos_multiply(u.cast<Complex>());
      for (int j = 0; j < m; ++j) {
        Complex w = c.flat_cluster * cu[j] / double(n);
        ox[j] += w * x[n];
        oy[j] += w * y[n];
      }
      ox[n] += c.flat_cluster * x[n];
      oy[n] += c.flat_cluster * y[n];
    }
    x = ox;
    y = oy;
  }

  /// Exact inverse of the flat-arc composition:
  ///   J0^{-1} = -(pi^2 vkern_log^2)^{-1} S0^{-1} C V0 T0.
  void j0_inverse(VecXc& x, VecXc& y) const {
    const double scale = -1.0 / (pi * pi * c.vkern_log * c.vkern_log);
    auto run = [&](VecXc& v, int comp) {
      VecXc t = basis::t0_map(v);                                    // degree + 1
      for (int n = 0; n < t.size(); ++n) t[n] *= vkern_eig(c, comp, n);
      VecXc u = basis::c_map(t);                                     // degree - 1
      for (int n = 0; n < v.size(); ++n) {
        Complex val = (n < u.size()) ? u[n] : Complex(0.0, 0.0);
        v[n] = scale * val / symm_eig(c, comp, n);
      }
    };
    run(x, 0);
    run(y, 1);
  }
};

}  // namespace elastocald
