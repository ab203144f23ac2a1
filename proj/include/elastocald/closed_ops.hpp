#pragma once

// Nystrom discretization of the layer operators on smooth closed curves and
// their Calderon compositions. Log-singular parts go through the product
// rule for ln(4 sin^2), the Cauchy part of the double layer through the
// cotangent principal-value rule, and tangential derivatives through
// spectral differentiation of the trigonometric interpolant.

#include <functional>
#include <random>
#include <string>

#include "elastocald/geometry.hpp"
#include "elastocald/kernels.hpp"
#include "elastocald/quadrature.hpp"

namespace elastocald {

struct OperatorMeta {
  int n = 0;
  double omega = 0.0;
  std::string curve;
  Material material;
};

struct OperatorMatrix {
  MatXc mat;
  OperatorMeta meta;
};

namespace detail {

struct WeaklySingularSpec {
  std::function<Mat2c(int, int)> value;     // kernel at (x_i, x_j), i != j
  std::function<Mat2c(int, int)> log_mat;   // its coefficient of ln r
  std::function<Mat2c(int)> diag_smooth;    // lim (value - log_mat ln r)
  std::function<Mat2c(int)> diag_log;       // lim of log_mat
};

/// Product-rule assembly of a weakly singular operator, arc measure included.
inline MatXc assemble_weakly_singular(const ClosedNodes& nd, const WeaklySingularSpec& k) {
  const int n = static_cast<int>(nd.s.size());
  const VecX R = log_rule_weights(n);
  const double w = 2.0 * pi / n;
  MatXc out(2 * n, 2 * n);
  parallel_for(n, [&](int i) {
    for (int j = 0; j < n; ++j) {
      Mat2c block;
      if (i == j) {
        Mat2c lm = k.diag_log(i);
        Mat2c p2 = k.diag_smooth(i) + lm * std::log(nd.speed[i]);
        block = (R[0] * 0.5) * lm + w * p2;
      } else {
        Mat2c lm = k.log_mat(i, j);
        double lsin = std::log(4.0 * std::pow(std::sin(0.5 * (nd.s[i] - nd.s[j])), 2));
        Mat2c p2 = k.value(i, j) - 0.5 * lsin * lm;
        block = (R[(i - j + n) % n] * 0.5) * lm + w * p2;
      }
      out.block<2, 2>(2 * i, 2 * j) = block * nd.speed[j];
    }
  });
  return out;
}

/// Block-diagonal embedding of the tangential derivative d/ds scaled by 1/|x'|.
inline MatXc tangential_derivative(const ClosedNodes& nd) {
  const int n = static_cast<int>(nd.s.size());
  Eigen::MatrixXd fd = fourier_diff_matrix(n);
  MatXc out = MatXc::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex v = fd(i, j) / nd.speed[i];
      out(2 * i, 2 * j) = v;
      out(2 * i + 1, 2 * j + 1) = v;
    }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline OperatorMatrix assemble_single_layer(const Kernels& k, const ClosedCurve& c, int n) {
  require_admissible(k.material());
  if (!(k.material().omega > 0)) throw std::invalid_argument("dynamic assembly needs omega > 0");
  ClosedNodes nd = closed_nodes(c, n);
  const auto& cs = k.consts();
  detail::WeaklySingularSpec spec{
      [&](int i, int j) { return k.fundamental(nd.x[i], nd.x[j]); },
      [&](int i, int j) { return k.fundamental_log(nd.x[i], nd.x[j]); },
      [&](int i) { return k.fundamental_smooth_diag(nd.tangent[i]); },
      [&](int) { return Mat2c(Complex(-cs.kelvin_log) * Mat2c::Identity()); }};
  return {detail::assemble_weakly_singular(nd, spec),
          {n, k.material().omega, c.spec, k.material()}};
}

inline OperatorMatrix assemble_single_layer_static(const Kernels& k, const ClosedCurve& c, int n) {
  ClosedNodes nd = closed_nodes(c, n);
  const auto& cs = k.consts();
  detail::WeaklySingularSpec spec{
      [&](int i, int j) { return k.fundamental_static(nd.x[i], nd.x[j]); },
      [&](int i, int j) {
        (void)i;
        (void)j;
        return Mat2c(Complex(-cs.kelvin_log) * Mat2c::Identity());
      },
      [&](int i) {
        return Mat2c(Complex(cs.kelvin_dyad) *
                     (nd.tangent[i] * nd.tangent[i].transpose()).cast<Complex>());
      },
      [&](int) { return Mat2c(Complex(-cs.kelvin_log) * Mat2c::Identity()); }};
  return {detail::assemble_weakly_singular(nd, spec), {n, 0.0, c.spec, k.material()}};
}

namespace detail {

inline MatXc assemble_double_layer_impl(const Kernels& k, const ClosedCurve& c, int n, bool star,
                                        bool dynamic) {
  ClosedNodes nd = closed_nodes(c, n);
  const auto& cs = k.consts();
  const double two_ct = 2.0 * cs.dl_jump_gen;
  const Mat2c a90 = rot90().cast<Complex>();

  WeaklySingularSpec spec;
  spec.value = [&, star, dynamic](int i, int j) {
    const Vec2& nu = star ? nd.normal[i] : nd.normal[j];
    Vec2 d = nd.x[i] - nd.x[j];
    Mat2c kd;
    if (star)
      kd = dynamic ? k.traction(nd.x[i], nd.x[j], nu) : k.traction_static(nd.x[i], nd.x[j], nu);
    else
      kd = dynamic ? k.dlp(nd.x[i], nd.x[j], nu) : k.dlp_static(nd.x[i], nd.x[j], nu);
    return Mat2c(kd - two_ct * Kernels::cauchy_part(d, nu));
  };
  spec.log_mat = [&, star, dynamic](int i, int j) {
    if (!dynamic) return Mat2c(Mat2c::Zero());
    const Vec2& nu = star ? nd.normal[i] : nd.normal[j];
    return star ? k.traction_log(nd.x[i], nd.x[j], nu) : k.dlp_log(nd.x[i], nd.x[j], nu);
  };
  spec.diag_smooth = [&](int i) { return k.dlp_smooth_diag(nd.curvature[i], nd.tangent[i]); };
  spec.diag_log = [&](int) { return Mat2c(Mat2c::Zero()); };

  MatXc out = assemble_weakly_singular(nd, spec);

  // Cauchy part: 2 ct K1 integrates to -(ct/pi) A [ PV cot part + remainder ].
  const double w = 2.0 * pi / n;
  const VecX hw = cot_pv_weights(n);
  const Complex pv_fac = Complex(-two_ct / (2.0 * pi));
  parallel_for(n, [&](int i) {
    for (int j = 0; j < n; ++j) {
      double kap_c;
      if (i == j) {
        // kappa_c(s,s) = -/+ (x'.x'') / (2 |x'|^3)
        double dd = nd.tangent[i].dot(nd.second[i]) / (nd.speed[i] * nd.speed[i]);
        kap_c = (star ? 0.5 : -0.5) * dd;
      } else {
        Vec2 d = nd.x[i] - nd.x[j];
        double r2 = d.squaredNorm();
        if (star) {
          double kap = nd.tangent[i].dot(d) / r2;
          kap_c = kap - 0.5 / std::tan(0.5 * (nd.s[i] - nd.s[j])) / nd.speed[i];
        } else {
          double kap = nd.tangent[j].dot(d) / r2;
          kap_c = kap - 0.5 / std::tan(0.5 * (nd.s[i] - nd.s[j])) / nd.speed[j];
        }
      }
      double hfac = star ? nd.speed[j] / nd.speed[i] : 1.0;
      Complex coef = pv_fac * (w * kap_c * nd.speed[j] + 0.5 * hw[(j - i + n) % n] * hfac);
      out.block<2, 2>(2 * i, 2 * j) += coef * a90;
    }
  });
  return out;
}

}  // namespace detail

inline OperatorMatrix assemble_double_layer(const Kernels& k, const ClosedCurve& c, int n) {
  require_admissible(k.material());
  if (!(k.material().omega > 0)) throw std::invalid_argument("dynamic assembly needs omega > 0");
  return {detail::assemble_double_layer_impl(k, c, n, false, true),
          {n, k.material().omega, c.spec, k.material()}};
}
inline OperatorMatrix assemble_double_layer_transpose(const Kernels& k, const ClosedCurve& c, int n) {
  require_admissible(k.material());
  if (!(k.material().omega > 0)) throw std::invalid_argument("dynamic assembly needs omega > 0");
  return {detail::assemble_double_layer_impl(k, c, n, true, true),
          {n, k.material().omega, c.spec, k.material()}};
}
inline OperatorMatrix assemble_double_layer_static(const Kernels& k, const ClosedCurve& c, int n,
                                                   bool transpose = false) {
  return {detail::assemble_double_layer_impl(k, c, n, transpose, false),
          {n, 0.0, c.spec, k.material()}};
}

/// Hyper-singular operator via the regularized five-part form: a weakly
/// singular zeroth-order part plus tangential-derivative sandwiches.
inline OperatorMatrix assemble_hypersingular(const Kernels& k, const ClosedCurve& c, int n) {
  require_admissible(k.material());
  if (!(k.material().omega > 0)) throw std::invalid_argument("dynamic assembly needs omega > 0");
  ClosedNodes nd = closed_nodes(c, n);
  const Material& m = k.material();
  const double f = m.mu + m.mu_tilde;
  const auto rd = k.radial_cache().diag();

  detail::WeaklySingularSpec zero_spec{
      [&](int i, int j) { return k.hyper_zero(nd.x[i], nd.x[j], nd.normal[i], nd.normal[j]); },
      [&](int i, int j) { return k.hyper_zero_log(nd.x[i], nd.x[j], nd.normal[i], nd.normal[j]); },
      [&](int i) { return k.hyper_zero_from(rd.gs0, rd.gp0, nd.normal[i], nd.normal[i]); },
      [&](int i) {
        return k.hyper_zero_from(Complex(-1.0 / (2.0 * pi)), Complex(-1.0 / (2.0 * pi)),
                                 nd.normal[i], nd.normal[i]);
      }};
  MatXc t1 = detail::assemble_weakly_singular(nd, zero_spec);

  detail::WeaklySingularSpec apa_spec{
      [&](int i, int j) { return k.apa(nd.x[i], nd.x[j]); },
      [&](int i, int j) { return k.apa_log(nd.x[i], nd.x[j]); },
      [&](int i) { return k.apa_smooth_diag(nd.normal[i]); },
      [&](int) { return Mat2c(Complex(k.consts().kelvin_log) * Mat2c::Identity()); }};
  MatXc m_apa = detail::assemble_weakly_singular(nd, apa_spec);

  detail::WeaklySingularSpec gss_spec{
      [&](int i, int j) {
        return Mat2c(k.radial_cache().eval((nd.x[i] - nd.x[j]).norm()).gs * Mat2c::Identity());
      },
      [&](int i, int j) {
        return Mat2c(Complex(k.radial_cache().eval((nd.x[i] - nd.x[j]).norm()).lgs) *
                     Mat2c::Identity());
      },
      [&](int) { return Mat2c(rd.gs0 * Mat2c::Identity()); },
      [&](int) { return Mat2c(Complex(-1.0 / (2.0 * pi)) * Mat2c::Identity()); }};
  MatXc m_gss = detail::assemble_weakly_singular(nd, gss_spec);

  detail::WeaklySingularSpec r1_spec{
      [&](int i, int j) { return k.grad_row(nd.x[i], nd.x[j], nd.normal[i]); },
      [&](int i, int j) { return k.grad_row_log(nd.x[i], nd.x[j], nd.normal[i]); },
      [&](int) { return Mat2c(Mat2c::Zero()); }, [&](int) { return Mat2c(Mat2c::Zero()); }};
  MatXc m_r1 = detail::assemble_weakly_singular(nd, r1_spec);

  detail::WeaklySingularSpec r2_spec{
      [&](int i, int j) { return k.grad_col(nd.x[i], nd.x[j], nd.normal[j]); },
      [&](int i, int j) { return k.grad_col_log(nd.x[i], nd.x[j], nd.normal[j]); },
      [&](int) { return Mat2c(Mat2c::Zero()); }, [&](int) { return Mat2c(Mat2c::Zero()); }};
  MatXc m_r2 = detail::assemble_weakly_singular(nd, r2_spec);

  MatXc dt = detail::tangential_derivative(nd);
  MatXc total = t1 + f * f * dt * m_apa * dt + 2.0 * f * dt * m_gss * dt - f * m_r1 * dt -
                f * dt * m_r2;
  return {std::move(total), {n, m.omega, c.spec, m}};
}

/// Static hyper-singular operator through the tangential-derivative
/// regularization of the auxiliary kernel.
inline OperatorMatrix assemble_hypersingular_static(const Kernels& k, const ClosedCurve& c, int n) {
  ClosedNodes nd = closed_nodes(c, n);
  const auto& cs = k.consts();
  detail::WeaklySingularSpec spec{
      [&](int i, int j) { return k.vkern_static(nd.x[i], nd.x[j]); },
      [&](int i, int j) {
        (void)i;
        (void)j;
        return Mat2c(Complex(-cs.vkern_log) * Mat2c::Identity());
      },
      [&](int i) {
        return Mat2c(Complex(cs.vkern_dyad) *
                     (nd.tangent[i] * nd.tangent[i].transpose()).cast<Complex>());
      },
      [&](int) { return Mat2c(Complex(-cs.vkern_log) * Mat2c::Identity()); }};
  MatXc v0 = detail::assemble_weakly_singular(nd, spec);
  MatXc dt = detail::tangential_derivative(nd);
  return {MatXc(dt * v0 * dt), {n, 0.0, c.spec, k.material()}};
}

// ---------------------------------------------------------------------------

struct CalderonResult {
  OperatorMatrix ns;  // N S
  OperatorMatrix sn;  // S N
  double residual_ns = 0.0;  // max_f |NS f + f/4 - D*(D* f)| / |f|
  double residual_sn = 0.0;  // max_f |SN f + f/4 - D(D f)| / |f|
};

/// Random smooth density: Fourier modes up to degree 4 per component.
inline VecXc random_smooth_density(int n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  VecXc f = VecXc::Zero(2 * n);
  for (int c = 0; c < 2; ++c)
    for (int m = 0; m <= 4; ++m) {
      double a = g(rng), b = g(rng);
      for (int j = 0; j < n; ++j) {
        double s = 2.0 * pi * j / n;
        f[2 * j + c] += a * std::cos(m * s) + b * std::sin(m * s);
      }
    }
  return f;
}

inline CalderonResult calderon_compose(const Kernels& k, const ClosedCurve& c, int n,
                                       unsigned seed = 0, int densities = 10) {
  OperatorMatrix s = assemble_single_layer(k, c, n);
  OperatorMatrix d = assemble_double_layer(k, c, n);
  OperatorMatrix ds = assemble_double_layer_transpose(k, c, n);
  OperatorMatrix nn = assemble_hypersingular(k, c, n);
  if (s.mat.rows() != nn.mat.rows()) throw std::invalid_argument("dimension mismatch");
  CalderonResult out;
  out.ns = {MatXc(nn.mat * s.mat), s.meta};
  out.sn = {MatXc(s.mat * nn.mat), s.meta};
  std::mt19937 rng(seed);
  for (int t = 0; t < densities; ++t) {
    VecXc f = random_smooth_density(n, rng);
    VecXc r1 = out.ns.mat * f + 0.25 * f - ds.mat * (ds.mat * f);
    VecXc r2 = out.sn.mat * f + 0.25 * f - d.mat * (d.mat * f);
    out.residual_ns = std::max(out.residual_ns, r1.norm() / f.norm());
    out.residual_sn = std::max(out.residual_sn, r2.norm() / f.norm());
  }
  return out;
}

}  // namespace elastocald
