#pragma once

// Weighted open-arc operators in the cosine variable. The endpoint weight is
// absorbed into the change of variables, so all assemblies run on interior
// cosine nodes with the ln|cos t - cos p| product rule for the singular part
// and the midpoint rule for the smooth remainder.

#include "elastocald/closed_ops.hpp"
#include "elastocald/cosine_basis.hpp"
#include "elastocald/geometry.hpp"
#include "elastocald/kernels.hpp"
#include "elastocald/quadrature.hpp"

namespace elastocald {

namespace detail {

struct ArcKernelSpec {
  std::function<Mat2c(int, int)> value;
  std::function<Mat2c(int, int)> log_mat;
  std::function<Mat2c(int)> diag_smooth;
  std::function<Mat2c(int)> diag_log;
  VecX col_weight;  // density weights per column (Jacobian factors etc.)
};

inline MatXc assemble_arc(const ArcNodes& nd, const ArcKernelSpec& k) {
  const int m = static_cast<int>(nd.theta.size());
  Eigen::MatrixXd w = arc_log_weights(m);
  const double wmid = pi / m;
  MatXc out(2 * m, 2 * m);
  parallel_for(m, [&](int i) {
    for (int j = 0; j < m; ++j) {
      Mat2c block;
      if (i == j) {
        Mat2c lm = k.diag_log(i);
        Mat2c p2 = k.diag_smooth(i) + lm * std::log(nd.jac[i]);
        block = w(i, i) * lm + wmid * p2;
      } else {
        Mat2c lm = k.log_mat(i, j);
        double dt = std::abs(nd.t[i] - nd.t[j]);
        Mat2c p2 = k.value(i, j) - lm * std::log(dt);
        block = w(i, j) * lm + wmid * p2;
      }
      out.block<2, 2>(2 * i, 2 * j) = block * k.col_weight[j];
    }
  });
  return out;
}

/// Nodal matrix of a coefficient map (applied per vector component).
inline MatXc nodal_matrix(int m, const std::function<void(VecXc&, VecXc&)>& coeff_map) {
  VecX th = cosine_nodes(m);
  // forward transform to plain cosine coefficients
  Eigen::MatrixXd f(m, m), e(m, m);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j) {
      f(k, j) = (k == 0 ? 1.0 : 2.0) / m * std::cos(k * th[j]);
      e(j, k) = std::cos(k * th[j]);
    }
  MatXc out(2 * m, 2 * m);
  for (int j = 0; j < m; ++j)
    for (int comp = 0; comp < 2; ++comp) {
      VecXc x = VecXc::Zero(m), y = VecXc::Zero(m);
      for (int k = 0; k < m; ++k) {
        Complex coef = f(k, j);
        if (comp == 0) x[k] = coef;
        else y[k] = coef;
      }
      coeff_map(x, y);
      VecXc nx = e * x.head(m), ny = e * y.head(m);
      for (int i = 0; i < m; ++i) {
        out(2 * i, 2 * j + comp) = nx[i];
        out(2 * i + 1, 2 * j + comp) = ny[i];
      }
    }
  return out;
}

/// Nodal matrix of a scalar degree-raising map (tangential-product op). The
/// degree-M output mode vanishes identically on the node set, so evaluation
/// at the nodes truncates cleanly.
inline MatXc nodal_matrix_scalar(int m, const std::function<VecXc(const VecXc&)>& coeff_map) {
  VecX th = cosine_nodes(m);
  Eigen::MatrixXd f(m, m);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j) f(k, j) = (k == 0 ? 1.0 : 2.0) / m * std::cos(k * th[j]);
  MatXc out = MatXc::Zero(2 * m, 2 * m);
  for (int j = 0; j < m; ++j) {
    VecXc c = VecXc::Zero(m);
    for (int k = 0; k < m; ++k) c[k] = f(k, j);
    VecXc mapped = coeff_map(c);
    for (int i = 0; i < m; ++i) {
      Complex v = 0.0;
      for (int k = 0; k < mapped.size(); ++k) v += mapped[k] * std::cos(k * th[i]);
      out(2 * i, 2 * j) = v;
      out(2 * i + 1, 2 * j + 1) = v;
    }
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------

/// Weighted single-layer operator on the arc.
inline OperatorMatrix assemble_weighted_single_layer(const Kernels& k, const OpenArc& arc, int m) {
  require_admissible(k.material());
  if (!(k.material().omega > 0)) throw std::invalid_argument("dynamic assembly needs omega > 0");
  ArcNodes nd = arc_nodes(arc, m);
  const auto& cs = k.consts();
  detail::ArcKernelSpec spec{
      [&](int i, int j) { return k.fundamental(nd.x[i], nd.x[j]); },
      [&](int i, int j) { return k.fundamental_log(nd.x[i], nd.x[j]); },
      [&](int i) { return k.fundamental_smooth_diag(nd.tangent[i]); },
      [&](int) { return Mat2c(Complex(-cs.kelvin_log) * Mat2c::Identity()); },
      nd.jac};
  return {detail::assemble_arc(nd, spec), {m, k.material().omega, arc.spec, k.material()}};
}

/// Static-kernel variant (reference for small-frequency limits and tests).
inline OperatorMatrix assemble_weighted_single_layer_static(const Kernels& k, const OpenArc& arc,
                                                            int m) {
  ArcNodes nd = arc_nodes(arc, m);
  const auto& cs = k.consts();
  detail::ArcKernelSpec spec{
      [&](int i, int j) { return k.fundamental_static(nd.x[i], nd.x[j]); },
      [&](int, int) { return Mat2c(Complex(-cs.kelvin_log) * Mat2c::Identity()); },
      [&](int i) {
        return Mat2c(Complex(cs.kelvin_dyad) *
                     (nd.tangent[i] * nd.tangent[i].transpose()).cast<Complex>());
      },
      [&](int) { return Mat2c(Complex(-cs.kelvin_log) * Mat2c::Identity()); },
      nd.jac};
  return {detail::assemble_arc(nd, spec), {m, 0.0, arc.spec, k.material()}};
}

/// Principal-value auxiliary operator (no Jacobian factor by construction:
/// the change of variables cancels it against the weight).
inline OperatorMatrix assemble_weighted_vkern(const Kernels& k, const OpenArc& arc, int m) {
  require_admissible(k.material());
  ArcNodes nd = arc_nodes(arc, m);
  detail::ArcKernelSpec spec{
      [&](int i, int j) { return k.vkern(nd.x[i], nd.x[j]); },
      [&](int i, int j) { return k.vkern_log(nd.x[i], nd.x[j]); },
      [&](int i) { return k.vkern_smooth_diag(nd.normal[i]); },
      [&](int i) {
        const double f = k.material().mu + k.material().mu_tilde;
        double la0 = -k.consts().kelvin_log;
        return Mat2c((f * f * Complex(-la0) + 2.0 * f * Complex(-1.0 / (2.0 * pi))) *
                     Mat2c::Identity());
      },
      VecX::Ones(m)};
  return {detail::assemble_arc(nd, spec), {m, k.material().omega, arc.spec, k.material()}};
}

/// Weighted hyper-singular operator: weakly singular zeroth-order part plus
/// gradient-difference parts plus the principal-value block
/// Z0^{-1} D0 V T0. The gradient-difference part acting on the density
/// carries the Jacobian-weighted sin^2 measure of the parameterization.
inline OperatorMatrix assemble_weighted_hypersingular(const Kernels& k, const OpenArc& arc, int m) {
  require_admissible(k.material());
  if (!(k.material().omega > 0)) throw std::invalid_argument("dynamic assembly needs omega > 0");
  ArcNodes nd = arc_nodes(arc, m);
  const auto rd = k.radial_cache().diag();
  const double f = k.material().mu + k.material().mu_tilde;

  VecX w_g1(m);
  for (int j = 0; j < m; ++j) w_g1[j] = nd.sin_theta[j] * nd.sin_theta[j] * nd.jac[j];

  detail::ArcKernelSpec g1_spec{
      [&](int i, int j) { return k.hyper_zero(nd.x[i], nd.x[j], nd.normal[i], nd.normal[j]); },
      [&](int i, int j) { return k.hyper_zero_log(nd.x[i], nd.x[j], nd.normal[i], nd.normal[j]); },
      [&](int i) { return k.hyper_zero_from(rd.gs0, rd.gp0, nd.normal[i], nd.normal[i]); },
      [&](int i) {
        return k.hyper_zero_from(Complex(-1.0 / (2.0 * pi)), Complex(-1.0 / (2.0 * pi)),
                                 nd.normal[i], nd.normal[i]);
      },
      w_g1};
  MatXc g1 = detail::assemble_arc(nd, g1_spec);

  detail::ArcKernelSpec r1_spec{
      [&](int i, int j) { return k.grad_row(nd.x[i], nd.x[j], nd.normal[i]); },
      [&](int i, int j) { return k.grad_row_log(nd.x[i], nd.x[j], nd.normal[i]); },
      [&](int) { return Mat2c(Mat2c::Zero()); }, [&](int) { return Mat2c(Mat2c::Zero()); },
      VecX::Ones(m)};
  MatXc r1 = -f * detail::assemble_arc(nd, r1_spec);

  detail::ArcKernelSpec r2_spec{
      [&](int i, int j) { return k.grad_col(nd.x[i], nd.x[j], nd.normal[j]); },
      [&](int i, int j) { return k.grad_col_log(nd.x[i], nd.x[j], nd.normal[j]); },
      [&](int) { return Mat2c(Mat2c::Zero()); }, [&](int) { return Mat2c(Mat2c::Zero()); },
      w_g1};
  MatXc r2 = -f * detail::assemble_arc(nd, r2_spec);

  MatXc vw = assemble_weighted_vkern(k, arc, m).mat;
  MatXc t0 = detail::nodal_matrix_scalar(m, [](const VecXc& c) { return basis::t0_map(c); });
  MatXc d0 = detail::nodal_matrix_scalar(m, [](const VecXc& c) { return basis::d0_map(c); });
  MatXc zinv = MatXc::Zero(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    zinv(2 * i, 2 * i) = 1.0 / nd.jac[i];
    zinv(2 * i + 1, 2 * i + 1) = 1.0 / nd.jac[i];
  }

  MatXc total = g1 + r1 * t0 + zinv * d0 * r2 + zinv * d0 * vw * t0;
  return {std::move(total), {m, k.material().omega, arc.spec, k.material()}};
}

// ---------------------------------------------------------------------------

struct ArcCalderon {
  OperatorMatrix jw;    // Nw Sw
  OperatorMatrix j0j;   // Z0^{-1} J0 Z0 (flat reference conjugated by the Jacobian)
  OperatorMatrix comp;  // jw - j0j, compact part
};

inline MatXc flat_j0_nodal(const Material& m, int nodes) {
  FlatOps ops(m);
  return detail::nodal_matrix(nodes, [&](VecXc& x, VecXc& y) { ops.j0(x, y); });
}

inline ArcCalderon compose_weighted_calderon(const Kernels& k, const OpenArc& arc, int m) {
  OperatorMatrix sw = assemble_weighted_single_layer(k, arc, m);
  OperatorMatrix nw = assemble_weighted_hypersingular(k, arc, m);
  ArcNodes nd = arc_nodes(arc, m);
  MatXc j0 = flat_j0_nodal(k.material(), m);
  MatXc z = MatXc::Zero(2 * m, 2 * m), zinv = MatXc::Zero(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    z(2 * i, 2 * i) = nd.jac[i];
    z(2 * i + 1, 2 * i + 1) = nd.jac[i];
    zinv(2 * i, 2 * i) = 1.0 / nd.jac[i];
    zinv(2 * i + 1, 2 * i + 1) = 1.0 / nd.jac[i];
  }
  ArcCalderon out;
  out.jw = {MatXc(nw.mat * sw.mat), sw.meta};
  out.j0j = {MatXc(zinv * j0 * z), sw.meta};
  out.comp = {MatXc(out.jw.mat - out.j0j.mat), sw.meta};
  return out;
}

/// Multiplication by the Jacobian in node space, returned as a series.
inline CosineSeries jacobian_multiply(const OpenArc& arc, const CosineSeries& g) {
  int m = g.size();
  ArcNodes nd = arc_nodes(arc, m);
  std::vector<Vec2c> vals = dct_inverse(g);
  for (int j = 0; j < m; ++j) vals[j] *= nd.jac[j];
  return dct_forward(vals);
}

}  // namespace elastocald
