#pragma once

// Scattering solves: restarted GMRES with modified Gram-Schmidt, incident
// fields, Dirichlet/Neumann boundary solves on closed curves and arcs (plain
// and Calderon-preconditioned), and off-surface field evaluation.

#include <functional>
#include <optional>
#include <variant>

#include "elastocald/closed_ops.hpp"
#include "elastocald/open_ops.hpp"

namespace elastocald {

// ---------------------------------------------------------------------------
// GMRES

struct GmresResult {
  VecXc x;
  int iterations = 0;
  std::vector<double> residuals;  // relative residual history
  bool converged = false;
};

/// Restarted GMRES with modified Gram-Schmidt. Deterministic: fixed
/// sequential reduction order.
inline GmresResult gmres(const std::function<VecXc(const VecXc&)>& apply, const VecXc& rhs,
                         double tol = 1e-8, int restart = 200, int max_iter = 2000) {
  const auto n = rhs.size();
  GmresResult out;
  out.x = VecXc::Zero(n);
  const double bnorm = rhs.norm();
  if (bnorm == 0.0) {
    out.converged = true;
    return out;
  }
  VecXc r = rhs;
  double rnorm = bnorm;
  out.residuals.push_back(1.0);
  while (out.iterations < max_iter) {
    const int kmax = std::min<int>(restart, max_iter - out.iterations);
    std::vector<VecXc> basis;
    basis.reserve(kmax + 1);
    basis.push_back(r / rnorm);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(kmax + 1, kmax);
    VecXc g = VecXc::Zero(kmax + 1);
    g[0] = rnorm;
    std::vector<Complex> cs(kmax), sn(kmax);
    int k = 0;
    bool breakdown = false;
    for (; k < kmax; ++k) {
      VecXc w = apply(basis[k]);
      for (int i = 0; i <= k; ++i) {
        h(i, k) = basis[i].dot(w);  // conjugate dot, fixed order
        w -= h(i, k) * basis[i];
      }
      h(k + 1, k) = w.norm();
      if (std::abs(h(k + 1, k)) < 1e-300) {
        breakdown = true;
      } else {
        basis.push_back(w / h(k + 1, k));
      }
      // Givens rotations
      for (int i = 0; i < k; ++i) {
        Complex t = std::conj(cs[i]) * h(i, k) + std::conj(sn[i]) * h(i + 1, k);
        h(i + 1, k) = -sn[i] * h(i, k) + cs[i] * h(i + 1, k);
        h(i, k) = t;
      }
      double denom = std::sqrt(std::norm(h(k, k)) + std::norm(h(k + 1, k)));
      cs[k] = h(k, k) / denom;
      sn[k] = h(k + 1, k) / denom;
      h(k, k) = std::conj(cs[k]) * h(k, k) + std::conj(sn[k]) * h(k + 1, k);
      h(k + 1, k) = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = std::conj(cs[k]) * g[k];
      ++out.iterations;
      double rel = std::abs(g[k + 1]) / bnorm;
      out.residuals.push_back(rel);
      if (rel < tol || breakdown) {
        ++k;
        break;
      }
    }
    // solve the triangular system and update
    VecXc yk = VecXc::Zero(k);
    for (int i = k - 1; i >= 0; --i) {
      Complex s = g[i];
      for (int j = i + 1; j < k; ++j) s -= h(i, j) * yk[j];
      yk[i] = s / h(i, i);
    }
    for (int i = 0; i < k; ++i) out.x += yk[i] * basis[i];
    r = rhs - apply(out.x);
    rnorm = r.norm();
    if (rnorm / bnorm < tol) {
      out.converged = true;
      return out;
    }
    if (breakdown) return out;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Incident fields

struct IncidentField {
  enum class Kind { plane_p, plane_s, point_source } kind = Kind::plane_p;
  Vec2 direction{1.0, 0.0};  // unit propagation direction for plane waves
  Vec2 source{0.0, 0.0};     // for point sources
  Vec2c strength{1.0, 0.0};  // point-source vector amplitude

  Vec2c value(const Material& m, const Vec2& x) const {
    switch (kind) {
      case Kind::plane_p: {
        Complex ph = std::exp(iu * m.kp() * direction.dot(x));
        return direction.cast<Complex>() * ph;
      }
      case Kind::plane_s: {
        Complex ph = std::exp(iu * m.ks() * direction.dot(x));
        return perp(direction).cast<Complex>() * ph;
      }
      case Kind::point_source: {
        Kernels k(m);
        return k.fundamental(x, source) * strength;
      }
    }
    return Vec2c::Zero();
  }

  /// Generalized traction of the incident field at x with normal nu.
  Vec2c traction(const Material& m, const Vec2& x, const Vec2& nu) const {
    switch (kind) {
      case Kind::plane_p:
      case Kind::plane_s: {
        const bool shear = kind == Kind::plane_s;
        const double kk = shear ? m.ks() : m.kp();
        const Vec2 d = direction;
        const Vec2 p = shear ? perp(d) : d;
        Complex ph = iu * kk * std::exp(iu * kk * d.dot(x));
        // grad u = i k d p^T e^{...}; div u = i k (d.p); curl u = i k (d2 p1 - d1 p2)
        Complex divu = ph * d.dot(p);
        Complex curlu = ph * (d.y() * p.x() - d.x() * p.y());
        Vec2c dnu = ph * nu.dot(d) * p.cast<Complex>();
        Vec2c out = (m.mu + m.mu_tilde) * dnu + m.lambda_tilde() * divu * nu.cast<Complex>() +
                    m.mu_tilde * curlu * perp(nu).cast<Complex>();
        return out;
      }
      case Kind::point_source: {
        Kernels k(m);
        return k.traction(x, source, nu) * strength;
      }
    }
    return Vec2c::Zero();
  }
};

// ---------------------------------------------------------------------------
// Boundary solves

struct SolveResult {
  VecXc density;                   // nodal density (weighted on arcs)
  int iterations = 0;
  std::vector<double> residuals;
  bool converged = false;
  bool dirichlet = true;
  Material material;
  std::optional<ClosedCurve> closed;
  std::optional<OpenArc> arc;
  int n = 0;  // node count
};

namespace detail {

inline GmresResult run_dense_gmres(const MatXc& a, const VecXc& rhs, double tol, int max_iter) {
  return gmres([&](const VecXc& v) { return VecXc(a * v); }, rhs, tol, 200, max_iter);
}

}  // namespace detail

/// Dirichlet solve: single-layer equation S phi = F (closed) or the weighted
/// arc equation; with precondition=true the hyper-singular composition is
/// applied on the left.
inline SolveResult solve_dirichlet(const Material& m, const Geometry& geom, int n,
                                   const std::function<Vec2c(const Vec2&)>& bc_value,
                                   bool precondition = false, double tol = 1e-8,
                                   int max_iter = 2000) {
  require_admissible(m);
  Kernels k(m);
  SolveResult out;
  out.material = m;
  out.dirichlet = true;
  out.n = n;
  MatXc lhs;
  VecXc rhs(2 * n);
  if (std::holds_alternative<ClosedCurve>(geom)) {
    const auto& c = std::get<ClosedCurve>(geom);
    out.closed = c;
    ClosedNodes nd = closed_nodes(c, n);
    for (int i = 0; i < n; ++i) rhs.segment<2>(2 * i) = bc_value(nd.x[i]);
    lhs = assemble_single_layer(k, c, n).mat;
    if (precondition) {
      MatXc nm = assemble_hypersingular(k, c, n).mat;
      rhs = nm * rhs;
      lhs = nm * lhs;
    }
  } else {
    const auto& a = std::get<OpenArc>(geom);
    out.arc = a;
    ArcNodes nd = arc_nodes(a, n);
    for (int i = 0; i < n; ++i) rhs.segment<2>(2 * i) = bc_value(nd.x[i]);
    lhs = assemble_weighted_single_layer(k, a, n).mat;
    if (precondition) {
      MatXc nm = assemble_weighted_hypersingular(k, a, n).mat;
      rhs = nm * rhs;
      lhs = nm * lhs;
    }
  }
  GmresResult g = detail::run_dense_gmres(lhs, rhs, tol, max_iter);
  if (!g.converged)
    throw std::runtime_error("solve_dirichlet: GMRES stagnation after " +
                             std::to_string(g.iterations) + " iterations");
  out.density = g.x;
  out.iterations = g.iterations;
  out.residuals = g.residuals;
  out.converged = g.converged;
  return out;
}

/// Neumann solve: hyper-singular equation N psi = G with the double-layer
/// representation; preconditioning composes the single layer on the left.
inline SolveResult solve_neumann(const Material& m, const Geometry& geom, int n,
                                 const std::function<Vec2c(const Vec2&, const Vec2&)>& bc_traction,
                                 bool precondition = false, double tol = 1e-8,
                                 int max_iter = 2000) {
  require_admissible(m);
  Kernels k(m);
  SolveResult out;
  out.material = m;
  out.dirichlet = false;
  out.n = n;
  MatXc lhs;
  VecXc rhs(2 * n);
  if (std::holds_alternative<ClosedCurve>(geom)) {
    const auto& c = std::get<ClosedCurve>(geom);
    out.closed = c;
    ClosedNodes nd = closed_nodes(c, n);
    for (int i = 0; i < n; ++i) rhs.segment<2>(2 * i) = bc_traction(nd.x[i], nd.normal[i]);
    lhs = assemble_hypersingular(k, c, n).mat;
    if (precondition) {
      MatXc sm = assemble_single_layer(k, c, n).mat;
      rhs = sm * rhs;
      lhs = sm * lhs;
    }
  } else {
    const auto& a = std::get<OpenArc>(geom);
    out.arc = a;
    ArcNodes nd = arc_nodes(a, n);
    for (int i = 0; i < n; ++i) rhs.segment<2>(2 * i) = bc_traction(nd.x[i], nd.normal[i]);
    lhs = assemble_weighted_hypersingular(k, a, n).mat;
    if (precondition) {
      MatXc sm = assemble_weighted_single_layer(k, a, n).mat;
      rhs = sm * rhs;
      lhs = sm * lhs;
    }
  }
  GmresResult g = detail::run_dense_gmres(lhs, rhs, tol, max_iter);
  if (!g.converged)
    throw std::runtime_error("solve_neumann: GMRES stagnation after " +
                             std::to_string(g.iterations) + " iterations");
  out.density = g.x;
  out.iterations = g.iterations;
  out.residuals = g.residuals;
  out.converged = g.converged;
  return out;
}

/// Layer-potential evaluation away from the boundary (plain quadrature; the
/// kernel is smooth at distance >= 1e-3 x diameter, which is enforced).
inline std::vector<Vec2c> evaluate_field(const SolveResult& res, const std::vector<Vec2>& points) {
  Kernels k(res.material);
  std::vector<Vec2c> out(points.size(), Vec2c::Zero());
  // geometry nodes and diameter
  std::vector<Vec2> xs;
  std::vector<Vec2> nus;
  std::vector<double> wts;  // full quadrature weights including measure
  std::vector<double> sins;
  if (res.closed) {
    ClosedNodes nd = closed_nodes(*res.closed, res.n);
    double w = 2.0 * pi / res.n;
    for (int j = 0; j < res.n; ++j) {
      xs.push_back(nd.x[j]);
      nus.push_back(nd.normal[j]);
      wts.push_back(w * nd.speed[j]);
      sins.push_back(1.0);
    }
  } else {
    ArcNodes nd = arc_nodes(*res.arc, res.n);
    double w = pi / res.n;
    for (int j = 0; j < res.n; ++j) {
      xs.push_back(nd.x[j]);
      nus.push_back(nd.normal[j]);
      // Dirichlet arc density is weighted: measure J dtheta; Neumann carries
      // the vanishing weight: J sin^2 dtheta.
      wts.push_back(res.dirichlet ? w * nd.jac[j] : w * nd.jac[j] * nd.sin_theta[j] * nd.sin_theta[j]);
      sins.push_back(nd.sin_theta[j]);
    }
  }
  double diam = 0.0;
  for (size_t a = 0; a < xs.size(); ++a)
    for (size_t b = a + 1; b < xs.size(); ++b) diam = std::max(diam, (xs[a] - xs[b]).norm());
  for (size_t p = 0; p < points.size(); ++p) {
    double dist = 1e300;
    for (const auto& x : xs) dist = std::min(dist, (points[p] - x).norm());
    if (dist < 1e-3 * diam)
      throw std::invalid_argument("evaluate_field: point too close to the boundary");
    Vec2c acc = Vec2c::Zero();
    for (size_t j = 0; j < xs.size(); ++j) {
      Vec2c dens = res.density.segment<2>(2 * j);
      if (res.dirichlet)
        acc += wts[j] * (k.fundamental(points[p], xs[j]) * dens);
      else
        acc += wts[j] * (k.dlp(points[p], xs[j], nus[j]) * dens);
    }
    out[p] = acc;
  }
  return out;
}

}  // namespace elastocald
