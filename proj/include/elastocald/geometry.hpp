#pragma once

// Smooth parameterized curves: closed (2 pi periodic) and open arcs on
// [-1, 1] with the cosine change of variable t = cos(theta). Built-ins carry
// analytic derivatives; sampled curves are interpolated (trigonometric for
// closed, Chebyshev for open).

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "elastocald/common.hpp"

namespace elastocald {

struct ClosedCurve {
  std::function<Vec2(double)> pos;  // s in [0, 2pi), counter-clockwise
  std::function<Vec2(double)> d1;
  std::function<Vec2(double)> d2;
  std::string spec;
};

struct OpenArc {
  std::function<Vec2(double)> pos;  // t in [-1, 1]
  std::function<Vec2(double)> d1;
  std::function<Vec2(double)> d2;
  std::string spec;
};

inline ClosedCurve make_circle(double r = 1.0) {
  return {[r](double s) { return Vec2(r * std::cos(s), r * std::sin(s)); },
          [r](double s) { return Vec2(-r * std::sin(s), r * std::cos(s)); },
          [r](double s) { return Vec2(-r * std::cos(s), -r * std::sin(s)); },
          "circle:r=" + std::to_string(r)};
}

inline ClosedCurve make_ellipse(double a = 2.0, double b = 1.0) {
  return {[a, b](double s) { return Vec2(a * std::cos(s), b * std::sin(s)); },
          [a, b](double s) { return Vec2(-a * std::sin(s), b * std::cos(s)); },
          [a, b](double s) { return Vec2(-a * std::cos(s), -b * std::sin(s)); },
          "ellipse"};
}

inline ClosedCurve make_kite() {
  return {[](double s) { return Vec2(std::cos(s) + 0.65 * std::cos(2 * s) - 0.65, 1.5 * std::sin(s)); },
          [](double s) { return Vec2(-std::sin(s) - 1.3 * std::sin(2 * s), 1.5 * std::cos(s)); },
          [](double s) { return Vec2(-std::cos(s) - 2.6 * std::cos(2 * s), -1.5 * std::sin(s)); },
          "kite"};
}

inline OpenArc make_straight_arc() {
  return {[](double t) { return Vec2(t, 0.0); }, [](double) { return Vec2(1.0, 0.0); },
          [](double) { return Vec2(0.0, 0.0); }, "arc:straight"};
}

inline OpenArc make_parabola_arc() {
  return {[](double t) { return Vec2(t, t * t); }, [](double t) { return Vec2(1.0, 2.0 * t); },
          [](double) { return Vec2(0.0, 2.0); }, "arc:parabola"};
}

/// Spiral-shaped test arc with varying Jacobian, total length about 4.7.
inline OpenArc make_spiral_arc() {
  const double a = 0.35, w = 0.75 * pi;
  auto rad = [a](double t) { return 1.0 + a * t; };
  return {[=](double t) { return Vec2(rad(t) * std::cos(w * t), rad(t) * std::sin(w * t)); },
          [=](double t) {
            return Vec2(a * std::cos(w * t) - rad(t) * w * std::sin(w * t),
                        a * std::sin(w * t) + rad(t) * w * std::cos(w * t));
          },
          [=](double t) {
            return Vec2(-2.0 * a * w * std::sin(w * t) - rad(t) * w * w * std::cos(w * t),
                        2.0 * a * w * std::cos(w * t) - rad(t) * w * w * std::sin(w * t));
          },
          "arc:spiral"};
}

/// Closed curve through samples (equispaced in parameter) via trigonometric
/// interpolation. Sample count must be even.
inline ClosedCurve closed_from_samples(const std::vector<Vec2>& pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 8 || n % 2 != 0) throw std::invalid_argument("closed_from_samples: need even n >= 8");
  // Fourier coefficients per component.
  std::vector<Complex> cx(n), cy(n);
  for (int k = 0; k < n; ++k) {
    Complex ax = 0, ay = 0;
    for (int j = 0; j < n; ++j) {
      Complex e = std::exp(-iu * (2.0 * pi * k * j / n));
      ax += pts[j].x() * e;
      ay += pts[j].y() * e;
    }
    cx[k] = ax / double(n);
    cy[k] = ay / double(n);
  }
  auto eval = [n, cx, cy](double s, int deriv) {
    Complex vx = 0, vy = 0;
    for (int k = 0; k < n; ++k) {
      int m = (k <= n / 2) ? k : k - n;       // signed frequency
      if (std::abs(m) == n / 2 && deriv > 0) continue;  // drop odd Nyquist derivative
      Complex f = std::pow(iu * double(m), deriv) * std::exp(iu * (m * s));
      vx += cx[k] * f;
      vy += cy[k] * f;
    }
    return Vec2(vx.real(), vy.real());
  };
  return {[eval](double s) { return eval(s, 0); }, [eval](double s) { return eval(s, 1); },
          [eval](double s) { return eval(s, 2); }, "closed:sampled"};
}

/// Open arc through samples at Chebyshev points t_j = cos(pi j / (n-1)).
inline OpenArc arc_from_samples(const std::vector<Vec2>& pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 4) throw std::invalid_argument("arc_from_samples: need >= 4 samples");
  // Chebyshev coefficients by discrete cosine transform on extrema grid.
  std::vector<double> ax(n), ay(n);
  for (int k = 0; k < n; ++k) {
    double sx = 0, sy = 0;
    for (int j = 0; j < n; ++j) {
      double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      double c = std::cos(pi * k * j / (n - 1));
      sx += w * pts[j].x() * c;
      sy += w * pts[j].y() * c;
    }
    double scale = 2.0 / (n - 1);
    ax[k] = sx * scale;
    ay[k] = sy * scale;
  }
  ax[0] *= 0.5;
  ay[0] *= 0.5;
  ax[n - 1] *= 0.5;
  ay[n - 1] *= 0.5;
  auto cheb = [n, ax, ay](double t, int deriv) {
    // Evaluate sum a_k T_k(t) and derivatives via theta = acos(t); near the
    // endpoints fall back to the derivative recurrence in t.
    auto eval_comp = [&](const std::vector<double>& a, int d) {
      // T_k and derivatives by forward recurrence on (T, T', T'').
      double tkm2 = 1.0, tkm1 = t;           // T_0, T_1
      double dkm2 = 0.0, dkm1 = 1.0;         // T'_0, T'_1
      double skm2 = 0.0, skm1 = 0.0;         // T''_0, T''_1
      double v = a[0] * ((d == 0) ? 1.0 : 0.0);
      if (n > 1) v += a[1] * (d == 0 ? t : (d == 1 ? 1.0 : 0.0));
      for (int k = 2; k < n; ++k) {
        double tk = 2.0 * t * tkm1 - tkm2;
        double dk = 2.0 * tkm1 + 2.0 * t * dkm1 - dkm2;
        double sk = 4.0 * dkm1 + 2.0 * t * skm1 - skm2;
        v += a[k] * (d == 0 ? tk : (d == 1 ? dk : sk));
        tkm2 = tkm1; tkm1 = tk;
        dkm2 = dkm1; dkm1 = dk;
        skm2 = skm1; skm1 = sk;
      }
      return v;
    };
    return Vec2(eval_comp(ax, deriv), eval_comp(ay, deriv));
  };
  return {[cheb](double t) { return cheb(t, 0); }, [cheb](double t) { return cheb(t, 1); },
          [cheb](double t) { return cheb(t, 2); }, "arc:sampled"};
}

// ---------------------------------------------------------------------------
// Node generation

struct ClosedNodes {
  VecX s;                      // parameters 2 pi j / n
  std::vector<Vec2> x;         // positions
  std::vector<Vec2> tangent;   // unit tangent x'/|x'| (= rotated normal)
  std::vector<Vec2> normal;    // outward unit normal
  VecX speed;                  // |x'(s)|
  VecX curvature;              // signed curvature (x' x x'') / |x'|^3
  std::vector<Vec2> second;    // x''(s)
};

inline ClosedNodes closed_nodes(const ClosedCurve& c, int n) {
  if (n < 8 || n % 2 != 0) throw std::invalid_argument("closed_nodes: n must be even and >= 8");
  ClosedNodes nd;
  nd.s.resize(n);
  nd.speed.resize(n);
  nd.curvature.resize(n);
  nd.x.resize(n);
  nd.tangent.resize(n);
  nd.normal.resize(n);
  nd.second.resize(n);
  for (int j = 0; j < n; ++j) {
    double s = 2.0 * pi * j / n;
    nd.s[j]  = s;
    Vec2 p = c.pos(s), d = c.d1(s), dd = c.d2(s);
    double sp = d.norm();
    if (sp < 1e-12) throw std::invalid_argument("closed_nodes: degenerate curve (|x'| ~ 0)");
    nd.x[j]        = p;
    nd.speed[j]    = sp;
    nd.tangent[j]  = d / sp;
    nd.normal[j]   = Vec2(d.y() / sp, -d.x() / sp);  // outward for CCW curves
    nd.curvature[j] = cross2(d, dd) / (sp * sp * sp);
    nd.second[j]   = dd;
  }
  return nd;
}

struct ArcNodes {
  VecX theta;                 // (2j+1) pi / (2m), interior only
  VecX t;                     // cos(theta)
  VecX sin_theta;             // sin(theta) > 0
  VecX jac;                   // |x'(t)| at t = cos(theta)
  std::vector<Vec2> x;
  std::vector<Vec2> tangent;  // unit x'
  std::vector<Vec2> normal;   // left normal of the traversal direction
};

inline ArcNodes arc_nodes(const OpenArc& a, int m) {
  if (m < 4) throw std::invalid_argument("arc_nodes: need m >= 4");
  ArcNodes nd;
  nd.theta.resize(m);
  nd.t.resize(m);
  nd.sin_theta.resize(m);
  nd.jac.resize(m);
  nd.x.resize(m);
  nd.tangent.resize(m);
  nd.normal.resize(m);
  for (int j = 0; j < m; ++j) {
    double th = (2.0 * j + 1.0) * pi / (2.0 * m);
    double t  = std::cos(th);
    Vec2 d    = a.d1(t);
    double sp = d.norm();
    if (sp < 1e-12) throw std::invalid_argument("arc_nodes: degenerate arc (|x'| ~ 0)");
    nd.theta[j]     = th;
    nd.t[j]         = t;
    nd.sin_theta[j] = std::sin(th);
    nd.jac[j]       = sp;
    nd.x[j]         = a.pos(t);
    nd.tangent[j]   = d / sp;
    nd.normal[j]    = perp(d / sp);
  }
  return nd;
}

// ---------------------------------------------------------------------------
// CLI curve specs: "circle:r=1", "ellipse:a=2,b=1", "kite",
// "arc:straight", "arc:parabola", "arc:spiral".

using Geometry = std::variant<ClosedCurve, OpenArc>;

inline Geometry parse_curve(const std::string& spec) {
  auto num_after = [&](const std::string& key, double dflt) {
    auto p = spec.find(key + "=");
    if (p == std::string::npos) return dflt;
    return std::stod(spec.substr(p + key.size() + 1));
  };
  if (spec.rfind("circle", 0) == 0) return make_circle(num_after("r", 1.0));
  if (spec.rfind("ellipse", 0) == 0) return make_ellipse(num_after("a", 2.0), num_after("b", 1.0));
  if (spec == "kite") return make_kite();
  if (spec == "arc:straight") return make_straight_arc();
  if (spec == "arc:parabola") return make_parabola_arc();
  if (spec == "arc:spiral") return make_spiral_arc();
  throw std::invalid_argument("unknown curve spec: " + spec);
}

}  // namespace elastocald
