#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "elastocald/cosine_basis.hpp"

using namespace elastocald;

namespace {
VecXc unit_coeff(int m, int n) {
  VecXc c = VecXc::Zero(m);
  c[n] = 1.0;
  return c;
}
double max_err_against(const VecXc& got, const std::function<Complex(int)>& want, int len) {
  double e = 0.0;
  for (int j = 0; j < len; ++j) {
    Complex g = j < got.size() ? got[j] : Complex(0.0);
    e = std::max(e, std::abs(g - want(j)));
  }
  return e;
}
}  // namespace

TEST_CASE("dct examples") {
  const int m = 8;
  VecX th = cosine_nodes(m);
  SECTION("cos(3 theta) lands on a_3 = 1") {
    std::vector<Vec2c> vals(m);
    for (int j = 0; j < m; ++j) vals[j] = Vec2c(std::cos(3 * th[j]), 0.0);
    CosineSeries c = dct_forward(vals);
    for (int k = 0; k < m; ++k) {
      CHECK(std::abs(c.a[k][0] - Complex(k == 3 ? 1.0 : 0.0)) < 1e-14);
      CHECK(std::abs(c.a[k][1]) < 1e-15);
    }
  }
  SECTION("constant function has a0 = 2 under the half-a0 convention") {
    std::vector<Vec2c> vals(m, Vec2c(1.0, 1.0));
    CosineSeries c = dct_forward(vals);
    CHECK(std::abs(c.a[0][0] - Complex(2.0)) < 1e-14);
  }
  SECTION("random values round-trip") {
    std::mt19937 rng(5);
    std::normal_distribution<double> g;
    std::vector<Vec2c> vals(m);
    for (auto& v : vals) v = Vec2c(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
    auto back = dct_inverse(dct_forward(vals));
    for (int j = 0; j < m; ++j) CHECK((back[j] - vals[j]).norm() < 1e-13);
  }
}

TEST_CASE("sobolev norm") {
  CosineSeries c;
  c.a.assign(8, Vec2c::Zero());
  SECTION("single mode norm is sqrt(2) m^s") {
    c.a[3] = Vec2c(1.0, 0.0);
    for (double s : {0.0, 0.5, 1.0, 2.0})
      CHECK(sobolev_norm(c, s) == Catch::Approx(std::sqrt(2.0) * std::pow(3.0, s)));
  }
  SECTION("s = 0 is the plain coefficient norm") {
    c.a[0] = Vec2c(2.0, 0.0);
    c.a[2] = Vec2c(0.0, 1.0);
    CHECK(sobolev_norm(c, 0.0) == Catch::Approx(std::sqrt(4.0 + 2.0)));
  }
  SECTION("monotone in s for coefficients on m >= 2") {
    c.a[0].setZero();
    c.a[2] = Vec2c(0.5, 0.0);
    c.a[5] = Vec2c(0.0, 0.3);
    CHECK(sobolev_norm(c, 0.5) < sobolev_norm(c, 1.0));
    CHECK(sobolev_norm(c, 1.0) < sobolev_norm(c, 2.0));
  }
}

TEST_CASE("degree bookkeeping of the basis maps") {
  const int m = 16;
  for (int n = 1; n + 1 < m; ++n) {
    VecXc t = basis::t0_map(unit_coeff(m, n));
    // raises the maximal degree by exactly one
    CHECK(std::abs(t[n + 1]) > 0.0);
    for (int j = n + 2; j < t.size(); ++j) CHECK(std::abs(t[j]) == 0.0);
    VecXc d = basis::d0_map(unit_coeff(m, n));
    for (int j = n; j < d.size(); ++j) CHECK(std::abs(d[j]) == 0.0);
    if (n >= 2) CHECK(std::abs(d[n - 1]) > 0.0);
    VecXc cc = basis::c_map(unit_coeff(m, n));
    for (int j = n; j < cc.size(); ++j) CHECK(std::abs(cc[j]) == 0.0);
  }
}

TEST_CASE("flat-arc operator identities on the truncated basis") {
  Material m{2.0, 1.0, 1.0, 1.0, 1.0};
  OperatorConstants c = constants(m);
  FlatOps ops(c);
  const int M = 64;
  const double tol = 1e-12;

  SECTION("single-layer diagonal values at (2,1,1)") {
    CHECK(symm_eig(c, 0, 1) == Catch::Approx(0.3125).epsilon(1e-14));
    CHECK(symm_eig(c, 0, 0) == Catch::Approx((5.0 * std::log(2.0) + 3.0) / 16.0).epsilon(1e-14));
    CHECK(symm_eig(c, 1, 0) == Catch::Approx(pi * c.kelvin_log * std::log(2.0)).epsilon(1e-14));
    CHECK(vkern_eig(c, 0, 2) == Catch::Approx(pi * c.vkern_log / 2.0).epsilon(1e-14));
    // vkern first-mode value 3/4 at (2,1,1)
    CHECK(vkern_eig(c, 0, 1) == Catch::Approx(0.75).epsilon(1e-14));
  }

  SECTION("T0[e_0] = e_1 and C[e_1] = e_0") {
    VecXc t = basis::t0_map(unit_coeff(M, 0));
    CHECK(max_err_against(t, [](int j) { return Complex(j == 1 ? 1.0 : 0.0); }, M) < tol);
    VecXc cc = basis::c_map(unit_coeff(M, 1));
    CHECK(max_err_against(cc, [](int j) { return Complex(j == 0 ? 1.0 : 0.0); }, M) < tol);
  }

  SECTION("C T0 = identity for n <= M-2") {
    for (int n = 0; n + 2 <= M; ++n) {
      VecXc r = basis::c_map(basis::t0_map(unit_coeff(M, n)));
      CHECK(max_err_against(r, [n](int j) { return Complex(j == n ? 1.0 : 0.0); }, M) < tol);
    }
  }

  SECTION("T0 C = identity on e_n for n >= 1") {
    for (int n = 1; n + 2 <= M; ++n) {
      VecXc r = basis::t0_map(basis::c_map(unit_coeff(M, n)));
      CHECK(max_err_against(r, [n](int j) { return Complex(j == n ? 1.0 : 0.0); }, M) < tol);
    }
  }

  SECTION("D0[e_0] = 0 and D0[e_2] = -4 cos(theta)") {
    CHECK(basis::d0_map(unit_coeff(M, 0)).cwiseAbs().maxCoeff() == 0.0);
    VecXc d2 = basis::d0_map(unit_coeff(M, 2));
    CHECK(max_err_against(d2, [](int j) { return Complex(j == 1 ? -4.0 : 0.0); }, M) < tol);
  }

  SECTION("flat hyper-singular closed form at (2,1,1)") {
    VecXc n0 = ops.n0(unit_coeff(M, 0));
    CHECK(std::abs(n0[0] - Complex(-0.75)) < tol);  // -pi vkern_log = -3/4
    VecXc n1 = ops.n0(unit_coeff(M, 1));
    CHECK(std::abs(n1[1] - Complex(-1.5)) < tol);  // -2 pi vkern_log cos
    for (int j = 0; j < M; ++j)
      if (j != 1) CHECK(std::abs(n1[j]) < tol);
  }

  SECTION("hyper-singular composition equals the closed form for n <= M-3") {
    for (int n = 2; n + 3 <= M; ++n) {
      VecXc t = basis::t0_map(unit_coeff(M, n));
      VecXc tx = t, ty = t;
      ops.v0(tx, ty);
      VecXc lhs = basis::d0_map(tx);
      VecXc rhs = ops.n0(unit_coeff(M, n));
      CHECK(max_err_against(lhs, [&](int j) { return j < rhs.size() ? rhs[j] : Complex(0); }, M) <
            tol);
    }
  }

  SECTION("composition diagonal on e_0: diag(flat_eig_a, flat_eig_b)") {
    VecXc x = unit_coeff(M, 0), y = unit_coeff(M, 0);
    ops.j0(x, y);
    CHECK(std::abs(x[0] - Complex(c.flat_eig_a)) < tol);
    CHECK(std::abs(y[0] - Complex(c.flat_eig_b)) < tol);
    CHECK(std::abs(x[0] - Complex(-3.0 * (5.0 * std::log(2.0) + 3.0) / 64.0)) < tol);
    CHECK(std::abs(y[0] - Complex(-15.0 * std::log(2.0) / 64.0)) < tol);
  }

  SECTION("inverse identities for n <= M-3") {
    for (int n = 0; n + 3 <= M; ++n) {
      VecXc x = unit_coeff(M, n), y = 0.5 * unit_coeff(M, n);
      VecXc x0 = x, y0 = y;
      ops.j0(x, y);
      ops.j0_inverse(x, y);
      CHECK((x - x0).cwiseAbs().maxCoeff() < tol);
      CHECK((y - y0).cwiseAbs().maxCoeff() < tol);
      x = x0;
      y = y0;
      ops.j0_inverse(x, y);
      ops.j0(x, y);
      CHECK((x - x0).cwiseAbs().maxCoeff() < tol);
      CHECK((y - y0).cwiseAbs().maxCoeff() < tol);
    }
  }

  SECTION("D0 = -pi^2 vkern_log^2 C (V0^{-1})^2 on e_n, n >= 1") {
    for (int n = 1; n + 1 <= M; ++n) {
      VecXc vx = unit_coeff(M, n), vy = unit_coeff(M, n);
      ops.v0_inverse(vx, vy);
      ops.v0_inverse(vx, vy);
      VecXc lhs = basis::d0_map(unit_coeff(M, n));
      VecXc rhs = basis::c_map(vx);
      double scale = -pi * pi * c.vkern_log * c.vkern_log;
      CHECK(max_err_against(lhs,
                            [&](int j) {
                              return j < rhs.size() ? Complex(scale) * rhs[j] : Complex(0);
                            },
                            M) < 1e-11);
    }
  }

  SECTION("weighted-density round trip through the single-layer diagonal") {
    // solving S0[gamma] = e_1 recovers gamma = e_1 / symm_eig(1)
    VecXc x = unit_coeff(M, 1), y = VecXc::Zero(M);
    ops.s0_inverse(x, y);
    CHECK(std::abs(x[1] - Complex(1.0 / symm_eig(c, 0, 1))) < tol);
    CHECK(std::abs(x[1] - Complex(1.0 / 0.3125)) < tol);
  }
}
