#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "elastocald/cosine_basis.hpp"
#include "elastocald/quadrature.hpp"
#include "test_helpers.hpp"

using namespace elastocald;
using elc_test::adaptive_simpson;

TEST_CASE("periodic log rule integrates cos(m sig) exactly") {
  const int n = 32;
  VecX r = log_rule_weights(n);
  // int_0^{2pi} ln(4 sin^2((s - sig)/2)) cos(m sig) dsig = -(2 pi / m) cos(m s)
  for (int m = 0; m <= n / 2 - 1; ++m) {
    for (int i : {0, 3, 11}) {
      double si = 2.0 * pi * i / n;
      double acc = 0.0;
      for (int j = 0; j < n; ++j) {
        double sj = 2.0 * pi * j / n;
        acc += r[(i - j + n) % n] * std::cos(m * sj);
      }
      double want = (m == 0) ? 0.0 : -2.0 * pi / m * std::cos(m * si);
      CHECK(std::abs(acc - want) < 1e-12);
    }
  }
}

TEST_CASE("periodic log rule against adaptive quadrature for a smooth density") {
  const int n = 64;
  VecX r = log_rule_weights(n);
  auto f = [](double s) { return std::exp(std::cos(s)); };
  double si = 2.0 * pi * 5 / n;
  double acc = 0.0;
  for (int j = 0; j < n; ++j) acc += r[(5 - j + n) % n] * f(2.0 * pi * j / n);
  double want = adaptive_simpson(
      [&](double s) {
        double d = 4.0 * std::pow(std::sin(0.5 * (si - s)), 2);
        return d > 0 ? std::log(d) * f(s) : 0.0;
      },
      si + 1e-9, si + 2.0 * pi - 1e-9, 1e-13);
  CHECK(std::abs(acc - want) < 1e-7);  // adaptive end-point truncation limits this
}

TEST_CASE("cotangent principal-value rule") {
  const int n = 48;
  VecX w = cot_pv_weights(n);
  // maps cos(m sig) to 2 pi sin(m s_i), sin(m sig) to -2 pi cos(m s_i)
  for (int m = 1; m <= n / 2 - 1; ++m) {
    for (int i : {0, 7}) {
      double si = 2.0 * pi * i / n;
      Complex acc = 0.0;
      double accc = 0.0, accs = 0.0;
      for (int j = 0; j < n; ++j) {
        double sj = 2.0 * pi * j / n;
        accc += w[(j - i + n) % n] * std::cos(m * sj);
        accs += w[(j - i + n) % n] * std::sin(m * sj);
      }
      (void)acc;
      CHECK(std::abs(accc - 2.0 * pi * std::sin(m * si)) < 1e-11);
      CHECK(std::abs(accs + 2.0 * pi * std::cos(m * si)) < 1e-11);
    }
  }
  SECTION("row sum vanishes (constant annihilated)") {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += w[k];
    CHECK(std::abs(s) < 1e-12);
  }
}

TEST_CASE("spectral differentiation is exact on resolved modes") {
  const int n = 32;
  Eigen::MatrixXd d = fourier_diff_matrix(n);
  for (int m = 1; m <= n / 2 - 1; ++m) {
    VecX f(n), want(n);
    for (int j = 0; j < n; ++j) {
      double s = 2.0 * pi * j / n;
      f[j] = std::cos(m * s);
      want[j] = -m * std::sin(m * s);
    }
    VecX got = d * f;
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("arc log rule reproduces the flat-arc integral identities") {
  const int m = 24;
  Eigen::MatrixXd w = arc_log_weights(m);
  VecX th = cosine_nodes(m);
  for (int n = 0; n < m; ++n) {
    for (int i : {0, 5, 17}) {
      double acc = 0.0;
      for (int j = 0; j < m; ++j) acc += w(i, j) * std::cos(n * th[j]);
      double want = (n == 0) ? -pi * std::log(2.0) : -pi / n * std::cos(n * th[i]);
      CHECK(std::abs(acc - want) < 1e-12);
    }
  }
  SECTION("against adaptive integration of the true kernel") {
    double ti = std::cos(th[3]);
    auto f = [&](double phi) { return std::exp(std::cos(phi)); };
    double acc = 0.0;
    for (int j = 0; j < m; ++j) acc += w(3, j) * f(th[j]);
    double want = adaptive_simpson(
        [&](double phi) { return std::log(std::abs(ti - std::cos(phi)) + 1e-300) * f(phi); }, 0.0,
        pi, 1e-12);
    CHECK(std::abs(acc - want) < 1e-8);
  }
}

TEST_CASE("Richardson diagonal extrapolation") {
  auto f = [](double h) { return std::cos(h) + h * h * h * std::sin(h * 5); };
  double lim = richardson_diag(f, 1e-2);
  CHECK(std::abs(lim - 1.0) < 1e-12);
}
