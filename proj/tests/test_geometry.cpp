#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "elastocald/geometry.hpp"

using namespace elastocald;

TEST_CASE("circle nodes") {
  ClosedNodes nd = closed_nodes(make_circle(), 8);
  CHECK(nd.s[2] == Catch::Approx(pi / 2));
  for (int j = 0; j < 8; ++j) {
    // outward normal of the unit circle is the position itself
    CHECK((nd.normal[j] - nd.x[j]).norm() < 1e-15);
    CHECK((nd.tangent[j] - perp(nd.normal[j])).norm() < 1e-15);
    CHECK(nd.speed[j] == Catch::Approx(1.0));
    CHECK(nd.curvature[j] == Catch::Approx(1.0));
  }
}

TEST_CASE("ellipse speeds match the analytic derivative") {
  ClosedNodes nd = closed_nodes(make_ellipse(2.0, 1.0), 64);
  for (int j = 0; j < 64; ++j) {
    double s = nd.s[j];
    double want = std::sqrt(4.0 * std::sin(s) * std::sin(s) + std::cos(s) * std::cos(s));
    CHECK(nd.speed[j] == Catch::Approx(want).epsilon(1e-14));
  }
}

TEST_CASE("kite speeds match the analytic derivative") {
  ClosedNodes nd = closed_nodes(make_kite(), 128);
  for (int j = 0; j < 128; ++j) {
    double s = nd.s[j];
    double dx = -std::sin(s) - 1.3 * std::sin(2 * s);
    double dy = 1.5 * std::cos(s);
    CHECK(std::abs(nd.speed[j] - std::hypot(dx, dy)) < 1e-14);
  }
}

TEST_CASE("normals are unit and orthogonal to tangents") {
  for (const ClosedCurve& c : {make_circle(0.7), make_ellipse(), make_kite()}) {
    ClosedNodes nd = closed_nodes(c, 96);
    for (int j = 0; j < 96; ++j) {
      CHECK(std::abs(nd.normal[j].norm() - 1.0) < 1e-14);
      CHECK(std::abs(nd.normal[j].dot(c.d1(nd.s[j]))) < 1e-13);
    }
  }
}

TEST_CASE("arc nodes on the straight arc") {
  ArcNodes nd = arc_nodes(make_straight_arc(), 4);
  // first two interior cosine angles
  CHECK(nd.theta[0] == Catch::Approx(pi / 8));
  ArcNodes nd2 = arc_nodes(make_straight_arc(), 4);
  for (int j = 0; j < 4; ++j) {
    CHECK(nd2.jac[j] == Catch::Approx(1.0));
    CHECK((nd2.normal[j] - Vec2(0, 1)).norm() < 1e-15);
    CHECK(nd2.x[j].y() == 0.0);
  }
  SECTION("m = 2 nodes sit at +- sqrt(2)/2") {
    // theta = pi/4, 3pi/4 -> t = +-sqrt(2)/2
    ArcNodes two = arc_nodes(make_parabola_arc(), 4);  // m >= 4 enforced
    CHECK_THROWS_AS(arc_nodes(make_straight_arc(), 2), std::invalid_argument);
    (void)two;
  }
}

TEST_CASE("parabola arc Jacobian") {
  ArcNodes nd = arc_nodes(make_parabola_arc(), 16);
  for (int j = 0; j < 16; ++j) {
    double t = nd.t[j];
    CHECK(nd.jac[j] == Catch::Approx(std::sqrt(1.0 + 4.0 * t * t)).epsilon(1e-14));
    CHECK(nd.sin_theta[j] > 0.0);
  }
}

TEST_CASE("symmetric curves produce symmetric node data") {
  ClosedNodes nd = closed_nodes(make_ellipse(), 64);
  for (int j = 1; j < 32; ++j) {
    // reflection s -> 2pi - s about the x-axis
    CHECK(std::abs(nd.x[j].x() - nd.x[64 - j].x()) < 1e-14);
    CHECK(std::abs(nd.x[j].y() + nd.x[64 - j].y()) < 1e-14);
    CHECK(std::abs(nd.speed[j] - nd.speed[64 - j]) < 1e-14);
  }
}

TEST_CASE("degenerate parameterizations are rejected") {
  ClosedCurve bad{[](double) { return Vec2(0, 0); }, [](double) { return Vec2(0, 0); },
                  [](double) { return Vec2(0, 0); }, "bad"};
  CHECK_THROWS_AS(closed_nodes(bad, 16), std::invalid_argument);
  CHECK_THROWS_AS(closed_nodes(make_circle(), 7), std::invalid_argument);
}

TEST_CASE("sampled closed curve reproduces the circle") {
  std::vector<Vec2> pts;
  for (int j = 0; j < 32; ++j) {
    double s = 2.0 * pi * j / 32;
    pts.emplace_back(std::cos(s), std::sin(s));
  }
  ClosedCurve c = closed_from_samples(pts);
  for (double s : {0.3, 1.7, 5.0}) {
    CHECK((c.pos(s) - Vec2(std::cos(s), std::sin(s))).norm() < 1e-12);
    CHECK((c.d1(s) - Vec2(-std::sin(s), std::cos(s))).norm() < 1e-10);
    CHECK((c.d2(s) - Vec2(-std::cos(s), -std::sin(s))).norm() < 1e-8);
  }
}

TEST_CASE("sampled arc reproduces the parabola") {
  std::vector<Vec2> pts;
  int n = 24;
  for (int j = 0; j < n; ++j) {
    double t = std::cos(pi * j / (n - 1));
    pts.emplace_back(t, t * t);
  }
  OpenArc a = arc_from_samples(pts);
  for (double t : {-0.8, 0.1, 0.6}) {
    CHECK((a.pos(t) - Vec2(t, t * t)).norm() < 1e-12);
    CHECK((a.d1(t) - Vec2(1.0, 2.0 * t)).norm() < 1e-10);
  }
}

TEST_CASE("curve spec parsing") {
  CHECK(std::holds_alternative<ClosedCurve>(parse_curve("circle:r=2")));
  CHECK(std::get<ClosedCurve>(parse_curve("circle:r=2")).pos(0.0).x() == Catch::Approx(2.0));
  CHECK(std::holds_alternative<ClosedCurve>(parse_curve("kite")));
  CHECK(std::holds_alternative<OpenArc>(parse_curve("arc:straight")));
  CHECK(std::holds_alternative<OpenArc>(parse_curve("arc:parabola")));
  CHECK(std::holds_alternative<OpenArc>(parse_curve("arc:spiral")));
  CHECK_THROWS_AS(parse_curve("hexagon"), std::invalid_argument);
}

TEST_CASE("spiral arc has positive Jacobian throughout") {
  ArcNodes nd = arc_nodes(make_spiral_arc(), 64);
  for (int j = 0; j < 64; ++j) CHECK(nd.jac[j] > 0.5);
}
