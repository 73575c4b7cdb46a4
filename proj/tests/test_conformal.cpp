#include <doctest.h>

#include <cmath>
#include <random>

#include "exeuler/conformal.hpp"
#include "exeuler/errors.hpp"

using namespace exeuler;

TEST_SUITE_BEGIN("conformal");

TEST_CASE("unit disk maps to itself") {
  const ConformalMap m = build_map(BodyShape::disk(1.0), 8);
  CHECK(m.scale() == 1.0);
  const Vec2 out = map_forward(m, {2.0, 0.0});
  CHECK(out.x == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(out.y == doctest::Approx(0.0));
}

TEST_CASE("disk of radius 2 is pure scaling") {
  const ConformalMap m = build_map(BodyShape::disk(2.0), 8);
  CHECK(m.scale() == doctest::Approx(0.5).epsilon(1e-15));
  for (const Complex& c : m.coeffs()) CHECK(std::abs(c) == 0.0);
  const Vec2 out = map_forward(m, {4.0, 0.0});
  CHECK(out.x == doctest::Approx(2.0).epsilon(1e-15));
  const Vec2 back = map_inverse(m, {2.0, 0.0});
  CHECK(back.x == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("ellipse(2,1) boundary lands on the unit circle") {
  const BodyShape shape = BodyShape::ellipse(2.0, 1.0);
  const ConformalMap m = build_map(shape, 16);
  double dev = 0.0;
  for (const Vec2& b : shape.boundary_samples(1024))
    dev = std::max(dev, std::abs(std::abs(m.eval(to_complex(b))) - 1.0));
  CHECK(dev < 1e-8);
}

TEST_CASE("ellipse boundary sample stays within 1e-8 of |T| = 1 via map_forward") {
  const BodyShape shape = BodyShape::ellipse(2.0, 1.0);
  const ConformalMap m = build_map(shape, 16);
  // a boundary-adjacent exterior point
  const Vec2 x{0.0, 1.0 + 1e-12};
  const Vec2 xi = map_forward(m, x);
  CHECK(std::abs(xi.norm() - 1.0) < 1e-8);
}

TEST_CASE("inverse round trip on random exterior points") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> rad(0.01, 2.3);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  for (const BodyShape& shape : {BodyShape::disk(1.3), BodyShape::ellipse(2.0, 1.0)}) {
    const ConformalMap m = build_map(shape, 16);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Complex xi = std::polar(std::exp(rad(rng)), ang(rng));
      const Complex z = m.inverse(xi);
      worst = std::max(worst, std::abs(m.eval(z) - xi));
      const Complex z2 = m.inverse(m.eval(z));
      worst = std::max(worst, std::abs(z2 - z));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("jacobian satisfies the Cauchy-Riemann structure") {
  const ConformalMap m = build_map(BodyShape::ellipse(2.0, 1.0), 16);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> rad(0.05, 2.0);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  for (int i = 0; i < 200; ++i) {
    const Complex z = m.inverse(std::polar(std::exp(rad(rng)), ang(rng)));
    const Mat2 J = map_jacobian(m, to_vec(z));
    CHECK(std::abs(J.a[0][0] - J.a[1][1]) < 1e-12);
    CHECK(std::abs(J.a[0][1] + J.a[1][0]) < 1e-12);
  }
}

TEST_CASE("jacobian matches central finite differences at (3,0)") {
  const ConformalMap m = build_map(BodyShape::ellipse(2.0, 1.0), 16);
  const Vec2 x{3.0, 0.0};
  const Mat2 J = map_jacobian(m, x);
  const double h = 1e-5;
  for (int dir = 0; dir < 2; ++dir) {
    const Vec2 dx = dir == 0 ? Vec2{h, 0.0} : Vec2{0.0, h};
    const Vec2 fp = map_forward(m, x + dx);
    const Vec2 fm = map_forward(m, x - dx);
    const Vec2 fd = (fp - fm) / (2.0 * h);
    CHECK(std::abs(J.a[0][dir] - fd.x) < 1e-6 * std::max(1.0, std::abs(fd.x)));
    CHECK(std::abs(J.a[1][dir] - fd.y) < 1e-6 * std::max(1.0, std::abs(fd.y)));
  }
}

TEST_CASE("hessian matches finite differences of the jacobian") {
  const ConformalMap m = build_map(BodyShape::ellipse(2.0, 1.0), 16);
  const Vec2 x{2.4, 1.1};
  const auto H = map_hessian(m, x);
  const double h = 1e-5;
  for (int j = 0; j < 2; ++j) {
    const Vec2 dx = j == 0 ? Vec2{h, 0.0} : Vec2{0.0, h};
    const Mat2 Jp = map_jacobian(m, x + dx);
    const Mat2 Jm = map_jacobian(m, x - dx);
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) {
        const double fd = (Jp.a[i][k] - Jm.a[i][k]) / (2.0 * h);
        CHECK(H[i].a[j][k] == doctest::Approx(fd).epsilon(1e-5));
      }
  }
}

TEST_CASE("far-field decay: T(x)/(scale x) -> 1") {
  const BodyShape shape = BodyShape::ellipse(2.0, 1.0);
  const ConformalMap m = build_map(shape, 16);
  const double far = 1000.0 * shape.diameter();
  const Complex z{far, far / 3.0};
  const Complex ratio = m.eval(z) / (m.scale() * z);
  CHECK(std::abs(ratio - 1.0) < 1e-3);
}

TEST_CASE("polyline fit reaches 1e-6 and keeps conformal structure") {
  std::vector<Vec2> pts;
  for (int i = 0; i < 96; ++i) {
    const double th = kTwoPi * i / 96;
    const double rr = 1.0 + 0.1 * std::cos(2 * th) - 0.06 * std::sin(3 * th);
    pts.push_back({rr * std::cos(th), rr * std::sin(th)});
  }
  const BodyShape shape = BodyShape::polyline(pts);
  const ConformalMap m = build_map(shape, 64);
  const MapQualityReport rep = assess_map(m, shape, 256, 300);
  CHECK(rep.boundary_deviation < 1e-6);
  CHECK(rep.roundtrip_error < 1e-9);
  CHECK(rep.cauchy_riemann_residual < 1e-10);
  CHECK(rep.min_pair_separation > 1e-10);
  CHECK(std::isfinite(rep.derivative_bound));
}

TEST_CASE("self-intersecting polyline is rejected") {
  std::vector<Vec2> pts;
  for (int i = 0; i < 64; ++i) {
    const double th = kTwoPi * i / 64;
    const double rr = 1.0 + 1.4 * std::cos(2 * th);  // figure-eight-like, self-intersects
    pts.push_back({rr * std::cos(th), rr * std::sin(th)});
  }
  CHECK_THROWS_AS((void)BodyShape::polyline(pts), Error);
}

TEST_CASE("interior points are rejected") {
  const ConformalMap m = build_map(BodyShape::disk(1.0), 4);
  CHECK_THROWS_AS((void)map_forward(m, {0.5, 0.0}), Error);
  CHECK_THROWS_AS((void)map_jacobian(m, {0.2, 0.1}), Error);
}

TEST_CASE("json round trip preserves the map") {
  const ConformalMap m = build_map(BodyShape::ellipse(2.0, 1.0), 16);
  const ConformalMap m2 = ConformalMap::from_json(m.to_json());
  const Complex z{2.7, -0.4};
  CHECK(std::abs(m.eval(z) - m2.eval(z)) == 0.0);
  CHECK(m2.to_json() == m.to_json());
}

TEST_SUITE_END();
