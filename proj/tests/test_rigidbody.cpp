#include <doctest.h>

#include <cmath>

#include "exeuler/errors.hpp"
#include "exeuler/rigidbody.hpp"

using namespace exeuler;

TEST_SUITE_BEGIN("rigidbody");

TEST_CASE("added mass of the unit disk is diag(pi, pi, 0)") {
  const BodyModel model(BodyShape::disk(1.0));
  const auto& M = model.added_mass().m;
  CHECK(std::abs(M[0][0] - M_PI) < 1e-6);
  CHECK(std::abs(M[1][1] - M_PI) < 1e-6);
  CHECK(std::abs(M[2][2]) < 1e-6);
  CHECK(std::abs(M[0][1]) < 1e-10);
  CHECK(std::abs(M[0][2]) < 1e-10);
  CHECK(model.added_mass().symmetry_defect() < 1e-10);
}

TEST_CASE("disk added mass cross-checked against the field energy") {
  // independent oracle: M11 = integral over the exterior of |u_K|^2 for the
  // unit x-translation, by annular quadrature plus the dipole tail
  const BodyModel model(BodyShape::disk(1.0));
  const BodyMotion motion{{1.0, 0.0}, 0.0};
  const double R = 60.0;
  const int nr = 1500, nt = 256;
  double energy = 0.0;
  const double logR = std::log(R);
  for (int i = 0; i <= nr; ++i) {
    const double rho = std::exp(logR * i / nr);
    const double w = (i == 0 || i == nr ? 0.5 : 1.0) * (logR / nr) * rho * rho;
    double ring = 0.0;
    for (int k = 0; k < nt; ++k) {
      const Vec2 x = to_vec(std::polar(rho, kTwoPi * k / nt));
      ring += kirchhoff_velocity(model.kirchhoff(), motion, x).norm2();
    }
    energy += w * ring * kTwoPi / nt;
  }
  energy += M_PI / (R * R);  // dipole tail of the unit disk: |q| = 1/rho^2
  CHECK(energy == doctest::Approx(model.added_mass().m[0][0]).epsilon(1e-4));
}

TEST_CASE("disk added mass scales with the radius squared") {
  for (double a : {0.5, 2.0}) {
    const BodyModel model(BodyShape::disk(a));
    CHECK(model.added_mass().m[0][0] == doctest::Approx(M_PI * a * a).epsilon(1e-8));
    CHECK(model.added_mass().m[1][1] == doctest::Approx(M_PI * a * a).epsilon(1e-8));
    CHECK(std::abs(model.added_mass().m[2][2]) < 1e-8);
  }
}

TEST_CASE("ellipse added mass matches the classical values") {
  const BodyModel model(BodyShape::ellipse(2.0, 1.0));
  const auto& M = model.added_mass().m;
  CHECK(M[0][0] == doctest::Approx(M_PI * 1.0).epsilon(1e-3));      // pi b^2
  CHECK(M[1][1] == doctest::Approx(M_PI * 4.0).epsilon(1e-3));      // pi a^2
  // rotational entry: pi (a^2 - b^2)^2 / 8
  CHECK(M[2][2] == doctest::Approx(M_PI * 9.0 / 8.0).epsilon(1e-6));
  CHECK(std::abs(M[0][1]) < 1e-10);
}

TEST_CASE("added mass is positive semidefinite") {
  const BodyModel model(BodyShape::ellipse(2.0, 1.0));
  const auto& M = model.added_mass().m;
  // leading principal minors
  CHECK(M[0][0] >= 0.0);
  CHECK(M[0][0] * M[1][1] - M[0][1] * M[1][0] >= 0.0);
  const double det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                     M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                     M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
  CHECK(det >= -1e-12);
}

TEST_CASE("rotating the shape rotates the translational block") {
  // smooth blob sampled exactly; rotated copies fit independently
  auto blob_points = [](double alpha) {
    std::vector<Vec2> pts;
    for (int i = 0; i < 256; ++i) {
      const double th = kTwoPi * i / 256;
      const double rr = 1.0 + 0.15 * std::cos(2 * th) + 0.07 * std::sin(3 * th);
      pts.push_back(to_vec(std::polar(rr, th + alpha)));
    }
    return pts;
  };
  const AddedMassMatrix M0 = added_mass(build_map(BodyShape::polyline(blob_points(0.0)), 64),
                                        BodyShape::polyline(blob_points(0.0)));
  for (int j = 1; j <= 4; ++j) {
    const double alpha = j * kTwoPi / 8.0;
    const AddedMassMatrix Ma = added_mass(build_map(BodyShape::polyline(blob_points(alpha)), 64),
                                          BodyShape::polyline(blob_points(alpha)));
    // R M0t R^T against the rotated shape's translational block; tolerance set
    // by the polyline fit quality rather than exact arithmetic
    const double c = std::cos(alpha), s = std::sin(alpha);
    const double exp00 = c * c * M0.m[0][0] - 2 * c * s * M0.m[0][1] + s * s * M0.m[1][1];
    const double exp01 = c * s * (M0.m[0][0] - M0.m[1][1]) + (c * c - s * s) * M0.m[0][1];
    const double exp11 = s * s * M0.m[0][0] + 2 * c * s * M0.m[0][1] + c * c * M0.m[1][1];
    CHECK(std::abs(Ma.m[0][0] - exp00) < 1e-5);
    CHECK(std::abs(Ma.m[0][1] - exp01) < 1e-5);
    CHECK(std::abs(Ma.m[1][1] - exp11) < 1e-5);
  }
}

TEST_CASE("vortical force vanishes for the quiescent body") {
  const BodyModel model(BodyShape::disk(1.0));
  FlowState st;
  st.body.m = 1.0;
  st.body.J = 1.0;
  const GeneralizedForce f = vortical_force(model, st, {});
  CHECK(std::abs(f.force.x) < 1e-13);
  CHECK(std::abs(f.force.y) < 1e-13);
  CHECK(std::abs(f.torque) < 1e-13);
}

TEST_CASE("steadily translating disk feels no force (d'Alembert)") {
  const BodyModel model(BodyShape::disk(1.0));
  FlowState st;
  st.body.m = 1.0;
  st.body.J = 1.0;
  st.body.hdot = {0.8, -0.3};
  const GeneralizedForce f = vortical_force(model, st, {});
  CHECK(f.force.norm() < 1e-12);
  CHECK(std::abs(f.torque) < 1e-12);
}

TEST_CASE("mirror-symmetric configuration gives F2 = 0 and zero torque") {
  const BodyModel model(BodyShape::disk(1.0));
  FlowState st;
  st.body.m = 2.0;
  st.body.J = 1.0;
  st.body.hdot = {0.5, 0.0};
  st.particles = {{{2.5, 0.9}, 1.2}, {{2.5, -0.9}, -1.2}};
  const GeneralizedForce f = vortical_force(model, st, {});
  CHECK(std::abs(f.force.y) < 1e-10);
  CHECK(std::abs(f.torque) < 1e-10);
  CHECK(std::abs(f.force.x) > 1e-4);  // the pair does pull the body
}

TEST_CASE("single vortex attracts a resting cylinder with the image-system force") {
  // closed form from the conserved impulse P = (m+pi a^2) h' - sum G (y-y*)perp:
  // with h' = 0,  F = Gamma d/dt(y - y*)perp = -Gamma v_theta (1 - a^2/d^2) e_x,
  // v_theta = Gamma/2pi (1/d - d/(d^2-a^2)) the Milne-Thomson orbit speed
  const BodyModel model(BodyShape::disk(1.0));
  const double gamma = 2.5, d = 2.0;
  FlowState st;
  st.body.m = 1.0;
  st.body.J = 1.0;
  st.particles = {{{d, 0.0}, gamma}};
  const GeneralizedForce f = vortical_force(model, st, {});
  const double v_theta = gamma / kTwoPi * (1.0 / d - d / (d * d - 1.0));
  const double expect = -gamma * v_theta * (1.0 - 1.0 / (d * d));
  CHECK(expect > 0.0);  // attraction, toward the vortex
  CHECK(f.force.x == doctest::Approx(expect).epsilon(1e-8));
  CHECK(std::abs(f.force.y) < 1e-10);
  CHECK(std::abs(f.torque) < 1e-10);
}

TEST_CASE("munk moment of a translating ellipse") {
  const BodyModel model(BodyShape::ellipse(2.0, 1.0));
  FlowState st;
  st.body.m = 1.0;
  st.body.J = 1.0;
  st.body.hdot = {0.6, 0.45};
  const GeneralizedForce f = vortical_force(model, st, {});
  // broadside-seeking: for body-frame velocity (u, v) with u, v > 0 the body
  // must rotate clockwise toward 90 degrees of attack, so the torque is
  // (M11 - M22) u v < 0 for a > b
  const auto& M = model.added_mass().m;
  const double expect = (M[0][0] - M[1][1]) * st.body.hdot.x * st.body.hdot.y;
  CHECK(expect < 0.0);
  CHECK(f.force.norm() < 1e-8);
  CHECK(f.torque == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("body acceleration: rest stays at rest, disk never spins") {
  const BodyModel model(BodyShape::disk(1.0));
  FlowState st;
  st.body.m = 2.0;
  st.body.J = 0.5;
  const BodyAcceleration a0 = body_acceleration(model, st, {});
  CHECK(a0.hddot.norm() < 1e-13);
  CHECK(std::abs(a0.rdot) < 1e-13);

  st.particles = {{{2.0, 0.7}, 1.3}, {{-1.4, -1.2}, 0.6}};
  st.body.hdot = {0.2, -0.1};
  const BodyAcceleration a1 = body_acceleration(model, st, {});
  CHECK(std::abs(a1.rdot) < 1e-10);  // radial normals: zero torque on a disk
}

TEST_CASE("scalar added-mass reduction for the free disk") {
  const BodyModel model(BodyShape::disk(1.0));
  FlowState st;
  st.body.m = 2.0;
  st.body.J = 1.0;
  st.particles = {{{2.2, 0.0}, 1.8}};
  const GeneralizedForce f = vortical_force(model, st, {});
  const BodyAcceleration a = body_acceleration(model, st, {});
  CHECK(a.hddot.x == doctest::Approx(f.force.x / (st.body.m + M_PI)).epsilon(1e-10));
  CHECK(a.hddot.y == doctest::Approx(f.force.y / (st.body.m + M_PI)).epsilon(1e-10));
}

TEST_CASE("richardson disagreement raises QuadratureUnresolved") {
  // a particle hugging the boundary leaves the 256-node rule unresolved
  const BodyModel model(BodyShape::disk(1.0));
  FlowState st;
  st.body.m = 1.0;
  st.body.J = 1.0;
  st.particles = {{{1.004, 0.0}, 2.0}};
  CHECK_THROWS_AS((void)vortical_force(model, st, {}), Error);
}

TEST_SUITE_END();
