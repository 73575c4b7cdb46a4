#include <doctest.h>

#include <cmath>
#include <random>

#include "exeuler/corrector.hpp"
#include "exeuler/rigidbody.hpp"

using namespace exeuler;

namespace {

BodyState moving_body() {
  BodyState b;
  b.h = {0.3, -0.2};
  b.hdot = {0.7, 0.4};
  b.r = 0.9;
  b.theta = 0.0;
  return b;
}

}  // namespace

TEST_SUITE_BEGIN("corrector");

TEST_CASE("grad-perp of U is the rigid velocity field") {
  // sign convention check before anything else relies on U
  const BodyState b = moving_body();
  const double h = 1e-6;
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const Vec2 x{coord(rng), coord(rng)};
    const double Ux = (rigid_stream_U(b, {x.x + h, x.y}) - rigid_stream_U(b, {x.x - h, x.y})) / (2 * h);
    const double Uy = (rigid_stream_U(b, {x.x, x.y + h}) - rigid_stream_U(b, {x.x, x.y - h})) / (2 * h);
    const Vec2 gperp{-Uy, Ux};
    const Vec2 v = b.hdot + b.r * (x - b.h).perp();
    CHECK(gperp.x == doctest::Approx(v.x).epsilon(1e-7));
    CHECK(gperp.y == doctest::Approx(v.y).epsilon(1e-7));
  }
}

TEST_CASE("lambda vanishes outside the outer cutoff") {
  const BodyState b = moving_body();
  const CorrectorCutoff c = cutoff_for_radius(1.0);
  for (double rho : {2.2, 2.5, 10.0, 100.0}) {
    const Vec2 x = b.h + Vec2{rho, 0.1 * rho};
    if ((x - b.h).norm() < c.outer) continue;
    const Vec2 lam = corrector_lambda(b, c, x);
    CHECK(lam.x == 0.0);
    CHECK(lam.y == 0.0);
  }
}

TEST_CASE("lambda equals the rigid field inside the inner cutoff") {
  const BodyState b = moving_body();
  const CorrectorCutoff c = cutoff_for_radius(1.0);
  const Vec2 x = b.h + Vec2{0.8, 0.4};  // |x-h| < inner = 1.1
  const Vec2 lam = corrector_lambda(b, c, x);
  const Vec2 v = b.hdot + b.r * (x - b.h).perp();
  CHECK(lam.x == v.x);
  CHECK(lam.y == v.y);
}

TEST_CASE("lambda normal trace equals the rigid normal trace on the body") {
  const BodyModel model(BodyShape::ellipse(2.0, 1.0));
  const CorrectorCutoff c = cutoff_for_radius(model.circumscribed_radius());
  BodyState b = moving_body();
  double worst = 0.0;
  const auto& kirch = model.kirchhoff();
  for (int k = 0; k < kirch.nodes(); k += 4) {
    const Vec2 y = to_vec(kirch.boundary_nodes()[k]);
    const Vec2 x = y + b.h;  // theta = 0
    const Vec2 t = to_vec(kirch.boundary_tangents()[k]);
    const Vec2 n = t.perp() / t.norm();
    const Vec2 lam = corrector_lambda(b, c, x);
    const Vec2 v = b.hdot + b.r * (x - b.h).perp();
    worst = std::max(worst, std::abs((lam - v).dot(n)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("lambda is divergence free (central differences)") {
  const BodyState b = moving_body();
  const CorrectorCutoff c = cutoff_for_radius(1.0);
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> rad(0.0, 3.0);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  const double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Vec2 x = b.h + to_vec(std::polar(rad(rng), ang(rng)));
    const double div =
        (corrector_lambda(b, c, {x.x + h, x.y}).x - corrector_lambda(b, c, {x.x - h, x.y}).x +
         corrector_lambda(b, c, {x.x, x.y + h}).y - corrector_lambda(b, c, {x.x, x.y - h}).y) /
        (2 * h);
    worst = std::max(worst, std::abs(div));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("lambda translates with the body") {
  BodyState b1 = moving_body();
  BodyState b2 = b1;
  b2.h += Vec2{1.7, -2.3};
  const CorrectorCutoff c = cutoff_for_radius(1.0);
  const Vec2 probe{0.9, 1.1};
  const Vec2 l1 = corrector_lambda(b1, c, b1.h + probe);
  const Vec2 l2 = corrector_lambda(b2, c, b2.h + probe);
  CHECK(l1.x == doctest::Approx(l2.x).epsilon(1e-15));
  CHECK(l1.y == doctest::Approx(l2.y).epsilon(1e-15));
}

TEST_CASE("tangent residual: static, moving disk, full scenario") {
  const BodyModel model(BodyShape::disk(1.0));
  const CorrectorCutoff c = cutoff_for_radius(model.circumscribed_radius());

  FlowState st;
  st.body.m = 1.0;
  st.body.J = 1.0;
  CHECK(tangent_residual(model, st, c, 256) == 0.0);

  st.body.hdot = {1.0, 0.0};
  CHECK(tangent_residual(model, st, c, 256) < 1e-8);

  st.body.hdot = {0.4, -0.3};
  st.body.r = 0.6;
  st.body.h = {0.2, 0.1};
  st.body.theta = 0.3;
  st.gamma_bound = 0.7;
  st.particles = {{{2.0, 0.5}, 1.1}, {{-1.5, 1.4}, -0.8}};
  CHECK(tangent_residual(model, st, c, 256) < 1e-6);

  const BodyModel ell(BodyShape::ellipse(2.0, 1.0));
  const CorrectorCutoff ce = cutoff_for_radius(ell.circumscribed_radius());
  st.particles = {{{3.0, 0.5}, 1.1}};
  CHECK(tangent_residual(ell, st, ce, 256) < 1e-6);
}

TEST_SUITE_END();
