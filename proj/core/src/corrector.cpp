#include "exeuler/corrector.hpp"

#include <cmath>

#include "exeuler/errors.hpp"
#include "exeuler/rigidbody.hpp"

namespace exeuler {

double CorrectorCutoff::phi(double rho) const {
  if (rho <= inner) return 0.0;
  if (rho >= outer) return 1.0;
  const double t = (rho - inner) / (outer - inner);
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double CorrectorCutoff::dphi(double rho) const {
  if (rho <= inner || rho >= outer) return 0.0;
  const double w = outer - inner;
  const double t = (rho - inner) / w;
  return 30.0 * t * t * (1.0 - t) * (1.0 - t) / w;
}

CorrectorCutoff cutoff_for_radius(double circumscribed_radius) {
  return {1.1 * circumscribed_radius, 2.2 * circumscribed_radius};
}

double rigid_stream_U(const BodyState& body, Vec2 x) {
  const Vec2 d = x - body.h;
  return -body.hdot.perp().dot(d) + 0.5 * body.r * d.norm2();
}

Vec2 corrector_lambda(const BodyState& body, const CorrectorCutoff& cutoff, Vec2 x) {
  const Vec2 d = x - body.h;
  const double rho = d.norm();
  const double phi = cutoff.phi(rho);
  if (phi >= 1.0) return {0.0, 0.0};

  const Vec2 v = body.hdot + body.r * d.perp();
  if (phi <= 0.0 && cutoff.dphi(rho) == 0.0) return v;

  const double U = rigid_stream_U(body, x);
  Vec2 grad_phi{0.0, 0.0};
  if (rho > 0.0) grad_phi = d * (cutoff.dphi(rho) / rho);
  // Lambda = (d phi/d x2 * U + (1-phi) v1, -d phi/d x1 * U + (1-phi) v2)
  return {grad_phi.y * U + (1.0 - phi) * v.x, -grad_phi.x * U + (1.0 - phi) * v.y};
}

double tangent_residual(const BodyModel& model, const FlowState& state,
                        const CorrectorCutoff& cutoff, int samples) {
  const KirchhoffExpansion& kirch = model.kirchhoff();
  const ConformalMap& map = model.map();
  const ParticleField pf(map, state.particles, BlobParameter{0.0});
  const double ge = total_circulation_coefficient(state.particles, state.gamma_bound);
  const Complex qrot = std::polar(1.0, state.body.theta);
  const Vec2 ell = to_vec(std::conj(qrot) * to_complex(state.body.hdot));
  const BodyMotion motion{ell, state.body.r};

  double worst = 0.0;
  const int n = kirch.nodes();
  const int stride = std::max(1, n / std::max(1, samples));
  for (int k = 0; k < n; k += stride) {
    const Complex y = kirch.boundary_nodes()[k];
    Complex q = pf.sample(y).q;
    q += kirch.conj_velocity(y, motion);
    if (ge != 0.0) q += Complex{0.0, -ge / kTwoPi} / map.eval(y) * map.deriv(y);
    const Vec2 u_body = vel_from_conj(q);
    // lab-frame velocity and lab-frame boundary point
    const Vec2 u = to_vec(qrot * to_complex(u_body));
    const Vec2 x = to_vec(qrot * y) + state.body.h;
    const Vec2 lambda = corrector_lambda(state.body, cutoff, x);
    const Vec2 t_body = to_vec(kirch.boundary_tangents()[k]);
    const Vec2 t = to_vec(qrot * to_complex(t_body));
    const Vec2 nvec = t.perp() / t.norm();
    worst = std::max(worst, std::abs((u - lambda).dot(nvec)));
  }
  return worst;
}

}  // namespace exeuler
