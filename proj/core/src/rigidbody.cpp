#include "exeuler/rigidbody.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "exeuler/errors.hpp"

namespace exeuler {

double AddedMassMatrix::symmetry_defect() const {
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) d = std::max(d, std::abs(m[i][j] - m[j][i]));
  return d;
}

Mat2 AddedMassMatrix::translational(double theta) const {
  const double c = std::cos(theta), s = std::sin(theta);
  // R Mt R^T with R the rotation by theta
  const double a = m[0][0], b = m[0][1], d = m[1][1];
  Mat2 out;
  out.a[0][0] = c * c * a - 2 * c * s * b + s * s * d;
  out.a[0][1] = c * s * (a - d) + (c * c - s * s) * b;
  out.a[1][0] = out.a[0][1];
  out.a[1][1] = s * s * a + 2 * c * s * b + c * c * d;
  return out;
}

AddedMassMatrix added_mass(const KirchhoffExpansion& kirch) {
  const int n = kirch.nodes();
  const auto& nodesv = kirch.boundary_nodes();
  const auto& tangents = kirch.boundary_tangents();
  const BodyMotion units[3] = {{{1.0, 0.0}, 0.0}, {{0.0, 1.0}, 0.0}, {{0.0, 0.0}, 1.0}};

  AddedMassMatrix M{};
  const double dth = kTwoPi / n;
  for (int b = 0; b < 3; ++b) {
    for (int k = 0; k < n; ++k) {
      const Vec2 y = to_vec(nodesv[k]);
      const Vec2 t = to_vec(tangents[k]);
      // dU_b/dtheta along the boundary; grad U = -ell_perp + r y
      Vec2 gradU;
      switch (b) {
        case 0: gradU = {0.0, -1.0}; break;
        case 1: gradU = {1.0, 0.0}; break;
        default: gradU = y; break;
      }
      const double dU = gradU.dot(t);
      for (int a = 0; a < 3; ++a) M.m[a][b] += kirch.boundary_potential(k, units[a]) * dU * dth;
    }
  }
  // clean up round-off asymmetry
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double avg = 0.5 * (M.m[i][j] + M.m[j][i]);
      M.m[i][j] = M.m[j][i] = avg;
    }
  return M;
}

AddedMassMatrix added_mass(const ConformalMap& map, const BodyShape& shape) {
  (void)shape;
  const KirchhoffExpansion kirch(map);
  return added_mass(kirch);
}

BodyModel::BodyModel(BodyShape shape, int map_order, int boundary_nodes)
    : shape_(std::move(shape)), map_(build_map(shape_, map_order)) {
  kirch_ = std::make_shared<const KirchhoffExpansion>(map_, boundary_nodes);
  kirch_half_ = std::make_shared<const KirchhoffExpansion>(map_, boundary_nodes / 2);
  added_ = exeuler::added_mass(*kirch_);
  rho_s_ = shape_.circumscribed_radius();
}

namespace {

Complex rot(double theta) { return std::polar(1.0, theta); }

/// dp/dtheta at the boundary nodes of `kirch`, then force/torque by parts:
///   F_hat = -i * sum y p' dth,  tau = -1/2 sum |y|^2 p' dth   (into-body normal)
GeneralizedForce force_with_nodes(const FlowState& st, BlobParameter blob,
                                  std::span<const Vec2> pvels, const KirchhoffExpansion& kirch,
                                  double gamma_eff) {
  const ConformalMap& map = kirch.map();
  const ParticleField pf(map, st.particles, blob);
  const Vec2 ell = to_vec(std::conj(rot(st.body.theta)) * to_complex(st.body.hdot));
  const double r = st.body.r;
  const BodyMotion motion{ell, r};
  const BodyMotion frozen_kirch{-r * ell.perp(), 0.0};

  const auto& ys = kirch.boundary_nodes();
  const auto& ts = kirch.boundary_tangents();
  const int n = kirch.nodes();
  const double dth = kTwoPi / n;
  const Complex ell_c = to_complex(ell);

  const auto& zetas = kirch.boundary_zeta();
  const auto& dTs = kirch.boundary_dT();
  const auto& d2Ts = kirch.boundary_d2T();
  const bool frozen_active = frozen_kirch.ell.x != 0.0 || frozen_kirch.ell.y != 0.0;

  Complex Fhat{};
  double tau = 0.0;
  for (int k = 0; k < n; ++k) {
    const Complex y = ys[k];
    const Complex xi = zetas[k];
    const Complex dT = dTs[k];
    const Complex d2T = d2Ts[k];
    // total field sample: particles + kirchhoff + harmonic (all body frame)
    FieldSample s = pf.sample_at(xi, dT, d2T);
    const Complex wp = kirch.wprime(xi, motion);
    s.q += wp * dT;
    s.qz += kirch.wsecond(xi, motion) * dT * dT + wp * d2T;
    if (gamma_eff != 0.0) {
      const Complex hcoef = Complex{0.0, -gamma_eff / kTwoPi};
      s.q += hcoef / xi * dT;
      s.qz += hcoef * (-dT * dT / (xi * xi) + d2T / xi);
    }

    Complex dtq = pf.dt_frozen_at(xi, dT, pvels);
    if (frozen_active) dtq += kirch.wprime(xi, frozen_kirch) * dT;

    // A = dt_u + r u_perp + (grad u)(u - ell - r y_perp), complex vector form
    const Complex u_c = std::conj(s.q);
    const Complex c = u_c - ell_c - r * Complex{0.0, 1.0} * y;
    const Complex A = std::conj(dtq) + r * Complex{0.0, 1.0} * u_c + std::conj(s.qzb) * c +
                      std::conj(s.qz) * std::conj(c);

    const double pprime = -(std::conj(A) * ts[k]).real();
    Fhat += y * pprime;
    tau += -0.5 * std::norm(y) * pprime;
  }
  Fhat *= Complex{0.0, -1.0} * dth;
  tau *= dth;

  GeneralizedForce out;
  out.force = to_vec(rot(st.body.theta) * Fhat);
  out.torque = tau;
  return out;
}

}  // namespace

std::vector<Vec2> particle_velocities(const BodyModel& model, const FlowState& st,
                                      BlobParameter blob) {
  const ParticleField pf(model.map(), st.particles, blob);
  const Vec2 ell = to_vec(std::conj(rot(st.body.theta)) * to_complex(st.body.hdot));
  const double ge = total_circulation_coefficient(st.particles, st.gamma_bound);
  const BodyMotion motion{ell, st.body.r};
  std::vector<Vec2> v(st.particles.size());
  for (size_t j = 0; j < st.particles.size(); ++j) {
    const Complex y = to_complex(st.particles[j].pos);
    Complex q = pf.conj_velocity(y, static_cast<int>(j));
    q += model.kirchhoff().conj_velocity(y, motion);
    if (ge != 0.0)
      q += Complex{0.0, -ge / kTwoPi} / model.map().eval(y) * model.map().deriv(y);
    const Vec2 u = vel_from_conj(q);
    v[j] = u - ell - st.body.r * to_vec(y).perp();
  }
  return v;
}

GeneralizedForce pressure_force(const FlowState& state, BlobParameter blob,
                                std::span<const Vec2> pvels, const KirchhoffExpansion& kirch) {
  const double ge = total_circulation_coefficient(state.particles, state.gamma_bound);
  return force_with_nodes(state, blob, pvels, kirch, ge);
}

GeneralizedForce vortical_force(const BodyModel& model, const FlowState& state,
                                BlobParameter blob) {
  const std::vector<Vec2> pvels = particle_velocities(model, state, blob);
  const GeneralizedForce full = pressure_force(state, blob, pvels, model.kirchhoff());
  const GeneralizedForce half = pressure_force(state, blob, pvels, model.kirchhoff_half());
  const double n1 = std::sqrt(full.force.norm2() + full.torque * full.torque);
  const double n2 = std::sqrt((full.force - half.force).norm2() +
                              (full.torque - half.torque) * (full.torque - half.torque));
  if (n1 > 1e-12 && n2 > 1e-4 * n1)
    raise(ErrorCode::QuadratureUnresolved,
          "vortical_force: 256/512-node estimates disagree by " + std::to_string(n2 / n1) +
              " relative");
  return full;
}

BodyAcceleration body_acceleration(const BodyModel& model, const FlowState& state,
                                   BlobParameter blob) {
  const GeneralizedForce f = vortical_force(model, state, blob);
  const double c = std::cos(state.body.theta), s = std::sin(state.body.theta);
  // body-frame force
  const Vec2 fb{c * f.force.x + s * f.force.y, -s * f.force.x + c * f.force.y};

  Eigen::Matrix3d A;
  const auto& M = model.added_mass().m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) A(i, j) = M[i][j];
  A(0, 0) += state.body.m;
  A(1, 1) += state.body.m;
  A(2, 2) += state.body.J;

  const Eigen::Vector3d rhs(fb.x, fb.y, f.torque);
  const Eigen::Vector3d beta = A.ldlt().solve(rhs);
  if (!beta.allFinite() || (A * beta - rhs).norm() > 1e-12 * std::max(1.0, rhs.norm()))
    raise(ErrorCode::SingularSystem, "body_acceleration: added-mass solve failed");

  BodyAcceleration out;
  out.hddot = {c * beta(0) - s * beta(1), s * beta(0) + c * beta(1)};
  out.rdot = beta(2);
  return out;
}

}  // namespace exeuler
