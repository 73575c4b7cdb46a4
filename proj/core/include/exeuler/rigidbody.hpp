#pragma once

#include <array>
#include <memory>
#include <vector>

#include "exeuler/complexops.hpp"
#include "exeuler/conformal.hpp"
#include "exeuler/kernels.hpp"
#include "exeuler/kirchhoff.hpp"
#include "exeuler/shape.hpp"

namespace exeuler {

/// Rigid-body state. h, hdot are lab-frame; particles live in the body frame
/// (x = Q(theta) y + h).
struct BodyState {
  Vec2 h{};
  Vec2 hdot{};
  double theta = 0.0;
  double r = 0.0;
  double m = 1.0;
  double J = 1.0;
};

/// Full simulation state.
struct FlowState {
  BodyState body;
  std::vector<VortexParticle> particles;  // body-frame positions
  double gamma_bound = 0.0;
  double time = 0.0;
};

/// Body-frame added-mass matrix: M_ab = boundary energy integral of the
/// Kirchhoff potentials (symmetric positive semidefinite, constant in time).
struct AddedMassMatrix {
  std::array<std::array<double, 3>, 3> m{};

  double symmetry_defect() const;
  /// 2x2 translational block rotated to the lab frame.
  Mat2 translational(double theta) const;
};

/// One-time setup bundle for a body: shape, exterior map, Kirchhoff expansion,
/// added mass, cutoff radii. Everything downstream (dynamics, diagnostics)
/// works off this.
class BodyModel {
 public:
  BodyModel(BodyShape shape, int map_order = 64, int boundary_nodes = 512);

  const BodyShape& shape() const { return shape_; }
  const ConformalMap& map() const { return map_; }
  const KirchhoffExpansion& kirchhoff() const { return *kirch_; }
  const KirchhoffExpansion& kirchhoff_half() const { return *kirch_half_; }
  const AddedMassMatrix& added_mass() const { return added_; }
  double circumscribed_radius() const { return rho_s_; }

 private:
  BodyShape shape_;
  ConformalMap map_;
  std::shared_ptr<const KirchhoffExpansion> kirch_;       // full-resolution nodes
  std::shared_ptr<const KirchhoffExpansion> kirch_half_;  // half nodes, Richardson check
  AddedMassMatrix added_;
  double rho_s_ = 1.0;
};

AddedMassMatrix added_mass(const ConformalMap& map, const BodyShape& shape);
AddedMassMatrix added_mass(const KirchhoffExpansion& kirch);

struct GeneralizedForce {
  Vec2 force{};    // lab frame
  double torque = 0.0;  // about h
};

/// Boundary quadrature of the Bernoulli pressure with acceleration potentials
/// excluded. Throws QuadratureUnresolved when the 256/512-node Richardson
/// estimates disagree beyond 1e-4 relative.
GeneralizedForce vortical_force(const BodyModel& model, const FlowState& state,
                                BlobParameter blob);

struct BodyAcceleration {
  Vec2 hddot{};   // lab frame
  double rdot = 0.0;
};

/// Solves (diag(m, m, J) + R M R^T) (hddot, rdot) = vortical force.
BodyAcceleration body_acceleration(const BodyModel& model, const FlowState& state,
                                   BlobParameter blob);

/// Shared low-level entry: pressure force from explicitly supplied body-frame
/// particle velocities (dynamics already has them; avoids recomputation).
GeneralizedForce pressure_force(const FlowState& state, BlobParameter blob,
                                std::span<const Vec2> particle_velocities_body,
                                const KirchhoffExpansion& kirch);

/// Body-frame particle velocities ydot_j = u(y_j) - ell_hat - r y_j-perp with
/// the particle's own direct term excluded and its images included.
std::vector<Vec2> particle_velocities(const BodyModel& model, const FlowState& state,
                                      BlobParameter blob);

}  // namespace exeuler
