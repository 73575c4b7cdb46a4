#pragma once

#include <array>
#include <vector>

#include "exeuler/complexops.hpp"
#include "exeuler/conformal.hpp"
#include "exeuler/kernels.hpp"

namespace exeuler {

/// Exterior harmonic expansion solving the Kirchhoff potential-flow problem
/// in the mapped plane: w(xi) = sum_{k>=1} A_k xi^{-k} with
/// Im w = -U on |xi| = 1 (U = rigid-motion stream function pulled back to the
/// circle). Built once per map; evaluation is linear in the three unit
/// motions (x-translation, y-translation, rotation).
///
/// The object also caches the boundary parameterization y(theta) = T^{-1}(e^{i theta})
/// shared by the added-mass and pressure quadratures.
class KirchhoffExpansion {
 public:
  explicit KirchhoffExpansion(const ConformalMap& map, int nodes = 512, int max_modes = 128);

  const ConformalMap& map() const { return map_; }
  int nodes() const { return static_cast<int>(bnodes_.size()); }
  int modes() const { return static_cast<int>(coeff_[0].size()); }

  /// Mapped-plane expansion derivative w'(xi) and second derivative for the
  /// given motion. conj-velocity in the physical plane is w'(T(z)) T'(z).
  Complex wprime(Complex xi, BodyMotion m) const;
  Complex wsecond(Complex xi, BodyMotion m) const;
  Complex conj_velocity(Complex z, BodyMotion m) const;
  /// Wirtinger z-derivative of the conj-velocity (holomorphic: qzb = 0).
  Complex conj_velocity_deriv(Complex z, BodyMotion m) const;

  /// Velocity potential Phi on the boundary node k for the given motion
  /// (used by the added-mass quadrature).
  double boundary_potential(int node, BodyMotion m) const;

  /// Physical boundary nodes y(theta_k) (body frame) and dy/dtheta.
  const std::vector<Complex>& boundary_nodes() const { return bnodes_; }
  const std::vector<Complex>& boundary_tangents() const { return btangents_; }
  /// Cached map data at the nodes: zeta_k = e^{i theta_k}, T'(y_k), T''(y_k).
  const std::vector<Complex>& boundary_zeta() const { return bzeta_; }
  const std::vector<Complex>& boundary_dT() const { return bdT_; }
  const std::vector<Complex>& boundary_d2T() const { return bd2T_; }

  /// Max normal-trace mismatch |(u - v_rigid) . n| over the nodes for unit
  /// motions, recorded at construction.
  double bc_residual() const { return bc_residual_; }

  /// Laurent coefficient A_k (k >= 1) of the unit-motion expansion
  /// (unit = 0: x-translation, 1: y-translation, 2: rotation).
  Complex coeff(int unit, int k) const { return coeff_[unit][static_cast<size_t>(k) - 1]; }

 private:
  const ConformalMap& map_;
  std::array<std::vector<Complex>, 3> coeff_;  // A_k per unit motion
  std::vector<Complex> bnodes_;
  std::vector<Complex> btangents_;
  std::vector<Complex> bzeta_;
  std::vector<Complex> bdT_;
  std::vector<Complex> bd2T_;
  std::array<std::vector<double>, 3> bpotential_;  // Re w_a at nodes
  double bc_residual_ = 0.0;
};

}  // namespace exeuler
