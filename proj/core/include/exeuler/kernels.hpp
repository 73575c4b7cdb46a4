#pragma once

#include <span>
#include <vector>

#include "exeuler/complexops.hpp"
#include "exeuler/conformal.hpp"

namespace exeuler {

/// Discrete carrier of vorticity: position in the body frame plus circulation.
struct VortexParticle {
  Vec2 pos;
  double gamma = 0.0;
};

/// Desingularization radius of the direct kernel, applied in the mapped plane.
/// Image terms are never regularized (they are smooth for exterior points).
struct BlobParameter {
  double delta = 0.0;
};

/// Rigid motion data entering the boundary condition, in the body frame.
struct BodyMotion {
  Vec2 ell;       // translational velocity
  double r = 0.0; // angular velocity
};

/// xi* = xi / |xi|^2, the reflection across the unit circle.
Vec2 inversion_point(Vec2 xi);

/// Exterior Green's function built from the map by the method of images:
///   G(x,y) = (1/2pi) ln( |T(x)-T(y)| / (|T(x)-T(y)*| |T(y)|) ).
double green_function(const ConformalMap& map, Vec2 x, Vec2 y);

/// Direct and image velocity kernels in the mapped plane.
Vec2 kernel_K(const ConformalMap& map, Vec2 x, Vec2 y);
Vec2 kernel_Kstar(const ConformalMap& map, Vec2 x, Vec2 y);

/// Velocity induced by the particle set (perp-gradient of the discrete stream
/// function; tangential on the boundary). `exclude` omits one particle's
/// direct term but keeps its image. Summation order is fixed (index order
/// within fixed-size blocks) so results are reproducible bit-for-bit for any
/// thread count.
Vec2 velocity_from_particles(const ConformalMap& map, std::span<const VortexParticle> particles,
                             Vec2 x, BlobParameter blob, int exclude = -1);

/// Unit-circulation harmonic field grad-perp[(1/2pi) ln |T(x)|]; curl- and
/// divergence-free, tangential on the boundary, circulation 1 around the body.
Vec2 harmonic_circulation_field(const ConformalMap& map, Vec2 x);

class KirchhoffExpansion;  // kirchhoff.hpp

/// Potential flow matching the body's normal velocity. The overload without a
/// prebuilt expansion constructs one on the fly (setup cost ~ nodes * modes).
Vec2 kirchhoff_velocity(const KirchhoffExpansion& kirch, BodyMotion motion, Vec2 x);
Vec2 kirchhoff_velocity(const ConformalMap& map, BodyMotion motion, Vec2 x);

/// Total fluid velocity in the body frame:
///   u = u_particles + u_kirchhoff + gamma_eff * harmonic,
/// with gamma_eff = gamma_bound + sum gamma_j, so that the circulation around
/// the body stays gamma_bound and the circulation at infinity is
/// gamma_bound + sum gamma_j.
Vec2 total_velocity(const ConformalMap& map, const KirchhoffExpansion& kirch,
                    std::span<const VortexParticle> particles, BodyMotion motion,
                    double gamma_bound, Vec2 x, BlobParameter blob);

double total_circulation_coefficient(std::span<const VortexParticle> particles, double gamma_bound);

/// Number of worker threads used by the particle summation (1 = sequential).
/// Partitioning is by fixed-size index blocks, so the value never changes
/// results, only wall time.
void set_summation_threads(int n);
int summation_threads();

/// Internal evaluation record: conjugate velocity q = u1 - i u2 and its
/// Wirtinger derivatives in the physical plane. qzb != 0 only for blob-
/// regularized direct terms.
struct FieldSample {
  Complex q{};
  Complex qz{};
  Complex qzb{};
};

/// Low-level evaluator used by the rigid-body pressure quadrature and the
/// dynamics hot path. All inputs are body-frame.
class ParticleField {
 public:
  ParticleField(const ConformalMap& map, std::span<const VortexParticle> particles,
                BlobParameter blob);

  /// q and derivatives of the particle-induced field at z (body frame).
  FieldSample sample(Complex z, int exclude = -1) const;
  /// Time derivative of q at fixed z for frozen particle motion, given the
  /// body-frame particle velocities.
  Complex dt_frozen(Complex z, std::span<const Vec2> particle_velocities) const;
  Complex conj_velocity(Complex z, int exclude = -1) const;

  /// Variants with precomputed map data (fixed boundary nodes).
  FieldSample sample_at(Complex zeta, Complex dT, Complex d2T, int exclude = -1) const;
  Complex dt_frozen_at(Complex zeta, Complex dT,
                       std::span<const Vec2> particle_velocities) const;

  const std::vector<Complex>& mapped_positions() const { return eta_; }
  const std::vector<Complex>& mapped_derivs() const { return dT_; }

 private:
  const ConformalMap& map_;
  std::span<const VortexParticle> particles_;
  double delta_ = 0.0;
  std::vector<Complex> eta_;   // T(y_j)
  std::vector<Complex> dT_;    // T'(y_j)
};

}  // namespace exeuler
