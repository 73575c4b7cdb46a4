#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exeuler/complexops.hpp"
#include "exeuler/shape.hpp"

namespace exeuler {

/// Exterior biholomorphism T : F -> {|xi| > 1}, normalized so that
/// T(z) ~ scale * (z - center) at infinity with scale > 0.
///
/// Representation:  T(z) = scale * s + c0 + sum_{k=1..N} c_k s^{-k}
/// where s = sigma(z) is either (z - center) or, when a Joukowski pre-map is
/// attached (f, g > 0), the inverse Joukowski variable
///     sigma(z) = ( (z-center) + sqrt((z-center)^2 - 4 f g) ) / 2 ,
/// branch chosen analytic outside the focal segment, sigma ~ z - center at
/// infinity. The pre-map makes disks (g = 0) and ellipses (coeffs empty)
/// exact; polyline fits run with g = 0 and carry the least-squares Laurent
/// coefficients. sigma maps the body boundary onto the circle |s| = f for an
/// exact ellipse, and the Laurent part rescales to the unit circle.
class ConformalMap {
 public:
  ConformalMap() = default;
  ConformalMap(double scale, Vec2 center, std::vector<Complex> coeffs, double jouk_f = 0.0,
               double jouk_g = 0.0);

  double scale() const { return scale_; }
  Vec2 center() const { return center_; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }  // N; coeffs_ = c0..cN
  double joukowski_f() const { return jouk_f_; }
  double joukowski_g() const { return jouk_g_; }

  /// Complex evaluation and derivatives (analytic, not finite differences).
  Complex eval(Complex z) const;
  Complex deriv(Complex z) const;
  Complex deriv2(Complex z) const;

  /// Inverse by damped Newton on the series; throws NewtonDiverged.
  Complex inverse(Complex xi) const;
  /// d/dxi of the inverse map: 1 / T'(T^{-1}(xi)).
  Complex inverse_deriv(Complex xi) const;

  bool is_identity() const;

  std::string to_json() const;
  static ConformalMap from_json(const std::string& doc);

 private:
  Complex sigma(Complex zc) const;        // pre-map on centered coordinate
  Complex sigma_deriv(Complex zc) const;
  Complex sigma_deriv2(Complex zc) const;

  double scale_ = 1.0;
  Vec2 center_{};
  std::vector<Complex> coeffs_;  // c0, c1, ..., cN
  double jouk_f_ = 0.0;
  double jouk_g_ = 0.0;
};

/// Spec operations on points in the physical plane. map_forward checks the
/// exterior precondition (throws InsideBody).
Vec2 map_forward(const ConformalMap& map, Vec2 x);
Vec2 map_inverse(const ConformalMap& map, Vec2 xi);
Mat2 map_jacobian(const ConformalMap& map, Vec2 x);
/// H[i][j][k] = d^2 T_i / dx_j dx_k.
std::array<Mat2, 2> map_hessian(const ConformalMap& map, Vec2 x);

/// Construct the exterior map for a shape. `order` caps the Laurent order for
/// polyline fits (doubling from 4 up to the cap); exact for disk and ellipse.
ConformalMap build_map(const BodyShape& shape, int order);

/// Diagnostics used by the validate suite and the map invariants.
struct MapQualityReport {
  double boundary_deviation = 0.0;   // max | |T(b)| - 1 | over samples
  double roundtrip_error = 0.0;      // max |T^-1(T(x)) - x| over exterior samples
  double cauchy_riemann_residual = 0.0;
  double derivative_bound = 0.0;     // sampled |grad T| + |grad T^-1| + |D2 T| + |D2 T^-1|
  double min_pair_separation = 0.0;  // injectivity proxy on the sample grid
};
MapQualityReport assess_map(const ConformalMap& map, const BodyShape& shape, int boundary_samples,
                            int exterior_samples);

}  // namespace exeuler
