#pragma once

#include <variant>
#include <vector>

#include "exeuler/complexops.hpp"

namespace exeuler {

struct DiskShape {
  double radius = 1.0;
};

struct EllipseShape {
  double semi_major = 1.0;  // along body x-axis
  double semi_minor = 1.0;  // along body y-axis
};

struct PolylineShape {
  std::vector<Vec2> points;  // closed, positively oriented, not repeated at end
};

/// Body geometry in the body frame. Disk and ellipse are centered at the
/// origin; a polyline is taken as given.
class BodyShape {
 public:
  static BodyShape disk(double radius);
  static BodyShape ellipse(double semi_major, double semi_minor);
  /// Throws NonSimpleBoundary / InputError if the polyline is unusable.
  static BodyShape polyline(std::vector<Vec2> points);

  bool is_disk() const { return std::holds_alternative<DiskShape>(v_); }
  bool is_ellipse() const { return std::holds_alternative<EllipseShape>(v_); }
  bool is_polyline() const { return std::holds_alternative<PolylineShape>(v_); }

  const DiskShape& as_disk() const { return std::get<DiskShape>(v_); }
  const EllipseShape& as_ellipse() const { return std::get<EllipseShape>(v_); }
  const PolylineShape& as_polyline() const { return std::get<PolylineShape>(v_); }

  Vec2 centroid() const;
  /// Radius of the smallest origin/centroid-centered circle containing the body.
  double circumscribed_radius() const;
  double diameter() const { return 2.0 * circumscribed_radius(); }

  /// n boundary samples, counterclockwise. For polylines the input vertices
  /// are resampled by arc length.
  std::vector<Vec2> boundary_samples(int n) const;

 private:
  std::variant<DiskShape, EllipseShape, PolylineShape> v_;
};

}  // namespace exeuler
