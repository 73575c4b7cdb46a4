#include "exeuler/shape.hpp"

#include <algorithm>
#include <cmath>

#include "exeuler/errors.hpp"

namespace exeuler {
namespace {

double polygon_signed_area(const std::vector<Vec2>& p) {
  double a = 0.0;
  const size_t n = p.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& u = p[i];
    const Vec2& v = p[(i + 1) % n];
    a += u.cross(v);
  }
  return 0.5 * a;
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  auto orient = [](Vec2 p, Vec2 q, Vec2 r) { return (q - p).cross(r - p); };
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
}

void validate_polyline(const std::vector<Vec2>& p) {
  if (p.size() < 32) raise(ErrorCode::InputError, "polyline needs at least 32 points");
  if (polygon_signed_area(p) <= 0.0)
    raise(ErrorCode::NonSimpleBoundary, "polyline must be positively oriented");
  const size_t n = p.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      // skip adjacent segments (shared endpoint)
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(p[i], p[(i + 1) % n], p[j], p[(j + 1) % n]))
        raise(ErrorCode::NonSimpleBoundary, "polyline self-intersects");
    }
  }
}

}  // namespace

BodyShape BodyShape::disk(double radius) {
  if (!(radius > 0.0)) raise(ErrorCode::InputError, "disk radius must be positive");
  BodyShape s;
  s.v_ = DiskShape{radius};
  return s;
}

BodyShape BodyShape::ellipse(double semi_major, double semi_minor) {
  if (!(semi_major > 0.0) || !(semi_minor > 0.0))
    raise(ErrorCode::InputError, "ellipse semi-axes must be positive");
  BodyShape s;
  s.v_ = EllipseShape{semi_major, semi_minor};
  return s;
}

BodyShape BodyShape::polyline(std::vector<Vec2> points) {
  validate_polyline(points);
  BodyShape s;
  s.v_ = PolylineShape{std::move(points)};
  return s;
}

Vec2 BodyShape::centroid() const {
  if (is_polyline()) {
    const auto& p = as_polyline().points;
    // area centroid of the polygon
    double a = 0.0, cx = 0.0, cy = 0.0;
    const size_t n = p.size();
    for (size_t i = 0; i < n; ++i) {
      const Vec2& u = p[i];
      const Vec2& v = p[(i + 1) % n];
      const double w = u.cross(v);
      a += w;
      cx += (u.x + v.x) * w;
      cy += (u.y + v.y) * w;
    }
    a *= 0.5;
    return {cx / (6.0 * a), cy / (6.0 * a)};
  }
  return {0.0, 0.0};
}

double BodyShape::circumscribed_radius() const {
  if (is_disk()) return as_disk().radius;
  if (is_ellipse()) return std::max(as_ellipse().semi_major, as_ellipse().semi_minor);
  const Vec2 c = centroid();
  double r = 0.0;
  for (const Vec2& p : as_polyline().points) r = std::max(r, (p - c).norm());
  return r;
}

std::vector<Vec2> BodyShape::boundary_samples(int n) const {
  std::vector<Vec2> out;
  out.reserve(n);
  if (is_disk()) {
    const double R = as_disk().radius;
    for (int i = 0; i < n; ++i) {
      const double t = kTwoPi * i / n;
      out.push_back({R * std::cos(t), R * std::sin(t)});
    }
    return out;
  }
  if (is_ellipse()) {
    const auto& e = as_ellipse();
    for (int i = 0; i < n; ++i) {
      const double t = kTwoPi * i / n;
      out.push_back({e.semi_major * std::cos(t), e.semi_minor * std::sin(t)});
    }
    return out;
  }
  // arc-length resampling of the closed polyline
  const auto& p = as_polyline().points;
  const size_t m = p.size();
  std::vector<double> cum(m + 1, 0.0);
  for (size_t i = 0; i < m; ++i) cum[i + 1] = cum[i] + (p[(i + 1) % m] - p[i]).norm();
  const double total = cum[m];
  size_t seg = 0;
  for (int i = 0; i < n; ++i) {
    const double s = total * i / n;
    while (seg + 1 < m && cum[seg + 1] < s) ++seg;
    const double local = (s - cum[seg]) / (cum[seg + 1] - cum[seg]);
    const Vec2 a = p[seg];
    const Vec2 b = p[(seg + 1) % m];
    out.push_back(a + (b - a) * local);
  }
  return out;
}

}  // namespace exeuler
