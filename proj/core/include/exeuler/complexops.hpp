#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace exeuler {

using Complex = std::complex<double>;

/// Plain 2-vector. Velocities, positions and forces are carried as Vec2 at
/// API boundaries; field evaluation happens in complex arithmetic internally.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  Vec2 operator-() const { return {-x, -y}; }

  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }
  /// x-perp = (-x2, x1), the convention used throughout.
  Vec2 perp() const { return {-y, x}; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

inline Complex to_complex(Vec2 v) { return {v.x, v.y}; }
inline Vec2 to_vec(Complex z) { return {z.real(), z.imag()}; }

/// Conjugate velocity q = u1 - i u2  <->  velocity vector (u1, u2).
inline Vec2 vel_from_conj(Complex q) { return {q.real(), -q.imag()}; }
inline Complex conj_from_vel(Vec2 u) { return {u.x, -u.y}; }

struct Mat2 {
  // row-major: a[r][c]
  std::array<std::array<double, 2>, 2> a{{{0.0, 0.0}, {0.0, 0.0}}};

  Vec2 apply(Vec2 v) const { return {a[0][0] * v.x + a[0][1] * v.y, a[1][0] * v.x + a[1][1] * v.y}; }
  Mat2 transpose() const {
    Mat2 m;
    m.a = {{{a[0][0], a[1][0]}, {a[0][1], a[1][1]}}};
    return m;
  }
  double det() const { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }
};

/// Real 2x2 Jacobian of the plane map induced by a holomorphic f with f'= d:
/// columns follow the Cauchy-Riemann structure.
inline Mat2 jacobian_from_holomorphic(Complex d) {
  Mat2 m;
  m.a = {{{d.real(), -d.imag()}, {d.imag(), d.real()}}};
  return m;
}

/// Real Jacobian of the velocity field u = (Re f, -Im f) where f is a
/// conjugate-velocity field with Wirtinger derivatives fz = df/dz and
/// fzb = df/dzbar. For holomorphic f (fzb = 0) this is symmetric traceless.
inline Mat2 velocity_jacobian(Complex fz, Complex fzb) {
  Mat2 m;
  const Complex s = fz + fzb;
  const Complex d = fz - fzb;
  m.a[0][0] = s.real();
  m.a[0][1] = -d.imag();
  m.a[1][0] = -s.imag();
  m.a[1][1] = -d.real();
  return m;
}

inline Complex rotate(Complex z, double theta) { return z * std::polar(1.0, theta); }

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace exeuler
