#include "exeuler/kernels.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "exeuler/errors.hpp"
#include "exeuler/kirchhoff.hpp"

namespace exeuler {

namespace {

constexpr double kInv2Pi = 1.0 / kTwoPi;
constexpr int kSumBlock = 512;  // fixed partition size; part of the reproducibility contract

int g_threads = 1;

void check_exterior_pt(const ConformalMap& map, Vec2 x, const char* where) {
  if (std::abs(map.eval(to_complex(x))) < 1.0 - 1e-9)
    raise(ErrorCode::InsideBody, std::string(where) + ": point inside or on the body");
}

}  // namespace

void set_summation_threads(int n) { g_threads = std::max(1, n); }
int summation_threads() { return g_threads; }

Vec2 inversion_point(Vec2 xi) {
  const double n2 = xi.norm2();
  return {xi.x / n2, xi.y / n2};
}

double green_function(const ConformalMap& map, Vec2 x, Vec2 y) {
  check_exterior_pt(map, x, "green_function");
  check_exterior_pt(map, y, "green_function");
  const Complex tx = map.eval(to_complex(x));
  const Complex ty = map.eval(to_complex(y));
  const Complex tys = ty / std::norm(ty);
  const double num = std::abs(tx - ty);
  if (num == 0.0) raise(ErrorCode::CoincidentPoints, "green_function: x == y");
  return kInv2Pi * std::log(num / (std::abs(tx - tys) * std::abs(ty)));
}

Vec2 kernel_K(const ConformalMap& map, Vec2 x, Vec2 y) {
  check_exterior_pt(map, x, "kernel_K");
  check_exterior_pt(map, y, "kernel_K");
  const Complex d = map.eval(to_complex(x)) - map.eval(to_complex(y));
  const double n2 = std::norm(d);
  if (n2 == 0.0) raise(ErrorCode::CoincidentPoints, "kernel_K: x == y");
  return to_vec(d) * (kInv2Pi / n2);
}

Vec2 kernel_Kstar(const ConformalMap& map, Vec2 x, Vec2 y) {
  check_exterior_pt(map, x, "kernel_Kstar");
  check_exterior_pt(map, y, "kernel_Kstar");
  const Complex ty = map.eval(to_complex(y));
  const Complex d = map.eval(to_complex(x)) - ty / std::norm(ty);
  return to_vec(d) * (kInv2Pi / std::norm(d));
}

ParticleField::ParticleField(const ConformalMap& map, std::span<const VortexParticle> particles,
                             BlobParameter blob)
    : map_(map), particles_(particles), delta_(blob.delta) {
  eta_.reserve(particles.size());
  dT_.reserve(particles.size());
  for (const VortexParticle& p : particles) {
    eta_.push_back(map.eval(to_complex(p.pos)));
    dT_.push_back(map.deriv(to_complex(p.pos)));
  }
}

FieldSample ParticleField::sample(Complex z, int exclude) const {
  return sample_at(map_.eval(z), map_.deriv(z), map_.deriv2(z), exclude);
}

FieldSample ParticleField::sample_at(Complex zeta, Complex dT, Complex d2T, int exclude) const {
  const double d2 = delta_ * delta_;

  Complex w1{}, w2{}, wzb{};
  const size_t n = particles_.size();
  for (size_t j = 0; j < n; ++j) {
    const Complex coef{0.0, -particles_[j].gamma * kInv2Pi};
    const Complex eta = eta_[j];
    if (static_cast<int>(j) != exclude) {
      // direct term, blob-regularized in the mapped plane (exact at delta=0)
      const Complex w = zeta - eta;
      const double den = std::norm(w) + d2;
      const Complex g = std::conj(w) / den;
      const Complex gz = -std::conj(w) * std::conj(w) / (den * den);
      w1 += coef * g;
      w2 += coef * gz;
      if (d2 > 0.0) wzb += coef * (d2 / (den * den));
    }
    // image term, always smooth for exterior z
    const Complex etas = 1.0 / std::conj(eta);
    const Complex wi = zeta - etas;
    w1 -= coef / wi;
    w2 += coef / (wi * wi);
  }

  FieldSample s;
  s.q = w1 * dT;
  s.qz = w2 * dT * dT + w1 * d2T;
  s.qzb = wzb * std::conj(dT) * dT;
  return s;
}

Complex ParticleField::dt_frozen(Complex z, std::span<const Vec2> vels) const {
  return dt_frozen_at(map_.eval(z), map_.deriv(z), vels);
}

Complex ParticleField::dt_frozen_at(Complex zeta, Complex dT, std::span<const Vec2> vels) const {
  const double d2 = delta_ * delta_;
  Complex acc{};
  const size_t n = particles_.size();
  for (size_t j = 0; j < n; ++j) {
    const Complex coef{0.0, -particles_[j].gamma * kInv2Pi};
    const Complex etadot = dT_[j] * to_complex(vels[j]);
    const Complex w = zeta - eta_[j];
    const double den = std::norm(w) + d2;
    // d/dt of conj(w)/den with w = zeta - eta(t)
    const double dden = -2.0 * (std::conj(w) * etadot).real();
    acc += coef * ((-std::conj(etadot) * den - std::conj(w) * dden) / (den * den));
    const Complex etas = 1.0 / std::conj(eta_[j]);
    const Complex etasdot = -std::conj(etadot) / (std::conj(eta_[j]) * std::conj(eta_[j]));
    const Complex wi = zeta - etas;
    acc -= coef * etasdot / (wi * wi);
  }
  return acc * dT;
}

Complex ParticleField::conj_velocity(Complex z, int exclude) const {
  const Complex zeta = map_.eval(z);
  const Complex dT = map_.deriv(z);
  const double d2 = delta_ * delta_;
  const size_t n = particles_.size();

  auto block_sum = [&](size_t lo, size_t hi) {
    Complex acc{};
    for (size_t j = lo; j < hi; ++j) {
      const Complex coef{0.0, -particles_[j].gamma * kInv2Pi};
      const Complex eta = eta_[j];
      if (static_cast<int>(j) != exclude) {
        const Complex w = zeta - eta;
        acc += coef * (std::conj(w) / (std::norm(w) + d2));
      }
      acc -= coef / (zeta - 1.0 / std::conj(eta));
    }
    return acc;
  };

  const size_t nblocks = (n + kSumBlock - 1) / kSumBlock;
  if (g_threads <= 1 || nblocks <= 1) {
    Complex acc{};
    for (size_t b = 0; b < nblocks; ++b)
      acc += block_sum(b * kSumBlock, std::min(n, (b + 1) * kSumBlock));
    return acc * dT;
  }

  std::vector<Complex> partial(nblocks);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      partial[b] = block_sum(b * kSumBlock, std::min(n, (b + 1) * kSumBlock));
    }
  };
  std::vector<std::thread> pool;
  const int nw = std::min<int>(g_threads, static_cast<int>(nblocks));
  pool.reserve(nw);
  for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  Complex acc{};
  for (const Complex& c : partial) acc += c;  // fixed reduction order
  return acc * dT;
}

Vec2 velocity_from_particles(const ConformalMap& map, std::span<const VortexParticle> particles,
                             Vec2 x, BlobParameter blob, int exclude) {
  check_exterior_pt(map, x, "velocity_from_particles");
  const ParticleField f(map, particles, blob);
  return vel_from_conj(f.conj_velocity(to_complex(x), exclude));
}

Vec2 harmonic_circulation_field(const ConformalMap& map, Vec2 x) {
  check_exterior_pt(map, x, "harmonic_circulation_field");
  const Complex zeta = map.eval(to_complex(x));
  const Complex q = Complex{0.0, -kInv2Pi} / zeta * map.deriv(to_complex(x));
  return vel_from_conj(q);
}

Vec2 kirchhoff_velocity(const KirchhoffExpansion& kirch, BodyMotion motion, Vec2 x) {
  check_exterior_pt(kirch.map(), x, "kirchhoff_velocity");
  return vel_from_conj(kirch.conj_velocity(to_complex(x), motion));
}

Vec2 kirchhoff_velocity(const ConformalMap& map, BodyMotion motion, Vec2 x) {
  const KirchhoffExpansion kirch(map);
  return kirchhoff_velocity(kirch, motion, x);
}

double total_circulation_coefficient(std::span<const VortexParticle> particles,
                                     double gamma_bound) {
  double g = gamma_bound;
  for (const VortexParticle& p : particles) g += p.gamma;
  return g;
}

Vec2 total_velocity(const ConformalMap& map, const KirchhoffExpansion& kirch,
                    std::span<const VortexParticle> particles, BodyMotion motion,
                    double gamma_bound, Vec2 x, BlobParameter blob) {
  Vec2 u = velocity_from_particles(map, particles, x, blob);
  u += kirchhoff_velocity(kirch, motion, x);
  const double ge = total_circulation_coefficient(particles, gamma_bound);
  if (ge != 0.0) u += ge * harmonic_circulation_field(map, x);
  return u;
}

}  // namespace exeuler
