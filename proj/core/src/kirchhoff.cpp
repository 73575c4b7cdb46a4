#include "exeuler/kirchhoff.hpp"

#include <cmath>

#include "exeuler/errors.hpp"

namespace exeuler {

namespace {

Vec2 rigid_velocity(Vec2 y, BodyMotion m) { return m.ell + m.r * y.perp(); }

}  // namespace

KirchhoffExpansion::KirchhoffExpansion(const ConformalMap& map, int nodes, int max_modes)
    : map_(map) {
  if (nodes < 16) raise(ErrorCode::InputError, "KirchhoffExpansion: need at least 16 nodes");
  bnodes_.resize(nodes);
  btangents_.resize(nodes);
  bzeta_.resize(nodes);
  bdT_.resize(nodes);
  bd2T_.resize(nodes);

  for (int k = 0; k < nodes; ++k) {
    const Complex xi = std::polar(1.0, kTwoPi * k / nodes);
    const Complex y = map_.inverse(xi);
    bnodes_[k] = y;
    bzeta_[k] = xi;
    bdT_[k] = map_.deriv(y);
    bd2T_[k] = map_.deriv2(y);
    btangents_[k] = Complex{0.0, 1.0} * xi / bdT_[k];  // S'(xi) * i xi
  }

  // boundary data f_a(theta) = -U_a(y(theta)) for the three unit motions
  std::array<std::vector<double>, 3> f;
  for (auto& v : f) v.resize(nodes);
  for (int k = 0; k < nodes; ++k) {
    const Vec2 y = to_vec(bnodes_[k]);
    f[0][k] = y.y;                  // -U for ell = e1:  U = -y2
    f[1][k] = -y.x;                 // -U for ell = e2:  U =  y1
    f[2][k] = -0.5 * y.norm2();     // -U for r = 1
  }

  const int kmax = std::min(max_modes, nodes / 2 - 1);
  for (int a = 0; a < 3; ++a) {
    coeff_[a].resize(kmax);
    for (int k = 1; k <= kmax; ++k) {
      double ac = 0.0, bs = 0.0;
      for (int i = 0; i < nodes; ++i) {
        const double th = kTwoPi * i / nodes;
        ac += f[a][i] * std::cos(k * th);
        bs += f[a][i] * std::sin(k * th);
      }
      ac *= 2.0 / nodes;
      bs *= 2.0 / nodes;
      coeff_[a][k - 1] = Complex{-bs, ac};
    }
    // drop the machine-noise tail
    int last = kmax;
    while (last > 2 && std::abs(coeff_[a][last - 1]) < 1e-15) --last;
    coeff_[a].resize(last);
  }

  for (int a = 0; a < 3; ++a) {
    bpotential_[a].resize(nodes);
    for (int i = 0; i < nodes; ++i) {
      const double th = kTwoPi * i / nodes;
      double phi = 0.0;
      for (size_t k = 1; k <= coeff_[a].size(); ++k) {
        const Complex A = coeff_[a][k - 1];
        phi += A.real() * std::cos(k * th) + A.imag() * std::sin(k * th);
      }
      bpotential_[a][i] = phi;
    }
  }

  // normal-trace check of the three unit solutions at the nodes
  const BodyMotion units[3] = {{{1.0, 0.0}, 0.0}, {{0.0, 1.0}, 0.0}, {{0.0, 0.0}, 1.0}};
  for (int a = 0; a < 3; ++a) {
    for (int i = 0; i < nodes; ++i) {
      const Complex t = btangents_[i];
      const Vec2 n = to_vec(t).perp() / to_vec(t).norm();
      const Vec2 u = vel_from_conj(conj_velocity(bnodes_[i], units[a]));
      const Vec2 v = rigid_velocity(to_vec(bnodes_[i]), units[a]);
      bc_residual_ = std::max(bc_residual_, std::abs((u - v).dot(n)));
    }
  }
  if (!(bc_residual_ < 1e-6))
    raise(ErrorCode::ExpansionDiverged,
          "KirchhoffExpansion: boundary residual " + std::to_string(bc_residual_));
}

Complex KirchhoffExpansion::wprime(Complex xi, BodyMotion m) const {
  const double w[3] = {m.ell.x, m.ell.y, m.r};
  const Complex ixi = 1.0 / xi;
  Complex acc{};
  for (int a = 0; a < 3; ++a) {
    if (w[a] == 0.0) continue;
    Complex p = ixi;  // xi^{-k-1} running factor starts at xi^{-2}
    Complex s{};
    for (size_t k = 1; k <= coeff_[a].size(); ++k) {
      p *= ixi;
      s -= static_cast<double>(k) * coeff_[a][k - 1] * p;
    }
    acc += w[a] * s;
  }
  return acc;
}

Complex KirchhoffExpansion::wsecond(Complex xi, BodyMotion m) const {
  const double w[3] = {m.ell.x, m.ell.y, m.r};
  const Complex ixi = 1.0 / xi;
  Complex acc{};
  for (int a = 0; a < 3; ++a) {
    if (w[a] == 0.0) continue;
    Complex p = ixi * ixi;  // xi^{-k-2} running factor starts at xi^{-3}
    Complex s{};
    for (size_t k = 1; k <= coeff_[a].size(); ++k) {
      p *= ixi;
      s += static_cast<double>(k) * static_cast<double>(k + 1) * coeff_[a][k - 1] * p;
    }
    acc += w[a] * s;
  }
  return acc;
}

Complex KirchhoffExpansion::conj_velocity(Complex z, BodyMotion m) const {
  return wprime(map_.eval(z), m) * map_.deriv(z);
}

Complex KirchhoffExpansion::conj_velocity_deriv(Complex z, BodyMotion m) const {
  const Complex xi = map_.eval(z);
  const Complex dT = map_.deriv(z);
  return wsecond(xi, m) * dT * dT + wprime(xi, m) * map_.deriv2(z);
}

double KirchhoffExpansion::boundary_potential(int node, BodyMotion m) const {
  return m.ell.x * bpotential_[0][node] + m.ell.y * bpotential_[1][node] +
         m.r * bpotential_[2][node];
}

}  // namespace exeuler
