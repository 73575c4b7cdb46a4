#include "exeuler/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "exeuler/errors.hpp"

namespace exeuler {

namespace {

// iterative radix-2 FFT; falls back to a naive DFT for non power-of-two sizes
void dft(std::vector<Complex>& a, bool inverse) {
  const size_t n = a.size();
  if ((n & (n - 1)) == 0) {
    for (size_t i = 1, j = 0; i < n; ++i) {
      size_t bit = n >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
      const double ang = (inverse ? 1.0 : -1.0) * kTwoPi / static_cast<double>(len);
      const Complex wl = std::polar(1.0, ang);
      for (size_t i = 0; i < n; i += len) {
        Complex w{1.0, 0.0};
        for (size_t k = 0; k < len / 2; ++k) {
          const Complex u = a[i + k];
          const Complex t = a[i + k + len / 2] * w;
          a[i + k] = u + t;
          a[i + k + len / 2] = u - t;
          w *= wl;
        }
      }
    }
  } else {
    std::vector<Complex> out(n);
    for (size_t m = 0; m < n; ++m) {
      Complex s{};
      for (size_t k = 0; k < n; ++k)
        s += a[k] * std::polar(1.0, (inverse ? 1.0 : -1.0) * kTwoPi * m * k / n);
      out[m] = s;
    }
    a = std::move(out);
  }
  if (inverse)
    for (Complex& c : a) c /= static_cast<double>(n);
}

}  // namespace

void AnnularGrid::validate() const {
  if (n_r < 16 || n_t < 16) raise(ErrorCode::InputError, "AnnularGrid: n_r, n_t >= 16 required");
  if (!(r_outer >= 4.0)) raise(ErrorCode::InputError, "AnnularGrid: r_outer >= 4 required");
}

GridField GridField::zeros(const AnnularGrid& g, int comps) {
  GridField f;
  f.grid = g;
  f.comps = comps;
  f.v.assign(static_cast<size_t>(g.rows()) * g.n_t * comps, 0.0);
  return f;
}

GridField solve_poisson_fd(const AnnularGrid& grid, const GridField& omega,
                           const std::vector<double>& outer_bc) {
  grid.validate();
  const int nr = grid.n_r, nt = grid.n_t;
  const double h = grid.h(), dth = grid.dtheta();

  // theta-transform of rhs rows and of the outer boundary values
  std::vector<std::vector<Complex>> what(nr + 1, std::vector<Complex>(nt));
  for (int i = 0; i <= nr; ++i) {
    std::vector<Complex> row(nt);
    for (int k = 0; k < nt; ++k) row[k] = omega.at(i, k);
    dft(row, false);
    what[i] = std::move(row);
  }
  std::vector<Complex> bhat(nt);
  for (int k = 0; k < nt; ++k) bhat[k] = outer_bc.empty() ? 0.0 : outer_bc[k];
  dft(bhat, false);

  // per-mode tridiagonal solve (Thomas), interior unknowns i = 1..nr-1
  std::vector<std::vector<Complex>> phat(nr + 1, std::vector<Complex>(nt, Complex{}));
  const int n = nr - 1;
  std::vector<Complex> diag(n), rhs(n);
  std::vector<double> lower(n), upper(n);
  for (int m = 0; m < nt; ++m) {
    const double sym = (2.0 - 2.0 * std::cos(kTwoPi * m / nt)) / (dth * dth);
    for (int i = 1; i <= n; ++i) {
      const double rho = grid.rho(i);
      lower[i - 1] = 1.0 / (h * h) - 1.0 / (2.0 * rho * h);
      upper[i - 1] = 1.0 / (h * h) + 1.0 / (2.0 * rho * h);
      diag[i - 1] = -2.0 / (h * h) - sym / (rho * rho);
      rhs[i - 1] = what[i][m];
    }
    rhs[n - 1] -= upper[n - 1] * bhat[m];
    // psi(0) = 0: nothing to subtract at the inner end
    for (int i = 1; i < n; ++i) {
      const Complex w = lower[i] / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    std::vector<Complex> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
    for (int i = 1; i <= n; ++i) phat[i][m] = x[i - 1];
    phat[nr][m] = bhat[m];
  }

  GridField psi = GridField::zeros(grid, 1);
  for (int i = 1; i <= nr; ++i) {
    std::vector<Complex> row = phat[i];
    dft(row, true);
    for (int k = 0; k < nt; ++k) psi.at(i, k) = row[k].real();
  }
  return psi;
}

double poisson_residual(const AnnularGrid& grid, const GridField& psi, const GridField& omega) {
  const int nr = grid.n_r, nt = grid.n_t;
  const double h = grid.h(), dth = grid.dtheta();
  double worst = 0.0;
  for (int i = 1; i < nr; ++i) {
    const double rho = grid.rho(i);
    for (int k = 0; k < nt; ++k) {
      const int km = (k + nt - 1) % nt, kp = (k + 1) % nt;
      const double lap = (psi.at(i + 1, k) - 2.0 * psi.at(i, k) + psi.at(i - 1, k)) / (h * h) +
                         (psi.at(i + 1, k) - psi.at(i - 1, k)) / (2.0 * rho * h) +
                         (psi.at(i, kp) - 2.0 * psi.at(i, k) + psi.at(i, km)) / (rho * rho * dth * dth);
      worst = std::max(worst, std::abs(lap - omega.at(i, k)));
    }
  }
  return worst;
}

std::vector<double> far_field_closure(const AnnularGrid& grid, const GridField& omega) {
  // psi(R e^{i th}) = (1/2pi) sum_q w_q omega_q [ -ln|eta_q|
  //   - Re sum_{k=1..K} ((eta_q^k - eta_q*^k)/k) (R e^{i th})^{-k} ] + O((|eta|/R)^{K+1})
  constexpr int K = 8;
  double logm = 0.0;
  std::array<Complex, K + 1> mom{};
  for (int i = 0; i <= grid.n_r; ++i) {
    const double w = node_weight(grid, i);
    const double rho = grid.rho(i);
    for (int k = 0; k < grid.n_t; ++k) {
      const double om = omega.at(i, k);
      if (om == 0.0) continue;
      const Complex eta = std::polar(rho, k * grid.dtheta());
      const Complex etas = eta / std::norm(eta);
      logm += w * om * std::log(rho);
      Complex pd{1.0, 0.0}, pi{1.0, 0.0};
      for (int p = 1; p <= K; ++p) {
        pd *= eta;
        pi *= etas;
        mom[p] += w * om * (pd - pi) / static_cast<double>(p);
      }
    }
  }
  std::vector<double> bc(grid.n_t);
  for (int k = 0; k < grid.n_t; ++k) {
    const Complex ix = std::polar(1.0 / grid.r_outer, -k * grid.dtheta());
    Complex p{1.0, 0.0};
    double s = -logm;
    for (int q = 1; q <= K; ++q) {
      p *= ix;
      s -= (mom[q] * p).real();
    }
    bc[k] = s / kTwoPi;
  }
  return bc;
}

double node_weight(const AnnularGrid& grid, int i) {
  const double edge = (i == 0 || i == grid.n_r) ? 0.5 : 1.0;
  return edge * grid.rho(i) * grid.h() * grid.dtheta();
}

double grid_l2(const GridField& f) {
  double s = 0.0;
  for (int i = 0; i <= f.grid.n_r; ++i) {
    const double w = node_weight(f.grid, i);
    for (int k = 0; k < f.grid.n_t; ++k)
      for (int c = 0; c < f.comps; ++c) s += w * f.at(i, k, c) * f.at(i, k, c);
  }
  return std::sqrt(s);
}

double grid_linf(const GridField& f) {
  double m = 0.0;
  for (double x : f.v) m = std::max(m, std::abs(x));
  return m;
}

namespace {

// 4th-order first derivative in rho (one-sided near the edges) and theta.
double drho(const GridField& f, int i, int k, int c) {
  const int nr = f.grid.n_r;
  const double h = f.grid.h();
  auto g = [&](int ii) { return f.at(ii, k, c); };
  if (i >= 2 && i <= nr - 2)
    return (-g(i + 2) + 8 * g(i + 1) - 8 * g(i - 1) + g(i - 2)) / (12.0 * h);
  if (i <= 1)
    return (-25 * g(i) + 48 * g(i + 1) - 36 * g(i + 2) + 16 * g(i + 3) - 3 * g(i + 4)) / (12.0 * h);
  return (25 * g(i) - 48 * g(i - 1) + 36 * g(i - 2) - 16 * g(i - 3) + 3 * g(i - 4)) / (12.0 * h);
}

double dtheta_frame(const GridField& f, int i, int k, int c) {
  const int nt = f.grid.n_t;
  const double d = f.grid.dtheta();
  auto g = [&](int kk) { return f.at(i, ((kk % nt) + nt) % nt, c); };
  const double dth = (-g(k + 2) + 8 * g(k + 1) - 8 * g(k - 1) + g(k - 2)) / (12.0 * d);
  return dth / f.grid.rho(i);
}

GridField frame_derivatives(const GridField& f) {
  // doubles the component count: (d_rho f_c, rho^-1 d_theta f_c)
  GridField out = GridField::zeros(f.grid, 2 * f.comps);
  for (int i = 0; i <= f.grid.n_r; ++i)
    for (int k = 0; k < f.grid.n_t; ++k)
      for (int c = 0; c < f.comps; ++c) {
        out.at(i, k, 2 * c) = drho(f, i, k, c);
        out.at(i, k, 2 * c + 1) = dtheta_frame(f, i, k, c);
      }
  return out;
}

}  // namespace

double grid_deriv_l2(const GridField& f, int m) {
  GridField d = f;
  for (int j = 0; j < m; ++j) d = frame_derivatives(d);
  return grid_l2(d);
}

double grid_sobolev(const GridField& f, int order) {
  double s2 = 0.0;
  GridField d = f;
  for (int m = 0; m <= order; ++m) {
    const double nm = grid_l2(d);
    s2 += nm * nm;
    if (m < order) d = frame_derivatives(d);
  }
  return std::sqrt(s2);
}

double grid_grad_linf(const GridField& f) {
  const GridField d = frame_derivatives(f);
  double worst = 0.0;
  for (int i = 0; i <= f.grid.n_r; ++i)
    for (int k = 0; k < f.grid.n_t; ++k) {
      double s = 0.0;
      for (int c = 0; c < d.comps; ++c) s += d.at(i, k, c) * d.at(i, k, c);
      worst = std::max(worst, std::sqrt(s));
    }
  return worst;
}

GridField grid_velocity_from_stream(const GridField& psi) {
  // u = grad-perp psi; in the orthonormal polar frame:
  //   u_rho = -(1/rho) d_theta psi,  u_theta = d_rho psi,
  // converted to Cartesian components.
  GridField u = GridField::zeros(psi.grid, 2);
  for (int i = 0; i <= psi.grid.n_r; ++i) {
    for (int k = 0; k < psi.grid.n_t; ++k) {
      const double ur = -dtheta_frame(psi, i, k, 0);
      const double ut = drho(psi, i, k, 0);
      const double th = k * psi.grid.dtheta();
      u.at(i, k, 0) = ur * std::cos(th) - ut * std::sin(th);
      u.at(i, k, 1) = ur * std::sin(th) + ut * std::cos(th);
    }
  }
  return u;
}

GridField bump_vorticity(const AnnularGrid& grid, double rho0, double theta0, double support,
                         double amplitude) {
  GridField f = GridField::zeros(grid, 1);
  const Complex c0 = std::polar(rho0, theta0);
  for (int i = 0; i <= grid.n_r; ++i)
    for (int k = 0; k < grid.n_t; ++k) {
      const Complex p = std::polar(grid.rho(i), k * grid.dtheta());
      const double s = std::abs(p - c0) / support;
      if (s < 1.0) f.at(i, k) = amplitude * std::exp(1.0 - 1.0 / (1.0 - s * s));
    }
  return f;
}

std::vector<EstimateRow> measure_poisson_constants(const AnnularGrid& grid,
                                                   const std::vector<GridField>& family,
                                                   const std::vector<double>& support_radii) {
  std::vector<EstimateRow> rows;
  for (size_t idx = 0; idx < family.size(); ++idx) {
    const GridField& om = family[idx];
    const GridField psi = solve_poisson_fd(grid, om, far_field_closure(grid, om));
    const GridField grad = grid_velocity_from_stream(psi);  // |grad psi| = |grad-perp psi|
    const double om_l2 = grid_l2(om);
    const double g_l2 = grid_l2(grad);
    const double g_h1 = grid_sobolev(grad, 1);
    const double d2_l2 = grid_deriv_l2(grad, 1);
    const double support = idx < support_radii.size() ? support_radii[idx] : 0.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "{\"support_radius\":%g}", support);
    rows.push_back({"poisson1", buf, g_h1 / om_l2});
    rows.push_back({"poisson2", buf, d2_l2 / (om_l2 + g_l2)});
  }
  return rows;
}

double measure_bkm_ratio(const AnnularGrid& grid, const GridField& velocity,
                         const GridField& omega, double sobolev3, double l2) {
  (void)grid;
  const double gu = grid_grad_linf(velocity);
  const double lnp = sobolev3 > 1.0 ? std::log(sobolev3) : 0.0;
  return gu / ((1.0 + lnp) * (1.0 + l2 + grid_linf(omega)));
}

}  // namespace exeuler
