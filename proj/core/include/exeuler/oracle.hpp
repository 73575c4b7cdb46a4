#pragma once

#include <string>
#include <vector>

#include "exeuler/complexops.hpp"

namespace exeuler {

/// Polar grid on the mapped-plane annulus 1 <= rho <= r_outer. Nodes are
/// rho_i = 1 + i h (i = 0..n_r, h = (r_outer-1)/n_r), theta_k = 2 pi k / n_t.
struct AnnularGrid {
  double r_outer = 8.0;
  int n_r = 128;
  int n_t = 256;

  double h() const { return (r_outer - 1.0) / n_r; }
  double dtheta() const { return kTwoPi / n_t; }
  double rho(int i) const { return 1.0 + i * h(); }
  int rows() const { return n_r + 1; }

  void validate() const;
};

/// Scalar or vector field sampled on the grid nodes.
struct GridField {
  AnnularGrid grid;
  int comps = 1;
  std::vector<double> v;  // layout: ((i * n_t + k) * comps + c)

  static GridField zeros(const AnnularGrid& g, int comps = 1);
  double& at(int i, int k, int c = 0) { return v[(static_cast<size_t>(i) * grid.n_t + k) * comps + c]; }
  double at(int i, int k, int c = 0) const {
    return v[(static_cast<size_t>(i) * grid.n_t + k) * comps + c];
  }
};

/// Second-order FD solve of  Delta psi = omega,  psi = 0 on rho = 1,
/// psi = outer_bc on rho = r_outer. Fourier in theta (exact diagonalization of
/// the periodic stencil), tridiagonal in rho; the returned field satisfies the
/// 5-point polar stencil to round-off.
GridField solve_poisson_fd(const AnnularGrid& grid, const GridField& omega,
                           const std::vector<double>& outer_bc);

/// Residual of the discrete 5-point stencil (interior max-norm).
double poisson_residual(const AnnularGrid& grid, const GridField& psi, const GridField& omega);

/// Far-field Dirichlet closure for a compactly supported omega: log moment
/// plus first image-corrected dipole moment of the discrete vorticity.
std::vector<double> far_field_closure(const AnnularGrid& grid, const GridField& omega);

/// Quadrature weight of node (i,k): rho drho dtheta with trapezoid ends in rho.
double node_weight(const AnnularGrid& grid, int i);

double grid_l2(const GridField& f);
double grid_linf(const GridField& f);
/// L2 norm of all frame derivatives (d_rho, rho^-1 d_theta) of order exactly m.
double grid_deriv_l2(const GridField& f, int m);
/// Sobolev proxy: sqrt( sum_{m<=order} |D^m f|^2 ).
double grid_sobolev(const GridField& f, int order);
/// max over nodes of the frame-derivative magnitude of a 2-component field.
double grid_grad_linf(const GridField& f);

/// grad-perp of a scalar grid field (2nd-order stencils): u = (-d2 psi, d1 psi)
/// in the orthonormal polar frame mapped back to Cartesian components.
GridField grid_velocity_from_stream(const GridField& psi);

/// One measured estimate: identifier, parameter description, and the ratio.
struct EstimateRow {
  std::string estimate_id;
  std::string parameters;  // compact JSON
  double ratio = 0.0;
};

/// Compactly supported C-infinity bump centered at (rho0, theta0).
GridField bump_vorticity(const AnnularGrid& grid, double rho0, double theta0, double support,
                         double amplitude);

/// Ratios for the Poisson estimates over a family of bump vorticities:
/// poisson1: |grad psi|_{H1} / |omega|_{L2} per support radius;
/// poisson2: |D^2 psi|_{L2} / (|omega|_{L2} + |grad psi|_{L2}).
std::vector<EstimateRow> measure_poisson_constants(const AnnularGrid& grid,
                                                   const std::vector<GridField>& family,
                                                   const std::vector<double>& support_radii);

/// BKM-type ratio |grad u|_inf / [(1+ln+ sobolev3)(1 + l2 + |omega|_inf)].
double measure_bkm_ratio(const AnnularGrid& grid, const GridField& velocity,
                         const GridField& omega, double sobolev3, double l2);

}  // namespace exeuler
