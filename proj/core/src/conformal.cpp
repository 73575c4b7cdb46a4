#include "exeuler/conformal.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "exeuler/errors.hpp"

namespace exeuler {

ConformalMap::ConformalMap(double scale, Vec2 center, std::vector<Complex> coeffs, double jouk_f,
                           double jouk_g)
    : scale_(scale), center_(center), coeffs_(std::move(coeffs)), jouk_f_(jouk_f), jouk_g_(jouk_g) {
  if (!(scale_ > 0.0)) raise(ErrorCode::InputError, "map scale must be positive");
  if (coeffs_.empty()) coeffs_.push_back(Complex{0.0, 0.0});
  if (jouk_f_ < 0.0 || jouk_g_ < 0.0 || jouk_g_ > jouk_f_)
    raise(ErrorCode::InputError, "joukowski parameters require f >= g >= 0");
}

bool ConformalMap::is_identity() const {
  if (scale_ != 1.0 || center_.x != 0.0 || center_.y != 0.0 || jouk_g_ != 0.0) return false;
  for (const Complex& c : coeffs_)
    if (c != Complex{0.0, 0.0}) return false;
  return true;
}

Complex ConformalMap::sigma(Complex zc) const {
  if (jouk_g_ == 0.0) return zc;
  const double c = 4.0 * jouk_f_ * jouk_g_;
  // sqrt(z^2 - c) with the branch cut confined to the focal segment
  const Complex s = zc * std::sqrt(1.0 - c / (zc * zc));
  return 0.5 * (zc + s);
}

Complex ConformalMap::sigma_deriv(Complex zc) const {
  if (jouk_g_ == 0.0) return 1.0;
  const double c = 4.0 * jouk_f_ * jouk_g_;
  const Complex s = zc * std::sqrt(1.0 - c / (zc * zc));
  return 0.5 * (1.0 + zc / s);
}

Complex ConformalMap::sigma_deriv2(Complex zc) const {
  if (jouk_g_ == 0.0) return 0.0;
  const double c = 4.0 * jouk_f_ * jouk_g_;
  const Complex s = zc * std::sqrt(1.0 - c / (zc * zc));
  return -0.5 * c / (s * s * s);
}

Complex ConformalMap::eval(Complex z) const {
  const Complex s = sigma(z - to_complex(center_));
  Complex acc = scale_ * s + coeffs_[0];
  const Complex is = 1.0 / s;
  Complex p = is;
  for (size_t k = 1; k < coeffs_.size(); ++k) {
    acc += coeffs_[k] * p;
    p *= is;
  }
  return acc;
}

Complex ConformalMap::deriv(Complex z) const {
  const Complex zc = z - to_complex(center_);
  const Complex s = sigma(zc);
  const Complex ds = sigma_deriv(zc);
  Complex dl = scale_;
  const Complex is = 1.0 / s;
  Complex p = is * is;  // s^{-2}
  for (size_t k = 1; k < coeffs_.size(); ++k) {
    dl -= static_cast<double>(k) * coeffs_[k] * p;
    p *= is;
  }
  return dl * ds;
}

Complex ConformalMap::deriv2(Complex z) const {
  const Complex zc = z - to_complex(center_);
  const Complex s = sigma(zc);
  const Complex ds = sigma_deriv(zc);
  const Complex d2s = sigma_deriv2(zc);
  Complex dl = scale_, d2l = 0.0;
  const Complex is = 1.0 / s;
  Complex p2 = is * is;       // s^{-2}
  Complex p3 = p2 * is;       // s^{-3}
  for (size_t k = 1; k < coeffs_.size(); ++k) {
    const double kk = static_cast<double>(k);
    dl -= kk * coeffs_[k] * p2;
    d2l += kk * (kk + 1.0) * coeffs_[k] * p3;
    p2 *= is;
    p3 *= is;
  }
  return d2l * ds * ds + dl * d2s;
}

Complex ConformalMap::inverse(Complex xi) const {
  // Stage 1: Newton on the Laurent part L(sigma) = xi, seeded by the far-field
  // linearization. Stage 2: closed-form Joukowski back-substitution.
  Complex s = (xi - coeffs_[0]) / scale_;
  if (std::abs(s) < 1e-12) s = Complex{1e-12, 0.0};
  auto L = [&](Complex sv) {
    Complex acc = scale_ * sv + coeffs_[0];
    const Complex is = 1.0 / sv;
    Complex p = is;
    for (size_t k = 1; k < coeffs_.size(); ++k) {
      acc += coeffs_[k] * p;
      p *= is;
    }
    return acc;
  };
  auto Lp = [&](Complex sv) {
    Complex dl = scale_;
    const Complex is = 1.0 / sv;
    Complex p = is * is;
    for (size_t k = 1; k < coeffs_.size(); ++k) {
      dl -= static_cast<double>(k) * coeffs_[k] * p;
      p *= is;
    }
    return dl;
  };
  Complex r = L(s) - xi;
  const double target = 1e-13 * std::max(1.0, std::abs(xi));
  bool ok = std::abs(r) < target;
  for (int it = 0; it < 50 && !ok; ++it) {
    const Complex dp = Lp(s);
    if (std::abs(dp) == 0.0) raise(ErrorCode::NewtonDiverged, "map inverse: singular derivative");
    Complex stepv = -r / dp;
    double lambda = 1.0;
    Complex snew = s + stepv;
    Complex rnew = L(snew) - xi;
    int halvings = 0;
    while (std::abs(rnew) > std::abs(r) && halvings < 30) {
      lambda *= 0.5;
      snew = s + lambda * stepv;
      rnew = L(snew) - xi;
      ++halvings;
    }
    s = snew;
    r = rnew;
    ok = std::abs(r) < target;
  }
  if (!ok) raise(ErrorCode::NewtonDiverged, "map inverse: no convergence in 50 iterations");
  Complex zc = s;
  if (jouk_g_ != 0.0) zc = s + (jouk_f_ * jouk_g_) / s;
  return zc + to_complex(center_);
}

Complex ConformalMap::inverse_deriv(Complex xi) const { return 1.0 / deriv(inverse(xi)); }

std::string ConformalMap::to_json() const {
  nlohmann::json j;
  j["scale"] = scale_;
  j["center"] = {center_.x, center_.y};
  nlohmann::json cs = nlohmann::json::array();
  for (const Complex& c : coeffs_) cs.push_back({c.real(), c.imag()});
  j["coeffs"] = cs;
  j["joukowski"] = {jouk_f_, jouk_g_};
  return j.dump();
}

ConformalMap ConformalMap::from_json(const std::string& doc) {
  nlohmann::json j = nlohmann::json::parse(doc);
  const double scale = j.at("scale").get<double>();
  const auto c = j.at("center");
  std::vector<Complex> coeffs;
  for (const auto& e : j.at("coeffs")) coeffs.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  double f = 0.0, g = 0.0;
  if (j.contains("joukowski")) {
    f = j["joukowski"].at(0).get<double>();
    g = j["joukowski"].at(1).get<double>();
  }
  return ConformalMap(scale, Vec2{c.at(0).get<double>(), c.at(1).get<double>()}, std::move(coeffs), f, g);
}

namespace {

constexpr double kExteriorTol = 1e-9;

void check_exterior(const ConformalMap& map, Complex z, const char* where) {
  const double r = std::abs(map.eval(z));
  if (!(r >= 1.0 - kExteriorTol))
    raise(ErrorCode::InsideBody, std::string(where) + ": point inside or on the body");
}

}  // namespace

Vec2 map_forward(const ConformalMap& map, Vec2 x) {
  const Complex xi = map.eval(to_complex(x));
  if (!(std::abs(xi) >= 1.0 - kExteriorTol))
    raise(ErrorCode::InsideBody, "map_forward: point inside or on the body");
  return to_vec(xi);
}

Vec2 map_inverse(const ConformalMap& map, Vec2 xi) {
  if (to_complex(xi) == Complex{0.0, 0.0} || std::abs(to_complex(xi)) < 1.0 - kExteriorTol)
    raise(ErrorCode::InputError, "map_inverse: |xi| must be >= 1");
  return to_vec(map.inverse(to_complex(xi)));
}

Mat2 map_jacobian(const ConformalMap& map, Vec2 x) {
  check_exterior(map, to_complex(x), "map_jacobian");
  return jacobian_from_holomorphic(map.deriv(to_complex(x)));
}

std::array<Mat2, 2> map_hessian(const ConformalMap& map, Vec2 x) {
  check_exterior(map, to_complex(x), "map_hessian");
  const Complex d2 = map.deriv2(to_complex(x));
  const double A = d2.real(), B = d2.imag();
  Mat2 h1, h2;
  h1.a = {{{A, -B}, {-B, -A}}};
  h2.a = {{{B, A}, {A, -B}}};
  return {h1, h2};
}

namespace {

// Least-squares boundary collocation of the Laurent coefficients for a
// polyline: Gauss-Newton with Levenberg damping on sum (|T(b_i)|^2 - 1)^2.
struct FitResult {
  ConformalMap map{1.0, {}, {}};
  double residual = 0.0;  // max | |T(b)| - 1 |
};

FitResult fit_polyline(const BodyShape& shape, int order, const ConformalMap* seed) {
  // Collocate at the supplied vertices: they sit on the underlying smooth
  // boundary, while arc-length resampling would introduce chord error.
  const Vec2 center = shape.centroid();
  const std::vector<Vec2>& samples = shape.as_polyline().points;
  const int m = static_cast<int>(samples.size());

  double mean_r = 0.0;
  for (const Vec2& b : samples) mean_r += (b - center).norm();
  mean_r /= m;

  const int ncoef = order + 1;           // c0..cN
  const int nunk = 1 + 2 * ncoef;        // scale + re/im pairs
  Eigen::VectorXd u = Eigen::VectorXd::Zero(nunk);
  u(0) = 1.0 / mean_r;
  if (seed) {
    u(0) = seed->scale();
    const auto& cs = seed->coeffs();
    for (int k = 0; k < ncoef && k < static_cast<int>(cs.size()); ++k) {
      u(1 + 2 * k) = cs[k].real();
      u(2 + 2 * k) = cs[k].imag();
    }
  }

  auto eval_map = [&](const Eigen::VectorXd& v) {
    std::vector<Complex> cs(ncoef);
    for (int k = 0; k < ncoef; ++k) cs[k] = Complex(v(1 + 2 * k), v(2 + 2 * k));
    return ConformalMap(std::max(v(0), 1e-12), center, std::move(cs));
  };

  auto residuals = [&](const ConformalMap& mp, Eigen::VectorXd& r) {
    for (int i = 0; i < m; ++i) {
      const Complex t = mp.eval(to_complex(samples[i]));
      r(i) = std::norm(t) - 1.0;
    }
  };

  ConformalMap mp = eval_map(u);
  Eigen::VectorXd r(m);
  residuals(mp, r);
  double cost = r.squaredNorm();
  double lambda = 1e-6;

  for (int it = 0; it < 200; ++it) {
    Eigen::MatrixXd J(m, nunk);
    for (int i = 0; i < m; ++i) {
      const Complex sc = to_complex(samples[i]) - to_complex(center);
      const Complex t = mp.eval(to_complex(samples[i]));
      const Complex tb = std::conj(t);
      J(i, 0) = 2.0 * (tb * sc).real();
      Complex p = 1.0;  // sc^{-k}
      for (int k = 0; k < ncoef; ++k) {
        const Complex base = tb * p;
        J(i, 1 + 2 * k) = 2.0 * base.real();
        J(i, 2 + 2 * k) = -2.0 * base.imag();
        p /= sc;
      }
    }
    const Eigen::MatrixXd JtJ = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;
    bool improved = false;
    for (int trial = 0; trial < 12 && !improved; ++trial) {
      Eigen::MatrixXd A = JtJ;
      A.diagonal().array() += lambda;
      const Eigen::VectorXd du = A.ldlt().solve(g);
      Eigen::VectorXd unew = u - du;
      if (unew(0) <= 0.0) unew(0) = 0.5 * u(0);
      ConformalMap mnew = eval_map(unew);
      Eigen::VectorXd rnew(m);
      residuals(mnew, rnew);
      const double cnew = rnew.squaredNorm();
      if (cnew < cost) {
        u = unew;
        mp = mnew;
        r = rnew;
        cost = cnew;
        lambda = std::max(lambda * 0.3, 1e-12);
        improved = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!improved) break;
    if (r.lpNorm<Eigen::Infinity>() < 1e-13) break;
  }

  double dev = 0.0;
  for (int i = 0; i < m; ++i) {
    const Complex t = mp.eval(to_complex(samples[i]));
    dev = std::max(dev, std::abs(std::abs(t) - 1.0));
  }
  return {mp, dev};
}

}  // namespace

ConformalMap build_map(const BodyShape& shape, int order) {
  if (order < 0) raise(ErrorCode::InputError, "build_map: order must be >= 0");
  if (shape.is_disk()) {
    return ConformalMap(1.0 / shape.as_disk().radius, {0.0, 0.0}, {Complex{0.0, 0.0}});
  }
  if (shape.is_ellipse()) {
    const auto& e = shape.as_ellipse();
    if (e.semi_major == e.semi_minor)
      return ConformalMap(1.0 / e.semi_major, {0.0, 0.0}, {Complex{0.0, 0.0}});
    // Joukowski parameters: half-sum and half-difference of the semi-axes.
    // sigma maps the ellipse exterior onto |sigma| > f; the unit circle is
    // recovered by the leading coefficient 1/f.
    const double f = 0.5 * (e.semi_major + e.semi_minor);
    const double g = 0.5 * (e.semi_major - e.semi_minor);
    return ConformalMap(1.0 / f, {0.0, 0.0}, {Complex{0.0, 0.0}}, f, g);
  }
  // polyline: order doubling until the boundary residual is met, each level
  // seeded with the previous fit; the vertex count bounds the usable order
  const int npts = static_cast<int>(shape.as_polyline().points.size());
  const int cap = std::min(std::max(4, std::min(order, 64)), (npts - 4) / 2);
  FitResult best;
  best.residual = std::numeric_limits<double>::infinity();
  int n = 4;
  while (true) {
    FitResult fr = fit_polyline(shape, n, best.residual < 1e9 ? &best.map : nullptr);
    if (fr.residual < best.residual) best = fr;
    if (best.residual < 1e-6) return best.map;
    if (n >= cap) break;
    n = std::min(2 * n, cap);
  }
  if (best.residual < 1e-6) return best.map;
  raise(ErrorCode::FitDiverged,
        "build_map: boundary residual " + std::to_string(best.residual) + " above 1e-6 at max order");
}

MapQualityReport assess_map(const ConformalMap& map, const BodyShape& shape, int boundary_samples,
                            int exterior_samples) {
  MapQualityReport rep;
  // for polylines the vertices are the ground truth; interpolated samples
  // would measure chord error, not map error
  const std::vector<Vec2> bsamples =
      shape.is_polyline() ? shape.as_polyline().points : shape.boundary_samples(boundary_samples);
  for (const Vec2& b : bsamples) {
    rep.boundary_deviation =
        std::max(rep.boundary_deviation, std::abs(std::abs(map.eval(to_complex(b))) - 1.0));
  }
  std::mt19937 rng(0x5eed);
  std::uniform_real_distribution<double> urad(std::log(1.01), std::log(10.0));
  std::uniform_real_distribution<double> uang(0.0, kTwoPi);
  for (int i = 0; i < exterior_samples; ++i) {
    const Complex xi = std::polar(std::exp(urad(rng)), uang(rng));
    const Complex z = map.inverse(xi);
    const Complex round = map.inverse(map.eval(z));
    rep.roundtrip_error = std::max(rep.roundtrip_error, std::abs(round - z));

    const Mat2 J = jacobian_from_holomorphic(map.deriv(z));
    const double cr = std::abs(J.a[0][0] - J.a[1][1]) + std::abs(J.a[0][1] + J.a[1][0]);
    rep.cauchy_riemann_residual = std::max(rep.cauchy_riemann_residual, cr);

    const Complex dT = map.deriv(z);
    const Complex d2T = map.deriv2(z);
    const Complex dS = 1.0 / dT;
    const Complex d2S = -d2T / (dT * dT * dT);
    rep.derivative_bound = std::max(
        rep.derivative_bound, std::abs(dT) + std::abs(dS) + std::abs(d2T) + std::abs(d2S));
  }
  // injectivity proxy: map a physical polar grid and look for folds
  std::vector<Complex> mapped;
  const double rho_s = shape.circumscribed_radius();
  for (int ir = 0; ir < 12; ++ir) {
    for (int it = 0; it < 24; ++it) {
      const double rr = rho_s * (1.05 + 0.4 * ir);
      const Complex z = to_complex(shape.centroid()) + std::polar(rr, kTwoPi * it / 24.0);
      const Complex t = map.eval(z);
      if (std::abs(t) > 1.0) mapped.push_back(t);
    }
  }
  rep.min_pair_separation = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < mapped.size(); ++i)
    for (size_t j = i + 1; j < mapped.size(); ++j)
      rep.min_pair_separation = std::min(rep.min_pair_separation, std::abs(mapped[i] - mapped[j]));
  return rep;
}

}  // namespace exeuler
