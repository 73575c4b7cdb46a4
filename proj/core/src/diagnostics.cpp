#include "exeuler/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "exeuler/errors.hpp"

namespace exeuler {

namespace {

constexpr double kInv2Pi = 1.0 / kTwoPi;

Complex rot(double theta) { return std::polar(1.0, theta); }

struct MappedField {
  // mapped-plane w'(zeta) of the full body-frame velocity decomposition
  const BodyModel* model;
  const FlowState* state;
  double delta;
  double gamma_eff;
  BodyMotion motion;
  std::vector<Complex> eta;

  MappedField(const BodyModel& m, const FlowState& st, BlobParameter blob)
      : model(&m), state(&st), delta(blob.delta) {
    gamma_eff = total_circulation_coefficient(st.particles, st.gamma_bound);
    motion.ell = to_vec(std::conj(rot(st.body.theta)) * to_complex(st.body.hdot));
    motion.r = st.body.r;
    eta.reserve(st.particles.size());
    for (const VortexParticle& p : st.particles) eta.push_back(m.map().eval(to_complex(p.pos)));
  }

  Complex wprime(Complex zeta) const {
    Complex acc{};
    const double d2 = delta * delta;
    for (size_t j = 0; j < eta.size(); ++j) {
      const Complex coef{0.0, -state->particles[j].gamma * kInv2Pi};
      const Complex w = zeta - eta[j];
      acc += coef * (std::conj(w) / (std::norm(w) + d2));
      acc -= coef / (zeta - 1.0 / std::conj(eta[j]));
    }
    if (gamma_eff != 0.0) acc += Complex{0.0, -gamma_eff * kInv2Pi} / zeta;
    acc += model->kirchhoff().wprime(zeta, motion);
    return acc;
  }

  double mask(Complex zeta, double eps) const {
    double m = 1.0;
    for (const Complex& e : eta) {
      const double d2 = std::norm(zeta - e);
      const double s = d2 / (eps * eps);
      m *= 1.0 - std::exp(-s * s);
    }
    return m;
  }

  /// Laurent coefficients d_k (k = 2..kmax) of w' at infinity.
  std::vector<Complex> multipoles(int kmax) const {
    std::vector<Complex> d(kmax + 1, Complex{});
    for (size_t j = 0; j < eta.size(); ++j) {
      const Complex coef{0.0, -state->particles[j].gamma * kInv2Pi};
      Complex pd{1.0, 0.0};  // eta^m
      Complex pi{1.0, 0.0};  // eta*^m
      const Complex etas = 1.0 / std::conj(eta[j]);
      for (int m = 0; m + 1 <= kmax; ++m) {
        if (m > 0) {
          pd *= eta[j];
          pi *= etas;
        }
        // 1/(zeta-b) = sum b^m zeta^{-m-1}
        d[m + 1] += coef * (pd - pi);
      }
    }
    const auto& kir = model->kirchhoff();
    const double w3[3] = {motion.ell.x, motion.ell.y, motion.r};
    for (int a = 0; a < 3; ++a) {
      if (w3[a] == 0.0) continue;
      for (int k = 1; k + 1 <= kmax; ++k) {
        if (k > kir.modes()) break;
        d[k + 1] += w3[a] * (-static_cast<double>(k)) * kir.coeff(a, k);
      }
    }
    return d;
  }
};

}  // namespace

double energy_E0(const BodyModel& model, const FlowState& state, BlobParameter blob,
                 const DiagnosticsGridConfig& cfg) {
  if (state.gamma_bound != 0.0)
    raise(ErrorCode::UnboundedEnergy,
          "energy_E0: harmonic component with gamma_bound != 0 is not square integrable");
  const MappedField f(model, state, blob);

  // exp-stretched radial rings resolve the near field; trapezoid in ln rho
  const int nr = cfg.grid.n_r, nt = cfg.grid.n_t;
  const double logR = std::log(cfg.grid.r_outer);
  double total = 0.0;
  for (int i = 0; i <= nr; ++i) {
    const double t = logR * i / nr;
    const double rho = std::exp(t);
    const double wt = (i == 0 || i == nr ? 0.5 : 1.0) * (logR / nr) * rho * rho;
    double ring = 0.0;
    for (int k = 0; k < nt; ++k) {
      const Complex zeta = std::polar(rho, kTwoPi * k / nt);
      const double w2 = std::norm(f.wprime(zeta));
      ring += w2 * f.mask(zeta, cfg.mask_radius);
    }
    total += wt * ring * (kTwoPi / nt);
  }

  if (f.gamma_eff == 0.0) {
    const std::vector<Complex> d = f.multipoles(12);
    for (size_t k = 2; k < d.size(); ++k)
      total += kTwoPi * std::norm(d[k]) * std::pow(cfg.grid.r_outer, 2.0 - 2.0 * k) /
               (2.0 * k - 2.0);
  }

  return total + state.body.m * state.body.hdot.norm2() + state.body.J * state.body.r * state.body.r;
}

Impulse impulse(const BodyModel& model, const FlowState& state) {
  const double ge = total_circulation_coefficient(state.particles, state.gamma_bound);
  const Complex q = rot(state.body.theta);
  const Complex h = to_complex(state.body.h);
  const Complex hd = to_complex(state.body.hdot);

  const Mat2 Mt = model.added_mass().translational(state.body.theta);
  const Vec2 mv = state.body.hdot * state.body.m + Mt.apply(state.body.hdot);
  Complex P = to_complex(mv);
  double L = (state.body.m + 0.5 * (model.added_mass().m[0][0] + model.added_mass().m[1][1])) *
                 (std::conj(h) * hd).imag() +
             state.body.J * state.body.r;

  for (const VortexParticle& p : state.particles) {
    const Complex z = to_complex(p.pos);
    const Complex eta = model.map().eval(z);
    const Complex etas = 1.0 / std::conj(eta);
    // physical reflection point: analytic continuation of T^{-1} at the image;
    // exact for disks, first-order pullback as a fallback for fitted maps
    Complex imgb;
    if (model.map().is_identity()) {
      imgb = 1.0 / std::conj(z);
    } else {
      try {
        imgb = model.map().inverse(etas);
      } catch (const Error&) {
        imgb = z - (eta - etas) / model.map().deriv(z);
      }
    }
    P += Complex{0.0, -p.gamma} * (q * (z - imgb));
    L += -0.5 * p.gamma *
         (std::norm(z) + 2.0 * (std::conj(h) * q * z).real() - 2.0 * (std::conj(h) * q * imgb).real());
  }
  P += Complex{0.0, -ge} * h;
  L += -0.5 * ge * std::norm(h);

  return {to_vec(P), L};
}

double omega_inf_surrogate(const FlowState& state, BlobParameter blob) {
  double g = 0.0;
  for (const VortexParticle& p : state.particles) g = std::max(g, std::abs(p.gamma));
  if (blob.delta > 0.0) g /= (0.5 * kTwoPi) * blob.delta * blob.delta;  // pi delta^2
  return g;
}

double envelope(const EnvelopeParams& p, double t, double Es0) {
  const double a = 1.0 + std::sqrt(p.E1_0);
  const double lnp = p.E3_0 > 1.0 ? std::log(std::sqrt(p.E3_0)) : 0.0;
  const double b = p.K2 * a * (1.0 + std::max(0.0, lnp));
  const double c = p.K3 * a;
  return p.K1 * Es0 * std::exp(b * (std::exp(c * t) - 1.0) / c);
}

EnvelopeReport check_envelope(const std::vector<DiagnosticsRecord>& records,
                              const EnvelopeParams& params) {
  EnvelopeReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  double Es0 = -1.0;
  for (const DiagnosticsRecord& r : records) {
    if (!r.es_proxy) continue;
    if (Es0 < 0.0) Es0 = *r.es_proxy;
    const double bound = envelope(params, r.time, Es0);
    const double margin = bound - *r.es_proxy;
    if (margin < rep.min_margin) {
      rep.min_margin = margin;
      rep.worst_time = r.time;
    }
    if (margin < 0.0) {
      rep.inside = false;
      raise(ErrorCode::EnvelopeViolated,
            "check_envelope: proxy " + std::to_string(*r.es_proxy) + " exceeds bound " +
                std::to_string(bound) + " at t=" + std::to_string(r.time));
    }
  }
  return rep;
}

GridField sample_velocity_grid(const BodyModel& model, const FlowState& state, BlobParameter blob,
                               const AnnularGrid& grid) {
  const MappedField f(model, state, blob);
  GridField u = GridField::zeros(grid, 2);
  const bool ident = model.map().is_identity();
  for (int i = 0; i <= grid.n_r; ++i) {
    for (int k = 0; k < grid.n_t; ++k) {
      const Complex zeta = std::polar(grid.rho(i), k * grid.dtheta());
      const Complex y = ident ? zeta : model.map().inverse(zeta);
      const Complex q = f.wprime(zeta) * model.map().deriv(y);
      u.at(i, k, 0) = q.real();
      u.at(i, k, 1) = -q.imag();
    }
  }
  return u;
}

DiagnosticsRecord make_record(const BodyModel& model, const FlowState& state, BlobParameter blob,
                              const DiagnosticsGridConfig* grid_cfg, const EnvelopeContext* env) {
  DiagnosticsRecord r;
  r.time = state.time;
  r.circulation_total = total_circulation_coefficient(state.particles, state.gamma_bound);
  const Impulse imp = impulse(model, state);
  r.impulse = {imp.linear.x, imp.linear.y, imp.angular};
  r.omega_inf_surrogate = omega_inf_surrogate(state, blob);

  if (grid_cfg) {
    if (state.gamma_bound == 0.0) r.e0_grid = energy_E0(model, state, blob, *grid_cfg);
    GridField u = sample_velocity_grid(model, state, blob, grid_cfg->grid);
    // mask the particle cores before taking Sobolev proxies
    const MappedField f(model, state, blob);
    for (int i = 0; i <= grid_cfg->grid.n_r; ++i)
      for (int k = 0; k < grid_cfg->grid.n_t; ++k) {
        const Complex zeta = std::polar(grid_cfg->grid.rho(i), k * grid_cfg->grid.dtheta());
        const double m = f.mask(zeta, grid_cfg->mask_radius);
        u.at(i, k, 0) *= m;
        u.at(i, k, 1) *= m;
      }
    const double rigid = state.body.m * state.body.hdot.norm2() +
                         state.body.J * state.body.r * state.body.r;
    const double s1 = grid_sobolev(u, 1);
    const double s3 = grid_sobolev(u, 3);
    const double l2 = grid_l2(u);
    r.e1_proxy = s1 * s1 + rigid;
    r.es_proxy = s3 * s3 + rigid;
    r.bkm_ratio = grid_grad_linf(u) /
                  ((1.0 + (*r.es_proxy > 1.0 ? 0.5 * std::log(*r.es_proxy) : 0.0)) *
                   (1.0 + l2 + r.omega_inf_surrogate));
  }
  if (env) r.envelope_value = envelope(env->params, state.time, env->Es0);
  return r;
}

namespace {

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_opt(const std::optional<double>& x) { return x ? fmt_double(*x) : "null"; }

}  // namespace

std::string record_to_ndjson(const DiagnosticsRecord& r) {
  std::string s = "{\"time\":" + fmt_double(r.time);
  s += ",\"circulation_total\":" + fmt_double(r.circulation_total);
  s += ",\"impulse\":[" + fmt_double(r.impulse[0]) + "," + fmt_double(r.impulse[1]) + "," +
       fmt_double(r.impulse[2]) + "]";
  s += ",\"e0_grid\":" + fmt_opt(r.e0_grid);
  s += ",\"omega_inf_surrogate\":" + fmt_double(r.omega_inf_surrogate);
  s += ",\"bkm_ratio\":" + fmt_opt(r.bkm_ratio);
  s += ",\"envelope_value\":" + fmt_double(r.envelope_value);
  s += ",\"es_proxy\":" + fmt_opt(r.es_proxy);
  s += ",\"e1_proxy\":" + fmt_opt(r.e1_proxy);
  s += "}";
  return s;
}

std::string record_to_csv_header() {
  return "time,circulation_total,impulse_x,impulse_y,impulse_ang,e0_grid,omega_inf_surrogate,"
         "bkm_ratio,envelope_value,es_proxy,e1_proxy";
}

std::string record_to_csv(const DiagnosticsRecord& r) {
  auto opt = [](const std::optional<double>& x) { return x ? fmt_double(*x) : std::string(); };
  std::string s = fmt_double(r.time) + "," + fmt_double(r.circulation_total) + "," +
                  fmt_double(r.impulse[0]) + "," + fmt_double(r.impulse[1]) + "," +
                  fmt_double(r.impulse[2]) + "," + opt(r.e0_grid) + "," +
                  fmt_double(r.omega_inf_surrogate) + "," + opt(r.bkm_ratio) + "," +
                  fmt_double(r.envelope_value) + "," + opt(r.es_proxy) + "," + opt(r.e1_proxy);
  return s;
}

void write_field_dump(const std::string& path_prefix, const GridField& field) {
  {
    std::ofstream bin(path_prefix + ".bin", std::ios::binary);
    bin.write(reinterpret_cast<const char*>(field.v.data()),
              static_cast<std::streamsize>(field.v.size() * sizeof(double)));
  }
  nlohmann::ordered_json j;
  j["grid"] = {{"r_inner", 1.0},
               {"r_outer", field.grid.r_outer},
               {"n_r", field.grid.n_r},
               {"n_t", field.grid.n_t}};
  nlohmann::ordered_json names = nlohmann::ordered_json::array();
  if (field.comps == 2) {
    names.push_back("u1");
    names.push_back("u2");
  } else {
    for (int c = 0; c < field.comps; ++c) names.push_back("f" + std::to_string(c));
  }
  j["fields"] = names;
  j["endianness"] = "little";
  j["dtype"] = "f64";
  j["layout"] = "row-major (i_rho, k_theta, component)";
  std::ofstream side(path_prefix + ".json");
  side << j.dump(2) << "\n";
}

}  // namespace exeuler
