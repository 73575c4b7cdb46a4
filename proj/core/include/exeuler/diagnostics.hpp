#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "exeuler/oracle.hpp"
#include "exeuler/rigidbody.hpp"

namespace exeuler {

/// Grid configuration for the energy quadrature and field dumps (mapped
/// plane). mask_radius is the smooth exclusion radius carried with each
/// particle in the |w'|^2 quadrature.
struct DiagnosticsGridConfig {
  AnnularGrid grid{20.0, 400, 512};
  double mask_radius = 0.15;
};

struct DiagnosticsRecord {
  double time = 0.0;
  double circulation_total = 0.0;
  std::array<double, 3> impulse{};  // P1, P2, angular
  std::optional<double> e0_grid;
  double omega_inf_surrogate = 0.0;
  std::optional<double> bkm_ratio;
  double envelope_value = 0.0;
  std::optional<double> es_proxy;   // grid H^3 energy proxy of the sampled field
  std::optional<double> e1_proxy;
};

/// Growth-envelope constants. K1..K3 are calibrated once on the reference
/// scenario and frozen; E1_0/E3_0 are the initial energy proxies of the run.
struct EnvelopeParams {
  double K1 = 2.0;
  double K2 = 0.5;
  double K3 = 0.5;
  double E1_0 = 1.0;
  double E3_0 = 1.0;
};

/// Closed form of K1 Es0 exp( integral of lambda ), with
/// lambda(tau) = K2 (1+sqrt(E1_0)) (1+ln+ sqrt(E3_0)) exp(K3 (1+sqrt(E1_0)) tau).
double envelope(const EnvelopeParams& p, double t, double Es0);

struct EnvelopeReport {
  bool inside = true;
  double min_margin = 0.0;      // min over records of envelope - proxy
  double worst_time = 0.0;
};
/// Verifies Es proxy(t) <= envelope(t) for every record carrying a proxy.
/// Throws EnvelopeViolated when a record escapes.
EnvelopeReport check_envelope(const std::vector<DiagnosticsRecord>& records,
                              const EnvelopeParams& params);

/// Kinetic energy E0 = |u|^2_{L2} + m|h'|^2 + J r^2 by mapped-annulus
/// quadrature of |w'|^2 with smooth per-particle masks, plus the analytic
/// multipole tail beyond r_outer. Throws UnboundedEnergy if gamma_bound != 0
/// (the harmonic component is not square integrable).
double energy_E0(const BodyModel& model, const FlowState& state, BlobParameter blob,
                 const DiagnosticsGridConfig& cfg);

struct Impulse {
  Vec2 linear{};
  double angular = 0.0;
};

/// Conserved impulse of the coupled system (exact for disk bodies; the
/// derivation is in the README). Uses image positions, not particle positions.
Impulse impulse(const BodyModel& model, const FlowState& state);

double omega_inf_surrogate(const FlowState& state, BlobParameter blob);

/// Velocity samples on the mapped-plane grid (body-frame components at
/// physical nodes T^{-1}(rho e^{i theta})), for dumps and Sobolev proxies.
GridField sample_velocity_grid(const BodyModel& model, const FlowState& state, BlobParameter blob,
                               const AnnularGrid& grid);

/// Envelope evaluation context for a run: frozen constants plus the initial
/// E_s proxy the bound is anchored to.
struct EnvelopeContext {
  EnvelopeParams params;
  double Es0 = 1.0;
};

/// Assemble the per-step record. Grid-based entries are filled only when
/// `grid_cfg` is non-null; envelope_value only when `env` is non-null.
DiagnosticsRecord make_record(const BodyModel& model, const FlowState& state, BlobParameter blob,
                              const DiagnosticsGridConfig* grid_cfg, const EnvelopeContext* env);

/// NDJSON with a fixed key order and %.17g doubles; byte-stable across runs.
std::string record_to_ndjson(const DiagnosticsRecord& r);
std::string record_to_csv_header();
std::string record_to_csv(const DiagnosticsRecord& r);

/// Flat little-endian f64 dump of a grid field plus a JSON sidecar header.
void write_field_dump(const std::string& path_prefix, const GridField& field);

}  // namespace exeuler
