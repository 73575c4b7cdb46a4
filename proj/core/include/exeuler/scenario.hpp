#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exeuler/diagnostics.hpp"
#include "exeuler/dynamics.hpp"
#include "exeuler/shape.hpp"

namespace exeuler {

/// Declarative run description; the JSON schema is documented in
/// docs/scenario-format.md. h(0) = 0 always (the body starts at the origin).
struct Scenario {
  std::string name = "unnamed";
  BodyShape shape = BodyShape::disk(1.0);
  double m = 1.0;
  double J = 1.0;
  bool fixed_body = false;
  Vec2 ell0{};
  double r0 = 0.0;
  std::vector<VortexParticle> vortices;
  double blob_delta = 0.0;
  double gamma_bound = 0.0;
  double dt = 1e-3;
  double T = 1.0;
  long dump_every = 100;
  std::optional<DiagnosticsGridConfig> grid;
  bool field_dumps = false;

  FlowState initial_state() const;
  IntegratorConfig integrator() const;

  /// Canonical serialization: fixed key order, stable float formatting.
  std::string to_json() const;
  static Scenario from_json(const std::string& doc);
  static Scenario load(const std::string& path);
};

}  // namespace exeuler
