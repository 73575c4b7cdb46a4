#pragma once

#include <functional>
#include <vector>

#include "exeuler/rigidbody.hpp"

namespace exeuler {

struct IntegratorConfig {
  double dt = 1e-3;
  BlobParameter blob{};
  bool fixed_body = false;  // m = infinity mode: the body never accelerates
};

struct StateDerivative {
  std::vector<Vec2> particle_vel;  // body frame
  Vec2 hdot{};
  Vec2 hddot{};
  double thetadot = 0.0;
  double rdot = 0.0;
};

/// Coupled right-hand side. Throws ParticleTooClose when a particle is within
/// 1e-6 * diameter of the boundary (model breakdown; runs abort cleanly).
StateDerivative state_derivative(const BodyModel& model, const FlowState& state,
                                 BlobParameter blob, bool fixed_body = false);

/// One classical RK4 step. Intermediate stages violating the exterior
/// constraint raise StepRejected.
FlowState step(const BodyModel& model, const FlowState& state, const IntegratorConfig& config);

struct RunSinks {
  /// called at t=0, every `record_every` steps, and at the end
  std::function<void(const FlowState&, long step_index)> on_sample;
};

struct RunResult {
  FlowState final_state;
  long steps = 0;
};

/// Integrate for n_steps, sampling every record_every steps. Deterministic:
/// identical inputs give identical output bits.
RunResult run(const BodyModel& model, const FlowState& initial, const IntegratorConfig& config,
              long n_steps, long record_every, const RunSinks& sinks);

}  // namespace exeuler
