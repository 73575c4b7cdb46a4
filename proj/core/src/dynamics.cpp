#include "exeuler/dynamics.hpp"

#include <cmath>

#include "exeuler/errors.hpp"

namespace exeuler {

namespace {

// mapped-plane distance proxy: (|T(y)| - 1) / |T'(y)|
double boundary_distance(const ConformalMap& map, Vec2 y) {
  const Complex z = to_complex(y);
  return (std::abs(map.eval(z)) - 1.0) / std::abs(map.deriv(z));
}

void check_particles(const BodyModel& model, const FlowState& st, ErrorCode code) {
  const double tol = 1e-6 * 2.0 * model.circumscribed_radius();
  for (const VortexParticle& p : st.particles) {
    if (boundary_distance(model.map(), p.pos) < tol)
      raise(code, "particle within breakdown distance of the boundary at t=" +
                      std::to_string(st.time));
  }
}

FlowState advance(const FlowState& s, const StateDerivative& d, double dt) {
  FlowState out = s;
  for (size_t j = 0; j < out.particles.size(); ++j)
    out.particles[j].pos += dt * d.particle_vel[j];
  out.body.h += dt * d.hdot;
  out.body.hdot += dt * d.hddot;
  out.body.theta += dt * d.thetadot;
  out.body.r += dt * d.rdot;
  out.time += dt;
  return out;
}

}  // namespace

StateDerivative state_derivative(const BodyModel& model, const FlowState& state,
                                 BlobParameter blob, bool fixed_body) {
  check_particles(model, state, ErrorCode::ParticleTooClose);
  StateDerivative d;
  d.particle_vel = particle_velocities(model, state, blob);
  d.hdot = state.body.hdot;
  d.thetadot = state.body.r;
  if (fixed_body) {
    d.hddot = {0.0, 0.0};
    d.rdot = 0.0;
  } else {
    const BodyAcceleration acc = body_acceleration(model, state, blob);
    d.hddot = acc.hddot;
    d.rdot = acc.rdot;
  }
  return d;
}

FlowState step(const BodyModel& model, const FlowState& state, const IntegratorConfig& config) {
  const double dt = config.dt;
  const StateDerivative k1 = state_derivative(model, state, config.blob, config.fixed_body);

  auto stage = [&](const FlowState& s) {
    check_particles(model, s, ErrorCode::StepRejected);
    return state_derivative(model, s, config.blob, config.fixed_body);
  };

  const FlowState s2 = advance(state, k1, 0.5 * dt);
  const StateDerivative k2 = stage(s2);
  const FlowState s3 = advance(state, k2, 0.5 * dt);
  const StateDerivative k3 = stage(s3);
  const FlowState s4 = advance(state, k3, dt);
  const StateDerivative k4 = stage(s4);

  FlowState out = state;
  for (size_t j = 0; j < out.particles.size(); ++j) {
    const Vec2 v = (k1.particle_vel[j] + 2.0 * k2.particle_vel[j] + 2.0 * k3.particle_vel[j] +
                    k4.particle_vel[j]) /
                   6.0;
    out.particles[j].pos += dt * v;
  }
  out.body.h += dt * (k1.hdot + 2.0 * k2.hdot + 2.0 * k3.hdot + k4.hdot) / 6.0;
  out.body.hdot += dt * (k1.hddot + 2.0 * k2.hddot + 2.0 * k3.hddot + k4.hddot) / 6.0;
  out.body.theta += dt * (k1.thetadot + 2.0 * k2.thetadot + 2.0 * k3.thetadot + k4.thetadot) / 6.0;
  out.body.r += dt * (k1.rdot + 2.0 * k2.rdot + 2.0 * k3.rdot + k4.rdot) / 6.0;
  out.time += dt;
  check_particles(model, out, ErrorCode::ParticleTooClose);
  return out;
}

RunResult run(const BodyModel& model, const FlowState& initial, const IntegratorConfig& config,
              long n_steps, long record_every, const RunSinks& sinks) {
  FlowState st = initial;
  if (sinks.on_sample) sinks.on_sample(st, 0);
  for (long i = 1; i <= n_steps; ++i) {
    st = step(model, st, config);
    if (sinks.on_sample && (i % std::max<long>(1, record_every) == 0 || i == n_steps))
      sinks.on_sample(st, i);
  }
  return {st, n_steps};
}

}  // namespace exeuler
