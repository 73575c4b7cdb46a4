#pragma once

#include "exeuler/complexops.hpp"

namespace exeuler {

struct BodyState;
class BodyModel;
struct FlowState;
struct BlobParameter;

/// Radial cutoff profile: identically 0 inside `inner`, identically 1 outside
/// `outer`, degree-5 smoothstep (C^2) in between.
struct CorrectorCutoff {
  double inner = 1.1;
  double outer = 2.2;

  double phi(double rho) const;
  double dphi(double rho) const;  // d phi / d rho
};

CorrectorCutoff cutoff_for_radius(double circumscribed_radius);

/// Boundary corrector: divergence-free, equals the rigid velocity field near
/// the body, vanishes outside the outer cutoff. Lab-frame evaluation.
Vec2 corrector_lambda(const BodyState& body, const CorrectorCutoff& cutoff, Vec2 x);

/// max over boundary samples of |(u - Lambda) . n|, certifying that u - Lambda
/// is tangent on the body boundary.
double tangent_residual(const BodyModel& model, const FlowState& state,
                        const CorrectorCutoff& cutoff, int samples);

/// Stream function of the rigid motion: grad-perp U = hdot + r (x-h)-perp.
double rigid_stream_U(const BodyState& body, Vec2 x);

}  // namespace exeuler
