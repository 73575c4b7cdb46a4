#pragma once

#include <stdexcept>
#include <string>

namespace exeuler {

/// Error taxonomy shared by the library and mapped to CLI exit codes.
enum class ErrorCode {
  InputError,        // malformed scenario, bad arguments
  FitDiverged,       // boundary collocation could not reach tolerance
  NonSimpleBoundary, // self-intersecting polyline
  InsideBody,        // evaluation point inside or on the body
  NewtonDiverged,    // map inversion failed to converge
  CoincidentPoints,  // kernel evaluated at x == y
  ExpansionDiverged, // Kirchhoff harmonic expansion unresolved
  QuadratureUnresolved,
  SingularSystem,
  ParticleTooClose,  // model breakdown: particle reached the boundary layer
  StepRejected,
  SolverStagnated,
  UnboundedEnergy,
  EnvelopeViolated,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InputError: return "InputError";
    case ErrorCode::FitDiverged: return "FitDiverged";
    case ErrorCode::NonSimpleBoundary: return "NonSimpleBoundary";
    case ErrorCode::InsideBody: return "InsideBody";
    case ErrorCode::NewtonDiverged: return "NewtonDiverged";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::ExpansionDiverged: return "ExpansionDiverged";
    case ErrorCode::QuadratureUnresolved: return "QuadratureUnresolved";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::ParticleTooClose: return "ParticleTooClose";
    case ErrorCode::StepRejected: return "StepRejected";
    case ErrorCode::SolverStagnated: return "SolverStagnated";
    case ErrorCode::UnboundedEnergy: return "UnboundedEnergy";
    case ErrorCode::EnvelopeViolated: return "EnvelopeViolated";
  }
  return "Unknown";
}

}  // namespace exeuler
