#include "hmcf/error.hpp"

namespace hmcf {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Stencil: return "stencil";
    case ErrorCode::Convexity: return "convexity";
    case ErrorCode::Degeneracy: return "degeneracy";
    case ErrorCode::Stiffness: return "stiffness";
    case ErrorCode::GridMismatch: return "grid_mismatch";
    case ErrorCode::MultipleInterfaces: return "multiple_interfaces";
    case ErrorCode::OpenInterface: return "open_interface";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Window: return "window";
    case ErrorCode::Sampling: return "sampling";
    case ErrorCode::Ellipticity: return "ellipticity";
    case ErrorCode::SingularJacobian: return "singular_jacobian";
    case ErrorCode::Transversality: return "transversality";
    case ErrorCode::Extinct: return "extinct";
    case ErrorCode::NonDegeneracy: return "non_degeneracy";
    case ErrorCode::Config: return "config";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace hmcf
