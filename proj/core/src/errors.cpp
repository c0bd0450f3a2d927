#include "lgfloer/errors.hpp"

namespace lgf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Catalogue: return "catalogue_error";
    case ErrorKind::Argument: return "argument_error";
    case ErrorKind::SingularSplit: return "singular_split_error";
    case ErrorKind::IntegrationFailure: return "integration_failure";
    case ErrorKind::Path: return "path_error";
    case ErrorKind::Homotopy: return "homotopy_error";
    case ErrorKind::Frame: return "frame_error";
    case ErrorKind::ExactnessViolation: return "exactness_violation";
    case ErrorKind::Transversality: return "transversality_error";
    case ErrorKind::DegeneratePlane: return "degenerate_plane";
    case ErrorKind::Sampling: return "sampling_error";
    case ErrorKind::Anchor: return "anchor_error";
    case ErrorKind::NumericalConsistency: return "numerical_consistency_error";
    case ErrorKind::TheoremCheck: return "theorem_check_failure";
    case ErrorKind::Mesh: return "mesh_error";
    case ErrorKind::Hypothesis: return "hypothesis_error";
    case ErrorKind::Validation: return "validation_error";
  }
  return "unknown_error";
}

}  // namespace lgf
