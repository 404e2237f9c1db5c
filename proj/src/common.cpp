#include "rigidfold/errors.hpp"
#include "rigidfold/tolerances.hpp"

namespace rigidfold {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ClosedCurve: return "ClosedCurve";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::DegenerateTurn: return "DegenerateTurn";
    case ErrorKind::TubeSelfIntersect: return "TubeSelfIntersect";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::DegenerateAngle: return "DegenerateAngle";
    case ErrorKind::CreaseIntersection: return "CreaseIntersection";
    case ErrorKind::NotRigidFoldable: return "NotRigidFoldable";
    case ErrorKind::NoHalt: return "NoHalt";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::NotQuadGrid: return "NotQuadGrid";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace tol {

std::vector<Entry> table() {
  return {
      {"acos_clamp", acos_clamp},
      {"newton_tol", newton_tol},
      {"newton_max_iter", double(newton_max_iter)},
      {"newton_seed_grid", double(newton_seed_grid)},
      {"degenerate_angle", degenerate_angle},
      {"affine_roundtrip", affine_roundtrip},
      {"xi_margin", xi_margin},
      {"monotone", monotone},
      {"turn_degenerate", turn_degenerate},
      {"tube_turn_margin", tube_turn_margin},
      {"staircase_angle", staircase_angle},
      {"hausdorff_subsamples", double(hausdorff_subsamples)},
      {"theta_grid", double(theta_grid)},
      {"transfer_residual", transfer_residual},
      {"developability", developability},
      {"flat_foldability", flat_foldability},
      {"separability", separability},
      {"closed_form", closed_form},
      {"closure", closure},
      {"halting_margin", halting_margin},
      {"clash_depth", clash_depth},
      {"continuation_step", continuation_step},
      {"continuation_seed", continuation_seed},
      {"trajectory_states", double(trajectory_states)},
      {"coplanarity", coplanarity},
      {"xi_measure", xi_measure},
      {"row_magnitude", row_magnitude},
      {"phi_measure", phi_measure},
      {"reproduction", reproduction},
      {"surface_assembly", surface_assembly},
      {"isometry", isometry},
  };
}

}  // namespace tol
}  // namespace rigidfold
