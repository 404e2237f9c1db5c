#pragma once
// Verification suite: numerical checks of the structural properties a
// generated pattern must have, measured on the planar pattern and on folded
// states. Every threshold comes from the central tolerance table.

#include "rigidfold/foldsim.hpp"
#include "rigidfold/orthodiagonal.hpp"
#include "rigidfold/parallel_repeating.hpp"
#include "rigidfold/pattern.hpp"

#include <string>
#include <vector>

namespace rigidfold {

// Total-least-squares plane through the points: unit normal and centroid.
struct Plane {
  Vec3 normal = Vec3::UnitZ();
  Vec3 centroid = Vec3::Zero();
};
Plane fit_plane(const std::vector<Vec3>& pts);
// Largest distance of a point to its best-fit plane (0 for fewer than 4 points).
double plane_fit_residual(const std::vector<Vec3>& pts);

// --- planar pattern ----------------------------------------------------------

// Max |sum of sector angles - 2pi| over inner vertices.
CheckResult check_developability(const CreasePattern& p);
// Max Kawasaki residual over inner vertices in columns >= first_column.
CheckResult check_flat_foldability(const CreasePattern& p, int first_column);
// Tan-ratio identity of the orthodiagonal angle grid, with the grid angles
// read off the layout (angle between each row crease and the column line at
// its right end).
CheckResult check_separability(const CreasePattern& p);

// --- folded states -------------------------------------------------------------

// Rotation loop closure (rad) and placement closure (relative to diameter).
CheckResult check_closure(const CreasePattern& p, const FoldedState& s);
// Folded edge and diagonal lengths of every panel against the planar ones.
CheckResult check_isometry(const CreasePattern& p, const FoldedState& s);
// Best-fit plane residual of the inner vertices of a grid line, relative to
// the pattern diameter.
CheckResult check_coplanarity(const CreasePattern& p, const FoldedState& s, GridAxis axis, int index);
// Angle between adjacent creases at every inner vertex of a grid line from
// grid position `from` on, against the predicted angle xi.
CheckResult check_xi(const CreasePattern& p, const FoldedState& s, GridAxis axis, int index, double expected_xi,
                     int from = 1);
// Angle between the planes of columns i and i+1, normals oriented along the
// right row crease of row 1. Skipped (passes, detail says so) when the state
// is flat and the planes are undefined.
CheckResult check_phi(const CreasePattern& p, const FoldedState& s, int column, double expected_phi);
// Parallel repeating family: row creases between the same two columns carry
// opposite folding angles on consecutive rows, and equal magnitudes.
CheckResult check_row_magnitudes(const CreasePattern& p, const FoldedState& s);
// The folded grid line (from position `first`) matches the expected polyline
// up to a rigid motion; residual relative to the diameter.
CheckResult check_surface_assembly(const CreasePattern& p, const FoldedState& s, GridAxis axis, int index,
                                   const std::vector<Vec3>& expected, int first);
// The halting crease lies in the designated halting column.
CheckResult check_halting_column(const CreasePattern& p, const Trajectory& t);

// --- suites ----------------------------------------------------------------------

struct VerifyOptions {
  int driving_samples = 8;  // states checked along the motion (besides the halt)
  int states = tol::trajectory_states;
};

// Family-aware checks that need only the pattern: planar invariants, the
// motion to the halt (closure, isometry, coplanarity at sampled driving
// values) and the predicted plane angles at the halting state. Closure
// failures are reported as failing checks rather than thrown. Checks are
// ordered by id.
std::vector<CheckResult> verify_pattern(const CreasePattern& p, const VerifyOptions& opt = {});

// Pattern checks plus design-level ones: reproduction of the curves, surface
// assembly and the Hausdorff budgets. Results are stored in the design's
// report as well.
std::vector<CheckResult> verify_design(ParallelDesign& d, const VerifyOptions& opt = {});
std::vector<CheckResult> verify_design(OrthoDesign& d, const VerifyOptions& opt = {});

// Reproduction of a partition by a folded polyline: relative segment lengths,
// turn angles and dihedrals (rad); the worst of the three.
CheckResult check_reproduction(const std::vector<Vec3>& folded, const Partition& reference);

// Rotate the crease at the end of sector `sector` of inner vertex (r,c) by
// `delta` about the vertex (moving its far end point), which opens that
// sector by delta and closes the next one by the same amount.
void corrupt_sector(CreasePattern& p, int r, int c, int sector, double delta);

}  // namespace rigidfold
