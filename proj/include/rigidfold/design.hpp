#pragma once
// Steps shared by both design families: embeddability of the planar layout and
// folding a finished pattern to its halt to measure what it realises.

#include "rigidfold/foldsim.hpp"
#include "rigidfold/geometry.hpp"
#include "rigidfold/pattern.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace rigidfold {

// First pair of creases (by index) that cross in the plane without sharing a
// vertex, if any.
std::optional<std::pair<int, int>> find_crease_crossing(const CreasePattern& p);
// Throws CreaseIntersection when a crease star is not counter-clockwise (the
// layout folds over itself) or two creases cross, suggesting a rescale.
void require_embeddable(const CreasePattern& p);

// A grid line of the pattern expected to reproduce a reference polyline (its
// vertices, from grid position `first` to the far boundary) that
// approximates `curve`.
struct LineReference {
  GridAxis axis = GridAxis::Row;
  int index = 1;
  std::vector<Vec3> points;
  const PolyCurve* curve = nullptr;
  int first = 0;  // first grid position along the line (boundary included)
};

// Hausdorff distance from a folded polyline to a curve after rigidly aligning
// the polyline onto the corresponding reference points.
double aligned_hausdorff(const std::vector<Vec3>& folded, const std::vector<Vec3>& reference_points,
                         const PolyCurve& curve);

// Fold to the halt, take the mountain/valley assignment from the middle of the
// motion and record halting diagnostics and folded Hausdorff distances.
Trajectory fold_and_measure(CreasePattern& p, DesignReport& report, const LineReference* datum,
                            const LineReference* target, int states = tol::trajectory_states);

}  // namespace rigidfold

namespace rigidfold {

// Admissible rotation for a target curve: the centre of the longest run of
// consecutive admissible grid values (wrapping around 2pi), if any.
std::optional<double> pick_theta(const PolyCurve& f, double xi, int grid = tol::theta_grid);

}  // namespace rigidfold
