#pragma once
// Rigid folding simulation of quad-grid patterns: 1-DOF propagation of folding
// angles vertex by vertex, panel placement, halting search and clash tests.

#include "rigidfold/geometry.hpp"
#include "rigidfold/pattern.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rigidfold {

struct FoldedState {
  int driving_crease = -1;
  double driving_rho = 0.0;
  std::vector<double> rho;     // per crease, valley positive; boundary edges 0
  std::vector<Vec3> coords;    // per vertex
  std::vector<Mat3> face_rot;  // per face rigid placement x -> R x + t
  std::vector<Vec3> face_trans;
  double closure_residual = 0.0;  // max fold-angle mismatch at vertex closures (rad)
  double placement_error = 0.0;   // max vertex disagreement between faces (length)
  bool halted = false;
  std::string halt_reason;  // "crease-at-pi" | "panel-interpenetration"
  int halting_crease = -1;
};

struct Trajectory {
  std::vector<FoldedState> states;
  std::vector<double> driving_values;  // |driving angle|, monotone increasing
  double halting_drive = 0.0;          // |driving angle| at the halt
  int halting_crease = -1;
  int halting_column = -1;  // column of the halting crease (see crease_column)
  std::string halt_reason;
};

struct SimOptions {
  double step = tol::continuation_step;
  double seed = tol::continuation_seed;
  bool check_closure = true;  // throw NotRigidFoldable when residuals exceed tolerance
};

// The driving crease: the right row crease of the first inner vertex of the
// halting column. Designs fold it as a mountain (negative angle).
int driving_crease(const CreasePattern& p);

// Folding state at the given driving angle, reached by continuation from flat.
FoldedState propagate(const CreasePattern& p, double driving_rho, const SimOptions& opt = {});
// Continuation from an existing state to a new driving angle.
FoldedState propagate_from(const CreasePattern& p, const FoldedState& from, double driving_rho,
                           const SimOptions& opt = {});

// Continues the motion until a crease reaches pi - tol::halting_margin or two
// panels interpenetrate; the halting point is refined by bisection. The
// trajectory holds max(states, 2) samples from flat to the halt.
Trajectory sweep_to_halt(const CreasePattern& p, int states = tol::trajectory_states, const SimOptions& opt = {});

// Column associated with a crease: for a row crease between columns c and c+1
// this is c+1 (the crease lies on the left side of column c+1); for a column
// crease it is its own column.
int crease_column(const CreasePattern& p, int crease);

// Interpenetrating panel pairs (face indices, i < j). Panels are split into two
// triangles; contact along shared edges or vertices is not reported.
std::vector<std::pair<int, int>> clash_test(const CreasePattern& p, const FoldedState& s);
std::vector<std::pair<int, int>> clash_test_serial(const CreasePattern& p, const FoldedState& s);

enum class GridAxis { Row, Column };
// Polyline of the vertices along grid row/column `index`; inner vertices only
// unless include_boundary is set.
PolyCurve extract_polylines(const CreasePattern& p, const FoldedState& s, GridAxis axis, int index,
                            bool include_boundary = false);

// Place panels for given per-crease folding angles (BFS over faces from face 0).
void place_panels(const CreasePattern& p, FoldedState& s);

// Mountain/valley assignment taken from the signs of a mid-motion state.
void assign_from_state(CreasePattern& p, const FoldedState& s);

}  // namespace rigidfold
