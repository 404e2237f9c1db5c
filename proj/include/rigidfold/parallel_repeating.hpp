#pragma once
// Inverse design of the parallel repeating type: a datum curve realised by the
// first row of inner vertices and a target curve realised by the first column,
// which is also the column where the folding motion halts by a clash.
//
// Grid convention: the datum row is grid row 1 (with its two boundary end
// points), the halting column is grid column 1. Rows of the pattern are
// parallel polylines; successive rows of inner vertices use the supplementary
// sector angles (UR, UL, DL, DR) -> (pi-DR, pi-DL, pi-UL, pi-UR).

#include "rigidfold/design.hpp"
#include "rigidfold/foldsim.hpp"
#include "rigidfold/geometry.hpp"
#include "rigidfold/kinematics.hpp"
#include "rigidfold/pattern.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rigidfold {

struct ParallelDesignSpec {
  PolyCurve datum;               // Gamma, 2D or 3D
  PolyCurve target;              // f_1, 2D and open
  int n_row = 9;                 // inner vertices along the datum row
  int n_col = 9;                 // interior staircase corners (inner rows)
  double rho4 = 5.0 * kPi / 6.0;  // row fold magnitude at the halting state
  std::optional<double> theta;   // admissibility rotation; searched when empty
  double eps = 0.0;              // requested Hausdorff bound (0: not enforced)
  bool simulate = true;          // fold to the halt for diagnostics and M/V
};

struct RowDesign {
  std::vector<VertexAngles> vertices;  // UR, UL, DL, DR for each row vertex
  std::vector<Branch> branches;        // transfer-equation branch of vertex i+1
  std::vector<std::string> branch_log;
  std::vector<Vec3> c_up, c_down;      // folded column crease directions
};

// Sector angles of the datum row: first vertex from the halting-column closed
// form, the rest flat-foldable and solved from the folded geometry of the
// partition. Throws NoSolution carrying the failing vertex index.
RowDesign design_row(const Partition& datum, double rho4);

// Column-angle recurrence: angle between adjacent inner creases of column i+1
// from that of column i. Arguments are alpha_{4i-3}, alpha_{4i} (UR, DR of
// vertex i) and alpha_{4i+2}, alpha_{4i+3} (UL, DL of vertex i+1).
double xi_recurrence(double xi_i, double ur_i, double dr_i, double ul_next, double dl_next);

// Angles of the column planes at the halting state, from the row sector
// angles alone: xi per column, the per-step scale factors and the angle phi
// between the planes of columns i and i+1 (normals oriented along the row).
struct ColumnAngles {
  std::vector<double> xi;
  std::vector<double> k1, k2;
  std::vector<double> eta1, eta2;
  std::vector<double> phi;
};
ColumnAngles column_angles(const std::vector<VertexAngles>& row);

struct ColumnProfile {
  std::vector<double> xi;             // xi_1..xi_n
  std::vector<PolyCurve> f;           // f_1..f_n, each in its own plane
  std::vector<double> phi;            // angle between planes of f_i and f_{i+1}
  std::vector<double> k1, k2;         // per-step scale factors
  std::vector<double> eta1, eta2;     // auxiliary angles of the plane angle
  std::vector<Mat2> maps;             // f_{i} = maps[i-1] * f_1
};

// Column target curves by cumulative diagonal scaling in the sheared frame.
// `start_x` tells whether the staircase starts along x-bar (k1 on x-bar) or
// along y-bar (factors swapped).
ColumnProfile column_curves(const PolyCurve& f1, double theta, const std::vector<VertexAngles>& row,
                            bool start_x = true);

// Planar layout from row sector angles, row segment lengths l_0..l_n and
// column segment lengths (first column, top to bottom, m+1 values).
CreasePattern layout_parallel(const std::vector<VertexAngles>& row, const std::vector<double>& row_lengths,
                              const std::vector<double>& column_lengths);

struct ParallelDesign {
  CreasePattern pattern;
  DesignReport report;
  Partition datum_partition;
  Partition staircase;
  RowDesign row;
  ColumnProfile profile;
  double theta = 0.0;
  double xi1 = 0.0;
  std::optional<Trajectory> trajectory;
};

// Full design. Throws NoSolution, NotAdmissible, OutOfRange or
// CreaseIntersection (the message suggests rescaling the curves).
ParallelDesign build_pattern(const ParallelDesignSpec& spec);

}  // namespace rigidfold
