#pragma once
// Inverse design of the orthodiagonal type: the first column of inner vertices
// realises a planar datum curve and halts the motion by a clash on its left
// creases; the first row realises a planar target curve, and every other row
// carries a scaled affine copy of it.
//
// Grid convention: grid column 1 is a straight vertical line holding the datum
// vertices (rows 1..n, boundary rows 0 and n+1); every further column is also
// a vertical line. Row i is a zigzag whose creases make angle alpha[i][1] with
// the vertical, alternating sides; its left boundary crease makes alpha[i][0].
// Angles are measured in a frame local to each row that is mirrored on every
// second row (the creases of the datum column alternate mountain/valley), so
// a datum that keeps turning the same way keeps the same angles.

#include "rigidfold/design.hpp"
#include "rigidfold/foldsim.hpp"
#include "rigidfold/geometry.hpp"
#include "rigidfold/pattern.hpp"

#include <optional>
#include <vector>

namespace rigidfold {

enum class Turn { Left, Right };

// Left-crease angle of a datum vertex: (pi + beta)/2 for a left turn,
// (pi - beta)/2 for a right turn.
double alpha_left(double beta, Turn turn);

// True iff (a11 - pi/2)(a10 - pi/2) > 0 and 0 < |a11 - pi/2| < |a10 - pi/2|.
bool validate_alpha11(double alpha11, double alpha10);
// Canonical valid choice pi/4 + a10/2 (on the same side of pi/2 as a10).
double default_alpha11(double alpha10);

struct OrthoAngleGrid {
  std::vector<std::vector<double>> alpha;  // alpha[i][j], i over datum rows, j >= 0

  int rows() const { return int(alpha.size()); }
  int cols() const { return alpha.empty() ? 0 : int(alpha[0].size()); }
  // Max relative deviation of tan a[i][j]/tan a[i][j+1] from
  // tan a[i+1][j]/tan a[i+1][j+1] over all 2x2 blocks.
  double separability_residual() const;
};

// Fill the grid from the first column and the free angle alpha11 by the
// separable tangent relation, with alpha[1][j] = alpha11 for j >= 1.
// `columns` is the number of grid columns j = 0..columns-1 (at least 2).
// Throws DegenerateAngle when an angle hits 0, pi/2 or pi within 1e-9.
OrthoAngleGrid propagate_grid(const std::vector<double>& col0, double alpha11, int columns = 2);

// Angle between adjacent inner creases of row i at the halting state:
// cos xi = 4 cos^2(alpha_i1) / (1 - cos beta_i) - 1. OutOfRange if infeasible.
double ortho_xi(double alpha_i1, double beta_i);

struct OrthoRowCurves {
  std::vector<double> xi;        // xi_i per row
  std::vector<double> scale;     // segment-length ratio of row i to row 1
  std::vector<Mat2> maps;        // f_i = maps[i] * f_1 (planar, in the row's plane)
  std::vector<PolyCurve> f;      // f_i
};

// Row target curves: f_i = s_i A^{-1}(xi_i, theta) A(xi_1, theta) f_1 with
// s_i = sin(alpha_11) / sin(alpha_i1), the ratio of the row segment lengths.
OrthoRowCurves ortho_row_curves(const PolyCurve& f1, double theta, const OrthoAngleGrid& grid,
                                const Partition& datum);

// Planar layout. `column_lengths` are the datum segment lengths l_0..l_n,
// `a0`/`a1` the per-row angles alpha[i][0], alpha[i][1] (i = 1..n), `widths`
// the horizontal spans W_0 (left boundary) .. W_K (last column to right
// boundary).
CreasePattern layout_ortho(const std::vector<double>& column_lengths, const std::vector<double>& a0,
                           const std::vector<double>& a1, const std::vector<double>& widths);

struct OrthoDesignSpec {
  PolyCurve datum;                // Gamma, planar
  PolyCurve target;               // f_1, planar and open
  int n = 9;                      // datum inner vertices
  int m = 9;                      // interior staircase corners of the target row
  std::optional<double> alpha11;  // free angle; canonical default when empty
  std::optional<double> theta;    // admissibility rotation; searched when empty
  double eps = 0.0;               // Hausdorff budget (0: not enforced)
  double tube = -1.0;             // tube offset; <0: eps/4 (or 0.05 if eps is 0); 0: on-curve points
  bool simulate = true;
};

struct OrthoDesign {
  CreasePattern pattern;
  DesignReport report;
  Partition datum_partition;
  Partition staircase;
  OrthoAngleGrid grid;
  OrthoRowCurves rows;
  double theta = 0.0;
  double xi1 = 0.0;
  double alpha11 = 0.0;
  std::optional<Trajectory> trajectory;
};

OrthoDesign build_ortho_pattern(const OrthoDesignSpec& spec);

}  // namespace rigidfold
