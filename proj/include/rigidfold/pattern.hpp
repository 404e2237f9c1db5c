#pragma once
// Quad-grid crease pattern shared by both design families, the simulator and
// the serializers.
//
// Vertices form an R x C grid (index r*C + c); row 0, row R-1, column 0 and
// column C-1 lie on the paper boundary, every other vertex is an inner
// degree-4 vertex. Rows run along increasing c, columns along increasing r.

#include "rigidfold/kinematics.hpp"
#include "rigidfold/mathutil.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace rigidfold {

enum class CreaseRole { Row, Column, Boundary };
enum class Assignment { Mountain, Valley, Boundary, Unassigned };

const char* to_string(CreaseRole r);
char assignment_letter(Assignment a);

struct Crease {
  int v0 = 0;
  int v1 = 0;
  CreaseRole role = CreaseRole::Boundary;
  Assignment mv = Assignment::Unassigned;
};

struct CreasePattern {
  std::string family = "generic";  // "parallel-repeating" | "orthodiagonal" | "generic"
  int rows = 0;                    // R, including boundary rows
  int cols = 0;                    // C, including boundary columns
  std::vector<Vec2> coords;        // R*C planar coordinates
  std::vector<Crease> creases;     // canonical order, see build_edges()
  int halting_column = 1;

  int vid(int r, int c) const { return r * cols + c; }
  int row_of(int v) const { return v / cols; }
  int col_of(int v) const { return v % cols; }
  int inner_rows() const { return rows - 2; }
  int inner_cols() const { return cols - 2; }
  bool is_inner(int r, int c) const { return r > 0 && c > 0 && r < rows - 1 && c < cols - 1; }
  const Vec2& at(int r, int c) const { return coords[std::size_t(vid(r, c))]; }

  // Canonical edge list: horizontal edges row-major, then vertical edges
  // row-major; roles derived from grid position, assignments reset.
  void build_edges();
  // Index of the crease joining two vertex ids, or -1.
  int crease_index(int a, int b) const;
  // Index of the crease joining grid vertices (r0,c0) and (r1,c1).
  int crease_between(int r0, int c0, int r1, int c1) const { return crease_index(vid(r0, c0), vid(r1, c1)); }

  // The four creases at inner vertex (r,c) in counter-clockwise order starting
  // at the right row crease: right, up, left, down (grid neighbours).
  std::array<int, 4> star(int r, int c) const;
  // Planar direction angles of the four star creases (same order).
  std::array<double, 4> star_directions(int r, int c) const;
  // Sector angles at (r,c): UR, UL, DL, DR.
  VertexAngles sectors(int r, int c) const;

  // Quad faces (r,c),(r,c+1),(r+1,c+1),(r+1,c) reordered counter-clockwise.
  std::vector<std::array<int, 4>> faces() const;
  int face_index(int r, int c) const { return r * (cols - 1) + c; }

  double diameter() const;
  // Throws InvariantViolation if the star order is not counter-clockwise or
  // some crease has zero length.
  void validate() const;
  // Refresh the vertex-pair lookup after editing `creases` directly.
  void rebuild_lookup();

 private:
  std::map<std::pair<int, int>, int> edge_lookup_;
};

// A numerical check outcome; pass iff residual <= tolerance.
struct CheckResult {
  std::string id;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string tag;     // short description of the property checked
  std::string detail;  // optional free-form diagnostic
};

CheckResult make_check(std::string id, double residual, double tolerance, std::string tag, std::string detail = "");

struct DesignReport {
  std::string family;
  bool ok = true;
  std::string failure;      // error text when ok == false
  int failing_step = -1;    // index of the failing vertex/column, -1 if none
  double eps = 0.0;         // requested budget
  double eps1 = -1.0;       // achieved datum distance (design-time polyline)
  double eps2 = -1.0;       // achieved target distance (design-time polyline)
  double eps1_folded = -1;  // measured at the halting state
  double eps2_folded = -1;
  double halting_drive = 0.0;
  int halting_crease = -1;
  int halting_column_measured = -1;
  std::string halting_reason;
  std::vector<std::string> branch_log;
  std::vector<CheckResult> checks;

  bool all_checks_pass() const;
};

}  // namespace rigidfold
