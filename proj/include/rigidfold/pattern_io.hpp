#pragma once
// Serialization: FOLD v1.1 documents, SVG drawings, design-spec files,
// reports and trajectories. All writers are byte-deterministic, and
// export -> import -> export reproduces FOLD and SVG output exactly.

#include "rigidfold/foldsim.hpp"
#include "rigidfold/orthodiagonal.hpp"
#include "rigidfold/parallel_repeating.hpp"
#include "rigidfold/pattern.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rigidfold {

// --- FOLD ----------------------------------------------------------------------

// FOLD v1.1 document. Without a state: planar 2D vertices_coords and zero
// fold angles. With a state: folded 3D vertices_coords, edges_foldAngle in
// degrees (valley positive, 12 significant digits) and the planar coordinates
// under "rigidfold:vertices_coords_flat". Grid metadata lives under
// "rigidfold:grid".
std::string export_fold(const CreasePattern& p, const FoldedState* state = nullptr);

struct ImportedFold {
  CreasePattern pattern;
  std::optional<FoldedState> state;  // present for folded-form documents
};

// Parses a FOLD document back into a quad-grid pattern. Files without grid
// metadata have their grid recovered from the face topology. Throws
// SchemaError (malformed document), NotQuadGrid (faces that are not a quad
// grid) or InvariantViolation (the planar pattern fails developability or its
// crease stars are not counter-clockwise).
ImportedFold import_fold(const std::string& text);

// --- SVG -----------------------------------------------------------------------

struct SvgOverlay {
  std::string cls;          // CSS class, e.g. "curve" or "staircase"
  std::vector<Vec2> points;  // model coordinates
};

// Crease drawing: one <line> per crease with class m, v, b (or u when not
// assigned), 1 model unit = 100 user units, y pointing up in the model.
// Coordinates carry 6 decimals of user units. Overlays are drawn as
// polylines after the creases.
std::string export_svg(const CreasePattern& p, const std::vector<SvgOverlay>& overlays = {});
// Drawing of overlays only (no pattern), same conventions.
std::string export_svg_overlays(const std::vector<SvgOverlay>& overlays);
// Reads a crease drawing written by export_svg (overlays are ignored).
CreasePattern import_svg(const std::string& text);

// --- JSON ----------------------------------------------------------------------

// Pattern description: grid size, planar vertices, creases with role and
// assignment letter, and the four sector angles of every inner vertex.
std::string export_pattern_json(const CreasePattern& p);

// --- design specs ----------------------------------------------------------------

struct CurveSource {
  std::string builtin;  // builtin name, empty for inline curves
  PolyCurve curve;
};

struct DesignSpecFile {
  std::string type;  // "parallel-repeating" | "orthodiagonal"
  CurveSource datum;
  CurveSource target;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<double> rho4;
  std::optional<double> alpha11;
  std::optional<double> theta;  // empty: "auto"
  double eps = 0.0;
  std::optional<double> tube;
  std::map<std::string, std::string> outputs;  // "fold" | "svg" | "report" -> path
};

// Parses and validates a design spec. Angles are radians unless
// "angle_unit": "deg". Curves are a builtin name or an object
// {"points": [[x, y(, z)], ...], "closed": bool}. Unknown fields anywhere
// raise SchemaError.
DesignSpecFile parse_design_spec(const std::string& text);
// Parses a curve given as a builtin name or an inline curve object (JSON).
CurveSource parse_curve(const std::string& text);

ParallelDesignSpec to_parallel_spec(const DesignSpecFile& f);
OrthoDesignSpec to_ortho_spec(const DesignSpecFile& f);

// --- reports ---------------------------------------------------------------------

// JSON report: budgets and achieved distances, halting crease, branch log,
// every check with residual and tolerance, and the tolerance table.
std::string report_json(const DesignReport& r);
// Human-readable rendering of the same content.
std::string report_text(const DesignReport& r);

// Trajectory as JSON: halting summary plus per state the driving angle, the
// fold angles (degrees) and the 3D vertex coordinates.
std::string trajectory_json(const CreasePattern& p, const Trajectory& t);

}  // namespace rigidfold
