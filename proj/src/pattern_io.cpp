#include "rigidfold/pattern_io.hpp"

#include "rigidfold/errors.hpp"
#include "rigidfold/tolerances.hpp"
#include "rigidfold/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <regex>
#include <set>
#include <sstream>

namespace rigidfold {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr double kSvgScale = 100.0;
constexpr double kSvgMargin = 10.0;

// Nearest double to the 12-significant-digit decimal rendering of x. Values
// that went through a degree/radian round trip map back to the same decimal.
double round12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr) + 0.0;
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x + 0.0);
  std::string s = buf;
  return s == "-0.000000" ? "0.000000" : s;
}

Assignment assignment_from_letter(const std::string& s) {
  if (s == "M") return Assignment::Mountain;
  if (s == "V") return Assignment::Valley;
  if (s == "B") return Assignment::Boundary;
  if (s == "U" || s == "F") return Assignment::Unassigned;
  throw Error(ErrorKind::SchemaError, "unknown edge assignment '" + s + "'");
}

const char* svg_class(Assignment a) {
  switch (a) {
    case Assignment::Mountain: return "m";
    case Assignment::Valley: return "v";
    case Assignment::Boundary: return "b";
    case Assignment::Unassigned: return "u";
  }
  return "u";
}

Assignment assignment_from_class(const std::string& s) {
  if (s == "m") return Assignment::Mountain;
  if (s == "v") return Assignment::Valley;
  if (s == "b") return Assignment::Boundary;
  if (s == "u") return Assignment::Unassigned;
  throw Error(ErrorKind::SchemaError, "unknown stroke class '" + s + "'");
}

// One top-level key per line, compact values.
std::string write_object(const ojson& doc) {
  std::string out = "{\n";
  bool first = true;
  for (const auto& [k, v] : doc.items()) {
    if (!first) out += ",\n";
    first = false;
    out += "  " + json(k).dump() + ": " + v.dump();
  }
  out += "\n}\n";
  return out;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::SchemaError, std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::SchemaError, "missing or malformed field '" + key + "'");
  }
}

// Assign grid positions to the vertices of a quad mesh by walking across
// shared edges. Returns the vertex id for each grid slot (row-major) and the
// grid size; NotQuadGrid when the faces do not tile a rectangle.
std::vector<int> recover_grid(int nv, const std::vector<std::array<int, 4>>& faces, const std::vector<Vec2>& xy,
                              int& rows, int& cols) {
  if (faces.empty()) throw Error(ErrorKind::NotQuadGrid, "no faces");
  std::map<std::pair<int, int>, std::vector<int>> edge_faces;
  for (std::size_t f = 0; f < faces.size(); ++f)
    for (int k = 0; k < 4; ++k) {
      int a = faces[f][std::size_t(k)], b = faces[f][std::size_t((k + 1) % 4)];
      edge_faces[{std::min(a, b), std::max(a, b)}].push_back(int(f));
    }
  std::vector<int> face_count(std::size_t(nv), 0);
  for (const auto& f : faces)
    for (int v : f) face_count[std::size_t(v)]++;
  // Root: the corner (vertex in exactly one face) with the smallest index.
  int root_face = -1, corner = -1;
  for (int v = 0; v < nv && corner < 0; ++v)
    if (face_count[std::size_t(v)] == 1) corner = v;
  if (corner < 0) throw Error(ErrorKind::NotQuadGrid, "no corner vertex");
  for (std::size_t f = 0; f < faces.size() && root_face < 0; ++f)
    if (std::find(faces[f].begin(), faces[f].end(), corner) != faces[f].end()) root_face = int(f);

  using L = std::pair<int, int>;
  std::map<int, L> label;
  auto set_label = [&](int v, L l) {
    auto it = label.find(v);
    if (it == label.end()) {
      label[v] = l;
    } else if (it->second != l) {
      throw Error(ErrorKind::NotQuadGrid, "faces do not form a grid", v);
    }
  };
  {
    auto f = faces[std::size_t(root_face)];
    while (f[0] != corner) std::rotate(f.begin(), f.begin() + 1, f.end());
    set_label(f[0], {0, 0});
    set_label(f[1], {0, 1});
    set_label(f[2], {1, 1});
    set_label(f[3], {1, 0});
  }
  std::vector<char> done(faces.size(), 0);
  std::vector<int> queue{root_face};
  done[std::size_t(root_face)] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto& f = faces[std::size_t(queue[qi])];
    for (int k = 0; k < 4; ++k) {
      const int u = f[std::size_t(k)], v = f[std::size_t((k + 1) % 4)];
      const int vn = f[std::size_t((k + 2) % 4)];  // neighbour of v inside f
      const L lu = label.at(u), lv = label.at(v), lvn = label.at(vn);
      const L n{lvn.first - lv.first, lvn.second - lv.second};  // towards the inside of f
      for (int g : edge_faces[{std::min(u, v), std::max(u, v)}]) {
        if (g == queue[qi] || done[std::size_t(g)]) continue;
        const auto& h = faces[std::size_t(g)];
        for (int j = 0; j < 4; ++j) {
          const int a = h[std::size_t(j)], b = h[std::size_t((j + 1) % 4)];
          const int prev = h[std::size_t((j + 3) % 4)], next = h[std::size_t((j + 2) % 4)];
          if (a == u && b == v) {
            set_label(prev, {lu.first - n.first, lu.second - n.second});
            set_label(next, {lv.first - n.first, lv.second - n.second});
          } else if (a == v && b == u) {
            set_label(prev, {lv.first - n.first, lv.second - n.second});
            set_label(next, {lu.first - n.first, lu.second - n.second});
          }
        }
        done[std::size_t(g)] = 1;
        queue.push_back(g);
      }
    }
  }
  if (queue.size() != faces.size() || int(label.size()) != nv)
    throw Error(ErrorKind::NotQuadGrid, "faces are not connected into one grid");
  int r0 = 0, c0 = 0, r1 = 0, c1 = 0;
  for (const auto& [v, l] : label) {
    r0 = std::min(r0, l.first);
    c0 = std::min(c0, l.second);
    r1 = std::max(r1, l.first);
    c1 = std::max(c1, l.second);
  }
  rows = r1 - r0 + 1;
  cols = c1 - c0 + 1;
  if (rows * cols != nv || std::size_t((rows - 1) * (cols - 1)) != faces.size())
    throw Error(ErrorKind::NotQuadGrid, "faces do not tile a rectangle");
  std::vector<int> slot(std::size_t(nv), -1);
  for (const auto& [v, l] : label) {
    int& s = slot[std::size_t((l.first - r0) * cols + (l.second - c0))];
    if (s >= 0) throw Error(ErrorKind::NotQuadGrid, "two vertices share a grid position", v);
    s = v;
  }
  // Grid orientation: turning from the next-column direction to the
  // previous-row direction must be counter-clockwise; transpose otherwise.
  auto P = [&](int r, int c) { return xy[std::size_t(slot[std::size_t(r * cols + c)])]; };
  const Vec2 e_right = P(0, 1) - P(0, 0), e_up = P(0, 0) - P(1, 0);
  if (e_right.x() * e_up.y() - e_right.y() * e_up.x() < 0) {
    std::vector<int> t(slot.size());
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) t[std::size_t(c * rows + r)] = slot[std::size_t(r * cols + c)];
    std::swap(rows, cols);
    slot = std::move(t);
  }
  return slot;
}

// Match the document's edges onto the canonical crease list of `p`; returns
// for each canonical crease the index of the document edge.
std::vector<int> match_edges(const CreasePattern& p, const std::vector<std::pair<int, int>>& edges) {
  if (edges.size() != p.creases.size())
    throw Error(ErrorKind::NotQuadGrid, "edge count does not match a quad grid");
  std::vector<int> which(p.creases.size(), -1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const int k = p.crease_index(edges[e].first, edges[e].second);
    if (k < 0 || which[std::size_t(k)] >= 0)
      throw Error(ErrorKind::NotQuadGrid, "edge is not a grid edge", int(e));
    which[std::size_t(k)] = int(e);
  }
  return which;
}

void require_pattern_invariants(const CreasePattern& p) {
  p.validate();
  const CheckResult dev = check_developability(p);
  if (!dev.pass) throw Error(ErrorKind::InvariantViolation, "developability fails at " + dev.detail);
}

}  // namespace

// ------------------------------------------------------------------ FOLD

std::string export_fold(const CreasePattern& p, const FoldedState* state) {
  if (state && (state->rho.size() != p.creases.size() || state->coords.size() != p.coords.size()))
    throw Error(ErrorKind::InvalidArgument, "state does not match pattern");
  ojson doc;
  doc["file_spec"] = 1.1;
  doc["file_creator"] = "rigidfold";
  doc["file_classes"] = {"singleModel"};
  doc["frame_title"] = p.family;
  doc["frame_classes"] = {state ? "foldedForm" : "creasePattern"};
  doc["frame_attributes"] = {state ? "3D" : "2D"};
  ojson vc = ojson::array();
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    if (state) {
      const Vec3& x = state->coords[i];
      vc.push_back({x.x() + 0.0, x.y() + 0.0, x.z() + 0.0});
    } else {
      vc.push_back({p.coords[i].x() + 0.0, p.coords[i].y() + 0.0});
    }
  }
  doc["vertices_coords"] = vc;
  ojson ev = ojson::array(), ea = ojson::array(), ef = ojson::array();
  for (std::size_t i = 0; i < p.creases.size(); ++i) {
    const auto& e = p.creases[i];
    ev.push_back({e.v0, e.v1});
    ea.push_back(std::string(1, assignment_letter(e.mv)));
    ef.push_back(state ? round12(state->rho[i] * 180.0 / kPi) : 0.0);
  }
  doc["edges_vertices"] = ev;
  doc["edges_assignment"] = ea;
  doc["edges_foldAngle"] = ef;
  ojson fv = ojson::array();
  for (const auto& f : p.faces()) fv.push_back({f[0], f[1], f[2], f[3]});
  doc["faces_vertices"] = fv;
  doc["rigidfold:grid"] = {{"rows", p.rows}, {"cols", p.cols}, {"family", p.family}, {"halting_column", p.halting_column}};
  if (state) {
    ojson flat = ojson::array();
    for (const auto& x : p.coords) flat.push_back({x.x() + 0.0, x.y() + 0.0});
    doc["rigidfold:vertices_coords_flat"] = flat;
    doc["rigidfold:driving"] = {{"crease", state->driving_crease}, {"angle", state->driving_rho + 0.0}};
  }
  return write_object(doc);
}

ImportedFold import_fold(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw Error(ErrorKind::SchemaError, "FOLD document must be an object");
  for (const char* key : {"vertices_coords", "edges_vertices", "faces_vertices"})
    if (!doc.contains(key) || !doc[key].is_array()) throw Error(ErrorKind::SchemaError, std::string("missing ") + key);

  const auto coords = get_as<std::vector<std::vector<double>>>(doc, "vertices_coords");
  const auto edges_raw = get_as<std::vector<std::vector<int>>>(doc, "edges_vertices");
  const auto faces_raw = get_as<std::vector<std::vector<int>>>(doc, "faces_vertices");
  const int nv = int(coords.size());
  if (nv == 0) throw Error(ErrorKind::SchemaError, "no vertices");
  const std::size_t dim = coords[0].size();
  if (dim != 2 && dim != 3) throw Error(ErrorKind::SchemaError, "vertices must have 2 or 3 coordinates");
  for (const auto& c : coords)
    if (c.size() != dim) throw Error(ErrorKind::SchemaError, "mixed vertex dimensions");
  bool folded = dim == 3;
  if (doc.contains("frame_classes") && doc["frame_classes"].is_array())
    for (const auto& c : doc["frame_classes"])
      if (c == "foldedForm") folded = true;

  std::vector<Vec2> flat(static_cast<std::size_t>(nv));
  if (folded) {
    if (!doc.contains("rigidfold:vertices_coords_flat"))
      throw Error(ErrorKind::SchemaError, "folded form without crease-pattern coordinates");
    const auto f = get_as<std::vector<std::vector<double>>>(doc, "rigidfold:vertices_coords_flat");
    if (int(f.size()) != nv) throw Error(ErrorKind::SchemaError, "flat coordinate count mismatch");
    for (int i = 0; i < nv; ++i) {
      if (f[std::size_t(i)].size() != 2) throw Error(ErrorKind::SchemaError, "flat coordinates must be 2D");
      flat[std::size_t(i)] = Vec2(f[std::size_t(i)][0], f[std::size_t(i)][1]);
    }
  } else {
    for (int i = 0; i < nv; ++i) {
      if (dim == 3 && coords[std::size_t(i)][2] != 0.0)
        throw Error(ErrorKind::SchemaError, "crease pattern vertices must be planar");
      flat[std::size_t(i)] = Vec2(coords[std::size_t(i)][0], coords[std::size_t(i)][1]);
    }
  }

  std::vector<std::array<int, 4>> faces;
  for (const auto& f : faces_raw) {
    if (f.size() != 4) throw Error(ErrorKind::NotQuadGrid, "face with " + std::to_string(f.size()) + " vertices");
    for (int v : f)
      if (v < 0 || v >= nv) throw Error(ErrorKind::SchemaError, "face vertex out of range");
    faces.push_back({f[0], f[1], f[2], f[3]});
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : edges_raw) {
    if (e.size() != 2 || e[0] < 0 || e[1] < 0 || e[0] >= nv || e[1] >= nv)
      throw Error(ErrorKind::SchemaError, "malformed edge");
    edges.emplace_back(e[0], e[1]);
  }
  std::vector<std::string> assign(edges.size(), "U");
  if (doc.contains("edges_assignment")) {
    assign = get_as<std::vector<std::string>>(doc, "edges_assignment");
    if (assign.size() != edges.size()) throw Error(ErrorKind::SchemaError, "edges_assignment length mismatch");
  }
  std::vector<double> fold(edges.size(), 0.0);
  if (doc.contains("edges_foldAngle")) {
    fold = get_as<std::vector<double>>(doc, "edges_foldAngle");
    if (fold.size() != edges.size()) throw Error(ErrorKind::SchemaError, "edges_foldAngle length mismatch");
  }

  ImportedFold out;
  CreasePattern& p = out.pattern;
  std::vector<int> slot;  // grid slot -> document vertex
  if (doc.contains("rigidfold:grid")) {
    const json& g = doc["rigidfold:grid"];
    p.rows = get_as<int>(g, "rows");
    p.cols = get_as<int>(g, "cols");
    p.family = get_as<std::string>(g, "family");
    p.halting_column = get_as<int>(g, "halting_column");
    if (p.rows * p.cols != nv) throw Error(ErrorKind::NotQuadGrid, "grid size does not match the vertex count");
    for (int i = 0; i < nv; ++i) slot.push_back(i);
  } else {
    slot = recover_grid(nv, faces, flat, p.rows, p.cols);
    p.family = "generic";
    p.halting_column = 1;
  }
  if (p.rows < 3 || p.cols < 3) throw Error(ErrorKind::NotQuadGrid, "grid has no inner vertex");
  std::vector<int> to_grid(std::size_t(nv), -1);
  for (int s = 0; s < nv; ++s) to_grid[std::size_t(slot[std::size_t(s)])] = s;
  p.coords.resize(std::size_t(nv));
  for (int s = 0; s < nv; ++s) p.coords[std::size_t(s)] = flat[std::size_t(slot[std::size_t(s)])];
  p.build_edges();
  for (auto& e : edges) e = {to_grid[std::size_t(e.first)], to_grid[std::size_t(e.second)]};
  const std::vector<int> which = match_edges(p, edges);
  for (std::size_t k = 0; k < p.creases.size(); ++k) {
    const Assignment a = assignment_from_letter(assign[std::size_t(which[k])]);
    const bool boundary = p.creases[k].role == CreaseRole::Boundary;
    if (boundary != (a == Assignment::Boundary))
      throw Error(ErrorKind::NotQuadGrid, "boundary assignment does not match the grid boundary", which[k]);
    p.creases[k].mv = a;
  }
  require_pattern_invariants(p);

  if (folded) {
    FoldedState s;
    s.rho.resize(p.creases.size());
    for (std::size_t k = 0; k < p.creases.size(); ++k) s.rho[k] = fold[std::size_t(which[k])] * kPi / 180.0;
    s.coords.resize(std::size_t(nv));
    for (int i = 0; i < nv; ++i) {
      const auto& c = coords[std::size_t(slot[std::size_t(i)])];
      s.coords[std::size_t(i)] = Vec3(c[0], c[1], c[2]);
    }
    if (doc.contains("rigidfold:driving")) {
      s.driving_crease = get_as<int>(doc["rigidfold:driving"], "crease");
      s.driving_rho = get_as<double>(doc["rigidfold:driving"], "angle");
    } else {
      s.driving_crease = driving_crease(p);
      s.driving_rho = s.rho[std::size_t(s.driving_crease)];
    }
    // Panel placements from the vertex positions.
    for (const auto& f : p.faces()) {
      std::vector<Vec3> a, b;
      for (int v : f) {
        a.emplace_back(p.coords[std::size_t(v)].x(), p.coords[std::size_t(v)].y(), 0.0);
        b.push_back(s.coords[std::size_t(v)]);
      }
      const RigidTransform T = kabsch(a, b);
      s.face_rot.push_back(T.R);
      s.face_trans.push_back(T.t);
      for (std::size_t k = 0; k < a.size(); ++k)
        s.placement_error = std::max(s.placement_error, (T.apply(a[k]) - b[k]).norm());
    }
    out.state = std::move(s);
  }
  return out;
}

// ------------------------------------------------------------------ SVG

namespace {

struct SvgFrame {
  double x0 = 0, y0 = 0, w = 0, h = 0;
};

SvgFrame frame_of(const std::vector<Vec2>& pts) {
  SvgFrame f;
  if (pts.empty()) return f;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& p : pts) {
    const double x = std::stod(fixed6(kSvgScale * p.x())), y = std::stod(fixed6(-kSvgScale * p.y()));
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  f.x0 = xmin - kSvgMargin;
  f.y0 = ymin - kSvgMargin;
  f.w = xmax - xmin + 2 * kSvgMargin;
  f.h = ymax - ymin + 2 * kSvgMargin;
  return f;
}

std::string svg_document(const CreasePattern* p, const std::vector<SvgOverlay>& overlays) {
  std::vector<Vec2> all;
  if (p) all = p->coords;
  for (const auto& o : overlays) all.insert(all.end(), o.points.begin(), o.points.end());
  const SvgFrame fr = frame_of(all);
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << fixed6(fr.x0) << " "
     << fixed6(fr.y0) << " " << fixed6(fr.w) << " " << fixed6(fr.h) << "\"";
  if (p)
    os << " data-family=\"" << p->family << "\" data-rows=\"" << p->rows << "\" data-cols=\"" << p->cols
       << "\" data-halting-column=\"" << p->halting_column << "\"";
  os << ">\n";
  os << "<style>line,polyline{fill:none;stroke-width:1;vector-effect:non-scaling-stroke}"
        ".m{stroke:#d62728}.v{stroke:#1f4fd6}.b{stroke:#000000}.u{stroke:#888888}"
        ".curve{stroke:#2ca02c}.staircase{stroke:#ff7f0e}</style>\n";
  if (p) {
    os << "<g id=\"creases\">\n";
    for (const auto& e : p->creases) {
      const Vec2& a = p->coords[std::size_t(e.v0)];
      const Vec2& b = p->coords[std::size_t(e.v1)];
      os << "<line class=\"" << svg_class(e.mv) << "\" data-v0=\"" << e.v0 << "\" data-v1=\"" << e.v1 << "\" x1=\""
         << fixed6(kSvgScale * a.x()) << "\" y1=\"" << fixed6(-kSvgScale * a.y()) << "\" x2=\""
         << fixed6(kSvgScale * b.x()) << "\" y2=\"" << fixed6(-kSvgScale * b.y()) << "\"/>\n";
    }
    os << "</g>\n";
  }
  for (const auto& o : overlays) {
    os << "<polyline class=\"" << o.cls << "\" points=\"";
    for (std::size_t i = 0; i < o.points.size(); ++i)
      os << (i ? " " : "") << fixed6(kSvgScale * o.points[i].x()) << "," << fixed6(-kSvgScale * o.points[i].y());
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string attr(const std::string& tag, const std::string& name) {
  const std::regex re("\\s" + name + "=\"([^\"]*)\"");
  std::smatch m;
  if (!std::regex_search(tag, m, re)) throw Error(ErrorKind::SchemaError, "SVG element lacks attribute " + name);
  return m[1].str();
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw Error(ErrorKind::SchemaError, "malformed number '" + s + "'");
  return v;
}

int to_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw Error(ErrorKind::SchemaError, "malformed integer '" + s + "'");
  return v;
}

}  // namespace

std::string export_svg(const CreasePattern& p, const std::vector<SvgOverlay>& overlays) {
  return svg_document(&p, overlays);
}

std::string export_svg_overlays(const std::vector<SvgOverlay>& overlays) { return svg_document(nullptr, overlays); }

CreasePattern import_svg(const std::string& text) {
  std::smatch m;
  if (!std::regex_search(text, m, std::regex("<svg\\s[^>]*>"))) throw Error(ErrorKind::SchemaError, "no <svg> element");
  const std::string root = m[0].str();
  CreasePattern p;
  p.family = attr(root, "data-family");
  p.rows = to_int(attr(root, "data-rows"));
  p.cols = to_int(attr(root, "data-cols"));
  p.halting_column = to_int(attr(root, "data-halting-column"));
  if (p.rows < 3 || p.cols < 3) throw Error(ErrorKind::NotQuadGrid, "grid has no inner vertex");
  const int nv = p.rows * p.cols;
  p.coords.assign(std::size_t(nv), Vec2::Zero());
  std::vector<char> seen(std::size_t(nv), 0);
  std::vector<std::pair<int, int>> edges;
  std::vector<Assignment> assign;
  const std::regex line_re("<line\\s[^>]*/>");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), line_re); it != std::sregex_iterator(); ++it) {
    const std::string tag = it->str();
    const int v0 = to_int(attr(tag, "data-v0")), v1 = to_int(attr(tag, "data-v1"));
    if (v0 < 0 || v1 < 0 || v0 >= nv || v1 >= nv) throw Error(ErrorKind::SchemaError, "line vertex out of range");
    const Vec2 a(to_double(attr(tag, "x1")) / kSvgScale, -to_double(attr(tag, "y1")) / kSvgScale);
    const Vec2 b(to_double(attr(tag, "x2")) / kSvgScale, -to_double(attr(tag, "y2")) / kSvgScale);
    for (auto [v, x] : {std::pair<int, Vec2>{v0, a}, std::pair<int, Vec2>{v1, b}}) {
      if (!seen[std::size_t(v)]) {
        p.coords[std::size_t(v)] = Vec2(x.x() + 0.0, x.y() + 0.0);
        seen[std::size_t(v)] = 1;
      } else if (p.coords[std::size_t(v)] != Vec2(x.x() + 0.0, x.y() + 0.0)) {
        throw Error(ErrorKind::SchemaError, "inconsistent coordinates for vertex " + std::to_string(v));
      }
    }
    edges.emplace_back(v0, v1);
    assign.push_back(assignment_from_class(attr(tag, "class")));
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw Error(ErrorKind::NotQuadGrid, "some grid vertex has no crease");
  p.build_edges();
  const std::vector<int> which = match_edges(p, edges);
  for (std::size_t k = 0; k < p.creases.size(); ++k) p.creases[k].mv = assign[std::size_t(which[k])];
  require_pattern_invariants(p);
  return p;
}

// ------------------------------------------------------------------ design specs

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw Error(ErrorKind::SchemaError, "unknown field '" + k + "' in " + where);
  }
}

CurveSource curve_from_json(const json& j, const std::string& where) {
  CurveSource out;
  if (j.is_string()) {
    out.builtin = j.get<std::string>();
    const auto names = builtin_curve_names();
    if (std::find(names.begin(), names.end(), out.builtin) == names.end())
      throw Error(ErrorKind::SchemaError, "unknown builtin curve '" + out.builtin + "' in " + where);
    out.curve = builtin_curve(out.builtin);
    return out;
  }
  if (!j.is_object()) throw Error(ErrorKind::SchemaError, where + " must be a builtin name or a curve object");
  reject_unknown(j, {"points", "closed"}, where);
  if (!j.contains("points") || !j["points"].is_array())
    throw Error(ErrorKind::SchemaError, where + " needs a 'points' array");
  std::vector<Vec3> pts;
  int dim = 0;
  for (const auto& p : j["points"]) {
    if (!p.is_array() || (p.size() != 2 && p.size() != 3))
      throw Error(ErrorKind::SchemaError, where + ": points must have 2 or 3 numbers");
    for (const auto& x : p)
      if (!x.is_number()) throw Error(ErrorKind::SchemaError, where + ": point coordinates must be numbers");
    if (dim == 0) dim = int(p.size());
    if (int(p.size()) != dim) throw Error(ErrorKind::SchemaError, where + ": mixed point dimensions");
    pts.emplace_back(p[0].get<double>(), p[1].get<double>(), dim == 3 ? p[2].get<double>() : 0.0);
  }
  if (pts.size() < 2) throw Error(ErrorKind::SchemaError, where + " needs at least two points");
  bool closed = false;
  if (j.contains("closed")) {
    if (!j["closed"].is_boolean()) throw Error(ErrorKind::SchemaError, where + ": 'closed' must be a boolean");
    closed = j["closed"].get<bool>();
  }
  out.curve = PolyCurve::from_3d(pts, {}, closed);
  out.curve.dim = dim;
  try {
    out.curve.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::SchemaError, where + ": " + e.what());
  }
  return out;
}

double number(const json& j, const std::string& key) {
  if (!j[key].is_number()) throw Error(ErrorKind::SchemaError, "'" + key + "' must be a number");
  return j[key].get<double>();
}

}  // namespace

CurveSource parse_curve(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception&) {
    j = json(text);  // bare builtin name
  }
  return curve_from_json(j, "curve");
}

DesignSpecFile parse_design_spec(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw Error(ErrorKind::SchemaError, "design spec must be an object");
  reject_unknown(j,
                 {"type", "description", "datum", "target", "n", "m", "rho4", "alpha11", "theta", "eps", "tube",
                  "angle_unit", "outputs"},
                 "design spec");
  DesignSpecFile f;
  if (!j.contains("type") || !j["type"].is_string()) throw Error(ErrorKind::SchemaError, "missing 'type'");
  f.type = j["type"].get<std::string>();
  const bool parallel = f.type == "parallel-repeating";
  const bool ortho = f.type == "orthodiagonal";
  if (!parallel && !ortho) throw Error(ErrorKind::SchemaError, "type must be parallel-repeating or orthodiagonal");
  if (parallel && (j.contains("alpha11") || j.contains("tube")))
    throw Error(ErrorKind::SchemaError, "alpha11 and tube apply to orthodiagonal designs only");
  if (ortho && j.contains("rho4")) throw Error(ErrorKind::SchemaError, "rho4 applies to parallel-repeating designs only");

  double unit = 1.0;
  if (j.contains("angle_unit")) {
    const std::string u = j["angle_unit"].is_string() ? j["angle_unit"].get<std::string>() : "";
    if (u == "deg") {
      unit = kPi / 180.0;
    } else if (u != "rad") {
      throw Error(ErrorKind::SchemaError, "angle_unit must be 'rad' or 'deg'");
    }
  }
  if (!j.contains("datum") || !j.contains("target")) throw Error(ErrorKind::SchemaError, "missing datum or target");
  f.datum = curve_from_json(j["datum"], "datum");
  f.target = curve_from_json(j["target"], "target");
  for (const char* key : {"n", "m"})
    if (j.contains(key)) {
      if (!j[key].is_number_integer()) throw Error(ErrorKind::SchemaError, std::string("'") + key + "' must be an integer");
      const int v = j[key].get<int>();
      if (v < (parallel ? 0 : 1)) throw Error(ErrorKind::SchemaError, std::string("'") + key + "' out of range");
      (std::string(key) == "n" ? f.n : f.m) = v;
    }
  if (j.contains("rho4")) f.rho4 = number(j, "rho4") * unit;
  if (j.contains("alpha11")) f.alpha11 = number(j, "alpha11") * unit;
  if (j.contains("theta")) {
    if (j["theta"].is_string()) {
      if (j["theta"].get<std::string>() != "auto") throw Error(ErrorKind::SchemaError, "theta must be a number or \"auto\"");
    } else {
      f.theta = number(j, "theta") * unit;
    }
  }
  if (j.contains("eps")) {
    f.eps = number(j, "eps");
    if (f.eps < 0) throw Error(ErrorKind::SchemaError, "eps must be non-negative");
  }
  if (j.contains("tube")) f.tube = number(j, "tube");
  if (j.contains("outputs")) {
    const json& o = j["outputs"];
    if (!o.is_object()) throw Error(ErrorKind::SchemaError, "'outputs' must be an object");
    reject_unknown(o, {"fold", "svg", "report"}, "outputs");
    for (const auto& [k, v] : o.items()) {
      if (!v.is_string()) throw Error(ErrorKind::SchemaError, "output paths must be strings");
      f.outputs[k] = v.get<std::string>();
    }
  }
  if (j.contains("description") && !j["description"].is_string())
    throw Error(ErrorKind::SchemaError, "'description' must be a string");
  return f;
}

ParallelDesignSpec to_parallel_spec(const DesignSpecFile& f) {
  if (f.type != "parallel-repeating") throw Error(ErrorKind::InvalidArgument, "not a parallel-repeating spec");
  ParallelDesignSpec s;
  s.datum = f.datum.curve;
  s.target = f.target.curve;
  if (f.n) s.n_row = *f.n;
  if (f.m) s.n_col = *f.m;
  if (f.rho4) s.rho4 = *f.rho4;
  s.theta = f.theta;
  s.eps = f.eps;
  return s;
}

OrthoDesignSpec to_ortho_spec(const DesignSpecFile& f) {
  if (f.type != "orthodiagonal") throw Error(ErrorKind::InvalidArgument, "not an orthodiagonal spec");
  OrthoDesignSpec s;
  s.datum = f.datum.curve;
  s.target = f.target.curve;
  if (f.n) s.n = *f.n;
  if (f.m) s.m = *f.m;
  s.alpha11 = f.alpha11;
  s.theta = f.theta;
  s.eps = f.eps;
  if (f.tube) s.tube = *f.tube;
  return s;
}

// ------------------------------------------------------------------ reports

namespace {

ojson num(double x) { return std::isfinite(x) ? ojson(x) : ojson(nullptr); }

}  // namespace

std::string export_pattern_json(const CreasePattern& p) {
  ojson j;
  j["family"] = p.family;
  j["rows"] = p.rows;
  j["cols"] = p.cols;
  j["halting_column"] = p.halting_column;
  ojson verts = ojson::array();
  for (const Vec2& x : p.coords) verts.push_back({x.x(), x.y()});
  j["vertices"] = verts;
  ojson creases = ojson::array();
  for (const Crease& c : p.creases)
    creases.push_back({{"v", {c.v0, c.v1}}, {"role", to_string(c.role)}, {"assignment", std::string(1, assignment_letter(c.mv))}});
  j["creases"] = creases;
  ojson sectors = ojson::array();
  for (int r = 1; r < p.rows - 1; ++r)
    for (int c = 1; c < p.cols - 1; ++c) {
      const VertexAngles a = p.sectors(r, c);
      sectors.push_back({{"r", r}, {"c", c}, {"angles", {a[0], a[1], a[2], a[3]}}});
    }
  j["sectors"] = sectors;
  return j.dump(2) + "\n";
}

std::string report_json(const DesignReport& r) {
  ojson doc;
  doc["family"] = r.family;
  doc["ok"] = r.ok && r.all_checks_pass();
  if (!r.failure.empty()) doc["failure"] = r.failure;
  if (r.failing_step >= 0) doc["failing_step"] = r.failing_step;
  doc["eps"] = r.eps;
  doc["eps1"] = num(r.eps1);
  doc["eps2"] = num(r.eps2);
  doc["eps1_folded"] = num(r.eps1_folded);
  doc["eps2_folded"] = num(r.eps2_folded);
  doc["halting"] = {{"drive", r.halting_drive},
                    {"crease", r.halting_crease},
                    {"column", r.halting_column_measured},
                    {"reason", r.halting_reason}};
  doc["branch_log"] = r.branch_log;
  ojson checks = ojson::array();
  for (const auto& c : r.checks)
    checks.push_back({{"id", c.id},
                      {"status", c.pass ? "ok" : "fail"},
                      {"residual", num(c.residual)},
                      {"tolerance", c.tolerance},
                      {"property", c.tag},
                      {"detail", c.detail}});
  doc["checks"] = checks;
  ojson tols = ojson::object();
  for (const auto& e : tol::table()) tols[e.id] = e.value;
  doc["tolerances"] = tols;
  return doc.dump(2) + "\n";
}

std::string report_text(const DesignReport& r) {
  std::ostringstream os;
  char buf[256];
  os << "family: " << r.family << "\n";
  os << "status: " << (r.ok && r.all_checks_pass() ? "ok" : "FAILED") << "\n";
  if (!r.failure.empty()) os << "failure: " << r.failure << "\n";
  if (r.failing_step >= 0) os << "failing step: " << r.failing_step << "\n";
  std::snprintf(buf, sizeof buf, "budget eps: %.6g\n", r.eps);
  os << buf;
  std::snprintf(buf, sizeof buf, "datum distance eps1: %.6g (folded %.6g)\n", r.eps1, r.eps1_folded);
  os << buf;
  std::snprintf(buf, sizeof buf, "target distance eps2: %.6g (folded %.6g)\n", r.eps2, r.eps2_folded);
  os << buf;
  std::snprintf(buf, sizeof buf, "halting: crease %d in column %d at drive %.12g rad (%s)\n", r.halting_crease,
                r.halting_column_measured, r.halting_drive, r.halting_reason.c_str());
  os << buf;
  for (const auto& l : r.branch_log) os << "  " << l << "\n";
  if (!r.checks.empty()) os << "checks:\n";
  for (const auto& c : r.checks) {
    std::snprintf(buf, sizeof buf, "  %-22s %-4s residual %.3e  tolerance %.1e", c.id.c_str(), c.pass ? "ok" : "FAIL",
                  c.residual, c.tolerance);
    os << buf;
    if (!c.detail.empty()) os << "  [" << c.detail << "]";
    os << "\n";
  }
  return os.str();
}

std::string trajectory_json(const CreasePattern& p, const Trajectory& t) {
  ojson doc;
  doc["halting"] = {{"drive", t.halting_drive},
                    {"crease", t.halting_crease},
                    {"column", t.halting_column},
                    {"designed_column", p.halting_column},
                    {"reason", t.halt_reason}};
  ojson states = ojson::array();
  for (std::size_t i = 0; i < t.states.size(); ++i) {
    const FoldedState& s = t.states[i];
    ojson rho = ojson::array(), xyz = ojson::array();
    for (double r : s.rho) rho.push_back(round12(r * 180.0 / kPi));
    for (const auto& x : s.coords) xyz.push_back({x.x() + 0.0, x.y() + 0.0, x.z() + 0.0});
    states.push_back({{"driving", t.driving_values[i]},
                      {"closure_residual", s.closure_residual},
                      {"edges_foldAngle", rho},
                      {"vertices_coords", xyz}});
  }
  doc["states"] = states;
  return write_object(doc);
}

}  // namespace rigidfold
