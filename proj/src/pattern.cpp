#include "rigidfold/pattern.hpp"

#include "rigidfold/errors.hpp"
#include "rigidfold/tolerances.hpp"

#include <algorithm>

namespace rigidfold {

const char* to_string(CreaseRole r) {
  switch (r) {
    case CreaseRole::Row: return "row";
    case CreaseRole::Column: return "column";
    case CreaseRole::Boundary: return "boundary";
  }
  return "?";
}

char assignment_letter(Assignment a) {
  switch (a) {
    case Assignment::Mountain: return 'M';
    case Assignment::Valley: return 'V';
    case Assignment::Boundary: return 'B';
    case Assignment::Unassigned: return 'U';
  }
  return 'U';
}

void CreasePattern::build_edges() {
  creases.clear();
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c + 1 < cols; ++c) {
      Crease e;
      e.v0 = vid(r, c);
      e.v1 = vid(r, c + 1);
      bool boundary = (r == 0 || r == rows - 1);
      e.role = boundary ? CreaseRole::Boundary : CreaseRole::Row;
      e.mv = boundary ? Assignment::Boundary : Assignment::Unassigned;
      creases.push_back(e);
    }
  for (int r = 0; r + 1 < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      Crease e;
      e.v0 = vid(r, c);
      e.v1 = vid(r + 1, c);
      bool boundary = (c == 0 || c == cols - 1);
      e.role = boundary ? CreaseRole::Boundary : CreaseRole::Column;
      e.mv = boundary ? Assignment::Boundary : Assignment::Unassigned;
      creases.push_back(e);
    }
  rebuild_lookup();
}

void CreasePattern::rebuild_lookup() {
  edge_lookup_.clear();
  for (std::size_t i = 0; i < creases.size(); ++i) {
    int a = creases[i].v0, b = creases[i].v1;
    edge_lookup_[{std::min(a, b), std::max(a, b)}] = int(i);
  }
}

int CreasePattern::crease_index(int a, int b) const {
  auto it = edge_lookup_.find({std::min(a, b), std::max(a, b)});
  return it == edge_lookup_.end() ? -1 : it->second;
}

std::array<int, 4> CreasePattern::star(int r, int c) const {
  return {crease_between(r, c, r, c + 1), crease_between(r, c, r - 1, c), crease_between(r, c, r, c - 1),
          crease_between(r, c, r + 1, c)};
}

std::array<double, 4> CreasePattern::star_directions(int r, int c) const {
  const Vec2& o = at(r, c);
  const std::array<Vec2, 4> nb{at(r, c + 1), at(r - 1, c), at(r, c - 1), at(r + 1, c)};
  std::array<double, 4> d{};
  for (int j = 0; j < 4; ++j) {
    Vec2 v = nb[std::size_t(j)] - o;
    d[std::size_t(j)] = std::atan2(v.y(), v.x());
  }
  return d;
}

VertexAngles CreasePattern::sectors(int r, int c) const {
  auto d = star_directions(r, c);
  VertexAngles v;
  for (int j = 0; j < 4; ++j) v[j] = wrap_2pi(d[std::size_t((j + 1) % 4)] - d[std::size_t(j)]);
  return v;
}

std::vector<std::array<int, 4>> CreasePattern::faces() const {
  std::vector<std::array<int, 4>> out;
  for (int r = 0; r + 1 < rows; ++r)
    for (int c = 0; c + 1 < cols; ++c) {
      std::array<int, 4> f{vid(r, c), vid(r, c + 1), vid(r + 1, c + 1), vid(r + 1, c)};
      double area = 0.0;
      for (int k = 0; k < 4; ++k) {
        const Vec2& p = coords[std::size_t(f[std::size_t(k)])];
        const Vec2& q = coords[std::size_t(f[std::size_t((k + 1) % 4)])];
        area += p.x() * q.y() - p.y() * q.x();
      }
      if (area < 0) f = {vid(r, c), vid(r + 1, c), vid(r + 1, c + 1), vid(r, c + 1)};
      out.push_back(f);
    }
  return out;
}

double CreasePattern::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t j = i + 1; j < coords.size(); ++j) d = std::max(d, (coords[i] - coords[j]).norm());
  return d;
}

void CreasePattern::validate() const {
  if (rows < 3 || cols < 3) throw Error(ErrorKind::InvariantViolation, "pattern needs at least one inner vertex");
  if (int(coords.size()) != rows * cols) throw Error(ErrorKind::InvariantViolation, "coordinate count mismatch");
  for (const auto& e : creases)
    if ((coords[std::size_t(e.v0)] - coords[std::size_t(e.v1)]).norm() <= 0.0)
      throw Error(ErrorKind::InvariantViolation, "zero-length crease");
  for (int r = 1; r + 1 < rows; ++r)
    for (int c = 1; c + 1 < cols; ++c) {
      VertexAngles v = sectors(r, c);
      if (v.developability_residual() > tol::developability)
        throw Error(ErrorKind::InvariantViolation, "star of inner vertex is not counter-clockwise", vid(r, c));
    }
}

CheckResult make_check(std::string id, double residual, double tolerance, std::string tag, std::string detail) {
  CheckResult c;
  c.id = std::move(id);
  c.residual = std::isfinite(residual) ? std::abs(residual) : residual;
  c.tolerance = tolerance;
  c.pass = std::isfinite(residual) && c.residual <= tolerance;
  c.tag = std::move(tag);
  c.detail = std::move(detail);
  return c;
}

bool DesignReport::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

}  // namespace rigidfold
