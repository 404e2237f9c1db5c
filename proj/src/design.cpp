#include "rigidfold/design.hpp"

#include "rigidfold/errors.hpp"
#include "rigidfold/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rigidfold {

namespace {

double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) && std::min(a.y(), b.y()) <= p.y() &&
         p.y() <= std::max(a.y(), b.y());
}

bool segments_meet(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const double o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

}  // namespace

std::optional<std::pair<int, int>> find_crease_crossing(const CreasePattern& p) {
  const int n = int(p.creases.size());
  std::vector<Vec2> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Vec2& a = p.coords[std::size_t(p.creases[std::size_t(i)].v0)];
    const Vec2& b = p.coords[std::size_t(p.creases[std::size_t(i)].v1)];
    lo[std::size_t(i)] = a.cwiseMin(b);
    hi[std::size_t(i)] = a.cwiseMax(b);
  }
  for (int i = 0; i < n; ++i) {
    const auto& e = p.creases[std::size_t(i)];
    for (int j = i + 1; j < n; ++j) {
      const auto& f = p.creases[std::size_t(j)];
      if (e.v0 == f.v0 || e.v0 == f.v1 || e.v1 == f.v0 || e.v1 == f.v1) continue;
      if ((lo[std::size_t(i)].array() > hi[std::size_t(j)].array()).any() ||
          (lo[std::size_t(j)].array() > hi[std::size_t(i)].array()).any())
        continue;
      if (segments_meet(p.coords[std::size_t(e.v0)], p.coords[std::size_t(e.v1)], p.coords[std::size_t(f.v0)],
                        p.coords[std::size_t(f.v1)]))
        return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

void require_embeddable(const CreasePattern& p) {
  try {
    p.validate();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InvariantViolation) throw;
    throw Error(ErrorKind::CreaseIntersection,
                std::string("the planar layout folds over itself (") + e.what() +
                    "); try rescaling the datum or target curve or refining the partition",
                e.index());
  }
  auto hit = find_crease_crossing(p);
  if (!hit) return;
  std::ostringstream os;
  os << "creases " << hit->first << " and " << hit->second
     << " intersect in the plane; try rescaling the datum or target curve (for example by 0.5) or refining the "
        "partition";
  throw Error(ErrorKind::CreaseIntersection, os.str(), hit->first);
}

double aligned_hausdorff(const std::vector<Vec3>& folded, const std::vector<Vec3>& reference_points,
                         const PolyCurve& curve) {
  const RigidTransform T = kabsch(folded, reference_points);
  std::vector<Vec3> moved;
  moved.reserve(folded.size());
  for (const auto& x : folded) moved.push_back(T.apply(x));
  return hausdorff(moved, curve.samples);
}

Trajectory fold_and_measure(CreasePattern& p, DesignReport& report, const LineReference* datum,
                            const LineReference* target, int states) {
  Trajectory tr = sweep_to_halt(p, states);
  // Mountain/valley assignment from the state closest to half the halting drive.
  std::size_t mid = 0;
  double best = 1e300;
  for (std::size_t i = 0; i < tr.driving_values.size(); ++i) {
    double d = std::abs(tr.driving_values[i] - 0.5 * tr.halting_drive);
    if (d < best) {
      best = d;
      mid = i;
    }
  }
  assign_from_state(p, tr.states[mid]);
  report.halting_drive = tr.halting_drive;
  report.halting_crease = tr.halting_crease;
  report.halting_column_measured = tr.halting_column;
  report.halting_reason = tr.halt_reason;
  const FoldedState& halt = tr.states.back();
  auto measure = [&](const LineReference* ref) {
    if (!ref || !ref->curve) return -1.0;
    PolyCurve line = extract_polylines(p, halt, ref->axis, ref->index, true);
    std::vector<Vec3> pts(line.samples.begin() + ref->first, line.samples.end());
    if (pts.size() != ref->points.size())
      throw Error(ErrorKind::InvariantViolation, "reference polyline does not match the grid line");
    return aligned_hausdorff(pts, ref->points, *ref->curve);
  };
  report.eps1_folded = measure(datum);
  report.eps2_folded = measure(target);
  return tr;
}

std::optional<double> pick_theta(const PolyCurve& f, double xi, int grid) {
  const std::vector<double> pass = search_theta(f, xi, grid);
  if (pass.empty()) return std::nullopt;
  if (int(pass.size()) == grid) return 0.0;
  std::vector<char> ok(std::size_t(grid), 0);
  for (double t : pass) ok[std::size_t(std::lround(t / (2.0 * kPi) * grid)) % std::size_t(grid)] = 1;
  // Start scanning just after a failing cell so runs never wrap mid-scan.
  int start = 0;
  while (ok[std::size_t(start)]) ++start;
  int best_len = 0, best_begin = 0, run = 0, run_begin = 0;
  for (int s = 1; s <= grid; ++s) {
    int k = (start + s) % grid;
    if (ok[std::size_t(k)]) {
      if (run == 0) run_begin = start + s;
      ++run;
      if (run > best_len) {
        best_len = run;
        best_begin = run_begin;
      }
    } else {
      run = 0;
    }
  }
  const int centre = (best_begin + (best_len - 1) / 2) % grid;
  return 2.0 * kPi * double(centre) / double(grid);
}

}  // namespace rigidfold
