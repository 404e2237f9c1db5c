#include "rigidfold/verify.hpp"

#include "rigidfold/errors.hpp"
#include "rigidfold/tolerances.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rigidfold {

namespace {

std::string where(const std::string& what, int a, int b = -1) {
  std::ostringstream os;
  os << what << " " << a;
  if (b >= 0) os << "," << b;
  return os.str();
}

// Keep the worse of two results of the same check (larger residual, NaN first).
void keep_worst(CheckResult& acc, const CheckResult& c) {
  if (std::isnan(acc.residual)) return;
  if (std::isnan(c.residual) || c.residual > acc.residual) {
    acc.residual = c.residual;
    acc.pass = c.pass;
    acc.detail = c.detail;
  }
}

CheckResult worst_of(const std::string& id, double tolerance, const std::string& tag,
                     const std::vector<CheckResult>& parts) {
  CheckResult out = make_check(id, 0.0, tolerance, tag);
  for (const auto& c : parts) keep_worst(out, c);
  return out;
}

std::vector<Vec3> line_points(const CreasePattern& p, const FoldedState& s, GridAxis axis, int index, int from,
                              int to) {
  std::vector<Vec3> out;
  for (int k = from; k <= to; ++k) {
    int v = axis == GridAxis::Row ? p.vid(index, k) : p.vid(k, index);
    out.push_back(s.coords[std::size_t(v)]);
  }
  return out;
}

int line_length(const CreasePattern& p, GridAxis axis) { return axis == GridAxis::Row ? p.cols : p.rows; }

}  // namespace

Plane fit_plane(const std::vector<Vec3>& pts) {
  Plane pl;
  if (pts.empty()) return pl;
  for (const auto& x : pts) pl.centroid += x;
  pl.centroid /= double(pts.size());
  if (pts.size() < 3) return pl;
  Eigen::MatrixXd A(Eigen::Index(pts.size()), 3);
  for (std::size_t i = 0; i < pts.size(); ++i) A.row(Eigen::Index(i)) = (pts[i] - pl.centroid).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinV);
  pl.normal = svd.matrixV().col(2);
  return pl;
}

double plane_fit_residual(const std::vector<Vec3>& pts) {
  if (pts.size() < 4) return 0.0;
  const Plane pl = fit_plane(pts);
  double worst = 0.0;
  for (const auto& x : pts) worst = std::max(worst, std::abs(pl.normal.dot(x - pl.centroid)));
  return worst;
}

// ------------------------------------------------------------ planar pattern

CheckResult check_developability(const CreasePattern& p) {
  CheckResult out = make_check("developability", 0.0, tol::developability, "sector angles sum to 2pi");
  for (int r = 1; r + 1 < p.rows; ++r)
    for (int c = 1; c + 1 < p.cols; ++c)
      keep_worst(out, make_check("", p.sectors(r, c).developability_residual(), tol::developability, "",
                                 where("vertex", r, c)));
  return out;
}

CheckResult check_flat_foldability(const CreasePattern& p, int first_column) {
  CheckResult out =
      make_check("flat-foldability", 0.0, tol::flat_foldability, "opposite sector angles sum to pi");
  for (int r = 1; r + 1 < p.rows; ++r)
    for (int c = std::max(1, first_column); c + 1 < p.cols; ++c)
      keep_worst(out, make_check("", p.sectors(r, c).flat_foldability_residual(), tol::flat_foldability, "",
                                 where("vertex", r, c)));
  return out;
}

CheckResult check_separability(const CreasePattern& p) {
  // t[r][j]: |tan| of the angle between the row crease entering column j+1
  // from the left and the column line there.
  const int R = p.rows, C = p.cols;
  std::vector<std::vector<double>> t(std::size_t(R), std::vector<double>(std::size_t(C - 1), 0.0));
  double straight = 0.0;
  for (int r = 1; r + 1 < R; ++r)
    for (int c = 1; c < C; ++c) {
      const Vec2 o = p.at(r, c);
      const Vec2 row = p.at(r, c - 1) - o;
      const Vec2 col = (c + 1 < C ? p.at(r - 1, c) - p.at(r + 1, c) : p.at(r - 1, c) - o);
      if (c + 1 < C) {
        // Columns of the orthodiagonal type are straight lines.
        const Vec2 up = p.at(r - 1, c) - o, dn = p.at(r + 1, c) - o;
        straight = std::max(straight, std::abs(up.x() * dn.y() - up.y() * dn.x()) / (up.norm() * dn.norm()));
      }
      const double sn = std::abs(row.x() * col.y() - row.y() * col.x());
      const double cs = std::abs(row.dot(col));
      t[std::size_t(r)][std::size_t(c - 1)] = sn / cs;
    }
  CheckResult out = make_check("separability", straight, tol::separability,
                               "tan-ratio identity on every 2x2 block; straight columns",
                               straight > 0 ? "column bend" : "");
  for (int r = 1; r + 2 < R; ++r)
    for (int j = 0; j + 1 < C - 1; ++j) {
      const double l = t[std::size_t(r)][std::size_t(j)] / t[std::size_t(r)][std::size_t(j + 1)];
      const double q = t[std::size_t(r + 1)][std::size_t(j)] / t[std::size_t(r + 1)][std::size_t(j + 1)];
      keep_worst(out, make_check("", std::abs(l - q) / std::max(std::abs(l), std::abs(q)), tol::separability, "",
                                 where("block", r, j)));
    }
  return out;
}

// ------------------------------------------------------------ folded states

CheckResult check_closure(const CreasePattern& p, const FoldedState& s) {
  const double rel = s.placement_error / std::max(1.0, p.diameter());
  const double res = std::max(s.closure_residual, rel);
  std::ostringstream os;
  os << "rotation " << s.closure_residual << " rad, placement " << rel << " x diameter";
  return make_check("closure", res, tol::closure, "vertex loops and panel placement close", os.str());
}

CheckResult check_isometry(const CreasePattern& p, const FoldedState& s) {
  CheckResult out = make_check("isometry", 0.0, tol::isometry, "folded panels congruent to planar panels");
  const auto faces = p.faces();
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& q = faces[f];
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        const int va = q[std::size_t(a)], vb = q[std::size_t(b)];
        const double l0 = (p.coords[std::size_t(va)] - p.coords[std::size_t(vb)]).norm();
        const double l1 = (s.coords[std::size_t(va)] - s.coords[std::size_t(vb)]).norm();
        keep_worst(out, make_check("", std::abs(l1 - l0) / l0, tol::isometry, "", where("face", int(f))));
      }
  }
  return out;
}

CheckResult check_coplanarity(const CreasePattern& p, const FoldedState& s, GridAxis axis, int index) {
  const auto pts = line_points(p, s, axis, index, 1, line_length(p, axis) - 2);
  const double res = plane_fit_residual(pts) / std::max(1.0, p.diameter());
  return make_check("coplanarity", res, tol::coplanarity, "inner vertices of a grid line are coplanar",
                    where(axis == GridAxis::Row ? "row" : "column", index));
}

CheckResult check_xi(const CreasePattern& p, const FoldedState& s, GridAxis axis, int index, double expected_xi,
                     int from) {
  const int len = line_length(p, axis);
  const auto pts = line_points(p, s, axis, index, 0, len - 1);
  CheckResult out = make_check("xi", 0.0, tol::xi_measure, "angle between adjacent creases of a grid line",
                               where(axis == GridAxis::Row ? "row" : "column", index));
  for (int k = std::max(1, from); k + 1 < len; ++k) {
    const double a = corner_angle(pts[std::size_t(k - 1)], pts[std::size_t(k)], pts[std::size_t(k + 1)]);
    keep_worst(out, make_check("", std::abs(a - expected_xi), tol::xi_measure, "",
                               where(axis == GridAxis::Row ? "row,vertex" : "column,vertex", index, k)));
  }
  return out;
}

CheckResult check_phi(const CreasePattern& p, const FoldedState& s, int column, double expected_phi) {
  auto a = line_points(p, s, GridAxis::Column, column, 0, p.rows - 1);
  auto b = line_points(p, s, GridAxis::Column, column + 1, 0, p.rows - 1);
  Plane pa = fit_plane(a), pb = fit_plane(b);
  // A line is degenerate (flat state) when its points are collinear.
  auto spread = [](const std::vector<Vec3>& pts, const Plane& pl) {
    const Vec3 d = (pts.back() - pts.front()).normalized();
    double w = 0.0;
    for (const auto& x : pts) w = std::max(w, (x - pl.centroid - d * d.dot(x - pl.centroid)).norm());
    return w;
  };
  const double scale = std::max(1e-300, p.diameter());
  if (spread(a, pa) < 1e-9 * scale || spread(b, pb) < 1e-9 * scale)
    return make_check("phi", 0.0, tol::phi_measure, "angle between adjacent column planes",
                      "skipped: column " + std::to_string(column) + " is straight, its plane is undefined");
  const Vec3 ra = s.coords[std::size_t(p.vid(1, column + 1))] - s.coords[std::size_t(p.vid(1, column))];
  const Vec3 rb = s.coords[std::size_t(p.vid(1, column + 2))] - s.coords[std::size_t(p.vid(1, column + 1))];
  if (pa.normal.dot(ra) < 0) pa.normal = -pa.normal;
  if (pb.normal.dot(rb) < 0) pb.normal = -pb.normal;
  const double measured = angle_between(pa.normal, pb.normal);
  return make_check("phi", std::abs(measured - expected_phi), tol::phi_measure,
                    "angle between adjacent column planes", where("columns", column, column + 1));
}

CheckResult check_row_magnitudes(const CreasePattern& p, const FoldedState& s) {
  CheckResult out = make_check("row-fold-magnitude", 0.0, tol::row_magnitude,
                               "row creases between two columns fold opposite and equal");
  for (int c = 0; c + 1 < p.cols; ++c)
    for (int r = 1; r + 2 < p.rows; ++r) {
      const double a = s.rho[std::size_t(p.crease_between(r, c, r, c + 1))];
      const double b = s.rho[std::size_t(p.crease_between(r + 1, c, r + 1, c + 1))];
      keep_worst(out, make_check("", std::abs(a + b), tol::row_magnitude, "", where("rows,column", r, c)));
    }
  return out;
}

CheckResult check_surface_assembly(const CreasePattern& p, const FoldedState& s, GridAxis axis, int index,
                                   const std::vector<Vec3>& expected, int first) {
  const auto pts = line_points(p, s, axis, index, first, line_length(p, axis) - 1);
  const std::string w = where(axis == GridAxis::Row ? "row" : "column", index);
  if (pts.size() != expected.size())
    return make_check("surface-assembly", std::numeric_limits<double>::infinity(), tol::surface_assembly,
                      "folded grid line equals its designed curve", w + ": size mismatch");
  const RigidTransform T = kabsch(pts, expected);
  double worst = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) worst = std::max(worst, (T.apply(pts[k]) - expected[k]).norm());
  return make_check("surface-assembly", worst / std::max(1.0, p.diameter()), tol::surface_assembly,
                    "folded grid line equals its designed curve", w);
}

CheckResult check_halting_column(const CreasePattern& p, const Trajectory& t) {
  std::ostringstream os;
  os << "crease " << t.halting_crease << " in column " << t.halting_column << " (" << t.halt_reason
     << "), designed column " << p.halting_column;
  return make_check("halting-column", t.halting_column == p.halting_column ? 0.0 : 1.0, 0.0,
                    "motion halts at the designated column", os.str());
}

CheckResult check_reproduction(const std::vector<Vec3>& folded, const Partition& reference) {
  if (folded.size() != reference.points.size())
    return make_check("reproduction", std::numeric_limits<double>::infinity(), tol::reproduction,
                      "folded polyline reproduces lengths, turn angles and dihedrals", "size mismatch");
  const Partition f = Partition::from_points_unchecked(3, folded);
  double dl = 0.0, db = 0.0, dt = 0.0;
  for (std::size_t i = 0; i < f.lengths.size(); ++i)
    dl = std::max(dl, std::abs(f.lengths[i] - reference.lengths[i]) / reference.lengths[i]);
  for (std::size_t i = 0; i < f.turn_angles.size(); ++i)
    db = std::max(db, std::abs(f.turn_angles[i] - reference.turn_angles[i]));
  for (std::size_t i = 0; i < f.dihedrals.size() && i < reference.dihedrals.size(); ++i)
    dt = std::max(dt, std::abs(wrap_pi(f.dihedrals[i] - reference.dihedrals[i])));
  std::ostringstream os;
  os << "lengths " << dl << " rel, turn angles " << db << " rad, dihedrals " << dt << " rad";
  return make_check("reproduction", std::max({dl, db, dt}), tol::reproduction,
                    "folded polyline reproduces lengths, turn angles and dihedrals", os.str());
}

void corrupt_sector(CreasePattern& p, int r, int c, int sector, double delta) {
  if (!p.is_inner(r, c)) throw Error(ErrorKind::InvalidArgument, "corrupt_sector needs an inner vertex");
  static constexpr int dr[4] = {0, -1, 0, 1};
  static constexpr int dc[4] = {1, 0, -1, 0};
  const int k = (sector + 1) % 4;
  const Vec2 o = p.at(r, c);
  Vec2& q = p.coords[std::size_t(p.vid(r + dr[k], c + dc[k]))];
  q = o + Eigen::Rotation2Dd(delta) * (q - o);
}

// ------------------------------------------------------------ suites

namespace {

void sort_by_id(std::vector<CheckResult>& v) {
  std::stable_sort(v.begin(), v.end(), [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
}

// Checks of one folded state along the motion.
std::vector<CheckResult> state_checks(const CreasePattern& p, const FoldedState& s, bool parallel) {
  std::vector<CheckResult> out{check_closure(p, s), check_isometry(p, s)};
  std::vector<CheckResult> cols, rows;
  for (int c = 1; c + 1 < p.cols; ++c) cols.push_back(check_coplanarity(p, s, GridAxis::Column, c));
  out.push_back(worst_of("coplanarity-columns", tol::coplanarity, "inner vertices of every column are coplanar", cols));
  if (parallel) {
    out.push_back(check_row_magnitudes(p, s));
  } else {
    for (int r = 1; r + 1 < p.rows; ++r) rows.push_back(check_coplanarity(p, s, GridAxis::Row, r));
    out.push_back(worst_of("coplanarity-rows", tol::coplanarity, "inner vertices of every row are coplanar", rows));
  }
  return out;
}

std::vector<CheckResult> halting_checks(const CreasePattern& p, const FoldedState& h, bool parallel) {
  std::vector<CheckResult> out;
  if (parallel) {
    std::vector<VertexAngles> row;
    for (int c = 1; c + 1 < p.cols; ++c) row.push_back(p.sectors(1, c));
    std::vector<CheckResult> xs, ps;
    try {
      const ColumnAngles ang = column_angles(row);
      for (int c = 1; c + 1 < p.cols; ++c)
        xs.push_back(check_xi(p, h, GridAxis::Column, c, ang.xi[std::size_t(c - 1)], 1));
      for (int c = 1; c + 2 < p.cols; ++c) ps.push_back(check_phi(p, h, c, ang.phi[std::size_t(c - 1)]));
    } catch (const Error& e) {
      xs.push_back(make_check("xi", std::numeric_limits<double>::infinity(), tol::xi_measure, "", e.what()));
    }
    out.push_back(worst_of("xi", tol::xi_measure, "column angles follow the recurrence", xs));
    out.push_back(worst_of("phi", tol::phi_measure, "angles between column planes", ps));
  } else {
    const auto datum = line_points(p, h, GridAxis::Column, 1, 0, p.rows - 1);
    std::vector<CheckResult> xs;
    for (int r = 1; r + 1 < p.rows; ++r) {
      const double beta = corner_angle(datum[std::size_t(r - 1)], datum[std::size_t(r)], datum[std::size_t(r + 1)]);
      try {
        const double xi = ortho_xi(p.sectors(r, 1)[0], beta);
        xs.push_back(check_xi(p, h, GridAxis::Row, r, xi, 2));
      } catch (const Error& e) {
        xs.push_back(make_check("xi", std::numeric_limits<double>::infinity(), tol::xi_measure, "", e.what()));
      }
    }
    out.push_back(worst_of("xi", tol::xi_measure, "row angles follow the datum turn angles", xs));
  }
  return out;
}

}  // namespace

std::vector<CheckResult> verify_pattern(const CreasePattern& p, const VerifyOptions& opt) {
  const bool parallel = p.family == "parallel-repeating";
  const bool ortho = p.family == "orthodiagonal";
  std::vector<CheckResult> out{check_developability(p)};
  if (parallel) out.push_back(check_flat_foldability(p, 2));
  if (ortho) out.push_back(check_separability(p));

  SimOptions sim;
  sim.check_closure = false;
  Trajectory tr;
  try {
    tr = sweep_to_halt(p, std::max(opt.states, opt.driving_samples + 1), sim);
  } catch (const Error& e) {
    out.push_back(make_check("motion", std::numeric_limits<double>::infinity(), 0.0,
                             "pattern folds from flat to a halting state", e.what()));
    sort_by_id(out);
    return out;
  }
  out.push_back(make_check("motion", 0.0, 0.0, "pattern folds from flat to a halting state",
                           "halting drive " + std::to_string(tr.halting_drive) + " rad"));
  out.push_back(check_halting_column(p, tr));

  // Sampled states: evenly spaced along the trajectory, ending at the halt.
  const int n = int(tr.states.size());
  const int k = std::max(1, opt.driving_samples);
  std::vector<int> idx;
  for (int i = 1; i <= k; ++i) idx.push_back(int(std::lround(double(i) * double(n - 1) / double(k))));
  std::vector<std::vector<CheckResult>> per(idx.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < int(idx.size()); ++i)
    per[std::size_t(i)] = state_checks(p, tr.states[std::size_t(idx[std::size_t(i)])], parallel);
  for (std::size_t j = 0; j < per[0].size(); ++j) {
    CheckResult acc = per[0][j];
    for (std::size_t i = 1; i < per.size(); ++i) keep_worst(acc, per[i][j]);
    out.push_back(acc);
  }
  if (parallel || ortho)
    for (auto& c : halting_checks(p, tr.states.back(), parallel)) out.push_back(std::move(c));
  sort_by_id(out);
  return out;
}

namespace {

std::vector<Vec3> mapped(const Mat2& M, const std::vector<Vec3>& pts) {
  std::vector<Vec3> out;
  for (const auto& q : pts) {
    const Vec2 m = M * q.head<2>();
    out.emplace_back(m.x(), m.y(), 0.0);
  }
  return out;
}

void add_budget(std::vector<CheckResult>& out, const DesignReport& rep) {
  if (rep.eps <= 0) return;
  out.push_back(make_check("eps-datum", rep.eps1_folded < 0 ? std::numeric_limits<double>::infinity() : rep.eps1_folded,
                           rep.eps, "folded datum line within the Hausdorff budget"));
  out.push_back(make_check("eps-target", rep.eps2_folded < 0 ? std::numeric_limits<double>::infinity() : rep.eps2_folded,
                           rep.eps, "folded target line within the Hausdorff budget"));
}

}  // namespace

std::vector<CheckResult> verify_design(ParallelDesign& d, const VerifyOptions& opt) {
  const CreasePattern& p = d.pattern;
  std::vector<CheckResult> out = verify_pattern(p, opt);
  CheckResult dev = make_check("design-developability", 0.0, tol::developability, "designed sector angles sum to 2pi");
  for (std::size_t i = 0; i < d.row.vertices.size(); ++i)
    keep_worst(dev, make_check("", d.row.vertices[i].developability_residual(), tol::developability, "",
                               where("vertex", int(i) + 1)));
  out.push_back(dev);
  if (!d.trajectory) {
    try {
      d.trajectory = sweep_to_halt(p, opt.states);
    } catch (const Error& e) {
      out.push_back(make_check("surface-assembly", std::numeric_limits<double>::infinity(), tol::surface_assembly,
                               "folded grid line equals its designed curve", e.what()));
    }
  }
  if (d.trajectory) {
    const FoldedState& h = d.trajectory->states.back();
    CheckResult dr = check_reproduction(line_points(p, h, GridAxis::Row, 1, 0, p.cols - 1), d.datum_partition);
    dr.id = "datum-reproduction";
    out.push_back(dr);
    CheckResult tr = check_reproduction(line_points(p, h, GridAxis::Column, 1, 0, p.rows - 1), d.staircase);
    tr.id = "target-reproduction";
    out.push_back(tr);
    std::vector<CheckResult> sa;
    for (int c = 1; c + 1 < p.cols; ++c)
      sa.push_back(check_surface_assembly(p, h, GridAxis::Column, c,
                                          mapped(d.profile.maps[std::size_t(c - 1)], d.staircase.points), 0));
    out.push_back(worst_of("surface-assembly", tol::surface_assembly, "every column equals its scaled target curve", sa));
  }
  add_budget(out, d.report);
  sort_by_id(out);
  d.report.checks = out;
  return out;
}

std::vector<CheckResult> verify_design(OrthoDesign& d, const VerifyOptions& opt) {
  const CreasePattern& p = d.pattern;
  std::vector<CheckResult> out = verify_pattern(p, opt);
  out.push_back(make_check("grid-separability", d.grid.separability_residual(), tol::separability,
                           "designed angle grid satisfies the tan-ratio identity"));
  if (!d.trajectory) {
    try {
      d.trajectory = sweep_to_halt(p, opt.states);
    } catch (const Error& e) {
      out.push_back(make_check("surface-assembly", std::numeric_limits<double>::infinity(), tol::surface_assembly,
                               "folded grid line equals its designed curve", e.what()));
    }
  }
  if (d.trajectory) {
    const FoldedState& h = d.trajectory->states.back();
    CheckResult dr = check_reproduction(line_points(p, h, GridAxis::Column, 1, 0, p.rows - 1), d.datum_partition);
    dr.id = "datum-reproduction";
    out.push_back(dr);
    CheckResult tr = check_reproduction(line_points(p, h, GridAxis::Row, 1, 1, p.cols - 1), d.staircase);
    tr.id = "target-reproduction";
    out.push_back(tr);
    std::vector<CheckResult> sa;
    for (int r = 1; r + 1 < p.rows; ++r)
      sa.push_back(check_surface_assembly(p, h, GridAxis::Row, r,
                                          mapped(d.rows.maps[std::size_t(r - 1)], d.staircase.points), 1));
    out.push_back(worst_of("surface-assembly", tol::surface_assembly, "every row equals its scaled target curve", sa));
  }
  add_budget(out, d.report);
  sort_by_id(out);
  d.report.checks = out;
  return out;
}

}  // namespace rigidfold
