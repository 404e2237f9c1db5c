#include "rigidfold/parallel_repeating.hpp"

#include "rigidfold/errors.hpp"
#include "rigidfold/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

namespace rigidfold {

namespace {

Vec2 dir2(double t) { return Vec2(std::cos(t), std::sin(t)); }

Vec2 intersect_lines(const Vec2& p, const Vec2& u, const Vec2& q, const Vec2& w) {
  Mat2 M;
  M.col(0) = u;
  M.col(1) = -w;
  const double det = M.determinant();
  if (std::abs(det) < 1e-14)
    throw Error(ErrorKind::CreaseIntersection, "parallel creases cannot be intersected to place a vertex");
  Vec2 s = M.inverse() * (q - p);
  return p + s.x() * u;
}

std::string branch_text(const Branch& b) {
  std::string s = "(";
  for (int i = 0; i < 4; ++i) {
    s += b[std::size_t(i)] > 0 ? '+' : '-';
    if (i < 3) s += ',';
  }
  return s + ")";
}

// Solve for UL, DL of the next flat-foldable vertex such that its column
// creases, obtained by rotating the previous ones about the shared row crease,
// meet the next row crease at the supplementary sector angles.
bool solve_next_geometric(const Vec3& e, const Vec3& rR, const Vec3& wU, const Vec3& wD, double& UL, double& DL) {
  auto F = [&](double ul, double dl, Eigen::Vector2d& f, Eigen::Matrix2d& J) {
    const Vec3 cu = std::cos(ul) * (-e) + std::sin(ul) * wU;
    const Vec3 cd = std::cos(dl) * (-e) + std::sin(dl) * wD;
    f << cu.dot(rR) + std::cos(dl), cd.dot(rR) + std::cos(ul);
    const Vec3 dcu = std::sin(ul) * e + std::cos(ul) * wU;
    const Vec3 dcd = std::sin(dl) * e + std::cos(dl) * wD;
    J << dcu.dot(rR), -std::sin(dl), -std::sin(ul), dcd.dot(rR);
  };
  const int g = tol::newton_seed_grid;
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b) {
      double x = kPi * (a + 0.5) / g, y = kPi * (b + 0.5) / g;
      Eigen::Vector2d f;
      Eigen::Matrix2d J;
      bool ok = false;
      for (int it = 0; it < tol::newton_max_iter; ++it) {
        F(x, y, f, J);
        if (f.cwiseAbs().maxCoeff() < tol::newton_tol) {
          ok = true;
          break;
        }
        if (std::abs(J.determinant()) < 1e-14) break;
        Eigen::Vector2d dx = J.inverse() * f;
        x -= dx.x();
        y -= dx.y();
        if (!std::isfinite(x) || !std::isfinite(y)) break;
      }
      if (!ok) {
        F(x, y, f, J);
        ok = f.cwiseAbs().maxCoeff() < tol::newton_tol;
      }
      // Polish: a few more Newton steps to round-off level, kept while they
      // reduce the residual (the folding simulation near the flat state
      // magnifies any leftover inconsistency).
      for (int it = 0; ok && it < 3; ++it) {
        F(x, y, f, J);
        const double r0 = f.cwiseAbs().maxCoeff();
        if (r0 == 0.0 || std::abs(J.determinant()) < 1e-14) break;
        const Eigen::Vector2d dx = J.inverse() * f;
        Eigen::Vector2d f1;
        Eigen::Matrix2d J1;
        F(x - dx.x(), y - dx.y(), f1, J1);
        if (!(f1.cwiseAbs().maxCoeff() < r0)) break;
        x -= dx.x();
        y -= dx.y();
      }
      if (ok && x > tol::degenerate_angle && x < kPi - tol::degenerate_angle && y > tol::degenerate_angle &&
          y < kPi - tol::degenerate_angle) {
        UL = x;
        DL = y;
        return true;
      }
    }
  return false;
}

}  // namespace

RowDesign design_row(const Partition& datum, double rho4) {
  if (!(rho4 > 0.0 && rho4 < kPi)) throw Error(ErrorKind::InvalidArgument, "rho4 must lie in (0, pi)");
  const int n = datum.n();
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "datum partition needs at least one inner point");
  const auto& A = datum.points;
  RowDesign out;

  const Vec3 rL = (A[0] - A[1]).normalized();
  const Vec3 rR = (A[2] - A[1]).normalized();
  const double beta1 = angle_between(rL, rR);
  double a1 = 0, a2 = 0;
  try {
    std::tie(a1, a2) = solve_first_vertex(beta1, rho4);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoSolution) throw;
    throw Error(ErrorKind::NoSolution, "no halting-vertex sector angles for the first turn of the datum", 1);
  }
  out.vertices.emplace_back(a1, a2, kPi - a2, kPi - a1);

  // Folded column creases at the first vertex: c_U makes a1 with r_R and a2
  // with r_L; c_D is the mirror of -c_U in the row plane (left crease at pi).
  const Vec3 nrm = rR.cross(rL).normalized();
  const Vec3 b2 = (rL - rL.dot(rR) * rR).normalized();
  const double x = std::cos(a1);
  const double y = (std::cos(a2) - x * rL.dot(rR)) / rL.dot(b2);
  const double z = std::sqrt(std::max(0.0, 1.0 - x * x - y * y));
  Vec3 cU = x * rR + y * b2 + z * nrm;
  Vec3 cD = -cU;
  cD -= 2.0 * cD.dot(nrm) * nrm;
  out.c_up.push_back(cU);
  out.c_down.push_back(cD);
  out.branch_log.push_back("vertex 1: closed form (halting column)");

  for (int i = 1; i < n; ++i) {
    const Vec3 e = (A[std::size_t(i + 1)] - A[std::size_t(i)]).normalized();
    const Vec3 rRn = (A[std::size_t(i + 2)] - A[std::size_t(i + 1)]).normalized();
    const Vec3& pu = out.c_up.back();
    const Vec3& pd = out.c_down.back();
    const Vec3 wU = (pu - pu.dot(e) * e).normalized();
    const Vec3 wD = (pd - pd.dot(e) * e).normalized();
    double UL = 0, DL = 0;
    if (!solve_next_geometric(e, rRn, wU, wD, UL, DL))
      throw Error(ErrorKind::NoSolution, "no sector angles realise the datum at vertex " + std::to_string(i + 1),
                  i + 1);
    VertexAngles next(kPi - DL, UL, DL, kPi - UL);
    // Identify which sign pattern of the transfer equations this root satisfies.
    const VertexAngles& prev = out.vertices.back();
    const double bi = datum.turn_angles[std::size_t(i - 1)], bn = datum.turn_angles[std::size_t(i)];
    const double th = datum.dihedrals[std::size_t(i - 1)];
    Branch best{};
    double best_res = 1e300;
    for (const auto& br : branch_order()) {
      double r = 1e300;
      try {
        auto [r1, r2] = row_transfer_residual(prev, next, bi, bn, th, br);
        r = std::max(std::abs(r1), std::abs(r2));
      } catch (const Error&) {
      }
      if (r < best_res) {
        best_res = r;
        best = br;
      }
    }
    out.branches.push_back(best);
    char buf[160];
    std::snprintf(buf, sizeof buf, "vertex %d: branch %s residual %.3e", i + 1, branch_text(best).c_str(),
                  best_res);
    out.branch_log.emplace_back(buf);
    out.vertices.push_back(next);
    out.c_up.push_back(std::cos(UL) * (-e) + std::sin(UL) * wU);
    out.c_down.push_back(std::cos(DL) * (-e) + std::sin(DL) * wD);
  }
  return out;
}

double xi_recurrence(double xi_i, double ur_i, double dr_i, double ul_next, double dl_next) {
  for (double a : {xi_i, ur_i, dr_i, ul_next, dl_next})
    if (!(a > 0.0 && a < kPi)) throw Error(ErrorKind::OutOfRange, "angle outside (0, pi) in column recurrence");
  const double c = std::cos(ul_next) * std::cos(dl_next) + std::sin(ul_next) * std::sin(dl_next) /
                                                                 (std::sin(ur_i) * std::sin(dr_i)) *
                                                                 (std::cos(xi_i) - std::cos(ur_i) * std::cos(dr_i));
  return safe_acos(c, "column angle recurrence");
}

ColumnAngles column_angles(const std::vector<VertexAngles>& row) {
  if (row.empty()) throw Error(ErrorKind::InvalidArgument, "empty row");
  ColumnAngles out;
  out.xi.push_back(std::abs(2.0 * row[0][1] - kPi));
  for (std::size_t i = 0; i + 1 < row.size(); ++i) {
    const VertexAngles& v = row[i];
    const VertexAngles& w = row[i + 1];
    const double ur = v[0], dr = v[3], ul = w[1], dl = w[2];
    const double xc = out.xi.back();
    const double xn = xi_recurrence(xc, ur, dr, ul, dl);
    out.k1.push_back(std::sin(ur) / std::sin(ul));
    out.k2.push_back(std::sin(dr) / std::sin(dl));
    const double eta1 =
        safe_acos((std::cos(dr) - std::cos(ur) * std::cos(xc)) / (std::sin(ur) * std::sin(xc)), "column plane angle");
    const double eta2 =
        safe_acos((std::cos(dl) - std::cos(ul) * std::cos(xn)) / (std::sin(ul) * std::sin(xn)), "column plane angle");
    const double cphi = -std::cos(eta1) * std::cos(eta2) - std::sin(eta1) * std::sin(eta2) * std::cos(ur + ul);
    out.eta1.push_back(eta1);
    out.eta2.push_back(eta2);
    out.phi.push_back(safe_acos(cphi, "column plane angle"));
    out.xi.push_back(xn);
  }
  return out;
}

ColumnProfile column_curves(const PolyCurve& f1, double theta, const std::vector<VertexAngles>& row, bool start_x) {
  const ColumnAngles ang = column_angles(row);
  ColumnProfile out;
  out.xi = ang.xi;
  out.k1 = ang.k1;
  out.k2 = ang.k2;
  out.eta1 = ang.eta1;
  out.eta2 = ang.eta2;
  out.phi = ang.phi;
  out.f.push_back(f1);
  out.maps.push_back(Mat2::Identity());
  const Mat2 A1 = AffineParams(theta, ang.xi[0]).matrix();
  Mat2 D = Mat2::Identity();
  for (std::size_t i = 0; i < ang.k1.size(); ++i) {
    Mat2 step = Mat2::Zero();
    step(0, 0) = start_x ? ang.k1[i] : ang.k2[i];
    step(1, 1) = start_x ? ang.k2[i] : ang.k1[i];
    D = step * D;
    const Mat2 M = AffineParams(theta, ang.xi[i + 1]).inverse() * D * A1;
    out.maps.push_back(M);
    PolyCurve fi = f1;
    for (auto& s : fi.samples) {
      Vec2 q = M * s.head<2>();
      s = Vec3(q.x(), q.y(), 0.0);
    }
    out.f.push_back(std::move(fi));
  }
  return out;
}

CreasePattern layout_parallel(const std::vector<VertexAngles>& row, const std::vector<double>& row_lengths,
                              const std::vector<double>& column_lengths) {
  const int n = int(row.size());
  const int m = int(column_lengths.size()) - 1;
  if (n < 1 || m < 1) throw Error(ErrorKind::InvalidArgument, "layout needs at least one inner row and column");
  if (int(row_lengths.size()) != n + 1) throw Error(ErrorKind::InvalidArgument, "row lengths must number n+1");
  for (double l : row_lengths)
    if (!(l > 0)) throw Error(ErrorKind::InvalidArgument, "row segment lengths must be positive");
  for (double l : column_lengths)
    if (!(l > 0)) throw Error(ErrorKind::InvalidArgument, "column segment lengths must be positive");

  std::vector<double> d(std::size_t(n + 1), 0.0);
  for (int i = 1; i <= n; ++i) d[std::size_t(i)] = d[std::size_t(i - 1)] + kPi - row[std::size_t(i - 1)][0] - row[std::size_t(i - 1)][1];

  CreasePattern p;
  p.family = "parallel-repeating";
  p.rows = m + 2;
  p.cols = n + 2;
  p.coords.assign(std::size_t(p.rows * p.cols), Vec2::Zero());
  auto P = [&](int r, int c) -> Vec2& { return p.coords[std::size_t(p.vid(r, c))]; };
  auto L = [&](int i) { return row_lengths[std::size_t(i)]; };
  auto D = [&](int i) { return dir2(d[std::size_t(i)]); };

  P(1, 0) = Vec2::Zero();
  for (int i = 0; i <= n; ++i) P(1, i + 1) = P(1, i) + L(i) * D(i);

  P(0, 1) = P(1, 1) + column_lengths[0] * dir2(d[1] + row[0][0]);
  for (int i = 2; i <= n; ++i)
    P(0, i) = intersect_lines(P(0, i - 1), D(i - 1), P(1, i), dir2(d[std::size_t(i)] + row[std::size_t(i - 1)][0]));
  P(0, 0) = P(0, 1) - L(0) * D(0);
  P(0, n + 1) = P(0, n) + L(n) * D(n);

  std::vector<VertexAngles> Vk = row;
  for (int k = 1; k <= m; ++k) {
    P(k + 1, 1) = P(k, 1) + column_lengths[std::size_t(k)] * dir2(d[1] - Vk[0][3]);
    for (int i = 2; i <= n; ++i)
      P(k + 1, i) = intersect_lines(P(k + 1, i - 1), D(i - 1), P(k, i), dir2(d[std::size_t(i)] - Vk[std::size_t(i - 1)][3]));
    P(k + 1, 0) = P(k + 1, 1) - L(0) * D(0);
    P(k + 1, n + 1) = P(k + 1, n) + L(n) * D(n);
    for (auto& v : Vk) v = VertexAngles(kPi - v[3], kPi - v[2], kPi - v[1], kPi - v[0]);
  }
  p.halting_column = 1;
  p.build_edges();
  return p;
}

namespace {

// Smallest n in [1, cap] whose Hausdorff error meets the budget.
template <class Make>
int auto_count(Make make, double budget, int cap = 200) {
  for (int n = 1; n <= cap; n = n < 8 ? n + 1 : n + std::max(1, n / 8)) {
    try {
      if (make(n) <= budget) return n;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorKind::NoSolution, "no partition count up to " + std::to_string(cap) + " meets the budget");
}

}  // namespace

ParallelDesign build_pattern(const ParallelDesignSpec& spec) {
  if (!(spec.rho4 > 0 && spec.rho4 < kPi)) throw Error(ErrorKind::InvalidArgument, "rho4 must lie in (0, pi)");
  if (spec.eps < 0) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  if (spec.target.closed)
    throw Error(ErrorKind::ClosedCurve, "a closed target curve cannot be realised by a column");
  if (spec.target.dim != 2) throw Error(ErrorKind::InvalidArgument, "target curve must be planar (2D)");
  spec.datum.validate();
  spec.target.validate();

  ParallelDesign out;
  DesignReport& rep = out.report;
  rep.family = "parallel-repeating";
  rep.eps = spec.eps;
  const double budget = spec.eps > 0 ? 0.5 * spec.eps : 0.0;

  int n_row = spec.n_row;
  if (n_row <= 0) {
    if (budget <= 0) throw Error(ErrorKind::InvalidArgument, "automatic partition counts need eps > 0");
    n_row = auto_count([&](int n) { return hausdorff(partition_uniform(spec.datum, n).points, spec.datum.samples); },
                       budget);
  }
  out.datum_partition = partition_uniform(spec.datum, n_row);
  rep.eps1 = hausdorff(out.datum_partition.points, spec.datum.samples);

  out.row = design_row(out.datum_partition, spec.rho4);
  rep.branch_log = out.row.branch_log;
  out.xi1 = std::abs(2.0 * out.row.vertices[0][1] - kPi);

  if (spec.theta) {
    out.theta = *spec.theta;
    if (!is_admissible(spec.target, AffineParams(out.theta, out.xi1)).admissible)
      throw Error(ErrorKind::NotAdmissible, "target curve is not monotone decreasing after the affine map at theta");
  } else {
    auto t = pick_theta(spec.target, out.xi1);
    if (!t) throw Error(ErrorKind::NotAdmissible, "no admissible rotation for the target curve at this column angle");
    out.theta = *t;
  }
  const AffineParams aff(out.theta, out.xi1);

  int n_col = spec.n_col;
  if (n_col <= 0) {
    if (budget <= 0) throw Error(ErrorKind::InvalidArgument, "automatic partition counts need eps > 0");
    n_col = auto_count([&](int n) { return hausdorff(staircase(spec.target, aff, n).points, spec.target.samples); },
                       budget);
  }
  out.staircase = staircase(spec.target, aff, n_col);
  rep.eps2 = hausdorff(out.staircase.points, spec.target.samples);

  out.profile = column_curves(spec.target, out.theta, out.row.vertices, true);
  out.pattern = layout_parallel(out.row.vertices, out.datum_partition.lengths, out.staircase.lengths);
  require_embeddable(out.pattern);

  if (spec.simulate) {
    LineReference datum{GridAxis::Row, 1, out.datum_partition.points, &spec.datum};
    LineReference target{GridAxis::Column, 1, out.staircase.points, &spec.target};
    out.trajectory = fold_and_measure(out.pattern, rep, &datum, &target);
  }
  return out;
}

}  // namespace rigidfold
