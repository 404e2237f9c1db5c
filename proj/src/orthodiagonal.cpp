#include "rigidfold/orthodiagonal.hpp"

#include "rigidfold/errors.hpp"
#include "rigidfold/tolerances.hpp"

#include <algorithm>
#include <cmath>

namespace rigidfold {

namespace {

void require_nondegenerate(double a, int index) {
  if (!(a > tol::degenerate_angle && a < kPi - tol::degenerate_angle) ||
      std::abs(a - 0.5 * kPi) <= tol::degenerate_angle)
    throw Error(ErrorKind::DegenerateAngle, "sector angle at 0, pi/2 or pi", index);
}

}  // namespace

double alpha_left(double beta, Turn turn) { return turn == Turn::Left ? 0.5 * (kPi + beta) : 0.5 * (kPi - beta); }

bool validate_alpha11(double alpha11, double alpha10) {
  const double a = alpha11 - 0.5 * kPi, b = alpha10 - 0.5 * kPi;
  return a * b > 0 && std::abs(a) > 0 && std::abs(a) < std::abs(b);
}

double default_alpha11(double alpha10) { return 0.25 * kPi + 0.5 * alpha10; }

double OrthoAngleGrid::separability_residual() const {
  double worst = 0.0;
  for (int i = 0; i + 1 < rows(); ++i)
    for (int j = 0; j + 1 < cols(); ++j) {
      const double l = std::tan(alpha[std::size_t(i)][std::size_t(j)]) / std::tan(alpha[std::size_t(i)][std::size_t(j + 1)]);
      const double r =
          std::tan(alpha[std::size_t(i + 1)][std::size_t(j)]) / std::tan(alpha[std::size_t(i + 1)][std::size_t(j + 1)]);
      worst = std::max(worst, std::abs(l - r) / std::max(std::abs(l), std::abs(r)));
    }
  return worst;
}

OrthoAngleGrid propagate_grid(const std::vector<double>& col0, double alpha11, int columns) {
  if (col0.empty()) throw Error(ErrorKind::InvalidArgument, "empty first column");
  if (columns < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least two columns");
  for (std::size_t i = 0; i < col0.size(); ++i) require_nondegenerate(col0[i], int(i));
  require_nondegenerate(alpha11, 0);
  const double ratio = std::tan(alpha11) / std::tan(col0[0]);
  OrthoAngleGrid g;
  for (std::size_t i = 0; i < col0.size(); ++i) {
    double a1 = std::atan(std::tan(col0[i]) * ratio);
    if (a1 < 0) a1 += kPi;
    if (i == 0) a1 = alpha11;
    require_nondegenerate(a1, int(i));
    std::vector<double> row(std::size_t(columns), a1);
    row[0] = col0[i];
    g.alpha.push_back(std::move(row));
  }
  return g;
}

double ortho_xi(double alpha_i1, double beta_i) {
  if (!(beta_i > 0 && beta_i < kPi)) throw Error(ErrorKind::OutOfRange, "turn angle outside (0, pi)");
  const double c = std::cos(alpha_i1);
  return safe_acos(4.0 * c * c / (1.0 - std::cos(beta_i)) - 1.0, "ortho_xi");
}

OrthoRowCurves ortho_row_curves(const PolyCurve& f1, double theta, const OrthoAngleGrid& grid,
                                const Partition& datum) {
  if (grid.rows() != datum.n()) throw Error(ErrorKind::InvalidArgument, "grid and datum sizes differ");
  OrthoRowCurves out;
  const double a11 = grid.alpha[0][1];
  const double xi1 = ortho_xi(a11, datum.turn_angles[0]);
  const Mat2 A1 = AffineParams(theta, xi1).matrix();
  for (int i = 0; i < grid.rows(); ++i) {
    const double ai1 = grid.alpha[std::size_t(i)][1];
    const double xi = ortho_xi(ai1, datum.turn_angles[std::size_t(i)]);
    const double s = std::sin(a11) / std::sin(ai1);
    const Mat2 M = s * AffineParams(theta, xi).inverse() * A1;
    out.xi.push_back(xi);
    out.scale.push_back(s);
    out.maps.push_back(M);
    PolyCurve fi = f1;
    for (auto& p : fi.samples) {
      Vec2 q = M * p.head<2>();
      p = Vec3(q.x(), q.y(), 0.0);
    }
    out.f.push_back(std::move(fi));
  }
  return out;
}

CreasePattern layout_ortho(const std::vector<double>& column_lengths, const std::vector<double>& a0,
                           const std::vector<double>& a1, const std::vector<double>& widths) {
  const int n = int(a0.size());
  const int K = int(widths.size()) - 1;
  if (n < 1 || K < 1) throw Error(ErrorKind::InvalidArgument, "layout needs at least one inner row and column");
  if (int(a1.size()) != n || int(column_lengths.size()) != n + 1)
    throw Error(ErrorKind::InvalidArgument, "inconsistent layout sizes");
  for (double w : widths)
    if (!(w > 0)) throw Error(ErrorKind::InvalidArgument, "widths must be positive");
  for (double l : column_lengths)
    if (!(l > 0)) throw Error(ErrorKind::InvalidArgument, "datum segment lengths must be positive");

  CreasePattern p;
  p.family = "orthodiagonal";
  p.rows = n + 2;
  p.cols = K + 2;
  p.coords.assign(static_cast<std::size_t>(p.rows * p.cols), Vec2::Zero());
  std::vector<double> Y{column_lengths[0], 0.0};
  for (int i = 1; i <= n; ++i) Y.push_back(Y.back() - column_lengths[std::size_t(i)]);
  for (int i = 0; i < p.rows; ++i) {
    const int ii = std::clamp(i, 1, n) - 1;  // boundary rows copy the nearest datum row
    // Even rows are drawn in the mirrored frame (angles a -> pi - a).
    const double flip = (ii % 2 == 0) ? 1.0 : -1.0;
    const double cot0 = flip / std::tan(a0[std::size_t(ii)]);
    const double cot1 = flip / std::tan(a1[std::size_t(ii)]);
    auto P = [&](int c) -> Vec2& { return p.coords[std::size_t(p.vid(i, c))]; };
    P(1) = Vec2(0.0, Y[std::size_t(i)]);
    P(0) = P(1) + Vec2(-widths[0], widths[0] * cot0);
    double s = 1.0;
    for (int j = 2; j <= K + 1; ++j) {
      const double w = widths[std::size_t(j - 1)];
      P(j) = P(j - 1) + Vec2(w, s * w * cot1);
      s = -s;
    }
  }
  p.halting_column = 1;
  p.build_edges();
  return p;
}

OrthoDesign build_ortho_pattern(const OrthoDesignSpec& spec) {
  if (spec.datum.dim != 2 || spec.target.dim != 2)
    throw Error(ErrorKind::InvalidArgument, "orthodiagonal curves must be planar (2D)");
  if (spec.target.closed) throw Error(ErrorKind::ClosedCurve, "a closed target curve cannot be realised by a row");
  if (spec.eps < 0) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  if (spec.n < 1 || spec.m < 1) throw Error(ErrorKind::InvalidArgument, "n and m must be at least 1");
  spec.datum.validate();
  spec.target.validate();

  OrthoDesign out;
  DesignReport& rep = out.report;
  rep.family = "orthodiagonal";
  rep.eps = spec.eps;

  const double tube = spec.tube >= 0 ? spec.tube : (spec.eps > 0 ? 0.25 * spec.eps : 0.05);
  out.datum_partition = tube > 0 ? partition_tube(spec.datum, spec.n, tube) : partition_uniform(spec.datum, spec.n);
  rep.eps1 = hausdorff(out.datum_partition.points, spec.datum.samples);

  std::vector<double> a0;
  for (int i = 0; i < spec.n; ++i)
    a0.push_back(alpha_left(out.datum_partition.turn_angles[std::size_t(i)],
                            out.datum_partition.turn_sides[std::size_t(i)] > 0 ? Turn::Left : Turn::Right));
  out.alpha11 = spec.alpha11 ? *spec.alpha11 : default_alpha11(a0[0]);
  if (!validate_alpha11(out.alpha11, a0[0]))
    throw Error(ErrorKind::InvalidArgument,
                "alpha11 must lie strictly between pi/2 and alpha10 so the motion halts at the datum column");
  out.grid = propagate_grid(a0, out.alpha11, spec.m + 2);
  out.xi1 = ortho_xi(out.alpha11, out.datum_partition.turn_angles[0]);

  if (spec.theta) {
    out.theta = *spec.theta;
    if (!is_admissible(spec.target, AffineParams(out.theta, out.xi1)).admissible)
      throw Error(ErrorKind::NotAdmissible, "target curve is not monotone decreasing after the affine map at theta");
  } else {
    auto t = pick_theta(spec.target, out.xi1);
    if (!t) throw Error(ErrorKind::NotAdmissible, "no admissible rotation for the target curve at this row angle");
    out.theta = *t;
  }
  const AffineParams aff(out.theta, out.xi1);
  out.staircase = staircase(spec.target, aff, spec.m);
  rep.eps2 = hausdorff(out.staircase.points, spec.target.samples);
  out.rows = ortho_row_curves(spec.target, out.theta, out.grid, out.datum_partition);

  // Row 1 segments have length W / sin(alpha11); the left boundary span
  // repeats the first one.
  std::vector<double> widths{out.staircase.lengths[0] * std::sin(out.alpha11)};
  for (double s : out.staircase.lengths) widths.push_back(s * std::sin(out.alpha11));
  std::vector<double> a1;
  for (const auto& r : out.grid.alpha) a1.push_back(r[1]);
  out.pattern = layout_ortho(out.datum_partition.lengths, a0, a1, widths);
  require_embeddable(out.pattern);

  if (spec.simulate) {
    LineReference datum{GridAxis::Column, 1, out.datum_partition.points, &spec.datum, 0};
    LineReference target{GridAxis::Row, 1, out.staircase.points, &spec.target, 1};
    out.trajectory = fold_and_measure(out.pattern, rep, &datum, &target);
  }
  return out;
}

}  // namespace rigidfold
