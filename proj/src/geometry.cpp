#include "rigidfold/geometry.hpp"

#include "rigidfold/errors.hpp"

#include <algorithm>
#include <limits>

namespace rigidfold {

// ---------------------------------------------------------------- PolyCurve

PolyCurve::PolyCurve(int dim_, std::vector<Vec3> samples_, std::vector<double> param_, bool closed_)
    : dim(dim_), samples(std::move(samples_)), param(std::move(param_)), closed(closed_) {
  if (param.empty()) {
    for (std::size_t i = 0; i < samples.size(); ++i) param.push_back(double(i));
  }
  validate();
}

PolyCurve PolyCurve::from_2d(const std::vector<Vec2>& pts, std::vector<double> param, bool closed) {
  std::vector<Vec3> s;
  s.reserve(pts.size());
  for (const auto& p : pts) s.emplace_back(p.x(), p.y(), 0.0);
  return PolyCurve(2, std::move(s), std::move(param), closed);
}

PolyCurve PolyCurve::from_3d(const std::vector<Vec3>& pts, std::vector<double> param, bool closed) {
  return PolyCurve(3, pts, std::move(param), closed);
}

PolyCurve PolyCurve::sample(int dim, const std::function<Vec3(double)>& fn, double a, double b, int count,
                            bool closed) {
  if (count < 2) throw Error(ErrorKind::InvalidArgument, "curve needs at least 2 samples");
  std::vector<Vec3> s;
  std::vector<double> t;
  for (int i = 0; i < count; ++i) {
    // Exact endpoints; interior values from the same affine formula.
    double u = (i == count - 1) ? b : a + (b - a) * double(i) / double(count - 1);
    t.push_back(u);
    Vec3 p = fn(u);
    if (dim == 2) p.z() = 0.0;
    s.push_back(p);
  }
  return PolyCurve(dim, std::move(s), std::move(t), closed);
}

void PolyCurve::validate() const {
  if (dim != 2 && dim != 3) throw Error(ErrorKind::InvalidArgument, "curve dimension must be 2 or 3");
  if (samples.size() < 2) throw Error(ErrorKind::InvalidArgument, "curve needs at least 2 samples");
  if (samples.size() != param.size()) throw Error(ErrorKind::InvalidArgument, "samples/param length mismatch");
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    if (!(param[i + 1] > param[i])) throw Error(ErrorKind::InvalidArgument, "param not strictly increasing", int(i));
    if ((samples[i + 1] - samples[i]).norm() == 0.0)
      throw Error(ErrorKind::InvalidArgument, "consecutive samples coincide", int(i));
  }
  for (const auto& p : samples)
    if (!p.allFinite()) throw Error(ErrorKind::InvalidArgument, "non-finite sample");
}

Vec3 PolyCurve::at(double t) const {
  if (t <= param.front()) return samples.front();
  if (t >= param.back()) return samples.back();
  auto it = std::upper_bound(param.begin(), param.end(), t);
  std::size_t j = std::size_t(it - param.begin());
  std::size_t i = j - 1;
  double w = (t - param[i]) / (param[j] - param[i]);
  if (w == 0.0) return samples[i];
  return (1.0 - w) * samples[i] + w * samples[j];
}

// ---------------------------------------------------------------- Partition

Partition Partition::from_points_unchecked(int dim, std::vector<Vec3> pts) {
  Partition p;
  p.dim = dim;
  p.points = std::move(pts);
  const int m = int(p.points.size());
  if (m < 3) throw Error(ErrorKind::InvalidArgument, "partition needs at least 3 points");
  for (int i = 0; i + 1 < m; ++i) p.lengths.push_back((p.points[i + 1] - p.points[i]).norm());
  for (int i = 1; i + 1 < m; ++i) {
    p.turn_angles.push_back(corner_angle(p.points[i - 1], p.points[i], p.points[i + 1]));
    if (dim == 2) {
      Vec3 d0 = p.points[i] - p.points[i - 1];
      Vec3 d1 = p.points[i + 1] - p.points[i];
      p.turn_sides.push_back(d0.x() * d1.y() - d0.y() * d1.x() > 0 ? +1 : -1);
    }
  }
  for (int i = 1; i + 2 < m; ++i) {
    const Vec3& a = p.points[i - 1];
    const Vec3& b = p.points[i];
    const Vec3& c = p.points[i + 1];
    const Vec3& d = p.points[i + 2];
    Vec3 e = c - b;
    Vec3 n1 = (b - a).cross(e);
    Vec3 n2 = e.cross(d - c);
    p.dihedrals.push_back(wrap_2pi(signed_angle(n1, n2, e)));
  }
  return p;
}

Partition Partition::from_points(int dim, std::vector<Vec3> pts) {
  Partition p = from_points_unchecked(dim, std::move(pts));
  for (std::size_t i = 0; i < p.lengths.size(); ++i)
    if (!(p.lengths[i] > 0)) throw Error(ErrorKind::DegenerateTurn, "zero-length partition segment", int(i));
  for (std::size_t i = 0; i < p.turn_angles.size(); ++i) {
    double b = p.turn_angles[i];
    if (!(b > tol::turn_degenerate && b < kPi - tol::turn_degenerate))
      throw Error(ErrorKind::DegenerateTurn, "turn angle outside (0, pi) at partition point", int(i + 1));
  }
  return p;
}

// ---------------------------------------------------------------- affine map

AffineParams::AffineParams(double theta, double xi, double xi_margin) : theta_(wrap_2pi(theta)), xi_(xi) {
  if (!(xi > xi_margin && xi < kPi - xi_margin) || !std::isfinite(theta))
    throw Error(ErrorKind::InvalidArgument, "xi must lie inside (margin, pi - margin)");
}

Mat2 affine_matrix(double xi, double theta) {
  Mat2 shear;
  shear << 1.0, -1.0 / std::tan(xi), 0.0, 1.0 / std::sin(xi);
  Mat2 rot;
  rot << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return shear * rot;
}

Mat2 AffineParams::matrix() const { return affine_matrix(xi_, theta_); }

Mat2 AffineParams::inverse() const {
  // Closed form: R(theta)^T * [[1, cos xi], [0, sin xi]].
  Mat2 shear_inv;
  shear_inv << 1.0, std::cos(xi_), 0.0, std::sin(xi_);
  Mat2 rot_t;
  rot_t << std::cos(theta_), -std::sin(theta_), std::sin(theta_), std::cos(theta_);
  return rot_t * shear_inv;
}

Vec2 affine_map(const Vec2& p, const AffineParams& a) { return a.matrix() * p; }
Vec2 affine_unmap(const Vec2& p, const AffineParams& a) { return a.inverse() * p; }

// ---------------------------------------------------------------- admissibility

namespace {

bool strictly_decreasing(const std::vector<Vec2>& img) {
  for (std::size_t i = 0; i + 1 < img.size(); ++i) {
    double dx = img[i + 1].x() - img[i].x();
    double dy = img[i + 1].y() - img[i].y();
    if (!(dx > tol::monotone && dy < -tol::monotone)) return false;
  }
  return true;
}

void require_open_2d(const PolyCurve& f) {
  if (f.closed) throw Error(ErrorKind::ClosedCurve, "a closed planar curve cannot be approximated by a column");
  if (f.dim != 2) throw Error(ErrorKind::InvalidArgument, "target curve must be planar");
}

}  // namespace

AdmissibilityResult is_admissible(const PolyCurve& f, const AffineParams& a) {
  require_open_2d(f);
  const Mat2 m = a.matrix();
  AdmissibilityResult r;
  r.image.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r.image.push_back(m * f.xy(i));
  r.param = f.param;
  if (r.image.back().x() < r.image.front().x()) {
    std::reverse(r.image.begin(), r.image.end());
    std::reverse(r.param.begin(), r.param.end());
    r.reversed = true;
  }
  r.admissible = strictly_decreasing(r.image);
  return r;
}

namespace {

// Image-free variant used by the scans: checks monotonicity without storing.
bool admissible_at(const PolyCurve& f, const Mat2& m) {
  const std::size_t n = f.size();
  Vec2 first = m * f.xy(0);
  Vec2 last = m * f.xy(n - 1);
  const bool rev = last.x() < first.x();
  Vec2 prev = rev ? last : first;
  for (std::size_t k = 1; k < n; ++k) {
    Vec2 cur = m * f.xy(rev ? n - 1 - k : k);
    double dx = cur.x() - prev.x();
    double dy = cur.y() - prev.y();
    if (!(dx > tol::monotone && dy < -tol::monotone)) return false;
    prev = cur;
  }
  return true;
}

}  // namespace

std::vector<double> search_theta_serial(const PolyCurve& f, double xi, int grid) {
  require_open_2d(f);
  if (grid < 1) throw Error(ErrorKind::InvalidArgument, "grid must be positive");
  AffineParams probe(0.0, xi);  // validates xi
  std::vector<double> out;
  for (int k = 0; k < grid; ++k) {
    double th = 2.0 * kPi * double(k) / double(grid);
    if (admissible_at(f, affine_matrix(xi, th))) out.push_back(th);
  }
  return out;
}

std::vector<double> search_theta(const PolyCurve& f, double xi, int grid) {
  require_open_2d(f);
  if (grid < 1) throw Error(ErrorKind::InvalidArgument, "grid must be positive");
  AffineParams probe(0.0, xi);
  std::vector<char> pass(std::size_t(grid), 0);
#pragma omp parallel for schedule(dynamic, 8)
  for (int k = 0; k < grid; ++k) {
    double th = 2.0 * kPi * double(k) / double(grid);
    pass[std::size_t(k)] = admissible_at(f, affine_matrix(xi, th)) ? 1 : 0;
  }
  std::vector<double> out;
  for (int k = 0; k < grid; ++k)
    if (pass[std::size_t(k)]) out.push_back(2.0 * kPi * double(k) / double(grid));
  return out;
}

// ---------------------------------------------------------------- staircase

Partition staircase(const PolyCurve& f, const AffineParams& a, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "staircase needs n >= 1");
  AdmissibilityResult adm = is_admissible(f, a);
  if (!adm.admissible) throw Error(ErrorKind::NotAdmissible, "curve is not monotone decreasing after the affine map");
  const Mat2 m = a.matrix();
  const Mat2 minv = a.inverse();
  const double t0 = adm.param.front();
  const double t1 = adm.param.back();
  const int segments = n + 1;
  auto image_at = [&](int k) -> Vec2 {
    double t = (k == segments) ? t1 : t0 + (t1 - t0) * double(k) / double(segments);
    return m * f.at(t).head<2>();
  };
  // Each interior corner is a corner of the box spanned by two consecutive
  // curve samples, alternately above and below the curve.
  std::vector<Vec2> stair;
  stair.push_back(image_at(0));
  for (int k = 1; k <= segments; ++k) {
    Vec2 q = image_at(k);
    Vec2 s = stair.back();
    if (k % 2 == 1) s.x() = q.x();  // move along x-bar
    else s.y() = q.y();             // move along y-bar
    stair.push_back(s);
  }
  std::vector<Vec3> pts;
  for (const auto& s : stair) {
    Vec2 p = minv * s;
    pts.emplace_back(p.x(), p.y(), 0.0);
  }
  return Partition::from_points(2, std::move(pts));
}

// ---------------------------------------------------------------- partitions

Partition partition_uniform(const PolyCurve& c, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "partition needs n >= 1");
  const double t0 = c.param.front(), t1 = c.param.back();
  std::vector<Vec3> pts;
  for (int k = 0; k <= n + 1; ++k) {
    double t = (k == n + 1) ? t1 : t0 + (t1 - t0) * double(k) / double(n + 1);
    pts.push_back(c.at(t));
  }
  return Partition::from_points(c.dim, std::move(pts));
}

namespace {

double min_radius_of_curvature(const PolyCurve& c) {
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    const Vec3& a = c.samples[i - 1];
    const Vec3& b = c.samples[i];
    const Vec3& d = c.samples[i + 1];
    double area2 = (b - a).cross(d - a).norm();
    if (area2 <= 1e-300) continue;
    double rr = (b - a).norm() * (d - b).norm() * (d - a).norm() / (2.0 * area2);
    r = std::min(r, rr);
  }
  return r;
}

Vec3 tangent_at(const PolyCurve& c, double t) {
  const double t0 = c.param.front(), t1 = c.param.back();
  const double h = 1e-6 * (t1 - t0);
  double a = std::max(t0, t - h), b = std::min(t1, t + h);
  return (c.at(b) - c.at(a)).normalized();
}

}  // namespace

Partition partition_tube(const PolyCurve& c, int n, double eps, double turn_margin) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "partition needs n >= 1");
  if (!(eps > 0)) throw Error(ErrorKind::InvalidArgument, "tube radius must be positive");
  if (c.dim != 2) throw Error(ErrorKind::InvalidArgument, "tube partition needs a planar curve");
  if (eps >= min_radius_of_curvature(c))
    throw Error(ErrorKind::TubeSelfIntersect, "tube radius exceeds the minimal radius of curvature");
  const double t0 = c.param.front(), t1 = c.param.back();
  std::vector<Vec3> pts;
  for (int k = 0; k <= n + 1; ++k) {
    double t = (k == n + 1) ? t1 : t0 + (t1 - t0) * double(k) / double(n + 1);
    Vec3 tg = tangent_at(c, t);
    Vec3 nrm(-tg.y(), tg.x(), 0.0);
    double side = (k % 2 == 0) ? 1.0 : -1.0;
    pts.push_back(c.at(t) + side * eps * nrm);
  }
  Partition p = Partition::from_points(2, std::move(pts));
  for (std::size_t i = 0; i < p.turn_angles.size(); ++i)
    if (p.turn_angles[i] > kPi - turn_margin)
      throw Error(ErrorKind::DegenerateTurn, "tube turn angle too close to pi", int(i + 1));
  return p;
}

// ---------------------------------------------------------------- Hausdorff

namespace {

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  Vec3 ab = b - a;
  double l2 = ab.squaredNorm();
  if (l2 == 0.0) return (p - a).norm();
  double s = std::clamp((p - a).dot(ab) / l2, 0.0, 1.0);
  return (p - (a + s * ab)).norm();
}

double distance_to_polyline(const Vec3& p, const std::vector<Vec3>& poly) {
  if (poly.size() == 1) return (p - poly[0]).norm();
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) d = std::min(d, point_segment_distance(p, poly[i], poly[i + 1]));
  return d;
}

std::vector<Vec3> resample(const std::vector<Vec3>& poly, int sub) {
  if (poly.size() <= 1) return poly;
  std::vector<Vec3> out;
  out.reserve((poly.size() - 1) * std::size_t(sub) + 1);
  for (std::size_t i = 0; i + 1 < poly.size(); ++i)
    for (int s = 0; s < sub; ++s) out.push_back(poly[i] + (poly[i + 1] - poly[i]) * (double(s) / double(sub)));
  out.push_back(poly.back());
  return out;
}

double directed_serial(const std::vector<Vec3>& pts, const std::vector<Vec3>& poly) {
  double d = 0.0;
  for (const auto& p : pts) d = std::max(d, distance_to_polyline(p, poly));
  return d;
}

double directed_parallel(const std::vector<Vec3>& pts, const std::vector<Vec3>& poly) {
  double d = 0.0;
  const long n = long(pts.size());
#pragma omp parallel for reduction(max : d) schedule(static)
  for (long i = 0; i < n; ++i) d = std::max(d, distance_to_polyline(pts[std::size_t(i)], poly));
  return d;
}

void require_nonempty(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::InvalidArgument, "Hausdorff distance of an empty set");
}

}  // namespace

double hausdorff(const std::vector<Vec3>& a, const std::vector<Vec3>& b, int subsamples) {
  require_nonempty(a, b);
  const int sub = std::max(1, subsamples);
  return std::max(directed_parallel(resample(a, sub), b), directed_parallel(resample(b, sub), a));
}

double hausdorff_serial(const std::vector<Vec3>& a, const std::vector<Vec3>& b, int subsamples) {
  require_nonempty(a, b);
  const int sub = std::max(1, subsamples);
  return std::max(directed_serial(resample(a, sub), b), directed_serial(resample(b, sub), a));
}

double hausdorff(const PolyCurve& a, const PolyCurve& b, int subsamples) {
  return hausdorff(a.samples, b.samples, subsamples);
}

double hausdorff_points(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  require_nonempty(a, b);
  auto directed = [](const std::vector<Vec3>& x, const std::vector<Vec3>& y) {
    double d = 0.0;
    for (const auto& p : x) {
      double m = std::numeric_limits<double>::infinity();
      for (const auto& q : y) m = std::min(m, (p - q).norm());
      d = std::max(d, m);
    }
    return d;
  };
  return std::max(directed(a, b), directed(b, a));
}

// ---------------------------------------------------------------- builtins

std::vector<std::string> builtin_curve_names() {
  return {"fig3-parabola", "fig4-spiralish", "fig5-exp", "fig7-sine", "fig7-tlnt",
          "line",          "circle",         "ellipse",  "rounded-square"};
}

PolyCurve builtin_curve(const std::string& name, int samples) {
  if (name == "fig3-parabola")
    return PolyCurve::sample(2, [](double t) { return Vec3(t, t * t / 4.0, 0.0); }, -2.0, 2.0, samples);
  if (name == "fig4-spiralish")
    return PolyCurve::sample(
        3, [](double u) { return Vec3(u + std::cos(u), -2.0 * u * u, std::sin(u)); }, -1.0, 0.5, samples);
  if (name == "fig5-exp")
    return PolyCurve::sample(2, [](double t) { return Vec3(t, std::exp(t), 0.0); }, 0.0, 1.0, samples);
  if (name == "fig7-sine")
    return PolyCurve::sample(2, [](double u) { return Vec3(u, std::sin(u), 0.0); }, 0.0, kPi, samples);
  if (name == "fig7-tlnt")
    return PolyCurve::sample(2, [](double t) { return Vec3(t, t - std::log(t), 0.0); }, 0.5, 1.5, samples);
  if (name == "line")
    return PolyCurve::sample(2, [](double t) { return Vec3(t, -t, 0.0); }, 0.0, 1.0, samples);
  // Closed curves: the last sample repeats no point; `closed` marks the loop.
  auto closed_curve = [&](const std::function<Vec3(double)>& fn) {
    std::vector<Vec3> s;
    std::vector<double> t;
    for (int i = 0; i < samples; ++i) {
      double u = 2.0 * kPi * double(i) / double(samples);
      s.push_back(fn(u));
      t.push_back(u);
    }
    return PolyCurve(2, std::move(s), std::move(t), true);
  };
  if (name == "circle") return closed_curve([](double u) { return Vec3(std::cos(u), std::sin(u), 0.0); });
  if (name == "ellipse") return closed_curve([](double u) { return Vec3(2.0 * std::cos(u), std::sin(u), 0.0); });
  if (name == "rounded-square")
    return closed_curve([](double u) {
      // Superellipse |x|^4 + |y|^4 = 1.
      double c = std::cos(u), s = std::sin(u);
      double x = std::copysign(std::sqrt(std::abs(c)), c);
      double y = std::copysign(std::sqrt(std::abs(s)), s);
      return Vec3(x, y, 0.0);
    });
  throw Error(ErrorKind::InvalidArgument, "unknown builtin curve '" + name + "'");
}

}  // namespace rigidfold
