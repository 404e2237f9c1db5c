#include "rigidfold/kinematics.hpp"

#include "rigidfold/errors.hpp"
#include "rigidfold/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rigidfold {

// ---------------------------------------------------------------- VertexAngles

double VertexAngles::developability_residual() const { return std::abs(s[0] + s[1] + s[2] + s[3] - 2.0 * kPi); }

double VertexAngles::flat_foldability_residual() const {
  return std::max(std::abs(s[0] + s[2] - kPi), std::abs(s[1] + s[3] - kPi));
}

void VertexAngles::validate() const {
  for (int i = 0; i < 4; ++i)
    if (!(s[std::size_t(i)] > 0.0 && s[std::size_t(i)] < kPi))
      throw Error(ErrorKind::InvariantViolation, "sector angle outside (0, pi)", i);
  if (developability_residual() > tol::developability)
    throw Error(ErrorKind::InvariantViolation, "sector angles do not sum to 2pi");
}

// ---------------------------------------------------------------- closed forms

namespace {

void require_open_angle(double a, const char* name) {
  if (!(a > 0.0 && a < kPi)) throw Error(ErrorKind::InvalidArgument, std::string(name) + " must lie in (0, pi)");
}

}  // namespace

std::pair<double, double> fold_from_beta(double alpha1, double alpha2, double beta1) {
  require_open_angle(alpha1, "alpha1");
  require_open_angle(alpha2, "alpha2");
  require_open_angle(beta1, "beta1");
  double x = (std::cos(alpha2) * std::cos(beta1) - std::cos(alpha1)) / (std::sin(alpha2) * std::sin(beta1));
  double y = (std::cos(alpha1) * std::cos(beta1) - std::cos(alpha2)) / (std::sin(alpha1) * std::sin(beta1));
  return {2.0 * safe_acos(x, "fold_from_beta rho2"), 2.0 * safe_acos(y, "fold_from_beta rho4")};
}

std::pair<double, double> solve_first_vertex(double beta1, double rho4) {
  require_open_angle(beta1, "beta1");
  require_open_angle(rho4, "rho4");
  // With rho2 = pi the first equation forces cos a1 = cos a2 cos b; the
  // second then gives cos(rho4/2) = -cos a2 sin b / sin a1, which solves to
  // cos^2 a2 = 1 / (cos^2 b + sin^2 b / c^2) with a2 on the obtuse side.
  const double c = std::cos(rho4 / 2.0);
  const double cb = std::cos(beta1), sb = std::sin(beta1);
  const double ca2 = -1.0 / std::sqrt(cb * cb + sb * sb / (c * c));
  const double a2 = std::acos(ca2);
  const double a1 = std::atan2(-ca2 * sb / c, ca2 * cb);
  const double eps = tol::degenerate_angle;
  if (!(a1 > eps && a1 < kPi - eps && a2 > eps && a2 < kPi - eps) || !std::isfinite(a1) || !std::isfinite(a2))
    throw Error(ErrorKind::NoSolution, "first-vertex sector angles degenerate for this turn angle");
  return {a1, a2};
}

// ---------------------------------------------------------------- row transfer

std::pair<double, double> row_transfer_residual(const VertexAngles& prev, const VertexAngles& next, double beta_i,
                                                double beta_ip1, double theta_i, const Branch& br) {
  for (int k = 0; k < 4; ++k) {
    require_open_angle(prev[k], "sector angle");
    require_open_angle(next[k], "sector angle");
  }
  require_open_angle(beta_i, "beta_i");
  require_open_angle(beta_ip1, "beta_i+1");
  const double a1 = prev[0], a2 = prev[1], a3 = prev[2], a4 = prev[3];
  const double b1 = next[0], b2 = next[1], b3 = next[2], b4 = next[3];
  const double sb = std::sin(beta_i), cb = std::cos(beta_i);
  const double sn = std::sin(beta_ip1), cn = std::cos(beta_ip1);
  const char* w = "row_transfer_residual";
  double t1 = safe_acos((std::cos(a1) * cb - std::cos(a2)) / (std::sin(a1) * sb), w);
  double t2 = safe_acos((std::cos(a3) - std::cos(a4) * cb) / (std::sin(a4) * sb), w);
  double t3 = safe_acos((std::cos(b2) * cn - std::cos(b1)) / (std::sin(b2) * sn), w);
  double t4 = safe_acos((std::cos(b4) - std::cos(b3) * cn) / (std::sin(b3) * sn), w);
  double t5 = safe_acos((std::cos(a2) - std::cos(a1) * cb) / (std::sin(a1) * sb), w);
  double t6 = safe_acos((std::cos(b1) - std::cos(b2) * cn) / (std::sin(b2) * sn), w);
  double r1 = (t1 + br[0] * t2) - (t3 + br[1] * t4);
  double r2 = wrap_pi(theta_i - (br[2] * t5 + br[3] * t6));
  return {r1, r2};
}

std::array<Branch, 16> branch_order() {
  std::array<Branch, 16> out{};
  for (int k = 0; k < 16; ++k)
    for (int j = 0; j < 4; ++j) out[std::size_t(k)][std::size_t(j)] = ((k >> (3 - j)) & 1) ? -1 : +1;
  return out;
}

namespace {

struct NewtonResult {
  bool ok = false;
  double x = 0, y = 0;
};

NewtonResult newton2(const VertexAngles& prev, double bi, double bn, double th, const Branch& br, double x0,
                     double y0) {
  auto F = [&](double x, double y) {
    VertexAngles nx(x, y, kPi - x, kPi - y);
    return row_transfer_residual(prev, nx, bi, bn, th, br);
  };
  const double lo = 1e-9, hi = kPi - 1e-9;
  double x = x0, y = y0;
  try {
    for (int it = 0; it < tol::newton_max_iter; ++it) {
      auto [f1, f2] = F(x, y);
      if (std::max(std::abs(f1), std::abs(f2)) < tol::newton_tol) return {true, x, y};
      const double h = 1e-7;
      auto [fx1, fx2] = F(std::min(x + h, hi), y);
      auto [fy1, fy2] = F(x, std::min(y + h, hi));
      double hx = std::min(x + h, hi) - x, hy = std::min(y + h, hi) - y;
      Mat2 J;
      J << (fx1 - f1) / hx, (fy1 - f1) / hy, (fx2 - f2) / hx, (fy2 - f2) / hy;
      double det = J.determinant();
      if (!std::isfinite(det) || std::abs(det) < 1e-14) return {};
      Vec2 step = J.fullPivLu().solve(Vec2(-f1, -f2));
      double nx = std::clamp(x + step.x(), lo, hi), ny = std::clamp(y + step.y(), lo, hi);
      if (std::abs(nx - x) + std::abs(ny - y) < 1e-15) {
        auto [g1, g2] = F(nx, ny);
        return {std::max(std::abs(g1), std::abs(g2)) < tol::transfer_residual, nx, ny};
      }
      x = nx;
      y = ny;
    }
    auto [f1, f2] = F(x, y);
    if (std::max(std::abs(f1), std::abs(f2)) < tol::transfer_residual) return {true, x, y};
  } catch (const Error&) {
    // Singular arccos argument along the path: this seed fails.
  }
  return {};
}

}  // namespace

NextVertex solve_next_vertex(const VertexAngles& prev, double beta_i, double beta_ip1, double theta_i,
                             std::optional<Branch> preferred) {
  std::vector<Branch> order;
  if (preferred) order.push_back(*preferred);
  for (const auto& b : branch_order())
    if (!preferred || b != *preferred) order.push_back(b);
  const int g = tol::newton_seed_grid;
  for (const auto& br : order) {
    for (int i = 0; i < g; ++i) {
      for (int j = 0; j < g; ++j) {
        double x0 = kPi * (double(i) + 0.5) / double(g);
        double y0 = kPi * (double(j) + 0.5) / double(g);
        NewtonResult r = newton2(prev, beta_i, beta_ip1, theta_i, br, x0, y0);
        if (r.ok) return NextVertex{r.x, r.y, br};
      }
    }
  }
  throw Error(ErrorKind::NoSolution, "row transfer equations have no root on any branch");
}

// ---------------------------------------------------------------- planar transfer

double planar_ratio(double a, double b, double beta) {
  return (std::cos(a) * std::cos(beta) - std::cos(b)) / (std::sin(a) * std::sin(beta));
}

PlanarTransfer planar_transfer(double prev_a, double prev_b, double beta_i, double beta_ip1) {
  require_open_angle(prev_a, "alpha_{4i-3}");
  require_open_angle(prev_b, "alpha_{4i-2}");
  require_open_angle(beta_i, "beta_i");
  require_open_angle(beta_ip1, "beta_i+1");
  // Left side: ratio in (alpha_{4i-3}, alpha_{4i-2}); right side in
  // (alpha_{4i+2}, alpha_{4i+1}) with alpha_{4i+1} fixed to alpha_{4i-2}, so
  // equal turn angles repeat the vertex.
  const double k = planar_ratio(prev_a, prev_b, beta_i);
  const double a1 = prev_b;
  // cos(a2) cos(bn) - k sin(bn) sin(a2) = cos(a1)  ->  R cos(a2 + phi) = cos(a1)
  const double cn = std::cos(beta_ip1), sn = std::sin(beta_ip1);
  const double R = std::hypot(cn, k * sn);
  const double phi = std::atan2(k * sn, cn);
  const double arg = std::cos(a1) / R;
  if (!(std::abs(arg) <= 1.0)) throw Error(ErrorKind::NoSolution, "planar transfer ratio has no root");
  const double d = std::acos(arg);
  double best = -1;
  for (double cand : {d - phi, -d - phi}) {
    for (int w = -2; w <= 2; ++w) {
      double c = cand + 2.0 * kPi * w;
      if (c > tol::degenerate_angle && c < kPi - tol::degenerate_angle) {
        if (best < 0 || std::abs(c - prev_a) < std::abs(best - prev_a)) best = c;
      }
    }
  }
  if (best < 0) throw Error(ErrorKind::NoSolution, "planar transfer root outside (0, pi)");
  PlanarTransfer out;
  out.alpha1 = a1;
  out.alpha2 = best;
  out.theta = ((prev_a + prev_b - kPi) * (a1 + best - kPi) > 0) ? 0.0 : kPi;
  return out;
}

// ---------------------------------------------------------------- single vertex

FoldAngles degree4_propagate_dirs(const std::array<double, 4>& dirs, int k, double rho, int mode) {
  if (k < 0 || k > 3) throw Error(ErrorKind::InvalidArgument, "crease index must be 0..3");
  if (!(std::abs(rho) < kPi + 1e-15)) throw Error(ErrorKind::OutOfRange, "driving angle beyond pi");
  std::array<int, 4> idx{};
  std::array<Vec3, 4> e;
  for (int j = 0; j < 4; ++j) {
    idx[std::size_t(j)] = (k + j) % 4;
    double p = dirs[std::size_t(idx[std::size_t(j)])];
    e[std::size_t(j)] = Vec3(std::cos(p), std::sin(p), 0.0);
  }
  // Panel 0 (creases 0..1) is fixed; panel 3 rotates by -rho about crease 0.
  const Mat3 R0 = axis_rotation(e[0], -rho);
  const Vec3& e1 = e[1];
  const Vec3& e2 = e[2];
  const Vec3 par = e2.dot(e1) * e1;
  const Vec3 perp = e2 - par;
  const Vec3 cr = e1.cross(e2);
  // Crease 2 rotated by phi about crease 1 must make the sector angle s2 with
  // the rotated crease 3. Written with half-angle sines the flat solution
  // cancels exactly: with h = sin(rho/2), k = cos(rho/2) and t = tan(phi/2),
  //   (h^2 A + P - 2 h^2 Q) t^2 - 2 h k S t + h^2 A = 0,
  // every root carrying a factor h, so no precision is lost near the flat
  // state where the two assembly modes meet.
  const Vec3& e3f = e[3];
  const Vec3 e3perp = e3f - e[0] * e[0].dot(e3f);
  const Vec3 w = -e[0].cross(e3f);
  const double A = e2.dot(e3perp), P = perp.dot(e3f), Q = perp.dot(e3perp), S = cr.dot(w);
  const double h = std::sin(0.5 * rho), kh = std::cos(0.5 * rho);
  const double alpha = h * h * A + P - 2.0 * h * h * Q;
  double disc = kh * kh * S * S - alpha * A;
  const double scale = kh * kh * S * S + std::abs(alpha * A);
  if (disc < 0) {
    if (disc < -tol::acos_clamp * std::max(scale, 1e-300))
      throw Error(ErrorKind::OutOfRange, "degree4_propagate: driving angle outside the motion range");
    disc = 0.0;
  }
  const double sq = std::sqrt(disc);
  auto root = [&](double sigma) {
    // Pick the algebraically equivalent form without cancellation.
    const double num = kh * S + sigma * sq;
    if (sigma * kh * S >= 0) {
      if (alpha == 0.0) return kPi;
      return 2.0 * std::atan2(h * num, alpha);
    }
    const double den = kh * S - sigma * sq;
    return 2.0 * std::atan2(h * A, den);
  };
  const double phi_a = wrap_pi(root(+1.0)), phi_b = wrap_pi(root(-1.0));
  // Mode 0 is the root turning further in the positive sense about crease 1,
  // measured from the direction of the rotated crease 3 projected on the
  // rotation plane.
  const Vec3 e3 = R0 * e[3];
  const double base = std::atan2(cr.dot(e3), perp.dot(e3));
  const bool a_first = wrap_pi(phi_a - base) >= wrap_pi(phi_b - base);
  const double r1 = mode == 0 ? (a_first ? phi_a : phi_b) : (a_first ? phi_b : phi_a);
  const Mat3 T1 = axis_rotation(e1, r1);
  const Vec3 e2f = T1 * e2;
  const Vec3 z(0, 0, 1);
  const Vec3 n1 = T1 * z;
  Vec3 n2 = e2f.cross(e3);
  const double n2n = n2.norm();
  if (n2n < 1e-300) throw Error(ErrorKind::OutOfRange, "degenerate folded panel");
  n2 /= n2n;
  const Vec3 n3 = R0 * z;
  const double r2 = signed_angle(n1, n2, e2f);
  const double r3 = signed_angle(n2, n3, e3);
  FoldAngles out{};
  const std::array<double, 4> vals{rho, r1, r2, r3};
  for (int j = 0; j < 4; ++j) out[std::size_t(idx[std::size_t(j)])] = vals[std::size_t(j)];
  return out;
}

namespace {
std::array<double, 4> dirs_of(const VertexAngles& v) {
  return {0.0, v[0], v[0] + v[1], v[0] + v[1] + v[2]};
}
}  // namespace

FoldAngles degree4_propagate(const VertexAngles& v, int k, double rho, int mode) {
  for (int i = 0; i < 4; ++i) require_open_angle(v[i], "sector angle");
  if (v.developability_residual() > tol::developability)
    throw Error(ErrorKind::InvariantViolation, "sector angles do not sum to 2pi");
  return degree4_propagate_dirs(dirs_of(v), k, rho, mode);
}

double loop_closure_residual(const VertexAngles& v, const FoldAngles& rho) {
  auto d = dirs_of(v);
  auto e = [&](int j) { return Vec3(std::cos(d[std::size_t(j)]), std::sin(d[std::size_t(j)]), 0.0); };
  Mat3 M = axis_rotation(e(1), rho[1]) * axis_rotation(e(2), rho[2]) * axis_rotation(e(3), rho[3]) *
           axis_rotation(e(0), rho[0]);
  return (M - Mat3::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace rigidfold
