#include "rigidfold/foldsim.hpp"

#include "rigidfold/errors.hpp"
#include "rigidfold/tolerances.hpp"

#include <algorithm>
#include <sstream>
#include <cmath>
#include <deque>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rigidfold {

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct StarInfo {
  std::array<int, 4> crease{};
  std::array<double, 4> dirs{};
  std::array<bool, 4> is_row{};
};

std::vector<StarInfo> build_stars(const CreasePattern& p) {
  std::vector<StarInfo> out;
  for (int r = 1; r + 1 < p.rows; ++r)
    for (int c = 1; c + 1 < p.cols; ++c) {
      StarInfo s;
      s.crease = p.star(r, c);
      s.dirs = p.star_directions(r, c);
      s.is_row = {true, false, true, false};
      out.push_back(s);
    }
  return out;
}

std::vector<FoldAngles> candidates(const StarInfo& s, int k, double rho) {
  std::vector<FoldAngles> out;
  for (int m = 0; m < 2; ++m) {
    try {
      out.push_back(degree4_propagate_dirs(s.dirs, k, rho, m));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OutOfRange) throw;
    }
  }
  return out;
}

double mismatch(const StarInfo& s, const FoldAngles& out, const std::vector<double>& F) {
  double m = 0.0;
  for (int j = 0; j < 4; ++j) {
    double known = F[std::size_t(s.crease[std::size_t(j)])];
    if (!std::isnan(known)) m = std::max(m, std::abs(wrap_pi(known - out[std::size_t(j)])));
  }
  return m;
}

double continuity(const StarInfo& s, const FoldAngles& out, const std::vector<double>& prev) {
  double m = 0.0;
  for (int j = 0; j < 4; ++j) m += std::abs(wrap_pi(out[std::size_t(j)] - prev[std::size_t(s.crease[std::size_t(j)])]));
  return m;
}

int first_known(const StarInfo& s, const std::vector<double>& F) {
  for (int j = 0; j < 4; ++j)
    if (!std::isnan(F[std::size_t(s.crease[std::size_t(j)])])) return j;
  return -1;
}

// One sweep over the inner vertices in row-major order. `prev` (per-crease
// angles of a nearby state) selects branches by continuity; without it the
// branch is chosen by the first-state rules.
std::vector<double> fold_pass(const CreasePattern& p, const std::vector<StarInfo>& stars, double drive,
                              const std::vector<double>* prev, double& residual) {
  const int IC = p.inner_cols();
  std::vector<double> F(p.creases.size(), kUnset);
  residual = 0.0;
  auto star_at = [&](int r, int c) -> const StarInfo& { return stars[std::size_t((r - 1) * IC + (c - 1))]; };

  for (int r = 1; r + 1 < p.rows; ++r)
    for (int c = 1; c + 1 < p.cols; ++c) {
      const StarInfo& s = star_at(r, c);
      int k;
      double rho;
      if (r == 1 && c == 1) {
        k = 0;
        rho = drive;
      } else {
        k = first_known(s, F);
        if (k < 0) throw Error(ErrorKind::InvariantViolation, "vertex without a known crease", p.vid(r, c));
        rho = F[std::size_t(s.crease[std::size_t(k)])];
      }
      auto cands = candidates(s, k, rho);
      if (cands.empty()) throw Error(ErrorKind::OutOfRange, "vertex beyond its folding range", p.vid(r, c));

      std::vector<double> scores;
      for (const auto& out : cands) {
        double sc = 0.0;
        if (r == 1) {
          if (prev) {
            sc = continuity(s, out, *prev);
          } else {
            double total = 0.0;
            for (double o : out) total += std::abs(o);
            sc = (total > 0.5 ? 1e6 : 0.0);
            const double sg = drive < 0 ? -1.0 : 1.0;
            for (int j = 0; j < 4; ++j)
              if (s.is_row[std::size_t(j)]) sc += -sg * out[std::size_t(j)];
          }
        } else {
          sc = mismatch(s, out, F);
          if (c == 1 && p.cols > 3) {
            std::vector<double> FF = F;
            for (int j = 0; j < 4; ++j) {
              double& slot = FF[std::size_t(s.crease[std::size_t(j)])];
              if (std::isnan(slot)) slot = out[std::size_t(j)];
            }
            const StarInfo& s2 = star_at(r, 2);
            int k2 = first_known(s2, FF);
            double best = 1e9;
            if (k2 >= 0)
              for (const auto& o2 : candidates(s2, k2, FF[std::size_t(s2.crease[std::size_t(k2)])]))
                best = std::min(best, mismatch(s2, o2, FF));
            sc += best;
          }
          if (!prev) {
            double mn = std::numeric_limits<double>::infinity();
            for (double o : out) mn = std::min(mn, std::abs(o));
            if (mn < 1e-2 * std::abs(drive)) sc += 1e6;
          } else {
            sc = sc * 1e3 + continuity(s, out, *prev);
          }
        }
        scores.push_back(sc);
      }
      const auto& out = cands[std::size_t(std::min_element(scores.begin(), scores.end()) - scores.begin())];
      for (int j = 0; j < 4; ++j) {
        double& slot = F[std::size_t(s.crease[std::size_t(j)])];
        if (std::isnan(slot))
          slot = out[std::size_t(j)];
        else
          residual = std::max(residual, std::abs(wrap_pi(slot - out[std::size_t(j)])));
      }
    }
  for (double& v : F)
    if (std::isnan(v)) v = 0.0;
  return F;
}

std::string fmt_g(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

FoldedState finish_state(const CreasePattern& p, std::vector<double> F, double drive, double residual,
                         const SimOptions& opt) {
  FoldedState s;
  s.driving_crease = driving_crease(p);
  s.driving_rho = drive;
  s.rho = std::move(F);
  s.closure_residual = residual;
  place_panels(p, s);
  if (opt.check_closure) {
    const double diam = std::max(1.0, p.diameter());
    if (s.closure_residual > tol::closure)
      throw Error(ErrorKind::NotRigidFoldable,
                  "fold angles do not close around the vertex loops (residual " + fmt_g(s.closure_residual) + " rad)");
    if (s.placement_error > tol::closure * diam)
      throw Error(ErrorKind::NotRigidFoldable,
                  "panels do not close (placement error " + fmt_g(s.placement_error) + ")");
  }
  return s;
}

double max_abs_rho(const FoldedState& s, int* arg = nullptr) {
  double m = 0.0;
  int a = -1;
  for (std::size_t i = 0; i < s.rho.size(); ++i)
    if (std::abs(s.rho[i]) > m) {
      m = std::abs(s.rho[i]);
      a = int(i);
    }
  if (arg) *arg = a;
  return m;
}

}  // namespace

int driving_crease(const CreasePattern& p) { return p.crease_between(1, 1, 1, 2); }

void place_panels(const CreasePattern& p, FoldedState& s) {
  const int FR = p.rows - 1, FC = p.cols - 1;
  const int nf = FR * FC;
  s.face_rot.assign(std::size_t(nf), Mat3::Identity());
  s.face_trans.assign(std::size_t(nf), Vec3::Zero());
  std::vector<char> seen(std::size_t(nf), 0);
  auto P3 = [&](int r, int c) {
    const Vec2& q = p.at(r, c);
    return Vec3(q.x(), q.y(), 0.0);
  };
  std::deque<std::pair<int, int>> queue;
  queue.emplace_back(0, 0);
  seen[0] = 1;
  while (!queue.empty()) {
    auto [fr, fc] = queue.front();
    queue.pop_front();
    const int f = p.face_index(fr, fc);
    const Mat3 R0 = s.face_rot[std::size_t(f)];
    const Vec3 t0 = s.face_trans[std::size_t(f)];
    struct Step {
      int dr, dc, ur, uc, vr, vc;
    };
    const Step steps[4] = {{0, 1, fr, fc + 1, fr + 1, fc + 1},
                           {1, 0, fr + 1, fc + 1, fr + 1, fc},
                           {0, -1, fr + 1, fc, fr, fc},
                           {-1, 0, fr, fc, fr, fc + 1}};
    for (const auto& st : steps) {
      const int gr = fr + st.dr, gc = fc + st.dc;
      if (gr < 0 || gc < 0 || gr >= FR || gc >= FC) continue;
      const int g = p.face_index(gr, gc);
      if (seen[std::size_t(g)]) continue;
      const int ci = p.crease_between(st.ur, st.uc, st.vr, st.vc);
      const double rho = ci >= 0 ? s.rho[std::size_t(ci)] : 0.0;
      const Vec3 pu = P3(st.ur, st.uc);
      const Vec3 e = P3(st.vr, st.vc) - pu;
      const Vec3 cg = 0.25 * (P3(gr, gc) + P3(gr + 1, gc) + P3(gr, gc + 1) + P3(gr + 1, gc + 1));
      const double side = e.cross(cg - pu).z();
      const Mat3 Rr = axis_rotation(e.normalized(), side > 0 ? rho : -rho);
      s.face_rot[std::size_t(g)] = R0 * Rr;
      s.face_trans[std::size_t(g)] = R0 * (pu - Rr * pu) + t0;
      seen[std::size_t(g)] = 1;
      queue.emplace_back(gr, gc);
    }
  }
  s.coords.assign(std::size_t(p.rows * p.cols), Vec3::Zero());
  std::vector<char> set(s.coords.size(), 0);
  s.placement_error = 0.0;
  for (int fr = 0; fr < FR; ++fr)
    for (int fc = 0; fc < FC; ++fc) {
      const int f = p.face_index(fr, fc);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const int v = p.vid(fr + a, fc + b);
          const Vec3 x = s.face_rot[std::size_t(f)] * P3(fr + a, fc + b) + s.face_trans[std::size_t(f)];
          if (!set[std::size_t(v)]) {
            s.coords[std::size_t(v)] = x;
            set[std::size_t(v)] = 1;
          } else {
            s.placement_error = std::max(s.placement_error, (s.coords[std::size_t(v)] - x).norm());
          }
        }
    }
}

FoldedState propagate(const CreasePattern& p, double driving_rho, const SimOptions& opt) {
  if (p.rows < 3 || p.cols < 3) throw Error(ErrorKind::NotQuadGrid, "pattern has no inner vertex");
  const auto stars = build_stars(p);
  const double sgn = driving_rho < 0 ? -1.0 : 1.0;
  const double target = std::abs(driving_rho);
  if (target == 0.0) {
    FoldedState s;
    s.driving_crease = driving_crease(p);
    s.rho.assign(p.creases.size(), 0.0);
    place_panels(p, s);
    return s;
  }
  double a = std::min(opt.seed, target);
  double res = 0.0;
  std::vector<double> F = fold_pass(p, stars, sgn * a, nullptr, res);
  while (a < target) {
    a = std::min(target, a < opt.step ? 2.0 * a : a + opt.step);
    F = fold_pass(p, stars, sgn * a, &F, res);
  }
  return finish_state(p, std::move(F), sgn * a, res, opt);
}

FoldedState propagate_from(const CreasePattern& p, const FoldedState& from, double driving_rho,
                           const SimOptions& opt) {
  if (from.rho.size() != p.creases.size()) throw Error(ErrorKind::InvalidArgument, "state does not match pattern");
  if (from.driving_rho == 0.0) return propagate(p, driving_rho, opt);
  const auto stars = build_stars(p);
  std::vector<double> F = from.rho;
  double cur = from.driving_rho;
  double res = 0.0;
  const double total = driving_rho - cur;
  const int n = std::max(1, int(std::ceil(std::abs(total) / opt.step)));
  for (int i = 1; i <= n; ++i) {
    cur = (i == n) ? driving_rho : from.driving_rho + total * double(i) / double(n);
    F = fold_pass(p, stars, cur, &F, res);
  }
  return finish_state(p, std::move(F), driving_rho, res, opt);
}

int crease_column(const CreasePattern& p, int crease) {
  const auto& e = p.creases[std::size_t(crease)];
  const int c0 = p.col_of(e.v0), c1 = p.col_of(e.v1);
  return c0 == c1 ? c0 : std::max(c0, c1);
}

Trajectory sweep_to_halt(const CreasePattern& p, int states, const SimOptions& opt) {
  const double limit = kPi - tol::halting_margin;
  auto clashes = [&](const FoldedState& s) { return !clash_test(p, s).empty(); };
  // A state is "bad" when it cannot be reached, a crease has reached the
  // halting threshold, or panels interpenetrate.
  struct Probe {
    bool ok = false;
    bool reached = false;
    FoldedState s;
    std::string reason;
  };
  auto probe = [&](const FoldedState* from, double t) {
    Probe pr;
    try {
      pr.s = from ? propagate_from(p, *from, -t, opt) : propagate(p, -t, opt);
      pr.reached = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OutOfRange) throw;
      pr.reason = "range-end";
      return pr;
    }
    if (max_abs_rho(pr.s) >= limit) {
      pr.reason = "crease-at-pi";
      return pr;
    }
    if (clashes(pr.s)) {
      pr.reason = "panel-interpenetration";
      return pr;
    }
    pr.ok = true;
    return pr;
  };

  double lo = std::min(opt.seed, kPi);
  Probe good = probe(nullptr, lo);
  if (!good.ok) throw Error(ErrorKind::NoHalt, "pattern does not leave the flat state");
  double hi = -1.0;
  Probe bad;
  for (double t = lo; t < kPi;) {
    double next = std::min(kPi, t < opt.step ? 2.0 * t : t + opt.step);
    Probe pr = probe(&good.s, next);
    if (!pr.ok) {
      hi = next;
      bad = std::move(pr);
      break;
    }
    good = std::move(pr);
    lo = t = next;
  }
  if (hi < 0) throw Error(ErrorKind::NoHalt, "motion reaches the end of its range without halting");
  while (hi - lo > 1e-14 * std::max(1.0, hi)) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    Probe pr = probe(&good.s, mid);
    if (pr.ok) {
      lo = mid;
      good = std::move(pr);
    } else {
      hi = mid;
      bad = std::move(pr);
    }
  }

  Trajectory tr;
  FoldedState halt;
  if (bad.reached) {
    halt = std::move(bad.s);
    tr.halt_reason = bad.reason;
  } else {
    // The range ended between two samples: the last reachable state is the halt
    // provided some crease got to pi.
    int arg = -1;
    if (max_abs_rho(good.s, &arg) < kPi - 1e-4)
      throw Error(ErrorKind::NoHalt, "folding range ends before any crease reaches pi");
    halt = good.s;
    tr.halt_reason = "crease-at-pi";
  }
  int arg = -1;
  max_abs_rho(halt, &arg);
  halt.halted = true;
  halt.halt_reason = tr.halt_reason;
  halt.halting_crease = arg;
  tr.halting_drive = std::abs(halt.driving_rho);
  tr.halting_crease = arg;
  tr.halting_column = arg >= 0 ? crease_column(p, arg) : -1;

  const int n = std::max(2, states);
  FoldedState flat;
  flat.driving_crease = driving_crease(p);
  flat.rho.assign(p.creases.size(), 0.0);
  place_panels(p, flat);
  tr.states.push_back(flat);
  tr.driving_values.push_back(0.0);
  for (int i = 1; i + 1 < n; ++i) {
    double t = tr.halting_drive * double(i) / double(n - 1);
    FoldedState s = (i == 1) ? propagate(p, -t, opt) : propagate_from(p, tr.states.back(), -t, opt);
    tr.states.push_back(std::move(s));
    tr.driving_values.push_back(t);
  }
  tr.states.push_back(halt);
  tr.driving_values.push_back(tr.halting_drive);
  return tr;
}

// ---------------------------------------------------------------------------
// Clash test

namespace {

using Tri = std::array<Vec3, 3>;

struct ClashContext {
  std::vector<std::array<Tri, 2>> tris;
  std::vector<Vec3> lo, hi;
  std::vector<std::array<int, 4>> face_verts;
  double depth = 0.0;
  double plane_eps = 0.0;
  double margin = 0.0;
};

Tri shrink(const Tri& t, double delta) {
  Vec3 c = (t[0] + t[1] + t[2]) / 3.0;
  Tri out;
  for (int i = 0; i < 3; ++i) {
    Vec3 d = t[std::size_t(i)] - c;
    double n = d.norm();
    out[std::size_t(i)] = n > delta ? c + d * (1.0 - delta / n) : c;
  }
  return out;
}

// Overlap depth of two coplanar triangles by separating axes in 2D.
double coplanar_depth(const Tri& A, const Tri& B, const Vec3& normal) {
  int drop = 0;
  normal.cwiseAbs().maxCoeff(&drop);
  auto proj = [&](const Vec3& v) {
    int i0 = (drop + 1) % 3, i1 = (drop + 2) % 3;
    return Vec2(v[i0], v[i1]);
  };
  std::array<Vec2, 3> a{proj(A[0]), proj(A[1]), proj(A[2])};
  std::array<Vec2, 3> b{proj(B[0]), proj(B[1]), proj(B[2])};
  double depth = std::numeric_limits<double>::infinity();
  for (const auto* T : {&a, &b})
    for (int i = 0; i < 3; ++i) {
      Vec2 e = (*T)[std::size_t((i + 1) % 3)] - (*T)[std::size_t(i)];
      Vec2 n(-e.y(), e.x());
      double len = n.norm();
      if (len <= 0) continue;
      n /= len;
      double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
      for (int k = 0; k < 3; ++k) {
        amin = std::min(amin, n.dot(a[std::size_t(k)]));
        amax = std::max(amax, n.dot(a[std::size_t(k)]));
        bmin = std::min(bmin, n.dot(b[std::size_t(k)]));
        bmax = std::max(bmax, n.dot(b[std::size_t(k)]));
      }
      depth = std::min(depth, std::min(amax, bmax) - std::max(amin, bmin));
    }
  return depth;
}

// Interval of triangle T on the line direction D where it meets the plane with
// signed vertex distances d.
bool plane_interval(const Tri& T, const std::array<double, 3>& d, const Vec3& D, double eps, double& t0, double& t1) {
  t0 = 1e300;
  t1 = -1e300;
  bool any = false;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(d[std::size_t(i)]) <= eps) {
      double t = D.dot(T[std::size_t(i)]);
      t0 = std::min(t0, t);
      t1 = std::max(t1, t);
      any = true;
    }
    int j = (i + 1) % 3;
    double di = d[std::size_t(i)], dj = d[std::size_t(j)];
    if ((di > eps && dj < -eps) || (di < -eps && dj > eps)) {
      Vec3 x = T[std::size_t(i)] + (T[std::size_t(j)] - T[std::size_t(i)]) * (di / (di - dj));
      double t = D.dot(x);
      t0 = std::min(t0, t);
      t1 = std::max(t1, t);
      any = true;
    }
  }
  return any;
}

bool tri_clash(const Tri& A, const Tri& B, double eps, double depth) {
  Vec3 nA = (A[1] - A[0]).cross(A[2] - A[0]);
  Vec3 nB = (B[1] - B[0]).cross(B[2] - B[0]);
  if (nA.norm() <= 0 || nB.norm() <= 0) return false;
  nA.normalize();
  nB.normalize();
  std::array<double, 3> dB{}, dA{};
  for (int i = 0; i < 3; ++i) {
    dB[std::size_t(i)] = nA.dot(B[std::size_t(i)] - A[0]);
    dA[std::size_t(i)] = nB.dot(A[std::size_t(i)] - B[0]);
  }
  auto one_side = [&](const std::array<double, 3>& d) {
    return (d[0] > eps && d[1] > eps && d[2] > eps) || (d[0] < -eps && d[1] < -eps && d[2] < -eps);
  };
  if (one_side(dA) || one_side(dB)) return false;
  auto flat = [&](const std::array<double, 3>& d) {
    return std::abs(d[0]) <= eps && std::abs(d[1]) <= eps && std::abs(d[2]) <= eps;
  };
  if (flat(dA) && flat(dB)) return coplanar_depth(A, B, nA) > depth;
  Vec3 D = nA.cross(nB);
  if (D.norm() < 1e-14) return false;
  D.normalize();
  double a0, a1, b0, b1;
  if (!plane_interval(A, dA, D, eps, a0, a1) || !plane_interval(B, dB, D, eps, b0, b1)) return false;
  return std::min(a1, b1) - std::max(a0, b0) > depth;
}

ClashContext make_context(const CreasePattern& p, const FoldedState& s) {
  ClashContext ctx;
  const double diam = p.diameter();
  ctx.depth = tol::clash_depth * diam;
  ctx.plane_eps = 1e-12 * diam;
  const auto faces = p.faces();
  ctx.face_verts = faces;
  for (const auto& f : faces) {
    Tri t0{s.coords[std::size_t(f[0])], s.coords[std::size_t(f[1])], s.coords[std::size_t(f[2])]};
    Tri t1{s.coords[std::size_t(f[0])], s.coords[std::size_t(f[2])], s.coords[std::size_t(f[3])]};
    ctx.tris.push_back({shrink(t0, ctx.depth), shrink(t1, ctx.depth)});
    Vec3 lo = s.coords[std::size_t(f[0])], hi = lo;
    for (int v : f) {
      lo = lo.cwiseMin(s.coords[std::size_t(v)]);
      hi = hi.cwiseMax(s.coords[std::size_t(v)]);
    }
    ctx.lo.push_back(lo);
    ctx.hi.push_back(hi);
  }
  return ctx;
}

int shared_vertices(const std::array<int, 4>& a, const std::array<int, 4>& b) {
  int n = 0;
  for (int x : a)
    for (int y : b)
      if (x == y) ++n;
  return n;
}

bool faces_clash(const CreasePattern& p, const FoldedState& s, const ClashContext& ctx, int i, int j) {
  const int shared = shared_vertices(ctx.face_verts[std::size_t(i)], ctx.face_verts[std::size_t(j)]);
  if (shared >= 2) {
    // Panels hinged on a common crease only overlap once it is folded flat.
    int a = -1, b = -1;
    for (int x : ctx.face_verts[std::size_t(i)])
      for (int y : ctx.face_verts[std::size_t(j)])
        if (x == y) (a < 0 ? a : b) = x;
    int ci = p.crease_index(a, b);
    return ci >= 0 && std::abs(s.rho[std::size_t(ci)]) >= kPi;
  }
  const double m = ctx.depth;
  for (int k = 0; k < 3; ++k)
    if (ctx.lo[std::size_t(i)][k] > ctx.hi[std::size_t(j)][k] + m || ctx.lo[std::size_t(j)][k] > ctx.hi[std::size_t(i)][k] + m)
      return false;
  for (const auto& A : ctx.tris[std::size_t(i)])
    for (const auto& B : ctx.tris[std::size_t(j)])
      if (tri_clash(A, B, ctx.plane_eps, ctx.depth)) return true;
  return false;
}

}  // namespace

std::vector<std::pair<int, int>> clash_test_serial(const CreasePattern& p, const FoldedState& s) {
  const ClashContext ctx = make_context(p, s);
  const int nf = int(ctx.tris.size());
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < nf; ++i)
    for (int j = i + 1; j < nf; ++j)
      if (faces_clash(p, s, ctx, i, j)) out.emplace_back(i, j);
  return out;
}

std::vector<std::pair<int, int>> clash_test(const CreasePattern& p, const FoldedState& s) {
  const ClashContext ctx = make_context(p, s);
  const int nf = int(ctx.tris.size());
  std::vector<std::vector<std::pair<int, int>>> found(static_cast<std::size_t>(nf));
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < nf; ++i)
    for (int j = i + 1; j < nf; ++j)
      if (faces_clash(p, s, ctx, i, j)) found[std::size_t(i)].emplace_back(i, j);
  std::vector<std::pair<int, int>> out;
  for (auto& v : found) out.insert(out.end(), v.begin(), v.end());
  return out;
}

PolyCurve extract_polylines(const CreasePattern& p, const FoldedState& s, GridAxis axis, int index,
                            bool include_boundary) {
  std::vector<Vec3> pts;
  if (axis == GridAxis::Row) {
    if (index < 0 || index >= p.rows) throw Error(ErrorKind::InvalidArgument, "row index out of range");
    for (int c = include_boundary ? 0 : 1; c < (include_boundary ? p.cols : p.cols - 1); ++c)
      pts.push_back(s.coords[std::size_t(p.vid(index, c))]);
  } else {
    if (index < 0 || index >= p.cols) throw Error(ErrorKind::InvalidArgument, "column index out of range");
    for (int r = include_boundary ? 0 : 1; r < (include_boundary ? p.rows : p.rows - 1); ++r)
      pts.push_back(s.coords[std::size_t(p.vid(r, index))]);
  }
  return PolyCurve::from_3d(pts);
}

void assign_from_state(CreasePattern& p, const FoldedState& s) {
  for (std::size_t i = 0; i < p.creases.size(); ++i) {
    auto& e = p.creases[i];
    if (e.role == CreaseRole::Boundary) {
      e.mv = Assignment::Boundary;
      continue;
    }
    const double r = s.rho[i];
    e.mv = r > 0 ? Assignment::Valley : (r < 0 ? Assignment::Mountain : Assignment::Unassigned);
  }
}

}  // namespace rigidfold
