// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all
// criteria pass. Criteria cover the reference configurations, randomized
// property checks of both families, rejection of closed curves, the
// independent kinematic oracles, corruption detection and serializer round
// trips.

#include "rigidfold/errors.hpp"
#include "rigidfold/foldsim.hpp"
#include "rigidfold/geometry.hpp"
#include "rigidfold/kinematics.hpp"
#include "rigidfold/orthodiagonal.hpp"
#include "rigidfold/parallel_repeating.hpp"
#include "rigidfold/pattern_io.hpp"
#include "rigidfold/pipeline.hpp"
#include "rigidfold/random_design.hpp"
#include "rigidfold/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace rigidfold;

namespace {

double deg(double d) { return d * kPi / 180.0; }

double uniform(std::mt19937_64& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const CheckResult* find_check(const std::vector<CheckResult>& checks, const std::string& id) {
  for (const CheckResult& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

// --- 1: admissibility and staircases of the parabola ----------------------------
Outcome parabola_staircases() {
  const PolyCurve f = builtin_curve("fig3-parabola");
  const AffineParams aff(deg(70), deg(60));
  const bool adm = is_admissible(f, aff).admissible;
  const Partition s16 = staircase(f, aff, 16), s8 = staircase(f, aff, 8);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < s16.points.size(); ++i) {
    // Corner angle of the staircase measured in the original (unsheared) plane.
    const Vec3 a = s16.points[i - 1] - s16.points[i], b = s16.points[i + 1] - s16.points[i];
    worst = std::max(worst, std::abs(std::acos(a.normalized().dot(b.normalized())) - deg(60)));
  }
  const double h16 = hausdorff(s16.points, f.samples), h8 = hausdorff(s8.points, f.samples);
  return {adm && worst <= 1e-9 && h16 < h8 && s16.n() == 16,
          std::string("admissible ") + (adm ? "yes" : "no") + ", corner error " + num(worst) + " rad, H16 " + num(h16) +
              " < H8 " + num(h8)};
}

// --- 2: single row reproduces the space datum ---------------------------------------
Outcome single_row() {
  const DemoResult r = run_demo("fig4");
  if (!r.ok || !r.design || !r.design->pattern || !r.design->halt) return {false, "design failed"};
  const ParallelDesign d = build_pattern(to_parallel_spec(parse_design_spec(demo_spec("fig4"))));
  const PolyCurve row = extract_polylines(*r.design->pattern, *r.design->halt, GridAxis::Row, 1, true);
  const CheckResult c = check_reproduction(row.samples, d.datum_partition);
  return {c.pass && c.tolerance <= 1e-6 && d.datum_partition.n() == 9,
          "worst deviation of l, beta, theta " + num(c.residual) + " (tol " + num(c.tolerance) + ")"};
}

// --- 3: parallel repeating reference design ---------------------------------------------
Outcome parallel_reference() {
  const DemoResult r = run_demo("fig5");
  if (!r.design || !r.design->pattern || !r.design->halt) return {false, "design failed"};
  const CreasePattern& p = *r.design->pattern;
  const DesignReport& rep = r.design->report;
  const CheckResult closure = check_closure(p, *r.design->halt);
  // Budget: twice the distance of the nine-corner staircase to the target.
  const ParallelDesign d = build_pattern(to_parallel_spec(parse_design_spec(demo_spec("fig5"))));
  const double eps = 2.0 * d.report.eps2;
  const bool halt_ok = rep.halting_column_measured == p.halting_column;
  const bool ok = closure.pass && closure.residual < 1e-9 && halt_ok && rep.eps1_folded >= 0 &&
                  rep.eps2_folded >= 0 && rep.eps1_folded <= eps && rep.eps2_folded <= eps && r.ok;
  return {ok, "closure " + num(closure.residual) + ", halting column " + std::to_string(rep.halting_column_measured) +
                  " (target " + std::to_string(p.halting_column) + "), eps1 " + num(rep.eps1_folded) + ", eps2 " +
                  num(rep.eps2_folded) + " <= " + num(eps)};
}

// --- 4: orthodiagonal reference design ---------------------------------------------------
Outcome ortho_reference() {
  const DesignSpecFile spec = parse_design_spec(demo_spec("fig7"));
  OrthoDesignSpec s = to_ortho_spec(spec);
  const OrthoDesign d = build_ortho_pattern(s);
  const double a10 = d.grid.alpha[0][0];
  if (std::abs(d.alpha11 - (kPi / 4 + a10 / 2)) > 1e-15 || std::abs(d.theta - deg(30)) > 1e-15)
    return {false, "unexpected design parameters"};
  if (!d.trajectory) return {false, "no motion"};
  const FoldedState& h = d.trajectory->states.back();
  double worst = 0.0;
  bool ok = d.trajectory->halting_column == 1;
  for (int r = 1; r + 1 < d.pattern.rows; ++r) {
    const CheckResult c = check_coplanarity(d.pattern, h, GridAxis::Row, r);
    ok = ok && c.pass;
    worst = std::max(worst, c.residual);
  }
  for (int c = 1; c + 1 < d.pattern.cols; ++c) {
    const CheckResult k = check_coplanarity(d.pattern, h, GridAxis::Column, c);
    ok = ok && k.pass;
    worst = std::max(worst, k.residual);
  }
  return {ok && worst <= 1e-8, "halting column " + std::to_string(d.trajectory->halting_column) +
                                   ", worst row/column plane residual " + num(worst) + " x diameter"};
}

// --- 5: random parallel repeating designs ---------------------------------------------------
Outcome random_parallel() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240611);
  const char* ids[] = {"developability", "coplanarity-columns", "xi", "row-fold-magnitude", "closure"};
  std::vector<double> worst(5, 0.0);
  int passed = 0;
  for (int k = 0; k < 100; ++k) {
    const ParallelDesign d = random_parallel_design(rng);
    VerifyOptions opt;
    opt.driving_samples = 8;
    const std::vector<CheckResult> checks = verify_pattern(d.pattern, opt);
    bool ok = true;
    for (int i = 0; i < 5; ++i) {
      const CheckResult* c = find_check(checks, ids[i]);
      ok = ok && c && c->pass;
      if (c) worst[std::size_t(i)] = std::max(worst[std::size_t(i)], c->residual);
    }
    passed += ok;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string detail = std::to_string(passed) + "/100 in " + num(secs) + " s; worst";
  for (int i = 0; i < 5; ++i) detail += std::string(" ") + ids[i] + " " + num(worst[std::size_t(i)]);
  return {passed == 100 && secs <= 600, detail};
}

// --- 6: orthodiagonal grids ------------------------------------------------------------------
Outcome ortho_grids() {
  std::mt19937_64 rng(77);
  int separable = 0;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const OrthoAngleGrid g = random_ortho_grid(rng, 2 + int(rng() % 10), 2 + int(rng() % 10));
    const double r = g.separability_residual();
    worst = std::max(worst, r);
    separable += r <= 1e-10;
  }

  // Datum made of two tangent circular arcs, both turning left, the second
  // with twice the radius, at equal arc speed; partition points fall on
  // samples, so every vertex inside an arc sees the same chord and turn.
  const double r1 = 6.0, w1 = 0.3, r2 = 12.0, w2 = 0.15;
  const Vec2 c1(r1, 0.0);  // start at the origin heading down
  const double end1 = kPi + 4 * w1;
  const Vec2 p4 = c1 + r1 * Vec2(std::cos(end1), std::sin(end1));
  const Vec2 c2 = c1 + (r1 - r2) * (p4 - c1).normalized();
  auto datum_at = [&](double t) {
    if (t <= 4) {
      const double a = kPi + w1 * t;
      return Vec3(c1.x() + r1 * std::cos(a), c1.y() + r1 * std::sin(a), 0);
    }
    const double a = end1 + w2 * (t - 4);
    return Vec3(c2.x() + r2 * std::cos(a), c2.y() + r2 * std::sin(a), 0);
  };
  OrthoDesignSpec s;
  s.datum = PolyCurve::sample(2, datum_at, 0.0, 9.0, 9 * 300 + 1);
  s.target = builtin_curve("fig7-tlnt");
  s.n = 8;
  s.m = 9;
  s.tube = 0.0;
  s.simulate = false;
  const OrthoDesign d = build_ortho_pattern(s);
  // Vertices 1..3 lie inside the first arc, 5..8 inside the second.
  double spread = 0.0;
  auto piece = [&](int from, int to) {
    for (int i = from + 1; i <= to; ++i)
      for (int j = 0; j < 2; ++j)
        spread = std::max(spread, std::abs(d.grid.alpha[std::size_t(i - 1)][std::size_t(j)] -
                                           d.grid.alpha[std::size_t(from - 1)][std::size_t(j)]));
  };
  piece(1, 3);
  piece(5, 8);
  const double jump = std::abs(d.grid.alpha[0][0] - d.grid.alpha[4][0]);
  return {separable == 100 && spread < 1e-9 && jump > 1e-3,
          std::to_string(separable) + "/100 grids separable (worst " + num(worst) +
              "), per-arc angle spread " + num(spread) + " rad"};
}

// --- 7: closed curves ------------------------------------------------------------------------------
Outcome closed_curves() {
  int thrown = 0, rejected = 0;
  std::size_t admissible = 0;
  for (const std::string name : {"circle", "ellipse", "rounded-square"}) {
    const PolyCurve flagged = builtin_curve(name);
    try {
      search_theta(flagged, deg(60));
    } catch (const Error& e) {
      thrown += e.kind() == ErrorKind::ClosedCurve;
    }
    // The same loop sampled as an open polyline: no rotation/shear pair
    // makes it monotone.
    PolyCurve loop = flagged;
    loop.closed = false;
    loop.samples.push_back(loop.samples.front());
    std::size_t found = 0;
    for (int x = 1; x <= 179; ++x) found += search_theta(loop, deg(x), 720).size();
    admissible += found;
    rejected += found == 0;
  }
  return {thrown == 3 && rejected == 3, std::to_string(thrown) + "/3 flagged curves refused, " +
                                            std::to_string(rejected) + "/3 loops without any of 720 x 179 pairs (" +
                                            std::to_string(admissible) + " admissible)"};
}

// --- 8: kinematic oracles ------------------------------------------------------------------------
// Closed-form fold magnitudes of the straight-column vertex (a1, a2, pi - a2, pi - a1).
std::pair<double, double> closed_form_folds(double a1, double a2, double b) {
  const double x = (std::cos(a2) * std::cos(b) - std::cos(a1)) / (std::sin(a2) * std::sin(b));
  const double y = (std::cos(a1) * std::cos(b) - std::cos(a2)) / (std::sin(a1) * std::sin(b));
  return {2 * std::acos(x), 2 * std::acos(y)};
}

double residual_norm(std::pair<double, double> r) { return std::max(std::abs(r.first), std::abs(r.second)); }

Outcome oracles() {
  std::mt19937_64 rng(8);
  // Degree-4 propagation against the closed form.
  int tested = 0;
  double worst_d4 = 0.0;
  while (tested < 1000) {
    const double a1 = uniform(rng, 0.2, kPi - 0.2), a2 = uniform(rng, 0.2, kPi - 0.2), b = uniform(rng, 0.2, 3.0);
    const double x = (std::cos(a2) * std::cos(b) - std::cos(a1)) / (std::sin(a2) * std::sin(b));
    const double y = (std::cos(a1) * std::cos(b) - std::cos(a2)) / (std::sin(a1) * std::sin(b));
    if (std::abs(x) >= 1 || std::abs(y) >= 1) continue;
    const auto [rho2, rho4] = closed_form_folds(a1, a2, b);
    if (rho2 > kPi - 1e-3 || rho4 > kPi - 1e-3 || rho4 < 1e-3) continue;
    ++tested;
    const VertexAngles v{a1, a2, kPi - a2, kPi - a1};
    double best = 1e300;
    for (double sgn : {-1.0, 1.0})
      for (int mode = 0; mode < 2; ++mode)
        best = std::min(best, std::abs(std::abs(degree4_propagate(v, 0, sgn * rho4, mode)[2]) - rho2));
    worst_d4 = std::max(worst_d4, best);
  }

  // Next-vertex solutions against the transfer residual, then finite
  // perturbations of the solution.
  struct Case {
    VertexAngles prev;
    double bi, bn, th;
    NextVertex next;
  };
  std::vector<Case> cases;
  while (cases.size() < 1000) {
    const double a = uniform(rng, 0.3, kPi - 0.3), b = uniform(rng, 0.3, kPi - 0.3);
    Case c{{a, b, kPi - a, kPi - b}, uniform(rng, 0.5, kPi - 0.5), uniform(rng, 0.5, kPi - 0.5),
           uniform(rng, -0.6, 0.6), {}};
    try {
      c.next = solve_next_vertex(c.prev, c.bi, c.bn, c.th);
    } catch (const Error&) {
      continue;
    }
    cases.push_back(c);
  }
  double worst_tr = 0.0;
  for (const Case& c : cases)
    worst_tr = std::max(worst_tr, residual_norm(row_transfer_residual(c.prev, c.next.angles(), c.bi, c.bn, c.th,
                                                                      c.next.branch)));
  int detected = 0;
  for (std::size_t k = 0; k < 100; ++k) {
    const Case& c = cases[k];
    VertexAngles nx = c.next.angles();
    const int which = int(k % 2);
    nx[which] += 1e-3;
    nx[which + 2] -= 1e-3;
    try {
      detected += residual_norm(row_transfer_residual(c.prev, nx, c.bi, c.bn, c.th, c.next.branch)) > 1e-5;
    } catch (const Error&) {
      ++detected;
    }
  }
  return {worst_d4 < 1e-9 && worst_tr < 1e-9 && detected == 100,
          "degree-4 vs closed form " + num(worst_d4) + " (1000 vertices), transfer residual " + num(worst_tr) +
              " (1000 solves), perturbations detected " + std::to_string(detected) + "/100"};
}

// --- 9: corruption detection -----------------------------------------------------------------------
Outcome corruption() {
  const CreasePattern base[] = {build_pattern(to_parallel_spec(parse_design_spec(demo_spec("fig5")))).pattern,
                                build_ortho_pattern(to_ortho_spec(parse_design_spec(demo_spec("fig7")))).pattern};
  std::mt19937_64 rng(9);
  int detected = 0;
  for (int k = 0; k < 100; ++k) {
    CreasePattern p = base[k % 2];
    const int r = 1 + int(rng() % std::uint64_t(p.inner_rows()));
    const int c = 1 + int(rng() % std::uint64_t(p.inner_cols()));
    corrupt_sector(p, r, c, int(rng() % 4), 1e-3);
    VerifyOptions opt;
    opt.states = 16;
    const std::vector<CheckResult> checks = verify_pattern(p, opt);
    detected += std::any_of(checks.begin(), checks.end(), [](const CheckResult& x) { return !x.pass; });
  }
  return {detected == 100, std::to_string(detected) + "/100 corrupted patterns fail verification"};
}

// --- 10: serializer round trips ---------------------------------------------------------------------
Outcome round_trips() {
  int total = 0, identical = 0;
  for (const std::string& name : demo_names()) {
    const DemoResult r = run_demo(name);
    for (const auto& [file, text] : r.files) {
      const bool fold = file.size() > 5 && file.substr(file.size() - 5) == ".fold";
      const bool svg = file.size() > 4 && file.substr(file.size() - 4) == ".svg" && name != "fig3";
      if (!fold && !svg) continue;
      ++total;
      if (fold) {
        const ImportedFold im = import_fold(text);
        identical += export_fold(im.pattern, im.state ? &*im.state : nullptr) == text;
      } else {
        identical += export_svg(import_svg(text)) == text;
      }
    }
  }
  return {total > 0 && identical == total,
          std::to_string(identical) + "/" + std::to_string(total) + " demo FOLD/SVG files reproduced byte for byte"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"parabola admissibility and staircases", parabola_staircases},
      {"single row reproduces the space datum", single_row},
      {"parallel repeating reference design", parallel_reference},
      {"orthodiagonal reference design", ortho_reference},
      {"100 random parallel repeating designs", random_parallel},
      {"orthodiagonal angle grids", ortho_grids},
      {"closed curves are rejected", closed_curves},
      {"kinematic oracles", oracles},
      {"sector corruption is detected", corruption},
      {"FOLD and SVG round trips", round_trips},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
