#include "support.hpp"

#include "rigidfold/errors.hpp"
#include "rigidfold/geometry.hpp"
#include "rigidfold/kinematics.hpp"

#include <doctest.h>

#include <algorithm>

using namespace rigidfold;
using rigidfold::test::deg;
using rigidfold::test::uniform;

namespace {

// Independent evaluation of the closed-form fold magnitudes of the halting
// vertex (straight column, sectors a1, a2, pi - a2, pi - a1).
std::pair<double, double> eq_fold(double a1, double a2, double b) {
  const double x = (std::cos(a2) * std::cos(b) - std::cos(a1)) / (std::sin(a2) * std::sin(b));
  const double y = (std::cos(a1) * std::cos(b) - std::cos(a2)) / (std::sin(a1) * std::sin(b));
  return {2 * std::acos(x), 2 * std::acos(y)};
}

double residual_norm(std::pair<double, double> r) { return std::max(std::abs(r.first), std::abs(r.second)); }

double best_branch_residual(const VertexAngles& prev, const VertexAngles& next, double bi, double bn, double th) {
  double best = 1e300;
  for (const Branch& b : branch_order()) {
    try {
      best = std::min(best, residual_norm(row_transfer_residual(prev, next, bi, bn, th, b)));
    } catch (const Error&) {
    }
  }
  return best;
}

struct SolvedCase {
  VertexAngles prev;
  double bi, bn, th;
  NextVertex next;
};

// Random flat-foldable predecessors and turn data with a solution.
std::vector<SolvedCase> solved_cases(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SolvedCase> out;
  for (int k = 0; k < 50 * count && int(out.size()) < count; ++k) {
    const double a = uniform(rng, 0.3, kPi - 0.3), b = uniform(rng, 0.3, kPi - 0.3);
    SolvedCase c{{a, b, kPi - a, kPi - b}, uniform(rng, 0.5, kPi - 0.5), uniform(rng, 0.5, kPi - 0.5),
                 uniform(rng, -0.6, 0.6), {}};
    try {
      c.next = solve_next_vertex(c.prev, c.bi, c.bn, c.th);
    } catch (const Error&) {
      continue;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

TEST_SUITE("kinematics") {
  TEST_CASE("closed-form fold magnitudes") {
    const auto [p2, p4] = fold_from_beta(1.1, 1.1, 0.9);
    CHECK(p2 == doctest::Approx(p4).epsilon(1e-15));
    const auto [q2, q4] = fold_from_beta(kPi / 2, kPi / 2, kPi / 2);
    CHECK(q2 == doctest::Approx(kPi));
    CHECK(q4 == doctest::Approx(kPi));
    const auto [r2, r4] = fold_from_beta(deg(70), deg(60), deg(80));
    const auto [e2, e4] = eq_fold(deg(70), deg(60), deg(80));
    CHECK(std::abs(r2 - e2) < 1e-12);
    CHECK(std::abs(r4 - e4) < 1e-12);
    // Swapping the sector angles swaps the fold magnitudes exactly.
    std::mt19937_64 rng(11);
    for (int k = 0; k < 100; ++k) {
      const double a = uniform(rng, 0.5, 2.5), b = uniform(rng, 0.5, 2.5), c = uniform(rng, 0.3, 2.8);
      try {
        const auto x = fold_from_beta(a, b, c), y = fold_from_beta(b, a, c);
        CHECK(x.first == y.second);
        CHECK(x.second == y.first);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutOfRange);
      }
    }
    CHECK_THROWS_AS(fold_from_beta(0.2, 2.9, 0.3), Error);
  }

  TEST_CASE("halting vertex design") {
    const double rho4 = 5 * kPi / 6;
    const auto [a1, a2] = solve_first_vertex(kPi / 2, rho4);
    CHECK(a1 == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(a2 == doctest::Approx(std::acos(-std::cos(rho4 / 2))).epsilon(1e-12));

    const Partition datum = partition_uniform(builtin_curve("fig4-spiralish"), 9);
    const double b1 = datum.turn_angles[0];
    const auto [f1, f2] = solve_first_vertex(b1, rho4);
    const auto [r2, r4] = fold_from_beta(f1, f2, b1);
    CHECK(std::abs(r2 - kPi) < 1e-8);
    CHECK(std::abs(r4 - rho4) < 1e-8);

    CHECK_THROWS_AS(solve_first_vertex(1e-12, kPi / 2), Error);
  }

  TEST_CASE("solved next vertices satisfy the transfer equations") {
    const std::vector<SolvedCase> cases = solved_cases(1000, 5);
    CHECK(cases.size() >= 500);
    double worst = 0;
    for (const SolvedCase& c : cases) {
      const VertexAngles nx = c.next.angles();
      worst = std::max(worst, residual_norm(row_transfer_residual(c.prev, nx, c.bi, c.bn, c.th, c.next.branch)));
      CHECK(nx.developability_residual() < tol::developability);
      CHECK(nx.flat_foldability_residual() < tol::flat_foldability);
    }
    CHECK(worst < tol::transfer_residual);
  }

  TEST_CASE("transfer residuals react to sector perturbations") {
    const std::vector<SolvedCase> cases = solved_cases(100, 17);
    REQUIRE(cases.size() == 100);
    int detected = 0;
    for (std::size_t k = 0; k < cases.size(); ++k) {
      const SolvedCase& c = cases[k];
      VertexAngles nx = c.next.angles();
      const int which = int(k % 2);
      nx[which] += 1e-3;
      nx[which + 2] -= 1e-3;  // keep the vertex developable
      try {
        if (residual_norm(row_transfer_residual(c.prev, nx, c.bi, c.bn, c.th, c.next.branch)) > 1e-5) ++detected;
      } catch (const Error&) {
        ++detected;  // left the feasible range altogether
      }
    }
    CHECK(detected == 100);
  }

  TEST_CASE("first inner vertex of the space datum") {
    const ParallelDesign& d = rigidfold::test::fig5_design();
    const Partition& p = d.datum_partition;
    const VertexAngles v1 = d.pattern.sectors(1, 1), v2 = d.pattern.sectors(1, 2);
    const double r = best_branch_residual(v1, v2, p.turn_angles[0], p.turn_angles[1], p.dihedrals[0]);
    CHECK(r < tol::transfer_residual);
    const NextVertex nx = solve_next_vertex(v1, p.turn_angles[0], p.turn_angles[1], p.dihedrals[0]);
    CHECK(residual_norm(row_transfer_residual(v1, nx.angles(), p.turn_angles[0], p.turn_angles[1], p.dihedrals[0],
                                              nx.branch)) < tol::transfer_residual);
  }

  TEST_CASE("repeated vertex for a planar constant-turn row") {
    // theta = 0 and equal turns: the next vertex repeats the previous one,
    // read as (alpha_{4i+2}, alpha_{4i+1}) = (alpha_{4i-3}, alpha_{4i-2}).
    std::mt19937_64 rng(23);
    int tested = 0;
    for (int k = 0; k < 200 && tested < 20; ++k) {
      const double a = uniform(rng, 0.4, kPi - 0.4), b = uniform(rng, 0.4, kPi - 0.4), beta = uniform(rng, 0.5, 2.6);
      const VertexAngles prev{a, b, kPi - a, kPi - b};
      if (best_branch_residual(prev, {b, a, kPi - b, kPi - a}, beta, beta, 0.0) > 1.0) continue;  // not foldable
      ++tested;
      const NextVertex nx = solve_next_vertex(prev, beta, beta, 0.0);
      CHECK(std::abs(nx.alpha1 - b) < 1e-9);
      CHECK(std::abs(nx.alpha2 - a) < 1e-9);
    }
    CHECK(tested == 20);
  }

  TEST_CASE("planar transfer") {
    // Equal turn angles repeat the vertex: the ratio equation reads the next
    // pair in the order (alpha_{4i+2}, alpha_{4i+1}).
    const PlanarTransfer same = planar_transfer(1.2, 1.9, 1.0, 1.0);
    CHECK(same.alpha2 == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(same.alpha1 == doctest::Approx(1.9).epsilon(1e-12));
    CHECK(same.theta == 0.0);

    std::mt19937_64 rng(29);
    int flips = 0, solved = 0;
    for (int k = 0; k < 2000; ++k) {
      const double a = uniform(rng, 0.2, kPi - 0.2), b = uniform(rng, 0.2, kPi - 0.2);
      const double bi = uniform(rng, 0.3, kPi - 0.3), bn = uniform(rng, 0.3, kPi - 0.3);
      PlanarTransfer t;
      try {
        t = planar_transfer(a, b, bi, bn);
      } catch (const Error&) {
        continue;
      }
      ++solved;
      CHECK(std::abs(planar_ratio(a, b, bi) - planar_ratio(t.alpha2, t.alpha1, bn)) < 1e-9);
      const double sign = (a + b - kPi) * (t.alpha1 + t.alpha2 - kPi);
      CHECK(t.theta == (sign < 0 ? kPi : 0.0));
      if (sign < 0) ++flips;
      if (t.theta == 0.0 && std::abs(planar_ratio(a, b, bi)) < 1.0 - 1e-9) {
        // A foldable collapsed configuration satisfies the general equations too.
        const VertexAngles prev{a, b, kPi - b, kPi - a};
        const VertexAngles next{t.alpha1, t.alpha2, kPi - t.alpha2, kPi - t.alpha1};
        CHECK(best_branch_residual(prev, next, bi, bn, 0.0) < tol::transfer_residual);
      }
    }
    CHECK(solved > 500);
    CHECK(flips > 0);
  }

  TEST_CASE("single-vertex rigid folding") {
    const VertexAngles v{1.0, 1.3, kPi - 1.0, kPi - 1.3};
    const FoldAngles flat = degree4_propagate(v, 0, 0.0, 0);
    for (double r : flat) CHECK(std::abs(r) < 1e-15);

    std::mt19937_64 rng(31);
    double worst_closure = 0, worst_sym = 0;
    for (int k = 0; k < 100; ++k) {
      const double a = uniform(rng, 0.2, kPi - 0.2), b = uniform(rng, 0.2, kPi - 0.2);
      const VertexAngles ff{a, b, kPi - a, kPi - b};
      const double drive = uniform(rng, -3.0, 3.0);
      for (int mode = 0; mode < 2; ++mode) {
        const FoldAngles r = degree4_propagate(ff, int(k % 4), drive, mode);
        worst_closure = std::max(worst_closure, loop_closure_residual(ff, r));
        worst_sym = std::max({worst_sym, std::abs(std::abs(r[0]) - std::abs(r[2])),
                              std::abs(std::abs(r[1]) - std::abs(r[3]))});
      }
    }
    CHECK(worst_closure < tol::closure);
    CHECK(worst_sym < 1e-9);

    // Generic developable vertices close as well.
    worst_closure = 0;
    for (int k = 0; k < 200; ++k) {
      double s[4];
      double sum = 0;
      for (double& x : s) sum += (x = uniform(rng, 0.3, 1.0));
      const VertexAngles g{s[0] * 2 * kPi / sum, s[1] * 2 * kPi / sum, s[2] * 2 * kPi / sum, s[3] * 2 * kPi / sum};
      if (std::max({g[0], g[1], g[2], g[3]}) >= kPi - 0.05) continue;
      try {
        const FoldAngles r = degree4_propagate(g, 0, uniform(rng, -1.0, 1.0), int(k % 2));
        worst_closure = std::max(worst_closure, loop_closure_residual(g, r));
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutOfRange);
      }
    }
    CHECK(worst_closure < tol::closure);
  }

  TEST_CASE("rigid folding reproduces the closed-form fold magnitudes") {
    // 1000 random straight-column vertices: driving the right row crease to
    // rho4 makes the left one fold to rho2 on one assembly branch.
    std::mt19937_64 rng(37);
    int tested = 0;
    double worst = 0;
    while (tested < 1000) {
      const double a1 = uniform(rng, 0.2, kPi - 0.2), a2 = uniform(rng, 0.2, kPi - 0.2), b = uniform(rng, 0.2, 3.0);
      std::pair<double, double> f;
      try {
        f = fold_from_beta(a1, a2, b);
      } catch (const Error&) {
        continue;
      }
      if (f.first > kPi - 1e-3 || f.second > kPi - 1e-3 || f.second < 1e-3) continue;
      ++tested;
      const VertexAngles v{a1, a2, kPi - a2, kPi - a1};
      double best = 1e300;
      for (double sgn : {-1.0, 1.0})
        for (int mode = 0; mode < 2; ++mode) {
          const FoldAngles r = degree4_propagate(v, 0, sgn * f.second, mode);
          best = std::min(best, std::abs(std::abs(r[2]) - f.first));
        }
      worst = std::max(worst, best);
    }
    CHECK(worst < tol::closed_form);

    // Halting vertex: driving the right crease to rho4 puts the left one at pi.
    const auto [a1, a2] = solve_first_vertex(1.9, 5 * kPi / 6);
    const VertexAngles h{a1, a2, kPi - a2, kPi - a1};
    double best = 1e300;
    for (int mode = 0; mode < 2; ++mode)
      best = std::min(best, std::abs(std::abs(degree4_propagate(h, 0, -5 * kPi / 6, mode)[2]) - kPi));
    CHECK(best < tol::closed_form);
  }
}
