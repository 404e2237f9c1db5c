#include "support.hpp"

#include "rigidfold/design.hpp"
#include "rigidfold/errors.hpp"
#include "rigidfold/foldsim.hpp"
#include "rigidfold/verify.hpp"

#include <doctest.h>

#include <algorithm>

using namespace rigidfold;
using rigidfold::test::deg;
using rigidfold::test::uniform;

namespace {

std::vector<Vec3> lift(const Mat2& m, const std::vector<Vec3>& pts) {
  std::vector<Vec3> out;
  for (const Vec3& p : pts) {
    const Vec2 q = m * p.head<2>();
    out.emplace_back(q.x(), q.y(), 0.0);
  }
  return out;
}

const CheckResult& find_check(const std::vector<CheckResult>& checks, const std::string& id) {
  const auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.id == id; });
  REQUIRE(it != checks.end());
  return *it;
}

}  // namespace

TEST_SUITE("parallel_repeating") {
  TEST_CASE("row design of a planar constant-turn datum repeats from the second vertex") {
    // 7 * 300 + 1 samples: the partition points are samples, exactly on the circle.
    const PolyCurve arc = PolyCurve::sample(3, [](double t) { return Vec3(std::cos(t), std::sin(t), 0); }, 0, 2.5,
                                            2101);
    const Partition p = partition_uniform(arc, 6);
    for (double t : p.dihedrals) CHECK((std::abs(t) < 1e-9 || std::abs(t - 2 * kPi) < 1e-9));
    const RowDesign row = design_row(p, 5 * kPi / 6);
    REQUIRE(row.vertices.size() == 6);
    for (std::size_t i = 2; i < row.vertices.size(); ++i)
      for (int k = 0; k < 4; ++k) CHECK(std::abs(row.vertices[i][k] - row.vertices[1][k]) < 1e-9);
  }

  TEST_CASE("row design of the space datum") {
    const Partition p = partition_uniform(builtin_curve("fig4-spiralish"), 9);
    const RowDesign row = design_row(p, 5 * kPi / 6);
    REQUIRE(row.vertices.size() == 9);  // 36 sector angles
    for (std::size_t i = 0; i < row.vertices.size(); ++i) {
      CHECK(row.vertices[i].developability_residual() < tol::developability);
      for (int k = 0; k < 4; ++k) {
        CHECK(row.vertices[i][k] > 0.0);
        CHECK(row.vertices[i][k] < kPi);
      }
      if (i > 0) CHECK(row.vertices[i].flat_foldability_residual() < tol::flat_foldability);
    }
    // Halting vertex: the left row crease folds to pi when the right one is at rho4.
    const auto [r2, r4] = fold_from_beta(row.vertices[0][0], row.vertices[0][1], p.turn_angles[0]);
    CHECK(std::abs(r2 - kPi) < tol::closed_form);
    CHECK(std::abs(r4 - 5 * kPi / 6) < tol::closed_form);
    // Every later vertex satisfies the transfer equations on its logged branch.
    for (std::size_t i = 1; i < row.vertices.size(); ++i) {
      const auto [e1, e2] = row_transfer_residual(row.vertices[i - 1], row.vertices[i], p.turn_angles[i - 1],
                                                  p.turn_angles[i], p.dihedrals[i - 1], row.branches[i - 1]);
      CHECK(std::max(std::abs(e1), std::abs(e2)) < tol::transfer_residual);
    }
  }

  TEST_CASE("single-row pattern folds into the datum polyline") {
    const ParallelDesign& d = rigidfold::test::fig4_design();
    REQUIRE(d.trajectory);
    CHECK(d.pattern.inner_rows() == 1);
    CHECK(d.pattern.inner_cols() == 9);
    const FoldedState& halt = d.trajectory->states.back();
    const PolyCurve row = extract_polylines(d.pattern, halt, GridAxis::Row, 1, true);
    const CheckResult c = check_reproduction(row.samples, d.datum_partition);
    INFO(c.detail);
    CHECK(c.pass);
  }

  TEST_CASE("a vanishing halting fold has no halting vertex") {
    // The closed form degenerates (alpha2 -> pi) as rho4 -> 0; the failure
    // names the first vertex.
    const Partition p = partition_uniform(builtin_curve("fig4-spiralish"), 9);
    try {
      design_row(p, 1e-9);
      FAIL("expected NoSolution");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NoSolution);
      CHECK(e.index() == 1);
    }
  }

  TEST_CASE("column angle recurrence") {
    CHECK(xi_recurrence(1.1, 0.9, 2.0, 0.9, 2.0) == doctest::Approx(1.1).epsilon(1e-12));
    const double r = xi_recurrence(0.7, kPi / 2, kPi / 2, kPi / 2, kPi / 2);
    CHECK(std::cos(r) == doctest::Approx(std::cos(0.7)).epsilon(1e-12));
    CHECK_THROWS_AS(xi_recurrence(3.0, 0.3, 0.3, kPi / 2, kPi / 2), Error);
  }

  TEST_CASE("column plane angles follow the closed form") {
    const ParallelDesign& d = rigidfold::test::fig5_design();
    const ColumnAngles a = column_angles(d.row.vertices);
    REQUIRE(a.phi.size() == d.row.vertices.size() - 1);
    CHECK(a.xi[0] == doctest::Approx(std::abs(2 * d.row.vertices[0][1] - kPi)));
    for (std::size_t i = 0; i < a.phi.size(); ++i) {
      const double ur = d.row.vertices[i][0], ul = d.row.vertices[i + 1][1];
      const double c =
          -std::cos(a.eta1[i]) * std::cos(a.eta2[i]) - std::sin(a.eta1[i]) * std::sin(a.eta2[i]) * std::cos(ur + ul);
      CHECK(std::cos(a.phi[i]) == doctest::Approx(c).epsilon(1e-12));
      CHECK(a.k1[i] == doctest::Approx(std::sin(ur) / std::sin(ul)).epsilon(1e-14));
    }
  }

  TEST_CASE("repeated vertices keep the column curve") {
    const std::vector<VertexAngles> row(4, VertexAngles{1.2, 1.9, kPi - 1.2, kPi - 1.9});
    const PolyCurve f = builtin_curve("fig5-exp");
    // Supplementary successors keep the scale factors at one.
    std::vector<VertexAngles> alt{row[0]};
    for (int i = 1; i < 4; ++i) {
      const VertexAngles& v = alt.back();
      alt.push_back({kPi - v[3], v[0], v[3], kPi - v[0]});
    }
    const ColumnProfile prof = column_curves(f, deg(73), alt);
    for (std::size_t i = 0; i < prof.k1.size(); ++i) {
      CHECK(prof.k1[i] == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(prof.k2[i] == doctest::Approx(1.0).epsilon(1e-14));
    }
    for (const Mat2& m : prof.maps) CHECK((m - Mat2::Identity()).norm() < 1e-12);
  }

  TEST_CASE("column curves are realised by the folded columns") {
    const ParallelDesign& d = rigidfold::test::fig5_design();
    REQUIRE(d.trajectory);
    const FoldedState& halt = d.trajectory->states.back();
    for (int c = 1; c <= d.pattern.inner_cols(); ++c) {
      const std::vector<Vec3> expect = lift(d.profile.maps[std::size_t(c - 1)], d.staircase.points);
      const CheckResult r = check_surface_assembly(d.pattern, halt, GridAxis::Column, c, expect, 0);
      INFO("column ", c, ": ", r.detail);
      CHECK(r.pass);
    }
  }

  TEST_CASE("smallest pattern") {
    ParallelDesignSpec s;
    s.datum = builtin_curve("fig4-spiralish");
    s.target = builtin_curve("fig5-exp");
    s.theta = deg(73);
    s.n_row = 1;
    s.n_col = 1;
    const ParallelDesign d = build_pattern(s);
    CHECK(d.pattern.rows == 3);
    CHECK(d.pattern.cols == 3);
    CHECK_FALSE(find_crease_crossing(d.pattern).has_value());
    CHECK(d.report.ok);
  }

  TEST_CASE("reference design") {
    const ParallelDesign& d = rigidfold::test::fig5_design();
    CHECK(d.pattern.inner_cols() == 9);
    CHECK(d.pattern.inner_rows() == 9);
    CHECK(d.pattern.halting_column == 1);
    CHECK(d.report.ok);
    CHECK(d.report.eps1_folded >= 0.0);
    CHECK(d.report.eps2_folded >= 0.0);
    ParallelDesign copy = d;
    const std::vector<CheckResult> checks = verify_design(copy);
    for (const CheckResult& c : checks) {
      INFO(c.id, ": ", c.detail);
      CHECK(c.pass);
    }
    for (const char* id : {"developability", "flat-foldability", "coplanarity-columns", "row-fold-magnitude", "xi",
                           "phi", "halting-column", "closure", "isometry", "surface-assembly"})
      CHECK(find_check(checks, id).pass);
  }

  TEST_CASE("oversized target curve makes the layout overlap") {
    ParallelDesignSpec s;
    s.datum = builtin_curve("fig4-spiralish");
    PolyCurve t = builtin_curve("fig5-exp");
    for (Vec3& p : t.samples) p *= 10.0;
    s.target = t;
    s.theta = deg(73);
    s.simulate = false;
    try {
      build_pattern(s);
      FAIL("expected CreaseIntersection");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::CreaseIntersection);
      CHECK(std::string(e.what()).find("rescal") != std::string::npos);
    }
  }

  TEST_CASE("closed or inadmissible targets are rejected") {
    ParallelDesignSpec s;
    s.datum = builtin_curve("fig4-spiralish");
    s.target = PolyCurve::sample(2, [](double t) { return Vec3(std::cos(t), std::sin(t), 0); }, 0, 2 * kPi, 200,
                                 true);
    CHECK_THROWS_AS(build_pattern(s), Error);
    s.target = builtin_curve("fig5-exp");
    s.theta = deg(10);
    try {
      build_pattern(s);
      FAIL("expected NotAdmissible");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotAdmissible);
    }
  }
}
