#include "support.hpp"

#include "rigidfold/errors.hpp"
#include "rigidfold/geometry.hpp"

#include <doctest.h>

#include <algorithm>

using namespace rigidfold;
using rigidfold::test::deg;
using rigidfold::test::uniform;

namespace {

PolyCurve parabola(int samples) {
  return PolyCurve::sample(2, [](double t) { return Vec3(t, t * t / 4.0, 0.0); }, -2.0, 2.0, samples);
}

PolyCurve descending_line() {
  return PolyCurve::sample(2, [](double t) { return Vec3(t, -t, 0.0); }, 0.0, 1.0, 101);
}

PolyCurve unit_circle() {
  return PolyCurve::sample(2, [](double t) { return Vec3(std::cos(t), std::sin(t), 0.0); }, 0.0, 2.0 * kPi, 361,
                           true);
}

// Densely resampled polyline (uniform in arc length per segment).
std::vector<Vec3> densify(const std::vector<Vec3>& pts, int total) {
  double len = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) len += (pts[i + 1] - pts[i]).norm();
  std::vector<Vec3> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double seg = (pts[i + 1] - pts[i]).norm();
    const int k = std::max(1, int(std::ceil(total * seg / len)));
    for (int j = 0; j < k; ++j) out.push_back(pts[i] + (pts[i + 1] - pts[i]) * (double(j) / k));
  }
  out.push_back(pts.back());
  return out;
}

double brute_hausdorff(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  auto one_sided = [](const std::vector<Vec3>& x, const std::vector<Vec3>& y) {
    double worst = 0;
    for (const Vec3& p : x) {
      double best = 1e300;
      for (const Vec3& q : y) best = std::min(best, (p - q).squaredNorm());
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("affine map and unmap are inverse") {
    std::mt19937_64 rng(7);
    double worst = 0;
    for (int k = 0; k < 10000; ++k) {
      const Vec2 p(uniform(rng, -10, 10), uniform(rng, -10, 10));
      const AffineParams a(uniform(rng, 0, 2 * kPi), uniform(rng, 0.05, kPi - 0.05));
      const Vec2 q = affine_unmap(affine_map(p, a), a);
      worst = std::max(worst, (q - p).norm() / std::max(1.0, p.norm()));
    }
    CHECK(worst < tol::affine_roundtrip);
  }

  TEST_CASE("admissibility of the reference curves") {
    CHECK(is_admissible(parabola(100), AffineParams(deg(70), deg(60))).admissible);
    CHECK(is_admissible(descending_line(), AffineParams(0.0, kPi / 2)).admissible);
    CHECK_THROWS_AS(is_admissible(unit_circle(), AffineParams(0.0, kPi / 2)), Error);
    try {
      is_admissible(unit_circle(), AffineParams(0.0, kPi / 2));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ClosedCurve);
    }
  }

  TEST_CASE("admissibility is invariant under resampling") {
    const PolyCurve coarse = parabola(100), fine = parabola(397);
    for (int k = 0; k < 72; ++k) {
      const AffineParams a(deg(5.0 * k), deg(60));
      CHECK(is_admissible(coarse, a).admissible == is_admissible(fine, a).admissible);
    }
  }

  TEST_CASE("theta scan") {
    const std::vector<double> th = search_theta(parabola(100), deg(60), 360);
    REQUIRE_FALSE(th.empty());
    const bool near70 = std::any_of(th.begin(), th.end(), [](double t) { return std::abs(t - deg(70)) <= deg(1); });
    CHECK(near70);
    const std::vector<double> line = search_theta(descending_line(), kPi / 2, 4);
    CHECK(std::find(line.begin(), line.end(), 0.0) != line.end());
    CHECK_THROWS_AS(search_theta(unit_circle(), deg(60)), Error);
  }

  TEST_CASE("parallel theta scan equals the serial reference") {
    for (const std::string& name : builtin_curve_names()) {
      const PolyCurve f = builtin_curve(name);
      if (f.dim != 2 || f.closed) continue;
      for (double xi : {deg(30), deg(60), deg(90), deg(120)})
        CHECK(search_theta(f, xi) == search_theta_serial(f, xi));
    }
  }

  TEST_CASE("staircase of a descending line with the identity transform") {
    const Partition s = staircase(descending_line(), AffineParams(0.0, kPi / 2), 1);
    REQUIRE(s.points.size() == 3);
    // The corner lies on the axis-aligned rectangle through the end points.
    const Vec3 c = s.points[1];
    const double on_edge = std::min({std::abs(c.x()), std::abs(c.x() - 1), std::abs(c.y()), std::abs(c.y() + 1)});
    CHECK(on_edge < 1e-12);
    CHECK(c.x() >= -1e-12);
    CHECK(c.x() <= 1 + 1e-12);
    CHECK(c.y() <= 1e-12);
    CHECK(c.y() >= -1 - 1e-12);
    CHECK(std::abs(s.turn_angles[0] - kPi / 2) < tol::staircase_angle);
  }

  TEST_CASE("staircase corners make the shear angle") {
    const PolyCurve f = builtin_curve("fig3-parabola");
    const AffineParams a(deg(70), deg(60));
    for (int n : {8, 16}) {
      const Partition s = staircase(f, a, n);
      CHECK(s.n() == n);
      for (double b : s.turn_angles) CHECK(std::abs(b - deg(60)) < tol::staircase_angle);
    }
    // Random admissible inputs.
    std::mt19937_64 rng(3);
    int tested = 0;
    for (int k = 0; k < 200 && tested < 30; ++k) {
      const double xi = uniform(rng, 0.3, kPi - 0.3), theta = uniform(rng, 0, 2 * kPi);
      const AffineParams ar(theta, xi);
      if (!is_admissible(f, ar).admissible) continue;
      ++tested;
      const Partition s = staircase(f, ar, 1 + int(rng() % 20));
      for (double b : s.turn_angles) CHECK(std::abs(b - xi) < tol::staircase_angle);
    }
    CHECK(tested > 5);
  }

  TEST_CASE("staircase refinement does not increase the distance") {
    const PolyCurve f = builtin_curve("fig3-parabola");
    const AffineParams a(deg(70), deg(60));
    const double h8 = hausdorff(staircase(f, a, 8).points, f.samples);
    const double h16 = hausdorff(staircase(f, a, 16).points, f.samples);
    const double h32 = hausdorff(staircase(f, a, 32).points, f.samples);
    CHECK(h16 < h8);
    CHECK(h32 <= h16 + 1e-9);
    CHECK_THROWS_AS(staircase(f, AffineParams(deg(100), deg(60)), 8), Error);
  }

  TEST_CASE("uniform partition") {
    const PolyCurve seg = PolyCurve::sample(3, [](double t) { return Vec3(t, 2 * t, -t); }, 0, 1, 50);
    CHECK_THROWS_AS(partition_uniform(seg, 3), Error);

    const PolyCurve zig = PolyCurve::from_2d({{0, 0}, {1, 1}, {2, 0}, {3, 1}, {4, 0}, {5, 1}});
    const Partition pz = partition_uniform(zig, 4);
    for (double t : pz.dihedrals) CHECK((std::abs(t) < 1e-9 || std::abs(t - kPi) < 1e-9));

    // Planar spiral-like curve: every dihedral is 0 or pi.
    const PolyCurve arc = PolyCurve::sample(2, [](double t) { return Vec3(std::cos(t), std::sin(2 * t), 0); }, 0.2,
                                            1.4, 400);
    for (double t : partition_uniform(arc, 7).dihedrals)
      CHECK((std::abs(t) < 1e-9 || std::abs(t - kPi) < 1e-9 || std::abs(t - 2 * kPi) < 1e-9));
  }

  TEST_CASE("uniform partition of the space datum matches direct vector arithmetic") {
    const PolyCurve g = builtin_curve("fig4-spiralish");
    const Partition p = partition_uniform(g, 9);
    REQUIRE(p.points.size() == 11);
    for (int i = 0; i <= 10; ++i) {
      const double u = -1.0 + 1.5 * i / 10.0;
      const Vec3 expect(u + std::cos(u), -2 * u * u, std::sin(u));
      CHECK((p.points[std::size_t(i)] - expect).norm() < 1e-9);
    }
    for (int i = 0; i < 10; ++i)
      CHECK(std::abs(p.lengths[std::size_t(i)] - (p.points[std::size_t(i) + 1] - p.points[std::size_t(i)]).norm()) <
            1e-14);
    for (int i = 1; i <= 9; ++i) {
      const Vec3 a = p.points[std::size_t(i) - 1] - p.points[std::size_t(i)];
      const Vec3 b = p.points[std::size_t(i) + 1] - p.points[std::size_t(i)];
      const double beta = std::acos(a.dot(b) / (a.norm() * b.norm()));
      CHECK(std::abs(p.turn_angles[std::size_t(i) - 1] - beta) < 1e-9);
    }
    for (int i = 1; i <= 8; ++i) {
      const Vec3 ai = p.points[std::size_t(i)], an = p.points[std::size_t(i) + 1];
      const Vec3 u = (an - ai).normalized();
      Vec3 pa = p.points[std::size_t(i) - 1] - ai, pd = p.points[std::size_t(i) + 2] - an;
      pa -= u * u.dot(pa);
      pd -= u * u.dot(pd);
      double th = std::atan2(u.dot(pa.cross(pd)), pa.dot(pd));
      if (th < 0) th += 2 * kPi;
      CHECK(std::abs(p.dihedrals[std::size_t(i) - 1] - th) < 1e-9);
    }
  }

  TEST_CASE("tube partition") {
    const PolyCurve seg = PolyCurve::sample(2, [](double t) { return Vec3(t, 0.5 * t, 0); }, 0, 2, 200);
    const Partition s = partition_tube(seg, 3, 0.1);
    REQUIRE(s.turn_angles.size() == 3);
    for (double b : s.turn_angles) {
      CHECK(b == doctest::Approx(s.turn_angles[0]).epsilon(1e-9));
      CHECK(b < kPi);
    }

    const PolyCurve sine = builtin_curve("fig7-sine");
    const double eps = 0.05;
    const Partition t = partition_tube(sine, 9, eps);
    CHECK(t.points.size() == 11);
    for (std::size_t i = 0; i + 1 < t.turn_sides.size(); ++i) CHECK(t.turn_sides[i] == -t.turn_sides[i + 1]);
    CHECK(hausdorff(t.points, sine.samples) <= eps + 1e-9);

    // Shrinking the tube converges to on-curve points.
    const Partition on = partition_tube(sine, 9, 1e-7, 0.0);
    for (const Vec3& p : on.points) {
      double best = 1e300;
      for (const Vec3& q : sine.samples) best = std::min(best, (p - q).norm());
      CHECK(best < 1e-3);
    }

    const PolyCurve arc = PolyCurve::sample(2, [](double t) { return Vec3(std::cos(t), std::sin(t), 0); }, 0, 2.0,
                                            300);
    CHECK_THROWS_AS(partition_tube(arc, 5, 1.5), Error);
  }

  TEST_CASE("hausdorff distance") {
    const std::vector<Vec3> a{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}};
    CHECK(hausdorff(a, a) == doctest::Approx(0.0));
    const std::vector<Vec3> s1{{0, 0, 0}, {2, 0, 0}}, s2{{0, 0.3, 0}, {2, 0.3, 0}};
    CHECK(hausdorff(s1, s2) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(hausdorff_points({{0, 0, 0}}, {{3, 4, 0}}) == doctest::Approx(5.0));

    const PolyCurve f = builtin_curve("fig3-parabola");
    const Partition s = staircase(f, AffineParams(deg(70), deg(60)), 8);
    const double h = hausdorff(s.points, f.samples);
    const double oracle = brute_hausdorff(densify(s.points, 4000), densify(f.samples, 4000));
    CHECK(std::abs(h - oracle) <= 0.01 * oracle);
    CHECK(hausdorff(s.points, f.samples) == hausdorff_serial(s.points, f.samples));
  }
}
