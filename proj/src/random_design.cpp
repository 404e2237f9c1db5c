#include "rigidfold/random_design.hpp"

#include "rigidfold/errors.hpp"

#include <cmath>

namespace rigidfold {

ParallelDesignSpec random_parallel_spec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  // Datum: a perturbed helix-like space curve.
  const double a = 0.6 + 0.8 * U(rng), b = 1.0 + 2.0 * U(rng), c = 0.5 + 1.0 * U(rng);
  const double w = 0.5 + 1.5 * U(rng), ph = 2.0 * kPi * U(rng), amp = 0.15 * U(rng);
  const double u0 = -1.0, u1 = u0 + 1.0 + 0.8 * U(rng);
  // Target: a scaled exponential, admissible for a range of rotations.
  const double k = 0.5 + 1.5 * U(rng), sc = 0.5 + U(rng);
  ParallelDesignSpec s;
  s.datum = PolyCurve::sample(
      3,
      [=](double u) {
        return Vec3(u + a * std::cos(u), -b * u * u + amp * std::sin(w * u + ph), c * std::sin(u));
      },
      u0, u1, 1201);
  s.target = PolyCurve::sample(
      2, [=](double t) { return Vec3(sc * t, sc * std::exp(k * t) / k, 0.0); }, 0.0, 1.0, 1201);
  s.n_row = 4 + int(rng() % 6);
  s.n_col = 3 + int(rng() % 7);
  s.rho4 = kPi * (0.6 + 0.3 * U(rng));
  return s;
}

ParallelDesign random_parallel_design(std::mt19937_64& rng, int max_attempts, int* attempts) {
  for (int i = 1; i <= max_attempts; ++i) {
    ParallelDesignSpec s = random_parallel_spec(rng);
    try {
      ParallelDesign d = build_pattern(s);
      if (attempts) *attempts = i;
      return d;
    } catch (const Error& e) {
      // Infeasible draws are expected; anything that indicates a broken
      // pattern is not.
      if (e.kind() == ErrorKind::NotRigidFoldable || e.kind() == ErrorKind::InvariantViolation) throw;
    }
  }
  throw Error(ErrorKind::NoSolution, "no feasible random design within the attempt budget");
}

OrthoAngleGrid random_ortho_grid(std::mt19937_64& rng, int rows, int columns) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  auto away = [&]() {
    // Uniform in (0.05, pi/2 - 0.05) or (pi/2 + 0.05, pi - 0.05).
    const double t = 0.05 + (0.5 * kPi - 0.1) * U(rng);
    return (rng() % 2) ? t : kPi - t;
  };
  std::vector<double> col0;
  for (int i = 0; i < rows; ++i) col0.push_back(away());
  const double d = col0[0] - 0.5 * kPi;
  const double alpha11 = 0.5 * kPi + d * (0.05 + 0.9 * U(rng));
  return propagate_grid(col0, alpha11, columns);
}

}  // namespace rigidfold
