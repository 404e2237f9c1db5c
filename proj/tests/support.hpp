#pragma once
// Shared fixtures for the unit suites: the reference designs (built once per
// process) and small numeric helpers.

#include "rigidfold/orthodiagonal.hpp"
#include "rigidfold/parallel_repeating.hpp"
#include "rigidfold/pattern_io.hpp"
#include "rigidfold/pipeline.hpp"

#include <cmath>
#include <random>

namespace rigidfold::test {

inline double deg(double d) { return d * kPi / 180.0; }

// Space datum with the exponential target, theta = 73 deg (9 x 9 inner vertices).
inline const ParallelDesign& fig5_design() {
  static const ParallelDesign d = build_pattern(to_parallel_spec(parse_design_spec(demo_spec("fig5"))));
  return d;
}

// Sine datum with the t - ln t target, theta = 30 deg, canonical alpha11.
inline const OrthoDesign& fig7_design() {
  static const OrthoDesign d = build_ortho_pattern(to_ortho_spec(parse_design_spec(demo_spec("fig7"))));
  return d;
}

// Single inner row realising the space datum.
inline const ParallelDesign& fig4_design() {
  static const ParallelDesign d = build_pattern(to_parallel_spec(parse_design_spec(demo_spec("fig4"))));
  return d;
}

inline double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

}  // namespace rigidfold::test
