#pragma once
// Seeded generators of random valid inputs: design specs for the parallel
// repeating type (smooth space datum curves and admissible exponential-like
// target curves) and orthodiagonal angle grids. Used by the property tests,
// the acceptance run and `demo random`.

#include "rigidfold/orthodiagonal.hpp"
#include "rigidfold/parallel_repeating.hpp"

#include <random>

namespace rigidfold {

// One random draw; the design it describes may still be infeasible.
ParallelDesignSpec random_parallel_spec(std::mt19937_64& rng);

// Draws specs until one builds (infeasible draws are skipped). Throws
// NoSolution after max_attempts failures. `attempts` receives the number of
// draws used.
ParallelDesign random_parallel_design(std::mt19937_64& rng, int max_attempts = 100, int* attempts = nullptr);

// Random first column (angles away from 0, pi/2 and pi) and a valid alpha11,
// propagated over `columns` grid columns.
OrthoAngleGrid random_ortho_grid(std::mt19937_64& rng, int rows, int columns);

}  // namespace rigidfold
