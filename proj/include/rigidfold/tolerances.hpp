#pragma once
// Central tolerance and default-parameter table. Every numeric check in the
// library, the verifier and the test suites reads its threshold from here.

#include <string>
#include <vector>

namespace rigidfold::tol {

// --- numerical solvers -----------------------------------------------------
inline constexpr double acos_clamp = 1e-12;       // |arg|-1 below this is clamped
inline constexpr double newton_tol = 1e-12;       // Newton step/residual tolerance
inline constexpr int newton_max_iter = 64;
inline constexpr int newton_seed_grid = 16;       // seeds per axis
inline constexpr double degenerate_angle = 1e-9;  // distance to {0, pi/2, pi}

// --- geometry --------------------------------------------------------------
inline constexpr double affine_roundtrip = 1e-12;  // relative
inline constexpr double xi_margin = 1e-3;          // xi kept inside (margin, pi-margin)
inline constexpr double monotone = 1e-10;          // strict monotonicity on coordinates
inline constexpr double turn_degenerate = 1e-9;    // beta must stay inside (tol, pi-tol)
inline constexpr double tube_turn_margin = 0.05;   // tube turn angles < pi - margin
inline constexpr double staircase_angle = 1e-9;
inline constexpr int hausdorff_subsamples = 64;
inline constexpr int theta_grid = 720;

// --- transfer equations / design ------------------------------------------
inline constexpr double transfer_residual = 1e-9;
inline constexpr double developability = 1e-10;
inline constexpr double flat_foldability = 1e-10;
inline constexpr double separability = 1e-10;  // relative, on tan ratios
inline constexpr double closed_form = 1e-9;    // closed-form vs propagated fold angles

// --- folding simulation ----------------------------------------------------
inline constexpr double closure = 1e-9;          // x diameter, and raw for rotations
inline constexpr double halting_margin = 1e-6;   // crease halts at pi - margin
inline constexpr double clash_depth = 1e-9;      // x diameter
inline constexpr double continuation_step = 0.02;
inline constexpr double continuation_seed = 1e-3;
inline constexpr int trajectory_states = 64;

// --- verification of folded states -----------------------------------------
inline constexpr double coplanarity = 1e-8;      // x diameter
inline constexpr double xi_measure = 1e-8;
inline constexpr double row_magnitude = 1e-8;
inline constexpr double phi_measure = 1e-8;
inline constexpr double reproduction = 1e-6;     // lengths (relative) and angles (rad)
inline constexpr double surface_assembly = 1e-6; // x diameter
inline constexpr double isometry = 1e-9;         // relative

struct Entry {
  std::string id;
  double value;
};

// Flat listing of the table, used by reports.
std::vector<Entry> table();

}  // namespace rigidfold::tol
