#pragma once
// Degree-4 vertex spherical trigonometry: closed-form transfer equations
// between sector and folding angles, their inverses, and a general
// single-vertex folding solver.
//
// Sector labels around a row vertex, counter-clockwise from the right row
// crease r_R: UR (r_R..c_U), UL (c_U..r_L), DL (r_L..c_D), DR (c_D..r_R).
// For vertex i of a row these are alpha_{4i-3}, alpha_{4i-2}, alpha_{4i-1},
// alpha_{4i} respectively.

#include "rigidfold/mathutil.hpp"

#include <array>
#include <optional>
#include <utility>

namespace rigidfold {

// Four sector angles in cyclic (counter-clockwise) order.
struct VertexAngles {
  std::array<double, 4> s{};

  VertexAngles() = default;
  VertexAngles(double a, double b, double c, double d) : s{a, b, c, d} {}
  double operator[](int i) const { return s[std::size_t(i)]; }
  double& operator[](int i) { return s[std::size_t(i)]; }
  double developability_residual() const;  // |sum - 2pi|
  double flat_foldability_residual() const;  // max(|a+c-pi|, |b+d-pi|)
  // Throws InvariantViolation when a sector leaves (0,pi) or the sum is not 2pi.
  void validate() const;
};

// Signed folding angles (valley positive) on creases 0..3, where crease j
// bounds sectors j-1 and j (crease 0 is the first edge of sector 0).
using FoldAngles = std::array<double, 4>;

// Closed-form fold magnitudes at the two row creases of the halting-column
// vertex: returns (rho_2, rho_4) = (left, right) in [0, 2pi].
std::pair<double, double> fold_from_beta(double alpha1, double alpha2, double beta1);

// Halting-column vertex design: (alpha1, alpha2) such that the left row crease
// folds to pi exactly when the right one reaches rho4 and the folded row angle
// is beta1. Closed form; NoSolution when the result degenerates.
std::pair<double, double> solve_first_vertex(double beta1, double rho4);

// Branch signs (+1/-1) of the two transfer equations.
using Branch = std::array<int, 4>;

// Residuals of the two row transfer equations between consecutive row
// vertices. r1: fold angle of the shared row crease seen from both vertices;
// r2: dihedral theta_i, wrapped to (-pi, pi].
std::pair<double, double> row_transfer_residual(const VertexAngles& prev, const VertexAngles& next, double beta_i,
                                                double beta_ip1, double theta_i, const Branch& branch);

struct NextVertex {
  double alpha1 = 0;  // alpha_{4i+1} (UR of the next vertex)
  double alpha2 = 0;  // alpha_{4i+2} (UL of the next vertex)
  Branch branch{};
  VertexAngles angles() const { return {alpha1, alpha2, kPi - alpha1, kPi - alpha2}; }
};

// Newton solve of the transfer equations for a flat-foldable next vertex
// (alpha_{4i+3} = pi - alpha_{4i+1}, alpha_{4i+4} = pi - alpha_{4i+2}).
// Branches are tried in lexicographic order (+ before -), with `preferred`
// first when given; seeds come from a tol::newton_seed_grid square grid.
NextVertex solve_next_vertex(const VertexAngles& prev, double beta_i, double beta_ip1, double theta_i,
                             std::optional<Branch> preferred = std::nullopt);

// Every branch sign pattern in lexicographic order.
std::array<Branch, 16> branch_order();

struct PlanarTransfer {
  double alpha1 = 0;  // alpha_{4i+1}
  double alpha2 = 0;  // alpha_{4i+2}
  double theta = 0;   // required dihedral, 0 or pi
};

// Planar transfer between straight-line (halting-family) vertices: keeps
// alpha_{4i+1} = alpha_{4i-2} and solves the single ratio equation for
// alpha_{4i+2} (the root nearest alpha_{4i-3}); the required dihedral follows
// the sign rule. Equal turn angles give back the repeated vertex
// (alpha_{4i+2}, alpha_{4i+1}) = (alpha_{4i-3}, alpha_{4i-2}).
PlanarTransfer planar_transfer(double prev_a, double prev_b, double beta_i, double beta_ip1);
// Left-hand-side (or right-hand-side) ratio of the planar transfer equation.
double planar_ratio(double a, double b, double beta);

// Rigid folding of one degree-4 vertex: given the driving crease and its
// folding angle, solve the spherical four-bar loop. `mode` (0 or 1) selects
// one of the two assembly branches. Throws OutOfRange beyond the range.
FoldAngles degree4_propagate(const VertexAngles& v, int input_crease, double input_rho, int mode);

// Same, with crease directions given explicitly (angles in the plane, counter-
// clockwise order). Used by the simulator, which works from coordinates.
FoldAngles degree4_propagate_dirs(const std::array<double, 4>& crease_dirs, int input_crease, double input_rho,
                                  int mode);

// Max-abs deviation of the loop rotation product from identity.
double loop_closure_residual(const VertexAngles& v, const FoldAngles& rho);

}  // namespace rigidfold
