#pragma once
// Curves, partitions, the shear-rotation admissibility transform, staircase
// approximation and Hausdorff distance.

#include "rigidfold/mathutil.hpp"
#include "rigidfold/tolerances.hpp"

#include <functional>
#include <string>
#include <vector>

namespace rigidfold {

// Sampled parametric curve. 2D curves are stored with z = 0.
struct PolyCurve {
  int dim = 2;
  std::vector<Vec3> samples;
  std::vector<double> param;
  bool closed = false;

  PolyCurve() = default;
  PolyCurve(int dim, std::vector<Vec3> samples, std::vector<double> param, bool closed = false);

  static PolyCurve from_2d(const std::vector<Vec2>& pts, std::vector<double> param = {}, bool closed = false);
  static PolyCurve from_3d(const std::vector<Vec3>& pts, std::vector<double> param = {}, bool closed = false);
  // Sample a parametric function at `count` uniform parameter values on [a, b].
  static PolyCurve sample(int dim, const std::function<Vec3(double)>& fn, double a, double b, int count,
                          bool closed = false);

  std::size_t size() const { return samples.size(); }
  Vec2 xy(std::size_t i) const { return samples[i].head<2>(); }
  // Linear interpolation at parameter t (clamped to the parameter range).
  Vec3 at(double t) const;
  // Throws InvalidArgument when an invariant is violated.
  void validate() const;
};

// Ordered points A_0..A_{n+1} with derived lengths, turn angles and dihedrals.
struct Partition {
  int dim = 2;
  std::vector<Vec3> points;
  std::vector<double> lengths;      // l_i, i in [0, n]
  std::vector<double> turn_angles;  // beta_i, i in [1, n] (stored 0-based)
  std::vector<double> dihedrals;    // theta_i, i in [1, n-1] (stored 0-based)
  std::vector<int> turn_sides;      // 2D only: +1 left turn, -1 right turn

  int n() const { return static_cast<int>(points.size()) - 2; }
  // Compute the derived fields from `points`; throws DegenerateTurn when some
  // turn angle leaves (0, pi) by more than tol::turn_degenerate.
  static Partition from_points(int dim, std::vector<Vec3> points);
  // Same, without rejecting degenerate turns (used for diagnostics).
  static Partition from_points_unchecked(int dim, std::vector<Vec3> points);
};

// Shear-rotation parameters of the admissibility transform.
class AffineParams {
 public:
  AffineParams(double theta, double xi, double xi_margin = tol::xi_margin);
  double theta() const { return theta_; }
  double xi() const { return xi_; }
  Mat2 matrix() const;
  Mat2 inverse() const;

 private:
  double theta_;
  double xi_;
};

Mat2 affine_matrix(double xi, double theta);
Vec2 affine_map(const Vec2& p, const AffineParams& a);
Vec2 affine_unmap(const Vec2& p, const AffineParams& a);

struct AdmissibilityResult {
  bool admissible = false;
  // Transformed samples, oriented so that x-bar increases along the order.
  std::vector<Vec2> image;
  std::vector<double> param;  // parameters aligned with `image`
  bool reversed = false;      // true when the curve was traversed backwards
};

AdmissibilityResult is_admissible(const PolyCurve& f, const AffineParams& a);

// Admissible theta values on a uniform grid of `grid` values in [0, 2pi).
// The OpenMP kernel and the serial reference return identical lists.
std::vector<double> search_theta(const PolyCurve& f, double xi, int grid = tol::theta_grid);
std::vector<double> search_theta_serial(const PolyCurve& f, double xi, int grid = tol::theta_grid);

// Staircase with n interior corners whose segments alternate between the two
// pre-images of the x-bar and y-bar axes. The first segment runs along x-bar.
Partition staircase(const PolyCurve& f, const AffineParams& a, int n);

Partition partition_uniform(const PolyCurve& c, int n);
Partition partition_tube(const PolyCurve& c, int n, double eps, double turn_margin = tol::tube_turn_margin);

// Symmetric Hausdorff distance between polylines. Each polyline is resampled
// at `subsamples` points per segment and measured against the other polyline's
// segments. Point sets use the same entry points with single-point segments.
double hausdorff(const std::vector<Vec3>& a, const std::vector<Vec3>& b,
                 int subsamples = tol::hausdorff_subsamples);
double hausdorff_serial(const std::vector<Vec3>& a, const std::vector<Vec3>& b,
                        int subsamples = tol::hausdorff_subsamples);
double hausdorff(const PolyCurve& a, const PolyCurve& b, int subsamples = tol::hausdorff_subsamples);
// Point-set variant: plain nearest-point distances, no resampling.
double hausdorff_points(const std::vector<Vec3>& a, const std::vector<Vec3>& b);

// Builtin curves reproducing the reference configurations.
//   fig3-parabola  [t, t^2/4], t in [-2, 2]
//   fig4-spiralish [u + cos u, -2u^2, sin u], u in [-1, 0.5]
//   fig5-exp       [t, e^t], t in [0, 1]
//   fig7-sine      [u, sin u], u in [0, pi]
//   fig7-tlnt      [t, t - ln t], t in [0.5, 1.5]
inline constexpr int kBuiltinSamples = 2521;
PolyCurve builtin_curve(const std::string& name, int samples = kBuiltinSamples);
std::vector<std::string> builtin_curve_names();

}  // namespace rigidfold
