#pragma once
// Small numeric helpers shared across modules.

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <vector>

namespace rigidfold {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;

// arccos with the float-noise clamp: arguments up to tol::acos_clamp outside
// [-1,1] are clamped, anything further raises OutOfRange.
double safe_acos(double x, const char* where = "acos");

// Wrap an angle to (-pi, pi].
double wrap_pi(double a);
// Wrap an angle to [0, 2pi).
double wrap_2pi(double a);

// Rodrigues rotation about a (not necessarily unit) axis.
Mat3 axis_rotation(const Vec3& axis, double angle);

// Signed angle from a to b about axis (right-handed), in (-pi, pi].
double signed_angle(const Vec3& a, const Vec3& b, const Vec3& axis);

// Unsigned angle between two vectors in [0, pi].
double angle_between(const Vec3& a, const Vec3& b);

// Angle at vertex b of the polyline a-b-c, in [0, pi].
double corner_angle(const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace rigidfold

namespace rigidfold {

// Proper rigid motion x -> R x + t.
struct RigidTransform {
  Mat3 R = Mat3::Identity();
  Vec3 t = Vec3::Zero();
  Vec3 apply(const Vec3& x) const { return R * x + t; }
};

// Least-squares rigid motion carrying src onto dst (corresponding points,
// Kabsch algorithm, no reflection).
RigidTransform kabsch(const std::vector<Vec3>& src, const std::vector<Vec3>& dst);

}  // namespace rigidfold
