#include "rigidfold/mathutil.hpp"

#include "rigidfold/errors.hpp"
#include "rigidfold/tolerances.hpp"

#include <algorithm>
#include <string>

namespace rigidfold {

double safe_acos(double x, const char* where) {
  if (!std::isfinite(x) || std::abs(x) > 1.0 + tol::acos_clamp) {
    throw Error(ErrorKind::OutOfRange, std::string(where) + ": arccos argument " + std::to_string(x));
  }
  return std::acos(std::clamp(x, -1.0, 1.0));
}

double wrap_pi(double a) {
  double r = std::remainder(a, 2.0 * kPi);  // in [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double wrap_2pi(double a) {
  double r = std::fmod(a, 2.0 * kPi);
  if (r < 0) r += 2.0 * kPi;
  if (r >= 2.0 * kPi) r -= 2.0 * kPi;
  return r;
}

Mat3 axis_rotation(const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

double signed_angle(const Vec3& a, const Vec3& b, const Vec3& axis) {
  return std::atan2(a.cross(b).dot(axis.normalized()), a.dot(b));
}

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

double corner_angle(const Vec3& a, const Vec3& b, const Vec3& c) { return angle_between(a - b, c - b); }

RigidTransform kabsch(const std::vector<Vec3>& src, const std::vector<Vec3>& dst) {
  RigidTransform out;
  if (src.empty() || src.size() != dst.size()) return out;
  Vec3 cs = Vec3::Zero(), cd = Vec3::Zero();
  for (std::size_t i = 0; i < src.size(); ++i) {
    cs += src[i];
    cd += dst[i];
  }
  cs /= double(src.size());
  cd /= double(dst.size());
  Mat3 H = Mat3::Zero();
  for (std::size_t i = 0; i < src.size(); ++i) H += (src[i] - cs) * (dst[i] - cd).transpose();
  Eigen::JacobiSVD<Mat3> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 D = Mat3::Identity();
  if ((svd.matrixV() * svd.matrixU().transpose()).determinant() < 0) D(2, 2) = -1.0;
  out.R = svd.matrixV() * D * svd.matrixU().transpose();
  out.t = cd - out.R * cs;
  return out;
}

}  // namespace rigidfold
