#include "ssg/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace ssg {

void SonarIntrinsics::validate() const {
  if (!(r_min >= 0.0)) throw std::invalid_argument("SonarIntrinsics.r_min: must be >= 0");
  if (!(r_min < r_max)) throw std::invalid_argument("SonarIntrinsics.r_max: must exceed r_min");
  if (!(azimuth_aperture > 0.0 && azimuth_aperture <= 2.0 * kPi))
    throw std::invalid_argument("SonarIntrinsics.azimuth_aperture: must be in (0, 2*pi]");
  if (!(elevation_aperture > 0.0 && elevation_aperture <= kPi))
    throw std::invalid_argument("SonarIntrinsics.elevation_aperture: must be in (0, pi]");
}

SonarIntrinsics SonarIntrinsics::default_forward_looking() {
  return {0.1, 10.0, deg_to_rad(60.0), deg_to_rad(12.0)};
}

SonarIntrinsics SonarIntrinsics::default_sidescan() {
  return {0.1, 30.0, deg_to_rad(130.0), deg_to_rad(0.3)};
}

void RelativePose::validate(double tol) const {
  const Mat3 gram = rotation * rotation.transposed();
  const Mat3 id = Mat3::identity();
  for (int i = 0; i < 9; ++i) {
    if (std::abs(gram.m[static_cast<size_t>(i)] - id.m[static_cast<size_t>(i)]) > tol)
      throw std::invalid_argument("RelativePose.rotation: not orthonormal (R*R^T != I)");
  }
  if (std::abs(rotation.determinant() - 1.0) > tol)
    throw std::invalid_argument("RelativePose.rotation: determinant is not +1");
}

double project_ss(const SphericalPoint& p) { return p.r; }

FlObservation project_fl(const SphericalPoint& p) { return {p.r, p.theta}; }

CartesianPoint spherical_to_cartesian(const SphericalPoint& p) {
  const double ct = std::cos(p.theta), st = std::sin(p.theta);
  const double cp = std::cos(p.phi), sp = std::sin(p.phi);
  return {p.r * ct * cp, p.r * st * cp, p.r * sp};
}

SphericalConversion cartesian_to_spherical(const CartesianPoint& p) {
  const double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
  if (r == 0.0) return {{0.0, 0.0, 0.0}, true};
  double theta = std::atan2(p.y, p.x);
  if (theta == -kPi) theta = kPi;  // keep azimuth in (-pi, pi]
  const double s = std::clamp(p.z / r, -1.0, 1.0);
  return {{r, theta, std::asin(s)}, false};
}

CartesianPoint transform_point(const CartesianPoint& p, const RelativePose& pose) {
  const Mat3& R = pose.rotation;
  const Vec3& t = pose.translation;
  return {R(0, 0) * p.x + R(0, 1) * p.y + R(0, 2) * p.z + t.x,
          R(1, 0) * p.x + R(1, 1) * p.y + R(1, 2) * p.z + t.y,
          R(2, 0) * p.x + R(2, 1) * p.y + R(2, 2) * p.z + t.z};
}

SphericalConversion transfer_spherical(const SphericalPoint& p, const RelativePose& pose) {
  return cartesian_to_spherical(transform_point(spherical_to_cartesian(p), pose));
}

SphericalConversion transfer_spherical_direct(const SphericalPoint& p, const RelativePose& pose) {
  const Mat3& R = pose.rotation;
  const double t[3] = {pose.translation.x, pose.translation.y, pose.translation.z};
  const double ct = std::cos(p.theta), st = std::sin(p.theta);
  const double cp = std::cos(p.phi), sp = std::sin(p.phi);

  double c[3];
  for (int i = 0; i < 3; ++i)
    c[i] = R(i, 0) * p.r * ct * cp + R(i, 1) * p.r * st * cp + R(i, 2) * p.r * sp + t[i];

  const double r = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
  if (r == 0.0) return {{0.0, 0.0, 0.0}, true};
  double theta = std::atan2(c[1], c[0]);
  if (theta == -kPi) theta = kPi;
  return {{r, theta, std::asin(std::clamp(c[2] / r, -1.0, 1.0))}, false};
}

bool in_fov(const SphericalPoint& p, const SonarIntrinsics& intr) {
  return p.r >= intr.r_min && p.r <= intr.r_max &&
         std::abs(p.theta) <= intr.half_azimuth() &&
         std::abs(p.phi) <= intr.half_elevation();
}

}  // namespace ssg
