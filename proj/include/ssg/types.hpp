#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace ssg {

inline constexpr double kPi = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/// 3x3 matrix, row-major.
struct Mat3 {
  std::array<double, 9> m{};

  static Mat3 identity() { return {{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }

  double operator()(int row, int col) const { return m[3 * row + col]; }
  double& operator()(int row, int col) { return m[3 * row + col]; }

  Vec3 operator*(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }

  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j) + (*this)(i, 2) * o(2, j);
    return r;
  }

  Mat3 transposed() const {
    return {{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
  }

  double determinant() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  }
};

/// Point in sonar spherical coordinates: range (m), azimuth and elevation (rad).
/// Azimuth is measured in the x-y plane from +x toward +y; elevation from the
/// x-y plane toward +z. Valid points have r >= 0, theta in (-pi, pi] and
/// phi in [-pi/2, pi/2].
struct SphericalPoint {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

struct CartesianPoint {
  double x = 0.0, y = 0.0, z = 0.0;
};

/// Field of view of one sonar: range limits plus full-width apertures, both
/// centered on the boresight (azimuth 0, elevation 0).
struct SonarIntrinsics {
  double r_min = 0.0;             // meters
  double r_max = 0.0;             // meters
  double azimuth_aperture = 0.0;  // radians, full width
  double elevation_aperture = 0.0;

  double half_azimuth() const { return 0.5 * azimuth_aperture; }
  double half_elevation() const { return 0.5 * elevation_aperture; }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// Simulation defaults: 0.1-10 m, 60 deg azimuth, 12 deg elevation.
  static SonarIntrinsics default_forward_looking();
  /// Simulation defaults: 0.1-30 m, 130 deg azimuth, 0.3 deg elevation.
  static SonarIntrinsics default_sidescan();
};

/// Rigid transform taking coordinates in the source sonar frame to the target
/// sonar frame: p_target = R * p_source + t.
struct RelativePose {
  Mat3 rotation = Mat3::identity();
  Vec3 translation{};

  static RelativePose identity() { return {}; }

  /// Checks R * R^T = I and det(R) = +1 within tol; throws on failure.
  void validate(double tol = 1e-9) const;
};

/// Feature as measured by a forward-looking sonar: range and azimuth.
struct FlObservation {
  double range = 0.0;    // meters
  double azimuth = 0.0;  // radians
};

/// Feature as measured by a sidescan sonar: range only.
struct SsObservation {
  double range = 0.0;  // meters
};

namespace detail {

/// Endpoint-inclusive uniform samples; the last sample is exactly `hi`.
/// Requires n >= 2.
inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<size_t>(n));
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = lo + step * i;
  out.back() = hi;
  return out;
}

}  // namespace detail
}  // namespace ssg
