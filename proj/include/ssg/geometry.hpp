#pragma once

#include "ssg/types.hpp"

namespace ssg {

/// Sidescan projection: only the range of a 3D point survives.
double project_ss(const SphericalPoint& p);

/// Forward-looking projection: range and azimuth survive, elevation is lost.
FlObservation project_fl(const SphericalPoint& p);

/// x = r cos(theta) cos(phi), y = r sin(theta) cos(phi), z = r sin(phi).
CartesianPoint spherical_to_cartesian(const SphericalPoint& p);

struct SphericalConversion {
  SphericalPoint point;
  /// Set when the cartesian input is exactly the origin; the point is then
  /// (0, 0, 0) by convention and its angles carry no information.
  bool degenerate = false;
};

/// r = |p|, theta = atan2(y, x) normalized to (-pi, pi], phi = asin(z / r).
SphericalConversion cartesian_to_spherical(const CartesianPoint& p);

CartesianPoint transform_point(const CartesianPoint& p, const RelativePose& pose);

/// Transfers a source-frame spherical point into the target frame as the
/// chained pipeline: spherical -> cartesian -> rigid transform -> spherical.
SphericalConversion transfer_spherical(const SphericalPoint& p, const RelativePose& pose);

/// Same transfer evaluated as one expanded expression per output component.
/// Kept as an independent algebraic route for cross-checking the pipeline;
/// uses the full-quadrant arctangent so points behind the target sensor get
/// |azimuth| > pi/2 instead of being reflected forward.
SphericalConversion transfer_spherical_direct(const SphericalPoint& p, const RelativePose& pose);

/// True iff r_min <= r <= r_max, |theta| <= azimuth_aperture / 2 and
/// |phi| <= elevation_aperture / 2.
bool in_fov(const SphericalPoint& p, const SonarIntrinsics& intr);

}  // namespace ssg
