#pragma once

// Shared helpers for the test suites: deterministic RNG draws, random
// rotations, and the randomized pose/feature generator used by the
// containment checks.

#include <array>
#include <cmath>
#include <random>
#include <string>

#include "ssg/crossmodal.hpp"
#include "ssg/sweep.hpp"

namespace ssgtest {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Uniform random rotation from a normalized 4-normal quaternion.
inline ssg::Mat3 random_rotation(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  double q[4];
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (double& v : q) {
      v = normal(rng);
      n2 += v * v;
    }
  } while (n2 < 1e-12);
  const double inv = 1.0 / std::sqrt(n2);
  const double w = q[0] * inv, x = q[1] * inv, y = q[2] * inv, z = q[3] * inv;
  ssg::Mat3 R;
  R(0, 0) = 1 - 2 * (y * y + z * z);
  R(0, 1) = 2 * (x * y - w * z);
  R(0, 2) = 2 * (x * z + w * y);
  R(1, 0) = 2 * (x * y + w * z);
  R(1, 1) = 1 - 2 * (x * x + z * z);
  R(1, 2) = 2 * (y * z - w * x);
  R(2, 0) = 2 * (x * z - w * y);
  R(2, 1) = 2 * (y * z + w * x);
  R(2, 2) = 1 - 2 * (x * x + y * y);
  return R;
}

inline ssg::SphericalPoint random_point_in_fov(Rng& rng, const ssg::SonarIntrinsics& intr,
                                               double angle_margin_frac = 0.0,
                                               double range_margin_frac = 0.0) {
  const double span = intr.r_max - intr.r_min;
  const double rm = range_margin_frac * span;
  const double tm = (1.0 - angle_margin_frac) * intr.half_azimuth();
  const double pm = (1.0 - angle_margin_frac) * intr.half_elevation();
  return {uniform(rng, intr.r_min + rm, intr.r_max - rm), uniform(rng, -tm, tm),
          uniform(rng, -pm, pm)};
}

/// A ground-truth feature visible to both sensors with a solved translation.
/// The feature keeps enough distance from every target FOV boundary that the
/// candidate sample nearest to it (at the resolutions under test) cannot be
/// clipped, so containment checks are exact rather than probabilistic.
struct ContainmentCase {
  ssg::SphericalPoint feature_source;  // source sonar frame
  ssg::SphericalPoint feature_target;  // target sonar frame
  ssg::RelativePose pose;
};

inline ContainmentCase random_containment_case(Rng& rng, const ssg::SonarIntrinsics& source,
                                               const ssg::SonarIntrinsics& target) {
  ContainmentCase c;
  c.feature_source = random_point_in_fov(rng, source, 0.2, 0.05);

  const double tgt_span = target.r_max - target.r_min;
  const double lo = std::max(target.r_min + 0.05 * tgt_span, 0.25 * c.feature_source.r);
  const double hi = target.r_max - 0.05 * tgt_span;
  c.feature_target = {uniform(rng, lo, hi),
                      uniform(rng, -0.8 * target.half_azimuth(), 0.8 * target.half_azimuth()),
                      uniform(rng, -0.8 * target.half_elevation(), 0.8 * target.half_elevation())};

  c.pose.rotation = random_rotation(rng);
  c.pose.translation = ssg::solve_translation(ssg::spherical_to_cartesian(c.feature_source),
                                              ssg::spherical_to_cartesian(c.feature_target),
                                              c.pose.rotation);
  return c;
}

/// Distance in the forward-looking image plane between two (range, azimuth)
/// samples: sqrt(dr^2 + (mean range * dtheta)^2).
inline double fl_image_distance(const ssg::FlObservation& a, const ssg::FlObservation& b) {
  const double dr = a.range - b.range;
  const double dth = (a.azimuth - b.azimuth) * 0.5 * (a.range + b.range);
  return std::sqrt(dr * dr + dth * dth);
}

}  // namespace ssgtest
