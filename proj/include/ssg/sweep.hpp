#pragma once

#include <vector>

#include "ssg/crossmodal.hpp"

namespace ssg {

/// R = Rz(yaw) * Ry(pitch) * Rx(roll).
Mat3 rotation_from_rpy(double roll, double pitch, double yaw);

Mat3 rotation_x(double angle);
Mat3 rotation_y(double angle);
Mat3 rotation_z(double angle);

/// How the translation is recovered from the desired feature placements.
enum class TranslationConvention {
  /// t = c_target - R * c_source; consistent with transform_point, so the
  /// source-frame feature lands exactly on the target-frame feature.
  target_minus_rotated_source,
  /// t = c_source - R * c_target; the literal symbol order of the alternative
  /// reading, kept selectable for comparison experiments.
  source_minus_rotated_target,
};

/// Translation that places a feature at the requested position in each
/// sonar's frame, given the relative rotation.
Vec3 solve_translation(const CartesianPoint& feature_in_source,
                       const CartesianPoint& feature_in_target, const Mat3& rotation,
                       TranslationConvention convention =
                           TranslationConvention::target_minus_rotated_source);

enum class Direction { fl_to_ss, ss_to_fl };

enum class EulerAngle { roll, pitch, yaw };

struct AngleSweep {
  EulerAngle angle = EulerAngle::roll;
  double lo = 0.0;
  double hi = kPi;
  int samples = 181;
};

struct SamplingResolution {
  int arc_phi = 1024;        // elevation samples for forward-looking arcs
  int surface_theta = 512;   // azimuth samples for sidescan surfaces
  int surface_phi = 64;      // elevation samples for sidescan surfaces
  AreaRaster raster{};
};

/// One sweep over relative orientation and feature distances. The feature is
/// always placed on each sensor's boresight (azimuth 0, elevation 0) at
/// frac * r_max; the translation between the sensors is solved per grid point.
struct SweepScenario {
  int index = 0;  // 1..9 in the standard suite
  Direction direction = Direction::fl_to_ss;
  std::vector<AngleSweep> swept;  // one or two entries
  double fixed_roll = 0.0;
  double fixed_pitch = 0.0;
  double fixed_yaw = 0.0;
  std::vector<double> source_distance_fracs;  // fractions of the source r_max, in (0, 1)
  std::vector<double> target_distance_fracs;  // fractions of the target r_max, in (0, 1)
  SonarIntrinsics source;
  SonarIntrinsics target;
  SamplingResolution resolution{};
  TranslationConvention convention = TranslationConvention::target_minus_rotated_source;

  void validate() const;
};

struct SweepRecord {
  double roll = 0.0, pitch = 0.0, yaw = 0.0;  // radians
  double d_source = 0.0, d_target = 0.0;      // meters
  double metric = 0.0;  // span length (m) for fl_to_ss, area (m^2) for ss_to_fl
  bool visible = false;
};

/// Evaluates every grid point of the scenario. Records are ordered
/// lexicographically by (first swept angle, second swept angle, d_source,
/// d_target). Grid points run in parallel across `threads` workers
/// (0 = hardware concurrency); the output is identical for any thread count.
std::vector<SweepRecord> run_scenario(const SweepScenario& scenario, int threads = 0);

/// The nine standard scenarios for one direction:
///   1-3: roll / pitch / yaw swept over [0, pi], source distance fixed at
///        50% of r_max, target distance stepped 10%..90%;
///   4-6: the same sweeps with the roles of the distances swapped;
///   7-9: roll x pitch, pitch x yaw, yaw x roll grids with both distances
///        fixed at 50%.
/// Unswept angles are 0.
std::vector<SweepScenario> standard_suite(Direction direction, const SonarIntrinsics& intr_fl,
                                          const SonarIntrinsics& intr_ss,
                                          const SamplingResolution& resolution = {},
                                          int angle_samples = 181, int pair_angle_samples = 91);

/// Both directions with the default sensor parameters: 18 scenarios.
std::vector<SweepScenario> default_suite();

}  // namespace ssg
