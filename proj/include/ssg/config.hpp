#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "ssg/sweep.hpp"

namespace ssg {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Pose specification as it appears in a config document: rotation as
/// roll/pitch/yaw in degrees, translation either explicit (meters) or solved
/// from boresight feature distances. With neither given the sensors are
/// co-located (zero translation).
struct PoseSpec {
  double roll_deg = 0.0, pitch_deg = 0.0, yaw_deg = 0.0;
  std::optional<Vec3> translation_m;
  std::optional<std::pair<double, double>> solve_distances_m;  // (source, target)
};

struct ObservationSpec {
  double range_m = 0.0;
  std::optional<double> azimuth_deg;  // forward-looking observations only
};

/// Validated run configuration. Angles are degrees in the document and
/// converted to radians at this boundary; meters pass through unchanged.
struct RunConfig {
  SonarIntrinsics fl = SonarIntrinsics::default_forward_looking();
  SonarIntrinsics ss = SonarIntrinsics::default_sidescan();
  std::optional<Direction> direction;
  PoseSpec pose;
  std::optional<ObservationSpec> observation;
  SamplingResolution resolution{};
  int sweep_angle_samples = 181;
  int sweep_pair_angle_samples = 91;
  TranslationConvention convention = TranslationConvention::target_minus_rotated_source;
  std::optional<std::string> output;

  /// Resolves the pose spec for a projection direction; throws ConfigError
  /// when required pieces are missing.
  RelativePose make_pose(Direction dir) const;
  FlObservation fl_observation() const;
  SsObservation ss_observation() const;
};

/// Parses a JSON config document. Unknown keys are rejected; malformed
/// documents report line and column; invariant violations name the field.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::filesystem::path& path);

}  // namespace ssg
