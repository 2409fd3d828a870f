#include "ssg/sweep.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace ssg {

Mat3 rotation_x(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {{1, 0, 0, 0, c, -s, 0, s, c}};
}

Mat3 rotation_y(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {{c, 0, s, 0, 1, 0, -s, 0, c}};
}

Mat3 rotation_z(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {{c, -s, 0, s, c, 0, 0, 0, 1}};
}

Mat3 rotation_from_rpy(double roll, double pitch, double yaw) {
  return rotation_z(yaw) * rotation_y(pitch) * rotation_x(roll);
}

Vec3 solve_translation(const CartesianPoint& feature_in_source,
                       const CartesianPoint& feature_in_target, const Mat3& rotation,
                       TranslationConvention convention) {
  const Vec3 src{feature_in_source.x, feature_in_source.y, feature_in_source.z};
  const Vec3 tgt{feature_in_target.x, feature_in_target.y, feature_in_target.z};
  if (convention == TranslationConvention::target_minus_rotated_source)
    return tgt - rotation * src;
  return src - rotation * tgt;
}

void SweepScenario::validate() const {
  source.validate();
  target.validate();
  if (swept.empty() || swept.size() > 2)
    throw std::invalid_argument("SweepScenario.swept: need one or two swept angles");
  if (swept.size() == 2 && swept[0].angle == swept[1].angle)
    throw std::invalid_argument("SweepScenario.swept: the two swept angles must differ");
  for (const AngleSweep& s : swept)
    if (s.samples < 2) throw std::invalid_argument("SweepScenario.swept: need >= 2 angle samples");
  if (source_distance_fracs.empty() || target_distance_fracs.empty())
    throw std::invalid_argument("SweepScenario: distance fraction lists must be non-empty");
  for (double f : source_distance_fracs)
    if (!(f > 0.0 && f < 1.0))
      throw std::invalid_argument("SweepScenario.source_distance_fracs: must be in (0, 1)");
  for (double f : target_distance_fracs)
    if (!(f > 0.0 && f < 1.0))
      throw std::invalid_argument("SweepScenario.target_distance_fracs: must be in (0, 1)");
}

namespace {

struct AngleAssembler {
  double roll, pitch, yaw;

  AngleAssembler(const SweepScenario& s) : roll(s.fixed_roll), pitch(s.fixed_pitch), yaw(s.fixed_yaw) {}

  void set(EulerAngle which, double value) {
    switch (which) {
      case EulerAngle::roll: roll = value; return;
      case EulerAngle::pitch: pitch = value; return;
      case EulerAngle::yaw: yaw = value; return;
    }
  }
};

}  // namespace

std::vector<SweepRecord> run_scenario(const SweepScenario& scenario, int threads) {
  scenario.validate();

  const auto angles1 = detail::linspace(scenario.swept[0].lo, scenario.swept[0].hi,
                                        scenario.swept[0].samples);
  const std::vector<double> angles2 =
      scenario.swept.size() == 2
          ? detail::linspace(scenario.swept[1].lo, scenario.swept[1].hi, scenario.swept[1].samples)
          : std::vector<double>{0.0};  // placeholder; unused when there is no second sweep

  std::vector<double> d_source, d_target;
  for (double f : scenario.source_distance_fracs) d_source.push_back(f * scenario.source.r_max);
  for (double f : scenario.target_distance_fracs) d_target.push_back(f * scenario.target.r_max);

  // The candidate set depends only on the source observation, so build one
  // batch per source distance and reuse it across every pose.
  std::vector<CandidateBatch> batches;
  batches.reserve(d_source.size());
  for (double d : d_source) {
    if (scenario.direction == Direction::fl_to_ss)
      batches.push_back(CandidateBatch::from_arc({d, 0.0}, scenario.source,
                                                 scenario.resolution.arc_phi));
    else
      batches.push_back(CandidateBatch::from_surface({d}, scenario.source,
                                                     scenario.resolution.surface_theta,
                                                     scenario.resolution.surface_phi));
  }

  const size_t n1 = angles1.size();
  const size_t n2 = angles2.size();
  const size_t ns = d_source.size();
  const size_t nt = d_target.size();
  const size_t total = n1 * n2 * ns * nt;
  std::vector<SweepRecord> records(total);

  const auto evaluate_range = [&](size_t begin, size_t end) {
    TransferBuffers buf;
    PolarRaster raster(scenario.target, scenario.resolution.raster);
    for (size_t idx = begin; idx < end; ++idx) {
      // Lexicographic decode: angle1 is the slowest index, d_target the fastest.
      const size_t i1 = idx / (n2 * ns * nt);
      const size_t i2 = (idx / (ns * nt)) % n2;
      const size_t is = (idx / nt) % ns;
      const size_t it = idx % nt;

      AngleAssembler rpy(scenario);
      rpy.set(scenario.swept[0].angle, angles1[i1]);
      if (scenario.swept.size() == 2) rpy.set(scenario.swept[1].angle, angles2[i2]);

      RelativePose pose;
      pose.rotation = rotation_from_rpy(rpy.roll, rpy.pitch, rpy.yaw);
      pose.translation = solve_translation({d_source[is], 0.0, 0.0}, {d_target[it], 0.0, 0.0},
                                           pose.rotation, scenario.convention);

      transfer_batch(batches[is], pose, scenario.target, buf);
      ProjectionRegion region;
      double metric;
      if (scenario.direction == Direction::fl_to_ss) {
        region = make_span_region(buf, /*keep_samples=*/false);
        metric = region.span_length;
      } else {
        region = make_area_region(buf, raster, /*keep_samples=*/false);
        metric = region.area;
      }
      records[idx] = {rpy.roll, rpy.pitch, rpy.yaw, d_source[is], d_target[it], metric,
                      !region.not_visible};
    }
  };

  int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  n_threads = static_cast<int>(std::min<size_t>(static_cast<size_t>(n_threads), total));

  if (n_threads <= 1) {
    evaluate_range(0, total);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(static_cast<size_t>(n_threads));
    const size_t chunk = (total + static_cast<size_t>(n_threads) - 1) / static_cast<size_t>(n_threads);
    for (int k = 0; k < n_threads; ++k) {
      const size_t begin = static_cast<size_t>(k) * chunk;
      const size_t end = std::min(total, begin + chunk);
      if (begin >= end) break;
      workers.emplace_back(evaluate_range, begin, end);
    }
    for (std::thread& w : workers) w.join();
  }
  return records;
}

std::vector<SweepScenario> standard_suite(Direction direction, const SonarIntrinsics& intr_fl,
                                          const SonarIntrinsics& intr_ss,
                                          const SamplingResolution& resolution, int angle_samples,
                                          int pair_angle_samples) {
  const SonarIntrinsics& source = direction == Direction::fl_to_ss ? intr_fl : intr_ss;
  const SonarIntrinsics& target = direction == Direction::fl_to_ss ? intr_ss : intr_fl;

  const std::vector<double> tenths = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  const std::vector<double> half = {0.5};

  const auto single = [&](int index, EulerAngle angle, const std::vector<double>& src_fracs,
                          const std::vector<double>& tgt_fracs) {
    SweepScenario s;
    s.index = index;
    s.direction = direction;
    s.swept = {{angle, 0.0, kPi, angle_samples}};
    s.source_distance_fracs = src_fracs;
    s.target_distance_fracs = tgt_fracs;
    s.source = source;
    s.target = target;
    s.resolution = resolution;
    return s;
  };
  const auto pair = [&](int index, EulerAngle a, EulerAngle b) {
    SweepScenario s;
    s.index = index;
    s.direction = direction;
    s.swept = {{a, 0.0, kPi, pair_angle_samples}, {b, 0.0, kPi, pair_angle_samples}};
    s.source_distance_fracs = half;
    s.target_distance_fracs = half;
    s.source = source;
    s.target = target;
    s.resolution = resolution;
    return s;
  };

  return {
      single(1, EulerAngle::roll, half, tenths),
      single(2, EulerAngle::pitch, half, tenths),
      single(3, EulerAngle::yaw, half, tenths),
      single(4, EulerAngle::roll, tenths, half),
      single(5, EulerAngle::pitch, tenths, half),
      single(6, EulerAngle::yaw, tenths, half),
      pair(7, EulerAngle::roll, EulerAngle::pitch),
      pair(8, EulerAngle::pitch, EulerAngle::yaw),
      pair(9, EulerAngle::yaw, EulerAngle::roll),
  };
}

std::vector<SweepScenario> default_suite() {
  const SonarIntrinsics fl = SonarIntrinsics::default_forward_looking();
  const SonarIntrinsics ss = SonarIntrinsics::default_sidescan();
  std::vector<SweepScenario> all = standard_suite(Direction::fl_to_ss, fl, ss);
  const std::vector<SweepScenario> back = standard_suite(Direction::ss_to_fl, fl, ss);
  all.insert(all.end(), back.begin(), back.end());
  return all;
}

}  // namespace ssg
