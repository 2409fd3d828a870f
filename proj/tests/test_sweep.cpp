#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <cstring>
#include <vector>

#include "ssg/sweep.hpp"
#include "support.hpp"

using namespace ssg;

namespace {

const SonarIntrinsics kFl = SonarIntrinsics::default_forward_looking();
const SonarIntrinsics kSs = SonarIntrinsics::default_sidescan();

bool records_equal(const std::vector<SweepRecord>& a, const std::vector<SweepRecord>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].roll != b[i].roll || a[i].pitch != b[i].pitch || a[i].yaw != b[i].yaw ||
        a[i].d_source != b[i].d_source || a[i].d_target != b[i].d_target ||
        a[i].metric != b[i].metric || a[i].visible != b[i].visible)
      return false;
  }
  return true;
}

double max_abs_entry(const Mat3& a, const Mat3& b) {
  double worst = 0.0;
  for (int i = 0; i < 9; ++i)
    worst = std::max(worst, std::abs(a.m[static_cast<size_t>(i)] - b.m[static_cast<size_t>(i)]));
  return worst;
}

SweepScenario small_scenario(Direction direction) {
  SweepScenario s;
  s.direction = direction;
  s.source = direction == Direction::fl_to_ss ? kFl : kSs;
  s.target = direction == Direction::fl_to_ss ? kSs : kFl;
  s.swept = {{EulerAngle::roll, 0.0, kPi, 7}};
  s.source_distance_fracs = {0.5};
  s.target_distance_fracs = {0.3, 0.6};
  s.resolution.arc_phi = 256;
  s.resolution.surface_theta = 128;
  s.resolution.surface_phi = 16;
  s.resolution.raster = {128, 128};
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("sweep");

TEST_CASE("rotation_from_rpy anchors") {
  CHECK(max_abs_entry(rotation_from_rpy(0, 0, 0), Mat3::identity()) == 0.0);

  const Mat3 half_turn = rotation_from_rpy(kPi, 0, 0);
  CHECK(max_abs_entry(half_turn, Mat3{{1, 0, 0, 0, -1, 0, 0, 0, -1}}) < 1e-15);

  // Fixture from a separate elementary-rotation multiply.
  const Mat3 R = rotation_from_rpy(0.3, 0.2, 0.1);
  const Mat3 expected{{0.975170327201816, -0.03695701352462508, 0.21835066314633444,
                       0.09784339500725571, 0.9564250858492325, -0.2750958473182437,
                       -0.19866933079506122, 0.28962947762551555, 0.9362933635841992}};
  CHECK(max_abs_entry(R, expected) < 1e-15);
}

TEST_CASE("rotation_from_rpy is orthonormal") {
  ssgtest::Rng rng(401);
  for (int i = 0; i < 500; ++i) {
    const Mat3 R = rotation_from_rpy(ssgtest::uniform(rng, -kPi, kPi),
                                     ssgtest::uniform(rng, -kPi, kPi),
                                     ssgtest::uniform(rng, -kPi, kPi));
    CHECK(max_abs_entry(R * R.transposed(), Mat3::identity()) < 1e-12);
    CHECK(std::abs(R.determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("solve_translation places the feature as requested") {
  const Vec3 zero = solve_translation({1, 0, 0}, {1, 0, 0}, Mat3::identity());
  CHECK(zero.norm() == 0.0);

  const Vec3 offset = solve_translation({5, 0, 0}, {15, 0, 0}, Mat3::identity());
  CHECK(offset.x == 10.0);
  CHECK(offset.y == 0.0);
  CHECK(offset.z == 0.0);

  // Fixture verified by applying the transform forward: the x axis is
  // invariant under roll, so the translation is purely along x.
  const Vec3 rolled = solve_translation({5, 0, 0}, {15, 0, 0}, rotation_x(kPi / 2));
  CHECK(rolled.x == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(std::abs(rolled.y) < 1e-15);
  CHECK(std::abs(rolled.z) < 1e-15);

  ssgtest::Rng rng(402);
  for (int i = 0; i < 500; ++i) {
    const Mat3 R = ssgtest::random_rotation(rng);
    const CartesianPoint src{ssgtest::uniform(rng, -20, 20), ssgtest::uniform(rng, -20, 20),
                             ssgtest::uniform(rng, -20, 20)};
    const CartesianPoint tgt{ssgtest::uniform(rng, -20, 20), ssgtest::uniform(rng, -20, 20),
                             ssgtest::uniform(rng, -20, 20)};
    RelativePose pose;
    pose.rotation = R;
    pose.translation = solve_translation(src, tgt, R);
    const CartesianPoint moved = transform_point(src, pose);
    CHECK(std::abs(moved.x - tgt.x) < 1e-12);
    CHECK(std::abs(moved.y - tgt.y) < 1e-12);
    CHECK(std::abs(moved.z - tgt.z) < 1e-12);

    // The alternative symbol order solves the reverse placement.
    const Vec3 literal =
        solve_translation(src, tgt, R, TranslationConvention::source_minus_rotated_target);
    const Vec3 expected = Vec3{src.x, src.y, src.z} - R * Vec3{tgt.x, tgt.y, tgt.z};
    CHECK((literal - expected).norm() == 0.0);
  }
}

TEST_CASE("run_scenario grid cardinality and lexicographic order") {
  SweepScenario s = small_scenario(Direction::fl_to_ss);
  s.swept = {{EulerAngle::pitch, 0.0, kPi, 2}};
  s.source_distance_fracs = {0.5};
  s.target_distance_fracs = {0.5};
  const std::vector<SweepRecord> two = run_scenario(s);
  REQUIRE(two.size() == 2);
  CHECK(two[0].pitch == 0.0);
  CHECK(two[1].pitch == kPi);
  CHECK(two[0].roll == 0.0);
  CHECK(two[0].yaw == 0.0);
  CHECK(two[0].d_source == 5.0);
  CHECK(two[0].d_target == 15.0);

  SweepScenario grid = small_scenario(Direction::fl_to_ss);
  grid.swept = {{EulerAngle::roll, 0.0, kPi, 3}, {EulerAngle::yaw, 0.0, kPi, 2}};
  grid.source_distance_fracs = {0.4, 0.5};
  grid.target_distance_fracs = {0.2, 0.3, 0.6};
  const std::vector<SweepRecord> records = run_scenario(grid);
  REQUIRE(records.size() == 3 * 2 * 2 * 3);
  size_t idx = 0;
  for (double roll : detail::linspace(0.0, kPi, 3))
    for (double yaw : detail::linspace(0.0, kPi, 2))
      for (double fs : grid.source_distance_fracs)
        for (double ft : grid.target_distance_fracs) {
          CHECK(records[idx].roll == roll);
          CHECK(records[idx].yaw == yaw);
          CHECK(records[idx].pitch == 0.0);
          CHECK(records[idx].d_source == fs * kFl.r_max);
          CHECK(records[idx].d_target == ft * kSs.r_max);
          ++idx;
        }
}

TEST_CASE("run_scenario is deterministic and thread-count independent") {
  for (Direction dir : {Direction::fl_to_ss, Direction::ss_to_fl}) {
    const SweepScenario s = small_scenario(dir);
    const std::vector<SweepRecord> a = run_scenario(s, 1);
    const std::vector<SweepRecord> b = run_scenario(s, 1);
    const std::vector<SweepRecord> c = run_scenario(s, 3);
    CHECK(records_equal(a, b));
    CHECK(records_equal(a, c));
  }
}

TEST_CASE("scenario validation") {
  SweepScenario s = small_scenario(Direction::fl_to_ss);
  s.swept.clear();
  CHECK_THROWS_AS(run_scenario(s), std::invalid_argument);

  s = small_scenario(Direction::fl_to_ss);
  s.source_distance_fracs = {1.5};
  CHECK_THROWS_AS(run_scenario(s), std::invalid_argument);

  s = small_scenario(Direction::fl_to_ss);
  s.swept[0].samples = 1;
  CHECK_THROWS_AS(run_scenario(s), std::invalid_argument);

  s = small_scenario(Direction::fl_to_ss);
  s.swept = {{EulerAngle::roll, 0.0, kPi, 3}, {EulerAngle::roll, 0.0, kPi, 3}};
  CHECK_THROWS_AS(run_scenario(s), std::invalid_argument);
}

TEST_CASE("standard suite shape") {
  const std::vector<SweepScenario> suite = standard_suite(Direction::fl_to_ss, kFl, kSs);
  REQUIRE(suite.size() == 9);
  for (int i = 0; i < 9; ++i) CHECK(suite[static_cast<size_t>(i)].index == i + 1);

  const std::vector<double> tenths = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  CHECK(suite[0].swept.size() == 1);
  CHECK(suite[0].swept[0].angle == EulerAngle::roll);
  CHECK(suite[0].swept[0].samples == 181);
  CHECK(suite[0].source_distance_fracs == std::vector<double>{0.5});
  CHECK(suite[0].target_distance_fracs == tenths);
  CHECK(suite[1].swept[0].angle == EulerAngle::pitch);
  CHECK(suite[2].swept[0].angle == EulerAngle::yaw);

  CHECK(suite[3].source_distance_fracs == tenths);
  CHECK(suite[3].target_distance_fracs == std::vector<double>{0.5});

  CHECK(suite[6].swept.size() == 2);
  CHECK(suite[6].swept[0].angle == EulerAngle::roll);
  CHECK(suite[6].swept[1].angle == EulerAngle::pitch);
  CHECK(suite[6].swept[0].samples == 91);
  CHECK(suite[7].swept[0].angle == EulerAngle::pitch);
  CHECK(suite[7].swept[1].angle == EulerAngle::yaw);
  CHECK(suite[8].swept[0].angle == EulerAngle::yaw);
  CHECK(suite[8].swept[1].angle == EulerAngle::roll);

  for (const SweepScenario& s : suite) {
    CHECK(s.fixed_roll == 0.0);
    CHECK(s.fixed_pitch == 0.0);
    CHECK(s.fixed_yaw == 0.0);
    CHECK(s.source.r_max == kFl.r_max);
    CHECK(s.target.r_max == kSs.r_max);
  }

  // Mirrored direction swaps the sensor roles.
  const std::vector<SweepScenario> back = standard_suite(Direction::ss_to_fl, kFl, kSs);
  CHECK(back[0].source.r_max == kSs.r_max);
  CHECK(back[0].target.r_max == kFl.r_max);
  CHECK(back[0].source_distance_fracs == std::vector<double>{0.5});

  const std::vector<SweepScenario> both = default_suite();
  CHECK(both.size() == 18);
  for (size_t i = 0; i < 9; ++i) CHECK(both[i].direction == Direction::fl_to_ss);
  for (size_t i = 9; i < 18; ++i) CHECK(both[i].direction == Direction::ss_to_fl);
}

TEST_CASE("aligned orientations keep the range span short") {
  // Flipped-but-aligned axes vs a quarter-turn pitch, both distances at 50%.
  const double d_fl = 0.5 * kFl.r_max, d_ss = 0.5 * kSs.r_max;
  const auto span_at = [&](double roll, double pitch, double yaw) {
    RelativePose pose;
    pose.rotation = rotation_from_rpy(roll, pitch, yaw);
    pose.translation = solve_translation({d_fl, 0, 0}, {d_ss, 0, 0}, pose.rotation);
    return fl_to_ss({d_fl, 0.0}, pose, kFl, kSs, 1024, false).span_length;
  };

  const double reference = span_at(0.0, kPi / 2, 0.0);
  CHECK(reference > 1.0);  // the long-span orientation spans over a meter here
  for (double roll : {0.0, kPi})
    for (double pitch : {0.0, kPi})
      for (double yaw : {0.0, kPi}) CHECK(span_at(roll, pitch, yaw) <= 1.01 * reference);
}

TEST_CASE("a quarter-turn roll minimizes the projected area") {
  const double d_ss = 0.5 * kSs.r_max, d_fl = 0.5 * kFl.r_max;
  const auto area_at = [&](double roll, double pitch, double yaw) {
    RelativePose pose;
    pose.rotation = rotation_from_rpy(roll, pitch, yaw);
    pose.translation = solve_translation({d_ss, 0, 0}, {d_fl, 0, 0}, pose.rotation);
    return ss_to_fl({d_ss}, pose, kSs, kFl, 512, 64, {512, 512}, false).area;
  };

  const double reference = area_at(0.0, kPi / 2, 0.0);
  CHECK(reference > 0.01);
  for (double pitch : {0.0, kPi})
    for (double yaw : {0.0, kPi}) CHECK(area_at(kPi / 2, pitch, yaw) <= 1.01 * reference);
}

TEST_CASE("every record of a boresight sweep sees the feature inside the region") {
  for (Direction dir : {Direction::fl_to_ss, Direction::ss_to_fl}) {
    const SweepScenario s = small_scenario(dir);
    const std::vector<SweepRecord> records = run_scenario(s);
    for (const SweepRecord& rec : records) {
      CHECK(rec.visible);
      CHECK(rec.metric >= 0.0);

      // Rebuild the grid point and check the true feature projection against
      // the region, within the sampling-resolution bound.
      RelativePose pose;
      pose.rotation = rotation_from_rpy(rec.roll, rec.pitch, rec.yaw);
      pose.translation = solve_translation({rec.d_source, 0, 0}, {rec.d_target, 0, 0},
                                           pose.rotation);
      if (dir == Direction::fl_to_ss) {
        const ProjectionRegion region =
            fl_to_ss({rec.d_source, 0.0}, pose, s.source, s.target, s.resolution.arc_phi);
        REQUIRE_FALSE(region.not_visible);
        CHECK(region.span_length == rec.metric);
        const double bound =
            rec.d_source * s.source.elevation_aperture / (s.resolution.arc_phi - 1);
        double nearest = std::numeric_limits<double>::infinity();
        for (double r : region.ranges) nearest = std::min(nearest, std::abs(r - rec.d_target));
        CHECK(nearest <= bound + 1e-12);
      } else {
        const ProjectionRegion region =
            ss_to_fl({rec.d_source}, pose, s.source, s.target, s.resolution.surface_theta,
                     s.resolution.surface_phi, s.resolution.raster);
        REQUIRE_FALSE(region.not_visible);
        CHECK(region.area == rec.metric);
        const double dth = s.source.azimuth_aperture / (s.resolution.surface_theta - 1);
        const double dph = s.source.elevation_aperture / (s.resolution.surface_phi - 1);
        const double bound = rec.d_source * std::sqrt(dth * dth + dph * dph);
        const FlObservation truth{rec.d_target, 0.0};
        double nearest = std::numeric_limits<double>::infinity();
        for (const FlObservation& sample : region.samples)
          nearest = std::min(nearest, ssgtest::fl_image_distance(sample, truth));
        CHECK(nearest <= bound + 1e-12);
      }
    }
  }
}

TEST_CASE("halving the raster cells changes areas by less than the marked perimeter") {
  const SweepScenario s = small_scenario(Direction::ss_to_fl);
  const AreaRaster coarse_cells{128, 128};
  const AreaRaster fine_cells{256, 256};

  const std::vector<SweepRecord> records = run_scenario(s);
  for (const SweepRecord& rec : records) {
    RelativePose pose;
    pose.rotation = rotation_from_rpy(rec.roll, rec.pitch, rec.yaw);
    pose.translation =
        solve_translation({rec.d_source, 0, 0}, {rec.d_target, 0, 0}, pose.rotation);
    const ProjectionRegion coarse = ss_to_fl({rec.d_source}, pose, s.source, s.target,
                                             s.resolution.surface_theta,
                                             s.resolution.surface_phi, coarse_cells);
    const ProjectionRegion fine = ss_to_fl({rec.d_source}, pose, s.source, s.target,
                                           s.resolution.surface_theta,
                                           s.resolution.surface_phi, fine_cells, false);

    PolarRaster marks(s.target, coarse_cells);
    for (const FlObservation& sample : coarse.samples) marks.mark(sample.range, sample.azimuth);
    double perimeter_area = 0.0;
    const int nr = marks.range_cells(), nt = marks.azimuth_cells();
    for (int ir = 0; ir < nr; ++ir)
      for (int it = 0; it < nt; ++it) {
        if (!marks.marked(ir, it)) continue;
        const bool interior = ir > 0 && ir + 1 < nr && it > 0 && it + 1 < nt &&
                              marks.marked(ir - 1, it) && marks.marked(ir + 1, it) &&
                              marks.marked(ir, it - 1) && marks.marked(ir, it + 1);
        if (!interior) perimeter_area += marks.cell_area(ir);
      }

    CHECK(fine.area <= coarse.area);  // refined cells nest inside coarse ones
    CHECK(std::abs(fine.area - coarse.area) < std::max(perimeter_area, 1e-300));
  }
}

TEST_SUITE_END();
