#pragma once

#include <span>
#include <variant>
#include <vector>

#include "ssg/geometry.hpp"
#include "ssg/kernels.hpp"

namespace ssg {

/// Back-projected 3D candidate locations of an observed feature, expressed in
/// the source sonar frame. A forward-looking observation yields an arc over
/// elevation; a sidescan observation yields a constant-range surface sampled
/// on an azimuth x elevation grid (azimuth-major order, elevation fastest).
struct CandidateSet {
  enum class Parameterization { arc, surface };

  Parameterization parameterization = Parameterization::arc;
  std::vector<SphericalPoint> points;
  std::variant<FlObservation, SsObservation> source;
  int n_theta = 1;  // arc sets have n_theta == 1
  int n_phi = 0;
};

/// Candidates transferred into the target sonar frame that survived the FOV
/// clip, in candidate order. Empty is a legitimate outcome.
struct ValidSet {
  std::vector<SphericalPoint> points;
};

/// Where a feature observed by one sonar can appear in the other sonar's
/// measurement space, plus the summary metric for that space: the length of
/// the surviving range span (projection into sidescan) or the rasterized
/// image area (projection into forward-looking).
struct ProjectionRegion {
  enum class Kind { ss_span, fl_region };

  Kind kind = Kind::ss_span;
  bool not_visible = true;  // set iff no candidate survived the clip

  // ss_span
  double r_lo = 0.0;
  double r_hi = 0.0;
  double span_length = 0.0;
  std::vector<double> ranges;  // surviving ranges, candidate order (optional)

  // fl_region
  std::vector<FlObservation> samples;  // surviving (range, azimuth), candidate order (optional)
  double area = 0.0;                   // square meters
};

/// Cell counts for the polar rasterization used by the area metric.
struct AreaRaster {
  int range_cells = 512;
  int azimuth_cells = 512;
};

CandidateSet fl_back_project(const FlObservation& obs, const SonarIntrinsics& intr_fl, int n_phi);

CandidateSet ss_back_project(const SsObservation& obs, const SonarIntrinsics& intr_ss, int n_theta,
                             int n_phi);

/// Transfers every candidate into the target frame and keeps the ones inside
/// the target FOV, preserving order.
ValidSet clip_to_fov(const CandidateSet& candidates, const RelativePose& pose,
                     const SonarIntrinsics& intr_target);

/// Projects a forward-looking observation into sidescan measurement space.
ProjectionRegion fl_to_ss(const FlObservation& obs, const RelativePose& pose,
                          const SonarIntrinsics& intr_fl, const SonarIntrinsics& intr_ss,
                          int n_phi = 1024, bool keep_samples = true);

/// Projects a sidescan observation into forward-looking image space.
ProjectionRegion ss_to_fl(const SsObservation& obs, const RelativePose& pose,
                          const SonarIntrinsics& intr_ss, const SonarIntrinsics& intr_fl,
                          int n_theta = 512, int n_phi = 64, const AreaRaster& raster = {},
                          bool keep_samples = true);

double span_length(const ValidSet& valid);

/// Metric area of the image-space cells hit by at least one sample: the
/// forward-looking plane [r_min, r_max] x [-az/2, +az/2] is rasterized into
/// dr x dtheta polar cells and each marked cell contributes
/// r_center * dr * dtheta. Samples outside the plane are ignored.
double region_area(std::span<const FlObservation> samples, const SonarIntrinsics& intr_fl,
                   double dr, double dtheta);

/// Range of a transferred source point as one expanded expression (the range
/// row of the direct projection equations). Independent algebraic route for
/// cross-checking the pipeline output.
double direct_ss_range(const SphericalPoint& p, const RelativePose& pose);

/// Range and azimuth of a transferred source point as expanded expressions,
/// with the full-quadrant arctangent for azimuth recovery.
FlObservation direct_fl_observation(const SphericalPoint& p, const RelativePose& pose);

// ---------------------------------------------------------------------------
// Streaming building blocks. The region operations above are composed from
// these; the sweep harness uses them directly so the per-candidate
// trigonometry is paid once per observation instead of once per pose.

/// Source-frame cartesian coordinates of a candidate set, structure-of-arrays.
struct CandidateBatch {
  std::vector<double> x, y, z;
  double range = 0.0;  // shared observation range
  int n_theta = 1;
  int n_phi = 0;

  size_t size() const { return x.size(); }

  static CandidateBatch from_arc(const FlObservation& obs, const SonarIntrinsics& intr_fl,
                                 int n_phi);
  static CandidateBatch from_surface(const SsObservation& obs, const SonarIntrinsics& intr_ss,
                                     int n_theta, int n_phi);
  static CandidateBatch from_points(std::span<const SphericalPoint> points);
};

/// Reusable transfer outputs.
struct TransferBuffers {
  std::vector<double> r, theta, phi;
  std::vector<uint8_t> visible;

  size_t size() const { return r.size(); }
  void resize(size_t n);
};

/// Runs the active transfer kernel over a batch.
void transfer_batch(const CandidateBatch& batch, const RelativePose& pose,
                    const SonarIntrinsics& intr_target, TransferBuffers& out);

/// Marked-cell bitmap over the forward-looking image plane.
class PolarRaster {
 public:
  PolarRaster(const SonarIntrinsics& intr_fl, const AreaRaster& cells);
  PolarRaster(const SonarIntrinsics& intr_fl, double dr, double dtheta);

  void clear();
  /// Marks the cell containing (range, azimuth); returns false when the
  /// sample lies outside the image plane.
  bool mark(double range, double azimuth);
  /// Sum of r_center * dr * dtheta over marked cells, accumulated in fixed
  /// cell-index order (range-major).
  double area() const;

  long marked_count() const;
  bool marked(int range_cell, int azimuth_cell) const;
  int range_cells() const { return n_r_; }
  int azimuth_cells() const { return n_t_; }
  double dr() const { return dr_; }
  double dtheta() const { return dtheta_; }
  double cell_area(int range_cell) const;

 private:
  double r_min_, r_max_, half_az_;
  double dr_, dtheta_;
  int n_r_, n_t_;
  std::vector<uint8_t> marks_;
};

ProjectionRegion make_span_region(const TransferBuffers& buf, bool keep_samples);
ProjectionRegion make_area_region(const TransferBuffers& buf, PolarRaster& raster,
                                  bool keep_samples);

}  // namespace ssg
