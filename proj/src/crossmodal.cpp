#include "ssg/crossmodal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ssg {

namespace {

void check_fl_observation(const FlObservation& obs, const SonarIntrinsics& intr_fl) {
  if (!(obs.range >= intr_fl.r_min && obs.range <= intr_fl.r_max))
    throw std::invalid_argument("FlObservation.range: outside the sensor's range limits");
  if (!(std::abs(obs.azimuth) <= intr_fl.half_azimuth()))
    throw std::invalid_argument("FlObservation.azimuth: outside the sensor's azimuth aperture");
}

void check_ss_observation(const SsObservation& obs, const SonarIntrinsics& intr_ss) {
  if (!(obs.range >= intr_ss.r_min && obs.range <= intr_ss.r_max))
    throw std::invalid_argument("SsObservation.range: outside the sensor's range limits");
}

void check_sample_count(int n, const char* what) {
  if (n < 2) throw std::invalid_argument(std::string(what) + ": need at least 2 samples");
}

}  // namespace

CandidateSet fl_back_project(const FlObservation& obs, const SonarIntrinsics& intr_fl, int n_phi) {
  intr_fl.validate();
  check_sample_count(n_phi, "fl_back_project n_phi");
  check_fl_observation(obs, intr_fl);

  CandidateSet set;
  set.parameterization = CandidateSet::Parameterization::arc;
  set.source = obs;
  set.n_theta = 1;
  set.n_phi = n_phi;
  set.points.reserve(static_cast<size_t>(n_phi));
  for (double phi : detail::linspace(-intr_fl.half_elevation(), intr_fl.half_elevation(), n_phi))
    set.points.push_back({obs.range, obs.azimuth, phi});
  return set;
}

CandidateSet ss_back_project(const SsObservation& obs, const SonarIntrinsics& intr_ss, int n_theta,
                             int n_phi) {
  intr_ss.validate();
  check_sample_count(n_theta, "ss_back_project n_theta");
  check_sample_count(n_phi, "ss_back_project n_phi");
  check_ss_observation(obs, intr_ss);

  CandidateSet set;
  set.parameterization = CandidateSet::Parameterization::surface;
  set.source = obs;
  set.n_theta = n_theta;
  set.n_phi = n_phi;
  set.points.reserve(static_cast<size_t>(n_theta) * static_cast<size_t>(n_phi));
  const auto thetas = detail::linspace(-intr_ss.half_azimuth(), intr_ss.half_azimuth(), n_theta);
  const auto phis = detail::linspace(-intr_ss.half_elevation(), intr_ss.half_elevation(), n_phi);
  for (double theta : thetas)
    for (double phi : phis) set.points.push_back({obs.range, theta, phi});
  return set;
}

CandidateBatch CandidateBatch::from_arc(const FlObservation& obs, const SonarIntrinsics& intr_fl,
                                        int n_phi) {
  intr_fl.validate();
  check_sample_count(n_phi, "n_phi");
  check_fl_observation(obs, intr_fl);

  CandidateBatch b;
  b.range = obs.range;
  b.n_theta = 1;
  b.n_phi = n_phi;
  const size_t n = static_cast<size_t>(n_phi);
  b.x.resize(n);
  b.y.resize(n);
  b.z.resize(n);
  // Evaluated exactly as spherical_to_cartesian does, so arc batches and
  // point-by-point conversion agree bitwise.
  const double rct = obs.range * std::cos(obs.azimuth);
  const double rst = obs.range * std::sin(obs.azimuth);
  const auto phis = detail::linspace(-intr_fl.half_elevation(), intr_fl.half_elevation(), n_phi);
  for (size_t i = 0; i < n; ++i) {
    const double cp = std::cos(phis[i]), sp = std::sin(phis[i]);
    b.x[i] = rct * cp;
    b.y[i] = rst * cp;
    b.z[i] = obs.range * sp;
  }
  return b;
}

CandidateBatch CandidateBatch::from_surface(const SsObservation& obs,
                                            const SonarIntrinsics& intr_ss, int n_theta,
                                            int n_phi) {
  intr_ss.validate();
  check_sample_count(n_theta, "n_theta");
  check_sample_count(n_phi, "n_phi");
  check_ss_observation(obs, intr_ss);

  CandidateBatch b;
  b.range = obs.range;
  b.n_theta = n_theta;
  b.n_phi = n_phi;
  const size_t n = static_cast<size_t>(n_theta) * static_cast<size_t>(n_phi);
  b.x.resize(n);
  b.y.resize(n);
  b.z.resize(n);
  const auto thetas = detail::linspace(-intr_ss.half_azimuth(), intr_ss.half_azimuth(), n_theta);
  const auto phis = detail::linspace(-intr_ss.half_elevation(), intr_ss.half_elevation(), n_phi);
  std::vector<double> cp(phis.size()), sp(phis.size());
  for (size_t i = 0; i < phis.size(); ++i) {
    cp[i] = std::cos(phis[i]);
    sp[i] = std::sin(phis[i]);
  }
  size_t k = 0;
  for (double theta : thetas) {
    const double rct = obs.range * std::cos(theta);
    const double rst = obs.range * std::sin(theta);
    for (size_t i = 0; i < phis.size(); ++i, ++k) {
      b.x[k] = rct * cp[i];
      b.y[k] = rst * cp[i];
      b.z[k] = obs.range * sp[i];
    }
  }
  return b;
}

CandidateBatch CandidateBatch::from_points(std::span<const SphericalPoint> points) {
  CandidateBatch b;
  b.n_theta = 1;
  b.n_phi = static_cast<int>(points.size());
  b.range = points.empty() ? 0.0 : points.front().r;
  b.x.resize(points.size());
  b.y.resize(points.size());
  b.z.resize(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    const CartesianPoint c = spherical_to_cartesian(points[i]);
    b.x[i] = c.x;
    b.y[i] = c.y;
    b.z[i] = c.z;
  }
  return b;
}

void TransferBuffers::resize(size_t n) {
  r.resize(n);
  theta.resize(n);
  phi.resize(n);
  visible.resize(n);
}

void transfer_batch(const CandidateBatch& batch, const RelativePose& pose,
                    const SonarIntrinsics& intr_target, TransferBuffers& out) {
  out.resize(batch.size());
  kernels::TransferIo io;
  io.x = batch.x.data();
  io.y = batch.y.data();
  io.z = batch.z.data();
  io.n = batch.size();
  io.r_out = out.r.data();
  io.theta_out = out.theta.data();
  io.phi_out = out.phi.data();
  io.visible = out.visible.data();
  kernels::active()(pose, kernels::FovLimits::from(intr_target), io);
}

ValidSet clip_to_fov(const CandidateSet& candidates, const RelativePose& pose,
                     const SonarIntrinsics& intr_target) {
  pose.validate();
  intr_target.validate();

  const CandidateBatch batch = CandidateBatch::from_points(candidates.points);
  TransferBuffers buf;
  transfer_batch(batch, pose, intr_target, buf);

  ValidSet valid;
  for (size_t i = 0; i < buf.size(); ++i)
    if (buf.visible[i]) valid.points.push_back({buf.r[i], buf.theta[i], buf.phi[i]});
  return valid;
}

ProjectionRegion make_span_region(const TransferBuffers& buf, bool keep_samples) {
  ProjectionRegion region;
  region.kind = ProjectionRegion::Kind::ss_span;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  size_t survivors = 0;
  for (size_t i = 0; i < buf.size(); ++i) {
    if (!buf.visible[i]) continue;
    ++survivors;
    lo = std::min(lo, buf.r[i]);
    hi = std::max(hi, buf.r[i]);
    if (keep_samples) region.ranges.push_back(buf.r[i]);
  }
  if (survivors == 0) return region;  // not_visible, zeroed metrics
  region.not_visible = false;
  region.r_lo = lo;
  region.r_hi = hi;
  region.span_length = hi - lo;
  return region;
}

ProjectionRegion make_area_region(const TransferBuffers& buf, PolarRaster& raster,
                                  bool keep_samples) {
  ProjectionRegion region;
  region.kind = ProjectionRegion::Kind::fl_region;
  raster.clear();
  size_t survivors = 0;
  for (size_t i = 0; i < buf.size(); ++i) {
    if (!buf.visible[i]) continue;
    ++survivors;
    raster.mark(buf.r[i], buf.theta[i]);
    if (keep_samples) region.samples.push_back({buf.r[i], buf.theta[i]});
  }
  if (survivors == 0) return region;
  region.not_visible = false;
  region.area = raster.area();
  return region;
}

ProjectionRegion fl_to_ss(const FlObservation& obs, const RelativePose& pose,
                          const SonarIntrinsics& intr_fl, const SonarIntrinsics& intr_ss,
                          int n_phi, bool keep_samples) {
  pose.validate();
  intr_ss.validate();
  const CandidateBatch batch = CandidateBatch::from_arc(obs, intr_fl, n_phi);
  TransferBuffers buf;
  transfer_batch(batch, pose, intr_ss, buf);
  return make_span_region(buf, keep_samples);
}

ProjectionRegion ss_to_fl(const SsObservation& obs, const RelativePose& pose,
                          const SonarIntrinsics& intr_ss, const SonarIntrinsics& intr_fl,
                          int n_theta, int n_phi, const AreaRaster& raster, bool keep_samples) {
  pose.validate();
  intr_fl.validate();
  const CandidateBatch batch = CandidateBatch::from_surface(obs, intr_ss, n_theta, n_phi);
  TransferBuffers buf;
  transfer_batch(batch, pose, intr_fl, buf);
  PolarRaster cells(intr_fl, raster);
  return make_area_region(buf, cells, keep_samples);
}

double span_length(const ValidSet& valid) {
  if (valid.points.empty()) return 0.0;
  double lo = valid.points.front().r, hi = lo;
  for (const SphericalPoint& p : valid.points) {
    lo = std::min(lo, p.r);
    hi = std::max(hi, p.r);
  }
  return hi - lo;
}

namespace {

int cell_count(double extent, double step, const char* what) {
  if (!(step > 0.0)) throw std::invalid_argument(std::string(what) + ": must be > 0");
  const double q = extent / step;
  long long n = std::llround(q);
  if (std::abs(q - static_cast<double>(n)) > 1e-6) n = static_cast<long long>(std::ceil(q));
  return static_cast<int>(std::max(1LL, n));
}

}  // namespace

PolarRaster::PolarRaster(const SonarIntrinsics& intr_fl, const AreaRaster& cells)
    : r_min_(intr_fl.r_min),
      r_max_(intr_fl.r_max),
      half_az_(intr_fl.half_azimuth()),
      n_r_(cells.range_cells),
      n_t_(cells.azimuth_cells) {
  if (n_r_ < 1 || n_t_ < 1) throw std::invalid_argument("AreaRaster: cell counts must be >= 1");
  dr_ = (r_max_ - r_min_) / n_r_;
  dtheta_ = intr_fl.azimuth_aperture / n_t_;
  marks_.assign(static_cast<size_t>(n_r_) * static_cast<size_t>(n_t_), 0);
}

PolarRaster::PolarRaster(const SonarIntrinsics& intr_fl, double dr, double dtheta)
    : r_min_(intr_fl.r_min),
      r_max_(intr_fl.r_max),
      half_az_(intr_fl.half_azimuth()),
      dr_(dr),
      dtheta_(dtheta) {
  n_r_ = cell_count(r_max_ - r_min_, dr, "region_area dr");
  n_t_ = cell_count(intr_fl.azimuth_aperture, dtheta, "region_area dtheta");
  marks_.assign(static_cast<size_t>(n_r_) * static_cast<size_t>(n_t_), 0);
}

void PolarRaster::clear() { std::fill(marks_.begin(), marks_.end(), 0); }

bool PolarRaster::mark(double range, double azimuth) {
  if (!(range >= r_min_ && range <= r_max_ && std::abs(azimuth) <= half_az_)) return false;
  int ir = static_cast<int>((range - r_min_) / dr_);
  int it = static_cast<int>((azimuth + half_az_) / dtheta_);
  ir = std::clamp(ir, 0, n_r_ - 1);  // upper edges are inclusive
  it = std::clamp(it, 0, n_t_ - 1);
  marks_[static_cast<size_t>(ir) * static_cast<size_t>(n_t_) + static_cast<size_t>(it)] = 1;
  return true;
}

double PolarRaster::area() const {
  double total = 0.0;
  for (int ir = 0; ir < n_r_; ++ir) {
    const double cell = cell_area(ir);
    const uint8_t* row = marks_.data() + static_cast<size_t>(ir) * static_cast<size_t>(n_t_);
    for (int it = 0; it < n_t_; ++it)
      if (row[it]) total += cell;
  }
  return total;
}

long PolarRaster::marked_count() const {
  long n = 0;
  for (uint8_t m : marks_) n += m;
  return n;
}

bool PolarRaster::marked(int range_cell, int azimuth_cell) const {
  return marks_[static_cast<size_t>(range_cell) * static_cast<size_t>(n_t_) +
                static_cast<size_t>(azimuth_cell)] != 0;
}

double PolarRaster::cell_area(int range_cell) const {
  const double r_center = r_min_ + (range_cell + 0.5) * dr_;
  return r_center * dr_ * dtheta_;
}

double region_area(std::span<const FlObservation> samples, const SonarIntrinsics& intr_fl,
                   double dr, double dtheta) {
  intr_fl.validate();
  PolarRaster raster(intr_fl, dr, dtheta);
  for (const FlObservation& s : samples) raster.mark(s.range, s.azimuth);
  return raster.area();
}

double direct_ss_range(const SphericalPoint& p, const RelativePose& pose) {
  const Mat3& R = pose.rotation;
  const double t[3] = {pose.translation.x, pose.translation.y, pose.translation.z};
  const double ct = std::cos(p.theta), st = std::sin(p.theta);
  const double cp = std::cos(p.phi), sp = std::sin(p.phi);
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double c = R(i, 0) * p.r * ct * cp + R(i, 1) * p.r * st * cp + R(i, 2) * p.r * sp + t[i];
    sum += c * c;
  }
  return std::sqrt(sum);
}

FlObservation direct_fl_observation(const SphericalPoint& p, const RelativePose& pose) {
  const Mat3& R = pose.rotation;
  const double t[3] = {pose.translation.x, pose.translation.y, pose.translation.z};
  const double ct = std::cos(p.theta), st = std::sin(p.theta);
  const double cp = std::cos(p.phi), sp = std::sin(p.phi);
  double c[3];
  for (int i = 0; i < 3; ++i)
    c[i] = R(i, 0) * p.r * ct * cp + R(i, 1) * p.r * st * cp + R(i, 2) * p.r * sp + t[i];
  const double r = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
  double theta = std::atan2(c[1], c[0]);
  if (theta == -kPi) theta = kPi;
  return {r, theta};
}

}  // namespace ssg
