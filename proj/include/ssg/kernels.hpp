#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "ssg/types.hpp"

namespace ssg::kernels {

/// Target field of view in the form the inner loop consumes.
struct FovLimits {
  double r_min = 0.0;
  double r_max = 0.0;
  double half_azimuth = 0.0;
  double half_elevation = 0.0;

  static FovLimits from(const SonarIntrinsics& intr) {
    return {intr.r_min, intr.r_max, intr.half_azimuth(), intr.half_elevation()};
  }

  bool contains(double r, double theta, double phi) const {
    return r >= r_min && r <= r_max && std::abs(theta) <= half_azimuth &&
           std::abs(phi) <= half_elevation;
  }
};

/// Structure-of-arrays batch: source-frame cartesian points in, target-frame
/// spherical points and a visibility mask out. All output arrays must hold at
/// least n elements; visible[i] is 1 or 0. Points that land exactly on the
/// target origin come out as (0, 0, 0).
struct TransferIo {
  const double* x = nullptr;
  const double* y = nullptr;
  const double* z = nullptr;
  size_t n = 0;
  double* r_out = nullptr;
  double* theta_out = nullptr;
  double* phi_out = nullptr;
  uint8_t* visible = nullptr;
};

using TransferFn = void (*)(const RelativePose&, const FovLimits&, const TransferIo&);

/// Reference implementation: one point at a time through the same scalar path
/// as transform_point / cartesian_to_spherical / in_fov.
void transfer_clip_scalar(const RelativePose& pose, const FovLimits& fov, const TransferIo& io);

#if defined(SSG_HAVE_AVX2_KERNEL)
/// AVX2+FMA implementation, four points per iteration. Agrees with the scalar
/// kernel to a few ulp on every output; the visibility mask can differ only
/// for points within that rounding distance of an FOV boundary.
void transfer_clip_avx2(const RelativePose& pose, const FovLimits& fov, const TransferIo& io);
#endif

enum class Variant { auto_detect, scalar, avx2 };

/// Picks the kernel used by the crossmodal batch paths. auto_detect (the
/// default) probes CPU support once. Throws std::runtime_error if an
/// unavailable variant is requested.
void select(Variant v);

TransferFn active();
std::string_view active_name();

/// True when the AVX2 kernel is both compiled in and supported by this CPU.
bool avx2_available();

}  // namespace ssg::kernels
