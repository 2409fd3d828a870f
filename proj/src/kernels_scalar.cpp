#include "ssg/geometry.hpp"
#include "ssg/kernels.hpp"

namespace ssg::kernels {

void transfer_clip_scalar(const RelativePose& pose, const FovLimits& fov, const TransferIo& io) {
  for (size_t i = 0; i < io.n; ++i) {
    const CartesianPoint moved = transform_point({io.x[i], io.y[i], io.z[i]}, pose);
    const SphericalPoint s = cartesian_to_spherical(moved).point;
    io.r_out[i] = s.r;
    io.theta_out[i] = s.theta;
    io.phi_out[i] = s.phi;
    io.visible[i] = fov.contains(s.r, s.theta, s.phi) ? 1 : 0;
  }
}

}  // namespace ssg::kernels
