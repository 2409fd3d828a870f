#if defined(SSG_HAVE_AVX2_KERNEL)

#include "ssg/kernels.hpp"

#include "avx2_math.hpp"

namespace ssg::kernels {

namespace {

// Four points per pass. Mirrors the scalar path: rigid transform, norm,
// atan2 / asin, origin special case, then the same FOV comparisons.
inline void transfer_block(const double* Rm, const Vec3& t, const FovLimits& fov,
                           const double* px, const double* py, const double* pz,
                           double* r_out, double* theta_out, double* phi_out,
                           uint8_t* visible) {
  using namespace avx2;

  const __m256d x = _mm256_loadu_pd(px);
  const __m256d y = _mm256_loadu_pd(py);
  const __m256d z = _mm256_loadu_pd(pz);

  const __m256d xp = _mm256_fmadd_pd(
      _mm256_set1_pd(Rm[0]), x,
      _mm256_fmadd_pd(_mm256_set1_pd(Rm[1]), y,
                      _mm256_fmadd_pd(_mm256_set1_pd(Rm[2]), z, _mm256_set1_pd(t.x))));
  const __m256d yp = _mm256_fmadd_pd(
      _mm256_set1_pd(Rm[3]), x,
      _mm256_fmadd_pd(_mm256_set1_pd(Rm[4]), y,
                      _mm256_fmadd_pd(_mm256_set1_pd(Rm[5]), z, _mm256_set1_pd(t.y))));
  const __m256d zp = _mm256_fmadd_pd(
      _mm256_set1_pd(Rm[6]), x,
      _mm256_fmadd_pd(_mm256_set1_pd(Rm[7]), y,
                      _mm256_fmadd_pd(_mm256_set1_pd(Rm[8]), z, _mm256_set1_pd(t.z))));

  const __m256d n2 = _mm256_fmadd_pd(xp, xp, _mm256_fmadd_pd(yp, yp, _mm256_mul_pd(zp, zp)));
  const __m256d r = _mm256_sqrt_pd(n2);

  const __m256d zero = _mm256_setzero_pd();
  const __m256d degenerate = _mm256_cmp_pd(r, zero, _CMP_EQ_OQ);

  __m256d theta = avx2::atan2(yp, xp);
  const __m256d pi = _mm256_set1_pd(3.1415926535897931);
  const __m256d neg_pi = _mm256_set1_pd(-3.1415926535897931);
  theta = blend(theta, pi, _mm256_cmp_pd(theta, neg_pi, _CMP_EQ_OQ));

  const __m256d one = _mm256_set1_pd(1.0);
  __m256d u = _mm256_div_pd(zp, r);
  u = _mm256_min_pd(_mm256_max_pd(u, _mm256_set1_pd(-1.0)), one);
  u = blend(u, zero, degenerate);  // also squashes the 0/0 NaN
  __m256d phi = avx2::asin(u);

  theta = blend(theta, zero, degenerate);
  phi = blend(phi, zero, degenerate);

  const __m256d vis =
      _mm256_and_pd(_mm256_and_pd(_mm256_cmp_pd(r, _mm256_set1_pd(fov.r_min), _CMP_GE_OQ),
                                  _mm256_cmp_pd(r, _mm256_set1_pd(fov.r_max), _CMP_LE_OQ)),
                    _mm256_and_pd(_mm256_cmp_pd(abs_pd(theta), _mm256_set1_pd(fov.half_azimuth),
                                                _CMP_LE_OQ),
                                  _mm256_cmp_pd(abs_pd(phi), _mm256_set1_pd(fov.half_elevation),
                                                _CMP_LE_OQ)));

  _mm256_storeu_pd(r_out, r);
  _mm256_storeu_pd(theta_out, theta);
  _mm256_storeu_pd(phi_out, phi);
  const int bits = _mm256_movemask_pd(vis);
  visible[0] = static_cast<uint8_t>(bits & 1);
  visible[1] = static_cast<uint8_t>((bits >> 1) & 1);
  visible[2] = static_cast<uint8_t>((bits >> 2) & 1);
  visible[3] = static_cast<uint8_t>((bits >> 3) & 1);
}

}  // namespace

void transfer_clip_avx2(const RelativePose& pose, const FovLimits& fov, const TransferIo& io) {
  const double* Rm = pose.rotation.m.data();
  size_t i = 0;
  for (; i + 4 <= io.n; i += 4) {
    transfer_block(Rm, pose.translation, fov, io.x + i, io.y + i, io.z + i, io.r_out + i,
                   io.theta_out + i, io.phi_out + i, io.visible + i);
  }
  if (i < io.n) {
    TransferIo tail = io;
    tail.x += i;
    tail.y += i;
    tail.z += i;
    tail.r_out += i;
    tail.theta_out += i;
    tail.phi_out += i;
    tail.visible += i;
    tail.n = io.n - i;
    transfer_clip_scalar(pose, fov, tail);
  }
}

}  // namespace ssg::kernels

#endif  // SSG_HAVE_AVX2_KERNEL
