#pragma once

// Internal AVX2 double-precision trigonometry for the transfer kernel.
// Polynomials are near-minimax Chebyshev fits; the evaluated schemes stay
// within a few ulp of libm over their full input domains, which is orders of
// magnitude tighter than any tolerance the library guarantees.
//
// Only included by translation units compiled with -mavx2 -mfma.

#include <immintrin.h>

namespace ssg::kernels::avx2 {

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

inline __m256d copysign_pd(__m256d mag, __m256d sgn) {
  const __m256d mask = _mm256_set1_pd(-0.0);
  return _mm256_or_pd(_mm256_andnot_pd(mask, mag), _mm256_and_pd(mask, sgn));
}

inline __m256d blend(__m256d a, __m256d b, __m256d mask) {
  return _mm256_blendv_pd(a, b, mask);
}

// atan(u) / u as a polynomial in w = u^2, valid for |u| <= tan(pi/8).
inline __m256d atan_reduced_poly(__m256d w) {
  __m256d p = _mm256_set1_pd(0.015113765096600925);
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(-0.03338782450121195));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(0.044995007289840322));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(-0.05217312574061591));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(0.058768340046141607));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(-0.066662052599765265));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(0.076922810999377436));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(-0.090909080590311914));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(0.11111111085322109));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(-0.14285714285329709));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(0.19999999999997015));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(-0.33333333333333326));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0));
  return p;
}

// atan(t) for t in [0, 1].
inline __m256d atan01(__m256d t) {
  const __m256d tan_pi_8 = _mm256_set1_pd(0.41421356237309503);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d big = _mm256_cmp_pd(t, tan_pi_8, _CMP_GT_OQ);
  const __m256d folded =
      _mm256_div_pd(_mm256_sub_pd(t, one), _mm256_add_pd(t, one));
  const __m256d u = blend(t, folded, big);
  const __m256d a = _mm256_mul_pd(u, atan_reduced_poly(_mm256_mul_pd(u, u)));
  const __m256d pi_4 = _mm256_set1_pd(0.78539816339744831);
  return blend(a, _mm256_add_pd(pi_4, a), big);
}

// Full-quadrant arctangent. atan2(0, 0) = 0; signed zeros in x are treated as
// +0, which only matters on measure-zero inputs the callers never produce.
inline __m256d atan2(__m256d y, __m256d x) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d ax = abs_pd(x), ay = abs_pd(y);
  const __m256d lo = _mm256_min_pd(ax, ay);
  const __m256d hi = _mm256_max_pd(ax, ay);
  const __m256d hi_zero = _mm256_cmp_pd(hi, zero, _CMP_EQ_OQ);
  __m256d t = _mm256_div_pd(lo, hi);
  t = blend(t, zero, hi_zero);

  __m256d s = atan01(t);
  const __m256d pi_2 = _mm256_set1_pd(1.5707963267948966);
  const __m256d pi = _mm256_set1_pd(3.1415926535897931);
  s = blend(s, _mm256_sub_pd(pi_2, s), _mm256_cmp_pd(ay, ax, _CMP_GT_OQ));
  s = blend(s, _mm256_sub_pd(pi, s), _mm256_cmp_pd(x, zero, _CMP_LT_OQ));
  return copysign_pd(s, y);
}

// (asin(u)/u - 1) / w as a polynomial in w = u^2, valid for |u| <= 0.5.
inline __m256d asin_reduced_poly(__m256d w) {
  __m256d p = _mm256_set1_pd(0.033680995422805553);
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(-0.035149004758176457));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(0.031498365755136454));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(-0.0064440269041112323));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(0.0091997126224179927));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(0.0057039852858858323));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(0.0074299671156348307));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(0.0083765743138079461));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(0.0097628031537727606));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(0.011551725096369309));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(0.013964847201078209));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(0.017352764314166404));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(0.022372159093170051));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(0.030381944444416026));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(0.044642857142857331));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(0.074999999999999997));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(0.16666666666666666));
  return p;
}

// asin(u) for |u| <= 1. Large |u| folds through
// asin(u) = pi/2 - 2 asin(sqrt((1 - |u|) / 2)).
inline __m256d asin(__m256d v) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d au = abs_pd(v);
  const __m256d big = _mm256_cmp_pd(au, half, _CMP_GT_OQ);

  const __m256d w_small = _mm256_mul_pd(v, v);
  const __m256d w_big = _mm256_mul_pd(_mm256_sub_pd(one, au), half);
  const __m256d w = blend(w_small, w_big, big);
  const __m256d u = blend(au, _mm256_sqrt_pd(w), big);

  const __m256d r = _mm256_fmadd_pd(_mm256_mul_pd(u, w), asin_reduced_poly(w), u);
  const __m256d pi_2 = _mm256_set1_pd(1.5707963267948966);
  const __m256d folded = _mm256_sub_pd(pi_2, _mm256_add_pd(r, r));
  return copysign_pd(blend(r, folded, big), v);
}

}  // namespace ssg::kernels::avx2
