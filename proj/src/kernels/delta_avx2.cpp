#include <immintrin.h>

#include "cubicbp/kernels.hpp"

namespace cubicbp::kernels {

// Lane-wise transcription of deltas_scalar; keep the operation order in sync.
void deltas_avx2(const double* re, const double* im, std::size_t n, Complex s, double* d1, double* d2,
                 double* d3) {
  const double sx = s.real(), sy = s.imag();
  const double ax = 1.0 + sx, ay = sy;
  const double a2 = ax * ax + ay * ay;
  const double a_sq_re = 3.0 * (ax * ax - ay * ay);
  const double a_sq_im = 6.0 * (ax * ay);

  const __m256d vsx = _mm256_set1_pd(sx), vsy = _mm256_set1_pd(sy);
  const __m256d vax = _mm256_set1_pd(ax), vay = _mm256_set1_pd(ay);
  const __m256d va2 = _mm256_set1_pd(a2);
  const __m256d vasr = _mm256_set1_pd(a_sq_re), vasi = _mm256_set1_pd(a_sq_im);
  const __m256d c4 = _mm256_set1_pd(4.0), c12 = _mm256_set1_pd(12.0), c16 = _mm256_set1_pd(16.0);
  const __m256d cm16 = _mm256_set1_pd(-16.0);
  const __m256d sign = _mm256_set1_pd(-0.0);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(re + i), y = _mm256_loadu_pd(im + i);
    const __m256d k = _mm256_add_pd(_mm256_mul_pd(vsx, y), _mm256_mul_pd(vsy, x));
    const __m256d r2 = _mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y));
    const __m256d e1 = _mm256_sub_pd(_mm256_mul_pd(c16, r2), va2);

    const __m256d c2r = _mm256_add_pd(_mm256_mul_pd(cm16, _mm256_mul_pd(k, y)), vasr);
    const __m256d c2i = _mm256_add_pd(_mm256_mul_pd(cm16, _mm256_mul_pd(k, x)), vasi);
    const __m256d c2n = _mm256_add_pd(_mm256_mul_pd(c2r, c2r), _mm256_mul_pd(c2i, c2i));
    const __m256d e2 = _mm256_sub_pd(_mm256_mul_pd(e1, e1), c2n);

    const __m256d pr = _mm256_sub_pd(_mm256_mul_pd(x, vax), _mm256_mul_pd(y, vay));
    const __m256d pi = _mm256_add_pd(_mm256_mul_pd(x, vay), _mm256_mul_pd(y, vax));
    const __m256d u1r = _mm256_sub_pd(_mm256_mul_pd(c12, pr), _mm256_mul_pd(c4, _mm256_mul_pd(k, vay)));
    const __m256d u1i = _mm256_sub_pd(_mm256_mul_pd(c4, _mm256_mul_pd(k, vax)), _mm256_mul_pd(c12, pi));

    const __m256d ne1u1r = _mm256_xor_pd(_mm256_mul_pd(e1, u1r), sign);
    const __m256d ne1u1i = _mm256_xor_pd(_mm256_mul_pd(e1, u1i), sign);
    const __m256d xr =
        _mm256_add_pd(ne1u1r, _mm256_add_pd(_mm256_mul_pd(c2r, u1r), _mm256_mul_pd(c2i, u1i)));
    const __m256d xi =
        _mm256_add_pd(ne1u1i, _mm256_sub_pd(_mm256_mul_pd(c2i, u1r), _mm256_mul_pd(c2r, u1i)));
    const __m256d xn = _mm256_add_pd(_mm256_mul_pd(xr, xr), _mm256_mul_pd(xi, xi));

    _mm256_storeu_pd(d1 + i, e1);
    _mm256_storeu_pd(d2 + i, e2);
    _mm256_storeu_pd(d3 + i, _mm256_sub_pd(_mm256_mul_pd(e2, e2), xn));
  }
  if (i < n) deltas_scalar(re + i, im + i, n - i, s, d1 + i, d2 + i, d3 + i);
}

}  // namespace cubicbp::kernels
