#include "cubicbp/kernels.hpp"

namespace cubicbp::kernels {

// a = 1 + s, k = Im(s r), t = conj(sr) - sr = -2ik.
//   delta1 = 16|r|^2 - |a|^2
//   c2     = 8 conj(r) t + 3 a^2,                     delta2 = delta1^2 - |c2|^2
//   u1     = 12 conj(r) conj(a) - 2 a t,  u2 = conj(u1)
//   X      = -delta1 u1 + c2 u2,                      delta3 = delta2^2 - |X|^2
void deltas_scalar(const double* re, const double* im, std::size_t n, Complex s, double* d1, double* d2,
                   double* d3) {
  const double sx = s.real(), sy = s.imag();
  const double ax = 1.0 + sx, ay = sy;
  const double a2 = ax * ax + ay * ay;
  const double a_sq_re = 3.0 * (ax * ax - ay * ay);
  const double a_sq_im = 6.0 * (ax * ay);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = re[i], y = im[i];
    const double k = sx * y + sy * x;
    const double e1 = 16.0 * (x * x + y * y) - a2;

    const double c2r = -16.0 * (k * y) + a_sq_re;
    const double c2i = -16.0 * (k * x) + a_sq_im;
    const double e2 = e1 * e1 - (c2r * c2r + c2i * c2i);

    const double pr = x * ax - y * ay;
    const double pi = x * ay + y * ax;
    const double u1r = 12.0 * pr - 4.0 * (k * ay);
    const double u1i = 4.0 * (k * ax) - 12.0 * pi;
    // u2 = conj(u1)
    const double xr = -(e1 * u1r) + (c2r * u1r + c2i * u1i);
    const double xi = -(e1 * u1i) + (c2i * u1r - c2r * u1i);
    d1[i] = e1;
    d2[i] = e2;
    d3[i] = e2 * e2 - (xr * xr + xi * xi);
  }
}

}  // namespace cubicbp::kernels
