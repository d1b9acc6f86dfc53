#include <string>

#include "cubicbp/kernels.hpp"

namespace cubicbp::kernels {

#ifndef CUBICBP_HAVE_AVX2
void deltas_avx2(const double*, const double*, std::size_t, Complex, double*, double*, double*) {
  throw InvalidArgument("AVX2 kernel not compiled into this build");
}
#endif

const char* to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(CUBICBP_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported;
#else
  return false;
#endif
}

Isa resolve_isa(std::string_view request) {
  if (request == "scalar") return Isa::Scalar;
  if (request == "avx2") {
    if (!avx2_available()) throw InvalidArgument("avx2 kernel requested but not available");
    return Isa::Avx2;
  }
  if (request == "auto") return avx2_available() ? Isa::Avx2 : Isa::Scalar;
  throw InvalidArgument("unknown ISA '" + std::string(request) + "' (expected auto, scalar or avx2)");
}

void deltas(Isa isa, const double* re, const double* im, std::size_t n, Complex s, double* d1, double* d2,
            double* d3) {
  if (isa == Isa::Avx2) {
    deltas_avx2(re, im, n, s, d1, d2, d3);
  } else {
    deltas_scalar(re, im, n, s, d1, d2, d3);
  }
}

}  // namespace cubicbp::kernels
