#pragma once

// Closed-form Schur-Cohn deltas for the cubic normal form, batched over
// points of an r-slice at fixed s. The scalar kernel is the reference; the
// AVX2 kernel performs the same operations in the same order (no FMA), so
// the two agree bit for bit.

#include <cstddef>
#include <string_view>

#include "cubicbp/hypgeo.hpp"

namespace cubicbp::kernels {

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa);
// True when the AVX2 kernel is compiled in and the CPU supports it.
bool avx2_available();
// "auto", "scalar" or "avx2". Throws InvalidArgument for unknown names or
// when avx2 is requested but unavailable.
Isa resolve_isa(std::string_view request);

// For i < n, with r = (re[i], im[i]): delta1..3 of the q-polynomial of the
// cubic fixed-point equation. Output arrays may not alias the inputs.
void deltas_scalar(const double* re, const double* im, std::size_t n, Complex s, double* d1, double* d2,
                   double* d3);
void deltas_avx2(const double* re, const double* im, std::size_t n, Complex s, double* d1, double* d2,
                 double* d3);
void deltas(Isa isa, const double* re, const double* im, std::size_t n, Complex s, double* d1, double* d2,
            double* d3);

}  // namespace cubicbp::kernels
