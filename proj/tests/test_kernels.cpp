#include <doctest.h>

#include <cstring>

#include "cubicbp/dynamics.hpp"
#include "cubicbp/kernels.hpp"
#include "support.hpp"

using namespace cubicbp;
using testing_support::random_in_disk;

namespace {

struct Batch {
  std::vector<double> re, im, d1, d2, d3;
  explicit Batch(std::size_t n) : re(n), im(n), d1(n), d2(n), d3(n) {}
  void run(kernels::Isa isa, Complex s) {
    kernels::deltas(isa, re.data(), im.data(), re.size(), s, d1.data(), d2.data(), d3.data());
  }
};

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("isa selection") {
  CHECK(kernels::resolve_isa("scalar") == kernels::Isa::Scalar);
  CHECK(std::string(kernels::to_string(kernels::Isa::Scalar)) == "scalar");
  CHECK(std::string(kernels::to_string(kernels::Isa::Avx2)) == "avx2");
  CHECK_THROWS_AS(kernels::resolve_isa("neon"), InvalidArgument);
  const kernels::Isa a = kernels::resolve_isa("auto");
  CHECK(a == (kernels::avx2_available() ? kernels::Isa::Avx2 : kernels::Isa::Scalar));
  if (kernels::avx2_available())
    CHECK(kernels::resolve_isa("avx2") == kernels::Isa::Avx2);
  else
    CHECK_THROWS_AS(kernels::resolve_isa("avx2"), InvalidArgument);
}

TEST_CASE("scalar kernel matches the Schur-Cohn pipeline") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const Complex s = random_in_disk(rng, 1.0);
    Batch b(37);
    for (std::size_t k = 0; k < b.re.size(); ++k) {
      const Complex r = random_in_disk(rng, 1.0);
      b.re[k] = r.real();
      b.im[k] = r.imag();
    }
    b.run(kernels::Isa::Scalar, s);
    for (std::size_t k = 0; k < b.re.size(); ++k) {
      const CubicParameters c{DiskPoint(Complex(b.re[k], b.im[k])), DiskPoint(s)};
      const SchurReport rep = schur_cohn(q_polynomial(fixed_point_polynomial(c)));
      const double m = q_polynomial(fixed_point_polynomial(c)).max_abs_coefficient();
      CHECK(std::abs(b.d1[k] - rep.deltas[0]) <= 1e-12 * m * m);
      CHECK(std::abs(b.d2[k] - rep.deltas[1]) <= 1e-12 * std::pow(m, 4));
      CHECK(std::abs(b.d3[k] - p_discriminant(c)) <= 1e-9 * (1.0 + std::abs(b.d3[k])));
    }
  }
}

TEST_CASE("deltas are exactly even in r") {
  std::mt19937_64 rng(2);
  Batch a(64), b(64);
  for (std::size_t k = 0; k < 64; ++k) {
    const Complex r = random_in_disk(rng, 1.0);
    a.re[k] = r.real();
    a.im[k] = r.imag();
    b.re[k] = -r.real();
    b.im[k] = -r.imag();
  }
  const Complex s = random_in_disk(rng, 1.0);
  a.run(kernels::Isa::Scalar, s);
  b.run(kernels::Isa::Scalar, s);
  CHECK(same_bits(a.d1, b.d1));
  CHECK(same_bits(a.d2, b.d2));
  CHECK(same_bits(a.d3, b.d3));
}

TEST_CASE("AVX2 kernel is bit-identical to scalar") {
  if (!kernels::avx2_available()) {
    MESSAGE("AVX2 unavailable; skipped");
    return;
  }
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> wide(-3.0, 3.0);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 512u, 1001u}) {
    for (int rep = 0; rep < 5; ++rep) {
      Batch x(n), y(n);
      for (std::size_t k = 0; k < n; ++k) {
        // Include points outside the disk: the kernel is pure arithmetic.
        x.re[k] = y.re[k] = rep == 4 ? wide(rng) : random_in_disk(rng, 1.0).real();
        x.im[k] = y.im[k] = rep == 4 ? wide(rng) : random_in_disk(rng, 1.0).imag();
      }
      const Complex s = random_in_disk(rng, 1.0);
      x.run(kernels::Isa::Scalar, s);
      y.run(kernels::Isa::Avx2, s);
      CHECK(same_bits(x.d1, y.d1));
      CHECK(same_bits(x.d2, y.d2));
      CHECK(same_bits(x.d3, y.d3));
    }
  }
}
