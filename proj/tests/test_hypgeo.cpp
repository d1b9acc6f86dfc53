#include <doctest.h>

#include "cubicbp/hypgeo.hpp"
#include "support.hpp"

using namespace cubicbp;
using testing_support::random_automorphism;
using testing_support::random_in_disk;

namespace {

// Independent midpoint: move z to 0, halve the geodesic from 0 to v, move back.
Complex midpoint_oracle(Complex z, Complex w) {
  const Complex v = (w - z) / (1.0 - std::conj(z) * w);
  const Complex half = v / (1.0 + std::sqrt(1.0 - std::norm(v)));
  return (half + z) / (1.0 + std::conj(z) * half);
}

double rho_direct(Complex z, Complex w) {
  const double d = std::abs((z - w) / (1.0 - std::conj(w) * z));
  return std::log((1.0 + d) / (1.0 - d));
}

}  // namespace

TEST_CASE("disk points and unimodular constants validate their invariants") {
  CHECK_THROWS_AS(DiskPoint(Complex(1.0, 0.0)), InvalidArgument);
  CHECK_THROWS_AS(DiskPoint(Complex(0.8, 0.8)), InvalidArgument);
  CHECK_THROWS_AS(DiskPoint(Complex(std::nan(""), 0.0)), InvalidArgument);
  CHECK(DiskPoint(Complex(0.6, -0.7)).abs() < 1.0);
  CHECK_FALSE(DiskPoint::admissible(Complex(0.0, -1.0)));

  CHECK_THROWS_AS(UnitModulus(Complex(1.0 + 1e-9, 0.0)), InvalidArgument);
  const UnitModulus u(Complex(0.6, 0.8 + 1e-13));
  CHECK(std::abs(u.value()) == doctest::Approx(1.0).epsilon(1e-16));
  CHECK(std::abs(UnitModulus::project(Complex(3.0, 4.0)).value() - Complex(0.6, 0.8)) < 1e-15);
}

TEST_CASE("pseudo-hyperbolic quantities") {
  const DiskPoint w(Complex(0.3, -0.4));
  CHECK(pseudo_hyperbolic(w, w) == 0.0);
  CHECK(pseudo_hyperbolic(0.0, w) == doctest::Approx(0.5));
  CHECK(pseudo_hyperbolic(0.5, 0.8) == doctest::Approx(0.5));
  CHECK(mobius_quotient(0.5, 0.0) == Complex(0.5, 0.0));
  CHECK(std::abs(mobius_quotient(0.0, 0.5) - Complex(-0.5, 0.0)) < 1e-16);
  CHECK(mobius_quotient(w, w) == Complex(0.0));

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Complex z = random_in_disk(rng, 0.99), v = random_in_disk(rng, 0.99);
    CHECK(pseudo_hyperbolic(z, v) == doctest::Approx(pseudo_hyperbolic(v, z)).epsilon(1e-13));
    CHECK(std::abs(mobius_quotient(z, v)) == doctest::Approx(pseudo_hyperbolic(z, v)).epsilon(1e-13));
  }
}

TEST_CASE("hyperbolic distance") {
  CHECK(hyperbolic_distance(0.3, 0.3) == 0.0);
  CHECK(hyperbolic_distance(0.0, 0.5) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(hyperbolic_distance(0.5, 0.8) == doctest::Approx(std::log(3.0)).epsilon(1e-14));

  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Complex z = random_in_disk(rng, 0.95), w = random_in_disk(rng, 0.95);
    CHECK(hyperbolic_distance(z, w) == doctest::Approx(rho_direct(z, w)).epsilon(1e-10));
  }
}

TEST_CASE("hyperbolic midpoint examples and degenerate cases") {
  CHECK(std::abs(hyperbolic_midpoint(0.0, 0.8).value() - Complex(0.5)) < 1e-15);
  const Complex a(0.31, -0.52);
  CHECK(hyperbolic_midpoint(a, -a).value() == Complex(0.0));
  CHECK(hyperbolic_midpoint(a, a).value() == a);
  // Nearly antipodal: the midpoint formula must not lose accuracy.
  const Complex b = -a + Complex(1e-9, -2e-9);
  CHECK(std::abs(hyperbolic_midpoint(a, b).value() - midpoint_oracle(a, b)) < 1e-15);
}

TEST_CASE("midpoint contract on random pairs") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const DiskPoint z = random_in_disk(rng, 0.97), w = random_in_disk(rng, 0.97);
    const DiskPoint c = hyperbolic_midpoint(z, w);
    const double dz = hyperbolic_distance(z, c), dw = hyperbolic_distance(c, w), d = hyperbolic_distance(z, w);
    CHECK(std::abs(dz - dw) < 1e-10);
    CHECK(std::abs(dz + dw - d) < 1e-10);
    CHECK(std::abs(c.value() - midpoint_oracle(z, w)) < 1e-12);
  }
}

TEST_CASE("automorphisms: apply, inverse, compose, isometry") {
  const DiskAutomorphism id = DiskAutomorphism::identity();
  CHECK(id(Complex(0.2, 0.1)) == Complex(0.2, 0.1));
  const DiskAutomorphism a(UnitModulus(), DiskPoint(0.5));
  CHECK(std::abs(a(0.5)) == 0.0);
  CHECK(std::abs(DiskAutomorphism::sending_origin_to(DiskPoint(Complex(0.1, 0.7)))(0.0) - Complex(0.1, 0.7)) <
        1e-16);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const DiskAutomorphism f = random_automorphism(rng), g = random_automorphism(rng), h = random_automorphism(rng);
    const Complex z = random_in_disk(rng, 0.95), w = random_in_disk(rng, 0.95);
    CHECK(std::abs(f.inverse()(f(z)) - z) < 1e-12);
    CHECK(std::abs(f(f.inverse()(z)) - z) < 1e-12);
    CHECK(std::abs(f.compose(g)(z) - f(g(z))) < 1e-12);
    CHECK(std::abs(f.compose(g).compose(h)(z) - f.compose(g.compose(h))(z)) < 1e-12);
    CHECK(f.apply(z).abs() < 1.0);
    CHECK(std::abs(hyperbolic_distance(f.apply(z), f.apply(w)) - hyperbolic_distance(z, w)) < 1e-10);
  }
}

TEST_CASE("shared disk tolerance policy") {
  const DiskTolerance tol;
  CHECK(tol.is_interior(Complex(0.999)));
  CHECK_FALSE(tol.is_interior(Complex(1.0 - 1e-13)));
  CHECK(tol.is_boundary(Complex(0.0, 1.0 - 1e-10)));
  CHECK_FALSE(tol.is_boundary(Complex(0.0, 1.0 - 1e-8)));
}
