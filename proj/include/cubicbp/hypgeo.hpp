#pragma once

// Hyperbolic geometry of the unit disk: disk points, unimodular constants,
// Moebius automorphisms, pseudo-hyperbolic and hyperbolic distances, and
// geodesic midpoints.

#include <complex>
#include <stdexcept>

namespace cubicbp {

using Complex = std::complex<double>;

class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Shared disk-membership policy for downstream modules.
struct DiskTolerance {
  double interior = 1e-12;  // |z| < 1 - interior
  double boundary = 1e-9;   // ||z| - 1| < boundary

  bool is_interior(Complex z) const { return std::abs(z) < 1.0 - interior; }
  bool is_boundary(Complex z) const { return std::abs(std::abs(z) - 1.0) < boundary; }
};

// A point of the open unit disk. Construction with |z| >= 1 throws.
class DiskPoint {
public:
  DiskPoint() = default;
  DiskPoint(Complex z);  // NOLINT(google-explicit-constructor)
  DiskPoint(double x) : DiskPoint(Complex(x, 0.0)) {}  // NOLINT

  Complex value() const { return z_; }
  operator Complex() const { return z_; }  // NOLINT
  double abs() const { return std::abs(z_); }

  // Returns false instead of throwing.
  static bool admissible(Complex z);

private:
  Complex z_{0.0, 0.0};
};

// A complex number of modulus one, renormalized exactly at construction.
class UnitModulus {
public:
  static constexpr double kTolerance = 1e-12;

  UnitModulus() = default;
  UnitModulus(Complex z);  // NOLINT(google-explicit-constructor)

  static UnitModulus from_angle(double theta) { return UnitModulus(std::polar(1.0, theta)); }
  // Projects any nonzero z onto the circle without the modulus check.
  static UnitModulus project(Complex z);

  Complex value() const { return z_; }
  operator Complex() const { return z_; }  // NOLINT
  double arg() const { return std::arg(z_); }

private:
  Complex z_{1.0, 0.0};
};

// A(z) = rotation * (z - center) / (1 - conj(center) z).
class DiskAutomorphism {
public:
  DiskAutomorphism() = default;
  DiskAutomorphism(UnitModulus rotation, DiskPoint center) : rotation_(rotation), center_(center) {}

  static DiskAutomorphism identity() { return {}; }
  static DiskAutomorphism rotation(UnitModulus eta) { return {eta, DiskPoint()}; }
  // The automorphism sending 0 to p: z -> (z + p) / (1 + conj(p) z).
  static DiskAutomorphism sending_origin_to(DiskPoint p);

  UnitModulus rotation() const { return rotation_; }
  DiskPoint center() const { return center_; }

  // Valid on the closed disk and beyond; the only pole is 1/conj(center).
  Complex operator()(Complex z) const;
  DiskPoint apply(DiskPoint z) const;

  DiskAutomorphism inverse() const;
  // (*this) o inner, i.e. z -> this(inner(z)).
  DiskAutomorphism compose(const DiskAutomorphism& inner) const;

private:
  UnitModulus rotation_;
  DiskPoint center_;
};

// [z, w] = (z - w) / (1 - conj(w) z).
Complex mobius_quotient(Complex z, Complex w);
double pseudo_hyperbolic(DiskPoint z, DiskPoint w);
double hyperbolic_distance(DiskPoint z, DiskPoint w);
DiskPoint hyperbolic_midpoint(DiskPoint z, DiskPoint w);

}  // namespace cubicbp
