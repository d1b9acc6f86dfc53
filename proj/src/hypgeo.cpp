#include "cubicbp/hypgeo.hpp"

#include <cmath>
#include <sstream>

namespace cubicbp {

namespace {

std::string describe(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

}  // namespace

bool DiskPoint::admissible(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag()) && std::abs(z) < 1.0;
}

DiskPoint::DiskPoint(Complex z) : z_(z) {
  if (!admissible(z)) {
    throw InvalidArgument("DiskPoint requires |z| < 1, got " + describe(z));
  }
}

UnitModulus::UnitModulus(Complex z) {
  const double m = std::abs(z);
  if (!std::isfinite(m) || std::abs(m - 1.0) > kTolerance) {
    throw InvalidArgument("UnitModulus requires |z| = 1, got " + describe(z));
  }
  z_ = z / m;
}

UnitModulus UnitModulus::project(Complex z) {
  const double m = std::abs(z);
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw InvalidArgument("cannot project " + describe(z) + " onto the unit circle");
  }
  return UnitModulus(z / m);
}

DiskAutomorphism DiskAutomorphism::sending_origin_to(DiskPoint p) {
  return {UnitModulus(), DiskPoint(-p.value())};
}

Complex DiskAutomorphism::operator()(Complex z) const {
  const Complex c = center_.value();
  return rotation_.value() * (z - c) / (1.0 - std::conj(c) * z);
}

DiskPoint DiskAutomorphism::apply(DiskPoint z) const {
  return DiskPoint((*this)(z.value()));
}

DiskAutomorphism DiskAutomorphism::inverse() const {
  const Complex lam = rotation_.value();
  return {UnitModulus(std::conj(lam)), DiskPoint(-lam * center_.value())};
}

DiskAutomorphism DiskAutomorphism::compose(const DiskAutomorphism& inner) const {
  // Matrix form [lam, -lam c; -conj(c), 1].
  const Complex la = rotation_.value(), ca = center_.value();
  const Complex lb = inner.rotation_.value(), cb = inner.center_.value();
  const Complex a11 = la, a12 = -la * ca, a21 = -std::conj(ca), a22 = 1.0;
  const Complex b11 = lb, b12 = -lb * cb, b21 = -std::conj(cb), b22 = 1.0;
  const Complex m11 = a11 * b11 + a12 * b21;
  const Complex m21 = a21 * b11 + a22 * b21;
  const Complex m22 = a21 * b12 + a22 * b22;
  return {UnitModulus::project(m11 / m22), DiskPoint(-std::conj(m21 / m22))};
}

Complex mobius_quotient(Complex z, Complex w) {
  return (z - w) / (1.0 - std::conj(w) * z);
}

double pseudo_hyperbolic(DiskPoint z, DiskPoint w) {
  return std::abs(mobius_quotient(z.value(), w.value()));
}

double hyperbolic_distance(DiskPoint z, DiskPoint w) {
  const double d = pseudo_hyperbolic(z, w);
  return std::log1p(d) - std::log1p(-d);
}

DiskPoint hyperbolic_midpoint(DiskPoint zp, DiskPoint wp) {
  const Complex z = zp.value(), w = wp.value();
  if (pseudo_hyperbolic(zp, wp) < 1e-14) return zp;
  if (z == -w) return DiskPoint();

  const Complex zw = z * w;
  const Complex sum = z + w;
  const Complex denominator = std::conj(zw) * sum - std::conj(sum);
  if (std::abs(denominator) < 1e-14) return DiskPoint();

  const double p = std::norm(z), q = std::norm(w);
  const double one_minus_pq = 1.0 - std::norm(zw);
  const double radicand = (1.0 - p) * (1.0 - q) * std::norm(1.0 - std::conj(w) * z);
  const double root = std::sqrt(radicand);
  // |zw|^2 - 1 + root, rationalized: it vanishes to second order as w -> -z.
  const double numerator =
      -((p - q) * (p - q) + std::norm(sum) * (1.0 - p) * (1.0 - q)) / (root + one_minus_pq);
  return DiskPoint(numerator / denominator);
}

}  // namespace cubicbp
