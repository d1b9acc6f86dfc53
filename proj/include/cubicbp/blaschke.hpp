#pragma once

// Finite Blaschke products B(z) = mu * prod (z - w_i) / (1 - conj(w_i) z),
// held in dual form: the zeros with the unimodular factor, and the rational
// form mu * N(z) / N*(z) with N monic.

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubicbp/hypgeo.hpp"
#include "cubicbp/poly.hpp"

namespace cubicbp {

class FiniteBlaschkeProduct {
public:
  // Throws InvalidArgument for an empty zero list.
  FiniteBlaschkeProduct(std::vector<DiskPoint> zeros, UnitModulus mu);

  // B = mu * N / N* for a monic N with all roots in the disk; the zeros are
  // recovered with the root finder.
  static FiniteBlaschkeProduct from_monic(const ComplexPolynomial& monic_numerator, UnitModulus mu,
                                          const RootOptions& options = {});
  // B = num / den where den is a unimodular multiple of num*. The residual
  // unimodular factor is folded into mu; `fit_residual` (optional) receives
  // the relative mismatch between den and its best unimodular fit.
  static FiniteBlaschkeProduct from_rational(const ComplexPolynomial& num, const ComplexPolynomial& den,
                                             double* fit_residual = nullptr,
                                             const RootOptions& options = {});

  std::size_t degree() const { return zeros_.size(); }
  const std::vector<DiskPoint>& zeros() const { return zeros_; }
  UnitModulus mu() const { return mu_; }
  const ComplexPolynomial& numerator() const { return numerator_; }      // monic N
  const ComplexPolynomial& denominator() const { return denominator_; }  // N*

  // Product form; requires |z| <= 1 + 1e-9.
  Complex operator()(Complex z) const { return evaluate(z); }
  Complex evaluate(Complex z) const;
  Complex evaluate_rational(Complex z) const;

  struct Jet {
    Complex value, d1, d2;
  };
  // B, B', B'' by the product rule over the Mobius factors. Valid away
  // from the poles 1/conj(w_i), which includes the closed disk.
  Jet jet(Complex z) const;
  Complex derivative(Complex z) const { return jet(z).d1; }
  // 1 - |B(z)|^2 without cancellation near the circle; |z| <= 1.
  double one_minus_abs2(Complex z) const;

private:
  FiniteBlaschkeProduct() = default;

  std::vector<DiskPoint> zeros_;
  UnitModulus mu_;
  ComplexPolynomial numerator_;
  ComplexPolynomial denominator_;
};

// |B'(zeta)| = sum (1 - |w_i|^2) / |zeta - w_i|^2 on the unit circle.
double boundary_derivative_modulus(const FiniteBlaschkeProduct& b, UnitModulus zeta);

// The d-1 critical points in the disk, with multiplicity.
std::vector<DiskPoint> critical_points(const FiniteBlaschkeProduct& b, const RootOptions& options = {});

// psi o B o phi as a Blaschke product, composed on coefficients.
FiniteBlaschkeProduct compose(const DiskAutomorphism& psi, const FiniteBlaschkeProduct& b,
                              const DiskAutomorphism& phi);
// A^{-1} o B o A.
FiniteBlaschkeProduct conjugate(const FiniteBlaschkeProduct& b, const DiskAutomorphism& a);

// ---------------------------------------------------------------------------
// Normal forms.

struct CubicParameters {
  DiskPoint r;
  DiskPoint s;
};

struct QuadraticParameter {
  DiskPoint u;
};

// N(z) = z^3 - s r z^2 - conj(s) z + r, B = N / N*.
ComplexPolynomial cubic_normal_numerator(const CubicParameters& p);
FiniteBlaschkeProduct from_cubic_parameters(const CubicParameters& p, const RootOptions& options = {});
// B(z) = (z^2 - u) / (1 - conj(u) z^2).
FiniteBlaschkeProduct from_quadratic_parameter(const QuadraticParameter& p);

// (r, s) and (-r, s) describe conjugate maps; pick arg(r) in [0, pi).
CubicParameters canonical_representative(const CubicParameters& p);

class NormalFormError : public std::runtime_error {
public:
  NormalFormError(const std::string& what, double residual)
      : std::runtime_error(what), residual(residual) {}
  double residual;
};

struct CubicNormalForm {
  CubicParameters params;
  DiskAutomorphism conjugator;  // conjugate(B, conjugator) is the normal form
  double residual = 0.0;        // coefficient mismatch against the normal form
  double epsilon = 0.0;         // modulus of the centred critical points
};

struct QuadraticNormalForm {
  QuadraticParameter param;
  DiskAutomorphism conjugator;
  double residual = 0.0;
};

// Throws NormalFormError (carrying the best candidate's residual) when the
// residual exceeds `max_residual`.
CubicNormalForm normal_form_cubic(const FiniteBlaschkeProduct& b, double max_residual = 1e-8,
                                  const RootOptions& options = {});
QuadraticNormalForm normal_form_quadratic(const FiniteBlaschkeProduct& b, double max_residual = 1e-8,
                                          const RootOptions& options = {});

// ---------------------------------------------------------------------------
// Plain-text record: degree on the first line, then one "re im" line per
// zero, then "re im" for mu. Lines starting with '#' are comments. Numbers
// are written with 17 significant digits so the record round-trips exactly.

void write_record(std::ostream& os, const FiniteBlaschkeProduct& b);
FiniteBlaschkeProduct read_record(std::istream& is);
std::string to_record(const FiniteBlaschkeProduct& b);
FiniteBlaschkeProduct parse_record(const std::string& text);

}  // namespace cubicbp
