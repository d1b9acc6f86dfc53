#pragma once

// Complex polynomials over double precision, with the reciprocal and Schur
// transform machinery used to locate roots relative to the unit circle.
//
// Coefficients are stored lowest order first. A polynomial keeps its formal
// degree (trailing zero coefficients are not dropped) until trimmed(): the
// reciprocal and the Schur transform are defined relative to the formal
// degree, so p(z) = 0*z^4 + ... still reflects as a degree-4 polynomial.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubicbp/hypgeo.hpp"

namespace cubicbp {

class ComplexPolynomial {
public:
  ComplexPolynomial() : coeffs_{Complex(0.0)} {}
  explicit ComplexPolynomial(std::vector<Complex> coefficients);
  ComplexPolynomial(std::initializer_list<Complex> coefficients)
      : ComplexPolynomial(std::vector<Complex>(coefficients)) {}

  static ComplexPolynomial constant(Complex c) { return ComplexPolynomial({c}); }
  // prod (z - r_i), formal degree = roots.size().
  static ComplexPolynomial from_roots(std::span<const Complex> roots);

  std::size_t degree() const { return coeffs_.size() - 1; }
  const std::vector<Complex>& coefficients() const { return coeffs_; }
  Complex operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Complex(0.0); }
  Complex leading() const { return coeffs_.back(); }
  double max_abs_coefficient() const;

  // Drops leading coefficients with |a| < rel_tol * max|a_k|. The zero
  // polynomial trims to the constant 0.
  ComplexPolynomial trimmed(double rel_tol = 1e-14) const;
  bool is_zero(double abs_tol = 0.0) const;

  Complex operator()(Complex z) const;
  // Value, first and second derivative by a single Horner sweep.
  struct Jet {
    Complex value, d1, d2;
  };
  Jet jet(Complex z) const;

  ComplexPolynomial derivative() const;
  // Coefficients of p(z + c) around c; entry k is p^{(k)}(c) / k!.
  std::vector<Complex> taylor_shift(Complex c) const;

  friend ComplexPolynomial operator+(const ComplexPolynomial& a, const ComplexPolynomial& b);
  friend ComplexPolynomial operator-(const ComplexPolynomial& a, const ComplexPolynomial& b);
  friend ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b);
  friend ComplexPolynomial operator*(Complex s, const ComplexPolynomial& p);
  ComplexPolynomial operator-() const { return Complex(-1.0) * (*this); }

  // Raises the formal degree by appending zero coefficients.
  ComplexPolynomial with_formal_degree(std::size_t d) const;

private:
  std::vector<Complex> coeffs_;
};

// sum_k a_k * num^k * den^(d-k): the numerator of p(num/den) * den^d for
// the formal degree d of p. Used to compose with degree-1 rational maps.
ComplexPolynomial homogeneous_substitute(const ComplexPolynomial& p, const ComplexPolynomial& num,
                                         const ComplexPolynomial& den);

// p*(z) = z^d conj(p(1/conj(z))): coefficients conjugated and reversed
// relative to the formal degree d.
ComplexPolynomial reciprocal(const ComplexPolynomial& p);

// mu with p* = mu p (relative tolerance rel_tol), if any.
std::optional<UnitModulus> self_inversive_factor(const ComplexPolynomial& p, double rel_tol = 1e-10);

// Tp = conj(p(0)) p - conj(p*(0)) p*, formal degree d-1.
ComplexPolynomial schur_transform(const ComplexPolynomial& p);

enum class SchurDegeneracy {
  None,
  RootAtOrigin,  // p(0) vanishes: a root sits at 0
  Collapse,      // some T^k p vanished identically (self-inversive stage)
};

struct SchurReport {
  std::vector<double> deltas;  // delta_k = T^k p(0), k = 1..d
  bool degenerate = false;
  SchurDegeneracy kind = SchurDegeneracy::None;
  std::string reason;

  // True iff every delta is strictly positive and nothing degenerated.
  bool all_positive() const;
};

// Iterated Schur transforms. Degeneracy is reported, never thrown:
//  - p(0) vanishes relative to the coefficient scale (a root sits at 0);
//  - a transform collapses identically while its input had p(0) != 0, which
//    is what happens to self-inversive input.
SchurReport schur_cohn(const ComplexPolynomial& p, double rel_tol = 1e-12);

// ---------------------------------------------------------------------------
// Root finding (Aberth-Ehrlich simultaneous iteration).

struct RootOptions {
  int max_iterations = 500;
  std::uint64_t seed = 0;         // rotates the initial golden-angle circle
  double cluster_radius = 1e-7;   // absolute grouping radius for multiplicities
};

class RootFindError : public std::runtime_error {
public:
  RootFindError(const std::string& what, std::vector<Complex> best, double residual)
      : std::runtime_error(what), best_iterate(std::move(best)), residual(residual) {}
  std::vector<Complex> best_iterate;
  double residual;
};

// All roots of the trimmed polynomial, repeated by multiplicity. A trimmed
// degree below the formal degree means the missing roots sit at infinity.
std::vector<Complex> roots(const ComplexPolynomial& p, const RootOptions& options = {});

// max |p(z)| / (max|a_k| * max(1,|z|)^d) over the given points.
double root_residual(const ComplexPolynomial& p, std::span<const Complex> zs);

struct RootCluster {
  Complex center;
  int multiplicity = 1;
};

// Groups roots lying within `radius` of each other (single linkage); each
// cluster is represented by its centroid.
std::vector<RootCluster> group_roots(std::span<const Complex> zs, double radius = 1e-7);

// Wider grouping for ill-conditioned multiple roots: neighbouring clusters
// within `search_radius` are merged only when their centroid c is
// numerically an m-fold root, i.e. |p^{(k)}(c)/k!| is at rounding level for
// all k < m.
std::vector<RootCluster> certify_clusters(const ComplexPolynomial& p, std::span<const Complex> zs,
                                          double search_radius = 1e-3, double rel_tol = 1e-12);

}  // namespace cubicbp
