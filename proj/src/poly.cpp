#include "cubicbp/poly.hpp"

#include <algorithm>
#include <cmath>

namespace cubicbp {

ComplexPolynomial::ComplexPolynomial(std::vector<Complex> coefficients)
    : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) coeffs_.push_back(Complex(0.0));
}

ComplexPolynomial ComplexPolynomial::from_roots(std::span<const Complex> roots) {
  std::vector<Complex> c{Complex(1.0)};
  for (Complex r : roots) {
    std::vector<Complex> next(c.size() + 1, Complex(0.0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return ComplexPolynomial(std::move(c));
}

double ComplexPolynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (Complex a : coeffs_) m = std::max(m, std::abs(a));
  return m;
}

ComplexPolynomial ComplexPolynomial::trimmed(double rel_tol) const {
  const double cutoff = rel_tol * max_abs_coefficient();
  std::size_t n = coeffs_.size();
  while (n > 1 && std::abs(coeffs_[n - 1]) <= cutoff) --n;
  return ComplexPolynomial(std::vector<Complex>(coeffs_.begin(), coeffs_.begin() + n));
}

bool ComplexPolynomial::is_zero(double abs_tol) const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [&](Complex a) { return std::abs(a) <= abs_tol; });
}

Complex ComplexPolynomial::operator()(Complex z) const {
  Complex acc(0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

ComplexPolynomial::Jet ComplexPolynomial::jet(Complex z) const {
  Complex v(0.0), d1(0.0), d2(0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    d2 = d2 * z + 2.0 * d1;
    d1 = d1 * z + v;
    v = v * z + *it;
  }
  return {v, d1, d2};
}

ComplexPolynomial ComplexPolynomial::derivative() const {
  if (coeffs_.size() == 1) return ComplexPolynomial();
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return ComplexPolynomial(std::move(d));
}

std::vector<Complex> ComplexPolynomial::taylor_shift(Complex c) const {
  // Repeated synthetic division by (z - c).
  std::vector<Complex> a = coeffs_;
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = n - 1; j > k; --j) a[j - 1] += c * a[j];
  }
  return a;
}

ComplexPolynomial operator+(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Complex(0.0));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial operator-(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Complex(0.0));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1, Complex(0.0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial operator*(Complex s, const ComplexPolynomial& p) {
  std::vector<Complex> c = p.coeffs_;
  for (Complex& a : c) a *= s;
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial ComplexPolynomial::with_formal_degree(std::size_t d) const {
  std::vector<Complex> c = coeffs_;
  if (c.size() < d + 1) c.resize(d + 1, Complex(0.0));
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial homogeneous_substitute(const ComplexPolynomial& p, const ComplexPolynomial& num,
                                         const ComplexPolynomial& den) {
  const std::size_t d = p.degree();
  // Powers of num and den up to d.
  std::vector<ComplexPolynomial> num_pow{ComplexPolynomial::constant(1.0)};
  std::vector<ComplexPolynomial> den_pow{ComplexPolynomial::constant(1.0)};
  for (std::size_t k = 1; k <= d; ++k) {
    num_pow.push_back(num_pow.back() * num);
    den_pow.push_back(den_pow.back() * den);
  }
  ComplexPolynomial acc;
  for (std::size_t k = 0; k <= d; ++k) acc = acc + p[k] * (num_pow[k] * den_pow[d - k]);
  return acc;
}

ComplexPolynomial reciprocal(const ComplexPolynomial& p) {
  const auto& a = p.coefficients();
  std::vector<Complex> r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = std::conj(a[a.size() - 1 - k]);
  return ComplexPolynomial(std::move(r));
}

std::optional<UnitModulus> self_inversive_factor(const ComplexPolynomial& p, double rel_tol) {
  const ComplexPolynomial ps = reciprocal(p);
  Complex num(0.0);
  double den = 0.0;
  for (std::size_t k = 0; k <= p.degree(); ++k) {
    num += std::conj(p[k]) * ps[k];
    den += std::norm(p[k]);
  }
  if (den == 0.0) return std::nullopt;
  const Complex mu = num / den;
  if (std::abs(std::abs(mu) - 1.0) > rel_tol) return std::nullopt;
  const Complex unit = mu / std::abs(mu);
  const double scale = p.max_abs_coefficient();
  for (std::size_t k = 0; k <= p.degree(); ++k) {
    if (std::abs(ps[k] - unit * p[k]) > rel_tol * scale) return std::nullopt;
  }
  return UnitModulus(unit);
}

ComplexPolynomial schur_transform(const ComplexPolynomial& p) {
  const std::size_t d = p.degree();
  if (d == 0) throw InvalidArgument("schur_transform requires formal degree >= 1");
  const Complex a0 = p[0], ad = p[d];
  std::vector<Complex> t(d);
  for (std::size_t k = 0; k < d; ++k) t[k] = std::conj(a0) * p[k] - ad * std::conj(p[d - k]);
  return ComplexPolynomial(std::move(t));
}

bool SchurReport::all_positive() const {
  return !degenerate && std::all_of(deltas.begin(), deltas.end(), [](double x) { return x > 0.0; });
}

SchurReport schur_cohn(const ComplexPolynomial& p, double rel_tol) {
  const std::size_t d = p.degree();
  if (d == 0) throw InvalidArgument("schur_cohn requires formal degree >= 1");
  SchurReport report;
  report.deltas.reserve(d);

  if (std::abs(p[0]) <= rel_tol * p.max_abs_coefficient()) {
    report.degenerate = true;
    report.kind = SchurDegeneracy::RootAtOrigin;
    report.reason = "p(0) = 0: root at the origin";
  }

  ComplexPolynomial current = p;
  bool collapsed = false;
  for (std::size_t k = 1; k <= d; ++k) {
    const double scale = current.max_abs_coefficient();
    ComplexPolynomial next = schur_transform(current);
    if (!collapsed && scale > 0.0 && next.is_zero(rel_tol * scale * scale)) {
      collapsed = true;
      if (!report.degenerate) {
        report.degenerate = true;
        report.kind = SchurDegeneracy::Collapse;
        report.reason = "T^" + std::to_string(k) + " p vanished identically (self-inversive stage)";
      }
    }
    if (collapsed) next = ComplexPolynomial(std::vector<Complex>(next.degree() + 1, Complex(0.0)));
    // T^k p(0) = |a_0|^2 - |a_d|^2 is real by construction.
    report.deltas.push_back(next[0].real());
    current = std::move(next);
  }
  return report;
}

}  // namespace cubicbp
