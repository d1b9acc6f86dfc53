#include "cubicbp/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cubicbp {

namespace {

ComplexPolynomial monic_from_zeros(const std::vector<DiskPoint>& zeros) {
  std::vector<Complex> z(zeros.begin(), zeros.end());
  return ComplexPolynomial::from_roots(z);
}

}  // namespace

FiniteBlaschkeProduct::FiniteBlaschkeProduct(std::vector<DiskPoint> zeros, UnitModulus mu)
    : zeros_(std::move(zeros)), mu_(mu) {
  if (zeros_.empty()) throw InvalidArgument("a Blaschke product needs at least one zero");
  numerator_ = monic_from_zeros(zeros_);
  denominator_ = reciprocal(numerator_);
}

FiniteBlaschkeProduct FiniteBlaschkeProduct::from_monic(const ComplexPolynomial& monic_numerator,
                                                        UnitModulus mu, const RootOptions& options) {
  const ComplexPolynomial n = monic_numerator.trimmed();
  if (n.degree() == 0) throw InvalidArgument("numerator must have degree >= 1");
  const ComplexPolynomial monic = (1.0 / n.leading()) * n;
  FiniteBlaschkeProduct b;
  for (Complex z : roots(monic, options)) {
    if (!DiskPoint::admissible(z)) {
      throw InvalidArgument("numerator has a root outside the open disk");
    }
    b.zeros_.emplace_back(z);
  }
  b.mu_ = mu;
  b.numerator_ = monic;
  b.denominator_ = reciprocal(monic);
  return b;
}

FiniteBlaschkeProduct FiniteBlaschkeProduct::from_rational(const ComplexPolynomial& num,
                                                           const ComplexPolynomial& den,
                                                           double* fit_residual,
                                                           const RootOptions& options) {
  const ComplexPolynomial n = num.trimmed();
  if (n.degree() == 0) throw InvalidArgument("rational form must have a non-constant numerator");
  const Complex lead = n.leading();
  const ComplexPolynomial monic = (1.0 / lead) * n;
  const ComplexPolynomial target = reciprocal(monic);
  const ComplexPolynomial d = den.with_formal_degree(monic.degree());
  // den ~ kappa * monic*, so B = (lead / kappa) * monic / monic*.
  Complex dot(0.0);
  double norm_target = 0.0, norm_den = 0.0;
  for (std::size_t k = 0; k <= std::max(d.degree(), target.degree()); ++k) {
    dot += std::conj(target[k]) * d[k];
    norm_target += std::norm(target[k]);
    norm_den += std::norm(d[k]);
  }
  const Complex kappa = dot / norm_target;
  if (fit_residual != nullptr) {
    double miss = 0.0;
    for (std::size_t k = 0; k <= std::max(d.degree(), target.degree()); ++k)
      miss += std::norm(d[k] - kappa * target[k]);
    *fit_residual = std::sqrt(miss / norm_den);
  }
  return from_monic(monic, UnitModulus::project(lead / kappa), options);
}

Complex FiniteBlaschkeProduct::evaluate(Complex z) const {
  if (!(std::abs(z) <= 1.0 + 1e-9)) throw InvalidArgument("evaluate requires |z| <= 1");
  Complex acc = mu_.value();
  for (const DiskPoint& w : zeros_) acc *= mobius_quotient(z, w.value());
  return acc;
}

Complex FiniteBlaschkeProduct::evaluate_rational(Complex z) const {
  return mu_.value() * numerator_(z) / denominator_(z);
}

FiniteBlaschkeProduct::Jet FiniteBlaschkeProduct::jet(Complex z) const {
  // Product rule over the Mobius factors b_i, so nothing is divided by a
  // factor that may vanish and no expanded coefficients are involved.
  const std::size_t d = zeros_.size();
  std::vector<Complex> f(d), f1(d), f2(d);
  for (std::size_t i = 0; i < d; ++i) {
    const Complex w = zeros_[i].value();
    const Complex den = 1.0 - std::conj(w) * z;
    const double k = 1.0 - std::norm(w);
    f[i] = (z - w) / den;
    f1[i] = k / (den * den);
    f2[i] = 2.0 * std::conj(w) * f1[i] / den;
  }
  // prefix[i] = f_0 ... f_{i-1}, suffix[i] = f_i ... f_{d-1}.
  std::vector<Complex> prefix(d + 1, Complex(1.0)), suffix(d + 1, Complex(1.0));
  for (std::size_t i = 0; i < d; ++i) prefix[i + 1] = prefix[i] * f[i];
  for (std::size_t i = d; i-- > 0;) suffix[i] = suffix[i + 1] * f[i];

  Complex d1(0.0), d2(0.0);
  for (std::size_t i = 0; i < d; ++i) {
    const Complex others = prefix[i] * suffix[i + 1];
    d1 += f1[i] * others;
    d2 += f2[i] * others;
    // Pairs i < k: product of the factors other than i and k.
    Complex between(1.0);
    for (std::size_t k = i + 1; k < d; ++k) {
      d2 += 2.0 * f1[i] * f1[k] * prefix[i] * between * suffix[k + 1];
      between *= f[k];
    }
  }
  const Complex mu = mu_.value();
  return {mu * prefix[d], mu * d1, mu * d2};
}

double FiniteBlaschkeProduct::one_minus_abs2(Complex z) const {
  // 1 - |b_i(z)|^2 = (1 - |z|^2)(1 - |w_i|^2) / |1 - conj(w_i) z|^2 exactly,
  // and 1 - prod(1 - x_i) is summed in log space to avoid cancellation.
  const double az = std::abs(z);
  const double wz = (1.0 - az) * (1.0 + az);
  double log_keep = 0.0;
  for (const DiskPoint& w : zeros_) {
    const double x = wz * (1.0 - std::norm(w.value())) / std::norm(1.0 - std::conj(w.value()) * z);
    log_keep += std::log1p(-std::min(x, 1.0));
  }
  return -std::expm1(log_keep);
}

double boundary_derivative_modulus(const FiniteBlaschkeProduct& b, UnitModulus zeta) {
  double sum = 0.0;
  for (const DiskPoint& w : b.zeros()) sum += (1.0 - std::norm(w.value())) / std::norm(zeta.value() - w.value());
  return sum;
}

namespace {

// Newton on B'/B = sum 1/(z - w) + conj(w)/(1 - conj(w) z), which is far
// better conditioned near the boundary than the expanded numerator of B'.
Complex polish_critical_point(const FiniteBlaschkeProduct& b, Complex z) {
  auto log_derivative = [&](Complex x, Complex* slope) {
    Complex v(0.0), d(0.0);
    for (const DiskPoint& w : b.zeros()) {
      const Complex a = 1.0 / (x - w.value());
      const Complex c = std::conj(w.value()) / (1.0 - std::conj(w.value()) * x);
      v += a + c;
      d += c * c - a * a;
    }
    *slope = d;
    return v;
  };
  for (const DiskPoint& w : b.zeros())
    if (std::abs(z - w.value()) < 1e-6) return z;  // multiple zero: B'/B has a pole here
  Complex slope;
  Complex value = log_derivative(z, &slope);
  for (int it = 0; it < 8 && slope != Complex(0.0); ++it) {
    const Complex next = z - value / slope;
    if (!(std::abs(next) < 1.0)) break;
    Complex next_slope;
    const Complex next_value = log_derivative(next, &next_slope);
    if (!(std::abs(next_value) < std::abs(value))) break;
    z = next;
    value = next_value;
    slope = next_slope;
  }
  return z;
}

}  // namespace

std::vector<DiskPoint> critical_points(const FiniteBlaschkeProduct& b, const RootOptions& options) {
  const std::size_t d = b.degree();
  if (d < 2) return {};
  const ComplexPolynomial& f = b.numerator();
  const ComplexPolynomial& g = b.denominator();
  const ComplexPolynomial k = f.derivative() * g - f * g.derivative();
  std::vector<Complex> rs = roots(k, options);
  std::sort(rs.begin(), rs.end(), [](Complex x, Complex y) { return std::abs(x) < std::abs(y); });
  if (rs.size() < d - 1 || !(std::abs(rs[d - 2]) < 1.0) || (rs.size() > d - 1 && !(std::abs(rs[d - 1]) > 1.0))) {
    throw RootFindError("critical points do not split as d-1 inside and d-1 outside the disk", rs, 0.0);
  }
  std::vector<DiskPoint> out;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    // Clustered roots are left alone: Newton would pull them onto one point.
    bool isolated = true;
    for (std::size_t j = 0; j + 1 < d; ++j)
      if (j != k && std::abs(rs[j] - rs[k]) < 1e-4) isolated = false;
    out.emplace_back(isolated ? polish_critical_point(b, rs[k]) : rs[k]);
  }
  return out;
}

FiniteBlaschkeProduct compose(const DiskAutomorphism& psi, const FiniteBlaschkeProduct& b,
                              const DiskAutomorphism& phi) {
  const Complex lp = phi.rotation().value(), cp = phi.center().value();
  const ComplexPolynomial phi_num{-lp * cp, lp};
  const ComplexPolynomial phi_den{Complex(1.0), -std::conj(cp)};
  const ComplexPolynomial u = b.mu().value() * homogeneous_substitute(b.numerator(), phi_num, phi_den);
  const ComplexPolynomial v =
      homogeneous_substitute(b.denominator().with_formal_degree(b.degree()), phi_num, phi_den);

  const Complex ls = psi.rotation().value(), cs = psi.center().value();
  const ComplexPolynomial num = ls * (u - cs * v);
  const ComplexPolynomial den = v - std::conj(cs) * u;
  return FiniteBlaschkeProduct::from_rational(num, den);
}

FiniteBlaschkeProduct conjugate(const FiniteBlaschkeProduct& b, const DiskAutomorphism& a) {
  return compose(a.inverse(), b, a);
}

// ---------------------------------------------------------------------------

ComplexPolynomial cubic_normal_numerator(const CubicParameters& p) {
  const Complex r = p.r.value(), s = p.s.value();
  return ComplexPolynomial{r, -std::conj(s), -s * r, Complex(1.0)};
}

FiniteBlaschkeProduct from_cubic_parameters(const CubicParameters& p, const RootOptions& options) {
  return FiniteBlaschkeProduct::from_monic(cubic_normal_numerator(p), UnitModulus(), options);
}

FiniteBlaschkeProduct from_quadratic_parameter(const QuadraticParameter& p) {
  const Complex root = std::sqrt(p.u.value());
  return FiniteBlaschkeProduct({DiskPoint(root), DiskPoint(-root)}, UnitModulus());
}

CubicParameters canonical_representative(const CubicParameters& p) {
  const Complex r = p.r.value();
  const double tiny = 1e-14 * std::abs(r);
  const bool keep = r.imag() > tiny || (std::abs(r.imag()) <= tiny && r.real() >= 0.0);
  return keep ? p : CubicParameters{DiskPoint(-r), p.s};
}

namespace {

double numerator_mismatch(const FiniteBlaschkeProduct& b, const ComplexPolynomial& expected) {
  double worst = std::abs(b.mu().value() - 1.0);
  for (std::size_t k = 0; k <= std::max(b.numerator().degree(), expected.degree()); ++k)
    worst = std::max(worst, std::abs(b.numerator()[k] - expected[k]));
  return worst;
}

// |s| as predicted by the modulus eps of the centred critical points +-eps:
// s0^4 + (eps^2 + eps^-2) s0^2 - 3 = 0, solved without cancellation.
double s_modulus_from_epsilon(double eps) {
  const double e2 = eps * eps, e4 = e2 * e2;
  return 6.0 * e2 / (1.0 + e4 + std::sqrt((1.0 + e4) * (1.0 + e4) + 12.0 * e4));
}

}  // namespace

CubicNormalForm normal_form_cubic(const FiniteBlaschkeProduct& b, double max_residual,
                                  const RootOptions& options) {
  if (b.degree() != 3) throw InvalidArgument("normal_form_cubic requires a degree-3 product");
  const std::vector<DiskPoint> crit = critical_points(b, options);
  const DiskPoint mid = hyperbolic_midpoint(crit[0], crit[1]);
  const DiskAutomorphism centre = DiskAutomorphism::sending_origin_to(mid);
  const FiniteBlaschkeProduct centred = conjugate(b, centre);
  const double eps = std::abs(centre.inverse()(crit[0].value()));

  // R^{-1} C R with R(z) = e^{i theta} z multiplies mu by e^{2 i theta} and
  // maps the monic numerator's k-th coefficient by e^{i (k-3) theta}.
  const double theta = -centred.mu().arg() / 2.0;
  const Complex rot = std::polar(1.0, theta);
  const ComplexPolynomial& m = centred.numerator();
  const Complex r = m[0] * std::pow(rot, -3);
  const Complex s = -std::conj(m[1] * std::pow(rot, -2));
  if (!DiskPoint::admissible(r) || !DiskPoint::admissible(s)) {
    throw NormalFormError("normal form parameters left the disk", 1.0);
  }
  const CubicParameters raw{DiskPoint(r), DiskPoint(s)};
  const CubicParameters canon = canonical_representative(raw);
  const Complex chosen_rot = (canon.r.value() == raw.r.value()) ? rot : -rot;

  CubicNormalForm out;
  out.params = canon;
  out.conjugator = centre.compose(DiskAutomorphism::rotation(UnitModulus(chosen_rot)));
  out.epsilon = eps;
  const FiniteBlaschkeProduct nf = conjugate(b, out.conjugator);
  const double coeff_residual = numerator_mismatch(nf, cubic_normal_numerator(canon));
  const double s_residual = std::abs(std::abs(canon.s.value()) - s_modulus_from_epsilon(eps));
  out.residual = std::max(coeff_residual, s_residual);
  if (!(out.residual < max_residual)) {
    throw NormalFormError("cubic normal form residual " + std::to_string(out.residual) +
                              " exceeds tolerance",
                          out.residual);
  }
  return out;
}

QuadraticNormalForm normal_form_quadratic(const FiniteBlaschkeProduct& b, double max_residual,
                                          const RootOptions& options) {
  if (b.degree() != 2) throw InvalidArgument("normal_form_quadratic requires a degree-2 product");
  const std::vector<DiskPoint> crit = critical_points(b, options);
  const DiskAutomorphism centre = DiskAutomorphism::sending_origin_to(crit[0]);
  const FiniteBlaschkeProduct centred = conjugate(b, centre);
  // With e^{i theta} = conj(nu): u = -a0 * nu^2.
  const Complex nu = centred.mu().value();
  const Complex u = -centred.numerator()[0] * nu * nu;
  if (!DiskPoint::admissible(u)) throw NormalFormError("normal form parameter left the disk", 1.0);

  QuadraticNormalForm out;
  out.param = QuadraticParameter{DiskPoint(u)};
  out.conjugator = centre.compose(DiskAutomorphism::rotation(UnitModulus(std::conj(nu))));
  const FiniteBlaschkeProduct nf = conjugate(b, out.conjugator);
  out.residual = numerator_mismatch(nf, ComplexPolynomial{-u, Complex(0.0), Complex(1.0)});
  if (!(out.residual < max_residual)) {
    throw NormalFormError("quadratic normal form residual " + std::to_string(out.residual) +
                              " exceeds tolerance",
                          out.residual);
  }
  return out;
}

}  // namespace cubicbp
