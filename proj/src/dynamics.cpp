#include "cubicbp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace cubicbp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kBoundaryBand = 1e-6;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string fmt_list(const std::vector<double>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + fmt(xs[i]);
  return s + "]";
}

void append(std::string& to, const std::string& what) {
  if (what.empty()) return;
  if (!to.empty()) to += "; ";
  to += what;
}

ClassificationResult formula_result(const ComplexPolynomial& p, const ClassifyOptions& options) {
  ClassificationResult res;
  res.route = Route::Formula;
  res.dw_point = Complex(kNaN, kNaN);
  res.multiplier = kNaN;
  const ComplexPolynomial q = q_polynomial(p);
  const SchurReport report = schur_cohn(q);
  res.deltas = report.deltas;
  res.degenerate = report.degenerate;
  res.diagnostics = report.reason;
  res.formula_verdict = verdict_from_deltas(report, delta_scales(q), options.tol_delta);
  res.verdict = res.formula_verdict;
  return res;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Elliptic: return "Elliptic";
    case Verdict::Parabolic: return "Parabolic";
    case Verdict::Hyperbolic: return "Hyperbolic";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "?";
}

const char* to_string(Route r) {
  switch (r) {
    case Route::Formula: return "Formula";
    case Route::Oracle: return "Oracle";
    case Route::Both: return "Both";
  }
  return "?";
}

ComplexPolynomial fixed_point_polynomial(const FiniteBlaschkeProduct& b) {
  const ComplexPolynomial z{Complex(0.0), Complex(1.0)};
  return b.mu().value() * b.numerator() - z * b.denominator().with_formal_degree(b.degree());
}

ComplexPolynomial fixed_point_polynomial(const QuadraticParameter& p) {
  const Complex u = p.u.value();
  return ComplexPolynomial{-u, Complex(-1.0), Complex(1.0), std::conj(u)};
}

ComplexPolynomial fixed_point_polynomial(const CubicParameters& p) {
  const Complex r = p.r.value(), s = p.s.value();
  const Complex sr = s * r;
  return ComplexPolynomial{-r, std::conj(1.0 + s), sr - std::conj(sr), -(1.0 + s), std::conj(r)};
}

ComplexPolynomial q_polynomial(const ComplexPolynomial& p) {
  if (p.degree() < 2) throw InvalidArgument("q_polynomial requires degree >= 2");
  return reciprocal(p.derivative());
}

double p_discriminant(const CubicParameters& p) {
  const Complex r = p.r.value(), s = p.s.value();
  const Complex rb = std::conj(r);
  const Complex one_s = 1.0 + s, one_sb = std::conj(one_s);
  const Complex sr = s * r, srb = std::conj(sr);
  const double d1 = 16.0 * std::norm(r) - std::norm(one_s);
  const Complex c2 = 8.0 * rb * (srb - sr) + 3.0 * one_s * one_s;
  const double d2 = d1 * d1 - std::norm(c2);
  const Complex x = (std::norm(one_s) - 16.0 * std::norm(r)) * (2.0 * one_s * (sr - srb) + 12.0 * rb * one_sb) +
                    (3.0 * one_s * one_s + 8.0 * rb * (srb - sr)) * (2.0 * one_sb * (srb - sr) + 12.0 * r * one_s);
  return d2 * d2 - std::norm(x);
}

std::vector<double> delta_scales(const ComplexPolynomial& q) {
  const double m = q.max_abs_coefficient();
  std::vector<double> scales;
  double s = m;
  for (std::size_t k = 1; k <= q.degree(); ++k) {
    s *= s;
    scales.push_back(s);
  }
  return scales;
}

Verdict verdict_from_deltas(const SchurReport& report, const std::vector<double>& scales, double tol) {
  if (report.kind == SchurDegeneracy::RootAtOrigin) return Verdict::Indeterminate;
  bool all_positive = true, none_negative = true;
  for (std::size_t k = 0; k < report.deltas.size(); ++k) {
    const double band = tol * scales[k];
    if (!(report.deltas[k] > band)) all_positive = false;
    if (report.deltas[k] < -band) none_negative = false;
  }
  if (all_positive) return Verdict::Hyperbolic;
  return none_negative ? Verdict::Parabolic : Verdict::Elliptic;
}

ClassificationResult classify_formula(const QuadraticParameter& p, const ClassifyOptions& options) {
  return formula_result(fixed_point_polynomial(p), options);
}

ClassificationResult classify_formula(const CubicParameters& p, const ClassifyOptions& options) {
  ClassificationResult res = formula_result(fixed_point_polynomial(p), options);
  res.p_value = p_discriminant(p);
  const double band = options.tol_delta * delta_scales(q_polynomial(fixed_point_polynomial(p))).back();
  res.p_verdict = *res.p_value > band    ? Verdict::Hyperbolic
                  : *res.p_value < -band ? Verdict::Elliptic
                                         : Verdict::Parabolic;
  return res;
}

ClassificationResult classify_formula(const FiniteBlaschkeProduct& b, const ClassifyOptions& options) {
  if (b.degree() < 2) throw InvalidArgument("classification requires degree >= 2");
  if (b.degree() > 3) {
    ClassificationResult res = formula_result(fixed_point_polynomial(b), options);
    res.experimental = true;
    return res;
  }
  try {
    if (b.degree() == 2) return classify_formula(normal_form_quadratic(b, 1e-8, options.roots).param, options);
    return classify_formula(normal_form_cubic(b, 1e-8, options.roots).params, options);
  } catch (const std::runtime_error& e) {
    ClassificationResult res;
    res.route = Route::Formula;
    res.dw_point = Complex(kNaN, kNaN);
    res.multiplier = kNaN;
    res.diagnostics = std::string("normal form failed: ") + e.what();
    return res;
  }
}

// ---------------------------------------------------------------------------

namespace {

void set_oracle(ClassificationResult& res, Verdict v, Complex w0, double m) {
  res.verdict = res.oracle_verdict = v;
  res.dw_point = w0;
  res.multiplier = m;
}

Verdict boundary_verdict(double m, double band) {
  return std::abs(m - 1.0) <= band ? Verdict::Parabolic : Verdict::Hyperbolic;
}

// Fixed points from the polynomial; false when the picture is ambiguous.
bool oracle_from_roots(const FiniteBlaschkeProduct& b, const ClassifyOptions& options, ClassificationResult& res) {
  const ComplexPolynomial p = fixed_point_polynomial(b);
  std::vector<Complex> zs;
  try {
    zs = roots(p, options.roots);
  } catch (const RootFindError& e) {
    append(res.diagnostics, e.what());
    return false;
  }
  const std::vector<RootCluster> clusters = certify_clusters(p, zs);

  std::optional<std::pair<Complex, double>> interior;
  for (const RootCluster& c : clusters) {
    if (!(std::abs(c.center) < 1.0 - kBoundaryBand)) continue;
    const double m = std::abs(b.derivative(c.center));
    if (m < 1.0 && (!interior || m < interior->second)) interior = std::make_pair(c.center, m);
  }
  if (interior) {
    set_oracle(res, Verdict::Elliptic, interior->first, interior->second);
    return true;
  }

  std::optional<std::pair<Complex, double>> best;
  for (const RootCluster& c : clusters) {
    if (std::abs(std::abs(c.center) - 1.0) > kBoundaryBand) continue;
    const Complex zeta = c.center / std::abs(c.center);
    const Complex m = b.derivative(zeta);
    if (std::abs(m.imag()) > 1e-6 * std::max(1.0, std::abs(m))) {
      append(res.diagnostics, "boundary multiplier not real: " + fmt(m.real()) + " + " + fmt(m.imag()) + "i");
      return false;
    }
    if (!best || m.real() < best->second) best = std::make_pair(zeta, m.real());
  }
  if (!best || best->second > 1.0 + options.tol_multiplier) {
    append(res.diagnostics, "no attracting or indifferent fixed point among the roots");
    return false;
  }
  set_oracle(res, boundary_verdict(best->second, options.tol_multiplier), best->first, best->second);
  return true;
}

bool oracle_from_orbit(const FiniteBlaschkeProduct& b, const ClassifyOptions& options, ClassificationResult& res) {
  Complex z(0.0);
  long near_boundary = 0;
  for (long n = 0; n < options.max_orbit_steps; ++n) {
    Complex next = b.evaluate(z);
    if (std::abs(next) > 1.0) next /= std::abs(next);
    if (std::abs(next - z) < 1e-13 && std::abs(next) < 1.0 - kBoundaryBand) {
      const double m = std::abs(b.derivative(next));
      set_oracle(res, Verdict::Elliptic, next, m);
      append(res.diagnostics, "orbit converged to an interior point after " + std::to_string(n + 1) + " steps");
      return true;
    }
    near_boundary = (1.0 - std::abs(next) < 1e-10) ? near_boundary + 1 : 0;
    if (near_boundary >= 1000) {
      const Complex zeta = next / std::abs(next);
      const double m = b.derivative(zeta).real();
      set_oracle(res, boundary_verdict(m, options.tol_multiplier), zeta, m);
      append(res.diagnostics, "orbit reached the boundary after " + std::to_string(n + 1) + " steps");
      return true;
    }
    z = next;
  }
  append(res.diagnostics, "orbit from 0 did not converge in " + std::to_string(options.max_orbit_steps) + " steps");
  return false;
}

}  // namespace

ClassificationResult denjoy_wolff(const FiniteBlaschkeProduct& b, const ClassifyOptions& options) {
  if (b.degree() < 2) throw InvalidArgument("denjoy_wolff requires degree >= 2");
  ClassificationResult res;
  res.route = Route::Oracle;
  res.experimental = b.degree() > 3;
  if (oracle_from_roots(b, options, res) || oracle_from_orbit(b, options, res)) return res;
  res.verdict = res.oracle_verdict = Verdict::Indeterminate;
  res.dw_point = Complex(kNaN, kNaN);
  res.multiplier = kNaN;
  return res;
}

// ---------------------------------------------------------------------------

ClassificationResult reconcile(const ClassificationResult& formula, const ClassificationResult& oracle,
                               const ClassifyOptions& /*options*/) {
  ClassificationResult out = formula;
  out.oracle_verdict = oracle.oracle_verdict;
  out.dw_point = oracle.dw_point;
  out.multiplier = oracle.multiplier;
  out.experimental = formula.experimental || oracle.experimental;
  out.diagnostics.clear();
  if (!formula.diagnostics.empty()) append(out.diagnostics, "formula: " + formula.diagnostics);
  if (!oracle.diagnostics.empty()) append(out.diagnostics, "oracle: " + oracle.diagnostics);

  const Verdict f = formula.formula_verdict, o = oracle.oracle_verdict;
  std::string note;
  if (f == o) {
    out.verdict = f;
    out.route = Route::Both;
  } else if (o == Verdict::Indeterminate) {
    out.verdict = f;
    out.route = Route::Formula;
    note = "oracle indeterminate, formula says " + std::string(to_string(f));
  } else if (f == Verdict::Indeterminate) {
    out.verdict = o;
    out.route = Route::Oracle;
    note = "formula route degenerate (" + formula.diagnostics + "), oracle says " + to_string(o);
  } else if (f == Verdict::Parabolic || o == Verdict::Parabolic) {
    // Disagreement inside one route's parabolic band is not a discrepancy.
    out.verdict = Verdict::Parabolic;
    out.route = f == Verdict::Parabolic ? Route::Formula : Route::Oracle;
    append(out.diagnostics, std::string("formula ") + to_string(f) + ", oracle " + to_string(o) +
                                ": within the parabolic band");
  } else {
    out.verdict = o;
    out.route = Route::Oracle;
    note = std::string("formula says ") + to_string(f) + ", oracle says " + to_string(o);
  }

  if (out.p_value && out.p_verdict && *out.p_verdict != out.verdict) {
    const double p = *out.p_value;
    std::string neg;
    for (std::size_t k = 0; k < out.deltas.size(); ++k)
      if (out.deltas[k] < 0.0) append(neg, "delta" + std::to_string(k + 1) + " = " + fmt(out.deltas[k]) + " < 0");
    append(note, "P = " + fmt(p) + (p > 0.0 ? " > 0" : p < 0.0 ? " < 0" : " = 0") + " suggests " +
                     to_string(*out.p_verdict) + (neg.empty() ? std::string() : " but " + neg));
  }

  if (!note.empty()) {
    note += "; deltas = " + fmt_list(out.deltas);
    if (out.p_value) note += ", P = " + fmt(*out.p_value);
    out.discrepancy = note;
  }
  return out;
}

ClassificationResult classify(const QuadraticParameter& p, const ClassifyOptions& options) {
  return reconcile(classify_formula(p, options), denjoy_wolff(from_quadratic_parameter(p), options), options);
}

ClassificationResult classify(const CubicParameters& p, const ClassifyOptions& options) {
  return reconcile(classify_formula(p, options), denjoy_wolff(from_cubic_parameters(p, options.roots), options),
                   options);
}

ClassificationResult classify(const FiniteBlaschkeProduct& b, const ClassifyOptions& options) {
  return reconcile(classify_formula(b, options), denjoy_wolff(b, options), options);
}

}  // namespace cubicbp
