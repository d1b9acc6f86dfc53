#pragma once

// Fixed-point polynomials, the Schur-Cohn route to the elliptic / parabolic /
// hyperbolic trichotomy, the closed-form discriminant P(r, s) for cubics, and
// an independent Denjoy-Wolff oracle built on root finding and iteration.

#include <optional>
#include <string>
#include <vector>

#include "cubicbp/blaschke.hpp"

namespace cubicbp {

enum class Verdict { Elliptic, Parabolic, Hyperbolic, Indeterminate };
enum class Route { Formula, Oracle, Both };

const char* to_string(Verdict v);
const char* to_string(Route r);

struct ClassificationResult {
  Verdict verdict = Verdict::Indeterminate;
  std::vector<double> deltas;
  std::optional<double> p_value;  // cubic normal form only
  std::optional<Verdict> p_verdict;  // sign of P with the delta_3 band
  Complex dw_point{0.0, 0.0};
  double multiplier = 0.0;  // |B'(w0)| (elliptic) or B'(w0) (boundary)
  Route route = Route::Both;
  std::optional<std::string> discrepancy;

  // Per-route detail.
  Verdict formula_verdict = Verdict::Indeterminate;
  Verdict oracle_verdict = Verdict::Indeterminate;
  bool degenerate = false;     // Schur-Cohn degeneracy on the formula route
  bool experimental = false;   // degree > 3
  std::string diagnostics;
};

struct ClassifyOptions {
  double tol_delta = 1e-9;       // formula band, relative to the delta scale
  double tol_multiplier = 1e-6;  // oracle band on |B'(w0) - 1|
  long max_orbit_steps = 1'000'000;
  RootOptions roots;
};

// Numerator of B(z) - z over the common denominator N*: mu N - z N*.
// Degree d+1 and self-inversive.
ComplexPolynomial fixed_point_polynomial(const FiniteBlaschkeProduct& b);
// The displayed forms: conj(u) z^3 + z^2 - z - u for the quadratic family and
// conj(r) z^4 - (1+s) z^3 + (sr - conj(sr)) z^2 + conj(1+s) z - r for the
// cubic one. The cubic display is the negative of the general numerator;
// the Schur-Cohn deltas are unchanged by the sign.
ComplexPolynomial fixed_point_polynomial(const QuadraticParameter& p);
ComplexPolynomial fixed_point_polynomial(const CubicParameters& p);

// (p')*. Throws InvalidArgument for degree < 2.
ComplexPolynomial q_polynomial(const ComplexPolynomial& p);

// P(r, s) evaluated as displayed in the classification theorem.
double p_discriminant(const CubicParameters& p);

// delta_k is homogeneous of degree 2^k in the coefficients of q, so the
// parabolic band for delta_k is tol * (max |q_j|)^(2^k).
std::vector<double> delta_scales(const ComplexPolynomial& q);
// Hyperbolic iff every delta_k exceeds its band; parabolic iff none falls
// below minus its band; elliptic otherwise. A root of q at the origin
// makes the test indeterminate.
Verdict verdict_from_deltas(const SchurReport& report, const std::vector<double>& scales, double tol);

ClassificationResult classify_formula(const QuadraticParameter& p, const ClassifyOptions& options = {});
ClassificationResult classify_formula(const CubicParameters& p, const ClassifyOptions& options = {});
// Degrees 2 and 3 are reduced to normal form first; higher degrees run the
// same pipeline on B directly and are flagged experimental.
ClassificationResult classify_formula(const FiniteBlaschkeProduct& b, const ClassifyOptions& options = {});

ClassificationResult denjoy_wolff(const FiniteBlaschkeProduct& b, const ClassifyOptions& options = {});

ClassificationResult classify(const QuadraticParameter& p, const ClassifyOptions& options = {});
ClassificationResult classify(const CubicParameters& p, const ClassifyOptions& options = {});
ClassificationResult classify(const FiniteBlaschkeProduct& b, const ClassifyOptions& options = {});

// Merges a formula-route and an oracle-route result.
ClassificationResult reconcile(const ClassificationResult& formula, const ClassificationResult& oracle,
                               const ClassifyOptions& options = {});

}  // namespace cubicbp
