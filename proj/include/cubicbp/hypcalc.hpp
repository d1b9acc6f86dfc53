#pragma once

// Hyperbolic divided differences and hyperbolic derivatives of finite
// Blaschke products, and the hyperbolic inflection point of a cubic.

#include <optional>
#include <vector>

#include "cubicbp/blaschke.hpp"

namespace cubicbp {

// (Delta_w^n B)(z). Level 1 is [B(z), B(w)] / [z, w]; level n applies the
// same quotient to level n-1 with the anchor value (Delta_w^{n-1} B)(w),
// which is H^{n-1}B(w). For pseudo-hyperbolic distance below 1e-7 the
// removable singularity is filled with H^n B(w).
// z may lie on the closed disk (|z| <= 1 + 1e-9) so boundary values can be
// sampled. Throws InvalidArgument unless 1 <= n <= degree(B).
Complex divided_difference(const FiniteBlaschkeProduct& b, DiskPoint w, int n, Complex z);

// B'(z)(1 - |z|^2) / (1 - |B(z)|^2).
Complex h1(const FiniteBlaschkeProduct& b, DiskPoint z);
// Closed form of H^2 B; requires degree >= 2.
Complex h2(const FiniteBlaschkeProduct& b, DiskPoint z);
// H^n B(z) for 1 <= n <= degree. Orders 1 and 2 use the closed forms;
// higher orders take the mean of the holomorphic map Delta_z^n B over a
// pseudo-hyperbolic circle around z.
Complex hyperbolic_derivative(const FiniteBlaschkeProduct& b, DiskPoint z, int n);

struct HyperbolicJet {
  DiskPoint base;
  Complex h1;
  std::optional<Complex> h2;  // degree >= 2 only
};
HyperbolicJet hyperbolic_jet(const FiniteBlaschkeProduct& b, DiskPoint z);

struct InflectionPoint {
  DiskPoint point;
  double residual = 0.0;  // |H^2 B(point)|
  std::vector<DiskPoint> critical_points;
};

// Hyperbolic midpoint of the two critical points of a cubic.
InflectionPoint inflection_point_cubic(const FiniteBlaschkeProduct& b, const RootOptions& options = {});

struct ScanHit {
  DiskPoint point;
  double value = 0.0;  // |H^order B| after refinement
};

struct ScanOptions {
  double grid_step = 0.02;  // in (0, 0.05]
  int order = 2;            // 1 scans H^1 (critical points), 2 scans H^2
  double radius = 0.999;    // grid restricted to |z| <= radius
  double accept = 1e-6;     // refined points with |H| below this are kept
  unsigned threads = 0;     // 0: hardware concurrency
};

// Grid local minima of |H^order B|, refined by damped Newton on the real
// 2x2 system with a central finite-difference Jacobian. Hits closer than
// one grid step are merged (keeping the smaller residual) and returned in
// row-major grid order.
std::vector<ScanHit> inflection_scan(const FiniteBlaschkeProduct& b, const ScanOptions& options = {});

}  // namespace cubicbp
