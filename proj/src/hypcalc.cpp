#include "cubicbp/hypcalc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "parallel.hpp"

namespace cubicbp {

namespace {

constexpr double kCoincidence = 1e-7;

void check_order(const FiniteBlaschkeProduct& b, int n) {
  if (n < 1 || static_cast<std::size_t>(n) > b.degree()) {
    throw InvalidArgument("divided difference order must lie in [1, degree]");
  }
}

}  // namespace

Complex h1(const FiniteBlaschkeProduct& b, DiskPoint z) {
  const Complex zv = z.value();
  return b.derivative(zv) * (1.0 - std::norm(zv)) / b.one_minus_abs2(zv);
}

Complex h2(const FiniteBlaschkeProduct& b, DiskPoint z) {
  if (b.degree() < 2) throw InvalidArgument("h2 requires degree >= 2");
  const Complex zv = z.value();
  const auto j = b.jet(zv);
  const Complex bz = j.value;
  const double wz = 1.0 - std::norm(zv);
  const double wb = b.one_minus_abs2(zv);
  const Complex first = j.d1 * wz / wb;
  const Complex bracket = j.d2 * wz * wz / wb - 2.0 * std::conj(zv) * j.d1 * wz / wb +
                          2.0 * std::conj(bz) * j.d1 * j.d1 * wz * wz / (wb * wb);
  return bracket / (2.0 * (1.0 - std::norm(first)));
}

namespace {

// Delta_w^n B at z from precomputed anchors[k] = H^k B(w), k = 1..n-1.
Complex chain(const FiniteBlaschkeProduct& b, DiskPoint w, const std::vector<Complex>& anchors, int n,
              Complex z) {
  const Complex q = mobius_quotient(z, w.value());
  Complex v = mobius_quotient(b.evaluate(z), b.evaluate(w.value())) / q;
  for (int k = 2; k <= n; ++k) v = mobius_quotient(v, anchors[static_cast<std::size_t>(k - 1)]) / q;
  return v;
}

std::vector<Complex> anchors_up_to(const FiniteBlaschkeProduct& b, DiskPoint w, int n);

// Delta_w^n B is holomorphic on the disk, so its value at w is the mean over
// a pseudo-hyperbolic circle around w. With radius 0.4 the 32-point rule is
// exact to ~0.4^32 and the quotients stay well away from cancellation.
Complex ring_mean(const FiniteBlaschkeProduct& b, DiskPoint w, int n) {
  constexpr int kPoints = 32;
  constexpr double kRadius = 0.4;
  const std::vector<Complex> anchors = anchors_up_to(b, w, n - 1);
  const DiskAutomorphism to_w = DiskAutomorphism::sending_origin_to(w);
  Complex sum(0.0);
  for (int k = 0; k < kPoints; ++k) {
    const Complex eta = std::polar(kRadius, 2.0 * std::numbers::pi * k / kPoints);
    sum += chain(b, w, anchors, n, to_w(eta));
  }
  return sum / static_cast<double>(kPoints);
}

// {unused, H^1, ..., H^m} at w.
std::vector<Complex> anchors_up_to(const FiniteBlaschkeProduct& b, DiskPoint w, int m) {
  std::vector<Complex> a(static_cast<std::size_t>(m) + 1, Complex(0.0));
  if (m >= 1) a[1] = h1(b, w);
  if (m >= 2) a[2] = h2(b, w);
  for (int k = 3; k <= m; ++k) a[static_cast<std::size_t>(k)] = ring_mean(b, w, k);
  return a;
}

}  // namespace

Complex hyperbolic_derivative(const FiniteBlaschkeProduct& b, DiskPoint z, int n) {
  check_order(b, n);
  if (n == 1) return h1(b, z);
  if (n == 2) return h2(b, z);
  return ring_mean(b, z, n);
}

Complex divided_difference(const FiniteBlaschkeProduct& b, DiskPoint w, int n, Complex z) {
  check_order(b, n);
  if (!(std::abs(z) <= 1.0 + 1e-9)) throw InvalidArgument("divided_difference requires |z| <= 1");
  if (std::abs(mobius_quotient(z, w.value())) < kCoincidence) return hyperbolic_derivative(b, w, n);
  return chain(b, w, anchors_up_to(b, w, n - 1), n, z);
}

HyperbolicJet hyperbolic_jet(const FiniteBlaschkeProduct& b, DiskPoint z) {
  HyperbolicJet j{z, h1(b, z), std::nullopt};
  if (b.degree() >= 2) j.h2 = h2(b, z);
  return j;
}

InflectionPoint inflection_point_cubic(const FiniteBlaschkeProduct& b, const RootOptions& options) {
  if (b.degree() != 3) throw InvalidArgument("inflection_point_cubic requires a degree-3 product");
  InflectionPoint out;
  out.critical_points = critical_points(b, options);
  out.point = hyperbolic_midpoint(out.critical_points[0], out.critical_points[1]);
  out.residual = std::abs(h2(b, out.point));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Scanner {
  const FiniteBlaschkeProduct& b;
  const ScanOptions& opt;

  Complex eval(Complex z) const {
    return opt.order == 1 ? h1(b, DiskPoint(z)) : h2(b, DiskPoint(z));
  }

  // Damped Newton on (Re h, Im h) as a map R^2 -> R^2.
  ScanHit refine(Complex z) const {
    constexpr double fd = 1e-6;
    Complex f = eval(z);
    for (int it = 0; it < 60 && std::abs(f) > 1e-15; ++it) {
      if (std::abs(z) + fd >= 1.0) break;
      const Complex fx = (eval(z + fd) - eval(z - fd)) / (2.0 * fd);
      const Complex fy = (eval(z + Complex(0.0, fd)) - eval(z - Complex(0.0, fd))) / (2.0 * fd);
      // [fx.re fy.re; fx.im fy.im] [dx; dy] = -[f.re; f.im]
      const double det = fx.real() * fy.imag() - fy.real() * fx.imag();
      if (det == 0.0 || !std::isfinite(det)) break;
      const double dx = (-f.real() * fy.imag() + fy.real() * f.imag()) / det;
      const double dy = (-fx.real() * f.imag() + fx.imag() * f.real()) / det;
      const Complex step(dx, dy);
      double t = 1.0;
      bool moved = false;
      while (t > 1e-6) {
        const Complex trial = z + t * step;
        if (std::abs(trial) < opt.radius) {
          const Complex ft = eval(trial);
          if (std::abs(ft) < std::abs(f)) {
            z = trial;
            f = ft;
            moved = true;
            break;
          }
        }
        t *= 0.5;
      }
      if (!moved || std::abs(t * step) < 1e-15) break;
    }
    return {DiskPoint(z), std::abs(f)};
  }
};

}  // namespace

std::vector<ScanHit> inflection_scan(const FiniteBlaschkeProduct& b, const ScanOptions& opt) {
  if (b.degree() < 2) throw InvalidArgument("inflection_scan requires degree >= 2");
  if (!(opt.grid_step > 0.0 && opt.grid_step <= 0.05)) throw InvalidArgument("grid_step must lie in (0, 0.05]");
  if (opt.order != 1 && opt.order != 2) throw InvalidArgument("scan order must be 1 or 2");
  if (!(opt.radius > 0.0 && opt.radius < 1.0)) throw InvalidArgument("scan radius must lie in (0, 1)");

  const long k = static_cast<long>(std::floor(opt.radius / opt.grid_step));
  const std::size_t n = static_cast<std::size_t>(2 * k + 1);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto point = [&](std::size_t row, std::size_t col) {
    return Complex(static_cast<double>(static_cast<long>(col) - k) * opt.grid_step,
                   static_cast<double>(k - static_cast<long>(row)) * opt.grid_step);
  };
  const Scanner scanner{b, opt};

  std::vector<double> value(n * n, nan);
  detail::parallel_rows(n, opt.threads, [&](std::size_t row) {
    for (std::size_t col = 0; col < n; ++col) {
      const Complex z = point(row, col);
      if (std::abs(z) <= opt.radius) value[row * n + col] = std::abs(scanner.eval(z));
    }
  });

  std::vector<std::vector<ScanHit>> per_row(n);
  detail::parallel_rows(n, opt.threads, [&](std::size_t row) {
    for (std::size_t col = 0; col < n; ++col) {
      const double v = value[row * n + col];
      if (std::isnan(v)) continue;
      bool minimum = true;
      for (int dr = -1; dr <= 1 && minimum; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const long rr = static_cast<long>(row) + dr, cc = static_cast<long>(col) + dc;
          if (rr < 0 || cc < 0 || rr >= static_cast<long>(n) || cc >= static_cast<long>(n)) continue;
          const double u = value[static_cast<std::size_t>(rr) * n + static_cast<std::size_t>(cc)];
          if (!std::isnan(u) && u < v) {
            minimum = false;
            break;
          }
        }
      if (!minimum) continue;
      const ScanHit hit = scanner.refine(point(row, col));
      if (hit.value < opt.accept) per_row[row].push_back(hit);
    }
  });

  std::vector<ScanHit> hits;
  for (const auto& row : per_row)
    for (const ScanHit& h : row) {
      auto same = std::find_if(hits.begin(), hits.end(), [&](const ScanHit& e) {
        return std::abs(e.point.value() - h.point.value()) < opt.grid_step;
      });
      if (same == hits.end()) {
        hits.push_back(h);
      } else if (h.value < same->value) {
        *same = h;
      }
    }
  return hits;
}

}  // namespace cubicbp
