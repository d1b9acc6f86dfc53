#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "cubicbp/poly.hpp"

namespace cubicbp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Evaluation {
  Complex value, derivative;
  double error_bound;  // rounding bound for |value| from Horner
};

Evaluation evaluate_with_bound(const std::vector<Complex>& a, Complex z) {
  Complex v(0.0), d(0.0);
  double bound = 0.0;
  const double az = std::abs(z);
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    d = d * z + v;
    v = v * z + *it;
    bound = bound * az + std::abs(*it);
  }
  return {v, d, bound * kEps};
}

}  // namespace

double root_residual(const ComplexPolynomial& p, std::span<const Complex> zs) {
  const double scale = p.max_abs_coefficient();
  const double d = static_cast<double>(p.degree());
  double worst = 0.0;
  for (Complex z : zs) {
    const double denom = scale * std::pow(std::max(1.0, std::abs(z)), d);
    worst = std::max(worst, std::abs(p(z)) / denom);
  }
  return worst;
}

std::vector<Complex> roots(const ComplexPolynomial& p_in, const RootOptions& options) {
  if (p_in.degree() == 0) throw InvalidArgument("roots requires formal degree >= 1");
  if (p_in.is_zero()) throw InvalidArgument("roots of the zero polynomial are undefined");

  ComplexPolynomial p = p_in.trimmed();
  std::vector<Complex> found;

  // Exact zero roots.
  std::vector<Complex> a = p.coefficients();
  std::size_t shift = 0;
  while (shift + 1 < a.size() && a[shift] == Complex(0.0)) ++shift;
  found.assign(shift, Complex(0.0));
  a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(shift));

  const std::size_t d = a.size() - 1;
  if (d == 0) return found;
  if (d == 1) {
    found.push_back(-a[0] / a[1]);
    return found;
  }

  const double radius = 1.0 + std::pow(std::abs(a[0] / a[d]), 1.0 / static_cast<double>(d));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double offset = 0.4 + golden * static_cast<double>(options.seed % 1024);
  std::vector<Complex> z(d);
  for (std::size_t k = 0; k < d; ++k) z[k] = std::polar(radius, offset + golden * static_cast<double>(k));

  std::vector<bool> done(d, false);
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    bool all_done = true;
    for (std::size_t k = 0; k < d; ++k) {
      if (done[k]) continue;
      const Evaluation e = evaluate_with_bound(a, z[k]);
      if (std::abs(e.value) <= 8.0 * e.error_bound) {
        done[k] = true;
        continue;
      }
      all_done = false;
      Complex repulsion(0.0);
      for (std::size_t j = 0; j < d; ++j) {
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      }
      Complex step;
      if (e.derivative == Complex(0.0)) {
        step = std::polar(1e-3 * (1.0 + std::abs(z[k])), 1.0 + static_cast<double>(iter));
      } else {
        const Complex newton = e.value / e.derivative;
        step = newton / (1.0 - newton * repulsion);
      }
      z[k] -= step;
      if (std::abs(step) <= 4.0 * kEps * std::abs(z[k])) done[k] = true;
    }
    if (all_done) break;
  }

  const ComplexPolynomial reduced{std::vector<Complex>(a)};
  const double residual = root_residual(reduced, z);
  if (!(residual < 1e-10)) {
    throw RootFindError("Aberth iteration did not converge after " + std::to_string(iter) +
                            " iterations (residual " + std::to_string(residual) + ")",
                        z, residual);
  }
  // Snap members of a tight cluster to its centroid.
  for (const RootCluster& c : group_roots(z, options.cluster_radius)) {
    if (c.multiplicity < 2) continue;
    for (Complex& zk : z)
      if (std::abs(zk - c.center) < options.cluster_radius * c.multiplicity) zk = c.center;
  }
  found.insert(found.end(), z.begin(), z.end());
  return found;
}

namespace {

// Single-linkage component index for each point.
std::vector<std::size_t> linkage_labels(std::span<const Complex> zs, double radius) {
  const std::size_t n = zs.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(zs[i] - zs[j]) < radius) parent[find(j)] = find(i);

  std::vector<std::size_t> label(n);
  std::vector<std::ptrdiff_t> slot(n, -1);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) slot[r] = static_cast<std::ptrdiff_t>(next++);
    label[i] = static_cast<std::size_t>(slot[r]);
  }
  return label;
}

}  // namespace

std::vector<RootCluster> group_roots(std::span<const Complex> zs, double radius) {
  const std::vector<std::size_t> label = linkage_labels(zs, radius);
  std::vector<RootCluster> clusters;
  std::vector<Complex> sums;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (label[i] >= clusters.size()) {
      clusters.push_back({Complex(0.0), 0});
      sums.push_back(Complex(0.0));
    }
    sums[label[i]] += zs[i];
    ++clusters[label[i]].multiplicity;
  }
  for (std::size_t k = 0; k < clusters.size(); ++k)
    clusters[k].center = sums[k] / static_cast<double>(clusters[k].multiplicity);
  return clusters;
}

namespace {

// |p^{(k)}(c)/k!| <= rel_tol * sum_j |a_j| C(j,k) |c|^{j-k} for all k < m.
bool is_numerical_multiple_root(const ComplexPolynomial& p, Complex c, int m, double rel_tol) {
  const std::vector<Complex> t = p.taylor_shift(c);
  std::vector<double> abs_coeffs(p.degree() + 1);
  for (std::size_t j = 0; j <= p.degree(); ++j) abs_coeffs[j] = std::abs(p[j]);
  const ComplexPolynomial magnitude{std::vector<Complex>(abs_coeffs.begin(), abs_coeffs.end())};
  const std::vector<Complex> bound = magnitude.taylor_shift(Complex(std::abs(c)));
  for (int k = 0; k < m && static_cast<std::size_t>(k) < t.size(); ++k) {
    if (std::abs(t[static_cast<std::size_t>(k)]) > rel_tol * bound[static_cast<std::size_t>(k)].real())
      return false;
  }
  return true;
}

// Roots of an m-fold cluster only converge to within ~eps^(1/m), so their
// centroid is a poor centre. The (m-1)-th derivative has a simple root
// there; polish the centroid with Newton on it.
Complex polish_center(const ComplexPolynomial& p, Complex c, int m, double limit) {
  if (m < 2) return c;
  ComplexPolynomial q = p;
  for (int k = 1; k < m; ++k) q = q.derivative();
  const ComplexPolynomial dq = q.derivative();
  const Complex start = c;
  double last = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 30; ++it) {
    const Complex d = dq(c);
    if (d == Complex(0.0)) break;
    const Complex step = q(c) / d;
    if (!(std::abs(step) < last)) break;
    c -= step;
    last = std::abs(step);
    if (last <= 4.0 * kEps * std::abs(c)) break;
  }
  return std::abs(c - start) < limit ? c : start;
}

}  // namespace

std::vector<RootCluster> certify_clusters(const ComplexPolynomial& p, std::span<const Complex> zs,
                                          double search_radius, double rel_tol) {
  const ComplexPolynomial trimmed = p.trimmed();
  std::vector<RootCluster> clusters;
  // Whole neighbourhoods first: a triple root rarely certifies pairwise.
  std::vector<Complex> leftovers;
  const std::vector<RootCluster> wide = group_roots(zs, search_radius);
  const std::vector<std::size_t> label = linkage_labels(zs, search_radius);
  std::vector<bool> accepted(wide.size(), false);
  for (std::size_t k = 0; k < wide.size(); ++k) {
    const Complex c = polish_center(trimmed, wide[k].center, wide[k].multiplicity, search_radius);
    accepted[k] = is_numerical_multiple_root(trimmed, c, wide[k].multiplicity, rel_tol);
    if (accepted[k]) clusters.push_back({c, wide[k].multiplicity});
  }
  for (std::size_t i = 0; i < zs.size(); ++i)
    if (!accepted[label[i]]) leftovers.push_back(zs[i]);
  for (const RootCluster& c : group_roots(leftovers)) clusters.push_back(c);

  bool merged = true;
  while (merged) {
    merged = false;
    double best = search_radius;
    std::size_t bi = 0, bj = 0;
    Complex best_center(0.0);
    for (std::size_t i = 0; i < clusters.size(); ++i)
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        const double dist = std::abs(clusters[i].center - clusters[j].center);
        if (dist < best) {
          const int m = clusters[i].multiplicity + clusters[j].multiplicity;
          const Complex c = polish_center(
              trimmed,
              (static_cast<double>(clusters[i].multiplicity) * clusters[i].center +
               static_cast<double>(clusters[j].multiplicity) * clusters[j].center) /
                  static_cast<double>(m),
              m, search_radius);
          if (is_numerical_multiple_root(trimmed, c, m, rel_tol)) {
            best = dist;
            bi = i;
            bj = j;
            best_center = c;
            merged = true;
          }
        }
      }
    if (merged) {
      auto& a = clusters[bi];
      const auto& b = clusters[bj];
      a.multiplicity += b.multiplicity;
      a.center = best_center;
      clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    }
  }
  return clusters;
}

}  // namespace cubicbp
