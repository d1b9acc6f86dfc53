#include "cubicbp/slice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "parallel.hpp"

namespace cubicbp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CellCode oracle_cell(const FiniteBlaschkeProduct& b, const ClassifyOptions& options, SliceCell& cell) {
  const ClassificationResult res = denjoy_wolff(b, options);
  cell.dw_point = res.dw_point;
  cell.multiplier = res.multiplier;
  return to_cell(res.oracle_verdict);
}

}  // namespace

const char* to_string(CellCode c) {
  switch (c) {
    case CellCode::Elliptic: return "Elliptic";
    case CellCode::Parabolic: return "Parabolic";
    case CellCode::Hyperbolic: return "Hyperbolic";
    case CellCode::Indeterminate: return "Indeterminate";
    case CellCode::Exterior: return "Exterior";
  }
  return "?";
}

CellCode to_cell(Verdict v) {
  switch (v) {
    case Verdict::Elliptic: return CellCode::Elliptic;
    case Verdict::Parabolic: return CellCode::Parabolic;
    case Verdict::Hyperbolic: return CellCode::Hyperbolic;
    case Verdict::Indeterminate: return CellCode::Indeterminate;
  }
  return CellCode::Indeterminate;
}

Rgb cell_color(CellCode c) {
  switch (c) {
    case CellCode::Elliptic: return {30, 30, 30};
    case CellCode::Parabolic: return {220, 60, 60};
    case CellCode::Hyperbolic: return {230, 230, 230};
    case CellCode::Indeterminate: return {128, 128, 128};
    case CellCode::Exterior: return {0, 0, 0};
  }
  return {0, 0, 0};
}

Complex pixel_center(int col, int row, int resolution, double extent) {
  const double n = static_cast<double>(resolution);
  return {extent * static_cast<double>(2 * col + 1 - resolution) / n,
          extent * static_cast<double>(resolution - 1 - 2 * row) / n};
}

CellCode slice_cell_verdict(Complex r, Complex s, double d1, double d2, double d3, SliceCriterion criterion,
                            double tol_delta) {
  // Band scale: max |q_j| for q = (1+s) z^3 - 2(sr - conj(sr)) z^2 - 3 conj(1+s) z + 4r.
  const double a = std::abs(1.0 + s);
  const double k = s.real() * r.imag() + s.imag() * r.real();
  const double m = std::max({3.0 * a, 4.0 * std::abs(k), 4.0 * std::abs(r)});
  if (4.0 * std::abs(r) <= 1e-12 * m) return CellCode::Indeterminate;  // q(0) = 0
  const double m2 = m * m, m4 = m2 * m2, m8 = m4 * m4;
  const double b1 = tol_delta * m2, b2 = tol_delta * m4, b3 = tol_delta * m8;
  if (criterion == SliceCriterion::PSign) {
    if (d3 > b3) return CellCode::Hyperbolic;
    return d3 < -b3 ? CellCode::Elliptic : CellCode::Parabolic;
  }
  if (d1 > b1 && d2 > b2 && d3 > b3) return CellCode::Hyperbolic;
  if (d1 < -b1 || d2 < -b2 || d3 < -b3) return CellCode::Elliptic;
  return CellCode::Parabolic;
}

SliceGrid render_slice(const SliceOptions& opt) {
  if (opt.resolution < 16 || opt.resolution > 8192) throw InvalidArgument("resolution must lie in [16, 8192]");
  if (!(opt.extent > 0.0) || !std::isfinite(opt.extent)) throw InvalidArgument("extent must be positive");
  if (opt.oracle_stride < 1) throw InvalidArgument("oracle stride must be >= 1");
  const DiskPoint s(opt.s);

  SliceGrid grid;
  grid.s = opt.s;
  grid.resolution = opt.resolution;
  grid.extent = opt.extent;
  grid.mode = opt.mode;
  const std::size_t n = static_cast<std::size_t>(opt.resolution);
  grid.cells.resize(n * n);
  const int stride = opt.oracle_full ? 1 : opt.oracle_stride;

  detail::parallel_rows(n, opt.threads, [&](std::size_t row) {
    std::vector<double> re(n), im(n), d1(n), d2(n), d3(n);
    for (std::size_t col = 0; col < n; ++col) {
      const Complex r = pixel_center(static_cast<int>(col), static_cast<int>(row), opt.resolution, opt.extent);
      re[col] = r.real();
      im[col] = r.imag();
    }
    kernels::deltas(opt.isa, re.data(), im.data(), n, s.value(), d1.data(), d2.data(), d3.data());

    for (std::size_t col = 0; col < n; ++col) {
      SliceCell& cell = grid.cells[row * n + col];
      const Complex r(re[col], im[col]);
      cell.param = r;
      cell.dw_point = Complex(kNaN, kNaN);
      cell.multiplier = kNaN;
      if (!DiskPoint::admissible(r)) {
        cell.formula = CellCode::Exterior;
        cell.delta1 = cell.delta2 = cell.delta3 = cell.p_value = kNaN;
        if (opt.mode != SliceMode::Formula) cell.oracle = CellCode::Exterior;
        continue;
      }
      cell.delta1 = d1[col];
      cell.delta2 = d2[col];
      cell.delta3 = d3[col];
      const CubicParameters params{DiskPoint(r), s};
      cell.p_value = p_discriminant(params);
      cell.formula = slice_cell_verdict(r, s.value(), d1[col], d2[col], d3[col], opt.criterion,
                                        opt.classify.tol_delta);
      const bool sampled = row % static_cast<std::size_t>(stride) == 0 && col % static_cast<std::size_t>(stride) == 0;
      if (opt.mode != SliceMode::Formula && sampled) {
        try {
          cell.oracle = oracle_cell(from_cubic_parameters(params, opt.classify.roots), opt.classify, cell);
        } catch (const std::exception&) {
          cell.oracle = CellCode::Indeterminate;
        }
      }
    }
  });
  return grid;
}

SliceGrid render_unicritical(const UnicriticalOptions& opt) {
  if (opt.degree < 2 || opt.degree > 6) throw InvalidArgument("degree must lie in [2, 6]");
  if (opt.resolution < 16 || opt.resolution > 4096) throw InvalidArgument("resolution must lie in [16, 4096]");
  if (!(opt.extent > 0.0) || !std::isfinite(opt.extent)) throw InvalidArgument("extent must be positive");

  SliceGrid grid;
  grid.resolution = opt.resolution;
  grid.extent = opt.extent;
  grid.mode = SliceMode::Oracle;
  const std::size_t n = static_cast<std::size_t>(opt.resolution);
  grid.cells.resize(n * n);

  detail::parallel_rows(n, opt.threads, [&](std::size_t row) {
    for (std::size_t col = 0; col < n; ++col) {
      SliceCell& cell = grid.cells[row * n + col];
      const Complex w = pixel_center(static_cast<int>(col), static_cast<int>(row), opt.resolution, opt.extent);
      cell.param = w;
      cell.delta1 = cell.delta2 = cell.delta3 = cell.p_value = kNaN;
      cell.dw_point = Complex(kNaN, kNaN);
      cell.multiplier = kNaN;
      if (!DiskPoint::admissible(w)) {
        cell.formula = CellCode::Exterior;
        cell.oracle = CellCode::Exterior;
        continue;
      }
      const FiniteBlaschkeProduct b(std::vector<DiskPoint>(static_cast<std::size_t>(opt.degree), DiskPoint(w)),
                                    UnitModulus());
      try {
        cell.oracle = oracle_cell(b, opt.classify, cell);
      } catch (const std::exception&) {
        cell.oracle = CellCode::Indeterminate;
      }
      cell.formula = *cell.oracle;
    }
  });
  return grid;
}

Image slice_image(const SliceGrid& grid) {
  const auto n = static_cast<std::size_t>(grid.resolution);
  Image img(n, n);
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t col = 0; col < n; ++col) img.at(col, row) = cell_color(grid.cells[row * n + col].shown());
  return img;
}

Image slice_diff_image(const SliceGrid& grid) {
  const auto n = static_cast<std::size_t>(grid.resolution);
  Image img(n, n);
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t col = 0; col < n; ++col) {
      const SliceCell& c = grid.cells[row * n + col];
      img.at(col, row) = (c.oracle && *c.oracle != c.formula) ? kDisagreementColor : cell_color(c.formula);
    }
  return img;
}

std::size_t count_disagreements(const SliceGrid& grid) {
  return static_cast<std::size_t>(std::count_if(grid.cells.begin(), grid.cells.end(), [](const SliceCell& c) {
    return c.oracle && *c.oracle != c.formula;
  }));
}

void write_slice_csv(std::ostream& os, const SliceGrid& grid) {
  os << "re_r,im_r,delta1,delta2,delta3,p_value,verdict_formula,verdict_oracle,dw_re,dw_im,multiplier\n";
  for (const SliceCell& c : grid.cells) {
    os << num(c.param.real()) << ',' << num(c.param.imag()) << ',';
    if (c.formula == CellCode::Exterior) {
      os << ",,,,";
    } else {
      os << num(c.delta1) << ',' << num(c.delta2) << ',' << num(c.delta3) << ',' << num(c.p_value) << ',';
    }
    os << to_string(c.formula) << ',';
    if (c.oracle) {
      os << to_string(*c.oracle) << ',';
      if (std::isfinite(c.multiplier)) {
        os << num(c.dw_point.real()) << ',' << num(c.dw_point.imag()) << ',' << num(c.multiplier);
      } else {
        os << ",,";
      }
    } else {
      os << ",,,";
    }
    os << '\n';
  }
}

void write_unicritical_csv(std::ostream& os, const SliceGrid& grid) {
  os << "re_w,im_w,verdict,dw_re,dw_im,multiplier\n";
  for (const SliceCell& c : grid.cells) {
    os << num(c.param.real()) << ',' << num(c.param.imag()) << ',' << to_string(c.shown()) << ',';
    if (std::isfinite(c.multiplier)) {
      os << num(c.dw_point.real()) << ',' << num(c.dw_point.imag()) << ',' << num(c.multiplier);
    } else {
      os << ",,";
    }
    os << '\n';
  }
}

}  // namespace cubicbp
