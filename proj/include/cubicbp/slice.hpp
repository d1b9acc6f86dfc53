#pragma once

// Parameter-space rasters: r-plane slices of the cubic normal form at fixed
// s, and w-plane grids of the unicritical family ((z - w)/(1 - conj(w) z))^d.

#include <iosfwd>
#include <optional>
#include <vector>

#include "cubicbp/dynamics.hpp"
#include "cubicbp/kernels.hpp"
#include "cubicbp/ppm.hpp"

namespace cubicbp {

// Verdict of one raster cell; Exterior marks parameters outside the disk.
enum class CellCode { Elliptic, Parabolic, Hyperbolic, Indeterminate, Exterior };

const char* to_string(CellCode c);
CellCode to_cell(Verdict v);
Rgb cell_color(CellCode c);
inline constexpr Rgb kDisagreementColor{255, 200, 0};

enum class SliceMode { Formula, Oracle, Both };
// AllDelta: every delta_k positive (the proven criterion). PSign: the sign
// of P = delta_3 alone.
enum class SliceCriterion { AllDelta, PSign };

struct SliceCell {
  Complex param;  // r (slice) or w (unicritical)
  CellCode formula = CellCode::Exterior;
  std::optional<CellCode> oracle;
  double delta1 = 0.0, delta2 = 0.0, delta3 = 0.0, p_value = 0.0;
  Complex dw_point{0.0, 0.0};
  double multiplier = 0.0;

  // Oracle verdict where one was computed, otherwise the formula verdict.
  CellCode shown() const { return oracle ? *oracle : formula; }
};

struct SliceGrid {
  Complex s{0.0, 0.0};
  int resolution = 0;
  double extent = 1.0;
  SliceMode mode = SliceMode::Formula;
  std::vector<SliceCell> cells;  // row-major, top row first

  const SliceCell& at(int col, int row) const {
    return cells[static_cast<std::size_t>(row) * static_cast<std::size_t>(resolution) +
                 static_cast<std::size_t>(col)];
  }
};

// Pixel centre of column i (or row j, top to bottom) in an N x N raster
// over [-extent, extent]^2. Columns i and N-1-i map to exact negatives.
Complex pixel_center(int col, int row, int resolution, double extent);

struct SliceOptions {
  Complex s{0.0, 0.0};
  int resolution = 512;  // [16, 8192]
  double extent = 1.0;
  SliceMode mode = SliceMode::Formula;
  SliceCriterion criterion = SliceCriterion::AllDelta;
  bool oracle_full = false;
  int oracle_stride = 4;  // oracle on every stride-th row and column
  kernels::Isa isa = kernels::Isa::Scalar;
  ClassifyOptions classify;
  unsigned threads = 0;  // 0: hardware concurrency
};

SliceGrid render_slice(const SliceOptions& options);

struct UnicriticalOptions {
  int degree = 3;         // [2, 6]
  int resolution = 512;   // [16, 4096]
  double extent = 1.0;
  ClassifyOptions classify;
  unsigned threads = 0;
};

SliceGrid render_unicritical(const UnicriticalOptions& options);

// Classification cell verdict from closed-form deltas at parameter r.
CellCode slice_cell_verdict(Complex r, Complex s, double d1, double d2, double d3, SliceCriterion criterion,
                            double tol_delta);

Image slice_image(const SliceGrid& grid);
// Formula colours with disagreeing oracle cells overlaid.
Image slice_diff_image(const SliceGrid& grid);
std::size_t count_disagreements(const SliceGrid& grid);

// re_r,im_r,delta1,delta2,delta3,p_value,verdict_formula,verdict_oracle,dw_re,dw_im,multiplier
void write_slice_csv(std::ostream& os, const SliceGrid& grid);
// re_w,im_w,verdict,dw_re,dw_im,multiplier
void write_unicritical_csv(std::ostream& os, const SliceGrid& grid);

}  // namespace cubicbp
