#include <doctest.h>

#include <sstream>

#include "cubicbp/slice.hpp"

using namespace cubicbp;

namespace {

SliceGrid formula_slice(Complex s, int n, kernels::Isa isa = kernels::Isa::Scalar, unsigned threads = 0) {
  SliceOptions o;
  o.s = s;
  o.resolution = n;
  o.isa = isa;
  o.threads = threads;
  return render_slice(o);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

CellCode code_from_name(const std::string& s) {
  for (CellCode c : {CellCode::Elliptic, CellCode::Parabolic, CellCode::Hyperbolic, CellCode::Indeterminate, CellCode::Exterior})
    if (s == to_string(c)) return c;
  FAIL("unknown verdict " << s);
  return CellCode::Exterior;
}

bool point_symmetric(const SliceGrid& g) {
  const int n = g.resolution;
  for (int row = 0; row < n; ++row)
    for (int col = 0; col < n; ++col)
      if (g.at(col, row).shown() != g.at(n - 1 - col, n - 1 - row).shown()) return false;
  return true;
}

}  // namespace

TEST_CASE("pixel centres") {
  CHECK(pixel_center(0, 0, 4, 1.0) == Complex(-0.75, 0.75));
  CHECK(pixel_center(3, 3, 4, 1.0) == Complex(0.75, -0.75));
  for (int n : {16, 17, 512})
    for (int i = 0; i < n; ++i) CHECK(pixel_center(i, i, n, 0.7) == -pixel_center(n - 1 - i, n - 1 - i, n, 0.7));
}

TEST_CASE("colour map") {
  CHECK(cell_color(CellCode::Elliptic) == Rgb{30, 30, 30});
  CHECK(cell_color(CellCode::Parabolic) == Rgb{220, 60, 60});
  CHECK(cell_color(CellCode::Hyperbolic) == Rgb{230, 230, 230});
  CHECK(cell_color(CellCode::Exterior) == Rgb{0, 0, 0});
  CHECK(to_cell(Verdict::Hyperbolic) == CellCode::Hyperbolic);
}

TEST_CASE("slice cell verdicts") {
  // r = 0 leaves q with a root at the origin.
  CHECK(slice_cell_verdict(0.0, 0.0, -1.0, 1.0, 64.0, SliceCriterion::AllDelta, 1e-9) == CellCode::Indeterminate);
  CHECK(slice_cell_verdict(0.1, 0.0, -0.84, -0.5, 3.0, SliceCriterion::AllDelta, 1e-9) == CellCode::Elliptic);
  CHECK(slice_cell_verdict(0.1, 0.0, -0.84, -0.5, 3.0, SliceCriterion::PSign, 1e-9) == CellCode::Hyperbolic);
  CHECK(slice_cell_verdict(0.7, 0.0, 6.84, 40.0, 387.3, SliceCriterion::AllDelta, 1e-9) == CellCode::Hyperbolic);
}

TEST_CASE("formula slice at s = 0") {
  const SliceGrid g = formula_slice(0.0, 128);
  REQUIRE(g.cells.size() == 128u * 128u);
  std::size_t hyperbolic = 0, elliptic = 0;
  for (const SliceCell& c : g.cells) {
    const double m = std::abs(c.param);
    if (m >= 1.0) CHECK(c.formula == CellCode::Exterior);
    if (m < 0.25) CHECK(c.formula != CellCode::Hyperbolic);
    hyperbolic += c.formula == CellCode::Hyperbolic;
    elliptic += c.formula == CellCode::Elliptic;
    CHECK_FALSE(c.oracle);
  }
  CHECK(hyperbolic > 0);
  CHECK(elliptic > 0);
  CHECK(point_symmetric(g));
}

TEST_CASE("slices are point symmetric") {
  for (Complex s : {Complex(0.6), Complex(-0.8), Complex(0.2, 0.5)}) CHECK(point_symmetric(formula_slice(s, 96)));
}

TEST_CASE("wider region as s grows") {
  auto non_hyperbolic = [](const SliceGrid& g) {
    return std::count_if(g.cells.begin(), g.cells.end(), [](const SliceCell& c) {
      return c.formula == CellCode::Elliptic || c.formula == CellCode::Parabolic;
    });
  };
  CHECK(non_hyperbolic(formula_slice(0.6, 128)) > non_hyperbolic(formula_slice(0.0, 128)));
}

TEST_CASE("determinism across threads and kernels") {
  const SliceGrid a = formula_slice(Complex(-0.3, 0.4), 64, kernels::Isa::Scalar, 1);
  const SliceGrid b = formula_slice(Complex(-0.3, 0.4), 64, kernels::Isa::Scalar, 3);
  std::ostringstream ca, cb;
  write_slice_csv(ca, a);
  write_slice_csv(cb, b);
  CHECK(ca.str() == cb.str());
  CHECK(slice_image(a).encode_ppm() == slice_image(b).encode_ppm());
  if (kernels::avx2_available()) {
    std::ostringstream cc;
    write_slice_csv(cc, formula_slice(Complex(-0.3, 0.4), 64, kernels::Isa::Avx2, 2));
    CHECK(ca.str() == cc.str());
  }
}

TEST_CASE("CSV and image agree") {
  SliceOptions o;
  o.s = Complex(0.3);
  o.resolution = 32;
  o.mode = SliceMode::Both;
  o.oracle_stride = 2;
  const SliceGrid g = render_slice(o);
  std::ostringstream csv;
  write_slice_csv(csv, g);
  const Image img = slice_image(g);
  const Image diff = slice_diff_image(g);

  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "re_r,im_r,delta1,delta2,delta3,p_value,verdict_formula,verdict_oracle,dw_re,dw_im,multiplier");
  std::size_t idx = 0, disagreements = 0, oracle_rows = 0;
  while (std::getline(in, line)) {
    const auto f = split(line);
    REQUIRE(f.size() == 11);
    const int row = static_cast<int>(idx) / o.resolution, col = static_cast<int>(idx) % o.resolution;
    const CellCode formula = code_from_name(f[6]);
    const bool has_oracle = !f[7].empty();
    // Exterior cells carry an Exterior oracle code in every non-formula mode.
    CHECK(has_oracle == (formula == CellCode::Exterior || (row % 2 == 0 && col % 2 == 0)));
    const CellCode shown = has_oracle ? code_from_name(f[7]) : formula;
    CHECK(img.at(col, row) == cell_color(shown));
    const bool differs = has_oracle && shown != formula;
    CHECK(diff.at(col, row) == (differs ? kDisagreementColor : cell_color(formula)));
    disagreements += differs;
    oracle_rows += has_oracle && formula != CellCode::Exterior;
    if (formula == CellCode::Exterior) CHECK(f[2].empty());
    ++idx;
  }
  CHECK(idx == 32u * 32u);
  CHECK(oracle_rows > 100u);
  CHECK(oracle_rows < 16u * 16u);
  CHECK(disagreements == count_disagreements(g));
}

TEST_CASE("oracle slice agrees with the formula away from the boundary") {
  SliceOptions o;
  o.s = Complex(0.0);
  o.resolution = 24;
  o.mode = SliceMode::Both;
  o.oracle_full = true;
  const SliceGrid g = render_slice(o);
  for (const SliceCell& c : g.cells) {
    REQUIRE(c.oracle);
    if (c.formula == CellCode::Hyperbolic || c.formula == CellCode::Elliptic) {
      if (std::abs(c.delta1) > 1e-3 && std::abs(c.delta2) > 1e-3 && std::abs(c.delta3) > 1e-3)
        CHECK(*c.oracle == c.formula);
    }
  }
}

TEST_CASE("unicritical family") {
  UnicriticalOptions o;
  o.degree = 3;
  o.resolution = 64;
  const SliceGrid g = render_unicritical(o);
  CHECK(point_symmetric(g));
  std::ostringstream csv;
  write_unicritical_csv(csv, g);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "re_w,im_w,verdict,dw_re,dw_im,multiplier");

  // Degree 2: the origin is elliptic and points just left of the cusp at
  // -1/3 are hyperbolic.
  o.degree = 2;
  o.resolution = 16;
  const SliceGrid q = render_unicritical(o);
  bool saw_elliptic = false;
  for (const SliceCell& c : q.cells)
    if (std::abs(c.param) < 0.2) saw_elliptic |= c.shown() == CellCode::Elliptic;
  CHECK(saw_elliptic);

  o.degree = 7;
  CHECK_THROWS_AS(render_unicritical(o), InvalidArgument);
}

TEST_CASE("argument validation") {
  SliceOptions o;
  o.resolution = 8;
  CHECK_THROWS_AS(render_slice(o), InvalidArgument);
  o.resolution = 16;
  o.extent = -1.0;
  CHECK_THROWS_AS(render_slice(o), InvalidArgument);
}
