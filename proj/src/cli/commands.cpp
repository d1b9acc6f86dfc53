#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubicbp/cli.hpp"
#include "cubicbp/dynamics.hpp"
#include "cubicbp/hypcalc.hpp"
#include "cubicbp/slice.hpp"

namespace cubicbp::cli {

namespace {

struct Common {
  double tol_parabolic = 1e-6;
  double tol_delta = 1e-9;
  std::uint64_t seed = 0;

  ClassifyOptions options() const {
    ClassifyOptions o;
    o.tol_multiplier = tol_parabolic;
    o.tol_delta = tol_delta;
    o.roots.seed = seed;
    return o;
  }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--tol-parabolic", c.tol_parabolic, "Oracle band on |B'(w0) - 1|")->capture_default_str();
  sub->add_option("--tol-delta", c.tol_delta, "Formula band on delta_k, relative to its scale")->capture_default_str();
  sub->add_option("--seed", c.seed, "Rotates the root finder's starting points")->capture_default_str();
}

struct ProductInput {
  std::vector<std::string> zeros;
  std::string mu = "1";
  std::string record;

  bool given() const { return !zeros.empty() || !record.empty(); }

  FiniteBlaschkeProduct load() const {
    if (!record.empty()) {
      if (!zeros.empty()) throw InvalidArgument("give either --record or --zeros, not both");
      if (record == "-") return read_record(std::cin);
      std::ifstream f(record);
      if (!f) throw IoError("cannot open record '" + record + "'");
      return read_record(f);
    }
    if (zeros.empty()) throw InvalidArgument("a Blaschke product needs --zeros or --record");
    std::vector<DiskPoint> zs;
    for (const std::string& z : zeros) zs.emplace_back(parse_complex(z));
    return FiniteBlaschkeProduct(std::move(zs), UnitModulus(parse_complex(mu)));
  }
};

void add_product_input(CLI::App* sub, ProductInput& in) {
  sub->add_option("--zeros", in.zeros, "Zeros of B, e.g. 0.1+0.2i -0.3 0.5i");
  sub->add_option("--mu", in.mu, "Unimodular factor")->capture_default_str();
  sub->add_option("--record", in.record, "Plain-text record file ('-' for stdin)");
}

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);
  return buf;
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind('.');
  const auto slash = path.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
  return path.substr(0, dot) + suffix;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoError("failed writing '" + path + "'");
}

// ---------------------------------------------------------------------------

struct ClassifyArgs {
  Common common;
  ProductInput product;
  bool deg2 = false, deg3 = false, json = false;
  std::string u, r, s = "0";
};

void print_result(std::ostream& out, const ClassificationResult& res, bool json) {
  if (json) {
    nlohmann::json j;
    j["verdict"] = to_string(res.verdict);
    j["route"] = to_string(res.route);
    j["formula_verdict"] = to_string(res.formula_verdict);
    j["oracle_verdict"] = to_string(res.oracle_verdict);
    j["deltas"] = res.deltas;
    j["p_value"] = res.p_value ? nlohmann::json(*res.p_value) : nlohmann::json(nullptr);
    j["dw_point"] = {res.dw_point.real(), res.dw_point.imag()};
    j["multiplier"] = res.multiplier;
    j["discrepancy"] = res.discrepancy ? nlohmann::json(*res.discrepancy) : nlohmann::json(nullptr);
    j["degenerate"] = res.degenerate;
    j["experimental"] = res.experimental;
    j["diagnostics"] = res.diagnostics;
    out << j.dump(2) << '\n';
    return;
  }
  out << "verdict: " << to_string(res.verdict) << '\n';
  out << "route: " << to_string(res.route) << '\n';
  out << "formula: " << to_string(res.formula_verdict) << (res.degenerate ? " (degenerate)" : "") << '\n';
  out << "oracle: " << to_string(res.oracle_verdict) << '\n';
  out << "deltas:";
  for (double d : res.deltas) out << ' ' << g17(d);
  out << '\n';
  if (res.p_value) out << "P: " << g17(*res.p_value) << '\n';
  out << "dw_point: " << format_complex(res.dw_point) << '\n';
  out << "multiplier: " << g17(res.multiplier) << '\n';
  out << "discrepancy: " << (res.discrepancy ? *res.discrepancy : "none") << '\n';
  if (res.experimental) out << "note: degree > 3 is experimental\n";
  if (!res.diagnostics.empty()) out << "diagnostics: " << res.diagnostics << '\n';
}

int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
  const ClassifyOptions opt = a.common.options();
  ClassificationResult res;
  if (a.deg2 && a.deg3) throw InvalidArgument("--deg2 and --deg3 are exclusive");
  if (a.deg2) {
    if (a.u.empty()) throw InvalidArgument("--deg2 needs --u");
    res = classify(QuadraticParameter{DiskPoint(parse_complex(a.u))}, opt);
  } else if (a.deg3) {
    if (a.r.empty()) throw InvalidArgument("--deg3 needs --r (and optionally --s)");
    res = classify(CubicParameters{DiskPoint(parse_complex(a.r)), DiskPoint(parse_complex(a.s))}, opt);
  } else {
    res = classify(a.product.load(), opt);
  }
  print_result(out, res, a.json);
  return res.verdict == Verdict::Indeterminate ? kExitIndeterminate : kExitOk;
}

// ---------------------------------------------------------------------------

struct RasterArgs {
  Common common;
  std::string s = "0";
  int resolution = 512;
  double extent = 1.0;
  std::string mode = "formula";
  std::string criterion = "all-delta";
  bool oracle_full = false;
  int oracle_stride = 4;
  std::string isa = "auto";
  unsigned threads = 0;
  int degree = 3;
  std::string out_image, out_csv, out_diff;
};

void print_counts(std::ostream& out, const SliceGrid& grid) {
  std::size_t counts[5] = {};
  for (const SliceCell& c : grid.cells) ++counts[static_cast<int>(c.shown())];
  for (CellCode c : {CellCode::Elliptic, CellCode::Parabolic, CellCode::Hyperbolic, CellCode::Indeterminate,
                     CellCode::Exterior})
    out << "cells." << to_string(c) << ": " << counts[static_cast<int>(c)] << '\n';
}

int cmd_slice(const RasterArgs& a, std::ostream& out) {
  SliceOptions opt;
  opt.s = parse_complex(a.s);
  opt.resolution = a.resolution;
  opt.extent = a.extent;
  opt.mode = a.mode == "oracle" ? SliceMode::Oracle : a.mode == "both" ? SliceMode::Both : SliceMode::Formula;
  opt.criterion = a.criterion == "p-sign" ? SliceCriterion::PSign : SliceCriterion::AllDelta;
  opt.oracle_full = a.oracle_full;
  opt.oracle_stride = a.oracle_stride;
  opt.isa = kernels::resolve_isa(a.isa);
  opt.classify = a.common.options();
  opt.threads = a.threads;
  const SliceGrid grid = render_slice(opt);

  if (!a.out_image.empty()) slice_image(grid).write_ppm(a.out_image);
  if (!a.out_csv.empty()) {
    std::ostringstream csv;
    write_slice_csv(csv, grid);
    write_text(a.out_csv, csv.str());
  }
  std::string diff_path = a.out_diff;
  if (opt.mode == SliceMode::Both && diff_path.empty() && !a.out_image.empty())
    diff_path = with_suffix(a.out_image, ".diff.ppm");
  if (opt.mode == SliceMode::Both && !diff_path.empty()) slice_diff_image(grid).write_ppm(diff_path);

  out << "s: " << format_complex(opt.s) << '\n';
  out << "resolution: " << grid.resolution << '\n';
  out << "extent: " << g17(grid.extent) << '\n';
  out << "mode: " << a.mode << '\n';
  out << "criterion: " << a.criterion << '\n';
  out << "isa: " << kernels::to_string(opt.isa) << '\n';
  print_counts(out, grid);
  if (opt.mode != SliceMode::Formula) out << "disagreements: " << count_disagreements(grid) << '\n';
  if (!diff_path.empty() && opt.mode == SliceMode::Both) out << "diff_image: " << diff_path << '\n';
  return kExitOk;
}

int cmd_unicritical(const RasterArgs& a, std::ostream& out) {
  UnicriticalOptions opt;
  opt.degree = a.degree;
  opt.resolution = a.resolution;
  opt.extent = a.extent;
  opt.classify = a.common.options();
  opt.threads = a.threads;
  const SliceGrid grid = render_unicritical(opt);
  if (!a.out_image.empty()) slice_image(grid).write_ppm(a.out_image);
  if (!a.out_csv.empty()) {
    std::ostringstream csv;
    write_unicritical_csv(csv, grid);
    write_text(a.out_csv, csv.str());
  }
  out << "degree: " << opt.degree << '\n';
  out << "resolution: " << grid.resolution << '\n';
  print_counts(out, grid);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct NormalizeArgs {
  Common common;
  ProductInput product;
  double max_residual = 1e-8;
};

void print_conjugator(std::ostream& out, const DiskAutomorphism& a) {
  out << "conjugator.rotation: " << format_complex(a.rotation().value()) << '\n';
  out << "conjugator.center: " << format_complex(a.center().value()) << '\n';
}

int cmd_normalize(const NormalizeArgs& a, std::ostream& out) {
  const FiniteBlaschkeProduct b = a.product.load();
  const RootOptions roots{500, a.common.seed, 1e-7};
  const double unlimited = std::numeric_limits<double>::infinity();
  double residual = 0.0;
  out << "degree: " << b.degree() << '\n';
  if (b.degree() == 2) {
    const QuadraticNormalForm nf = normal_form_quadratic(b, unlimited, roots);
    out << "u: " << format_complex(nf.param.u.value()) << '\n';
    print_conjugator(out, nf.conjugator);
    residual = nf.residual;
  } else if (b.degree() == 3) {
    const CubicNormalForm nf = normal_form_cubic(b, unlimited, roots);
    out << "r: " << format_complex(nf.params.r.value()) << '\n';
    out << "s: " << format_complex(nf.params.s.value()) << '\n';
    out << "epsilon: " << g17(nf.epsilon) << '\n';
    print_conjugator(out, nf.conjugator);
    residual = nf.residual;
  } else {
    throw InvalidArgument("normalize supports degree 2 and 3 only");
  }
  out << "residual: " << g17(residual) << '\n';
  if (!(residual < a.max_residual)) {
    out << "status: residual above " << g17(a.max_residual) << '\n';
    return kExitIndeterminate;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct InflectArgs {
  Common common;
  ProductInput product;
  bool scan = false;
  double grid_step = 0.02;
  int order = 2;
  unsigned threads = 0;
  double max_residual = 1e-8;
};

int cmd_inflect(const InflectArgs& a, std::ostream& out) {
  const FiniteBlaschkeProduct b = a.product.load();
  const RootOptions roots{500, a.common.seed, 1e-7};
  int code = kExitOk;
  out << "degree: " << b.degree() << '\n';
  if (b.degree() == 3) {
    const InflectionPoint ip = inflection_point_cubic(b, roots);
    out << "c1: " << format_complex(ip.critical_points[0].value()) << '\n';
    out << "c2: " << format_complex(ip.critical_points[1].value()) << '\n';
    out << "midpoint: " << format_complex(ip.point.value()) << '\n';
    out << "h2_residual: " << g17(ip.residual) << '\n';
    if (!(ip.residual < a.max_residual)) code = kExitIndeterminate;
  } else if (!a.scan) {
    throw InvalidArgument("inflect needs a degree-3 product (use --scan for degrees 2 to 5)");
  }
  if (a.scan) {
    if (b.degree() < 2 || b.degree() > 5) throw InvalidArgument("--scan supports degrees 2 to 5");
    ScanOptions so;
    so.grid_step = a.grid_step;
    so.order = a.order;
    so.threads = a.threads;
    const std::vector<ScanHit> hits = inflection_scan(b, so);
    if (b.degree() > 3) out << "note: degree > 3 scan is experimental\n";
    out << "scan.order: " << a.order << '\n';
    out << "scan.zeros: " << hits.size() << '\n';
    for (const ScanHit& h : hits) out << "zero: " << format_complex(h.point.value()) << ' ' << g17(h.value) << '\n';
  }
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cubic Blaschke products: classification, normal forms, inflection points, parameter slices",
               "cubicbp"};
  app.require_subcommand(1);

  ClassifyArgs ca;
  auto* classify_cmd = app.add_subcommand("classify", "Elliptic / parabolic / hyperbolic verdict");
  classify_cmd->add_flag("--deg2", ca.deg2, "Quadratic normal form with parameter --u");
  classify_cmd->add_flag("--deg3", ca.deg3, "Cubic normal form with parameters --r, --s");
  classify_cmd->add_option("--u", ca.u, "Quadratic parameter");
  classify_cmd->add_option("--r", ca.r, "Cubic parameter r");
  classify_cmd->add_option("--s", ca.s, "Cubic parameter s")->capture_default_str();
  classify_cmd->add_flag("--json", ca.json, "Print the result as JSON");
  add_product_input(classify_cmd, ca.product);
  add_common(classify_cmd, ca.common);

  RasterArgs sa;
  auto* slice_cmd = app.add_subcommand("slice", "Rasterize an r-plane slice at fixed s");
  slice_cmd->add_option("--s", sa.s, "Slice parameter s")->capture_default_str();
  slice_cmd->add_option("--resolution", sa.resolution, "Pixels per axis")->check(CLI::Range(16, 8192))->capture_default_str();
  slice_cmd->add_option("--extent", sa.extent, "Half-width of the r window")->capture_default_str();
  slice_cmd->add_option("--mode", sa.mode, "formula, oracle or both")
      ->check(CLI::IsMember({"formula", "oracle", "both"}))
      ->capture_default_str();
  slice_cmd->add_option("--criterion", sa.criterion, "all-delta or p-sign (formula route)")
      ->check(CLI::IsMember({"all-delta", "p-sign"}))
      ->capture_default_str();
  slice_cmd->add_flag("--oracle-full", sa.oracle_full, "Run the oracle on every pixel");
  slice_cmd->add_option("--oracle-stride", sa.oracle_stride, "Oracle subsampling stride")->check(CLI::PositiveNumber)->capture_default_str();
  slice_cmd->add_option("--isa", sa.isa, "auto, scalar or avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}))
      ->capture_default_str();
  slice_cmd->add_option("--threads", sa.threads, "Worker threads (0: all cores)")->capture_default_str();
  slice_cmd->add_option("--out-image", sa.out_image, "PPM output");
  slice_cmd->add_option("--out-csv", sa.out_csv, "CSV output");
  slice_cmd->add_option("--out-diff", sa.out_diff, "Formula/oracle disagreement PPM (mode both)");
  add_common(slice_cmd, sa.common);

  RasterArgs ua;
  auto* uni_cmd = app.add_subcommand("unicritical", "Rasterize the unicritical family over w");
  uni_cmd->add_option("--degree,-d", ua.degree, "Degree d")->check(CLI::Range(2, 6))->capture_default_str();
  uni_cmd->add_option("--resolution", ua.resolution, "Pixels per axis")->check(CLI::Range(16, 4096))->capture_default_str();
  uni_cmd->add_option("--extent", ua.extent, "Half-width of the w window")->capture_default_str();
  uni_cmd->add_option("--threads", ua.threads, "Worker threads (0: all cores)")->capture_default_str();
  uni_cmd->add_option("--out-image", ua.out_image, "PPM output");
  uni_cmd->add_option("--out-csv", ua.out_csv, "CSV output");
  add_common(uni_cmd, ua.common);

  NormalizeArgs na;
  auto* norm_cmd = app.add_subcommand("normalize", "Reduce a degree 2 or 3 product to normal form");
  add_product_input(norm_cmd, na.product);
  norm_cmd->add_option("--max-residual", na.max_residual, "Residual required for success")->capture_default_str();
  add_common(norm_cmd, na.common);

  InflectArgs ia;
  auto* infl_cmd = app.add_subcommand("inflect", "Critical points, their hyperbolic midpoint and |H^2| there");
  add_product_input(infl_cmd, ia.product);
  infl_cmd->add_flag("--scan", ia.scan, "Scan the disk for zeros of H^order");
  infl_cmd->add_option("--grid-step", ia.grid_step, "Scan grid step, at most 0.05")->capture_default_str();
  infl_cmd->add_option("--order", ia.order, "1 scans H^1, 2 scans H^2")->check(CLI::Range(1, 2))->capture_default_str();
  infl_cmd->add_option("--threads", ia.threads, "Worker threads (0: all cores)")->capture_default_str();
  infl_cmd->add_option("--max-residual", ia.max_residual, "Residual required for success")->capture_default_str();
  add_common(infl_cmd, ia.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*classify_cmd) return cmd_classify(ca, out);
    if (*slice_cmd) return cmd_slice(sa, out);
    if (*uni_cmd) return cmd_unicritical(ua, out);
    if (*norm_cmd) return cmd_normalize(na, out);
    if (*infl_cmd) return cmd_inflect(ia, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NormalFormError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIndeterminate;
  } catch (const RootFindError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIndeterminate;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"cubicbp"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace cubicbp::cli
