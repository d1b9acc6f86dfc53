#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cubicbp/cli.hpp"

using namespace cubicbp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Value of "key: value" in the text output, or "" when absent.
std::string field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
  return {};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::string as_arg(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(CUBICBP_TEST_TMPDIR) / "cli_scratch";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("complex parsing") {
  CHECK(cli::parse_complex("0.3") == Complex(0.3, 0.0));
  CHECK(cli::parse_complex("0.5i") == Complex(0.0, 0.5));
  CHECK(cli::parse_complex("-i") == Complex(0.0, -1.0));
  CHECK(cli::parse_complex("0.3-0.2i") == Complex(0.3, -0.2));
  CHECK(cli::parse_complex("1e-3+2e-3i") == Complex(1e-3, 2e-3));
  CHECK(cli::parse_complex("(0.3,-0.2)") == Complex(0.3, -0.2));
  CHECK_THROWS_AS(cli::parse_complex("abc"), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_complex("0.3+"), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_complex(""), InvalidArgument);
  CHECK(cli::format_complex(Complex(-0.0, 0.25)) == "0 0.25");
  CHECK(cli::parse_complex("0.1") == Complex(0.1));
}

TEST_CASE("classify examples") {
  const Outcome cusp = run({"classify", "--deg2", "--u=-0.333333333"});
  CHECK(cusp.code == cli::kExitOk);
  CHECK(field(cusp.out, "verdict") == "Parabolic");

  const Outcome h = run({"classify", "--deg3", "--r=0.7", "--s=0"});
  CHECK(h.code == cli::kExitOk);
  CHECK(field(h.out, "verdict") == "Hyperbolic");
  CHECK(field(h.out, "route") == "Both");
  CHECK(std::stod(field(h.out, "multiplier")) == doctest::Approx(9.0 / 17.0).epsilon(1e-9));
  CHECK(std::stod(field(h.out, "P")) == doctest::Approx(387.302).epsilon(1e-6));

  const Outcome line = run({"classify", "--deg3", "--r=0", "--s=0.5i"});
  CHECK(line.code == cli::kExitOk);
  CHECK(field(line.out, "verdict") == "Elliptic");
  CHECK(field(line.out, "formula") == "Indeterminate (degenerate)");
  CHECK(field(line.out, "discrepancy").find("P = ") != std::string::npos);

  const Outcome gap = run({"classify", "--deg3", "--r=0.1", "--s=0"});
  CHECK(field(gap.out, "verdict") == "Elliptic");
  CHECK(field(gap.out, "discrepancy").find("delta1") != std::string::npos);

  const Outcome zeros = run({"classify", "--zeros", "0", "0"});
  CHECK(zeros.code == cli::kExitOk);
  CHECK(field(zeros.out, "verdict") == "Elliptic");
}

TEST_CASE("classify JSON") {
  const Outcome o = run({"classify", "--deg3", "--r=0.7", "--s=0", "--json"});
  REQUIRE(o.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["verdict"] == "Hyperbolic");
  CHECK(j["deltas"].size() == 3);
  CHECK(j["multiplier"].get<double>() == doctest::Approx(9.0 / 17.0));
  CHECK(j["dw_point"][0].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"classify", "--deg2", "--u=abc"}).code == cli::kExitUsage);
  CHECK(run({"classify", "--deg2", "--u=1.5"}).code == cli::kExitUsage);
  CHECK(run({"classify", "--deg3", "--r=0.2"}).code == cli::kExitOk);  // s defaults to 0
  CHECK(run({"classify"}).code == cli::kExitUsage);
  CHECK(run({"classify", "--deg2", "--deg3", "--u=0.1"}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);
  CHECK(run({"slice", "--resolution", "8"}).code == cli::kExitUsage);
  CHECK(run({"unicritical", "-d", "9"}).code == cli::kExitUsage);
}

TEST_CASE("slice output files") {
  const fs::path img = scratch("s.ppm"), csv = scratch("s.csv");
  const std::vector<std::string> args{"slice", "--s=0.6", "--resolution=32", "--out-image", img.string(),
                                      "--out-csv", csv.string()};
  const Outcome first = run(args);
  REQUIRE(first.code == cli::kExitOk);
  const std::string img1 = slurp(img), csv1 = slurp(csv);
  CHECK(img1.rfind("P6\n32 32\n255\n", 0) == 0);
  CHECK(img1.size() == std::string("P6\n32 32\n255\n").size() + 32 * 32 * 3);
  CHECK(std::count(csv1.begin(), csv1.end(), '\n') == 32 * 32 + 1);
  CHECK(run(args).code == cli::kExitOk);
  CHECK(slurp(img) == img1);
  CHECK(slurp(csv) == csv1);

  const fs::path both = scratch("b.ppm");
  const Outcome b = run({"slice", "--s=0", "--resolution=16", "--mode=both", "--out-image", both.string()});
  CHECK(b.code == cli::kExitOk);
  CHECK(fs::exists(scratch("b.diff.ppm")));
  CHECK(!field(b.out, "disagreements").empty());

  CHECK(run({"slice", "--resolution=16", "--out-image", "/nonexistent-dir/x.ppm"}).code == cli::kExitUsage);
  CHECK(run({"slice", "--resolution=16", "--mode=sideways"}).code == cli::kExitUsage);
}

TEST_CASE("unicritical output files") {
  const fs::path img = scratch("u.ppm"), csv = scratch("u.csv");
  const Outcome o = run({"unicritical", "-d", "3", "--resolution=16", "--out-image", img.string(), "--out-csv", csv.string()});
  CHECK(o.code == cli::kExitOk);
  CHECK(slurp(img).rfind("P6\n16 16\n255\n", 0) == 0);
  CHECK(slurp(csv).rfind("re_w,im_w,verdict,dw_re,dw_im,multiplier\n", 0) == 0);
}

TEST_CASE("normalize") {
  const Outcome cube = run({"normalize", "--zeros", "0", "0", "0"});
  CHECK(cube.code == cli::kExitOk);
  CHECK(field(cube.out, "r") == "0 0");
  CHECK(field(cube.out, "s") == "0 0");

  const FiniteBlaschkeProduct b = from_cubic_parameters({DiskPoint(0.3), DiskPoint(Complex(0.0, 0.2))});
  std::vector<std::string> args{"normalize", "--zeros"};
  for (const DiskPoint& z : b.zeros()) args.push_back(as_arg(z.value()));
  const Outcome o = run(args);
  REQUIRE(o.code == cli::kExitOk);
  std::istringstream r(field(o.out, "r")), s(field(o.out, "s"));
  double rr, ri, sr, si;
  r >> rr >> ri;
  s >> sr >> si;
  CHECK(rr == doctest::Approx(0.3));
  CHECK(std::abs(ri) < 1e-9);
  CHECK(std::abs(sr) < 1e-9);
  CHECK(si == doctest::Approx(0.2));
  CHECK(std::stod(field(o.out, "residual")) < 1e-8);

  const Outcome sq = run({"normalize", "--zeros", "0.5", "-0.5"});
  CHECK(sq.code == cli::kExitOk);
  CHECK(!field(sq.out, "u").empty());

  // An unreachable residual requirement exits 2.
  const Outcome strict = run({"normalize", "--zeros", "0.1", "0.2i", "-0.3", "--max-residual", "0"});
  CHECK(strict.code == cli::kExitIndeterminate);
  CHECK(!field(strict.out, "status").empty());
  CHECK(run({"normalize", "--zeros", "0.1"}).code == cli::kExitUsage);
}

TEST_CASE("records as input") {
  const fs::path rec = scratch("b.txt");
  {
    std::ofstream f(rec);
    f << to_record(from_cubic_parameters({DiskPoint(0.7), DiskPoint()}));
  }
  const Outcome o = run({"classify", "--record", rec.string()});
  CHECK(o.code == cli::kExitOk);
  CHECK(field(o.out, "verdict") == "Hyperbolic");
  CHECK(run({"classify", "--record", scratch("missing.txt").string()}).code == cli::kExitUsage);
}

TEST_CASE("inflect") {
  const Outcome cube = run({"inflect", "--zeros", "0", "0", "0"});
  CHECK(cube.code == cli::kExitOk);
  CHECK(field(cube.out, "midpoint") == "0 0");
  CHECK(std::stod(field(cube.out, "h2_residual")) == 0.0);

  const Outcome scan = run({"inflect", "--zeros", "0.3+0.1i", "-0.5i", "0.6", "--scan", "--threads=1"});
  CHECK(scan.code == cli::kExitOk);
  CHECK(field(scan.out, "scan.zeros") == "1");
  CHECK(std::stod(field(scan.out, "h2_residual")) < 1e-8);

  CHECK(run({"inflect", "--zeros", "0.1", "0.2"}).code == cli::kExitUsage);
}
