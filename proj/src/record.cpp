#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "cubicbp/blaschke.hpp"

namespace cubicbp {

namespace {

std::string format_pair(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g %.17g", z.real(), z.imag());
  return buf;
}

// Next non-blank, non-comment line; false at end of input.
bool next_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

Complex parse_pair(const std::string& line) {
  std::istringstream ss(line);
  double re = 0.0, im = 0.0;
  std::string extra;
  if (!(ss >> re >> im) || (ss >> extra)) throw InvalidArgument("malformed record line: '" + line + "'");
  return {re, im};
}

}  // namespace

void write_record(std::ostream& os, const FiniteBlaschkeProduct& b) {
  os << b.degree() << '\n';
  for (const DiskPoint& w : b.zeros()) os << format_pair(w.value()) << '\n';
  os << format_pair(b.mu().value()) << '\n';
}

FiniteBlaschkeProduct read_record(std::istream& is) {
  std::string line;
  if (!next_line(is, line)) throw InvalidArgument("empty record");
  std::istringstream head(line);
  long degree = 0;
  std::string extra;
  if (!(head >> degree) || (head >> extra) || degree < 1) {
    throw InvalidArgument("record must start with a positive degree, got '" + line + "'");
  }
  std::vector<DiskPoint> zeros;
  for (long k = 0; k < degree; ++k) {
    if (!next_line(is, line)) throw InvalidArgument("record ended before all zeros were read");
    const Complex z = parse_pair(line);
    if (!DiskPoint::admissible(z)) throw InvalidArgument("record zero outside the open disk: " + line);
    zeros.emplace_back(z);
  }
  if (!next_line(is, line)) throw InvalidArgument("record is missing the unimodular factor");
  const Complex mu = parse_pair(line);
  return FiniteBlaschkeProduct(std::move(zeros), UnitModulus(mu));
}

std::string to_record(const FiniteBlaschkeProduct& b) {
  std::ostringstream os;
  write_record(os, b);
  return os.str();
}

FiniteBlaschkeProduct parse_record(const std::string& text) {
  std::istringstream is(text);
  return read_record(is);
}

}  // namespace cubicbp
