#include <cctype>
#include <charconv>
#include <cstdio>
#include <string>

#include "cubicbp/cli.hpp"

namespace cubicbp::cli {

namespace {

double parse_real(std::string_view s, std::string_view whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("cannot parse complex number '" + std::string(whole) + "'");
  }
  return v;
}

double parse_plain(std::string_view s, std::string_view whole) {
  if (s.empty() || s == "+" || s == "-") throw InvalidArgument("cannot parse complex number '" + std::string(whole) + "'");
  return parse_real(s, whole);
}

}  // namespace

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  const std::string_view v(s);
  if (v.empty()) throw InvalidArgument("empty complex number");

  if (v.front() == '(' && v.back() == ')') {
    const auto comma = v.find(',');
    if (comma == std::string_view::npos) throw InvalidArgument("expected (re,im), got '" + s + "'");
    return {parse_plain(v.substr(1, comma - 1), text), parse_plain(v.substr(comma + 1, v.size() - comma - 2), text)};
  }
  if (v.back() != 'i' && v.back() != 'j') return {parse_plain(v, text), 0.0};

  // Split before the last sign that is not an exponent sign.
  const std::string_view body = v.substr(0, v.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_real(body, text)};
  return {parse_plain(body.substr(0, split), text), parse_real(body.substr(split), text)};
}

std::string format_complex(Complex z) {
  char buf[96];
  // Adding +0.0 turns a negative zero into a plain one.
  std::snprintf(buf, sizeof buf, "%.17g %.17g", z.real() + 0.0, z.imag() + 0.0);
  return buf;
}

}  // namespace cubicbp::cli
