#include "core/complexio.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "core/error.hpp"

namespace merodiff {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  std::string s = buf;
  if (s == "-0") s = "0";
  return s;
}

std::string format_double17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s = buf;
  if (s == "-0") s = "0";
  return s;
}

namespace {

std::string format_with(Cplx z, std::string (*fmt)(double)) {
  const double re = z.real(), im = z.imag();
  if (im == 0.0) return fmt(re);
  std::string imag = fmt(std::abs(im)) + "i";
  if (re == 0.0) return (std::signbit(im) && im != 0.0 ? "-" : "") + imag;
  return fmt(re) + (im < 0.0 ? "-" : "+") + imag;
}

}  // namespace

std::string format_complex(Cplx z) { return format_with(z, &format_double17); }
std::string format_complex_short(Cplx z) { return format_with(z, &format_double); }

Cplx parse_complex(const std::string& text) {
  // One or two signed terms, each "<number>", "<number>i" or bare "i".
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_ws = [&] { while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  double re = 0.0, im = 0.0;
  bool any = false;

  skip_ws();
  while (i < n) {
    double sign = 1.0;
    while (i < n && (text[i] == '+' || text[i] == '-')) {
      if (text[i] == '-') sign = -sign;
      ++i;
      skip_ws();
    }
    if (i >= n) throw ParseError("dangling sign in complex literal '" + text + "'", i);
    double mag = 1.0;
    bool had_digits = false;
    if (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.') {
      const char* start = text.c_str() + i;
      char* end = nullptr;
      mag = std::strtod(start, &end);
      if (end == start) throw ParseError("malformed number in complex literal '" + text + "'", i);
      i += static_cast<std::size_t>(end - start);
      had_digits = true;
    }
    skip_ws();
    if (i < n && (text[i] == 'i' || text[i] == 'I')) {
      ++i;
      im += sign * mag;
    } else if (had_digits) {
      re += sign * mag;
    } else {
      throw ParseError("unexpected character in complex literal '" + text + "'", i);
    }
    any = true;
    skip_ws();
  }
  if (!any) throw ParseError("empty complex literal", 0);
  return {re, im};
}

}  // namespace merodiff
