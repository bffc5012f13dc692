// Complex number text forms used across the toolkit: "a+bi", "3/4i", "-2.5".
#pragma once

#include <complex>
#include <string>

namespace merodiff {

using Cplx = std::complex<double>;

// Round-trip-exact rendering (17 significant digits), e.g. "1+2i", "-3i", "0".
std::string format_complex(Cplx z);

// Display rendering with %.12g components; used for canonical JSON output.
std::string format_complex_short(Cplx z);

// Parses "a+bi" forms: "2", "-1.5i", "3+4i", "1e-3-2e5i", "i", "-i".
// Spaces around signs are tolerated. Throws ParseError on malformed input.
Cplx parse_complex(const std::string& text);

// %.12g for a double (canonical JSON float form).
std::string format_double(double x);
std::string format_double17(double x);

}  // namespace merodiff
