#pragma once

#include <complex>
#include <string>
#include <string_view>

namespace ptpu {

using Complex = std::complex<double>;

/// Parses "a", "a+bi" or "a-bi" (no locale, '.' decimal separator).
/// Throws std::invalid_argument on anything else.
Complex parse_complex(std::string_view text);

/// Shortest text that round-trips through parse_complex (17 significant digits).
std::string format_complex(const Complex& z);

/// printf("%.17g") with deterministic output.
std::string format_double(double x);

}  // namespace ptpu
