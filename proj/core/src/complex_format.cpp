#include "ptpu/complex_format.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace ptpu {

namespace {

double parse_real(std::string_view text) {
  std::string buf(text);
  char* end = nullptr;
  double value = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || buf.empty()) {
    throw std::invalid_argument("not a real number: '" + buf + "'");
  }
  return value;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty complex literal");
  if (text.back() != 'i') return Complex(parse_real(text), 0.0);

  std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last '+'/'-' that is not an exponent sign and not leading.
  for (std::size_t k = body.size(); k-- > 1;) {
    char c = body[k];
    if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      double re = parse_real(body.substr(0, k));
      std::string_view imag = body.substr(k);
      double im = (imag == "+")   ? 1.0
                  : (imag == "-") ? -1.0
                                  : parse_real(imag);
      return Complex(re, im);
    }
  }
  throw std::invalid_argument("complex literal must look like 'a+bi' or 'a-bi': '" +
                              std::string(text) + "'");
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_complex(const Complex& z) {
  if (z.imag() == 0.0) return format_double(z.real());
  std::string out = format_double(z.real());
  if (!(z.imag() < 0.0)) out += '+';
  out += format_double(z.imag());
  out += 'i';
  return out;
}

}  // namespace ptpu
