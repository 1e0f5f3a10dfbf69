#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ptpu/complex_format.hpp"

using ptpu::Complex;

TEST_CASE("grammar") {
  CHECK(ptpu::parse_complex("1") == Complex(1.0));
  CHECK(ptpu::parse_complex("-2.5") == Complex(-2.5));
  CHECK(ptpu::parse_complex("1+2i") == Complex(1.0, 2.0));
  CHECK(ptpu::parse_complex("1-0.5i") == Complex(1.0, -0.5));
  CHECK(ptpu::parse_complex("-1.5e-3+2e4i") == Complex(-1.5e-3, 2e4));
  CHECK(ptpu::parse_complex("0+1i") == Complex(0.0, 1.0));

  CHECK_THROWS_AS(ptpu::parse_complex(""), std::invalid_argument);
  CHECK_THROWS_AS(ptpu::parse_complex("abc"), std::invalid_argument);
  CHECK_THROWS_AS(ptpu::parse_complex("1+i2"), std::invalid_argument);
  CHECK_THROWS_AS(ptpu::parse_complex("i"), std::invalid_argument);
  CHECK_THROWS_AS(ptpu::parse_complex("1,5"), std::invalid_argument);
}

TEST_CASE("formatting round-trips") {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> mag(-30.0, 30.0);
  for (int trial = 0; trial < 500; ++trial) {
    Complex z(std::exp2(mag(rng)) * (trial % 2 ? 1.0 : -1.0),
              (trial % 3 == 0) ? 0.0 : std::exp2(mag(rng)));
    Complex back = ptpu::parse_complex(ptpu::format_complex(z));
    CHECK(back.real() == z.real());
    CHECK(back.imag() == z.imag());
  }
  CHECK(ptpu::format_complex(Complex(1.0, 0.0)) == "1");
  CHECK(ptpu::format_complex(Complex(0.25, -0.5)) == "0.25-0.5i");
  CHECK(ptpu::format_complex(Complex(0.0, 1.0)) == "0+1i");
}
