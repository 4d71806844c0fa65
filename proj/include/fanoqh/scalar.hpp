#pragma once

// Complex scalar types used for evaluation. Double precision is the default;
// the quad type (113-bit mantissa, about 34 significant digits) backs the
// high-precision mode.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <vector>

namespace fanoqh {

using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;
using HighComplex = boost::multiprecision::cpp_complex_quad;
using HighReal = boost::multiprecision::cpp_bin_float_quad;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  using Real = double;
  static Complex from_rational(const Rational& r) { return Complex(static_cast<double>(r), 0.0); }
  static Complex from_complex(const Complex& z) { return z; }
  static Complex to_complex(const Complex& z) { return z; }
  static double abs(const Complex& z) { return std::abs(z); }
};

template <>
struct ScalarTraits<HighComplex> {
  using Real = HighReal;
  static HighComplex from_rational(const Rational& r) {
    return HighComplex(HighReal(numerator(r)) / HighReal(denominator(r)));
  }
  static HighComplex from_complex(const Complex& z) {
    return HighComplex(HighReal(z.real()), HighReal(z.imag()));
  }
  static Complex to_complex(const HighComplex& z) {
    return Complex(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  static double abs(const HighComplex& z) { return static_cast<double>(boost::multiprecision::abs(z)); }
};

// x^e for an integer exponent, by repeated squaring.
template <class T>
T int_pow(const T& x, std::int64_t e) {
  if (e < 0) return T(1) / int_pow(x, -e);
  T result(1);
  T base = x;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

}  // namespace fanoqh
