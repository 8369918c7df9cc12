#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

namespace akgeo {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// Exact conversion: every finite binary64 is a dyadic rational.
inline Rational rational_from_double(double d) {
  if (d == 0.0) return Rational(0);
  int exp = 0;
  double m = std::frexp(d, &exp);  // d = m * 2^exp, |m| in [0.5, 1)
  auto mantissa = static_cast<std::int64_t>(std::ldexp(m, 53));
  exp -= 53;
  Rational r(mantissa);
  if (exp >= 0) {
    r *= Rational(BigInt(1) << exp);
  } else {
    r /= Rational(BigInt(1) << -exp);
  }
  return r;
}

// Exact complex rational a + b*i.
struct ComplexRational {
  Rational re{0};
  Rational im{0};

  ComplexRational() = default;
  ComplexRational(Rational r) : re(std::move(r)) {}
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_one() const { return re == 1 && im == 0; }
  bool is_real() const { return im == 0; }

  ComplexRational conj() const { return {re, -im}; }

  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }

  ComplexRational inverse() const {
    Rational n = re * re + im * im;  // caller guarantees nonzero
    return {re / n, -im / n};
  }

  // Integer power; n < 0 requires a nonzero value.
  ComplexRational ipow(long n) const {
    ComplexRational base = n < 0 ? inverse() : *this;
    unsigned long k = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    ComplexRational acc{Rational(1)};
    while (k) {
      if (k & 1) acc = acc * base;
      base = base * base;
      k >>= 1;
    }
    return acc;
  }

  std::complex<double> approx() const { return {to_double(re), to_double(im)}; }
};

inline ComplexRational complex_rational_from(std::complex<double> z) {
  return {rational_from_double(z.real()), rational_from_double(z.imag())};
}

inline std::string rational_to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (!is_integer(r)) s += "/" + denominator(r).str();
  return s;
}

}  // namespace akgeo
