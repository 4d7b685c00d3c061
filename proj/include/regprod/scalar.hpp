#pragma once

#include <complex>
#include <limits>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/multiprecision/complex_adaptor.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace regprod {

namespace mp = boost::multiprecision;

using mp50 = mp::number<mp::mpfr_float_backend<50>, mp::et_off>;
using mpc50 = mp::number<mp::complex_adaptor<mp::mpfr_float_backend<50>>, mp::et_off>;
using mp100 = mp::number<mp::mpfr_float_backend<100>, mp::et_off>;
using mpc100 = mp::number<mp::complex_adaptor<mp::mpfr_float_backend<100>>, mp::et_off>;

// Real scalar -> complex type, a wider real used for guard digits, and the
// number of significant decimal digits the type carries.
template <class Real>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  using complex = std::complex<double>;
  using wide = mp50;
  static constexpr int digits = 16;
};

template <>
struct scalar_traits<mp50> {
  using complex = mpc50;
  using wide = mp100;
  static constexpr int digits = 50;
};

template <>
struct scalar_traits<mp100> {
  using complex = mpc100;
  using wide = mp100;
  static constexpr int digits = 100;
};

template <class Real>
using complex_t = typename scalar_traits<Real>::complex;

template <class C>
struct complex_traits;

template <>
struct complex_traits<std::complex<double>> {
  using real = double;
};

template <>
struct complex_traits<mpc50> {
  using real = mp50;
};

template <>
struct complex_traits<mpc100> {
  using real = mp100;
};

template <class C>
using real_of_t = typename complex_traits<C>::real;

template <class Real>
Real pi() {
  return boost::math::constants::pi<Real>();
}

template <class Real>
Real euler_gamma() {
  return boost::math::constants::euler<Real>();
}

template <class Real>
bool is_finite(const Real& x) {
  using boost::math::isfinite;
  using std::isfinite;
  return isfinite(x);
}

template <class C>
bool is_finite_c(const C& z) {
  return is_finite(z.real()) && is_finite(z.imag());
}

// Decimal string with the given number of significant digits.
std::string to_decimal(double x, int digits);
std::string to_decimal(const mp50& x, int digits);
std::string to_decimal(const mp100& x, int digits);

template <class Real>
Real parse_real(const std::string& s);

template <class Target, class Source>
Target convert_real(const Source& x) {
  if constexpr (std::is_same_v<Target, double>) {
    return static_cast<double>(x);
  } else {
    return Target(x);
  }
}

template <class TC, class SC>
TC convert_complex(const SC& z) {
  using TR = real_of_t<TC>;
  return TC(convert_real<TR>(z.real()), convert_real<TR>(z.imag()));
}

}  // namespace regprod
