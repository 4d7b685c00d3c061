#pragma once

// Unqualified math calls resolve to std:: for double and by ADL for the
// Boost.Multiprecision types. Include only from implementation files.
#include <cmath>
#include <complex>

#include "regprod/scalar.hpp"

namespace regprod {
using boost::math::isfinite;
using std::abs;
using std::arg;
using std::atan2;
using std::ceil;
using std::conj;
using std::cos;
using std::cosh;
using std::exp;
using std::floor;
using std::imag;
using std::isfinite;
using std::log;
using std::log10;
using std::norm;
using std::pow;
using std::real;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tan;
}  // namespace regprod
