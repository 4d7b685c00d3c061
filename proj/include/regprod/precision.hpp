#pragma once

#include <algorithm>
#include <cmath>

#include "regprod/error.hpp"
#include "regprod/scalar.hpp"

namespace regprod {

struct Precision {
  int working_digits = 50;
  double target_tol = 1e-12;

  void validate() const {
    if (working_digits <= 0) fail(ErrorKind::InvalidArgument, "working_digits must be positive");
    if (!(target_tol > 0)) fail(ErrorKind::InvalidArgument, "target_tol must be positive");
    if (working_digits < 2.0 * -std::log10(target_tol) - 1e-9)
      fail(ErrorKind::InvalidArgument, "working_digits must be at least 2*(-log10 target_tol)");
  }
};

// Digits actually carried when computing with Real.
template <class Real>
int effective_digits(const Precision& p) {
  return std::min(p.working_digits, scalar_traits<Real>::digits);
}

template <class Real>
Real eps_for(const Precision& p) {
  using std::pow;
  return pow(Real(10), -Real(effective_digits<Real>(p)));
}

}  // namespace regprod
