#pragma once

#include <vector>

#include "regprod/scalar.hpp"

namespace regprod {

template <class Real>
struct Root {
  complex_t<Real> value;
  int multiplicity = 1;
};

template <class Real>
struct RootOptions {
  Real residual = Real(1e-12);        // |p(w)| relative to sum |a_i||w|^i
  Real cluster_radius = Real(1e-8);   // relative to max(1, |w|)
  int max_iterations = 2000;
};

// Roots of a monic polynomial given highest degree first, by Aberth-Ehrlich
// simultaneous iteration; near-coincident approximations are merged into one
// root with multiplicity.
template <class Real>
std::vector<Root<Real>> monic_roots(const std::vector<complex_t<Real>>& coeffs, const RootOptions<Real>& opt = {});

}  // namespace regprod
