#pragma once

#include "regprod/regcore.hpp"
#include "regprod/sequence.hpp"

namespace regprod {

// zeta(s) = (1/Gamma(s)) int_0^inf theta(t) t^{s-1} dt, continued by splitting
// at t0 = min(split, radius/2): the convergent expansion is integrated term by
// term on (0, t0], Gauss-Legendre panels cover [t0, inf).
template <class Real>
complex_t<Real> zeta_via_mellin(const ThetaModel<Real>& tm, const complex_t<Real>& s, const Precision& p = {});

template <class Real>
ZetaData<Real> zeta_data_via_mellin(const ThetaModel<Real>& tm, int m, const Precision& p = {});

// Continuation in s: head members summed explicitly, tail members through
// sum_{l>m} P_l(s;z) T(ns+l), plus sum_{l<=m} P_l(s;z) zeta(ns+l).
// head_radius_factor: every tail member has modulus above this multiple of max|z_j|.
template <class Real>
complex_t<Real> zeta_multi_shift(const SequenceHandle<Real>& seq, const complex_t<Real>& s, const ShiftVector<Real>& z,
                                 const Real& head_radius_factor = Real(3));

template <class Real>
struct DZetaRoutes {
  complex_t<Real> analytic;  // from zeta data and the Weierstrass log-sum
  Real analytic_err = 0;
  bool numeric_available = false;
  complex_t<Real> numeric;   // Richardson central differences of zeta_multi_shift
  Real numeric_err = 0;
};

// Returns d/ds zeta_Lambda(s;z) at s = 0; the regularized product is exp(-value).
template <class Real>
DZetaRoutes<Real> dzeta_multi_shift_at0(const SequenceHandle<Real>& seq, const ShiftVector<Real>& z,
                                        bool check_routes = true);

}  // namespace regprod
