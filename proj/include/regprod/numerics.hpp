#pragma once

// Special-function kernels. Every log is principal (argument in (-pi, pi]);
// log_gamma is the analytic continuation from the positive axis with its cut
// on (-inf, 0], which agrees with the principal log of Gamma for Re z > 0.

#include "regprod/precision.hpp"
#include "regprod/scalar.hpp"

namespace regprod {

template <class C>
C log_gamma(const C& z, const Precision& p = {});

template <class C>
C digamma(const C& z, const Precision& p = {});

// Hurwitz zeta sum_{k>=0} (k+x)^{-s} continued in s; x may be complex with
// Re x > 0. Euler-Maclaurin with N, J picked from the effective digits so that
// every Bernoulli correction shrinks by at least 4 (|N+x| >= (|s|+2J)/pi) and
// 4^{-J} <= 10^{-d}.
template <class C>
C hurwitz_zeta(const C& s, const C& x, const Precision& p = {});

template <class C>
C hurwitz_zeta_ds(const C& s, const C& x, const Precision& p = {});

// zeta(s, x) - 1/(s-1): entire in s, equals -psi(x) at s = 1.
template <class C>
C hurwitz_zeta_regular(const C& s, const C& x, const Precision& p = {});

template <class C>
C hurwitz_zeta(const C& s, const real_of_t<C>& x, const Precision& p = {}) {
  return hurwitz_zeta(s, C(x, 0), p);
}

template <class C>
C hurwitz_zeta_ds(const C& s, const real_of_t<C>& x, const Precision& p = {}) {
  return hurwitz_zeta_ds(s, C(x, 0), p);
}

template <class C>
C riemann_zeta(const C& s, const Precision& p = {});

template <class C>
C riemann_xi(const C& s, const Precision& p = {});

// Riemann-Siegel theta and Hardy Z on the critical line; xi(1/2+it) is
// -(t^2+1/4)/2 * pi^{-1/4} |Gamma(1/4+it/2)| * Z(t), a real number.
template <class Real>
Real riemann_siegel_theta(const Real& t, const Precision& p = {});

template <class Real>
Real hardy_z(const Real& t, const Precision& p = {});

template <class Real>
Real xi_critical(const Real& t, const Precision& p = {});

// J_nu(z) for real nu >= 1/2 and complex z off the negative axis. Power series
// in the wider scalar for small |z|, Hankel asymptotics beyond.
template <class C>
C bessel_j(const real_of_t<C>& nu, const C& z, const Precision& p = {});

template <class C>
C bessel_j_dz(const real_of_t<C>& nu, const C& z, const Precision& p = {});

// Gamma(nu+1) (z/2)^{-nu} J_nu(z), entire and even in z, equal to 1 at 0.
template <class C>
C bessel_j_normalized(const real_of_t<C>& nu, const C& z, const Precision& p = {});

template <class Real>
Real harmonic(int n);

// Reduce the imaginary part of a log-value to (-pi, pi].
template <class C>
C principal_log_value(const C& w);

// |a - b| after reducing the imaginary difference modulo 2 pi.
template <class C>
real_of_t<C> log_distance(const C& a, const C& b);

}  // namespace regprod
