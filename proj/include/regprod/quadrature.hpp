#pragma once

#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "regprod/error.hpp"
#include "regprod/scalar.hpp"

namespace regprod {

// Gauss-Legendre nodes on [-1, 1]; 20 points for double, 40 for the
// multiprecision scalars.
template <class Real>
struct GaussRule {
  std::vector<Real> x, w;
};

template <class Real>
const GaussRule<Real>& gauss_rule() {
  constexpr unsigned N = std::is_same_v<Real, double> ? 20 : 40;
  static const GaussRule<Real> rule = [] {
    using G = boost::math::quadrature::gauss<Real, N>;
    GaussRule<Real> r;
    const auto& ax = G::abscissa();
    const auto& wt = G::weights();
    for (std::size_t i = 0; i < ax.size(); ++i) {
      if (ax[i] == Real(0)) {
        r.x.push_back(ax[i]);
        r.w.push_back(wt[i]);
      } else {
        r.x.push_back(ax[i]);
        r.w.push_back(wt[i]);
        r.x.push_back(-ax[i]);
        r.w.push_back(wt[i]);
      }
    }
    return r;
  }();
  return rule;
}

template <class Real, class F>
auto gl_fixed(const F& f, const Real& a, const Real& b) {
  const auto& r = gauss_rule<Real>();
  const Real half = (b - a) / Real(2), mid = (a + b) / Real(2);
  decltype(f(a)) acc = f(mid + half * r.x[0]) * r.w[0];
  for (std::size_t i = 1; i < r.x.size(); ++i) acc += f(mid + half * r.x[i]) * r.w[i];
  return acc * half;
}

namespace detail {

template <class Real, class F, class V>
V adaptive_rec(const F& f, const Real& a, const Real& b, const V& whole, const Real& tol_abs, int depth) {
  using std::abs;
  const Real m = (a + b) / Real(2);
  V left = gl_fixed(f, a, m);
  V right = gl_fixed(f, m, b);
  V both = left + right;
  if (abs(both - whole) <= tol_abs) return both;
  if (depth <= 0) fail(ErrorKind::QuadratureNonConvergence, "adaptive quadrature did not converge");
  return adaptive_rec(f, a, m, left, tol_abs / Real(2), depth - 1) +
         adaptive_rec(f, m, b, right, tol_abs / Real(2), depth - 1);
}

}  // namespace detail

// Panel bisection until a panel and its halves agree to tol_abs.
template <class Real, class F>
auto integrate_adaptive(const F& f, const Real& a, const Real& b, const Real& tol_abs, int max_depth = 40) {
  auto whole = gl_fixed(f, a, b);
  return detail::adaptive_rec(f, a, b, whole, tol_abs, max_depth);
}

// int_a^inf f for an integrand decaying like exp(-decay t) once t exceeds
// `peak`. Panels grow geometrically from a; integration stops after the peak
// when a panel contributes less than tol_rel of the running total.
template <class Real, class F>
auto integrate_to_infinity(const F& f, const Real& a, const Real& decay, const Real& peak, const Real& tol_rel) {
  using std::abs;
  if (!(decay > Real(0))) fail(ErrorKind::QuadratureNonConvergence, "integrand without exponential decay");
  Real len = Real(1) / decay;
  Real lo = a;
  Real width = len / Real(4);
  if (a > Real(0) && a < width) width = a;
  decltype(f(a)) total = gl_fixed(f, lo, lo + width) * Real(0);
  int quiet = 0;
  for (int panel = 0; panel < 400; ++panel) {
    Real hi = lo + width;
    auto coarse = gl_fixed(f, lo, hi);
    Real scale = abs(total) + abs(coarse);
    Real tol_abs = tol_rel * scale;
    if (tol_abs == Real(0)) tol_abs = std::numeric_limits<Real>::min();
    auto piece = detail::adaptive_rec(f, lo, hi, coarse, tol_abs, 40);
    total += piece;
    if (lo > peak && abs(piece) <= tol_rel * abs(total)) {
      if (++quiet >= 2) return total;
    } else {
      quiet = 0;
    }
    lo = hi;
    if (width < Real(4) * len) width *= Real(2);
  }
  fail(ErrorKind::QuadratureNonConvergence, "semi-infinite quadrature did not terminate");
}

}  // namespace regprod
