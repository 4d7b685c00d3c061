#include "regprod/mellin.hpp"

#include <sstream>

#include "regprod/detail/math_using.hpp"
#include "regprod/error.hpp"
#include "regprod/numerics.hpp"
#include "regprod/plpoly.hpp"
#include "regprod/quadrature.hpp"

namespace regprod {
namespace {

template <class Real>
Real quad_tol(const Precision& p) {
  return Real(100) * eps_for<Real>(p);
}

template <class Real>
bool same_exponent(const Real& a, const Real& b) {
  return abs(a - b) <= Real(1e-12) * (Real(1) + abs(a));
}

// Left piece of the Mellin integral on (0, t0] together with t0.
template <class Real>
struct SeriesPiece {
  Real t0;
  Real log_t0;
  bool convergent;
};

template <class Real>
SeriesPiece<Real> series_piece(const ThetaModel<Real>& tm, const Precision& p) {
  if (tm.expansion.empty()) fail(ErrorKind::ExpansionTooShort, "theta model without expansion");
  for (std::size_t i = 1; i < tm.expansion.size(); ++i)
    if (!(tm.expansion[i].exponent > tm.expansion[i - 1].exponent))
      fail(ErrorKind::InvalidArgument, "theta expansion exponents must increase");
  SeriesPiece<Real> sp;
  sp.convergent = tm.radius > Real(0);
  sp.t0 = tm.split > Real(0) ? tm.split : Real(1);
  if (sp.convergent && sp.t0 > tm.radius / Real(2)) sp.t0 = tm.radius / Real(2);
  sp.log_t0 = log(sp.t0);
  if (sp.convergent) {
    // The dropped terms must be negligible on (0, t0].
    const auto& first = tm.expansion.front();
    std::size_t li = tm.expansion.size() - 1;
    while (li > 0 && tm.expansion[li].coeff == complex_t<Real>(0, 0)) --li;
    const auto& last = tm.expansion[li];
    Real lead = abs(first.coeff) * exp(first.exponent * sp.log_t0);
    Real rest = abs(last.coeff) * exp(last.exponent * sp.log_t0);
    Real scale = lead + Real(1);
    for (const auto& t : tm.expansion) scale += abs(t.coeff) * exp(t.exponent * sp.log_t0);
    if (li > 0 && rest > Real(10) * eps_for<Real>(p) * scale)
      fail(ErrorKind::ExpansionTooShort, "theta expansion has not converged at the split point");
  }
  return sp;
}

// int_{t0}^inf theta(t) t^{u-1} dt.
template <class Real>
complex_t<Real> right_integral(const ThetaModel<Real>& tm, const complex_t<Real>& u, const Real& t0,
                               const Precision& p) {
  using C = complex_t<Real>;
  const C um1 = u - C(1, 0);
  auto f = [&](const Real& t) -> C { return tm.theta(t) * exp(um1 * log(t)); };
  Real peak = (real(u) - Real(1)) / tm.decay;
  if (peak < t0) peak = t0;
  return integrate_to_infinity<Real>(f, t0, tm.decay, peak, quad_tol<Real>(p));
}

// int_0^{t0} theta(t) t^{u-1} dt with the term of exponent `skip` left out
// (skip < 0 for none). For a convergent expansion this is the termwise sum.
template <class Real>
complex_t<Real> left_integral(const ThetaModel<Real>& tm, const SeriesPiece<Real>& sp, const complex_t<Real>& u,
                              long skip) {
  using C = complex_t<Real>;
  if (sp.convergent) {
    C acc(0, 0);
    for (std::size_t i = 0; i < tm.expansion.size(); ++i) {
      if (static_cast<long>(i) == skip) continue;
      const auto& t = tm.expansion[i];
      C e = u + C(t.exponent, 0);
      acc += t.coeff * exp(e * sp.log_t0) / e;
    }
    return acc;
  }
  fail(ErrorKind::ExpansionTooShort, "asymptotic-only theta expansions are handled by the subtracted form");
}

// Subtracted form for expansions without a convergence radius, split at 1:
// int_0^1 (theta - sum c t^i) t^{u-1} + sum c/(u+i) (skipping `skip`).
template <class Real>
complex_t<Real> subtracted_left(const ThetaModel<Real>& tm, const complex_t<Real>& u, long skip, const Precision& p) {
  using C = complex_t<Real>;
  const auto& last = tm.expansion.back();
  if (!(last.exponent > -real(u))) fail(ErrorKind::ExpansionTooShort, "theta expansion does not reach past Re(s)");
  const C um1 = u - C(1, 0);
  auto f = [&](const Real& t) -> C {
    C th = tm.theta(t);
    for (const auto& term : tm.expansion) th -= term.coeff * exp(term.exponent * log(t));
    return th * exp(um1 * log(t));
  };
  // Substitution t = x^k removes the algebraic endpoint behaviour at 0.
  const Real k = Real(4);
  auto g = [&](const Real& x) -> C {
    Real t = pow(x, k);
    return f(t) * (k * pow(x, k - Real(1)));
  };
  C acc = integrate_adaptive<Real>(g, Real(0), Real(1), quad_tol<Real>(p));
  for (std::size_t i = 0; i < tm.expansion.size(); ++i) {
    if (static_cast<long>(i) == skip) continue;
    acc += tm.expansion[i].coeff / (u + C(tm.expansion[i].exponent, 0));
  }
  return acc;
}

template <class Real>
long find_exponent(const ThetaModel<Real>& tm, const Real& e) {
  for (std::size_t i = 0; i < tm.expansion.size(); ++i)
    if (same_exponent(tm.expansion[i].exponent, e)) return static_cast<long>(i);
  return -1;
}

// G(u) = int_0^inf theta t^{u-1} with the term `skip` removed from the series part.
template <class Real>
complex_t<Real> mellin_G(const ThetaModel<Real>& tm, const complex_t<Real>& u, long skip, const Precision& p) {
  auto sp = series_piece(tm, p);
  if (!sp.convergent) {
    return subtracted_left(tm, u, skip, p) + right_integral(tm, u, Real(1), p);
  }
  return left_integral(tm, sp, u, skip) + right_integral(tm, u, sp.t0, p);
}

template <class Real>
Real split_t0(const ThetaModel<Real>& tm, const Precision& p) {
  auto sp = series_piece(tm, p);
  return sp.convergent ? sp.t0 : Real(1);
}

}  // namespace

template <class Real>
complex_t<Real> zeta_via_mellin(const ThetaModel<Real>& tm, const complex_t<Real>& s, const Precision& p) {
  using C = complex_t<Real>;
  if (!tm.theta) fail(ErrorKind::InvalidArgument, "theta model without theta function");
  if (!is_finite_c(s)) fail(ErrorKind::InvalidArgument, "non-finite s");
  auto sp = series_piece(tm, p);
  if (!sp.convergent && !(tm.expansion.back().exponent > -real(s)))
    fail(ErrorKind::ExpansionTooShort, "theta expansion does not reach past Re(s)");
  // zeta(-k) = (-1)^k k! c_k: the pole of G at s = -k meets the zero of 1/Gamma.
  if (imag(s) == Real(0) && real(s) <= Real(0) && real(s) == floor(real(s))) {
    int k = static_cast<int>(-real(s));
    long idx = find_exponent(tm, Real(k));
    if (idx < 0) return C(0, 0);
    Real f = 1;
    for (int i = 2; i <= k; ++i) f *= Real(i);
    return tm.expansion[idx].coeff * ((k % 2) ? -f : f);
  }
  for (const auto& t : tm.expansion) {
    if (t.coeff == C(0, 0)) continue;
    if (abs(s + C(t.exponent, 0)) == Real(0))
      fail(ErrorKind::InvalidArgument, "zeta_via_mellin: s is a pole of the continuation");
  }
  C g = mellin_G(tm, s, -1, p);
  return g * exp(-log_gamma(s, p));
}

template <class Real>
ZetaData<Real> zeta_data_via_mellin(const ThetaModel<Real>& tm, int m, const Precision& p) {
  using C = complex_t<Real>;
  if (!tm.theta) fail(ErrorKind::InvalidArgument, "theta model without theta function");
  if (tm.expansion.empty()) fail(ErrorKind::ExpansionTooShort, "theta model without expansion");
  ZetaData<Real> zd;
  zd.mu = -tm.expansion.front().exponent;
  zd.m = m;
  if (m < 0) fail(ErrorKind::InvalidArgument, "zeta_data_via_mellin: m must be nonnegative");
  if (!(tm.expansion.back().exponent >= Real(0)))
    fail(ErrorKind::ExpansionTooShort, "theta expansion does not reach the constant term");
  const Real t0 = split_t0(tm, p);
  const Real lt0 = log(t0);
  const Real gamma = euler_gamma<Real>();
  auto sp = series_piece(tm, p);

  // Near s = 0: G(s) = c0/s + G_reg(0) + O(s), 1/Gamma(s) = s + gamma s^2 + ...
  long i0 = find_exponent(tm, Real(0));
  C c0 = i0 >= 0 ? tm.expansion[i0].coeff : C(0, 0);
  C greg;
  if (sp.convergent) {
    greg = left_integral(tm, sp, C(0, 0), i0) + c0 * lt0 + right_integral(tm, C(0, 0), t0, p);
  } else {
    greg = subtracted_left(tm, C(0, 0), i0, p) + right_integral(tm, C(0, 0), Real(1), p);
  }
  zd.zeta0 = c0;
  zd.zeta_prime0 = gamma * c0 + greg;

  for (int l = 1; l <= m; ++l) {
    long il = find_exponent(tm, Real(-l));
    C cl = il >= 0 ? tm.expansion[il].coeff : C(0, 0);
    Real fact = 1;
    for (int i = 2; i < l; ++i) fact *= Real(i);
    const C u(Real(l), 0);
    C r;
    if (sp.convergent) {
      r = left_integral(tm, sp, u, il) + cl * lt0 + right_integral(tm, u, t0, p);
    } else {
      r = subtracted_left(tm, u, il, p) + right_integral(tm, u, Real(1), p);
    }
    Real psi = -gamma + harmonic<Real>(l - 1);
    PoleData<Real> pd;
    pd.residue = cl / fact;
    pd.finite_part = (r - cl * psi) / fact;
    zd.poles[l] = pd;
  }
  return zd;
}

template <class Real>
complex_t<Real> zeta_multi_shift(const SequenceHandle<Real>& seq, const complex_t<Real>& s, const ShiftVector<Real>& z,
                                 const Real& head_radius_factor) {
  using C = complex_t<Real>;
  if (z.empty()) fail(ErrorKind::InvalidArgument, "empty shift vector");
  if (!seq.split || !seq.zeta)
    fail(ErrorKind::TruncationInsufficient, "no continuation available for " + seq.name);
  for (const auto& zj : z) check_off_sequence(seq, zj, ErrorKind::ShiftOnSequence);
  if (!is_finite_c(s)) fail(ErrorKind::InvalidArgument, "non-finite s");
  const auto& zd = seq.zeta_data;
  const int n = static_cast<int>(z.size());
  const int m = zd.m;
  if (!(Real(n) * real(s) > zd.mu - Real(m) - Real(1)))
    fail(ErrorKind::InvalidArgument, "s lies outside the half-plane of the continuation");

  if (s == C(0, 0)) {
    C acc = zd.zeta0;
    for (int l = 1; l <= m; ++l) acc += pell_closed_form<C>(l, z).p1 * zd.poles.at(l).residue / Real(n);
    return acc;
  }

  Real zmax = 0;
  for (const auto& zj : z) zmax = std::max<Real>(zmax, abs(zj));
  const Real eps = eps_for<Real>(seq.precision);
  Real r = head_radius_factor * zmax;
  auto sp = seq.split(r);
  if (zmax > Real(0) && !(sp.tail_min_modulus > zmax))
    fail(ErrorKind::TruncationInsufficient, "tail members do not dominate the shifts");

  int L = m;
  if (zmax > Real(0)) {
    Real q = zmax / sp.tail_min_modulus;
    double need = double(log(eps) / log(q));
    L = m + 1 + static_cast<int>(std::ceil(need)) + 4 * n + 10;
    if (L > 600) fail(ErrorKind::TruncationInsufficient, "tail expansion would need too many terms");
  }
  auto P = pell_series<C>(L, z, s);
  const C ns = Real(n) * s;

  C acc(0, 0);
  Real scale = 0;
  for (int l = 0; l <= m; ++l) {
    const C u = ns + C(Real(l), 0);
    C t;
    auto pole = zd.poles.find(l);
    if (l >= 1 && pole != zd.poles.end() && pole->second.residue != C(0, 0)) {
      // Rounding ns + l near the pole would cost digits; the pole part uses ns directly.
      const C& res = pole->second.residue;
      t = P[l] * (seq.zeta(u) - res / (u - C(Real(l), 0)) + res / ns);
    } else {
      t = P[l] * seq.zeta(u);
    }
    acc += t;
    scale += abs(t);
  }
  for (const auto& e : sp.head) {
    C x(0, 0);
    for (const auto& zj : z) x += log(C(1, 0) - zj / e.value);
    C term = exp(-s * (Real(n) * e.log + x));
    for (int l = 0; l <= m; ++l) term -= P[l] * exp(-(ns + C(Real(l), 0)) * e.log);
    acc += term;
    scale += abs(term);
  }
  int quiet = 0;
  for (int l = m + 1; l <= L && zmax > Real(0); ++l) {
    if (P[l] == C(0, 0)) continue;
    C t = P[l] * sp.tail_zeta(ns + C(Real(l), 0));
    acc += t;
    scale += abs(t);
    if (abs(t) <= eps * scale) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
  }
  if (!is_finite_c(acc)) fail(ErrorKind::Overflow, "zeta_multi_shift: overflow");
  return acc;
}

template <class Real>
DZetaRoutes<Real> dzeta_multi_shift_at0(const SequenceHandle<Real>& seq, const ShiftVector<Real>& z,
                                        bool check_routes) {
  using C = complex_t<Real>;
  if (z.empty()) fail(ErrorKind::InvalidArgument, "empty shift vector");
  for (const auto& zj : z) check_off_sequence(seq, zj, ErrorKind::ShiftOnSequence);
  const auto& zd = seq.zeta_data;
  const int n = static_cast<int>(z.size());
  const int m = zd.m;
  const Real eps = eps_for<Real>(seq.precision);
  Real zmax = 0;
  for (const auto& zj : z) zmax = std::max<Real>(zmax, abs(zj));

  // Weierstrass log-sum sum_j sum_k [log(1 - z_j/lambda_k) + sum_{l<=m} (z_j/lambda_k)^l / l].
  C wsum(0, 0);
  Real wsum_err = 0;
  auto safe_add = [&](const Element<Real>& e) {
    C acc(0, 0);
    for (const auto& zj : z) {
      acc += log(C(1, 0) - zj / e.value);
      C ratio = exp(-e.log);
      C pw = zj * ratio;
      C term = pw;
      for (int l = 1; l <= m; ++l) {
        acc += term / Real(l);
        term *= pw;
      }
    }
    return acc;
  };
  if (zmax > Real(0)) {
    if (seq.split) {
      auto sp = seq.split(Real(3) * zmax);
      for (const auto& e : sp.head) wsum += safe_add(e);
      // Tail members: -sum_j sum_{l>m} z_j^l / l * T(l).
      Real q = zmax / sp.tail_min_modulus;
      int L = m + 1 + static_cast<int>(std::ceil(double(log(eps) / log(q)))) + 10;
      int quiet = 0;
      for (int l = m + 1; l <= L; ++l) {
        C pz(0, 0);
        for (const auto& zj : z) pz += exp(Real(l) * log(zj));
        C t = -pz / Real(l) * sp.tail_zeta(C(Real(l), 0));
        wsum += t;
        if (abs(t) <= eps * (Real(1) + abs(wsum))) {
          if (++quiet >= 3) break;
        } else {
          quiet = 0;
        }
      }
      wsum_err = eps * (Real(1) + abs(wsum)) * Real(10);
    } else if (seq.elements) {
      auto els = seq.elements(seq.window);
      if (els.empty() || !(abs(els.back().value) > zmax))
        fail(ErrorKind::TruncationInsufficient, "truncation window does not pass the shifts");
      C last(0, 0);
      for (const auto& e : els) {
        last = safe_add(e);
        wsum += last;
      }
      // Members decay like k^{-(m+1)/mu}: sum_{k>K} ~ K |last| / ((m+1)/mu - 1).
      Real expo = (Real(m) + Real(1)) / zd.mu - Real(1);
      if (!(expo > Real(0))) expo = Real(1);
      wsum_err = Real(els.size()) * abs(last) / expo;
    } else {
      fail(ErrorKind::TruncationInsufficient, "sequence exposes neither a split nor its members");
    }
  }

  DZetaRoutes<Real> out;
  C neg = wsum - Real(n) * zd.zeta_prime0;
  for (int l = 1; l <= m; ++l) {
    auto jet = pell_closed_form<C>(l, z);
    const auto& pd = zd.poles.at(l);
    neg -= jet.p1 * pd.finite_part + jet.p2 * pd.residue / Real(n);
  }
  out.analytic = -neg;
  out.analytic_err = wsum_err + Real(n) * seq.accuracy + eps * (Real(1) + abs(neg));

  if (seq.split && seq.zeta) {
    const Real h = Real(1e-3);
    auto central = [&](const Real& step) {
      C fp = zeta_multi_shift(seq, C(step, 0), z);
      C fm = zeta_multi_shift(seq, C(-step, 0), z);
      return (fp - fm) / (Real(2) * step);
    };
    C d1 = central(h), d2 = central(h / Real(2)), d3 = central(h / Real(4));
    C r1 = (Real(4) * d2 - d1) / Real(3);
    C r2 = (Real(4) * d3 - d2) / Real(3);
    C rr = (Real(16) * r2 - r1) / Real(15);
    out.numeric_available = true;
    out.numeric = rr;
    // Rounding in f amplified by 1/(h/4) and the Richardson weights.
    out.numeric_err = abs(rr - r2) + Real(60) * eps / h * (Real(1) + abs(rr));
    if (check_routes) {
      Real budget = Real(10) * (out.analytic_err + out.numeric_err);
      if (abs(out.analytic - out.numeric) > budget) {
        std::ostringstream os;
        os << "analytic and numeric derivative routes differ by " << double(abs(out.analytic - out.numeric))
           << " (budget " << double(budget) << ")";
        fail(ErrorKind::RouteMismatch, os.str());
      }
    }
  }
  return out;
}

#define REGPROD_INSTANTIATE(R)                                                                             \
  template complex_t<R> zeta_via_mellin<R>(const ThetaModel<R>&, const complex_t<R>&, const Precision&);    \
  template ZetaData<R> zeta_data_via_mellin<R>(const ThetaModel<R>&, int, const Precision&);                \
  template complex_t<R> zeta_multi_shift<R>(const SequenceHandle<R>&, const complex_t<R>&, const ShiftVector<R>&, \
                                            const R&);                                                     \
  template DZetaRoutes<R> dzeta_multi_shift_at0<R>(const SequenceHandle<R>&, const ShiftVector<R>&, bool);

REGPROD_INSTANTIATE(double)
REGPROD_INSTANTIATE(mp50)

}  // namespace regprod
