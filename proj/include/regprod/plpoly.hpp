#pragma once

// P_l(s;z) = sum over compositions a_1+...+a_n = l of prod_j C(-s, a_j)(-z_j)^{a_j},
// the coefficient of w^l in prod_j (1 - z_j w)^{-s}. Templated on the field F
// (std::complex<double>, mpc50, GaussianRational).

#include <utility>
#include <vector>

#include "regprod/error.hpp"

namespace regprod {

template <class F>
struct PellJet {
  int ell = 0;
  F p0{}, p1{}, p2{};
};

namespace detail {

template <class F>
F ratio(long a, long b) {
  return F(a) / F(b);
}

// Degree-2 jets in s.
template <class F>
struct Jet2 {
  F a0, a1, a2;
};

template <class F>
Jet2<F> jet_mul(const Jet2<F>& x, const Jet2<F>& y) {
  return {x.a0 * y.a0, x.a0 * y.a1 + x.a1 * y.a0, x.a0 * y.a2 + x.a1 * y.a1 + x.a2 * y.a0};
}

// Jet of C(-s, a) as the product of the linear factors (-s - i)/(i + 1).
template <class F>
Jet2<F> binom_jet(int a) {
  Jet2<F> j{F(1), F(0), F(0)};
  for (int i = 0; i < a; ++i) {
    Jet2<F> lin{ratio<F>(-i, i + 1), ratio<F>(-1, i + 1), F(0)};
    j = jet_mul(j, lin);
  }
  return j;
}

template <class F>
F ipow(const F& x, int e) {
  F r(1);
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace detail

// s and s^2 coefficients of C(-s, l): ((-1)^l/l, (-1)^l H_{l-1}/l).
template <class F>
std::pair<F, F> binom_series_coeffs(int ell) {
  if (ell < 1) fail(ErrorKind::InvalidArgument, "binom_series_coeffs: ell must be >= 1");
  F sign = (ell % 2 == 0) ? F(1) : F(-1);
  F h(0);
  for (int k = 1; k < ell; ++k) h += detail::ratio<F>(1, k);
  F inv = detail::ratio<F>(1, ell);
  return {sign * inv, sign * h * inv};
}

template <class F>
PellJet<F> pell_closed_form(int ell, const std::vector<F>& z) {
  if (ell < 0) fail(ErrorKind::InvalidArgument, "pell_closed_form: ell must be >= 0");
  PellJet<F> out;
  out.ell = ell;
  if (ell == 0) {
    out.p0 = F(1);
    out.p1 = F(0);
    out.p2 = F(0);
    return out;
  }
  out.p0 = F(0);
  const std::size_t n = z.size();
  std::vector<std::vector<F>> pw(n, std::vector<F>(ell + 1));
  for (std::size_t j = 0; j < n; ++j) {
    pw[j][0] = F(1);
    for (int e = 1; e <= ell; ++e) pw[j][e] = pw[j][e - 1] * z[j];
  }
  F sum_pow(0);
  for (std::size_t j = 0; j < n; ++j) sum_pow += pw[j][ell];
  out.p1 = sum_pow * detail::ratio<F>(1, ell);
  if (ell == 1) {
    out.p2 = F(0);
    return out;
  }
  F h(0);
  for (int k = 1; k < ell; ++k) h += detail::ratio<F>(1, k);
  F p2 = h * detail::ratio<F>(1, ell) * sum_pow;
  for (std::size_t j1 = 0; j1 < n; ++j1)
    for (std::size_t j2 = j1 + 1; j2 < n; ++j2)
      for (int r = 1; r < ell; ++r) p2 += pw[j1][r] * pw[j2][ell - r] * detail::ratio<F>(1, long(r) * (ell - r));
  out.p2 = p2;
  return out;
}

// Oracle: enumerate compositions in lexicographic order, dropping those with
// three or more nonzero parts (each nonzero part carries a factor s).
template <class F>
PellJet<F> pell_bruteforce(int ell, const std::vector<F>& z, int cap = 12) {
  if (ell < 0) fail(ErrorKind::InvalidArgument, "pell_bruteforce: ell must be >= 0");
  if (ell > cap) fail(ErrorKind::CapExceeded, "pell_bruteforce: ell exceeds the cap");
  if (z.size() > 8) fail(ErrorKind::CapExceeded, "pell_bruteforce: more than 8 shifts");
  if (z.empty()) fail(ErrorKind::InvalidArgument, "pell_bruteforce: empty shift vector");
  const int n = static_cast<int>(z.size());
  std::vector<detail::Jet2<F>> bj(ell + 1);
  for (int a = 0; a <= ell; ++a) bj[a] = detail::binom_jet<F>(a);
  std::vector<std::vector<F>> mz(n, std::vector<F>(ell + 1));
  for (int j = 0; j < n; ++j) {
    mz[j][0] = F(1);
    for (int a = 1; a <= ell; ++a) mz[j][a] = mz[j][a - 1] * (F(0) - z[j]);
  }
  detail::Jet2<F> total{F(0), F(0), F(0)};
  std::vector<int> parts(n, 0);
  auto rec = [&](auto&& self, int j, int remaining, int nonzero) -> void {
    if (j == n - 1) {
      parts[j] = remaining;
      if (nonzero + (remaining > 0 ? 1 : 0) > 2) return;
      detail::Jet2<F> acc{F(1), F(0), F(0)};
      for (int i = 0; i < n; ++i) {
        detail::Jet2<F> f = bj[parts[i]];
        F c = mz[i][parts[i]];
        acc = detail::jet_mul(acc, detail::Jet2<F>{f.a0 * c, f.a1 * c, f.a2 * c});
      }
      total.a0 += acc.a0;
      total.a1 += acc.a1;
      total.a2 += acc.a2;
      return;
    }
    for (int a = 0; a <= remaining; ++a) {
      int nz = nonzero + (a > 0 ? 1 : 0);
      if (nz > 2) break;
      parts[j] = a;
      self(self, j + 1, remaining - a, nz);
    }
  };
  rec(rec, 0, ell, 0);
  PellJet<F> out;
  out.ell = ell;
  out.p0 = total.a0;
  out.p1 = total.a1;
  out.p2 = total.a2;
  return out;
}

// Full value of P_l(s;z) at complex s by enumeration of all compositions.
template <class F>
F pell_value(int ell, const std::vector<F>& z, const F& s) {
  const int n = static_cast<int>(z.size());
  std::vector<std::vector<F>> b(n, std::vector<F>(ell + 1));
  for (int j = 0; j < n; ++j) {
    b[j][0] = F(1);
    for (int a = 1; a <= ell; ++a)
      b[j][a] = b[j][a - 1] * (F(0) - s - F(a - 1)) / F(a) * (F(0) - z[j]);
  }
  F total(0);
  auto rec = [&](auto&& self, int j, int remaining, F acc) -> void {
    if (j == n - 1) {
      total += acc * b[j][remaining];
      return;
    }
    for (int a = 0; a <= remaining; ++a) self(self, j + 1, remaining - a, acc * b[j][a]);
  };
  rec(rec, 0, ell, F(1));
  return total;
}

// P_0..P_L at s: Cauchy product of the per-shift binomial series, which sums
// the same compositions as pell_value.
template <class F>
std::vector<F> pell_series(int L, const std::vector<F>& z, const F& s) {
  std::vector<F> acc(L + 1, F(0));
  acc[0] = F(1);
  std::vector<F> b(L + 1), next(L + 1);
  for (const F& zj : z) {
    b[0] = F(1);
    for (int a = 1; a <= L; ++a) b[a] = b[a - 1] * (F(0) - s - F(a - 1)) / F(a) * (F(0) - zj);
    for (int l = 0; l <= L; ++l) {
      F t(0);
      for (int a = 0; a <= l; ++a) t += b[a] * acc[l - a];
      next[l] = t;
    }
    acc.swap(next);
  }
  return acc;
}

}  // namespace regprod
