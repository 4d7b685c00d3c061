#include <algorithm>
#include <map>
#include <mutex>

#include "regprod/detail/math_using.hpp"
#include "regprod/error.hpp"
#include "regprod/mellin.hpp"
#include "regprod/numerics.hpp"
#include "regprod/quadrature.hpp"
#include "regprod/sequences.hpp"

namespace regprod {
namespace {

// 1 - e^{-w} without cancellation for small w.
template <class C>
C one_minus_exp_neg(const C& w) {
  using R = real_of_t<C>;
  if (abs(w) > R(0.5)) return C(1, 0) - exp(-w);
  C term = w, acc = w;
  const R eps = std::numeric_limits<R>::epsilon();
  for (int k = 2; k < 200; ++k) {
    term *= -w / R(k);
    acc += term;
    if (abs(term) <= eps * abs(acc)) break;
  }
  return acc;
}

// E_m(x) = e^x - sum_{l<=m} x^l / l!.
template <class C>
C exp_remainder(const C& x, int m) {
  using R = real_of_t<C>;
  const R eps = std::numeric_limits<R>::epsilon();
  if (abs(x) < R(4)) {
    C term(1, 0);
    for (int l = 1; l <= m; ++l) term *= x / R(l);
    C acc(0, 0);
    for (int l = m + 1; l < 400; ++l) {
      term *= x / R(l);
      acc += term;
      if (abs(term) <= eps * abs(acc)) break;
    }
    return acc;
  }
  C acc = exp(x), term(1, 0);
  acc -= term;
  for (int l = 1; l <= m; ++l) {
    term *= x / R(l);
    acc -= term;
  }
  return acc;
}

// [t^n] of t^N e^{xt} / prod_j (e^{omega_j t} - 1), n = 0..nmax.
template <class C>
std::vector<C> bernoulli_series(int nmax, const C& x, const std::vector<C>& omega) {
  using R = real_of_t<C>;
  std::vector<C> acc(nmax + 1, C(0, 0));
  // e^{xt}
  C term(1, 0);
  for (int n = 0; n <= nmax; ++n) {
    acc[n] = term;
    term *= x / R(n + 1);
  }
  std::vector<C> d(nmax + 1), r(nmax + 1), next(nmax + 1);
  for (const C& w : omega) {
    // (e^{wt} - 1)/t = sum_k w^{k+1} t^k / (k+1)!, then its reciprocal.
    C c = w;
    for (int k = 0; k <= nmax; ++k) {
      d[k] = c;
      c *= w / R(k + 2);
    }
    r[0] = C(1, 0) / d[0];
    for (int k = 1; k <= nmax; ++k) {
      C s(0, 0);
      for (int i = 1; i <= k; ++i) s += d[i] * r[k - i];
      r[k] = -s / d[0];
    }
    for (int n = 0; n <= nmax; ++n) {
      C s(0, 0);
      for (int i = 0; i <= n; ++i) s += r[i] * acc[n - i];
      next[n] = s;
    }
    acc.swap(next);
  }
  return acc;
}

template <class Real>
int expansion_terms(int N, const Precision& p) {
  return static_cast<int>(std::ceil(3.4 * effective_digits<Real>(p))) + 2 * N + 20;
}

template <class Real>
Real max_abs(const std::vector<complex_t<Real>>& v) {
  Real m = 0;
  for (const auto& x : v) m = std::max<Real>(m, abs(x));
  return m;
}

// Box sizes K_j such that every member outside {k_j < K_j} has Re > radius.
template <class Real>
std::vector<long> box_for(const BarnesSpec<Real>& spec, const Real& radius) {
  std::vector<long> K(spec.N);
  for (int j = 0; j < spec.N; ++j) {
    Real v = (radius - real(spec.z)) / real(spec.omega[j]);
    K[j] = v < Real(0) ? 0 : static_cast<long>(floor(v)) + 1;
    if (K[j] > 100000) fail(ErrorKind::TruncationInsufficient, "Barnes box too large");
  }
  return K;
}

template <class Real>
std::vector<Element<Real>> box_members(const BarnesSpec<Real>& spec, const std::vector<long>& K) {
  using C = complex_t<Real>;
  std::vector<Element<Real>> out;
  for (long k : K)
    if (k == 0) return out;
  std::vector<long> idx(spec.N, 0);
  while (true) {
    C v = spec.z;
    for (int j = 0; j < spec.N; ++j) v += Real(idx[j]) * spec.omega[j];
    out.push_back(Element<Real>{v, log(v)});
    int j = 0;
    while (j < spec.N && ++idx[j] == K[j]) idx[j++] = 0;
    if (j == spec.N) break;
  }
  return out;
}

template <class Real>
struct BarnesState {
  BarnesSpec<Real> spec;
  Precision prec;
  ThetaModel<Real> theta;
  std::mutex mu;
  std::vector<Element<Real>> sorted;
  std::map<Real, SequenceSplit<Real>> splits;
};

template <class Real>
void ensure_sorted(BarnesState<Real>& st, std::size_t K) {
  using C = complex_t<Real>;
  if (st.sorted.size() >= K) return;
  const auto& spec = st.spec;
  Real R = real(spec.z) + Real(2);
  for (int iter = 0; iter < 60; ++iter, R *= Real(1.5)) {
    std::vector<long> box = box_for(spec, R);
    std::vector<Element<Real>> all;
    if (std::all_of(box.begin(), box.end(), [](long k) { return k > 0; })) {
      std::vector<long> idx(spec.N, 0);
      while (true) {
        C v = spec.z;
        for (int j = 0; j < spec.N; ++j) v += Real(idx[j]) * spec.omega[j];
        if (abs(v) <= R) all.push_back(Element<Real>{v, log(v)});
        int j = 0;
        while (j < spec.N && ++idx[j] == box[j]) idx[j++] = 0;
        if (j == spec.N) break;
      }
    }
    if (all.size() >= K) {
      std::stable_sort(all.begin(), all.end(),
                       [](const Element<Real>& a, const Element<Real>& b) { return abs(a.value) < abs(b.value); });
      all.resize(K);
      st.sorted = std::move(all);
      return;
    }
  }
  fail(ErrorKind::TruncationInsufficient, "could not enumerate Barnes lattice members");
}

}  // namespace

template <class Real>
void BarnesSpec<Real>::validate() const {
  if (N < 1) fail(ErrorKind::SpecInvalid, "Barnes: N must be positive");
  if (static_cast<int>(omega.size()) != N) fail(ErrorKind::SpecInvalid, "Barnes: omega must have N entries");
  for (const auto& w : omega)
    if (!(real(w) > Real(0)) || !is_finite_c(w)) fail(ErrorKind::SpecInvalid, "Barnes: omega needs positive real part");
  if (!(real(z) > Real(0)) || !is_finite_c(z)) fail(ErrorKind::SpecInvalid, "Barnes: z needs positive real part");
}

template <class Real>
complex_t<Real> multiple_bernoulli(int N, int n, const complex_t<Real>& x, const std::vector<complex_t<Real>>& omega) {
  if (N < 0 || n < 0) fail(ErrorKind::InvalidArgument, "multiple_bernoulli: negative index");
  if (static_cast<int>(omega.size()) != N) fail(ErrorKind::InvalidArgument, "multiple_bernoulli: omega must have N entries");
  auto c = bernoulli_series(n, x, omega);
  Real f = 1;
  for (int i = 2; i <= n; ++i) f *= Real(i);
  return c[n] * f;
}

template <class Real>
complex_t<Real> barnes_residue(const BarnesSpec<Real>& spec, int l) {
  spec.validate();
  if (l < 1 || l > spec.N) return complex_t<Real>(0, 0);
  complex_t<Real> b = multiple_bernoulli<Real>(spec.N, spec.N - l, spec.z, spec.omega);
  Real f = 1;
  for (int i = 2; i < l; ++i) f *= Real(i);
  for (int i = 2; i <= spec.N - l; ++i) f *= Real(i);
  return ((spec.N - l) % 2 ? -b : b) / f;
}

template <class Real>
ThetaModel<Real> barnes_theta(const BarnesSpec<Real>& spec, const Precision& p) {
  using C = complex_t<Real>;
  spec.validate();
  ThetaModel<Real> tm;
  const int N = spec.N;
  const auto omega = spec.omega;
  const C z = spec.z;
  tm.theta = [omega, z](const Real& t) {
    C den(1, 0);
    for (const auto& w : omega) den *= one_minus_exp_neg(w * t);
    return exp(-z * t) / den;
  };
  // theta(t) = t^{-N} [t^N e^{xt} / prod (e^{omega t} - 1)] at x = sum omega - z.
  C x = -z;
  for (const auto& w : omega) x += w;
  const int nt = expansion_terms<Real>(N, p);
  auto c = bernoulli_series(nt, x, omega);
  for (int n = 0; n <= nt; ++n) tm.expansion.push_back(ThetaTerm<Real>{Real(n - N), c[n]});
  tm.radius = Real(2) * pi<Real>() / max_abs<Real>(omega);
  tm.decay = real(z);
  Real split = 1;
  if (abs(z) > Real(1)) split = Real(1) / abs(z);
  if (abs(x) > Real(1) / split) split = Real(1) / abs(x);
  tm.split = split;
  return tm;
}

template <class Real>
complex_t<Real> barnes_log_delta(const BarnesSpec<Real>& spec, const complex_t<Real>& w, const Real& box_radius,
                                 const Precision& p) {
  using C = complex_t<Real>;
  spec.validate();
  const int N = spec.N;
  auto K = box_for(spec, box_radius);
  C acc(0, 0);
  for (const auto& e : box_members(spec, K)) {
    C pw = w * exp(-e.log);
    C term = log(C(1, 0) - pw);
    C q = pw;
    for (int l = 1; l <= N; ++l) {
      term += q / Real(l);
      q *= pw;
    }
    acc += term;
  }
  Real tail_re = std::numeric_limits<Real>::max();
  for (int j = 0; j < N; ++j) tail_re = std::min<Real>(tail_re, real(spec.z) + Real(K[j]) * real(spec.omega[j]));
  const Real decay = tail_re - real(w);
  if (!(decay > Real(0))) fail(ErrorKind::TruncationInsufficient, "Barnes box does not dominate the shift");
  const auto omega = spec.omega;
  const C z = spec.z;
  auto f = [&](const Real& t) -> C {
    C num(1, 0), den(1, 0);
    for (int j = 0; j < N; ++j) {
      num *= K[j] == 0 ? C(0, 0) : one_minus_exp_neg(Real(K[j]) * omega[j] * t);
      den *= one_minus_exp_neg(omega[j] * t);
    }
    C th = exp(-z * t) * (C(1, 0) - num) / den;
    return th * exp_remainder(w * t, N) / t;
  };
  Real tol = Real(100) * eps_for<Real>(p);
  C tail = integrate_to_infinity<Real>(f, Real(0), decay, Real(N) / decay, tol);
  return acc - tail;
}

template <class Real>
SequenceHandle<Real> barnes(const BarnesSpec<Real>& spec, const Precision& p) {
  using C = complex_t<Real>;
  spec.validate();
  p.validate();
  auto st = std::make_shared<BarnesState<Real>>();
  st->spec = spec;
  st->prec = p;
  st->theta = barnes_theta(spec, p);

  SequenceHandle<Real> h;
  h.name = "barnes";
  h.precision = p;
  h.theta = st->theta;
  h.zeta_data = zeta_data_via_mellin(st->theta, spec.N, p);
  h.zeta_data.mu = Real(spec.N);
  h.accuracy = Real(1e4) * eps_for<Real>(p);
  h.zeta = [st](const C& u) { return zeta_via_mellin(st->theta, u, st->prec); };
  h.log_delta = [st](const C& w) {
    Real R = Real(2) * abs(w) + Real(1);
    return barnes_log_delta(st->spec, w, R, st->prec);
  };
  h.window = spec.N == 1 ? 2000 : (spec.N == 2 ? 4000 : 6000);
  h.elements = [st](std::size_t K) {
    std::lock_guard<std::mutex> lock(st->mu);
    ensure_sorted(*st, K);
    return std::vector<Element<Real>>(st->sorted.begin(), st->sorted.begin() + K);
  };
  h.split = [st](const Real& r) {
    std::lock_guard<std::mutex> lock(st->mu);
    auto it = st->splits.find(r);
    if (it != st->splits.end()) return it->second;
    const auto& spec = st->spec;
    auto K = box_for(spec, r);
    SequenceSplit<Real> sp;
    sp.head = box_members(spec, K);
    Real tmin = std::numeric_limits<Real>::max();
    for (int j = 0; j < spec.N; ++j) tmin = std::min<Real>(tmin, real(spec.z) + Real(K[j]) * real(spec.omega[j]));
    if (sp.head.empty()) tmin = real(spec.z);
    sp.tail_min_modulus = tmin;
    // Complement of the box by inclusion-exclusion over shifted bases.
    std::vector<std::pair<int, ThetaModel<Real>>> parts;
    if (sp.head.empty()) {
      parts.emplace_back(1, st->theta);
    } else {
      for (unsigned mask = 1; mask < (1u << spec.N); ++mask) {
        BarnesSpec<Real> shifted = spec;
        int bits = 0;
        for (int j = 0; j < spec.N; ++j)
          if (mask & (1u << j)) {
            shifted.z += Real(K[j]) * spec.omega[j];
            ++bits;
          }
        parts.emplace_back(bits % 2 ? 1 : -1, barnes_theta(shifted, st->prec));
      }
    }
    Precision prec = st->prec;
    sp.tail_zeta = [parts, prec](const C& u) {
      C acc(0, 0);
      for (const auto& [sign, tm] : parts) {
        C v = zeta_via_mellin(tm, u, prec);
        acc += sign > 0 ? v : -v;
      }
      return acc;
    };
    st->splits.emplace(r, sp);
    return sp;
  };
  return h;
}

#define REGPROD_INSTANTIATE(R)                                                                                  \
  template void BarnesSpec<R>::validate() const;                                                                \
  template complex_t<R> multiple_bernoulli<R>(int, int, const complex_t<R>&, const std::vector<complex_t<R>>&);  \
  template complex_t<R> barnes_residue<R>(const BarnesSpec<R>&, int);                                           \
  template ThetaModel<R> barnes_theta<R>(const BarnesSpec<R>&, const Precision&);                               \
  template complex_t<R> barnes_log_delta<R>(const BarnesSpec<R>&, const complex_t<R>&, const R&, const Precision&); \
  template SequenceHandle<R> barnes<R>(const BarnesSpec<R>&, const Precision&);

REGPROD_INSTANTIATE(double)
REGPROD_INSTANTIATE(mp50)

}  // namespace regprod
