#include "regprod/numerics.hpp"

#include <algorithm>
#include <vector>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "regprod/detail/math_using.hpp"
#include "regprod/error.hpp"

namespace regprod {
namespace {

template <class C>
bool is_nonpositive_integer(const C& z) {
  using R = real_of_t<C>;
  return z.imag() == R(0) && z.real() <= R(0) && floor(z.real()) == z.real();
}

// B_{2j}/(2j)! for j = 0..J.
template <class R>
std::vector<R> bernoulli_over_factorial(int J) {
  std::vector<R> out(J + 1);
  R fact = 1;
  for (int j = 0; j <= J; ++j) {
    if (j > 0) fact *= R(2 * j - 1) * R(2 * j);
    out[j] = boost::math::bernoulli_b2n<R>(j) / fact;
  }
  return out;
}

// (e^x - 1)/x and its derivative.
template <class C>
C phi1(const C& x) {
  using R = real_of_t<C>;
  if (abs(x) < R(0.25)) {
    C term(1, 0), sum(0, 0);
    for (int k = 1; k < 200; ++k) {
      sum += term;
      term *= x / R(k + 1);
      if (abs(term) < std::numeric_limits<R>::epsilon() * R(1e-3)) break;
    }
    return sum;
  }
  return (exp(x) - C(1, 0)) / x;
}

template <class C>
C phi1_prime(const C& x) {
  using R = real_of_t<C>;
  if (abs(x) < R(0.25)) {
    // sum_{k>=1} k x^{k-1}/(k+1)!
    C pw(1, 0), sum(0, 0);
    R fact = 2;
    for (int k = 1; k < 200; ++k) {
      C term = pw * (R(k) / fact);
      sum += term;
      if (abs(term) < std::numeric_limits<R>::epsilon() * R(1e-3)) break;
      pw *= x;
      fact *= R(k + 2);
    }
    return sum;
  }
  C ex = exp(x);
  return (ex * (x - C(1, 0)) + C(1, 0)) / (x * x);
}

template <class C>
struct EmOut {
  C reg;   // zeta(s,a) - 1/(s-1), or zeta(s,a) itself when computed in full
  C dreg;  // d/ds of reg
};

template <class C>
EmOut<C> hurwitz_em(const C& s, const C& a, int d, bool full) {
  using R = real_of_t<C>;
  const R ln4 = log(R(4));
  const R ln10 = log(R(10));
  int J = static_cast<int>(std::ceil(double((d + 3) * ln10 / ln4))) + 1;
  R need = (abs(s) + R(2 * J)) / pi<R>();
  long N = 1;
  if (need - a.real() > R(1)) N = static_cast<long>(std::ceil(double(need - a.real())));

  C sum(0, 0), dsum(0, 0);
  for (long k = 0; k < N; ++k) {
    C w = a + R(k);
    C lw = log(w);
    C t = exp(-s * lw);
    sum += t;
    dsum -= lw * t;
  }
  C W = a + R(N);
  C L = log(W);
  C sm1 = s - R(1);
  C wms = exp(-s * L);
  if (full) {
    // Far from s = 1 the integral term W^{1-s}/(s-1) is used as is.
    C w1 = wms * W / sm1;
    sum += w1;
    dsum -= w1 * (L + C(1, 0) / sm1);
  } else {
    C x = -sm1 * L;
    sum += -L * phi1(x);
    dsum += L * L * phi1_prime(x);
  }
  sum += wms / R(2);
  dsum -= L * wms / R(2);

  std::vector<R> bf = bernoulli_over_factorial<R>(J);
  C P = s, dP(1, 0);
  C Wp = wms / W;
  C W2 = W * W;
  for (int j = 1; j <= J; ++j) {
    C base = P * Wp;
    sum += bf[j] * base;
    dsum += bf[j] * (dP * Wp - L * base);
    C f1 = s + R(2 * j - 1);
    dP = dP * f1 + P;
    P = P * f1;
    C f2 = s + R(2 * j);
    dP = dP * f2 + P;
    P = P * f2;
    Wp /= W2;
  }
  return {sum, dsum};
}

// Re s < 0 cancels like N^{1-Re s}; run those in the wider scalar.
template <class C>
EmOut<C> hurwitz_dispatch(const C& s, const C& a, int d, bool full = false) {
  using R = real_of_t<C>;
  using Wide = typename scalar_traits<R>::wide;
  using WC = complex_t<Wide>;
  if (!(a.real() > R(0))) fail(ErrorKind::InvalidArgument, "hurwitz_zeta requires Re x > 0");
  if constexpr (!std::is_same_v<Wide, R>) {
    if (s.real() < R(0)) {
      double sr = double(s.real());
      double n_est = (double(abs(s)) + 3.4 * (d + 3)) / 3.14159;
      int extra = static_cast<int>(std::ceil((1.0 - sr) * std::log10(std::max(n_est, 2.0))));
      int dw = std::min(d + extra, scalar_traits<Wide>::digits - 2);
      auto out = hurwitz_em(convert_complex<WC>(s), convert_complex<WC>(a), dw, full);
      return {convert_complex<C>(out.reg), convert_complex<C>(out.dreg)};
    }
  }
  return hurwitz_em(s, a, d, full);
}

template <class C>
C stirling_shifted_log_gamma(const C& z, int d) {
  using R = real_of_t<C>;
  R rmin = R(0.4 * (d + 2) + 2);
  C w = z;
  C shift_sum(0, 0);
  if (abs(w) < rmin) {
    long n = static_cast<long>(std::ceil(double(rmin - w.real()))) + 1;
    for (long k = 0; k < n; ++k) shift_sum += log(z + R(k));
    w = z + R(n);
  }
  const R half_ln_2pi = log(R(2) * pi<R>()) / R(2);
  C lw = log(w);
  C res = (w - R(0.5)) * lw - w + half_ln_2pi;
  C winv = C(1, 0) / w;
  C winv2 = winv * winv;
  C pw = winv;
  R tol = pow(R(10), -R(d + 3));
  for (int k = 1; k < 400; ++k) {
    R b = boost::math::bernoulli_b2n<R>(k);
    C term = pw * (b / (R(2 * k) * R(2 * k - 1)));
    res += term;
    if (abs(term) < tol * (abs(res) + R(1))) break;
    pw *= winv2;
  }
  return res - shift_sum;
}

template <class C>
C asymptotic_digamma(const C& z, int d) {
  using R = real_of_t<C>;
  R rmin = R(0.4 * (d + 2) + 2);
  C w = z;
  C shift_sum(0, 0);
  if (abs(w) < rmin) {
    long n = static_cast<long>(std::ceil(double(rmin - w.real()))) + 1;
    for (long k = 0; k < n; ++k) shift_sum += C(1, 0) / (z + R(k));
    w = z + R(n);
  }
  C winv = C(1, 0) / w;
  C winv2 = winv * winv;
  C res = log(w) - winv / R(2);
  C pw = winv2;
  R tol = pow(R(10), -R(d + 3));
  for (int k = 1; k < 400; ++k) {
    R b = boost::math::bernoulli_b2n<R>(k);
    C term = pw * (b / R(2 * k));
    res -= term;
    if (abs(term) < tol * (abs(res) + R(1))) break;
    pw *= winv2;
  }
  return res - shift_sum;
}

template <class R>
R real_tgamma(const R& x) {
  return boost::math::tgamma(x);
}

template <class C>
struct BesselOut {
  C value;
  bool ok;
};

// Normalized series sum_k (-z^2/4)^k / (k! (nu+1)_k) in the wide scalar.
template <class C>
BesselOut<C> bessel_series_normalized(const real_of_t<C>& nu, const C& z, int d) {
  using R = real_of_t<C>;
  using Wide = typename scalar_traits<R>::wide;
  using WC = complex_t<Wide>;
  WC zw = convert_complex<WC>(z);
  Wide nuw = convert_real<Wide>(nu);
  WC q = -(zw * zw) / Wide(4);
  WC term(1, 0), sum(1, 0);
  Wide maxabs = 1;
  Wide tol = pow(Wide(10), -Wide(scalar_traits<Wide>::digits - 2));
  Wide az = abs(zw);
  for (int k = 1; k < 100000; ++k) {
    term *= q / (Wide(k) * (nuw + Wide(k)));
    sum += term;
    Wide at = abs(term);
    if (at > maxabs) maxabs = at;
    if (Wide(k) > az && at < tol * abs(sum)) break;
  }
  Wide as = abs(sum);
  bool ok = false;
  if (as > Wide(0)) {
    double loss = double(log10(maxabs / as));
    ok = loss <= double(scalar_traits<Wide>::digits - d - 4);
  }
  return {convert_complex<C>(sum), ok};
}

template <class C>
BesselOut<C> bessel_hankel(const real_of_t<C>& nu, const C& z, int d) {
  using R = real_of_t<C>;
  const R mu = R(4) * nu * nu;
  const R pie = pi<R>();
  C chi = z - (nu / R(2) + R(0.25)) * pie;
  C zinv = C(1, 0) / z;
  C P(1, 0), Q(0, 0);
  R a = 1;
  C pw(1, 0);
  R tol = pow(R(10), -R(d + 2));
  R prev = std::numeric_limits<R>::max();
  bool ok = false;
  for (int k = 1; k < 2000; ++k) {
    R odd = R(2 * k - 1);
    a = a * (mu - odd * odd) / (R(k) * R(8));
    pw *= zinv;
    C term = pw * a;
    R at = abs(term);
    if (at == R(0)) {
      ok = true;
      break;
    }
    if (at > prev && R(k) > nu + R(2)) break;
    prev = at;
    int r = k % 4;
    if (r == 1) Q += term;
    else if (r == 2) P -= term;
    else if (r == 3) Q -= term;
    else P += term;
    if (at < tol * (abs(P) + abs(Q))) {
      ok = true;
      break;
    }
  }
  C pref = sqrt(C(R(2), 0) / (pie * z));
  return {pref * (P * cos(chi) - Q * sin(chi)), ok};
}

// J_nu for nu > -1 (internal; the derivative needs nu - 1).
template <class C>
C bessel_j_any(const real_of_t<C>& nu, const C& z, int d, bool normalized) {
  using R = real_of_t<C>;
  if (z == C(0, 0)) {
    if (normalized) return C(1, 0);
    return nu == R(0) ? C(1, 0) : C(0, 0);
  }
  auto gamma_np1 = [&]() {
    using Wide = typename scalar_traits<R>::wide;
    return convert_real<R>(real_tgamma(convert_real<Wide>(nu) + Wide(1)));
  };
  auto from_series = [&](const BesselOut<C>& s) {
    if (normalized) return s.value;
    C half_pow = exp(nu * log(z / R(2)));
    return s.value * half_pow / gamma_np1();
  };
  auto from_hankel = [&](const BesselOut<C>& h) {
    if (!normalized) return h.value;
    C half_pow = exp(-nu * log(z / R(2)));
    return h.value * half_pow * gamma_np1();
  };
  R az = abs(z);
  if (az < R(20)) {
    auto s = bessel_series_normalized(nu, z, d);
    if (s.ok) return from_series(s);
    auto h = bessel_hankel(nu, z, d);
    if (h.ok) return from_hankel(h);
  } else {
    auto h = bessel_hankel(nu, z, d);
    if (h.ok) return from_hankel(h);
    auto s = bessel_series_normalized(nu, z, d);
    if (s.ok) return from_series(s);
  }
  fail(ErrorKind::PrecisionLoss, "bessel_j: neither the series nor the asymptotic route reaches the working precision");
}

}  // namespace

template <class C>
C log_gamma(const C& z, const Precision& p) {
  using R = real_of_t<C>;
  if (is_nonpositive_integer(z)) fail(ErrorKind::PoleAtNonPositiveInteger, "log_gamma: pole");
  const int d = effective_digits<R>(p);
  if (z.real() >= R(0.5)) return stirling_shifted_log_gamma(z, d);
  if (z.imag() < R(0)) return conj(log_gamma(conj(z), p));
  // log sin(pi z) = -ln 2 + i pi/2 - i pi z + log(1 - e^{2 pi i z}), analytic for Im z >= 0
  const R pie = pi<R>();
  C iu(0, 1);
  C q = exp(iu * (R(2) * pie) * z);
  C logsin = C(-log(R(2)), pie / R(2)) - iu * pie * z + log(C(1, 0) - q);
  C res = C(log(pie), 0) - logsin - stirling_shifted_log_gamma(C(1, 0) - z, d);
  if (!is_finite_c(res)) fail(ErrorKind::Overflow, "log_gamma: overflow");
  return res;
}

template <class C>
C digamma(const C& z, const Precision& p) {
  using R = real_of_t<C>;
  if (is_nonpositive_integer(z)) fail(ErrorKind::PoleAtNonPositiveInteger, "digamma: pole");
  const int d = effective_digits<R>(p);
  if (z.real() >= R(0.5)) return asymptotic_digamma(z, d);
  if (z.imag() < R(0)) return conj(digamma(conj(z), p));
  const R pie = pi<R>();
  C iu(0, 1);
  C q = exp(iu * (R(2) * pie) * z);
  C cot = iu * (q + R(1)) / (q - R(1));
  return asymptotic_digamma(C(1, 0) - z, d) - pie * cot;
}

template <class C>
C hurwitz_zeta(const C& s, const C& x, const Precision& p) {
  using R = real_of_t<C>;
  if (s == C(1, 0)) fail(ErrorKind::PoleAtOne, "hurwitz_zeta: pole at s = 1");
  const bool full = abs(s - R(1)) > R(1) / R(2);
  auto out = hurwitz_dispatch(s, x, effective_digits<R>(p), full);
  C res = full ? out.reg : out.reg + C(1, 0) / (s - R(1));
  if (!is_finite_c(res)) fail(ErrorKind::Overflow, "hurwitz_zeta: overflow");
  return res;
}

template <class C>
C hurwitz_zeta_ds(const C& s, const C& x, const Precision& p) {
  using R = real_of_t<C>;
  if (s == C(1, 0)) fail(ErrorKind::PoleAtOne, "hurwitz_zeta_ds: pole at s = 1");
  C sm1 = s - R(1);
  const bool full = abs(sm1) > R(1) / R(2);
  auto out = hurwitz_dispatch(s, x, effective_digits<R>(p), full);
  C res = full ? out.dreg : out.dreg - C(1, 0) / (sm1 * sm1);
  if (!is_finite_c(res)) fail(ErrorKind::Overflow, "hurwitz_zeta_ds: overflow");
  return res;
}

template <class C>
C hurwitz_zeta_regular(const C& s, const C& x, const Precision& p) {
  using R = real_of_t<C>;
  return hurwitz_dispatch(s, x, effective_digits<R>(p)).reg;
}

template <class C>
C riemann_zeta(const C& s, const Precision& p) {
  using R = real_of_t<C>;
  if (s == C(1, 0)) fail(ErrorKind::PoleAtOne, "riemann_zeta: pole at s = 1");
  if (s.real() < R(-1)) {
    const R pie = pi<R>();
    C one(1, 0);
    C lg = log_gamma(one - s, p);
    C f = exp(s * log(R(2)) + (s - R(1)) * log(pie) + lg);
    return f * sin(pie * s / R(2)) * riemann_zeta(one - s, p);
  }
  return hurwitz_zeta(s, C(1, 0), p);
}

template <class C>
C riemann_xi(const C& s, const Precision& p) {
  using R = real_of_t<C>;
  C one(1, 0);
  if (s == C(0, 0) || s == one) return C(R(0.5), 0);
  if (s.real() < R(0.5)) return riemann_xi(one - s, p);
  const R pie = pi<R>();
  C sm1_zeta = one + (s - R(1)) * hurwitz_zeta_regular(s, one, p);
  C g = exp(log_gamma(s / R(2), p) - (s / R(2)) * log(pie));
  return s * g * sm1_zeta / R(2);
}

template <class Real>
Real riemann_siegel_theta(const Real& t, const Precision& p) {
  using C = complex_t<Real>;
  C lg = log_gamma(C(Real(0.25), t / Real(2)), p);
  return lg.imag() - t / Real(2) * log(pi<Real>());
}

template <class Real>
Real hardy_z(const Real& t, const Precision& p) {
  using C = complex_t<Real>;
  Real th = riemann_siegel_theta(t, p);
  C z = riemann_zeta(C(Real(0.5), t), p);
  return (C(cos(th), sin(th)) * z).real();
}

template <class Real>
Real xi_critical(const Real& t, const Precision& p) {
  using C = complex_t<Real>;
  const Real pie = pi<Real>();
  C lg = log_gamma(C(Real(0.25), t / Real(2)), p);
  Real th = lg.imag() - t / Real(2) * log(pie);
  C z = riemann_zeta(C(Real(0.5), t), p);
  Real hz = (C(cos(th), sin(th)) * z).real();
  Real scale = (t * t + Real(0.25)) / Real(2) * exp(lg.real() - log(pie) / Real(4));
  return -scale * hz;
}

template <class C>
C bessel_j(const real_of_t<C>& nu, const C& z, const Precision& p) {
  using R = real_of_t<C>;
  if (nu < R(0.5)) fail(ErrorKind::InvalidArgument, "bessel_j: nu must be >= 1/2");
  C res = bessel_j_any(nu, z, effective_digits<R>(p), false);
  if (!is_finite_c(res)) fail(ErrorKind::Overflow, "bessel_j: overflow");
  return res;
}

template <class C>
C bessel_j_dz(const real_of_t<C>& nu, const C& z, const Precision& p) {
  using R = real_of_t<C>;
  if (nu < R(0.5)) fail(ErrorKind::InvalidArgument, "bessel_j_dz: nu must be >= 1/2");
  const int d = effective_digits<R>(p);
  if (z == C(0, 0)) return nu == R(1) ? C(R(0.5), 0) : C(0, 0);
  return bessel_j_any(nu - R(1), z, d, false) - (nu / z) * bessel_j_any(nu, z, d, false);
}

template <class C>
C bessel_j_normalized(const real_of_t<C>& nu, const C& z, const Precision& p) {
  using R = real_of_t<C>;
  if (nu < R(0.5)) fail(ErrorKind::InvalidArgument, "bessel_j_normalized: nu must be >= 1/2");
  return bessel_j_any(nu, z, effective_digits<R>(p), true);
}

template <class Real>
Real harmonic(int n) {
  Real h = 0;
  for (int k = 1; k <= n; ++k) h += Real(1) / Real(k);
  return h;
}

template <class C>
C principal_log_value(const C& w) {
  using R = real_of_t<C>;
  const R two_pi = R(2) * pi<R>();
  R im = w.imag();
  im -= two_pi * floor((im + pi<R>()) / two_pi);
  if (im <= -pi<R>()) im += two_pi;
  return C(w.real(), im);
}

template <class C>
real_of_t<C> log_distance(const C& a, const C& b) {
  return abs(principal_log_value(C(a - b)));
}

#define REGPROD_INSTANTIATE_C(C)                                                 \
  template C log_gamma<C>(const C&, const Precision&);                           \
  template C digamma<C>(const C&, const Precision&);                             \
  template C hurwitz_zeta<C>(const C&, const C&, const Precision&);              \
  template C hurwitz_zeta_ds<C>(const C&, const C&, const Precision&);           \
  template C hurwitz_zeta_regular<C>(const C&, const C&, const Precision&);      \
  template C riemann_zeta<C>(const C&, const Precision&);                        \
  template C riemann_xi<C>(const C&, const Precision&);                          \
  template C bessel_j<C>(const real_of_t<C>&, const C&, const Precision&);       \
  template C bessel_j_dz<C>(const real_of_t<C>&, const C&, const Precision&);    \
  template C bessel_j_normalized<C>(const real_of_t<C>&, const C&, const Precision&); \
  template C principal_log_value<C>(const C&);                                   \
  template real_of_t<C> log_distance<C>(const C&, const C&);

#define REGPROD_INSTANTIATE_R(R)                                   \
  template R riemann_siegel_theta<R>(const R&, const Precision&); \
  template R hardy_z<R>(const R&, const Precision&);              \
  template R xi_critical<R>(const R&, const Precision&);          \
  template R harmonic<R>(int);

REGPROD_INSTANTIATE_C(std::complex<double>)
REGPROD_INSTANTIATE_C(mpc50)
REGPROD_INSTANTIATE_R(double)
REGPROD_INSTANTIATE_R(mp50)

}  // namespace regprod
