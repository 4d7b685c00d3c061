#include "regprod/detail/math_using.hpp"
#include "regprod/error.hpp"
#include "regprod/numerics.hpp"
#include "regprod/sequences.hpp"

namespace regprod {

template <class Real>
SequenceHandle<Real> naturals(const complex_t<Real>& x, bool from_zero, const Precision& p) {
  using C = complex_t<Real>;
  p.validate();
  if (!is_finite_c(x)) fail(ErrorKind::InvalidArgument, "naturals: non-finite base");
  const C a = from_zero ? x : x + C(1, 0);
  if (!(real(a) > Real(0))) fail(ErrorKind::NonPositiveBase, "naturals: the first member must have positive real part");

  SequenceHandle<Real> h;
  h.name = "naturals";
  h.precision = p;
  auto& zd = h.zeta_data;
  zd.mu = 1;
  zd.m = 1;
  zd.zeta0 = C(Real(1) / Real(2), 0) - a;
  const Real half_log_2pi = log(Real(2) * pi<Real>()) / Real(2);
  const C lga = log_gamma(a, p);
  const C psia = digamma(a, p);
  zd.zeta_prime0 = lga - half_log_2pi;
  zd.poles[1] = PoleData<Real>{C(1, 0), -psia};

  // Delta(z) = prod (1 - z/(a+k)) e^{z/(a+k)} = Gamma(a) e^{-psi(a) z} / Gamma(a - z).
  h.log_delta = [a, lga, psia, p](const C& z) { return lga - log_gamma(a - z, p) - psia * z; };

  h.elements = [a](std::size_t K) {
    std::vector<Element<Real>> out;
    out.reserve(K);
    for (std::size_t k = 0; k < K; ++k) {
      C v = a + C(Real(k), 0);
      out.push_back(Element<Real>{v, log(v)});
    }
    return out;
  };
  h.contains = [a, p](const C& z) {
    C d = z - a;
    Real tol = Real(1e3) * eps_for<Real>(p) * (Real(1) + abs(z));
    if (abs(imag(d)) > tol) return false;
    Real r = real(d);
    if (r < -tol) return false;
    return abs(r - round(r)) <= tol;
  };
  h.zeta = [a, p](const C& u) { return hurwitz_zeta(u, a, p); };
  h.split = [a, p](const Real& r) {
    SequenceSplit<Real> sp;
    std::size_t K = 0;
    while (abs(a + C(Real(K), 0)) <= r) {
      sp.head.push_back(Element<Real>{a + C(Real(K), 0), log(a + C(Real(K), 0))});
      ++K;
    }
    const C b = a + C(Real(K), 0);
    sp.tail_min_modulus = abs(b);
    sp.tail_zeta = [b, p](const C& u) { return hurwitz_zeta(u, b, p); };
    return sp;
  };
  BarnesSpec<Real> bs{1, {C(1, 0)}, a};
  h.theta = barnes_theta(bs, p);
  h.accuracy = Real(10) * eps_for<Real>(p);
  return h;
}

template SequenceHandle<double> naturals<double>(const std::complex<double>&, bool, const Precision&);
template SequenceHandle<mp50> naturals<mp50>(const mpc50&, bool, const Precision&);

}  // namespace regprod
