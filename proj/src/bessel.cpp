#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "regprod/detail/math_using.hpp"
#include "regprod/error.hpp"
#include "regprod/numerics.hpp"
#include "regprod/sequences.hpp"

namespace regprod {
namespace {

constexpr int kMcMahonOrder = 4;

std::string cache_root(const std::string& dir) {
  if (!dir.empty()) return dir;
  const char* env = std::getenv("REGPROD_CACHE_DIR");
  return env ? std::string(env) : std::string();
}

// j ~ beta - a_1/beta - a_2/beta^3 - a_3/beta^5 - a_4/beta^7, beta = (k + nu/2 - 1/4) pi.
template <class Real>
std::vector<Real> mcmahon_coeffs(const Real& nu) {
  const Real mu = Real(4) * nu * nu;
  const Real m1 = mu - Real(1);
  std::vector<Real> a(kMcMahonOrder + 1, Real(0));
  a[1] = m1 / Real(8);
  a[2] = Real(4) * m1 * (Real(7) * mu - Real(31)) / (Real(3) * Real(512));
  a[3] = Real(32) * m1 * (Real(83) * mu * mu - Real(982) * mu + Real(3779)) / (Real(15) * Real(32768));
  a[4] = Real(64) * m1 * (Real(6949) * mu * mu * mu - Real(153855) * mu * mu + Real(1585743) * mu - Real(6277237)) /
         (Real(105) * Real(2097152));
  return a;
}

template <class Real>
Real mcmahon_guess(const Real& nu, std::size_t k) {
  auto a = mcmahon_coeffs(nu);
  Real beta = (Real(k) + nu / Real(2) - Real(1) / Real(4)) * pi<Real>();
  Real x = beta, ib = Real(1) / beta, ib2 = ib * ib, p = ib;
  for (int i = 1; i <= 2; ++i) {
    x -= a[i] * p;
    p *= ib2;
  }
  return x;
}

template <class Real>
Real newton_zero(const Real& nu, Real x, const Real& tol, int max_it) {
  using C = complex_t<Real>;
  for (int it = 0; it < max_it; ++it) {
    Real f = real(bessel_j<C>(nu, C(x, 0)));
    Real df = real(bessel_j_dz<C>(nu, C(x, 0)));
    if (df == Real(0)) fail(ErrorKind::ZeroRefinementFailure, "Bessel Newton step with zero derivative");
    Real dx = f / df;
    x -= dx;
    if (abs(dx) <= tol * x) return x;
  }
  fail(ErrorKind::ZeroRefinementFailure, "Bessel zero Newton iteration did not converge");
}

std::string nu_text(double nu) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", nu);
  return buf;
}

bool load_bessel_cache(const std::filesystem::path& file, double nu, std::size_t K, std::vector<double>& out) {
  std::ifstream in(file);
  if (!in) return false;
  std::string line;
  if (!std::getline(in, line) || line != "# bessel-j-zeros v1 nu=" + nu_text(nu)) return false;
  std::vector<double> v;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    char* end = nullptr;
    double x = std::strtod(line.c_str(), &end);
    if (end == line.c_str()) return false;
    v.push_back(x);
  }
  if (v.size() < K) return false;
  v.resize(K);
  using C = std::complex<double>;
  for (std::size_t k = 0; k < K; ++k) {
    if (k > 0 && !(v[k] > v[k - 1])) return false;
    if (std::abs(v[k] - mcmahon_guess<double>(nu, k + 1)) > 1.0) return false;
    if (std::abs(bessel_j<C>(nu, C(v[k], 0))) > 1e-12) return false;
  }
  out = std::move(v);
  return true;
}

void store_bessel_cache(const std::filesystem::path& file, double nu, const std::vector<double>& v) {
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  std::ofstream os(file);
  if (!os) fail(ErrorKind::CacheError, "cannot write zero cache " + file.string());
  os << "# bessel-j-zeros v1 nu=" << nu_text(nu) << "\n";
  char buf[64];
  for (double x : v) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf << "\n";
  }
}

std::vector<double> compute_double_zeros(double nu, std::size_t K) {
  std::vector<double> out;
  out.reserve(K);
  for (std::size_t k = 1; k <= K; ++k) {
    double x = newton_zero<double>(nu, mcmahon_guess<double>(nu, k), 4e-16, 60);
    using C = std::complex<double>;
    if (std::abs(bessel_j<C>(nu, C(x, 0))) > 1e-12)
      fail(ErrorKind::ZeroRefinementFailure, "Bessel zero residual above 1e-12");
    if (!out.empty() && !(x > out.back() + 1.0))
      fail(ErrorKind::ZeroRefinementFailure, "Bessel zeros out of order");
    out.push_back(x);
  }
  return out;
}

// Power series helpers truncated at x^Q.
template <class Real>
std::vector<Real> series_mul(const std::vector<Real>& a, const std::vector<Real>& b) {
  std::vector<Real> c(a.size(), Real(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

}  // namespace

template <class Real>
void BesselSpec<Real>::validate() const {
  if (!(nu >= Real(1) / Real(2))) fail(ErrorKind::SpecInvalid, "Bessel: nu must be at least 1/2");
  if (K < 4) fail(ErrorKind::SpecInvalid, "Bessel: K must be at least 4");
  if (K > 20000) fail(ErrorKind::CapExceeded, "Bessel: K exceeds 20000");
}

template <class Real>
std::vector<Real> bessel_zero_list(const Real& nu, std::size_t K, const Precision& p, const std::string& cache_dir) {
  const double nud = static_cast<double>(nu);
  std::string root = cache_root(cache_dir);
  std::vector<double> zd;
  std::filesystem::path file;
  bool cached = false;
  if (!root.empty()) {
    file = std::filesystem::path(root) / ("bessel_j_zeros_nu" + nu_text(nud) + ".txt");
    cached = load_bessel_cache(file, nud, K, zd);
  }
  // Cached zeros are only trusted for the nu they were computed at.
  if (!cached || Real(nud) != nu) {
    zd = compute_double_zeros(nud, K);
    if (!root.empty() && Real(nud) == nu) store_bessel_cache(file, nud, zd);
  }
  std::vector<Real> out;
  out.reserve(K);
  if constexpr (std::is_same_v<Real, double>) {
    out = zd;
  } else {
    const Real tol = Real(10) * eps_for<Real>(p);
    for (std::size_t k = 0; k < K; ++k) out.push_back(newton_zero<Real>(nu, Real(zd[k]), tol, 20));
  }
  for (std::size_t k = 1; k < out.size(); ++k)
    if (!(out[k] > out[k - 1])) fail(ErrorKind::ZeroRefinementFailure, "Bessel zeros out of order");
  return out;
}

template <class Real>
BesselZeta<Real>::BesselZeta(const Real& nu, std::vector<Real> zeros, const Precision& p)
    : nu_(nu), zeros_(std::move(zeros)), prec_(p) {
  b_ = nu / Real(2) - Real(1) / Real(4);
  const int Q = kMcMahonOrder;
  // j/pi = bh (1 - E(x)), bh = k + b, x = 1/(pi bh)^2, E(x) = sum a_i x^i.
  auto a = mcmahon_coeffs(nu);
  std::vector<Real> E(Q + 1, Real(0));
  for (int i = 1; i <= Q; ++i) E[i] = a[i];
  // g = -log(1 - E) = sum_r E^r / r.
  std::vector<Real> g(Q + 1, Real(0)), pw = E;
  for (int r = 1; r <= Q; ++r) {
    for (int i = 0; i <= Q; ++i) g[i] += pw[i] / Real(r);
    pw = series_mul(pw, E);
  }
  // exp(s g) = sum_k s^k g^k / k!; G_[q][k] = [x^q] g^k / k!.
  G_.assign(Q + 1, std::vector<Real>(Q + 1, Real(0)));
  std::vector<Real> gk(Q + 1, Real(0));
  gk[0] = Real(1);
  Real fact = 1;
  for (int k = 0; k <= Q; ++k) {
    if (k > 0) {
      gk = series_mul(gk, g);
      fact *= Real(k);
    }
    for (int q = 0; q <= Q; ++q) G_[q][k] = gk[q] / fact;
  }
}

template <class Real>
complex_t<Real> BesselZeta<Real>::tail(const complex_t<Real>& s, std::size_t K0) const {
  using C = complex_t<Real>;
  const C x0(Real(K0) + Real(1) + b_, 0);
  const Real pi2 = pi<Real>() * pi<Real>();
  C acc(0, 0);
  Real scale = 1;
  for (std::size_t q = 0; q < G_.size(); ++q) {
    C f(0, 0), sp(1, 0);
    for (std::size_t k = 0; k < G_[q].size(); ++k) {
      f += G_[q][k] * sp;
      sp *= s;
    }
    if (q > 0 && f == C(0, 0)) {
      scale /= pi2;
      continue;
    }
    acc += f * scale * hurwitz_zeta(s + C(Real(2 * q), 0), x0, prec_);
    scale /= pi2;
  }
  return acc;
}

template <class Real>
complex_t<Real> BesselZeta<Real>::zeta_J(const complex_t<Real>& s, std::size_t K) const {
  using C = complex_t<Real>;
  if (K > zeros_.size()) fail(ErrorKind::TruncationInsufficient, "not enough Bessel zeros computed");
  const Real lpi = log(pi<Real>());
  C acc(0, 0);
  for (std::size_t k = 0; k < K; ++k) acc += exp(-s * (log(zeros_[k]) - lpi));
  return acc + tail(s, K);
}

template <class Real>
complex_t<Real> BesselZeta<Real>::zeta_star(const complex_t<Real>& s, std::size_t K) const {
  using C = complex_t<Real>;
  if (s == C(1, 0)) return fp_star1(K);
  const C pre = C(1, 0) + exp(-C(0, 1) * pi<Real>() * s);
  return pre * zeta_J(s, K);
}

template <class Real>
complex_t<Real> BesselZeta<Real>::dzeta_J0(std::size_t K) const {
  using C = complex_t<Real>;
  if (K > zeros_.size()) fail(ErrorKind::TruncationInsufficient, "not enough Bessel zeros computed");
  const Real lpi = log(pi<Real>());
  C acc(0, 0);
  for (std::size_t k = 0; k < K; ++k) acc -= C(log(zeros_[k]) - lpi, 0);
  const C x0(Real(K) + Real(1) + b_, 0);
  acc += hurwitz_zeta_ds(C(0, 0), x0, prec_);
  const Real pi2 = pi<Real>() * pi<Real>();
  Real scale = Real(1) / pi2;
  for (std::size_t q = 1; q < G_.size(); ++q) {
    acc += G_[q][1] * scale * hurwitz_zeta(C(Real(2 * q), 0), x0, prec_);
    scale /= pi2;
  }
  return acc;
}

template <class Real>
complex_t<Real> BesselZeta<Real>::fp_star1(std::size_t K) const {
  using C = complex_t<Real>;
  // The symmetric mean at 1 +- e is zeta*(1) + O(e^2).
  auto mean = [&](const Real& e) {
    C up = C(1, 0) + exp(-C(0, 1) * pi<Real>() * C(Real(1) + e, 0));
    C dn = C(1, 0) + exp(-C(0, 1) * pi<Real>() * C(Real(1) - e, 0));
    return (up * zeta_J(C(Real(1) + e, 0), K) + dn * zeta_J(C(Real(1) - e, 0), K)) / Real(2);
  };
  const Real e = std::is_same_v<Real, double> ? Real(1e-3) : Real(1e-8);
  C a1 = mean(e), a2 = mean(e / Real(2));
  return (Real(4) * a2 - a1) / Real(3);
}

template <class Real>
complex_t<Real> BesselZeta<Real>::fp_J1(std::size_t K) const {
  using C = complex_t<Real>;
  if (K > zeros_.size()) fail(ErrorKind::TruncationInsufficient, "not enough Bessel zeros computed");
  const Real pr = pi<Real>();
  C acc(0, 0);
  for (std::size_t k = 0; k < K; ++k) acc += C(pr / zeros_[k], 0);
  const C x0(Real(K) + Real(1) + b_, 0);
  acc += hurwitz_zeta_regular(C(1, 0), x0, prec_);
  const Real pi2 = pr * pr;
  Real scale = Real(1) / pi2;
  for (std::size_t q = 1; q < G_.size(); ++q) {
    Real f = 0;
    for (std::size_t k = 0; k < G_[q].size(); ++k) f += G_[q][k];
    acc += f * scale * hurwitz_zeta(C(Real(1 + 2 * q), 0), x0, prec_);
    scale /= pi2;
  }
  return acc;
}

template <class Real>
complex_t<Real> bessel_zeta_star0(const Real& nu) {
  return complex_t<Real>(-(nu + Real(1) / Real(2)), 0);
}

template <class Real>
complex_t<Real> bessel_dzeta_star0(const Real& nu) {
  using C = complex_t<Real>;
  const Real half = Real(1) / Real(2);
  Real lg = real(log_gamma(C(nu + Real(1), 0)));
  Real re = (nu - half) * log(Real(2)) + lg - (nu + Real(1)) * log(pi<Real>());
  return C(re, pi<Real>() / Real(2) * (nu + half));
}

template <class Real>
SequenceHandle<Real> bessel_zeros(const BesselSpec<Real>& spec, const Precision& p, BesselDiagnostics<Real>* diag) {
  using C = complex_t<Real>;
  spec.validate();
  p.validate();
  const std::size_t K = spec.K;
  auto bz = std::make_shared<BesselZeta<Real>>(spec.nu, bessel_zero_list<Real>(spec.nu, 4 * K, p), p);

  C fp[3] = {bz->fp_star1(K), bz->fp_star1(2 * K), bz->fp_star1(4 * K)};
  const Real tol = std::max<Real>(Real(1e-8), Real(100) * eps_for<Real>(p));
  if (abs(fp[0] - fp[1]) > tol || abs(fp[1] - fp[2]) > tol)
    fail(ErrorKind::TailFitUnstable, "FP zeta*(1) tail matching differs across K, 2K, 4K");
  if (diag) {
    for (int i = 0; i < 3; ++i) diag->fp_star1[i] = fp[i];
    // d/ds [(1 + e^{-i pi s}) zeta_J] at 0 = -i pi zeta_J(0) + 2 zeta_J'(0).
    C zj0 = bz->zeta_J(C(0, 0), K);
    diag->dzeta_star0_measured = -C(0, 1) * pi<Real>() * zj0 + Real(2) * bz->dzeta_J0(K);
    diag->fp_J1 = bz->fp_J1(K);
  }

  SequenceHandle<Real> h;
  h.name = "bessel";
  h.precision = p;
  auto& zd = h.zeta_data;
  zd.mu = 1;
  zd.m = 1;
  zd.zeta0 = bessel_zeta_star0(spec.nu);
  zd.zeta_prime0 = bessel_dzeta_star0(spec.nu);
  zd.poles[1] = PoleData<Real>{C(0, 0), fp[0]};

  const Real nu = spec.nu;
  h.log_delta = [nu, p](const C& z) { return log(bessel_j_normalized<C>(nu, pi<Real>() * z, p)); };

  auto els = std::make_shared<std::vector<Element<Real>>>();
  const Real lpi = log(pi<Real>());
  for (std::size_t k = 0; k < K; ++k) {
    Real v = bz->zeros()[k] / pi<Real>();
    Real lv = log(bz->zeros()[k]) - lpi;
    els->push_back(Element<Real>{C(v, 0), C(lv, 0)});
    els->push_back(Element<Real>{C(-v, 0), C(lv, pi<Real>())});
  }
  h.elements = [els](std::size_t n) {
    n = std::min(n, els->size());
    return std::vector<Element<Real>>(els->begin(), els->begin() + n);
  };
  h.window = els->size();
  h.zeta = [bz, K](const C& u) { return bz->zeta_star(u, K); };
  h.split = [bz, K, els](const Real& r) {
    SequenceSplit<Real> sp;
    std::size_t kh = 0;
    while (kh < K && bz->zeros()[kh] / pi<Real>() <= r) ++kh;
    if (kh >= K) fail(ErrorKind::TruncationInsufficient, "Bessel split radius beyond the computed zeros");
    sp.head.assign(els->begin(), els->begin() + 2 * kh);
    sp.tail_min_modulus = bz->zeros()[kh] / pi<Real>();
    sp.tail_zeta = [bz, K, kh](const C& u) {
      const Real lpi = log(pi<Real>());
      C acc(0, 0);
      for (std::size_t k = kh; k < K; ++k) acc += exp(-u * (log(bz->zeros()[k]) - lpi));
      acc += bz->tail(u, K);
      return (C(1, 0) + exp(-C(0, 1) * pi<Real>() * u)) * acc;
    };
    return sp;
  };
  // The first McMahon term left out bounds the tail-matching error.
  Real xK = Real(K) + spec.nu / Real(2) + Real(0.75);
  h.accuracy = Real(10) * eps_for<Real>(p) + pow(pi<Real>() * xK, -Real(2 * kMcMahonOrder + 1)) *
                                                 abs(mcmahon_coeffs(spec.nu)[kMcMahonOrder]) * Real(K);
  return h;
}

#define REGPROD_INSTANTIATE(R)                                                                                    \
  template void BesselSpec<R>::validate() const;                                                                  \
  template std::vector<R> bessel_zero_list<R>(const R&, std::size_t, const Precision&, const std::string&);       \
  template class BesselZeta<R>;                                                                                   \
  template complex_t<R> bessel_zeta_star0<R>(const R&);                                                           \
  template complex_t<R> bessel_dzeta_star0<R>(const R&);                                                          \
  template SequenceHandle<R> bessel_zeros<R>(const BesselSpec<R>&, const Precision&, BesselDiagnostics<R>*);

REGPROD_INSTANTIATE(double)
REGPROD_INSTANTIATE(mp50)

}  // namespace regprod
