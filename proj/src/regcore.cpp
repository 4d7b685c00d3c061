#include "regprod/regcore.hpp"

#include <sstream>

#include "regprod/detail/math_using.hpp"
#include "regprod/error.hpp"
#include "regprod/numerics.hpp"

namespace regprod {
namespace {

template <class Real>
Real form_tolerance(const SequenceHandle<Real>& seq, const Real& magnitude) {
  Real eps = eps_for<Real>(seq.precision);
  Real t = Real(seq.precision.target_tol);
  if (Real(1000) * eps > t) t = Real(1000) * eps;
  return t * (Real(1) + magnitude) + seq.accuracy;
}

template <class C>
C cpow_int(const C& z, int e) {
  C r(1, 0);
  for (int i = 0; i < e; ++i) r *= z;
  return r;
}

}  // namespace

template <class Real>
void check_off_sequence(const SequenceHandle<Real>& seq, const complex_t<Real>& z, ErrorKind kind,
                        std::vector<std::string>* warnings) {
  if (!is_finite_c(z)) fail(ErrorKind::InvalidArgument, "non-finite shift");
  if (seq.contains) {
    if (seq.contains(z)) fail(kind, "shift lies on the sequence " + seq.name);
    return;
  }
  if (!seq.elements) return;
  const Real tol = Real(1e3) * eps_for<Real>(seq.precision);
  auto els = seq.elements(seq.window);
  const Real az = abs(z);
  for (const auto& e : els) {
    Real al = abs(e.value);
    if (al > az + Real(1)) break;
    if (abs(z - e.value) <= tol * (al > Real(1) ? al : Real(1)))
      fail(kind, "shift lies on the sequence " + seq.name);
  }
  if (warnings && !els.empty() && az >= abs(els.back().value)) {
    warnings->push_back("shift modulus beyond the membership window of " + seq.name + "; membership assumed");
  }
}

template <class Real>
complex_t<Real> log_D_single(const SequenceHandle<Real>& seq, const complex_t<Real>& z) {
  using C = complex_t<Real>;
  check_off_sequence(seq, z, ErrorKind::ShiftOnSequence);
  const auto& zd = seq.zeta_data;
  C acc = -zd.zeta_prime0;
  C zp(1, 0);
  for (int l = 1; l <= zd.m; ++l) {
    zp *= z;
    const auto& pd = zd.poles.at(l);
    acc -= pd.finite_part * zp / Real(l);
    if (l >= 2) acc -= pd.residue * harmonic<Real>(l - 1) * zp / Real(l);
  }
  acc += seq.log_delta(z);
  if (!is_finite_c(acc)) fail(ErrorKind::Overflow, "log_D_single: overflow");
  return acc;
}

template <class Real>
complex_t<Real> discrepancy(const SequenceHandle<Real>& seq, const ShiftVector<Real>& z) {
  using C = complex_t<Real>;
  if (z.empty()) fail(ErrorKind::InvalidArgument, "empty shift vector");
  for (const auto& zj : z) check_off_sequence(seq, zj, ErrorKind::ShiftOnSequence);
  const auto& zd = seq.zeta_data;
  const int n = static_cast<int>(z.size());
  C single(0, 0), pairs(0, 0);
  for (int l = 2; l <= zd.m; ++l) {
    const C res = zd.poles.at(l).residue;
    C sp(0, 0);
    for (const auto& zj : z) sp += cpow_int(zj, l);
    single += res * harmonic<Real>(l - 1) / Real(l) * sp;
    for (int j1 = 0; j1 < n; ++j1)
      for (int j2 = j1 + 1; j2 < n; ++j2)
        for (int r = 1; r < l; ++r)
          pairs += res * cpow_int(z[j1], r) * cpow_int(z[j2], l - r) / (Real(r) * Real(l - r));
  }
  return (Real(1) - Real(1) / Real(n)) * single - pairs / Real(n);
}

template <class Real>
MultiForms<Real> log_D_multi_forms(const SequenceHandle<Real>& seq, const ShiftVector<Real>& z) {
  using C = complex_t<Real>;
  if (z.empty()) fail(ErrorKind::InvalidArgument, "empty shift vector");
  for (const auto& zj : z) check_off_sequence(seq, zj, ErrorKind::ShiftOnSequence);
  const auto& zd = seq.zeta_data;
  const int n = static_cast<int>(z.size());
  std::vector<C> ld(n);
  for (int j = 0; j < n; ++j) ld[j] = seq.log_delta(z[j]);

  // Form A: through sum_j log Delta(z_j).
  C a = -Real(n) * zd.zeta_prime0;
  Real mag = abs(a);
  for (int j = 0; j < n; ++j) {
    a += ld[j];
    mag += abs(ld[j]);
  }
  for (int l = 1; l <= zd.m; ++l) {
    const auto& pd = zd.poles.at(l);
    C sp(0, 0);
    for (const auto& zj : z) sp += cpow_int(zj, l);
    C t = pd.finite_part * sp / Real(l);
    a -= t;
    mag += abs(t);
    if (l >= 2) {
      C u = pd.residue * harmonic<Real>(l - 1) * sp / (Real(l) * Real(n));
      a -= u;
      mag += abs(u);
      C pairs(0, 0);
      for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = j1 + 1; j2 < n; ++j2)
          for (int r = 1; r < l; ++r) pairs += cpow_int(z[j1], r) * cpow_int(z[j2], l - r) / (Real(r) * Real(l - r));
      C v = pd.residue * pairs / Real(n);
      a -= v;
      mag += abs(v);
    }
  }

  // Form B: single products plus the discrepancy.
  C b(0, 0);
  for (int j = 0; j < n; ++j) {
    C single = -zd.zeta_prime0;
    C zp(1, 0);
    for (int l = 1; l <= zd.m; ++l) {
      zp *= z[j];
      const auto& pd = zd.poles.at(l);
      single -= pd.finite_part * zp / Real(l);
      if (l >= 2) single -= pd.residue * harmonic<Real>(l - 1) * zp / Real(l);
    }
    b += single + ld[j];
  }
  b += discrepancy(seq, z);
  MultiForms<Real> out{a, b, form_tolerance(seq, mag)};
  if (!is_finite_c(a) || !is_finite_c(b)) fail(ErrorKind::Overflow, "log_D_multi: overflow");
  return out;
}

template <class Real>
complex_t<Real> log_D_multi(const SequenceHandle<Real>& seq, const ShiftVector<Real>& z, bool both_forms) {
  auto f = log_D_multi_forms(seq, z);
  if (both_forms && abs(f.form_a - f.form_b) > f.tolerance) {
    std::ostringstream os;
    os << "multi-shift forms disagree by " << double(abs(f.form_a - f.form_b));
    fail(ErrorKind::FormMismatch, os.str());
  }
  return f.form_a;
}

template <class Real>
RegProdResult<Real> regprod_multi(const SequenceHandle<Real>& seq, const ShiftVector<Real>& z) {
  RegProdResult<Real> out;
  for (const auto& zj : z) check_off_sequence(seq, zj, ErrorKind::ShiftOnSequence, &out.warnings);
  auto f = log_D_multi_forms(seq, z);
  Real gap = abs(f.form_a - f.form_b);
  if (gap > f.tolerance) {
    std::ostringstream os;
    os << "multi-shift forms disagree by " << double(gap);
    fail(ErrorKind::FormMismatch, os.str());
  }
  out.log_value = f.form_a;
  out.value = exp(f.form_a);
  out.route = Route::closed_form;
  out.err_estimate = gap + seq.accuracy + eps_for<Real>(seq.precision) * abs(f.form_a);
  if (!is_finite_c(out.value)) fail(ErrorKind::Overflow, "regprod_multi: overflow");
  return out;
}

template <class Real>
RegProdResult<Real> regprod_monic_polys(const SequenceHandle<Real>& seq,
                                        const std::vector<std::vector<complex_t<Real>>>& polys,
                                        const RootOptions<Real>& opt) {
  using C = complex_t<Real>;
  if (polys.empty()) fail(ErrorKind::InvalidArgument, "no polynomials");
  ShiftVector<Real> omega;
  for (const auto& p : polys) {
    if (p.size() < 2) fail(ErrorKind::InvalidArgument, "constant polynomial");
    for (const auto& r : monic_roots<Real>(p, opt))
      for (int k = 0; k < r.multiplicity; ++k) omega.push_back(r.value);
  }
  for (const auto& w : omega) check_off_sequence(seq, w, ErrorKind::RootOnSequence);
  RegProdResult<Real> out = regprod_multi(seq, omega);
  if (seq.zeta_data.mu < Real(2)) {
    C sum(0, 0);
    for (const auto& w : omega) sum += log_D_single(seq, w);
    Real tol = form_tolerance(seq, abs(sum));
    if (abs(sum - out.log_value) > tol) fail(ErrorKind::FormMismatch, "order < 2 product does not factor");
  }
  return out;
}

template <class Real>
complex_t<Real> zeta0_shifted(const ZetaData<Real>& zd, const complex_t<Real>& w) {
  using C = complex_t<Real>;
  C acc = zd.zeta0;
  C wp(1, 0);
  for (int l = 1; l <= zd.m; ++l) {
    wp *= w;
    acc += zd.poles.at(l).residue * wp / Real(l);
  }
  return acc;
}

template <class Real>
RegProdResult<Real> scale_law(const SequenceHandle<Real>& seq, const complex_t<Real>& a, const complex_t<Real>& w) {
  using C = complex_t<Real>;
  if (a == C(0, 0)) fail(ErrorKind::ZeroScale, "scale_law: a must be nonzero");
  RegProdResult<Real> out;
  C base = (w == C(0, 0)) ? -seq.zeta_data.zeta_prime0 : log_D_single(seq, w);
  out.log_value = zeta0_shifted(seq.zeta_data, w) * log(a) + base;
  out.value = exp(out.log_value);
  out.route = Route::closed_form;
  out.err_estimate = seq.accuracy + eps_for<Real>(seq.precision) * abs(out.log_value);
  return out;
}

#define REGPROD_INSTANTIATE(R)                                                                        \
  template void check_off_sequence<R>(const SequenceHandle<R>&, const complex_t<R>&, ErrorKind,          \
                                      std::vector<std::string>*);                                       \
  template complex_t<R> log_D_single<R>(const SequenceHandle<R>&, const complex_t<R>&);                 \
  template MultiForms<R> log_D_multi_forms<R>(const SequenceHandle<R>&, const ShiftVector<R>&);         \
  template complex_t<R> log_D_multi<R>(const SequenceHandle<R>&, const ShiftVector<R>&, bool);          \
  template complex_t<R> discrepancy<R>(const SequenceHandle<R>&, const ShiftVector<R>&);                \
  template RegProdResult<R> regprod_multi<R>(const SequenceHandle<R>&, const ShiftVector<R>&);          \
  template RegProdResult<R> regprod_monic_polys<R>(const SequenceHandle<R>&,                          \
                                                   const std::vector<std::vector<complex_t<R>>>&,      \
                                                   const RootOptions<R>&);                             \
  template complex_t<R> zeta0_shifted<R>(const ZetaData<R>&, const complex_t<R>&);                      \
  template RegProdResult<R> scale_law<R>(const SequenceHandle<R>&, const complex_t<R>&, const complex_t<R>&);

REGPROD_INSTANTIATE(double)
REGPROD_INSTANTIATE(mp50)

}  // namespace regprod
