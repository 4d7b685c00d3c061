#pragma once

#include <memory>
#include <string>
#include <vector>

#include "regprod/sequence.hpp"

namespace regprod {

// {k + x : k >= 0} when from_zero, {k + x : k >= 1} otherwise.
template <class Real>
SequenceHandle<Real> naturals(const complex_t<Real>& x, bool from_zero, const Precision& p = {});

// ---- Barnes lattices {z + k.omega : k in N^N} ----

template <class Real>
struct BarnesSpec {
  int N = 1;
  std::vector<complex_t<Real>> omega;
  complex_t<Real> z;

  void validate() const;
};

// B_{N,n}(x; omega): n! [t^n] t^N e^{xt} / prod_j (e^{omega_j t} - 1).
template <class Real>
complex_t<Real> multiple_bernoulli(int N, int n, const complex_t<Real>& x, const std::vector<complex_t<Real>>& omega);

// theta(t) = e^{-zt} / prod_j (1 - e^{-omega_j t}) with its convergent expansion
// sum_n (-1)^n B_{N,n}(z) t^{n-N} / n!.
template <class Real>
ThetaModel<Real> barnes_theta(const BarnesSpec<Real>& spec, const Precision& p = {});

// res zeta_N(l) = (-1)^{N-l} B_{N,N-l}(z) / ((l-1)! (N-l)!).
template <class Real>
complex_t<Real> barnes_residue(const BarnesSpec<Real>& spec, int l);

// log Delta(w) with the members in the box {k_j < K_j} multiplied out and the
// rest through -int_0^inf theta_tail(t) E_N(wt) dt/t, E_N(x) = e^x - sum_{l<=N} x^l/l!.
// The box is the smallest one whose complement has Re(lambda) > box_radius.
template <class Real>
complex_t<Real> barnes_log_delta(const BarnesSpec<Real>& spec, const complex_t<Real>& w, const Real& box_radius,
                                 const Precision& p = {});

template <class Real>
SequenceHandle<Real> barnes(const BarnesSpec<Real>& spec, const Precision& p = {});

// ---- Riemann zeros ----

struct ZeroTable {
  std::vector<double> ordinates;  // positive, increasing
  std::vector<double> residuals;  // |Z(t_k)| with Z the Hardy function
};

constexpr std::size_t kRiemannZeroCap = 100;

// First K ordinates. Reads and re-certifies the cache in cache_dir when
// present (REGPROD_CACHE_DIR when cache_dir is empty), computing otherwise.
ZeroTable riemann_zero_table(std::size_t K, const std::string& cache_dir = "");

// Sum_{k} 1/rho_k over the pairs rho, conj(rho): 1 + C/2 - ln(4 pi)/2.
template <class Real>
Real riemann_inverse_zero_sum();

// rho-form: {1/2 + i t_k, 1/2 - i t_k}; D(s) = sqrt2 xi(s).
template <class Real>
SequenceHandle<Real> riemann_zeros(std::size_t K, const Precision& p = {});

// gamma-form: {t_k, -t_k}; D(s) = -sqrt2 xi(1/2 + i s).
template <class Real>
SequenceHandle<Real> riemann_zero_ordinates(std::size_t K, const Precision& p = {});

// ---- Bessel zeros ----

template <class Real>
struct BesselSpec {
  Real nu = Real(1) / Real(2);
  std::size_t K = 100;

  void validate() const;
};

// Positive zeros j_{nu,1..K} (Newton from McMahon).
template <class Real>
std::vector<Real> bessel_zero_list(const Real& nu, std::size_t K, const Precision& p = {},
                                   const std::string& cache_dir = "");

// zeta_J(s) = sum_k (j_k/pi)^{-s} with the members beyond K replaced by the
// McMahon expansion summed through Hurwitz zeta values.
template <class Real>
class BesselZeta {
 public:
  BesselZeta(const Real& nu, std::vector<Real> zeros, const Precision& p);

  std::size_t available() const { return zeros_.size(); }
  const std::vector<Real>& zeros() const { return zeros_; }
  const Real& nu() const { return nu_; }

  // Sum over k > K0 only.
  complex_t<Real> tail(const complex_t<Real>& s, std::size_t K0) const;
  complex_t<Real> zeta_J(const complex_t<Real>& s, std::size_t K) const;
  // zeta* = (1 + e^{-i pi s}) zeta_J; the value at s = 1 is the limit.
  complex_t<Real> zeta_star(const complex_t<Real>& s, std::size_t K) const;
  complex_t<Real> dzeta_J0(std::size_t K) const;
  // zeta*(1) measured by symmetric Laurent sampling at 1 +- eps with Richardson.
  complex_t<Real> fp_star1(std::size_t K) const;
  // FP zeta_J(1) = lim (zeta_J(s) - 1/(s-1)).
  complex_t<Real> fp_J1(std::size_t K) const;

 private:
  Real nu_;
  std::vector<Real> zeros_;
  Precision prec_;
  Real b_;
  std::vector<std::vector<Real>> G_;  // G_[q][k]: s^k coefficient of f_q(s)
};

template <class Real>
struct BesselDiagnostics {
  complex_t<Real> fp_star1[3];  // at K, 2K, 4K
  complex_t<Real> dzeta_star0_measured;
  complex_t<Real> fp_J1;
};

template <class Real>
SequenceHandle<Real> bessel_zeros(const BesselSpec<Real>& spec, const Precision& p = {},
                                  BesselDiagnostics<Real>* diag = nullptr);

// Closed forms for the Bessel sequence {+-j/pi}.
template <class Real>
complex_t<Real> bessel_zeta_star0(const Real& nu);
template <class Real>
complex_t<Real> bessel_dzeta_star0(const Real& nu);

}  // namespace regprod
