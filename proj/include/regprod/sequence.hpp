#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "regprod/precision.hpp"
#include "regprod/scalar.hpp"

namespace regprod {

template <class Real>
struct PoleData {
  complex_t<Real> residue;
  complex_t<Real> finite_part;  // equals zeta(l) when residue == 0
};

template <class Real>
struct ZetaData {
  Real mu = 1;
  int m = 1;
  complex_t<Real> zeta0;
  complex_t<Real> zeta_prime0;
  std::map<int, PoleData<Real>> poles;

  void validate() const;
};

// One term of the small-t expansion theta(t) ~ sum c_n t^{i_n}.
template <class Real>
struct ThetaTerm {
  Real exponent;
  complex_t<Real> coeff;
};

template <class Real>
struct ThetaModel {
  std::function<complex_t<Real>(const Real&)> theta;
  std::vector<ThetaTerm<Real>> expansion;  // strictly increasing exponents, i_0 = -mu
  Real radius = 0;   // the expansion converges for 0 < t < radius
  Real decay = 1;    // |theta(t)| = O(exp(-decay t)) as t -> inf
  Real split = 1;    // preferred upper end of the series piece

  std::size_t n_terms() const { return expansion.size(); }
};

// A sequence member lambda together with the log lambda used for lambda^{-s}.
template <class Real>
struct Element {
  complex_t<Real> value;
  complex_t<Real> log;
};

// Head/tail partition used by the multi-shift continuation: the head is summed
// explicitly, the tail through T(u) = sum_{tail} exp(-u log lambda).
template <class Real>
struct SequenceSplit {
  std::vector<Element<Real>> head;
  std::function<complex_t<Real>(const complex_t<Real>&)> tail_zeta;
  Real tail_min_modulus = 0;
};

template <class Real>
struct SequenceHandle {
  using C = complex_t<Real>;

  std::string name;
  ZetaData<Real> zeta_data;
  std::function<C(const C&)> log_delta;
  // First K members in nondecreasing modulus.
  std::function<std::vector<Element<Real>>(std::size_t)> elements;
  std::optional<ThetaModel<Real>> theta;
  // Continued zeta_Lambda(u); empty when the provider has no continuation.
  std::function<C(const C&)> zeta;
  // Partition with every tail member of modulus > r; empty when unavailable.
  std::function<SequenceSplit<Real>(const Real&)> split;
  // Exact membership test when the provider can decide it analytically.
  std::function<bool(const C&)> contains;
  std::size_t window = 10000;
  Real accuracy = 0;  // absolute accuracy of log_delta and zeta_data
  Precision precision;
};

enum class Route { closed_form, oracle };

template <class Real>
struct RegProdResult {
  complex_t<Real> log_value;
  complex_t<Real> value;
  Route route = Route::closed_form;
  Real err_estimate = 0;
  std::vector<std::string> warnings;
};

inline const char* route_name(Route r) { return r == Route::closed_form ? "closed_form" : "oracle"; }

template <class Real>
void ZetaData<Real>::validate() const {
  using std::floor;
  if (!(mu > Real(0))) fail(ErrorKind::InvalidArgument, "ZetaData: mu must be positive");
  if (m != static_cast<int>(floor(double(mu)))) fail(ErrorKind::InvalidArgument, "ZetaData: m must equal floor(mu)");
  for (int l = 1; l <= m; ++l)
    if (!poles.count(l)) fail(ErrorKind::InvalidArgument, "ZetaData: missing pole entry");
}

}  // namespace regprod
