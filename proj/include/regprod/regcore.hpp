#pragma once

#include <vector>

#include "regprod/roots.hpp"
#include "regprod/sequence.hpp"

namespace regprod {

template <class Real>
using ShiftVector = std::vector<complex_t<Real>>;

// Throws `kind` when z coincides with a member inside the truncation window.
// Appends a warning when |z| lies beyond the window.
template <class Real>
void check_off_sequence(const SequenceHandle<Real>& seq, const complex_t<Real>& z, ErrorKind kind,
                        std::vector<std::string>* warnings = nullptr);

// Closed form: log D(z) = -zeta'(0) - sum_l FP(l) z^l/l - sum_{l>=2} res(l) H_{l-1} z^l/l + log Delta(z).
template <class Real>
complex_t<Real> log_D_single(const SequenceHandle<Real>& seq, const complex_t<Real>& z);

template <class Real>
struct MultiForms {
  complex_t<Real> form_a;  // through sum_j log Delta(z_j)
  complex_t<Real> form_b;  // through sum_j log D(z_j) plus the discrepancy
  Real tolerance = 0;
};

template <class Real>
MultiForms<Real> log_D_multi_forms(const SequenceHandle<Real>& seq, const ShiftVector<Real>& z);

// Form A; with both_forms the two equalities are compared (FormMismatch).
template <class Real>
complex_t<Real> log_D_multi(const SequenceHandle<Real>& seq, const ShiftVector<Real>& z, bool both_forms = true);

template <class Real>
complex_t<Real> discrepancy(const SequenceHandle<Real>& seq, const ShiftVector<Real>& z);

template <class Real>
RegProdResult<Real> regprod_multi(const SequenceHandle<Real>& seq, const ShiftVector<Real>& z);

// Polynomials are monic coefficient lists, highest degree first.
template <class Real>
RegProdResult<Real> regprod_monic_polys(const SequenceHandle<Real>& seq,
                                        const std::vector<std::vector<complex_t<Real>>>& polys,
                                        const RootOptions<Real>& opt = {});

// zeta_{Lambda - w}(0) = zeta(0) + sum_l res(l) w^l / l.
template <class Real>
complex_t<Real> zeta0_shifted(const ZetaData<Real>& zd, const complex_t<Real>& w);

// RegProd a(lambda_k - w) = a^{zeta_{Lambda-w}(0)} D_Lambda(w), principal a^(.).
template <class Real>
RegProdResult<Real> scale_law(const SequenceHandle<Real>& seq, const complex_t<Real>& a,
                              const complex_t<Real>& w = complex_t<Real>(0, 0));

}  // namespace regprod
