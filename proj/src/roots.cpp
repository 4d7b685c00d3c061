#include "regprod/roots.hpp"

#include "regprod/detail/math_using.hpp"
#include "regprod/error.hpp"

#include <algorithm>

namespace regprod {

template <class Real>
std::vector<Root<Real>> monic_roots(const std::vector<complex_t<Real>>& coeffs, const RootOptions<Real>& opt) {
  using C = complex_t<Real>;
  if (coeffs.empty()) fail(ErrorKind::NonMonic, "empty polynomial");
  if (coeffs.front() != C(1, 0)) fail(ErrorKind::NonMonic, "polynomial is not monic");
  for (const C& c : coeffs)
    if (!is_finite_c(c)) fail(ErrorKind::InvalidArgument, "non-finite polynomial coefficient");
  const int deg = static_cast<int>(coeffs.size()) - 1;
  if (deg == 0) return {};

  auto horner = [&](const C& z, C& p, C& dp, Real& scale) {
    p = coeffs[0];
    dp = C(0, 0);
    scale = abs(coeffs[0]);
    Real az = abs(z);
    for (int i = 1; i <= deg; ++i) {
      dp = dp * z + p;
      p = p * z + coeffs[i];
      scale = scale * az + abs(coeffs[i]);
    }
  };

  if (deg == 1) return {Root<Real>{-coeffs[1], 1}};

  Real bound = 0;
  for (int i = 1; i <= deg; ++i) {
    Real r = pow(abs(coeffs[i]), Real(1) / Real(i));
    if (r > bound) bound = r;
  }
  bound = Real(2) * bound;
  if (bound == Real(0)) bound = Real(1);
  const Real two_pi = Real(2) * pi<Real>();
  std::vector<C> z(deg);
  for (int k = 0; k < deg; ++k) {
    Real ang = two_pi * Real(k) / Real(deg) + Real(0.4);
    Real rad = bound * (Real(0.5) + Real(k + 1) / Real(2 * deg));
    z[k] = C(rad * cos(ang), rad * sin(ang));
  }

  const Real eps = std::numeric_limits<Real>::epsilon();
  bool converged = false;
  for (int it = 0; it < opt.max_iterations && !converged; ++it) {
    Real maxstep = 0;
    for (int k = 0; k < deg; ++k) {
      C p, dp;
      Real scale;
      horner(z[k], p, dp, scale);
      if (abs(p) <= Real(4) * eps * scale) continue;
      C ratio = p / dp;
      C sum(0, 0);
      for (int j = 0; j < deg; ++j)
        if (j != k) sum += C(1, 0) / (z[k] - z[j]);
      C w = ratio / (C(1, 0) - ratio * sum);
      z[k] -= w;
      Real rs = abs(w) / (Real(1) + abs(z[k]));
      if (rs > maxstep) maxstep = rs;
    }
    converged = maxstep < Real(16) * eps;
  }

  // Merge clusters. A k-fold root spreads to about eps^{1/k}, so a candidate
  // cluster of size k uses that radius (never below opt.cluster_radius). The
  // mean is then polished by Newton on p^{(k-1)}, where the root is simple.
  auto deriv_eval = [&](int order, const C& x, C& v, C& dv) {
    // Coefficients of p^{(order)} from the highest degree down.
    std::vector<C> c(coeffs);
    for (int o = 0; o < order; ++o) {
      std::vector<C> d;
      int dd = static_cast<int>(c.size()) - 1;
      for (int i = 0; i < dd; ++i) d.push_back(c[i] * Real(dd - i));
      c.swap(d);
    }
    v = c[0];
    dv = C(0, 0);
    for (std::size_t i = 1; i < c.size(); ++i) {
      dv = dv * x + v;
      v = v * x + c[i];
    }
  };
  std::vector<int> group(deg, -1);
  std::vector<Root<Real>> roots;
  for (int k = 0; k < deg; ++k) {
    if (group[k] >= 0) continue;
    Real base = abs(z[k]) > Real(1) ? abs(z[k]) : Real(1);
    std::vector<std::pair<Real, int>> near;
    for (int j = k + 1; j < deg; ++j)
      if (group[j] < 0) near.emplace_back(abs(z[j] - z[k]), j);
    std::sort(near.begin(), near.end());
    int size = 1;
    for (int cand = 2; cand <= static_cast<int>(near.size()) + 1; ++cand) {
      Real rad = Real(8) * pow(eps, Real(1) / Real(cand)) * base;
      if (rad < opt.cluster_radius * base) rad = opt.cluster_radius * base;
      if (near[cand - 2].first < rad) size = cand;
    }
    C mean = z[k];
    for (int i = 0; i < size - 1; ++i) mean += z[near[i].second];
    mean /= Real(size);
    if (size > 1) {
      C w = mean;
      for (int it = 0; it < 50; ++it) {
        C v, dv;
        deriv_eval(size - 1, w, v, dv);
        if (dv == C(0, 0)) break;
        C step = v / dv;
        w -= step;
        if (abs(step) <= Real(4) * eps * base) break;
      }
      Real rad = Real(16) * pow(eps, Real(1) / Real(size)) * base;
      if (abs(w - mean) > rad) {
        size = 1;  // polishing left the cluster: keep the points separate
      } else {
        mean = w;
      }
    }
    group[k] = static_cast<int>(roots.size());
    for (int i = 0; i < size - 1; ++i) group[near[i].second] = group[k];
    roots.push_back(Root<Real>{size > 1 ? mean : z[k], size});
  }
  for (const auto& r : roots) {
    C p, dp;
    Real scale;
    horner(r.value, p, dp, scale);
    // A root of multiplicity m is only located to about eps^{1/m}; the residual
    // is checked at the merged value.
    if (abs(p) > opt.residual * scale)
      fail(ErrorKind::RootFindingFailure, "root finder did not reach the residual tolerance");
  }
  if (!converged) {
    bool clustered = false;
    for (const auto& r : roots) clustered = clustered || r.multiplicity > 1;
    if (!clustered) fail(ErrorKind::RootFindingFailure, "root iteration did not converge");
  }
  return roots;
}

template std::vector<Root<double>> monic_roots<double>(const std::vector<std::complex<double>>&, const RootOptions<double>&);
template std::vector<Root<mp50>> monic_roots<mp50>(const std::vector<mpc50>&, const RootOptions<mp50>&);

}  // namespace regprod
