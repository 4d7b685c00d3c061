#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "regprod/detail/math_using.hpp"
#include "regprod/error.hpp"
#include "regprod/numerics.hpp"
#include "regprod/sequences.hpp"

namespace regprod {
namespace {

constexpr double kZeroResidual = 1e-8;
const char* const kRiemannHeader = "# riemann-xi-zeros v1 residual<=1e-8";

std::string cache_root(const std::string& dir) {
  if (!dir.empty()) return dir;
  const char* env = std::getenv("REGPROD_CACHE_DIR");
  return env ? std::string(env) : std::string();
}

struct Sample {
  double t, z;
};

double refine_zero(double a, double b, double za, double zb) {
  auto f = [](double t) { return hardy_z<double>(t); };
  boost::uintmax_t iters = 200;
  boost::math::tools::eps_tolerance<double> tol(52);
  auto r = boost::math::tools::toms748_solve(f, a, b, za, zb, tol, iters);
  double t = (r.first + r.second) / 2;
  if (std::abs(hardy_z<double>(t)) > kZeroResidual)
    fail(ErrorKind::ZeroRefinementFailure, "Riemann zero did not refine to the residual bound");
  return t;
}

std::vector<double> scan_zeros(std::size_t K) {
  // Unit grid; a cell ending where the smooth count theta(t)/pi + 1 exceeds the
  // running count by more than 1 hides a pair and is subdivided.
  std::vector<Sample> grid;
  double t = 1;
  grid.push_back({t, hardy_z<double>(t)});
  auto count_sign_changes = [&](std::size_t upto) {
    std::size_t c = 0;
    for (std::size_t i = 1; i <= upto; ++i)
      if ((grid[i - 1].z < 0) != (grid[i].z < 0)) ++c;
    return c;
  };
  std::size_t found = 0;
  int guard = 0;
  while (found < K + 1) {
    if (++guard > 100000) fail(ErrorKind::ZeroScanFailure, "zero scan did not terminate");
    t += 1;
    grid.push_back({t, hardy_z<double>(t)});
    std::size_t n = grid.size() - 1;
    if ((grid[n - 1].z < 0) != (grid[n].z < 0)) ++found;
    double smooth = riemann_siegel_theta<double>(t) / M_PI + 1;
    int rounds = 0;
    while (smooth - double(found) > 1.0) {
      if (++rounds > 4) fail(ErrorKind::ZeroScanFailure, "zero count deficit could not be resolved");
      // Subdivide the last unit cell (and the one before it) 16-fold.
      double lo = std::max(grid.front().t, t - 2);
      std::vector<Sample> fine;
      for (const auto& s : grid)
        if (s.t < lo) fine.push_back(s);
      std::size_t steps = 32u << (4 * (rounds - 1));
      for (std::size_t i = 0; i <= steps; ++i) {
        double u = lo + (t - lo) * double(i) / double(steps);
        fine.push_back({u, hardy_z<double>(u)});
      }
      grid.swap(fine);
      found = count_sign_changes(grid.size() - 1);
    }
  }
  std::vector<double> zeros;
  for (std::size_t i = 1; i < grid.size() && zeros.size() < K; ++i) {
    if ((grid[i - 1].z < 0) != (grid[i].z < 0))
      zeros.push_back(refine_zero(grid[i - 1].t, grid[i].t, grid[i - 1].z, grid[i].z));
  }
  if (zeros.size() < K) fail(ErrorKind::ZeroScanFailure, "zero scan found too few zeros");
  return zeros;
}

bool load_cache(const std::filesystem::path& file, std::size_t K, ZeroTable& out) {
  std::ifstream in(file);
  if (!in) return false;
  std::string line;
  if (!std::getline(in, line) || line != kRiemannHeader) return false;
  std::vector<double> ts;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    char* end = nullptr;
    double v = std::strtod(line.c_str(), &end);
    if (end == line.c_str()) return false;
    ts.push_back(v);
  }
  if (ts.size() < K) return false;
  ts.resize(K);
  ZeroTable tab;
  for (std::size_t k = 0; k < K; ++k) {
    if (k > 0 && !(ts[k] > ts[k - 1])) return false;
    double r = std::abs(hardy_z<double>(ts[k]));
    if (!(r <= kZeroResidual)) return false;
    tab.ordinates.push_back(ts[k]);
    tab.residuals.push_back(r);
  }
  // The count below the last ordinate must match the certified scan.
  double smooth = riemann_siegel_theta<double>(ts.back()) / M_PI + 1;
  if (std::abs(smooth - (double(K) - 0.5)) > 1.5) return false;
  out = std::move(tab);
  return true;
}

void store_cache(const std::filesystem::path& file, const ZeroTable& tab) {
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  std::ofstream os(file);
  if (!os) fail(ErrorKind::CacheError, "cannot write zero cache " + file.string());
  os << kRiemannHeader << "\n";
  char buf[64];
  for (double t : tab.ordinates) {
    std::snprintf(buf, sizeof buf, "%.17g", t);
    os << buf << "\n";
  }
}

}  // namespace

ZeroTable riemann_zero_table(std::size_t K, const std::string& cache_dir) {
  if (K == 0) fail(ErrorKind::InvalidArgument, "riemann_zeros: K must be positive");
  if (K > kRiemannZeroCap) fail(ErrorKind::CapExceeded, "riemann_zeros: K exceeds the cap of 100");
  std::string root = cache_root(cache_dir);
  ZeroTable tab;
  std::filesystem::path file;
  if (!root.empty()) {
    file = std::filesystem::path(root) / "riemann_xi_zeros.txt";
    if (load_cache(file, K, tab)) return tab;
  }
  // Compute the full cap once so the cache serves every K.
  auto zs = scan_zeros(root.empty() ? K : kRiemannZeroCap);
  for (double t : zs) {
    tab.ordinates.push_back(t);
    tab.residuals.push_back(std::abs(hardy_z<double>(t)));
  }
  if (!root.empty()) store_cache(file, tab);
  tab.ordinates.resize(K);
  tab.residuals.resize(K);
  return tab;
}

template <class Real>
Real riemann_inverse_zero_sum() {
  return Real(1) + euler_gamma<Real>() / Real(2) - log(Real(4) * pi<Real>()) / Real(2);
}

template <class Real>
SequenceHandle<Real> riemann_zeros(std::size_t K, const Precision& p) {
  using C = complex_t<Real>;
  p.validate();
  auto tab = riemann_zero_table(K);
  auto els = std::make_shared<std::vector<Element<Real>>>();
  for (double t : tab.ordinates) {
    for (int sgn : {1, -1}) {
      C rho(Real(1) / Real(2), Real(sgn) * Real(t));
      els->push_back(Element<Real>{rho, log(rho)});
    }
  }
  SequenceHandle<Real> h;
  h.name = "riemann_zeros";
  h.precision = p;
  const Real c = riemann_inverse_zero_sum<Real>();
  auto& zd = h.zeta_data;
  zd.mu = 1;
  zd.m = 1;
  zd.zeta0 = C(2, 0);
  zd.zeta_prime0 = C(log(Real(2)) / Real(2), 0);
  zd.poles[1] = PoleData<Real>{C(0, 0), C(c, 0)};
  // Delta(z) = prod (1 - z/rho) e^{z/rho} = 2 xi(z) e^{cz}.
  h.log_delta = [c, p](const C& z) { return log(Real(2) * riemann_xi(z, p)) + c * z; };
  h.elements = [els](std::size_t n) {
    n = std::min(n, els->size());
    return std::vector<Element<Real>>(els->begin(), els->begin() + n);
  };
  h.window = els->size();
  return h;
}

template <class Real>
SequenceHandle<Real> riemann_zero_ordinates(std::size_t K, const Precision& p) {
  using C = complex_t<Real>;
  p.validate();
  auto tab = riemann_zero_table(K);
  auto els = std::make_shared<std::vector<Element<Real>>>();
  const Real pi_r = pi<Real>();
  for (double t : tab.ordinates) {
    Real g(t);
    els->push_back(Element<Real>{C(g, 0), C(log(g), 0)});
    els->push_back(Element<Real>{C(-g, 0), C(log(g), -pi_r)});
  }
  SequenceHandle<Real> h;
  h.name = "riemann_zero_ordinates";
  h.precision = p;
  const Real xi_half = real(riemann_xi(C(Real(1) / Real(2), 0), p));
  auto& zd = h.zeta_data;
  zd.mu = 1;
  zd.m = 1;
  zd.zeta0 = C(2, 0);
  zd.zeta_prime0 = C(-log(sqrt(Real(2)) * xi_half), pi_r);
  zd.poles[1] = PoleData<Real>{C(0, 0), C(0, 0)};
  // Delta(z) = prod (1 - z^2/t_k^2) = xi(1/2 + iz) / xi(1/2).
  h.log_delta = [xi_half, p](const C& z) {
    return log(riemann_xi(C(Real(1) / Real(2), 0) + C(0, 1) * z, p) / xi_half);
  };
  h.elements = [els](std::size_t n) {
    n = std::min(n, els->size());
    return std::vector<Element<Real>>(els->begin(), els->begin() + n);
  };
  h.window = els->size();
  return h;
}

template double riemann_inverse_zero_sum<double>();
template mp50 riemann_inverse_zero_sum<mp50>();
template SequenceHandle<double> riemann_zeros<double>(std::size_t, const Precision&);
template SequenceHandle<mp50> riemann_zeros<mp50>(std::size_t, const Precision&);
template SequenceHandle<double> riemann_zero_ordinates<double>(std::size_t, const Precision&);
template SequenceHandle<mp50> riemann_zero_ordinates<mp50>(std::size_t, const Precision&);

}  // namespace regprod
