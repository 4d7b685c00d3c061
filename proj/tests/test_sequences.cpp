#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/special_functions/bessel.hpp>
#include <filesystem>
#include <fstream>
#include <random>
#include <unistd.h>

#include "regprod/mellin.hpp"
#include "regprod/numerics.hpp"
#include "regprod/regcore.hpp"
#include "regprod/sequences.hpp"

using namespace regprod;
using C = std::complex<double>;
namespace fs = std::filesystem;

namespace {

constexpr double kEuler = 0.57721566490153286061;
const double kLn2Pi = std::log(2 * M_PI);

C rand_c(std::mt19937& g, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  while (true) {
    C z(u(g), u(g));
    if (std::abs(z) <= r) return z;
  }
}

double uni(std::mt19937& g, double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }

double rel(const C& a, const C& b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

fs::path scratch_dir(const std::string& tag) {
  fs::path d = fs::temp_directory_path() / ("regprod_test_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

C barnes_dzeta0(int N, const std::vector<C>& omega, const C& z) {
  return zeta_data_via_mellin(barnes_theta<double>(BarnesSpec<double>{N, omega, z}), N).zeta_prime0;
}

}  // namespace

// ---- naturals ----

TEST_CASE("naturals zeta data") {
  auto nat = naturals<double>(C(0, 0), false);
  const auto& zd = nat.zeta_data;
  CHECK(zd.mu == 1);
  CHECK(zd.m == 1);
  CHECK(std::abs(zd.zeta0 - C(-0.5, 0)) < 1e-15);
  CHECK(std::abs(zd.zeta_prime0 - C(-0.5 * kLn2Pi, 0)) < 1e-15);
  CHECK(std::abs(zd.poles.at(1).residue - C(1, 0)) < 1e-15);
  CHECK(std::abs(zd.poles.at(1).finite_part - C(kEuler, 0)) < 1e-15);

  auto one = naturals<double>(C(1, 0), true);
  CHECK(std::abs(one.zeta_data.zeta_prime0 - C(-0.5 * kLn2Pi, 0)) < 1e-15);
  CHECK(std::abs(one.zeta_data.zeta0 - C(-0.5, 0)) < 1e-15);

  C x(0.4, 0.3);
  auto h = naturals<double>(x, true);
  CHECK(std::abs(h.zeta_data.zeta0 - (C(0.5, 0) - x)) < 1e-15);
  CHECK(std::abs(h.zeta_data.poles.at(1).finite_part + digamma(x)) < 1e-14);
}

TEST_CASE("naturals reproduce the Gamma closed forms") {
  auto nat = naturals<double>(C(0, 0), false);
  std::mt19937 g(50);
  for (int i = 0; i < 50; ++i) {
    C z = rand_c(g, 4);
    if (std::abs(z - std::round(z.real())) < 0.05 && z.real() > 0.5) continue;
    C expect = 0.5 * kLn2Pi - log_gamma(C(1, 0) - z);
    CHECK(log_distance(log_D_single(nat, z), expect) < 1e-12);
  }
  for (double xr : {0.25, 1.0, 2.5, 7.0}) {
    C x(xr, 0.2);
    auto h = naturals<double>(x, true);
    CHECK(log_distance(log_D_single(h, C(0, 0)), 0.5 * kLn2Pi - log_gamma(x)) < 1e-13);
  }
}

TEST_CASE("naturals errors") {
  for (C x : {C(-0.5, 0), C(0, 1)}) {
    try {
      naturals<double>(x, true);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NonPositiveBase);
    }
  }
  CHECK_NOTHROW(naturals<double>(C(-0.5, 0), false));
  auto nat = naturals<double>(C(0, 0), false);
  CHECK(nat.contains(C(3, 0)));
  CHECK_FALSE(nat.contains(C(0, 0)));
  CHECK_FALSE(nat.contains(C(2.5, 0)));
}

// ---- Barnes ----

TEST_CASE("Barnes spec validation") {
  auto expect_invalid = [](BarnesSpec<double> b) {
    try {
      barnes<double>(b);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SpecInvalid);
    }
  };
  expect_invalid({2, {C(1, 0)}, C(1, 0)});
  expect_invalid({1, {C(-1, 0)}, C(1, 0)});
  expect_invalid({1, {C(1, 0)}, C(-0.2, 0)});
  expect_invalid({0, {}, C(1, 0)});
}

TEST_CASE("multiple_bernoulli examples") {
  CHECK(std::abs(multiple_bernoulli<double>(1, 0, C(0, 0), {C(1, 0)}) - C(1, 0)) < 1e-15);
  CHECK(std::abs(multiple_bernoulli<double>(1, 1, C(0, 0), {C(1, 0)}) - C(-0.5, 0)) < 1e-15);
  CHECK(std::abs(multiple_bernoulli<double>(1, 2, C(0, 0), {C(1, 0)}) - C(1.0 / 6, 0)) < 1e-15);
  CHECK(std::abs(multiple_bernoulli<double>(2, 0, C(0, 0), {C(1.5, 0), C(0.7, 0)}) - C(1 / (1.5 * 0.7), 0)) < 1e-14);
  // B_{1,n}(x; (1)) is the Bernoulli polynomial: B_2(x) = x^2 - x + 1/6.
  C x(0.37, 0.2);
  CHECK(std::abs(multiple_bernoulli<double>(1, 2, x, {C(1, 0)}) - (x * x - x + 1.0 / 6)) < 1e-14);
}

TEST_CASE("Barnes zeta data") {
  BarnesSpec<double> b{2, {C(1, 0), C(1.7, 0)}, C(0.8, 0)};
  auto h = barnes(b);
  CHECK(h.zeta_data.mu == 2);
  CHECK(h.zeta_data.m == 2);
  CHECK(std::abs(h.zeta_data.poles.at(2).residue - C(1 / 1.7, 0)) < 1e-13);
  for (int l = 1; l <= 2; ++l) CHECK(std::abs(h.zeta_data.poles.at(l).residue - barnes_residue(b, l)) < 1e-9);
  // zeta_2(0) = B_{2,2}(z)/2.
  CHECK(std::abs(h.zeta_data.zeta0 - multiple_bernoulli<double>(2, 2, b.z, b.omega) / 2.0) < 1e-12);
}

TEST_CASE("Barnes functional equation") {
  std::mt19937 g(12);
  for (int N : {2, 3}) {
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<C> om;
      for (int j = 0; j < N; ++j) om.push_back(C(uni(g, 0.6, 2), 0));
      C z(uni(g, 0.3, 2), 0);
      for (int j = 0; j < N; ++j) {
        std::vector<C> rest;
        for (int i = 0; i < N; ++i)
          if (i != j) rest.push_back(om[i]);
        C lhs = barnes_dzeta0(N, om, z) - barnes_dzeta0(N, om, z + om[j]);
        C rhs = barnes_dzeta0(N - 1, rest, z);
        CHECK(std::abs(lhs - rhs) < 1e-7);
      }
    }
  }
}

TEST_CASE("Barnes log Delta is independent of the box") {
  BarnesSpec<double> b{2, {C(1, 0), C(1.3, 0)}, C(0.7, 0)};
  for (C w : {C(0.3, 0.2), C(-1.1, 0.5), C(1.9, -0.4)}) {
    C a = barnes_log_delta(b, w, 2 * std::abs(w) + 1);
    C c = barnes_log_delta(b, w, 2 * std::abs(w) + 4);
    CHECK(log_distance(a, c) < 1e-10);
  }
}

TEST_CASE("Barnes lattice shifted by n values") {
  // RegProd prod_j (k.omega + z_j) prod_j Gamma_2(z_j) on omega = (1,1),
  // realised on the lattice based at z0 = 1 with shifts w_j = z0 - z_j.
  std::vector<C> om{C(1, 0), C(1, 0)};
  auto bar = barnes<double>(BarnesSpec<double>{2, om, C(1, 0)});
  for (auto zs : {std::vector<double>{0.7, 1.6}, std::vector<double>{0.35, 0.9}}) {
    ShiftVector<double> w{C(1 - zs[0], 0), C(1 - zs[1], 0)};
    C lhs = regprod_multi(bar, w).log_value;
    for (double zj : zs) lhs += barnes_dzeta0(2, om, C(zj, 0));
    double z1 = zs[0], z2 = zs[1];
    double rhs = 0.5 * (z1 * z1 + z2 * z2) / 2 - 0.5 * z1 * z2;
    CHECK(std::abs(lhs - C(rhs, 0)) < 1e-8);
    // Each single product is 1/Gamma_2(z_j).
    CHECK(std::abs(log_D_single(bar, w[0]) + barnes_dzeta0(2, om, C(z1, 0))) < 1e-8);
  }
}

// ---- Riemann ----

TEST_CASE("Riemann zero table") {
  auto tab = riemann_zero_table(100);
  REQUIRE(tab.ordinates.size() == 100);
  CHECK(std::abs(tab.ordinates[0] - 14.134725141734693) < 1e-8);
  CHECK(std::abs(tab.ordinates[9] - 49.773832477672302) < 1e-8);
  CHECK(std::abs(tab.ordinates[49] - 143.11184580762063) < 1e-8);
  CHECK(std::abs(tab.ordinates[99] - 236.52422966581620) < 1e-8);
  for (std::size_t k = 0; k < 100; ++k) {
    CHECK(tab.residuals[k] <= 1e-8);
    CHECK(std::abs(xi_critical(tab.ordinates[k])) <= 1e-8);
    if (k) CHECK(tab.ordinates[k] > tab.ordinates[k - 1]);
  }
  CHECK(xi_critical(14.0) * xi_critical(15.0) < 0);
  try {
    riemann_zero_table(101);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
}

TEST_CASE("Riemann zeta data and closed forms") {
  auto rz = riemann_zeros<double>(100);
  CHECK(std::abs(rz.zeta_data.zeta0 - C(2, 0)) < 1e-15);
  CHECK(std::abs(rz.zeta_data.zeta_prime0 - C(0.5 * std::log(2.0), 0)) < 1e-15);
  CHECK(std::abs(rz.zeta_data.poles.at(1).residue) == 0);
  CHECK(std::abs(log_D_single(rz, C(0, 0)) - C(std::log(std::sqrt(2.0) / 2), 0)) < 1e-13);
  std::mt19937 g(31);
  for (int i = 0; i < 10; ++i) {
    C s = rand_c(g, 3);
    CHECK(rel(std::exp(log_D_single(rz, s)), std::sqrt(2.0) * riemann_xi(s)) < 1e-12);
    ShiftVector<double> z{rand_c(g, 2), rand_c(g, 2)};
    ShiftVector<double> neg{-z[0], -z[1]};
    C expect = std::sqrt(2.0) * riemann_xi(C(1, 0) + z[0]) * std::sqrt(2.0) * riemann_xi(C(1, 0) + z[1]);
    CHECK(rel(regprod_multi(rz, neg).value, expect) < 1e-11);
  }
  auto ro = riemann_zero_ordinates<double>(100);
  for (C s : {C(0.3, 0.1), C(-1.2, 0.4), C(2.0, -0.7)})
    CHECK(rel(std::exp(log_D_single(ro, s)), -std::sqrt(2.0) * riemann_xi(C(0.5, 0) + C(0, 1) * s)) < 1e-12);
}

TEST_CASE("Riemann xi functional equation") {
  std::mt19937 g(40);
  for (int i = 0; i < 20; ++i) {
    // Left of the critical line xi is built directly from zeta and Gamma.
    C s(uni(g, -0.9, 0.45), uni(g, -20, 20));
    C direct = 0.5 * s * (s - 1.0) * std::exp(-s / 2.0 * std::log(M_PI) + log_gamma(s / 2.0)) * riemann_zeta(s);
    CHECK(rel(direct, riemann_xi(C(1, 0) - s)) < 1e-10);
  }
}

TEST_CASE("truncated Weierstrass product approaches xi") {
  auto tab = riemann_zero_table(100);
  for (C s : {C(2, 0), C(0.5, 5), C(-1, 0.5)}) {
    double prev = 1e300;
    for (std::size_t K : {10, 25, 50, 100}) {
      C prod(0.5, 0);
      for (std::size_t k = 0; k < K; ++k) {
        C rho(0.5, tab.ordinates[k]);
        prod *= (1.0 - s / rho) * (1.0 - s / std::conj(rho));
      }
      double r = rel(prod, riemann_xi(s));
      CHECK(r < prev);
      prev = r;
    }
  }
}

TEST_CASE("Riemann zero cache round trip") {
  auto dir = scratch_dir("riemann");
  auto fresh = riemann_zero_table(30, dir.string());
  fs::path file = dir / "riemann_xi_zeros.txt";
  REQUIRE(fs::exists(file));
  std::ifstream in(file);
  std::string header;
  std::getline(in, header);
  CHECK(header == "# riemann-xi-zeros v1 residual<=1e-8");
  std::size_t lines = 0;
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) ++lines;
  CHECK(lines == kRiemannZeroCap);
  in.close();
  auto cached = riemann_zero_table(30, dir.string());
  CHECK(cached.ordinates == fresh.ordinates);
  {
    // A corrupted entry fails re-certification and the table is regenerated.
    std::ofstream os(file);
    os << "# riemann-xi-zeros v1 residual<=1e-8\n14.0\n21.0\n";
  }
  auto regen = riemann_zero_table(30, dir.string());
  CHECK(regen.ordinates == fresh.ordinates);
  // The environment variable supplies the directory when none is given.
  ::setenv("REGPROD_CACHE_DIR", dir.string().c_str(), 1);
  CHECK(riemann_zero_table(5).ordinates[4] == fresh.ordinates[4]);
  ::unsetenv("REGPROD_CACHE_DIR");
  fs::remove_all(dir);
}

// ---- Bessel ----

TEST_CASE("Bessel spec validation") {
  for (BesselSpec<double> s : {BesselSpec<double>{0.25, 100}, BesselSpec<double>{1.0, 2}}) {
    try {
      bessel_zeros<double>(s);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SpecInvalid);
    }
  }
}

TEST_CASE("Bessel zeros") {
  auto half = bessel_zero_list<double>(0.5, 200);
  for (std::size_t k = 0; k < half.size(); ++k) CHECK(std::abs(half[k] - M_PI * double(k + 1)) < 1e-12 * (k + 1));
  for (double nu : {1.0, 1.5, 2.7, 7.25}) {
    auto zs = bessel_zero_list<double>(nu, 120);
    for (std::size_t k = 0; k < zs.size(); ++k) {
      double ref = boost::math::cyl_bessel_j_zero(nu, int(k + 1));
      CHECK(std::abs(zs[k] - ref) <= 1e-12 * ref);
      if (k) CHECK(zs[k] > zs[k - 1]);
    }
  }
}

TEST_CASE("Bessel nu = 1/2 matches the Riemann zeta values") {
  BesselDiagnostics<double> diag;
  auto h = bessel_zeros<double>(BesselSpec<double>{0.5, 100}, {}, &diag);
  const auto& zd = h.zeta_data;
  C zeta0 = riemann_zeta(C(0, 0));
  C dzeta0 = hurwitz_zeta_ds(C(0, 0), C(1, 0));
  CHECK(std::abs(zd.zeta0 - 2.0 * zeta0) < 1e-9);
  CHECK(std::abs(zd.zeta0 - C(-1, 0)) < 1e-15);
  // zeta* = (1 + e^{-i pi s}) zeta(s): d/ds at 0 is -i pi zeta(0) + 2 zeta'(0).
  C dstar = C(0, -M_PI) * zeta0 + 2.0 * dzeta0;
  CHECK(std::abs(zd.zeta_prime0 - dstar) < 1e-9);
  CHECK(std::abs(diag.dzeta_star0_measured - dstar) < 1e-9);
  CHECK(std::abs(diag.fp_J1 - C(kEuler, 0)) < 1e-9);
  for (const auto& f : diag.fp_star1) CHECK(std::abs(f - C(0, M_PI)) < 1e-9);
  CHECK(std::abs(zd.poles.at(1).finite_part - C(0, M_PI)) < 1e-9);
  for (C z : {C(0.3, 0), C(0.7, 0.2), C(1.2, -0.1)})
    CHECK(log_distance(h.log_delta(z), std::log(std::sin(M_PI * z) / (M_PI * z))) < 1e-12);
}

TEST_CASE("Bessel constants against closed forms") {
  for (double nu : {1.0, 1.5, 2.7}) {
    CAPTURE(nu);
    BesselDiagnostics<double> diag;
    auto h = bessel_zeros<double>(BesselSpec<double>{nu, 100}, {}, &diag);
    CHECK(std::abs(h.zeta_data.zeta0 - C(-(nu + 0.5), 0)) < 1e-14);
    CHECK(std::abs(diag.dzeta_star0_measured - bessel_dzeta_star0(nu)) < 1e-9);
    CHECK(std::abs(diag.fp_star1[0] - diag.fp_star1[2]) < 1e-8);
    // RegProd of +-j itself through the scale law with a = pi.
    C expect = std::log(std::sqrt(2 * M_PI) / (std::pow(2.0, nu) * std::tgamma(nu + 1))) -
               C(0, M_PI / 2 * (nu + 0.5));
    CHECK(log_distance(scale_law(h, C(M_PI, 0)).log_value, expect) < 1e-12);
  }
}

TEST_CASE("truncated even product approaches the Bessel closed form") {
  const double nu = 1.5;
  auto h = bessel_zeros<double>(BesselSpec<double>{nu, 100});
  auto zs = bessel_zero_list<double>(nu, 1600);
  for (double z : {0.3, 0.7, 1.2}) {
    C closed = std::exp(h.log_delta(C(z, 0)));
    double expect = std::pow(M_PI * z / 2, -nu) * std::tgamma(nu + 1) * boost::math::cyl_bessel_j(nu, M_PI * z);
    CHECK(std::abs(closed.real() - expect) < 1e-13);
    double prev = 1e300;
    for (std::size_t K : {25, 100, 400, 1600}) {
      double prod = 1;
      for (std::size_t k = 0; k < K; ++k) prod *= 1 - (M_PI * z / zs[k]) * (M_PI * z / zs[k]);
      double r = std::abs(prod - expect);
      CHECK(r < prev);
      prev = r;
    }
    CHECK(prev < 1e-3);
  }
}

TEST_CASE("Bessel zero cache round trip") {
  auto dir = scratch_dir("bessel");
  auto a = bessel_zero_list<double>(1.5, 40, {}, dir.string());
  bool found = false;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path());
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("# bessel-j-zeros v1 nu=", 0) == 0);
    CHECK(e.path().filename().string().rfind("bessel_j_zeros_nu", 0) == 0);
    found = true;
  }
  CHECK(found);
  auto b = bessel_zero_list<double>(1.5, 40, {}, dir.string());
  CHECK(a == b);
  fs::remove_all(dir);
}
