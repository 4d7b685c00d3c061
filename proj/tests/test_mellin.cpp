#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "regprod/mellin.hpp"
#include "regprod/numerics.hpp"
#include "regprod/plpoly.hpp"
#include "regprod/regcore.hpp"
#include "regprod/sequences.hpp"

using namespace regprod;
using C = std::complex<double>;

namespace {

constexpr double kEuler = 0.57721566490153286061;

double rel(const C& a, const C& b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

C rand_c(std::mt19937& g, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  while (true) {
    C z(u(g), u(g));
    if (std::abs(z) <= r) return z;
  }
}

double uni(std::mt19937& g, double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }

// zeta_2(s, z; (1,1)) = zeta(s-1, z) + (1 - z) zeta(s, z).
C barnes11_zeta(const C& s, const C& z) {
  return hurwitz_zeta(s - C(1, 0), z) + (C(1, 0) - z) * hurwitz_zeta(s, z);
}

}  // namespace

TEST_CASE("zeta_via_mellin examples") {
  auto nat = naturals<double>(C(0, 0), false);
  CHECK(std::abs(zeta_via_mellin(*nat.theta, C(2, 0)) - M_PI * M_PI / 6) < 1e-12);
  CHECK(std::abs(zeta_via_mellin(*nat.theta, C(-1, 0)) - C(-1.0 / 12, 0)) < 1e-14);
  CHECK(std::abs(zeta_via_mellin(*nat.theta, C(-2, 0))) < 1e-15);
  for (double x : {0.3, 1.0, 2.6}) {
    auto tm = barnes_theta<double>(BarnesSpec<double>{1, {C(1, 0)}, C(x, 0)});
    CHECK(rel(zeta_via_mellin(tm, C(3, 0)), hurwitz_zeta(C(3, 0), C(x, 0))) < 1e-13);
  }
}

TEST_CASE("zeta_via_mellin agrees with closed forms") {
  std::mt19937 g(3);
  auto nat = naturals<double>(C(0.7, 0.2), true);
  BarnesSpec<double> b1{1, {C(1.6, 0)}, C(0.9, 0)};
  auto tm1 = barnes_theta(b1);
  auto tm2 = barnes_theta<double>(BarnesSpec<double>{2, {C(1, 0), C(1, 0)}, C(1.3, 0)});
  for (int i = 0; i < 20; ++i) {
    C s(uni(g, -3, 4), uni(g, -5, 5));
    CHECK(rel(zeta_via_mellin(*nat.theta, s), hurwitz_zeta(s, C(0.7, 0.2))) < 1e-10);
    C h1 = std::pow(C(1.6, 0), -s) * hurwitz_zeta(s, C(0.9 / 1.6, 0));
    CHECK(rel(zeta_via_mellin(tm1, s), h1) < 1e-10);
    CHECK(rel(zeta_via_mellin(tm2, s), barnes11_zeta(s, C(1.3, 0))) < 1e-10);
  }
}

TEST_CASE("zeta_via_mellin errors") {
  auto nat = naturals<double>(C(0, 0), false);
  CHECK_THROWS_AS(zeta_via_mellin(*nat.theta, C(1, 0)), Error);
  ThetaModel<double> short_tm = *nat.theta;
  short_tm.expansion.resize(3);
  try {
    zeta_via_mellin(short_tm, C(2, 0));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ExpansionTooShort);
  }
}

TEST_CASE("zeta_data_via_mellin examples") {
  auto nat = naturals<double>(C(0, 0), false);
  auto zd = zeta_data_via_mellin(*nat.theta, 1);
  CHECK(std::abs(zd.zeta0 - C(-0.5, 0)) < 1e-14);
  CHECK(std::abs(zd.zeta_prime0 - C(-0.5 * std::log(2 * M_PI), 0)) < 1e-13);
  CHECK(std::abs(zd.poles.at(1).residue - C(1, 0)) < 1e-14);
  CHECK(std::abs(zd.poles.at(1).finite_part - C(kEuler, 0)) < 1e-13);
  // Shifted naturals: zeta'(0) = lnGamma(x) - ln(2 pi)/2, FP = -psi(x).
  std::mt19937 g(8);
  for (int i = 0; i < 10; ++i) {
    C x(uni(g, 0.1, 4), uni(g, -2, 2));
    auto h = naturals<double>(x, true);
    auto m = zeta_data_via_mellin(*h.theta, 1);
    CHECK(std::abs(m.zeta0 - h.zeta_data.zeta0) < 1e-12);
    CHECK(std::abs(m.zeta_prime0 - h.zeta_data.zeta_prime0) < 1e-11);
    CHECK(std::abs(m.poles.at(1).finite_part - h.zeta_data.poles.at(1).finite_part) < 1e-11);
  }
  BarnesSpec<double> b{2, {C(1, 0), C(1, 0)}, C(1, 0)};
  auto zb = zeta_data_via_mellin(barnes_theta(b), 2);
  CHECK(std::abs(zb.poles.at(2).residue - C(1, 0)) < 1e-13);
  // Gamma_2(z)/Gamma_2(z+1) = Gamma_1(z; 1) = Gamma(z)/sqrt(2 pi) at z = 1.
  BarnesSpec<double> b2 = b;
  b2.z = C(2, 0);
  auto zb2 = zeta_data_via_mellin(barnes_theta(b2), 2);
  CHECK(std::abs(zb.zeta_prime0 - zb2.zeta_prime0 - C(-0.5 * std::log(2 * M_PI), 0)) < 1e-12);
}

TEST_CASE("Barnes residues: Mellin extraction vs closed formula") {
  std::mt19937 g(21);
  for (int N : {2, 3}) {
    for (int trial = 0; trial < 5; ++trial) {
      BarnesSpec<double> b;
      b.N = N;
      for (int j = 0; j < N; ++j) b.omega.push_back(C(uni(g, 0.5, 2.5), 0));
      b.z = C(uni(g, 0.2, 3), 0);
      auto zd = zeta_data_via_mellin(barnes_theta(b), N);
      for (int l = 1; l <= N; ++l) CHECK(std::abs(zd.poles.at(l).residue - barnes_residue(b, l)) < 1e-9);
    }
  }
}

TEST_CASE("zeta_multi_shift examples") {
  auto nat = naturals<double>(C(0, 0), false);
  std::mt19937 g(4);
  for (int i = 0; i < 6; ++i) {
    C s(uni(g, -1, 3), uni(g, -3, 3));
    if (std::abs(s - C(1, 0)) < 0.1) continue;
    CHECK(rel(zeta_multi_shift(nat, s, {C(0, 0)}), riemann_zeta(s)) < 1e-12);
    C xt = rand_c(g, 0.8);
    CHECK(rel(zeta_multi_shift(nat, s, {xt}), hurwitz_zeta(s, C(1, 0) - xt)) < 1e-11);
  }
  // Direct summation oracle at s = 0.7 with the k^{-1.4-l} tail resummed.
  const double s = 0.7;
  std::vector<C> z{C(0.2, 0), C(-0.3, 0)};
  C direct(0, 0);
  const int K = 2000;
  for (int k = 1; k <= K; ++k) direct += std::pow(k - 0.2, -s) * std::pow(k + 0.3, -s);
  for (int l = 0; l <= 20; ++l)
    direct += pell_value<C>(l, z, C(s, 0)) * hurwitz_zeta(C(2 * s + l, 0), C(K + 1, 0));
  CHECK(rel(zeta_multi_shift(nat, C(s, 0), z), direct) < 1e-9);
}

TEST_CASE("zeta_multi_shift is independent of the split radius") {
  std::mt19937 g(6);
  auto nat = naturals<double>(C(0, 0), false);
  auto bar = barnes<double>(BarnesSpec<double>{2, {C(1, 0), C(1.4, 0)}, C(0.6, 0)});
  auto bes = bessel_zeros<double>(BesselSpec<double>{1.0, 100});
  for (const SequenceHandle<double>* seq : {&nat, &bar, &bes}) {
    CAPTURE(seq->name);
    for (int i = 0; i < 4; ++i) {
      ShiftVector<double> z{rand_c(g, 1.5), rand_c(g, 1.5)};
      C s(uni(g, 0.05, 1.5), uni(g, -1, 1));
      C a = zeta_multi_shift(*seq, s, z, 3.0);
      C b = zeta_multi_shift(*seq, s, z, 6.0);
      CHECK(std::abs(a - b) <= 1e-11 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("dzeta_multi_shift_at0 examples") {
  auto nat = naturals<double>(C(0, 0), false);
  auto r0 = dzeta_multi_shift_at0(nat, {C(0, 0)});
  CHECK(std::abs(r0.analytic - nat.zeta_data.zeta_prime0) < 1e-14);
  REQUIRE(r0.numeric_available);
  CHECK(std::abs(r0.numeric - nat.zeta_data.zeta_prime0) < 1e-10);
  ShiftVector<double> z{C(0.3, 0.4), C(-0.6, 0.1)};
  auto r = dzeta_multi_shift_at0(nat, z);
  C expect(0, 0);
  for (const auto& zj : z) expect += 0.5 * std::log(2 * M_PI) - log_gamma(C(1, 0) - zj);
  CHECK(log_distance(-r.analytic, expect) < 1e-12);
  CHECK(log_distance(-r.numeric, expect) < 1e-10);

  auto b11 = barnes<double>(BarnesSpec<double>{2, {C(1, 0), C(1, 0)}, C(1, 0)});
  ShiftVector<double> zb{C(0.3, 0), C(0.1, 0)};
  auto rb = dzeta_multi_shift_at0(b11, zb);
  C closed = log_D_multi(b11, zb);
  CHECK(std::abs(-rb.analytic - closed) < 1e-8);
  CHECK(std::abs(-rb.numeric - closed) < 1e-8);
}

TEST_CASE("oracle and closed form agree per provider") {
  std::mt19937 g(77);
  auto nat = naturals<double>(C(0, 0), false);
  auto bar = barnes<double>(BarnesSpec<double>{2, {C(1, 0), C(1.3, 0)}, C(0.9, 0)});
  auto bes = bessel_zeros<double>(BesselSpec<double>{2.7, 100});
  struct Case {
    const SequenceHandle<double>* seq;
    double tol;
  };
  for (auto [seq, tol] : {Case{&nat, 1e-10}, Case{&bar, 1e-7}, Case{&bes, 1e-6}}) {
    CAPTURE(seq->name);
    for (int trial = 0; trial < 25; ++trial) {
      ShiftVector<double> z;
      for (int j = 0; j < 1 + trial % 3; ++j) z.push_back(rand_c(g, 1.2));
      auto r = dzeta_multi_shift_at0(*seq, z);
      auto closed = regprod_multi(*seq, z);
      REQUIRE(r.numeric_available);
      CHECK(rel(std::exp(-r.numeric), closed.value) < tol);
      CHECK(rel(std::exp(-r.analytic), closed.value) < tol);
    }
  }
}

TEST_CASE("route mismatch is reported") {
  auto nat = naturals<double>(C(0, 0), false);
  // Corrupting the provider constant breaks the analytic route only.
  auto bad = nat;
  bad.zeta_data.zeta_prime0 += C(1e-3, 0);
  try {
    dzeta_multi_shift_at0(bad, {C(0.2, 0)});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RouteMismatch);
  }
}

TEST_CASE("multiprecision Mellin constants") {
  using R = mp50;
  using M = mpc50;
  auto nat = naturals<R>(M(0, 0), false);
  auto zd = zeta_data_via_mellin(*nat.theta, 1);
  const R half_log = log(R(2) * pi<R>()) / R(2);
  CHECK(abs(zd.zeta_prime0 + half_log) < R("1e-45"));
  CHECK(abs(zd.poles.at(1).finite_part - euler_gamma<R>()) < R("1e-45"));
  BarnesSpec<R> b{2, {M(1, 0), M(R("1.5"), 0)}, M(R("0.7"), 0)};
  auto zb = zeta_data_via_mellin(barnes_theta(b), 2);
  for (int l = 1; l <= 2; ++l) CHECK(abs(zb.poles.at(l).residue - barnes_residue(b, l)) < R("1e-45"));
}
