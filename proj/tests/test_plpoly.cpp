#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <random>

#include "regprod/exact.hpp"
#include "regprod/plpoly.hpp"

using namespace regprod;
using cd = std::complex<double>;
using GR = GaussianRational;

namespace {

std::vector<cd> random_shifts(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> U(-2, 2);
  std::vector<cd> z(n);
  for (auto& v : z) v = cd(U(rng), U(rng));
  return z;
}

std::vector<GR> random_rational_shifts(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  std::vector<GR> z(n);
  for (auto& v : z) v = GR(rational(num(rng), den(rng)), rational(num(rng), den(rng)));
  return z;
}

bool close(cd a, cd b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("binom_series_coeffs examples") {
  auto [a1, b1] = binom_series_coeffs<GR>(1);
  CHECK(a1 == GR(-1));
  CHECK(b1 == GR(0));
  auto [a2, b2] = binom_series_coeffs<GR>(2);
  CHECK(a2 == GR(rational(1, 2), 0));
  CHECK(b2 == GR(rational(1, 2), 0));
  auto [a3, b3] = binom_series_coeffs<GR>(3);
  CHECK(a3 == GR(rational(-1, 3), 0));
  CHECK(b3 == GR(rational(-1, 2), 0));
  CHECK_THROWS_AS(binom_series_coeffs<GR>(0), Error);
}

TEST_CASE("binom_series_coeffs matches the jet of the linear-factor product") {
  for (int l = 1; l <= 15; ++l) {
    auto [c1, c2] = binom_series_coeffs<GR>(l);
    auto j = detail::binom_jet<GR>(l);
    CHECK(j.a0 == GR(0));
    CHECK(j.a1 == c1);
    CHECK(j.a2 == c2);
  }
}

TEST_CASE("pell_closed_form examples") {
  std::vector<GR> z{GR(rational(3, 7), rational(1, 2)), GR(rational(-2, 5), 1)};
  auto j = pell_closed_form(2, z);
  GR s2 = z[0] * z[0] + z[1] * z[1];
  CHECK(j.p0 == GR(0));
  CHECK(j.p1 == s2 / GR(2));
  CHECK(j.p2 == s2 / GR(2) + z[0] * z[1]);
  auto j1 = pell_closed_form(1, z);
  CHECK(j1.p1 == z[0] + z[1]);
  CHECK(j1.p2 == GR(0));
  auto j0 = pell_closed_form(0, z);
  CHECK((j0.p0 == GR(1) && j0.p1 == GR(0) && j0.p2 == GR(0)));
}

TEST_CASE("pell_bruteforce examples") {
  std::vector<GR> ones{GR(1), GR(1), GR(1)};
  auto j = pell_bruteforce(3, ones);
  CHECK(j.p0 == GR(0));
  CHECK(j.p1 == GR(1));
  CHECK(j.p2 == GR(rational(9, 2), 0));
  auto c = pell_closed_form(3, ones);
  CHECK(c.p2 == j.p2);
  auto j0 = pell_bruteforce(0, std::vector<GR>{GR(5)});
  CHECK((j0.p0 == GR(1) && j0.p1 == GR(0) && j0.p2 == GR(0)));
  CHECK_THROWS_AS(pell_bruteforce(13, ones), Error);
  CHECK_THROWS_AS(pell_bruteforce(3, std::vector<GR>(9, GR(1))), Error);
}

TEST_CASE("closed form equals brute force, float mode") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + trial % 5;
    auto z = random_shifts(rng, n);
    for (int l = 0; l <= 10; ++l) {
      auto a = pell_closed_form(l, z);
      auto b = pell_bruteforce(l, z);
      CHECK(close(a.p0, b.p0, 1e-12));
      CHECK(close(a.p1, b.p1, 1e-12));
      CHECK(close(a.p2, b.p2, 1e-12));
    }
  }
}

TEST_CASE("closed form equals brute force, rational mode") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + trial % 5;
    auto z = random_rational_shifts(rng, n);
    for (int l = 0; l <= 10; ++l) {
      auto a = pell_closed_form(l, z);
      auto b = pell_bruteforce(l, z);
      CHECK(a.p0 == b.p0);
      CHECK(a.p1 == b.p1);
      CHECK(a.p2 == b.p2);
    }
  }
}

TEST_CASE("symmetry and scaling") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    auto z = random_shifts(rng, 4);
    auto zp = z;
    std::shuffle(zp.begin(), zp.end(), rng);
    cd c(U(rng), U(rng));
    std::vector<cd> zc;
    for (auto v : z) zc.push_back(c * v);
    for (int l = 0; l <= 8; ++l) {
      auto a = pell_closed_form(l, z);
      auto b = pell_closed_form(l, zp);
      CHECK(close(a.p1, b.p1, 1e-13));
      CHECK(close(a.p2, b.p2, 1e-13));
      auto s = pell_closed_form(l, zc);
      cd cl = std::pow(c, l);
      CHECK(close(s.p1, cl * a.p1, 1e-12));
      CHECK(close(s.p2, cl * a.p2, 1e-12));
    }
  }
}

TEST_CASE("pell_value, pell_series and the jet agree") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + trial % 4;
    auto z = random_shifts(rng, n);
    cd s(0.37, -0.21);
    auto series = pell_series(9, z, s);
    for (int l = 0; l <= 9; ++l) CHECK(close(pell_value(l, z, s), series[l], 1e-12));
    // s -> 0: P_l(s) = p1 s + p2 s^2 + O(s^3)
    for (int l = 2; l <= 6; ++l) {
      auto j = pell_closed_form(l, z);
      double h = 1e-4;
      cd plus = pell_value(l, z, cd(h, 0)), minus = pell_value(l, z, cd(-h, 0));
      cd d1 = (plus - minus) / (2 * h);
      cd d2 = (plus + minus) / (2 * h * h);
      CHECK(close(d1, j.p1, 1e-7));
      CHECK(close(d2, j.p2, 1e-5));
    }
  }
  // exact: P_l(s) at rational s from pell_value equals the series
  std::vector<GR> zr{GR(rational(1, 3), rational(-1, 2)), GR(2), GR(rational(-3, 4), 1)};
  GR s(rational(2, 5), rational(1, 7));
  auto ser = pell_series(7, zr, s);
  for (int l = 0; l <= 7; ++l) CHECK(pell_value(l, zr, s) == ser[l]);
}
