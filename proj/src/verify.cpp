#include "regprod/verify.hpp"

#include <algorithm>
#include <chrono>
#include <complex>
#include <functional>
#include <random>

#include "regprod/error.hpp"
#include "regprod/exact.hpp"
#include "regprod/mellin.hpp"
#include "regprod/numerics.hpp"
#include "regprod/plpoly.hpp"
#include "regprod/regcore.hpp"
#include "regprod/sequences.hpp"

namespace regprod {
namespace {

using C = std::complex<double>;
using GR = GaussianRational;

constexpr double kEuler = 0.57721566490153286061;

double rel(const C& a, const C& b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

double uni(std::mt19937& g, double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }

C rand_disk(std::mt19937& g, double r) {
  while (true) {
    C z(uni(g, -r, r), uni(g, -r, r));
    if (std::abs(z) <= r) return z;
  }
}

// Worst delta over a family of trials; a thrown library error counts as a failure.
struct Worst {
  std::string group, name;
  double tol;
  double delta = 0;
  bool failed = false;

  void add(double d) {
    if (!(d <= delta)) delta = d;  // NaN propagates as a failure
    if (!(d <= tol)) failed = true;
  }
  template <class F>
  void trial(F&& f) {
    try {
      add(f());
    } catch (const Error&) {
      delta = std::numeric_limits<double>::infinity();
      failed = true;
    }
  }
  Check done(bool informational = false) const {
    return Check{group, name, delta, tol, !failed, informational};
  }
};

Check make(const std::string& group, const std::string& name, double delta, double tol, bool info = false) {
  return Check{group, name, delta, tol, delta <= tol, info};
}

C dz_numeric(const SequenceHandle<double>& seq, const ShiftVector<double>& z) {
  auto r = dzeta_multi_shift_at0(seq, z, false);
  if (!r.numeric_available) fail(ErrorKind::TruncationInsufficient, "no numeric route for " + seq.name);
  return r.numeric;
}

C dz_analytic(const SequenceHandle<double>& seq, const ShiftVector<double>& z) {
  return dzeta_multi_shift_at0(seq, z, false).analytic;
}

C barnes_dzeta0(const std::vector<C>& omega, const C& z) {
  int N = static_cast<int>(omega.size());
  return zeta_data_via_mellin(barnes_theta<double>(BarnesSpec<double>{N, omega, z}), N).zeta_prime0;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::vector<Check> check_pell() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 g(1001);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  Worst exact{"pell", "closed_vs_bruteforce_rational", 0};
  Worst flt{"pell", "closed_vs_bruteforce_float_rel", 1e-12};
  for (int v = 0; v < 200; ++v) {
    int n = 1 + v % 5;
    std::vector<GR> zr(n);
    std::vector<C> zf(n);
    for (int j = 0; j < n; ++j) {
      zr[j] = GR(rational(num(g), den(g)), rational(num(g), den(g)));
      zf[j] = C(zr[j].re.convert_to<double>(), zr[j].im.convert_to<double>());
    }
    for (int l = 0; l <= 10; ++l) {
      auto a = pell_closed_form<GR>(l, zr);
      auto b = pell_bruteforce<GR>(l, zr);
      exact.add((a.p0 == b.p0 && a.p1 == b.p1 && a.p2 == b.p2) ? 0.0 : 1.0);
      auto af = pell_closed_form<C>(l, zf);
      auto bf = pell_bruteforce<C>(l, zf);
      double scale = std::max({1.0, std::abs(bf.p0), std::abs(bf.p1), std::abs(bf.p2)});
      flt.add(std::max({std::abs(af.p0 - bf.p0), std::abs(af.p1 - bf.p1), std::abs(af.p2 - bf.p2)}) / scale);
    }
  }
  return {exact.done(), flt.done(), make("pell", "runtime_seconds", elapsed(t0), 10)};
}

std::vector<Check> check_lerch() {
  std::mt19937 g(2002);
  Worst closed{"lerch", "closed_form_rel", 1e-10};
  Worst oracle{"lerch", "mellin_oracle_rel", 1e-10};
  for (int i = 0; i < 25; ++i) {
    C x(uni(g, 0.02, 5), uni(g, -2, 2));
    C expect = std::sqrt(2 * M_PI) / std::exp(log_gamma(x));
    auto h = naturals<double>(x, true);
    closed.trial([&] { return rel(regprod_multi(h, {C(0, 0)}).value, expect); });
    oracle.trial([&] { return rel(std::exp(-zeta_data_via_mellin(*h.theta, 1).zeta_prime0), expect); });
  }
  return {closed.done(), oracle.done()};
}

std::vector<Check> check_mizuno() {
  std::mt19937 g(3003);
  auto nat = naturals<double>(C(0, 0), false);
  Worst value{"mizuno", "product_rel", 1e-10};
  Worst disc{"mizuno", "discrepancy_abs", 1e-12};
  for (int i = 0; i < 25; ++i) {
    ShiftVector<double> z;
    int n = 1 + i % 4;
    while (static_cast<int>(z.size()) < n) {
      C w = rand_disk(g, 2.5);
      if (std::abs(w - std::round(w.real())) > 0.05 || w.real() < 0.5) z.push_back(w);
    }
    C expect(1, 0);
    for (const auto& zj : z) expect *= std::sqrt(2 * M_PI) / std::exp(log_gamma(C(1, 0) - zj));
    value.trial([&] { return rel(regprod_multi(nat, z).value, expect); });
    disc.trial([&] { return std::abs(discrepancy(nat, z)); });
  }
  return {value.done(), disc.done()};
}

std::vector<Check> check_second_lerch() {
  std::mt19937 g(4004);
  Worst w{"second_lerch", "product_rel", 1e-10};
  for (int i = 0; i < 10; ++i) {
    double x = uni(g, 0.1, 4), y = uni(g, 0.1, 3);
    auto h = naturals<double>(C(x, 0), true);
    C expect = 2 * M_PI / std::exp(log_gamma(C(x, y)) + log_gamma(C(x, -y)));
    w.trial([&] { return rel(regprod_monic_polys(h, {{C(1, 0), C(0, 0), C(y * y, 0)}}).value, expect); });
  }
  return {w.done()};
}

std::vector<Check> check_barnes_oracle() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 g(5005);
  std::vector<Check> out;
  for (int N : {2, 3}) {
    Worst w{"barnes", "oracle_vs_closed_rel_N" + std::to_string(N), N == 2 ? 1e-7 : 1e-6};
    for (int trial = 0; trial < 8; ++trial) {
      BarnesSpec<double> b;
      b.N = N;
      for (int j = 0; j < N; ++j) b.omega.push_back(C(uni(g, 0.5, 2), 0));
      b.z = C(uni(g, 0.3, 2), 0);
      ShiftVector<double> z;
      for (int j = 0; j <= trial % 3; ++j) z.push_back(rand_disk(g, 1));
      w.trial([&] {
        auto h = barnes(b);
        return rel(std::exp(-dz_numeric(h, z)), regprod_multi(h, z).value);
      });
    }
    out.push_back(w.done());
  }
  out.push_back(make("barnes", "oracle_runtime_seconds", elapsed(t0), 300));
  return out;
}

std::vector<Check> check_barnes_discrepancy() {
  std::vector<Check> out;
  std::vector<C> om{C(1, 0), C(1, 0)};
  auto bar = barnes<double>(BarnesSpec<double>{2, om, C(1, 0)});
  {
    ShiftVector<double> z{C(-0.3, 0), C(-0.1, 0)};
    Worst f{"barnes_discrepancy", "example_0.01", 1e-7};
    f.trial([&] { return std::abs(discrepancy(bar, z) - C(0.01, 0)); });
    out.push_back(f.done());
  }
  std::mt19937 g(6006);
  Worst formula{"barnes_discrepancy", "formula_vs_general_form", 1e-7};
  Worst oracle{"barnes_discrepancy", "oracle_difference", 1e-7};
  for (int i = 0; i < 8; ++i) {
    ShiftVector<double> z{rand_disk(g, 0.9), rand_disk(g, 0.9)};
    C cor = (z[0] - z[1]) * (z[0] - z[1]) / 4.0;
    formula.trial([&] { return std::abs(discrepancy(bar, z) - cor); });
    oracle.trial([&] {
      C diff = dz_numeric(bar, {z[0]}) + dz_numeric(bar, {z[1]}) - dz_numeric(bar, z);
      return std::abs(diff - cor);
    });
  }
  out.push_back(formula.done());
  out.push_back(oracle.done());
  // RegProd prod_j (k.omega + z_j) prod_j Gamma_2(z_j), z_j > 0, on the lattice
  // based at 1 with shifts 1 - z_j.
  Worst display{"barnes_discrepancy", "final_display_exponent", 1e-7};
  for (auto om2 : {std::vector<C>{C(1, 0), C(1, 0)}, std::vector<C>{C(1, 0), C(1.7, 0)}}) {
    auto h = barnes<double>(BarnesSpec<double>{2, om2, C(1, 0)});
    double w12 = (om2[0] * om2[1]).real();
    for (int n = 1; n <= 3; ++n) {
      std::vector<double> zs;
      for (int j = 0; j < n; ++j) zs.push_back(uni(g, 0.3, 1.9));
      display.trial([&] {
        ShiftVector<double> w;
        for (double zj : zs) w.push_back(C(1 - zj, 0));
        C lhs = regprod_multi(h, w).log_value;
        for (double zj : zs) lhs += barnes_dzeta0(om2, C(zj, 0));
        double sq = 0, cross = 0;
        for (int i = 0; i < n; ++i) {
          sq += zs[i] * zs[i];
          for (int j = i + 1; j < n; ++j) cross += zs[i] * zs[j];
        }
        double rhs = (1 - 1.0 / n) * sq / (2 * w12) - cross / (n * w12);
        return std::abs(lhs - C(rhs, 0));
      });
    }
  }
  out.push_back(display.done());
  return out;
}

std::vector<Check> check_mu_collapse() {
  std::mt19937 g(7007);
  std::vector<Check> out;
  auto nat = naturals<double>(C(0, 0), false);
  auto rie = riemann_zeros<double>(100);
  auto bes = bessel_zeros<double>(BesselSpec<double>{1.5, 100});
  for (const SequenceHandle<double>* seq : {&nat, &rie, &bes}) {
    Worst f{"mu_collapse", seq->name + "_formula", 1e-12};
    Worst o{"mu_collapse", seq->name + "_oracle", 1e-8};
    for (int i = 0; i < 25; ++i) {
      ShiftVector<double> z;
      for (int j = 0; j < 2 + i % 3; ++j) z.push_back(rand_disk(g, 0.9));
      f.trial([&] { return std::abs(discrepancy(*seq, z)); });
      // Riemann has no continuation in s: its truncated log-sum route is the oracle.
      auto route = seq->zeta ? dz_numeric : dz_analytic;
      o.trial([&] {
        C diff = -route(*seq, z);
        for (const auto& zj : z) diff += route(*seq, {zj});
        return std::abs(diff);
      });
    }
    out.push_back(f.done());
    out.push_back(o.done());
  }
  return out;
}

std::vector<Check> check_riemann() {
  std::vector<Check> out;
  auto tab = riemann_zero_table(100);
  double worst_res = 0;
  for (double r : tab.residuals) worst_res = std::max(worst_res, r);
  out.push_back(make("riemann", "zero_residual_max", worst_res, 1e-8));
  out.push_back(make("riemann", "first_zero", std::abs(tab.ordinates[0] - 14.134725141734693), 1e-8));

  auto rz = riemann_zeros<double>(100);
  {
    Worst d{"riemann", "D_closed_vs_sqrt2_xi_rel", 1e-12};
    d.trial([&] { return rel(std::exp(log_D_single(rz, C(0, 0))), C(std::sqrt(0.5), 0)); });
    std::mt19937 g(8008);
    for (int i = 0; i < 10; ++i) {
      C s = rand_disk(g, 2);
      d.trial([&] { return rel(std::exp(log_D_single(rz, s)), std::sqrt(2.0) * riemann_xi(s)); });
    }
    out.push_back(d.done());
  }
  {
    std::mt19937 g(8009);
    Worst fe{"riemann", "xi_functional_equation_rel", 1e-10};
    for (int i = 0; i < 20; ++i) {
      C s(uni(g, -0.9, 0.45), uni(g, -20, 20));
      fe.trial([&] {
        C direct = 0.5 * s * (s - 1.0) * std::exp(-s / 2.0 * std::log(M_PI) + log_gamma(s / 2.0)) * riemann_zeta(s);
        return rel(direct, riemann_xi(C(1, 0) - s));
      });
    }
    out.push_back(fe.done());
  }

  // D(s) assembled from Z(0), Z'(0), an FP Z(1) constant and the truncated
  // Weierstrass product over K zeros, against sqrt2 xi(s) on |s| <= 2.
  std::vector<C> grid;
  for (double r : {0.5, 1.0, 1.5, 2.0})
    for (int k = 0; k < 16; ++k) grid.push_back(std::polar(r, 2 * M_PI * k / 16));
  auto residual = [&](double fp, std::size_t K) {
    SequenceHandle<double> h = rz;
    h.zeta_data.poles[1].finite_part = C(fp, 0);
    auto els = rz.elements(2 * K);
    h.log_delta = [els](const C& s) {
      C acc(0, 0);
      for (const auto& e : els) acc += std::log(C(1, 0) - s / e.value) + s / e.value;
      return acc;
    };
    double worst = 0;
    for (const auto& s : grid) worst = std::max(worst, rel(std::exp(log_D_single(h, s)), std::sqrt(2.0) * riemann_xi(s)));
    return worst;
  };
  const double fp_stated = 1 - 0.5 * std::log(2.0) + kEuler / 2;
  const double fp_consistent = riemann_inverse_zero_sum<double>();
  const std::size_t Ks[] = {10, 25, 50, 100};
  for (auto [fp, tag, info] : {std::tuple{fp_stated, "stated_fp", false}, std::tuple{fp_consistent, "consistent_fp", true}}) {
    double prev = 1e300;
    bool mono = true;
    double last = 0;
    for (std::size_t K : Ks) {
      double r = residual(fp, K);
      if (!(r < prev)) mono = false;
      prev = last = r;
      out.push_back(make("riemann", std::string("weierstrass_residual_") + tag + "_K" + std::to_string(K), r, 1e-3, true));
    }
    out.push_back(make("riemann", std::string("weierstrass_monotone_") + tag, mono ? 0.0 : 1.0, 0, info));
    out.push_back(make("riemann", std::string("weierstrass_K100_") + tag, last, 1e-3, info));
  }
  return out;
}

std::vector<Check> check_bessel() {
  std::vector<Check> out;
  for (double nu : {0.5, 1.0, 1.5, 2.7}) {
    std::string tag = "nu" + to_decimal(nu, 3);
    BesselDiagnostics<double> diag;
    auto h = bessel_zeros<double>(BesselSpec<double>{nu, 100}, {}, &diag);
    C expect = std::log(std::sqrt(2 * M_PI) / (std::pow(2.0, nu) * std::tgamma(nu + 1))) - C(0, M_PI / 2 * (nu + 0.5));
    Worst closed{"bessel", "special_value_closed_" + tag, 1e-6};
    closed.trial([&] { return log_distance(scale_law(h, C(M_PI, 0)).log_value, expect); });
    out.push_back(closed.done());
    Worst oracle{"bessel", "special_value_oracle_" + tag, 1e-6};
    oracle.trial([&] {
      C logv = h.zeta_data.zeta0 * std::log(M_PI) - dz_numeric(h, {C(0, 0)});
      return log_distance(logv, expect);
    });
    out.push_back(oracle.done());
    out.push_back(make("bessel", "dzeta_star0_measured_" + tag,
                       std::abs(diag.dzeta_star0_measured - bessel_dzeta_star0(nu)), 1e-6));
    double spread = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) spread = std::max(spread, std::abs(diag.fp_star1[i] - diag.fp_star1[j]));
    out.push_back(make("bessel", "fp_star1_K_2K_4K_spread_" + tag, spread, 1e-8));
    out.push_back(make("bessel", "fp_star1_minus_i_pi_" + tag, std::abs(diag.fp_star1[0] - C(0, M_PI)), 1e-9, true));
    if (nu == 0.5) {
      // j_k/pi = k: every constant follows from Riemann zeta.
      C z0 = riemann_zeta(C(0, 0));
      C dz0 = hurwitz_zeta_ds(C(0, 0), C(1, 0));
      double d = std::abs(h.zeta_data.zeta0 - 2.0 * z0);
      d = std::max(d, std::abs(diag.dzeta_star0_measured - (C(0, -M_PI) * z0 + 2.0 * dz0)));
      d = std::max(d, std::abs(diag.fp_J1 - C(kEuler, 0)));
      d = std::max(d, std::abs(diag.fp_star1[0] - C(0, M_PI)));
      out.push_back(make("bessel", "nu0.5_vs_riemann_constants", d, 1e-9));
    }
  }
  return out;
}

std::vector<Check> check_properties() {
  std::vector<Check> out;
  std::mt19937 g(9009);
  auto nat = naturals<double>(C(0, 0), false);
  auto bar = barnes<double>(BarnesSpec<double>{2, {C(1, 0), C(1.4, 0)}, C(0.6, 0)});
  auto rie = riemann_zeros<double>(100);
  auto bes = bessel_zeros<double>(BesselSpec<double>{2.7, 100});
  Worst forms{"properties", "form_a_vs_form_b", 1e-9};
  Worst perm{"properties", "permutation_invariance", 1e-12};
  Worst equal{"properties", "equal_shift_discrepancy", 1e-12};
  for (const SequenceHandle<double>* seq : {&nat, &bar, &rie, &bes}) {
    for (int i = 0; i < 12; ++i) {
      ShiftVector<double> z;
      for (int j = 0; j < 1 + i % 4; ++j) z.push_back(rand_disk(g, 1.2));
      forms.trial([&] {
        auto f = log_D_multi_forms(*seq, z);
        return log_distance(f.form_a, f.form_b);
      });
      perm.trial([&] {
        ShiftVector<double> p(z.rbegin(), z.rend());
        std::rotate(p.begin(), p.begin() + 1, p.end());
        return log_distance(log_D_multi(*seq, z), log_D_multi(*seq, p)) / std::max(1.0, std::abs(log_D_multi(*seq, z)));
      });
      C w = rand_disk(g, 1.2);
      equal.trial([&] { return std::abs(discrepancy(*seq, ShiftVector<double>(2 + i % 3, w))); });
    }
  }
  out.push_back(forms.done());
  out.push_back(perm.done());
  out.push_back(equal.done());
  Worst hd{"properties", "hurwitz_derivative_vs_differences", 1e-9};
  for (int i = 0; i < 20; ++i) {
    C s(uni(g, -2, 4), uni(g, -4, 4));
    C a(uni(g, 0.2, 3), uni(g, -1, 1));
    if (std::abs(s - C(1, 0)) < 0.2) continue;
    hd.trial([&] {
      auto cd = [&](double h) { return (hurwitz_zeta(s + h, a) - hurwitz_zeta(s - h, a)) / (2 * h); };
      double h = 1e-3;
      C d1 = cd(h), d2 = cd(h / 2), d3 = cd(h / 4);
      C r1 = (4.0 * d2 - d1) / 3.0, r2 = (4.0 * d3 - d2) / 3.0;
      C rr = (16.0 * r2 - r1) / 15.0;
      return std::abs(rr - hurwitz_zeta_ds(s, a)) / std::max(1.0, std::abs(rr));
    });
  }
  out.push_back(hd.done());
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lerch", "mizuno", "barnes", "riemann", "bessel", "all"};
  return names;
}

std::vector<Check> run_suite(const std::string& suite) {
  using Fn = std::vector<Check> (*)();
  std::vector<Fn> fns;
  if (suite == "lerch") fns = {check_lerch, check_second_lerch, check_mizuno};
  else if (suite == "mizuno") fns = {check_mizuno, check_pell};
  else if (suite == "barnes") fns = {check_barnes_oracle, check_barnes_discrepancy};
  else if (suite == "riemann") fns = {check_riemann};
  else if (suite == "bessel") fns = {check_bessel};
  else if (suite == "all")
    fns = {check_pell,         check_lerch,       check_mizuno,  check_second_lerch, check_barnes_oracle,
           check_barnes_discrepancy, check_mu_collapse, check_riemann, check_bessel,       check_properties};
  else
    fail(ErrorKind::InvalidArgument, "unknown suite '" + suite + "'");
  std::vector<Check> out;
  for (auto fn : fns) {
    auto part = fn();
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.informational || c.pass; });
}

}  // namespace regprod
