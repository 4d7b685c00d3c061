#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "regprod/mellin.hpp"
#include "regprod/numerics.hpp"
#include "regprod/regcore.hpp"
#include "regprod/sequences.hpp"
#include "regprod/verify.hpp"

using json = nlohmann::ordered_json;
using namespace regprod;

namespace {

constexpr const char* kSchema = "regprod/1";

[[noreturn]] void schema_error(const std::string& what) { fail(ErrorKind::SchemaError, what); }

template <class Real>
Real parse_number(const json& j, const std::string& where) {
  if (j.is_string()) return parse_real<Real>(j.get<std::string>());
  if (j.is_number()) {
    if constexpr (std::is_same_v<Real, double>) return j.get<double>();
    else return parse_real<Real>(j.dump());
  }
  schema_error(where + ": expected a number or decimal string");
}

template <class Real>
complex_t<Real> parse_complex(const json& j, const std::string& where) {
  if (j.is_array()) {
    if (j.size() != 2) schema_error(where + ": complex values are [re, im]");
    return {parse_number<Real>(j[0], where), parse_number<Real>(j[1], where)};
  }
  return {parse_number<Real>(j, where), Real(0)};
}

void allow_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) schema_error(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
      schema_error(where + ": unknown field '" + it.key() + "'");
  }
}

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) schema_error(where + ": missing field '" + key + "'");
  return j.at(key);
}

std::size_t parse_count(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) schema_error(where + ": expected a positive integer");
  return j.get<std::size_t>();
}

// Validates the whole sequence description before any computation.
void validate_sequence(const json& s) {
  const std::string w = "sequence";
  std::string type = require(s, "type", w).get<std::string>();
  if (type == "naturals") {
    allow_keys(s, {"type", "x", "from_zero"}, w);
    if (s.contains("x")) parse_complex<double>(s["x"], "sequence.x");
    if (s.contains("from_zero") && !s["from_zero"].is_boolean()) schema_error("sequence.from_zero: expected a boolean");
  } else if (type == "barnes") {
    allow_keys(s, {"type", "N", "omega", "z"}, w);
    parse_count(require(s, "N", w), "sequence.N");
    const auto& om = require(s, "omega", w);
    if (!om.is_array()) schema_error("sequence.omega: expected a list");
    for (const auto& o : om) parse_complex<double>(o, "sequence.omega");
    if (s.contains("z")) parse_complex<double>(s["z"], "sequence.z");
  } else if (type == "riemann_zeros") {
    allow_keys(s, {"type", "form", "K"}, w);
    if (s.contains("form")) {
      std::string f = s["form"].get<std::string>();
      if (f != "rho" && f != "gamma") schema_error("sequence.form: expected rho or gamma");
    }
    if (s.contains("K")) parse_count(s["K"], "sequence.K");
  } else if (type == "bessel") {
    allow_keys(s, {"type", "nu", "K"}, w);
    parse_number<double>(require(s, "nu", w), "sequence.nu");
    if (s.contains("K")) parse_count(s["K"], "sequence.K");
  } else {
    schema_error("sequence.type: unknown sequence '" + type + "'");
  }
}

template <class Real>
SequenceHandle<Real> build_sequence(const json& s, const Precision& p) {
  using C = complex_t<Real>;
  std::string type = s.at("type").get<std::string>();
  if (type == "naturals") {
    C x = s.contains("x") ? parse_complex<Real>(s["x"], "sequence.x") : C(0, 0);
    bool from_zero = s.value("from_zero", false);
    return naturals<Real>(x, from_zero, p);
  }
  if (type == "barnes") {
    BarnesSpec<Real> b;
    b.N = s.at("N").get<int>();
    for (const auto& o : s.at("omega")) b.omega.push_back(parse_complex<Real>(o, "sequence.omega"));
    b.z = s.contains("z") ? parse_complex<Real>(s["z"], "sequence.z") : C(1, 0);
    return barnes<Real>(b, p);
  }
  if (type == "riemann_zeros") {
    std::size_t K = s.contains("K") ? s["K"].get<std::size_t>() : kRiemannZeroCap;
    if (s.value("form", std::string("rho")) == "gamma") return riemann_zero_ordinates<Real>(K, p);
    return riemann_zeros<Real>(K, p);
  }
  BesselSpec<Real> b;
  b.nu = parse_number<Real>(s.at("nu"), "sequence.nu");
  b.K = s.contains("K") ? s["K"].get<std::size_t>() : 100;
  return bessel_zeros<Real>(b, p);
}

template <class Real>
std::vector<std::vector<complex_t<Real>>> parse_polys(const json& j) {
  if (!j.is_array() || j.empty()) schema_error("polynomials: expected a non-empty list");
  std::vector<std::vector<complex_t<Real>>> out;
  for (const auto& poly : j) {
    if (!poly.is_array() || poly.size() < 2) schema_error("polynomials: each entry is a coefficient list of degree >= 1");
    std::vector<complex_t<Real>> c;
    for (const auto& a : poly) c.push_back(parse_complex<Real>(a, "polynomials"));
    out.push_back(std::move(c));
  }
  return out;
}

template <class Real>
ShiftVector<Real> parse_shifts(const json& j) {
  if (!j.is_array() || j.empty()) schema_error("shifts: expected a non-empty list");
  ShiftVector<Real> z;
  for (const auto& v : j) z.push_back(parse_complex<Real>(v, "shifts"));
  return z;
}

template <class Real>
ShiftVector<Real> roots_as_shifts(const std::vector<std::vector<complex_t<Real>>>& polys) {
  ShiftVector<Real> z;
  for (const auto& p : polys)
    for (const auto& r : monic_roots<Real>(p))
      for (int k = 0; k < r.multiplicity; ++k) z.push_back(r.value);
  return z;
}

template <class Real>
json complex_json(const complex_t<Real>& v, int digits) {
  return json::array({to_decimal(Real(v.real()), digits), to_decimal(Real(v.imag()), digits)});
}

struct OracleOut {
  bool performed = false;
  double delta = 0;
  double estimate = 0;
  std::string route;
};

std::complex<double> oracle_dzeta(const SequenceHandle<double>& h, const ShiftVector<double>& z, OracleOut& o) {
  auto r = dzeta_multi_shift_at0(h, z, false);
  if (r.numeric_available) {
    o.route = "continuation_derivative";
    o.estimate += r.numeric_err;
    return r.numeric;
  }
  o.route = "weierstrass_log_sum";
  o.estimate += r.analytic_err;
  return r.analytic;
}

// Independent check in double: the s-derivative of the continued zeta when the
// provider has one, the truncated Weierstrass log-sum otherwise.
OracleOut run_oracle(const json& job, bool discrepancy_mode, const std::complex<double>& closed) {
  Precision p{16, 1e-8};
  auto h = build_sequence<double>(job.at("sequence"), p);
  ShiftVector<double> z = job.contains("shifts") ? parse_shifts<double>(job["shifts"])
                                                  : roots_as_shifts<double>(parse_polys<double>(job["polynomials"]));
  OracleOut o;
  o.performed = true;
  if (discrepancy_mode) {
    std::complex<double> diff = -oracle_dzeta(h, z, o);
    for (const auto& zj : z) diff += oracle_dzeta(h, {zj}, o);
    o.delta = std::abs(diff - closed);
  } else {
    o.delta = log_distance(-oracle_dzeta(h, z, o), closed);
  }
  return o;
}

int output_digits(int effective) { return effective >= 16 && effective <= 17 ? 17 : effective; }

template <class Real>
json eval_job(const json& job, int digits, bool oracle) {
  using C = complex_t<Real>;
  Precision p{digits, std::pow(10.0, -digits / 2.0)};
  auto h = build_sequence<Real>(job.at("sequence"), p);
  const int eff = effective_digits<Real>(p);
  const int od = output_digits(eff);
  const std::string mode = job.value("mode", std::string("eval"));
  RegProdResult<Real> res;
  ShiftVector<Real> z;
  if (job.contains("shifts")) {
    z = parse_shifts<Real>(job["shifts"]);
    res = regprod_multi(h, z);
  } else {
    auto polys = parse_polys<Real>(job["polynomials"]);
    res = regprod_monic_polys(h, polys);
    z = roots_as_shifts<Real>(polys);
  }
  C F = discrepancy(h, z);

  json out;
  out["schema"] = kSchema;
  out["mode"] = mode;
  out["sequence"] = h.name;
  out["log_value"] = complex_json<Real>(res.log_value, od);
  out["value"] = complex_json<Real>(res.value, od);
  out["route"] = route_name(res.route);
  out["discrepancy"] = complex_json<Real>(F, od);
  json oc;
  if (oracle) {
    bool dmode = mode == "discrepancy";
    C ref = dmode ? F : res.log_value;
    auto o = run_oracle(job, dmode, std::complex<double>(double(ref.real()), double(ref.imag())));
    oc["performed"] = true;
    oc["delta"] = o.delta;
    oc["route"] = o.route;
    oc["error_estimate"] = o.estimate;
  } else {
    oc["performed"] = false;
    oc["delta"] = nullptr;
  }
  out["oracle_check"] = oc;
  out["precision_digits"] = eff;
  out["warnings"] = res.warnings;
  return out;
}

json verify_report(const std::string& suite, bool& ok) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    schema_error("unknown suite '" + suite + "'");
  auto checks = run_suite(suite);
  ok = all_pass(checks);
  json out;
  out["schema"] = kSchema;
  out["mode"] = "verify";
  out["suite"] = suite;
  out["passed"] = ok;
  json arr = json::array();
  for (const auto& c : checks) {
    json e;
    e["group"] = c.group;
    e["name"] = c.name;
    e["delta"] = c.delta;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    if (c.informational) e["informational"] = true;
    arr.push_back(e);
  }
  out["checks"] = arr;
  return out;
}

json read_job(const std::string& path) {
  std::stringstream buf;
  if (path.empty() || path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) schema_error("cannot read spec file '" + path + "'");
    buf << in.rdbuf();
  }
  json job;
  try {
    job = json::parse(buf.str());
  } catch (const json::exception& e) {
    schema_error(std::string("spec is not valid JSON: ") + e.what());
  }
  allow_keys(job, {"sequence", "shifts", "polynomials", "precision", "mode", "suite"}, "spec");
  std::string mode = job.value("mode", std::string("eval"));
  if (mode == "verify") return job;
  if (mode != "eval" && mode != "discrepancy") schema_error("mode: expected eval, discrepancy or verify");
  validate_sequence(require(job, "sequence", "spec"));
  if (job.contains("shifts") == job.contains("polynomials"))
    schema_error("spec: exactly one of shifts and polynomials is required");
  if (job.contains("shifts")) parse_shifts<double>(job["shifts"]);
  else parse_polys<double>(job["polynomials"]);
  if (job.contains("precision")) parse_count(job["precision"], "precision");
  return job;
}

int exit_code_for(ErrorKind k) {
  switch (error_class(k)) {
    case ErrorClass::input: return 2;
    case ErrorClass::domain: return 3;
    case ErrorClass::convergence: return 4;
  }
  return 4;
}

int report_error(const std::string& kind, const std::string& cls, const std::string& message, int code) {
  json e;
  e["schema"] = kSchema;
  e["error"] = {{"kind", kind}, {"class", cls}, {"message", message}};
  std::cerr << e.dump() << "\n";
  return code;
}

const char* class_name(ErrorClass c) {
  switch (c) {
    case ErrorClass::input: return "input";
    case ErrorClass::domain: return "domain";
    case ErrorClass::convergence: return "convergence";
  }
  return "convergence";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zeta-regularized products of shifted sequences"};
  app.require_subcommand(1);
  std::string spec_path;
  int precision = 0;
  bool no_oracle = false;
  auto* eval = app.add_subcommand("eval", "Evaluate a JSON job spec");
  eval->add_option("--spec", spec_path, "JSON job file (stdin when omitted or '-')");
  eval->add_option("--precision", precision, "Working digits (<= 16 runs in double, up to 50 in multiprecision)")
      ->check(CLI::Range(1, 50));
  eval->add_flag("--no-oracle", no_oracle, "Skip the numerical cross-check");
  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "lerch, mizuno, barnes, riemann, bessel or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("SchemaError", "input", e.what(), 2);
  }

  try {
    if (*verify) {
      bool ok = false;
      std::cout << verify_report(suite, ok).dump(2) << "\n";
      return ok ? 0 : 1;
    }
    json job = read_job(spec_path);
    if (job.value("mode", std::string("eval")) == "verify") {
      bool ok = false;
      std::cout << verify_report(job.value("suite", std::string("all")), ok).dump(2) << "\n";
      return ok ? 0 : 1;
    }
    int digits = precision > 0 ? precision : job.value("precision", 16);
    if (digits > 50) schema_error("precision: at most 50 digits are supported");
    json out = digits <= 16 ? eval_job<double>(job, digits, !no_oracle) : eval_job<mp50>(job, digits, !no_oracle);
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const Error& e) {
    return report_error(error_kind_name(e.kind()), class_name(error_class(e.kind())), e.what(),
                        exit_code_for(e.kind()));
  } catch (const json::exception& e) {
    return report_error("SchemaError", "input", e.what(), 2);
  }
}
