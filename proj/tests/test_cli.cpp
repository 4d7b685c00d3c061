#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(const std::string& args, const std::string& stdin_text = "") {
  fs::path dir = fs::temp_directory_path() / ("regprod_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  fs::path in = dir / "in.json", out = dir / "out.txt", err = dir / "err.txt";
  std::ofstream(in) << stdin_text;
  std::string cmd = std::string("\"") + REGPROD_CLI_PATH + "\" " + args + " < \"" + in.string() + "\" > \"" +
                    out.string() + "\" 2> \"" + err.string() + "\"";
  int status = std::system(cmd.c_str());
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  fs::remove_all(dir);
  return r;
}

double num(const json& j) { return std::stod(j.get<std::string>()); }

}  // namespace

TEST_CASE("eval: Lerch case returns sqrt(2 pi)") {
  auto r = cli("eval", R"({"sequence":{"type":"naturals"},"shifts":[[0,0]]})");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["schema"] == "regprod/1");
  CHECK(std::abs(num(j["value"][0]) - std::sqrt(2 * M_PI)) < 1e-15);
  CHECK(num(j["value"][1]) == 0);
  CHECK(j["route"] == "closed_form");
  CHECK(j["oracle_check"]["performed"] == true);
  CHECK(j["oracle_check"]["delta"].get<double>() < 1e-10);
  CHECK(j["precision_digits"] == 16);
}

TEST_CASE("eval: Riemann shift gives sqrt2 xi(2)") {
  auto r = cli("eval", R"({"sequence":{"type":"riemann_zeros","form":"rho","K":100},"shifts":[[-1,0]]})");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  // xi(2) = pi/6.
  CHECK(std::abs(num(j["value"][0]) - std::sqrt(2.0) * M_PI / 6) < 1e-14);
}

TEST_CASE("eval: Barnes discrepancy mode") {
  auto r = cli("eval",
               R"({"sequence":{"type":"barnes","N":2,"omega":[[1,0],[1,0]]},"shifts":[[-0.3,0],[-0.1,0]],"mode":"discrepancy"})");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["mode"] == "discrepancy");
  CHECK(std::abs(num(j["discrepancy"][0]) - 0.01) < 1e-12);
  CHECK(j["oracle_check"]["delta"].get<double>() < 1e-7);
}

TEST_CASE("eval: polynomial input and multiprecision output") {
  auto r = cli("eval --precision 30",
               R"({"sequence":{"type":"naturals","x":0.5,"from_zero":true},"polynomials":[[1,0,["0.25","0"]]]})");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  // prod ((k + 1/2)^2 + 1/4) = 2 pi / |Gamma(1/2 + i/2)|^2 = 2 cosh(pi/2).
  std::string v = j["value"][0];
  CHECK(v.size() >= 30);
  CHECK(v.substr(0, 22) == "5.01835695731611356401");
  CHECK(j["precision_digits"] == 30);
}

TEST_CASE("eval: spec file, --no-oracle and byte-identical output") {
  auto path = fs::temp_directory_path() / ("regprod_spec_" + std::to_string(::getpid()) + ".json");
  std::ofstream(path) << R"({"sequence":{"type":"bessel","nu":1.5,"K":100},"shifts":[[0.4,0.1],[-0.2,0]]})";
  auto a = cli("eval --spec " + path.string());
  auto b = cli("eval --spec " + path.string());
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto c = cli("eval --no-oracle --spec " + path.string());
  auto j = json::parse(c.out);
  CHECK(j["oracle_check"]["performed"] == false);
  CHECK(j["oracle_check"]["delta"].is_null());
  CHECK(j["value"] == json::parse(a.out)["value"]);
  fs::remove(path);
}

TEST_CASE("eval: exit codes and error documents") {
  auto schema = cli("eval", R"({"sequence":{"type":"naturals"},"shifts":[[0.3,0]],"extra":1})");
  CHECK(schema.code == 2);
  auto e = json::parse(schema.err);
  CHECK(e["error"]["kind"] == "SchemaError");
  CHECK(cli("eval", "not json").code == 2);
  CHECK(cli("eval", R"({"sequence":{"type":"naturals"}})").code == 2);
  CHECK(cli("eval", R"({"sequence":{"type":"naturals"},"shifts":[[1,0]],"polynomials":[[1,0]]})").code == 2);
  CHECK(cli("eval", R"({"sequence":{"type":"barnes","N":2,"omega":[[1,0]]},"shifts":[[0.5,0]]})").code == 2);

  auto domain = cli("eval", R"({"sequence":{"type":"naturals"},"shifts":[[2,0]]})");
  CHECK(domain.code == 3);
  CHECK(json::parse(domain.err)["error"]["kind"] == "ShiftOnSequence");

  // The closed form exists but the cross-check cannot pass the computed zeros.
  const char* far = R"({"sequence":{"type":"bessel","nu":1.5,"K":100},"shifts":[[400.5,0.3]]})";
  auto conv = cli("eval", far);
  CHECK(conv.code == 4);
  CHECK(json::parse(conv.err)["error"]["class"] == "convergence");
  CHECK(cli("eval --no-oracle", far).code == 0);
}

TEST_CASE("verify") {
  auto r = cli("verify --suite lerch");
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["suite"] == "lerch");
  CHECK(j["checks"].size() >= 4);
  CHECK(cli("verify --suite nope").code == 2);
  auto viaspec = cli("eval", R"({"mode":"verify","suite":"mizuno"})");
  CHECK(viaspec.code == 0);
  CHECK(json::parse(viaspec.out)["suite"] == "mizuno");
}
