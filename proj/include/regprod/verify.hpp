#pragma once

#include <string>
#include <vector>

namespace regprod {

// One measured identity check. Informational entries are reported but do not
// decide pass/fail of a suite.
struct Check {
  std::string group;
  std::string name;
  double delta = 0;
  double tolerance = 0;
  bool pass = false;
  bool informational = false;
};

// Individual check groups (double precision, fixed seeds).
std::vector<Check> check_pell();
std::vector<Check> check_lerch();
std::vector<Check> check_mizuno();
std::vector<Check> check_second_lerch();
std::vector<Check> check_barnes_oracle();
std::vector<Check> check_barnes_discrepancy();
std::vector<Check> check_mu_collapse();
std::vector<Check> check_riemann();
std::vector<Check> check_bessel();
std::vector<Check> check_properties();

const std::vector<std::string>& suite_names();
// lerch, mizuno, barnes, riemann, bessel or all; InvalidArgument otherwise.
std::vector<Check> run_suite(const std::string& suite);

bool all_pass(const std::vector<Check>& checks);

}  // namespace regprod
