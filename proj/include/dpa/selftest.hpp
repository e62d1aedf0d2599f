#pragma once

#include <string>
#include <vector>

#include "dpa/json_io.hpp"

namespace dpa::selftest {

struct Check {
  std::string name;
  std::size_t instances = 0;
  bool passed = false;
  std::string detail;
};

struct Options {
  std::uint64_t seed = 12345;
  std::string only_quiver;  // restrict fixture-driven suites to one fixture
  int jobs = 0;             // OpenMP thread override; 0 keeps the default
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  bool passed = true;
};

// Suites: linalg, forms, roots, ext, reflect, braid, serre, coxeter.
const std::vector<std::string>& suite_names();

Report run_suite(const std::string& name, const Options& opt);
std::vector<Report> run_all(const Options& opt);

// The acceptance battery: eleven checks, fixed order, each with its instance
// count.
std::vector<Check> acceptance(const Options& opt);

Json report_to_json(const Report& r);

}  // namespace dpa::selftest
