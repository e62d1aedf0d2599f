// Acceptance battery: one line per criterion, nonzero exit if any fails.
#include <dpa/selftest.hpp>

#include <cstdio>

int main() {
  using namespace dpa::selftest;
  std::vector<Check> checks = acceptance(Options{});
  bool ok = true;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const Check& c = checks[k];
    ok = ok && c.passed;
    std::printf("[%2zu/%zu] %s  (%zu instances): %s\n", k + 1, checks.size(), c.name.c_str(),
                c.instances, c.passed ? "PASS" : "FAIL");
    if (!c.passed && !c.detail.empty()) std::printf("        %s\n", c.detail.c_str());
  }
  std::printf("acceptance: %s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}
