// Runs every verification suite and prints one PASS/FAIL line per criterion.
#include <cstdio>
#include <cstring>
#include <iostream>

#include "nisforge/suites.hpp"

using namespace nisforge;

int main(int argc, char** argv) {
  SuiteContext ctx;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--quick")) ctx.quick = true;
    if (!std::strcmp(argv[i], "-v")) verbose = true;
  }
  int failed = 0;
  for (auto& s : suite_list()) {
    auto r = run_suite(std::to_string(s.number), ctx);
    std::printf("%s criterion %d (%s) [%.1fs]\n", r.pass() ? "PASS" : "FAIL", s.number, s.title.c_str(), r.seconds);
    for (auto& c : r.checks)
      if (verbose || !c.pass)
        std::printf("    %s %s%s%s\n", c.pass ? "ok  " : "FAIL", c.name.c_str(), c.detail.empty() ? "" : " :: ",
                    c.detail.c_str());
    std::fflush(stdout);
    if (!r.pass()) ++failed;
  }
  std::printf("%d of %zu criteria failed\n", failed, suite_list().size());
  return failed ? 1 : 0;
}
