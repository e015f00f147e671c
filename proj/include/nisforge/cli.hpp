#pragma once
// Command-line front end; run_cli is what the nisforge binary calls.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "nisforge/io.hpp"

namespace nisforge {

struct BuildOptions {
  int p = 0, ext = 1;
  std::vector<int> N;     // shearing, e.g. 1,1,1
  std::vector<int> size;  // matrix parameters, e.g. 2,2
  int n = 0, m = 0, k = 1;
  int window = 3;
  int derived = 0;
  std::string density = "one";  // one | 1+u | exp
  std::string omega = "0";      // 0 | 1 | 2
  std::map<std::string, std::string> scalars;  // alpha, eps, lambda, a, b
};

// document for a catalog name, with the natural form attached when there is one
AlgebraDocument build_named(const std::string& name, const BuildOptions& o);
std::vector<std::pair<std::string, std::vector<std::string>>> catalog_families();

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nisforge
