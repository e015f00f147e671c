#pragma once
// Verification suites: each one reproduces one group of claims and reports per-check PASS/FAIL.

#include <functional>
#include <string>
#include <vector>

#include "nisforge/forms.hpp"

namespace nisforge {

struct Check {
  std::string name;
  std::string anchor;  // which claim it reproduces
  bool pass = false;
  std::string detail;
};

struct GradedRecord {
  std::string name;
  GradedPairingReport report;
};

struct SuiteContext {
  uint64_t seed = 7;
  bool quick = false;
  std::vector<GradedRecord> graded;  // filled by suites with graded algebras carrying a NIS
  void record(const std::string& name, const SuperAlgebra& g, const BilinearForm& B);
};

struct SuiteResult {
  int number = 0;
  std::string name;
  std::vector<Check> checks;
  double seconds = 0;
  bool pass() const;
};

struct SuiteInfo {
  int number;
  std::string name;
  std::string title;
};
const std::vector<SuiteInfo>& suite_list();

// by name or number ("1".."12"); also "dimensions" (dimension formulas only)
SuiteResult run_suite(const std::string& name, SuiteContext& ctx);

nlohmann::json suite_json(const SuiteResult& r);

}  // namespace nisforge
