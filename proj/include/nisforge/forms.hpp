#pragma once
// Invariant supersymmetric bilinear forms: solving, nondegeneracy search, radicals.

#include <optional>
#include <string>

#include "nisforge/algebra.hpp"

namespace nisforge {

struct BilinearForm {
  Mat gram;
  int parity = 0;
  Scalar operator()(const SVec& x, const SVec& y) const;
};

struct FormSpace {
  std::vector<BilinearForm> basis;
  int parity = 0;
  int dim() const { return (int)basis.size(); }
};

struct FormOptions {
  bool all_triples = false;           // use every basis element as the acting one
  std::optional<int> degree_sum;      // only pair degrees summing to this value
  std::vector<SVec> extra_equations;  // linear conditions on the unknown layout (advanced)
};

FormSpace invariant_forms(const SuperAlgebra& g, int parity, const FormOptions& opt = {});

// Same system with normalisation constraints B(e_i, e_j) = value; nullopt if inconsistent.
struct GramConstraint {
  int i, j;
  Scalar value;
};
std::optional<BilinearForm> invariant_form_with(const SuperAlgebra& g, int parity,
                                                const std::vector<GramConstraint>& cs,
                                                const FormOptions& opt = {});

struct NisResult {
  std::optional<BilinearForm> form;
  std::string method;  // exhaustive | symbolic | probabilistic | empty
  bool probabilistic = false;
  bool certified_none = false;
  long candidates = 0;
};
NisResult find_nis(const Field& F, const FormSpace& space, uint64_t seed = 7);

BilinearForm combine(const Field& F, const FormSpace& space, const std::vector<Scalar>& coeffs);
bool is_nondegenerate(const Field& F, const BilinearForm& B);
bool is_supersymmetric(const SuperAlgebra& g, const BilinearForm& B);

struct InvarianceReport {
  bool ok = true;
  long checked = 0;
  std::optional<Triple> witness;
};
// all == false: n random triples
InvarianceReport check_invariance(const SuperAlgebra& g, const BilinearForm& B, bool all = true, long n = 0,
                                  uint64_t seed = 3);

// kernel of the Gram matrix; throws std::logic_error if it is not an ideal
Subspace form_radical(const SuperAlgebra& g, const BilinearForm& B);
// form induced on g / radical
BilinearForm descend(const QuotientResult& q, const BilinearForm& B);
BilinearForm restrict_form(const SubalgebraResult& s, const BilinearForm& B);

struct GradedPairingReport {
  bool ok = true;
  int d = 0, h = 0;
  std::vector<std::string> violations;
};
GradedPairingReport graded_pairing_check(const SuperAlgebra& g, const BilinearForm& B);

nlohmann::json gram_json(const SuperAlgebra& g, const BilinearForm& B);
std::string gram_text(const SuperAlgebra& g, const BilinearForm& B);

// a small generating set of basis elements (greedy)
std::vector<int> generating_set(const SuperAlgebra& g);

}  // namespace nisforge
