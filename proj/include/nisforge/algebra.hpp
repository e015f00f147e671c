#pragma once
// Lie superalgebras given by structure constants.

#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "nisforge/linalg.hpp"

namespace nisforge {

struct BasisElt {
  std::string name;
  int parity = 0;
  std::optional<int> degree;
};

class SuperAlgebra {
 public:
  SuperAlgebra() = default;
  SuperAlgebra(Field F, std::vector<BasisElt> basis);

  const Field& field() const { return F_; }
  int dim() const { return (int)basis_.size(); }
  int dim_even() const;
  int dim_odd() const;
  const std::vector<BasisElt>& basis() const { return basis_; }
  std::vector<std::string> names() const;
  int parity(int i) const { return basis_[i].parity; }
  std::optional<int> degree(int i) const { return basis_[i].degree; }
  bool graded() const;
  int index_of(const std::string& name) const;  // -1 if missing

  // stores the canonical i<=j entry; passing i>j is translated by superantisymmetry
  void set_bracket(int i, int j, SVec v);
  SVec bracket(int i, int j) const;
  SVec bracket(const SVec& x, const SVec& y) const;
  // entries stored for i <= j
  const SVec& stored(int i, int j) const { return table_[(size_t)i * basis_.size() + j]; }

  bool has_squaring() const { return has_sq_; }
  void set_squaring(int i, SVec v);
  SVec squaring(int i) const;
  const std::vector<SVec>& squaring_table() const { return sq_; }

  int parity_of(const SVec& v) const;  // -1 if inhomogeneous, 0 for zero
  SVec ad(int i, const SVec& v) const { return bracket(SVec{{i, F_.one()}}, v); }
  Mat ad_matrix(const SVec& x) const;  // columns = images of basis vectors

  nlohmann::json meta;

 private:
  Field F_;
  std::vector<BasisElt> basis_;
  std::vector<SVec> table_;
  std::vector<SVec> sq_;
  bool has_sq_ = false;
};

using Triple = std::tuple<int, int, int>;

struct JacobiReport {
  std::vector<Triple> violations;
  long checked = 0;
  bool ok() const { return violations.empty(); }
};

// all == true: every basis triple; else n random triples from rng
JacobiReport check_jacobi(const SuperAlgebra& g, bool all, long n = 0, uint64_t seed = 1);
SVec jacobiator(const SuperAlgebra& g, int i, int j, int k);

// Subspaces are represented by their reduced echelon basis.
struct Subspace {
  int ambient = 0;
  std::vector<SVec> basis;
  int dim() const { return (int)basis.size(); }
};

Subspace span(const Field& F, int ambient, const std::vector<SVec>& vs);
bool subspace_contains(const Field& F, const Subspace& S, const SVec& v);
Subspace intersect(const Field& F, const Subspace& A, const Subspace& B);

struct SubalgebraResult {
  SuperAlgebra alg;
  std::vector<SVec> embedding;  // image of each new basis vector in the old algebra
};

Subspace derived_subspace(const SuperAlgebra& g);
SubalgebraResult derived_algebra(const SuperAlgebra& g);
Subspace center(const SuperAlgebra& g);
SubalgebraResult subalgebra(const SuperAlgebra& g, const Subspace& S);  // S must be closed

struct IdealCheck {
  bool ok = true;
  int witness_basis = -1;   // basis element of g
  int witness_vector = -1;  // index into the subspace basis
};
IdealCheck is_ideal(const SuperAlgebra& g, const Subspace& S);

struct QuotientResult {
  SuperAlgebra alg;
  std::vector<int> reps;  // basis indices of g used as representatives
  Subspace ideal;
  SVec project(const SVec& v) const;  // g -> quotient coordinates
  Field F;
};
// throws std::invalid_argument with a witness when S is not an ideal
QuotientResult quotient(const SuperAlgebra& g, const Subspace& S);

struct SimplicityResult {
  bool decided = false;  // false: refused (cap)
  bool simple = false;
  Subspace witness;  // proper ideal when not simple
};
SimplicityResult is_simple(const SuperAlgebra& g, int cap = 200);
// smallest ideal containing the vectors
Subspace ideal_generated(const SuperAlgebra& g, const std::vector<SVec>& vs);
Subspace subalgebra_generated(const SuperAlgebra& g, const std::vector<SVec>& vs);

// structure constants reassembled from a family of vectors closed under a bilinear map
// (helper for realizations: vector fields, matrices, generating functions)
template <class BracketFn>
SuperAlgebra from_realization(const Field& F, int ambient, const std::vector<SVec>& family,
                              std::vector<BasisElt> basis, BracketFn&& br);

// extends prescribed images of some basis vectors of src to a bracket-preserving linear map into tgt, using
// brackets that are multiples of a single basis vector; nullopt if some vector is unreachable or the map
// fails to preserve a bracket
std::optional<std::vector<SVec>> extend_homomorphism(const SuperAlgebra& src, const SuperAlgebra& tgt,
                                                     const std::vector<std::pair<int, SVec>>& gens);

std::string describe(const SuperAlgebra& g);

}  // namespace nisforge

#include "nisforge/algebra_impl.hpp"
