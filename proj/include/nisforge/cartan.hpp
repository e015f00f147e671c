#pragma once
// Contragredient Lie (super)algebras g(A) built from a Cartan matrix, with the recipe form.

#include <map>

#include "nisforge/forms.hpp"

namespace nisforge {

struct CartanSpec {
  Field F;
  Mat A;
  std::vector<int> parities;
  std::optional<std::vector<Scalar>> eps;  // A = diag(eps) * B
  std::optional<Mat> B;
  int degree_cap = 40;
  std::string name;
};

// greedy scaling; fills eps/B when A is symmetrizable
bool symmetrize(CartanSpec& s);

CartanSpec catalog(const std::string& name, const Field& F, const std::map<std::string, Scalar>& params = {});
std::vector<std::string> catalog_names();

struct ChevalleyBasis {
  std::vector<int> x, y, h;  // basis indices of generators
  std::map<std::vector<int>, std::vector<int>> root_spaces;  // signed root -> basis indices
  std::vector<std::vector<int>> roots;                       // root of every basis element (zero for h)
};

struct CartanResult {
  SuperAlgebra alg;
  ChevalleyBasis chev;
  std::optional<BilinearForm> recipe;
  bool truncated = false;
  bool double_root_caveat = false;  // p = 2 superalgebra with g_{2 alpha} != 0
};

CartanResult build_contragredient(const CartanSpec& spec);

// derived algebra modulo its center
struct SimpleRelative {
  SuperAlgebra alg;
  SubalgebraResult derived;
  Subspace center;
  std::optional<BilinearForm> form;  // induced from the given form, when supplied
  bool simple = false;
};
SimpleRelative quotient_to_simple(const SuperAlgebra& g, const std::optional<BilinearForm>& B = std::nullopt);

// x_alpha, y_alpha built by the same bracket word for each positive root; returns (root, (x,y)) per root
struct RootPairing {
  std::vector<int> root;
  std::vector<int> word;
  Scalar value;
};
std::vector<RootPairing> diagonal_pairings(const CartanResult& r);

}  // namespace nisforge
