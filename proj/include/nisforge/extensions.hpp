#pragma once
// Double extensions (construction and recognition) and queerification at p = 2.

#include "nisforge/forms.hpp"
#include "nisforge/matrix_alg.hpp"

namespace nisforge {

struct DExtensionData {
  SuperAlgebra base;
  BilinearForm form;
  Mat D;  // columns = images of basis vectors
  int parity_D = 0;
};

struct DataCheck {
  bool ok = true;
  std::string reason;
  std::optional<std::pair<int, int>> witness;
};
// derivation property, D-skewness of the form, D^2 = 0 for odd D
DataCheck check_dext_data(const DExtensionData& data);

// x with D = ad_x, if any
std::optional<SVec> inner_solution(const SuperAlgebra& h, const Mat& D, int parity_D);

struct DExtension {
  SuperAlgebra alg;  // basis: c, the basis of h, d
  BilinearForm form;
  int c = 0, d = 0;
  bool decomposable = false;
  std::optional<SVec> inner;  // D = ad_x
  bool jacobi = false, invariant = false, nondegenerate = false;
};
// throws std::invalid_argument with the failing pair when the data are inadmissible
DExtension double_extend(const DExtensionData& data);

// omega(a, b) = B(Da, b) checked against the 2-cocycle identity on all triples
bool cocycle_identity(const DExtensionData& data);

struct Recognition {
  std::string status;  // double_extension | not_applicable | decomposable
  std::string reason;
  SVec c, d;               // in g
  std::vector<SVec> W;     // complement: g = Kc + W + Kd
  DExtensionData data;     // h on W with the restricted form and D = pr_W ad_d
  Mat sigma;               // c-component of the bracket on W
  bool sigma_matches = false;  // sigma(a, b) = B_h(Da, b)
  bool round_trip = false;     // double_extend(data) has the structure constants of g in the (c, W, d) basis
  int h_dim = 0;
};
Recognition recognize_double_extension(const SuperAlgebra& g, const BilinearForm& B);

// p-map x -> x^[2] on the basis of a p = 2 Lie algebra realized by matrices
std::vector<SVec> matrix_pmap(const MatrixAlgebra& M);
// ad(x^[2]) = ad(x)^2 on basis vectors
bool check_pmap(const SuperAlgebra& g, const std::vector<SVec>& pmap);

struct Queerified {
  SuperAlgebra alg;  // g, then Pi(g)
  BilinearForm form;  // odd: q(x, Pi y) = B(x, y)
  bool invariant = false, nondegenerate = false;
};
Queerified queerify(const SuperAlgebra& g, const BilinearForm& B, const std::vector<SVec>& pmap);

}  // namespace nisforge
