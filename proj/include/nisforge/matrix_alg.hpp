#pragma once
// Matrix Lie superalgebras: gl, sl, psl, q, sq, psq, osp, pe, spe, spe_{a,b}, as.

#include "nisforge/forms.hpp"

namespace nisforge {

struct MatrixAlgebra {
  SuperAlgebra alg;
  std::vector<int> format;  // parity of each row/column index of the realization
  std::vector<Mat> mats;    // realization (representatives for quotients); empty for the central z of as
  std::optional<Mat> form_matrix;  // B for aut(B) families
  int form_parity = 0;
  std::string note;
};

// params: gl/sl {m,n}; psl {n}; q/sq/psq {n}; osp {m,n} for osp(m|2n); pe/spe {n};
// spe_ab {n} with a, b; as {} (spe(4) + center)
MatrixAlgebra make_matrix_algebra(const std::string& name, const std::vector<int>& params, const Field& F,
                                  const Scalar& a = Scalar(), const Scalar& b = Scalar());

Mat supercommutator(const Mat& X, int px, const Mat& Y, int py);
Mat supertranspose(const Mat& X, const std::vector<int>& format);
Scalar supertrace(const Mat& X, const std::vector<int>& format);
Scalar queertrace(const Mat& X);  // X = (A,B) in q(n)-shape: tr B
// X^{st} B + (-1)^{p(X)p(B)} B X
Mat aut_defect(const Mat& X, int px, const Mat& B, int pb, const std::vector<int>& format);

// str(xy) for the gl family, qtr(xy) (odd) for the q family
BilinearForm trace_form(const MatrixAlgebra& M);

// T_lambda on the 4|4 module of as; returns one 8x8 matrix per basis element
std::vector<Mat> t_lambda(const MatrixAlgebra& as, const Scalar& lambda);
// first failing basis pair, if any
std::optional<std::pair<int, int>> check_representation(const SuperAlgebra& g, const std::vector<Mat>& rho);

// dual of an antisymmetric 4x4 matrix: c_ij -> c_kl for (ijkl) an even permutation
Mat hodge4(const Field& F, const Mat& c);

}  // namespace nisforge
