#pragma once
// Sparse vectors, incremental reduced echelon forms and small dense helpers.

#include <optional>
#include <utility>
#include <vector>

#include "nisforge/field.hpp"

namespace nisforge {

// sorted by index, no explicit zeros
using SVec = std::vector<std::pair<int, Scalar>>;
using Mat = std::vector<std::vector<Scalar>>;

SVec sv_axpy(const SVec& a, const Scalar& c, const SVec& b);  // a + c*b
SVec sv_add(const SVec& a, const SVec& b);
SVec sv_sub(const SVec& a, const SVec& b);
SVec sv_scale(const Scalar& c, const SVec& a);
SVec sv_unit(const Field& F, int i);
Scalar sv_get(const SVec& a, int i);
SVec sv_from_dense(const std::vector<Scalar>& d);
std::vector<Scalar> sv_to_dense(const Field& F, const SVec& a, int n);
SVec sv_normalize(SVec a);  // drop zeros, sort, merge duplicates
std::string sv_str(const SVec& a, const std::vector<std::string>& names);

// Incremental fully reduced row echelon form. Only columns < pivot_limit may carry
// pivots; the columns above it ride along (coordinates, right-hand sides).
class Echelon {
 public:
  Echelon() = default;
  Echelon(Field F, int ncols, int pivot_limit = -1);

  // returns true when v was independent of the current rows (restricted to pivot columns)
  bool insert(SVec v);
  SVec reduce(const SVec& v) const;
  bool contains(const SVec& v) const;  // main part only
  int rank() const { return (int)rows_.size(); }
  int ncols() const { return ncols_; }
  int limit() const { return limit_; }
  const Field& field() const { return F_; }
  // rows ordered by pivot column
  std::vector<SVec> basis() const;
  std::vector<int> pivots() const;
  int pivot_row(int col) const { return col < limit_ ? piv_[col] : -1; }
  const SVec& row(int r) const { return rows_[r]; }
  // kernel of the row space restricted to pivot columns, canonical order by free column
  std::vector<SVec> kernel() const;
  // last insert's reduced remainder (useful for dependency relations)
  const SVec& last_remainder() const { return last_; }

 private:
  Field F_;
  int ncols_ = 0, limit_ = 0;
  std::vector<SVec> rows_;
  std::vector<int> rowpiv_;
  std::vector<int> piv_;
  SVec last_;
};

// Expresses vectors in a fixed spanning family (independent family assumed).
class SpanCoords {
 public:
  SpanCoords() = default;
  SpanCoords(Field F, int ambient, const std::vector<SVec>& family);
  int size() const { return m_; }
  bool independent() const { return indep_; }
  // coordinates in the family, or nullopt when v is outside the span
  std::optional<SVec> coords(const SVec& v) const;
  bool contains(const SVec& v) const { return ech_.contains(v); }

 private:
  int n_ = 0, m_ = 0;
  bool indep_ = true;
  Echelon ech_;
};

struct LinearSolution {
  bool consistent = false;
  std::vector<Scalar> particular;
  std::vector<std::vector<Scalar>> kernel;
  int rank = 0;
};

LinearSolution solve_linear(const Field& F, const Mat& A, const std::vector<Scalar>& b);
LinearSolution solve_linear_sparse(const Field& F, int ncols, const std::vector<SVec>& rows,
                                   const std::vector<Scalar>& b);

Mat mat_zero(const Field& F, int r, int c);
Mat mat_identity(const Field& F, int n);
Mat mat_mul(const Mat& A, const Mat& B);
Mat mat_add(const Mat& A, const Mat& B);
Mat mat_sub(const Mat& A, const Mat& B);
Mat mat_scale(const Scalar& c, const Mat& A);
Mat mat_transpose(const Mat& A);
int mat_rank(const Field& F, const Mat& A);
Scalar mat_det(const Field& F, Mat A);
std::optional<Mat> mat_inverse(const Field& F, const Mat& A);
bool mat_is_zero(const Mat& A);
std::vector<SVec> mat_kernel(const Field& F, const Mat& A);  // right kernel
std::vector<Scalar> mat_vec(const Mat& A, const std::vector<Scalar>& x);

}  // namespace nisforge
