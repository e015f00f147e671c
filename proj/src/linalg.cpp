#include "nisforge/linalg.hpp"

#include <algorithm>
#include <map>

namespace nisforge {

SVec sv_axpy(const SVec& a, const Scalar& c, const SVec& b) {
  if (c.is_zero() || b.empty()) return a;
  SVec out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, c * b[j].second);
      ++j;
    } else {
      Scalar s = a[i].second + c * b[j].second;
      if (!s.is_zero()) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

SVec sv_add(const SVec& a, const SVec& b) {
  if (b.empty()) return a;
  return sv_axpy(a, b.front().second.field().one(), b);
}
SVec sv_sub(const SVec& a, const SVec& b) {
  if (b.empty()) return a;
  return sv_axpy(a, -b.front().second.field().one(), b);
}

SVec sv_scale(const Scalar& c, const SVec& a) {
  SVec out;
  if (c.is_zero()) return out;
  out.reserve(a.size());
  for (auto& [i, v] : a) out.emplace_back(i, c * v);
  return out;
}

SVec sv_unit(const Field& F, int i) { return SVec{{i, F.one()}}; }

Scalar sv_get(const SVec& a, int i) {
  auto it = std::lower_bound(a.begin(), a.end(), i, [](const auto& e, int k) { return e.first < k; });
  if (it != a.end() && it->first == i) return it->second;
  return Scalar();
}

SVec sv_from_dense(const std::vector<Scalar>& d) {
  SVec out;
  for (int i = 0; i < (int)d.size(); ++i)
    if (!d[i].is_zero()) out.emplace_back(i, d[i]);
  return out;
}

std::vector<Scalar> sv_to_dense(const Field& F, const SVec& a, int n) {
  std::vector<Scalar> d(n, F.zero());
  for (auto& [i, v] : a) d[i] = v;
  return d;
}

SVec sv_normalize(SVec a) {
  std::stable_sort(a.begin(), a.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  SVec out;
  for (auto& e : a) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
      if (out.back().second.is_zero()) out.pop_back();
    } else if (!e.second.is_zero()) {
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::string sv_str(const SVec& a, const std::vector<std::string>& names) {
  if (a.empty()) return "0";
  std::string s;
  for (auto& [i, v] : a) {
    if (!s.empty()) s += " + ";
    std::string nm = i < (int)names.size() ? names[i] : ("e" + std::to_string(i));
    if (v.is_one()) s += nm;
    else s += "(" + v.str() + ")" + nm;
  }
  return s;
}

// ---------------- Echelon ----------------

Echelon::Echelon(Field F, int ncols, int pivot_limit)
    : F_(F), ncols_(ncols), limit_(pivot_limit < 0 ? ncols : pivot_limit), piv_(limit_, -1) {}

SVec Echelon::reduce(const SVec& v) const {
  SVec w = v;
  // pivots of v are fixed up front: rows vanish on foreign pivot columns
  std::vector<std::pair<int, Scalar>> hits;
  for (auto& [c, x] : v) {
    if (c >= limit_) break;
    int r = piv_[c];
    if (r >= 0) hits.emplace_back(r, x);
  }
  for (auto& [r, x] : hits) w = sv_axpy(w, -x, rows_[r]);
  return w;
}

bool Echelon::insert(SVec v) {
  SVec w = reduce(v);
  last_ = w;
  if (w.empty() || w.front().first >= limit_) return false;
  int pc = w.front().first;
  Scalar inv = w.front().second.inv();
  if (!inv.is_one()) w = sv_scale(inv, w);
  for (auto& row : rows_) {
    Scalar c = sv_get(row, pc);
    if (!c.is_zero()) row = sv_axpy(row, -c, w);
  }
  piv_[pc] = (int)rows_.size();
  rows_.push_back(std::move(w));
  rowpiv_.push_back(pc);
  return true;
}

bool Echelon::contains(const SVec& v) const {
  SVec w = reduce(v);
  return w.empty() || w.front().first >= limit_;
}

std::vector<int> Echelon::pivots() const {
  std::vector<int> p = rowpiv_;
  std::sort(p.begin(), p.end());
  return p;
}

std::vector<SVec> Echelon::basis() const {
  std::vector<SVec> out;
  for (int c : pivots()) out.push_back(rows_[piv_[c]]);
  return out;
}

std::vector<SVec> Echelon::kernel() const {
  std::vector<int> freecols;
  std::vector<int> slot(limit_, -1);
  for (int c = 0; c < limit_; ++c)
    if (piv_[c] < 0) {
      slot[c] = (int)freecols.size();
      freecols.push_back(c);
    }
  std::vector<SVec> ker(freecols.size());
  for (size_t k = 0; k < freecols.size(); ++k) ker[k].emplace_back(freecols[k], F_.one());
  for (size_t r = 0; r < rows_.size(); ++r) {
    int pc = rowpiv_[r];
    for (auto& [c, x] : rows_[r]) {
      if (c >= limit_) break;
      if (c == pc) continue;
      int s = slot[c];
      if (s >= 0) ker[s].emplace_back(pc, -x);
    }
  }
  for (auto& k : ker) k = sv_normalize(std::move(k));
  return ker;
}

// ---------------- SpanCoords ----------------

SpanCoords::SpanCoords(Field F, int ambient, const std::vector<SVec>& family)
    : n_(ambient), m_((int)family.size()), ech_(F, ambient + (int)family.size(), ambient) {
  for (int i = 0; i < m_; ++i) {
    SVec v = family[i];
    v.emplace_back(n_ + i, F.one());
    if (!ech_.insert(v)) indep_ = false;
  }
}

std::optional<SVec> SpanCoords::coords(const SVec& v) const {
  SVec w = ech_.reduce(v);
  if (!w.empty() && w.front().first < n_) return std::nullopt;
  SVec out;
  for (auto& [c, x] : w) out.emplace_back(c - n_, -x);
  return out;
}

// ---------------- solving ----------------

LinearSolution solve_linear_sparse(const Field& F, int ncols, const std::vector<SVec>& rows,
                                   const std::vector<Scalar>& b) {
  LinearSolution sol;
  Echelon E(F, ncols + 1, ncols);
  sol.consistent = true;
  for (size_t i = 0; i < rows.size(); ++i) {
    SVec r = rows[i];
    if (i < b.size() && !b[i].is_zero()) r.emplace_back(ncols, b[i]);
    if (!E.insert(r)) {
      const SVec& rem = E.last_remainder();
      if (!rem.empty()) sol.consistent = false;
    }
  }
  sol.rank = E.rank();
  if (!sol.consistent) return sol;
  sol.particular.assign(ncols, F.zero());
  for (int c : E.pivots()) {
    Scalar x = sv_get(E.row(E.pivot_row(c)), ncols);
    if (x.fd()) sol.particular[c] = x;
  }
  for (auto& k : E.kernel()) sol.kernel.push_back(sv_to_dense(F, k, ncols));
  return sol;
}

LinearSolution solve_linear(const Field& F, const Mat& A, const std::vector<Scalar>& b) {
  int ncols = A.empty() ? 0 : (int)A[0].size();
  std::vector<SVec> rows;
  for (auto& r : A) rows.push_back(sv_from_dense(r));
  return solve_linear_sparse(F, ncols, rows, b);
}

// ---------------- dense ----------------

Mat mat_zero(const Field& F, int r, int c) { return Mat(r, std::vector<Scalar>(c, F.zero())); }

Mat mat_identity(const Field& F, int n) {
  Mat M = mat_zero(F, n, n);
  for (int i = 0; i < n; ++i) M[i][i] = F.one();
  return M;
}

Mat mat_mul(const Mat& A, const Mat& B) {
  int n = (int)A.size(), m = B.empty() ? 0 : (int)B[0].size(), k = (int)B.size();
  Mat C(n, std::vector<Scalar>(m));
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < k; ++l) {
      if (A[i][l].is_zero()) continue;
      for (int j = 0; j < m; ++j)
        if (!B[l][j].is_zero()) C[i][j] += A[i][l] * B[l][j];
    }
  // give every entry a field when possible
  const FieldData* fd = nullptr;
  for (auto& r : A)
    for (auto& x : r)
      if (!fd && x.fd()) fd = x.fd();
  if (fd)
    for (auto& r : C)
      for (auto& x : r)
        if (!x.fd()) x = fd->p == 0 ? Scalar(fd, mpq_class(0)) : Scalar(fd, 0u);
  return C;
}

Mat mat_add(const Mat& A, const Mat& B) {
  Mat C = A;
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j) C[i][j] = A[i][j] + B[i][j];
  return C;
}

Mat mat_sub(const Mat& A, const Mat& B) {
  Mat C = A;
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j) C[i][j] = A[i][j] - B[i][j];
  return C;
}

Mat mat_scale(const Scalar& c, const Mat& A) {
  Mat C = A;
  for (auto& r : C)
    for (auto& x : r) x = c * x;
  return C;
}

Mat mat_transpose(const Mat& A) {
  if (A.empty()) return A;
  Mat T(A[0].size(), std::vector<Scalar>(A.size()));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j) T[j][i] = A[i][j];
  return T;
}

int mat_rank(const Field& F, const Mat& A) {
  int ncols = A.empty() ? 0 : (int)A[0].size();
  Echelon E(F, ncols);
  for (auto& r : A) E.insert(sv_from_dense(r));
  return E.rank();
}

Scalar mat_det(const Field& F, Mat A) {
  int n = (int)A.size();
  Scalar det = F.one();
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (!A[r][c].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return F.zero();
    if (piv != c) {
      std::swap(A[piv], A[c]);
      det = -det;
    }
    det = det * A[c][c];
    Scalar inv = A[c][c].inv();
    for (int r = c + 1; r < n; ++r) {
      if (A[r][c].is_zero()) continue;
      Scalar f = A[r][c] * inv;
      for (int j = c; j < n; ++j)
        if (!A[c][j].is_zero()) A[r][j] -= f * A[c][j];
    }
  }
  return det;
}

std::optional<Mat> mat_inverse(const Field& F, const Mat& A) {
  int n = (int)A.size();
  Echelon E(F, 2 * n, n);
  for (int i = 0; i < n; ++i) {
    SVec r = sv_from_dense(A[i]);
    r.emplace_back(n + i, F.one());
    if (!E.insert(r)) return std::nullopt;
  }
  Mat inv = mat_zero(F, n, n);
  for (int c = 0; c < n; ++c) {
    for (auto& [j, x] : E.row(E.pivot_row(c)))
      if (j >= n) inv[c][j - n] = x;
  }
  return inv;
}

bool mat_is_zero(const Mat& A) {
  for (auto& r : A)
    for (auto& x : r)
      if (!x.is_zero()) return false;
  return true;
}

std::vector<SVec> mat_kernel(const Field& F, const Mat& A) {
  int ncols = A.empty() ? 0 : (int)A[0].size();
  Echelon E(F, ncols);
  for (auto& r : A) E.insert(sv_from_dense(r));
  return E.kernel();
}

std::vector<Scalar> mat_vec(const Mat& A, const std::vector<Scalar>& x) {
  std::vector<Scalar> y(A.size());
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j)
      if (!A[i][j].is_zero() && !x[j].is_zero()) y[i] += A[i][j] * x[j];
  return y;
}

}  // namespace nisforge
