#include "nisforge/matrix_alg.hpp"

#include <map>

namespace nisforge {

namespace {

SVec flatten(const Mat& X) {
  SVec v;
  int N = (int)X.size();
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (!X[i][j].is_zero()) v.emplace_back(i * N + j, X[i][j]);
  return v;
}

Mat unflatten(const Field& F, const SVec& v, int N) {
  Mat X = mat_zero(F, N, N);
  for (auto& [k, x] : v) X[k / N][k % N] = x;
  return X;
}

Mat unit(const Field& F, int N, int i, int j) {
  Mat X = mat_zero(F, N, N);
  X[i][j] = F.one();
  return X;
}

int mat_parity(const Mat& X, const std::vector<int>& fmt) {
  for (size_t i = 0; i < X.size(); ++i)
    for (size_t j = 0; j < X.size(); ++j)
      if (!X[i][j].is_zero()) return (fmt[i] + fmt[j]) & 1;
  return 0;
}

std::string ename(int i, int j, int N) {
  if (N < 10) return "E" + std::to_string(i + 1) + std::to_string(j + 1);
  return "E" + std::to_string(i + 1) + "," + std::to_string(j + 1);
}

std::string combo_name(const Mat& X) {
  int N = (int)X.size();
  std::string s;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const Scalar& x = X[i][j];
      if (x.is_zero()) continue;
      std::string c;
      if (x.is_one()) c = s.empty() ? "" : "+";
      else if ((-x).is_one()) c = "-";
      else c = (s.empty() ? "" : "+") + x.str() + "*";
      s += c + ename(i, j, N);
    }
  return s.empty() ? "0" : s;
}

SuperAlgebra realize(const Field& F, const std::vector<int>& fmt, const std::vector<Mat>& mats,
                     std::vector<BasisElt> basis) {
  int N = (int)fmt.size();
  std::vector<SVec> fam;
  for (auto& m : mats) fam.push_back(flatten(m));
  auto br = [&](const SVec& x, const SVec& y) {
    Mat X = unflatten(F, x, N), Y = unflatten(F, y, N);
    return flatten(supercommutator(X, mat_parity(X, fmt), Y, mat_parity(Y, fmt)));
  };
  return from_realization(F, N * N, fam, std::move(basis), br);
}

// kernel of X -> aut_defect(X) inside the homogeneous component of parity px
std::vector<Mat> aut_component(const Field& F, const Mat& B, int pb, const std::vector<int>& fmt, int px) {
  int N = (int)fmt.size();
  std::vector<std::pair<int, int>> unknowns;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (((fmt[i] + fmt[j]) & 1) == px) unknowns.emplace_back(i, j);
  std::map<int, SVec> rows;
  for (int u = 0; u < (int)unknowns.size(); ++u) {
    Mat D = aut_defect(unit(F, N, unknowns[u].first, unknowns[u].second), px, B, pb, fmt);
    for (int r = 0; r < N; ++r)
      for (int s = 0; s < N; ++s)
        if (!D[r][s].is_zero()) rows[r * N + s].emplace_back(u, D[r][s]);
  }
  Echelon E(F, (int)unknowns.size());
  for (auto& [k, r] : rows) E.insert(r);
  std::vector<Mat> out;
  for (auto& kv : E.kernel()) {
    Mat X = mat_zero(F, N, N);
    for (auto& [u, x] : kv) X[unknowns[u].first][unknowns[u].second] = x;
    out.push_back(X);
  }
  return out;
}

MatrixAlgebra finish(const Field& F, std::vector<int> fmt, std::vector<Mat> mats, const std::string& series,
                     bool matrix_degrees) {
  MatrixAlgebra M;
  M.format = fmt;
  std::vector<BasisElt> basis;
  for (auto& X : mats) {
    BasisElt b;
    b.name = combo_name(X);
    b.parity = mat_parity(X, fmt);
    if (matrix_degrees) {
      // deg E_ij = j - i when homogeneous
      std::optional<int> d;
      bool ok = true;
      for (size_t i = 0; i < X.size(); ++i)
        for (size_t j = 0; j < X.size(); ++j)
          if (!X[i][j].is_zero()) {
            int dd = (int)j - (int)i;
            if (d && *d != dd) ok = false;
            d = dd;
          }
      if (ok) b.degree = d;
    }
    basis.push_back(b);
  }
  M.alg = realize(F, fmt, mats, basis);
  M.mats = std::move(mats);
  M.alg.meta["series"] = series;
  return M;
}

std::vector<int> std_format(int m, int n) {
  std::vector<int> f(m, 0);
  f.resize(m + n, 1);
  return f;
}

std::vector<Mat> gl_basis(const Field& F, int N) {
  std::vector<Mat> out;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) out.push_back(unit(F, N, i, j));
  return out;
}

std::vector<Mat> sl_basis(const Field& F, const std::vector<int>& fmt) {
  int N = (int)fmt.size();
  std::vector<Mat> out;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i != j) out.push_back(unit(F, N, i, j));
      if (i == j && i + 1 < N) {
        Mat h = unit(F, N, i, i);
        // str h = 0
        h[i + 1][i + 1] = fmt[i] == fmt[i + 1] ? -F.one() : F.one();
        out.push_back(h);
      }
    }
  return out;
}

MatrixAlgebra quotient_by_identity(MatrixAlgebra S, const std::string& series) {
  const Field& F = S.alg.field();
  int N = (int)S.format.size();
  SpanCoords sc(F, N * N, [&] {
    std::vector<SVec> fam;
    for (auto& m : S.mats) fam.push_back(flatten(m));
    return fam;
  }());
  auto one = sc.coords(flatten(mat_identity(F, N)));
  if (!one) throw std::logic_error("identity not in the algebra");
  Subspace I = span(F, S.alg.dim(), {*one});
  QuotientResult q = quotient(S.alg, I);
  MatrixAlgebra M;
  M.format = S.format;
  M.alg = q.alg;
  for (int r : q.reps) M.mats.push_back(S.mats[r]);
  M.alg.meta["series"] = series;
  return M;
}

std::vector<Mat> q_basis(const Field& F, int n, bool sq) {
  int N = 2 * n;
  std::vector<Mat> out;
  auto pair = [&](const Mat& A, const Mat& B) {
    Mat X = mat_zero(F, N, N);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        X[i][j] = A[i][j];
        X[n + i][n + j] = A[i][j];
        X[i][n + j] = B[i][j];
        X[n + i][j] = B[i][j];
      }
    return X;
  };
  Mat Z = mat_zero(F, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.push_back(pair(unit(F, n, i, j), Z));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (sq && i == j) {
        if (i + 1 < n) {
          Mat B = unit(F, n, i, i);
          B[i + 1][i + 1] = -F.one();
          out.push_back(pair(Z, B));
        }
        continue;
      }
      out.push_back(pair(Z, unit(F, n, i, j)));
    }
  return out;
}

Mat J2n(const Field& F, int n) {
  Mat J = mat_zero(F, 2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    J[i][n + i] = F.one();
    J[n + i][i] = -F.one();
  }
  return J;
}

}  // namespace

Mat supercommutator(const Mat& X, int px, const Mat& Y, int py) {
  Mat XY = mat_mul(X, Y), YX = mat_mul(Y, X);
  return (px & py) ? mat_add(XY, YX) : mat_sub(XY, YX);
}

Mat supertranspose(const Mat& X, const std::vector<int>& fmt) {
  int N = (int)X.size();
  Mat T = X;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      bool neg = ((fmt[i] + fmt[j]) * fmt[j]) & 1;
      T[i][j] = neg ? -X[j][i] : X[j][i];
    }
  return T;
}

Scalar supertrace(const Mat& X, const std::vector<int>& fmt) {
  Scalar s;
  for (size_t i = 0; i < X.size(); ++i) s += fmt[i] ? -X[i][i] : X[i][i];
  return s;
}

Scalar queertrace(const Mat& X) {
  int n = (int)X.size() / 2;
  Scalar s;
  for (int i = 0; i < n; ++i) s += X[i][n + i];
  return s;
}

Mat aut_defect(const Mat& X, int px, const Mat& B, int pb, const std::vector<int>& fmt) {
  Mat a = mat_mul(supertranspose(X, fmt), B);
  Mat b = mat_mul(B, X);
  return (px & pb) ? mat_sub(a, b) : mat_add(a, b);
}

Mat hodge4(const Field& F, const Mat& c) {
  Mat out = mat_zero(F, 4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (c[i][j].is_zero()) continue;
      int rest[2], r = 0;
      for (int t = 0; t < 4; ++t)
        if (t != i && t != j) rest[r++] = t;
      int perm[4] = {i, j, rest[0], rest[1]};
      int inv = 0;
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) inv += perm[a] > perm[b];
      int k = rest[0], l = rest[1];
      if (inv & 1) std::swap(k, l);
      // c_ij -> c_kl = E_kl - E_lk
      out[k][l] += c[i][j];
      out[l][k] -= c[i][j];
    }
  return out;
}

MatrixAlgebra make_matrix_algebra(const std::string& name, const std::vector<int>& P, const Field& F,
                                  const Scalar& a, const Scalar& b) {
  auto need = [&](size_t k) {
    if (P.size() != k) throw std::invalid_argument(name + " expects " + std::to_string(k) + " size parameters");
  };
  if (name == "gl") {
    need(2);
    auto fmt = std_format(P[0], P[1]);
    auto M = finish(F, fmt, gl_basis(F, P[0] + P[1]), "gl(" + std::to_string(P[0]) + "|" + std::to_string(P[1]) + ")", true);
    return M;
  }
  if (name == "sl") {
    need(2);
    auto fmt = std_format(P[0], P[1]);
    return finish(F, fmt, sl_basis(F, fmt), "sl(" + std::to_string(P[0]) + "|" + std::to_string(P[1]) + ")", true);
  }
  if (name == "psl") {
    need(1);
    auto S = make_matrix_algebra("sl", {P[0], P[0]}, F);
    return quotient_by_identity(S, "psl(" + std::to_string(P[0]) + "|" + std::to_string(P[0]) + ")");
  }
  if (name == "q" || name == "sq") {
    need(1);
    if (P[0] < 1) throw std::invalid_argument("q(n) needs n >= 1");
    auto fmt = std_format(P[0], P[0]);
    return finish(F, fmt, q_basis(F, P[0], name == "sq"), name + "(" + std::to_string(P[0]) + ")", false);
  }
  if (name == "psq") {
    need(1);
    auto S = make_matrix_algebra("sq", P, F);
    auto M = quotient_by_identity(S, "psq(" + std::to_string(P[0]) + ")");
    if (F.characteristic() && P[0] % F.characteristic() == 0) {
      M.note = "not simple: p divides n";
      M.alg.meta["note"] = M.note;
    }
    return M;
  }
  if (name == "osp") {
    need(2);
    int m = P[0], n = P[1];
    auto fmt = std_format(m, 2 * n);
    Mat B = mat_zero(F, m + 2 * n, m + 2 * n);
    for (int i = 0; i < m; ++i) B[i][i] = F.one();
    Mat J = J2n(F, n);
    for (int i = 0; i < 2 * n; ++i)
      for (int j = 0; j < 2 * n; ++j) B[m + i][m + j] = J[i][j];
    std::vector<Mat> mats = aut_component(F, B, 0, fmt, 0);
    for (auto& X : aut_component(F, B, 0, fmt, 1)) mats.push_back(X);
    auto M = finish(F, fmt, mats, "osp(" + std::to_string(m) + "|" + std::to_string(2 * n) + ")", false);
    M.form_matrix = B;
    M.form_parity = 0;
    return M;
  }
  if (name == "pe" || name == "spe" || name == "spe_ab") {
    need(1);
    int n = P[0];
    auto fmt = std_format(n, n);
    Mat B = J2n(F, n);
    std::vector<Mat> mats;
    for (int px = 0; px < 2; ++px)
      for (auto& X : aut_component(F, B, 1, fmt, px)) mats.push_back(X);
    if (name != "pe") {
      // supertraceless part: only even elements carry a supertrace
      std::vector<Mat> keep;
      std::vector<SVec> traced;
      for (auto& X : mats) {
        if (supertrace(X, fmt).is_zero()) keep.push_back(X);
        else traced.push_back(flatten(X));
      }
      // combinations of traced ones with zero supertrace
      for (size_t t = 1; t < traced.size(); ++t) {
        Mat X0 = unflatten(F, traced[0], 2 * n), Xt = unflatten(F, traced[t], 2 * n);
        Scalar c = supertrace(Xt, fmt) / supertrace(X0, fmt);
        keep.push_back(mat_sub(Xt, mat_scale(c, X0)));
      }
      mats = keep;
    }
    std::string label = name == "pe" ? "pe(" : "spe(";
    if (name == "spe_ab") {
      if (!a.fd() || !b.fd()) throw std::invalid_argument("spe_ab needs a and b");
      if (F.characteristic() == 2) throw std::invalid_argument("spe_ab needs characteristic other than 2");
      Mat X = mat_zero(F, 2 * n, 2 * n);
      for (int i = 0; i < n; ++i) {
        X[i][i] = a + b;
        X[n + i][n + i] = a - b;
      }
      mats.push_back(X);
    }
    auto M = finish(F, fmt, mats, label + std::to_string(n) + ")" + (name == "spe_ab" ? "_{" + a.str() + "," + b.str() + "}" : ""),
                    false);
    M.form_matrix = B;
    M.form_parity = 1;
    return M;
  }
  if (name == "as") {
    if (!P.empty() && !(P.size() == 1 && P[0] == 4)) throw std::invalid_argument("as is fixed at n = 4");
    auto S = make_matrix_algebra("spe", {4}, F);
    std::vector<BasisElt> basis = S.alg.basis();
    basis.push_back(BasisElt{"z", 0, std::nullopt});
    SuperAlgebra g(F, basis);
    int zi = (int)basis.size() - 1;
    // the antisymmetric off-diagonal block (upper right for the J_{2n} shape) carries the cocycle
    auto block = [&](const Mat& X) {
      Mat c = mat_zero(F, 4, 4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c[i][j] = X[i][4 + j];
      return c;
    };
    auto tr = [](const Mat& X) {
      Scalar s;
      for (size_t i = 0; i < X.size(); ++i) s += X[i][i];
      return s;
    };
    for (int i = 0; i < S.alg.dim(); ++i)
      for (int j = i; j < S.alg.dim(); ++j) {
        SVec v = S.alg.stored(i, j);
        if (S.alg.parity(i) && S.alg.parity(j)) {
          Scalar c = tr(mat_mul(block(S.mats[i]), hodge4(F, block(S.mats[j]))));
          if (!c.is_zero()) v.emplace_back(zi, c);
        }
        if (!v.empty()) g.set_bracket(i, j, v);
      }
    g.meta["series"] = "as";
    MatrixAlgebra M;
    M.alg = g;
    M.format = S.format;
    M.mats = S.mats;
    M.mats.push_back(Mat{});
    M.form_matrix = S.form_matrix;
    M.form_parity = 1;
    return M;
  }
  throw std::invalid_argument("unknown matrix algebra '" + name + "'");
}

BilinearForm trace_form(const MatrixAlgebra& M) {
  const Field& F = M.alg.field();
  int n = M.alg.dim();
  std::string series = M.alg.meta.value("series", std::string());
  bool queer = series.rfind("q", 0) == 0 || series.rfind("sq", 0) == 0 || series.rfind("psq", 0) == 0;
  BilinearForm B;
  B.parity = queer ? 1 : 0;
  B.gram = mat_zero(F, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (M.mats[i].empty() || M.mats[j].empty()) continue;
      Mat P = mat_mul(M.mats[i], M.mats[j]);
      B.gram[i][j] = queer ? queertrace(P) : supertrace(P, M.format);
    }
  return B;
}

std::vector<Mat> t_lambda(const MatrixAlgebra& as, const Scalar& lambda) {
  const Field& F = as.alg.field();
  std::vector<Mat> out;
  for (auto& X : as.mats) {
    if (X.empty()) {
      // z -> -lambda/2 (equal to lambda in characteristic 3) keeps T_lambda a homomorphism for the tr cocycle
      out.push_back(mat_scale(-lambda / F.from_int(2), mat_identity(F, 8)));
      continue;
    }
    Mat Y = X;
    Mat c = mat_zero(F, 4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) c[i][j] = X[i][4 + j];
    Mat ct = hodge4(F, c);
    // mirror of the displayed formula for the J_{2n} shape: the dual lands in the other odd block
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) Y[4 + i][j] -= lambda * ct[i][j];
    out.push_back(Y);
  }
  return out;
}

std::optional<std::pair<int, int>> check_representation(const SuperAlgebra& g, const std::vector<Mat>& rho) {
  const Field& F = g.field();
  int N = (int)rho[0].size();
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i; j < g.dim(); ++j) {
      Mat lhs = mat_zero(F, N, N);
      for (auto& [k, x] : g.bracket(i, j)) lhs = mat_add(lhs, mat_scale(x, rho[k]));
      Mat rhs = supercommutator(rho[i], g.parity(i), rho[j], g.parity(j));
      if (!mat_is_zero(mat_sub(lhs, rhs))) return std::make_pair(i, j);
    }
  return std::nullopt;
}

}  // namespace nisforge
