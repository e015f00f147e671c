#include "nisforge/extensions.hpp"

#include <map>
#include <stdexcept>

namespace nisforge {

namespace {

SVec act(const Mat& D, const SVec& v) {
  std::map<int, Scalar> acc;
  for (auto& [j, x] : v)
    for (size_t i = 0; i < D.size(); ++i)
      if (!D[i][j].is_zero()) {
        auto it = acc.find((int)i);
        if (it == acc.end()) acc.emplace((int)i, D[i][j] * x);
        else it->second += D[i][j] * x;
      }
  SVec r;
  for (auto& [i, x] : acc)
    if (!x.is_zero()) r.emplace_back(i, x);
  return r;
}

Scalar sgn(const Field& F, int a, int b) { return (a & b) ? -F.one() : F.one(); }

std::string pair_str(const SuperAlgebra& g, int i, int j) { return g.basis()[i].name + ", " + g.basis()[j].name; }

}  // namespace

DataCheck check_dext_data(const DExtensionData& data) {
  const SuperAlgebra& h = data.base;
  const Field& F = h.field();
  int n = h.dim(), pD = data.parity_D;
  DataCheck r;
  auto fail = [&](std::string why, int i, int j) {
    r.ok = false;
    r.reason = std::move(why);
    r.witness = std::make_pair(i, j);
    return r;
  };
  if ((int)data.D.size() != n || (n && (int)data.D[0].size() != n)) {
    r.ok = false;
    r.reason = "D has the wrong size";
    return r;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!data.D[i][j].is_zero() && h.parity(i) != (h.parity(j) + pD) % 2)
        return fail("D is not homogeneous of parity " + std::to_string(pD), i, j);
  auto e = [&](int a) { return sv_unit(F, a); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // D[x,y] = [Dx,y] + (-1)^{p(D)p(x)} [x,Dy]
      SVec lhs = act(data.D, h.bracket(i, j));
      SVec rhs = sv_add(h.bracket(act(data.D, e(i)), e(j)),
                        sv_scale(sgn(F, pD, h.parity(i)), h.bracket(e(i), act(data.D, e(j)))));
      if (lhs != rhs) return fail("D is not a derivation on (" + pair_str(h, i, j) + ")", i, j);
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Scalar v = data.form(act(data.D, e(i)), e(j)) + sgn(F, h.parity(i), pD) * data.form(e(i), act(data.D, e(j)));
      if (!v.is_zero()) return fail("the form is not D-invariant on (" + pair_str(h, i, j) + ")", i, j);
    }
  if (pD == 1)
    for (int j = 0; j < n; ++j)
      if (!act(data.D, act(data.D, e(j))).empty()) return fail("odd D with D^2 != 0", j, j);
  return r;
}

std::optional<SVec> inner_solution(const SuperAlgebra& h, const Mat& D, int parity_D) {
  const Field& F = h.field();
  int n = h.dim();
  std::vector<int> cand;
  for (int k = 0; k < n; ++k)
    if (h.parity(k) == parity_D) cand.push_back(k);
  // sum_k x_k [e_k, e_j] = D e_j
  Mat A;
  std::vector<Scalar> b;
  for (int j = 0; j < n; ++j) {
    std::vector<std::vector<Scalar>> rows(n, std::vector<Scalar>(cand.size(), F.zero()));
    for (size_t t = 0; t < cand.size(); ++t)
      for (auto& [i, x] : h.bracket(cand[t], j)) rows[i][t] = x;
    for (int i = 0; i < n; ++i) {
      A.push_back(rows[i]);
      b.push_back(D[i][j]);
    }
  }
  if (cand.empty()) {
    for (auto& x : b)
      if (!x.is_zero()) return std::nullopt;
    return SVec{};
  }
  auto sol = solve_linear(F, A, b);
  if (!sol.consistent) return std::nullopt;
  SVec x;
  for (size_t t = 0; t < cand.size(); ++t)
    if (!sol.particular[t].is_zero()) x.emplace_back(cand[t], sol.particular[t]);
  return x;
}

bool cocycle_identity(const DExtensionData& data) {
  const SuperAlgebra& h = data.base;
  const Field& F = h.field();
  int n = h.dim();
  auto w = [&](const SVec& a, const SVec& b) { return data.form(act(data.D, a), b); };
  auto e = [&](int a) { return sv_unit(F, a); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        int pi = h.parity(i), pj = h.parity(j), pk = h.parity(k);
        // super cyclic sum of w([a,b],c) with the Jacobi signs
        Scalar s = sgn(F, pi, pk) * w(h.bracket(i, j), e(k)) + sgn(F, pj, pi) * w(h.bracket(j, k), e(i)) +
                   sgn(F, pk, pj) * w(h.bracket(k, i), e(j));
        if (!s.is_zero()) return false;
      }
  return true;
}

DExtension double_extend(const DExtensionData& data) {
  auto chk = check_dext_data(data);
  if (!chk.ok) throw std::invalid_argument(chk.reason);
  const SuperAlgebra& h = data.base;
  const Field& F = h.field();
  int n = h.dim(), pD = data.parity_D, pB = data.form.parity;
  int pc = (pB + pD) % 2, pd = pD;
  std::vector<BasisElt> basis;
  basis.push_back({"c", pc, std::nullopt});
  for (auto b : h.basis()) {
    b.degree.reset();
    basis.push_back(b);
  }
  basis.push_back({"d", pd, std::nullopt});
  DExtension r;
  r.alg = SuperAlgebra(F, basis);
  r.c = 0;
  r.d = n + 1;
  auto lift = [&](const SVec& v) {
    SVec s;
    for (auto& [i, x] : v) s.emplace_back(i + 1, x);
    return s;
  };
  auto e = [&](int a) { return sv_unit(F, a); };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      SVec v = lift(h.bracket(i, j));
      Scalar w = data.form(act(data.D, e(i)), e(j));
      if (!w.is_zero()) v = sv_axpy(v, w, e(0));
      r.alg.set_bracket(i + 1, j + 1, sv_normalize(v));
    }
  for (int j = 0; j < n; ++j) r.alg.set_bracket(n + 1, j + 1, lift(act(data.D, e(j))));
  r.form.parity = pB;
  r.form.gram = mat_zero(F, n + 2, n + 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.form.gram[i + 1][j + 1] = data.form.gram[i][j];
  r.form.gram[n + 1][0] = F.one();
  r.form.gram[0][n + 1] = sgn(F, pc, pd);
  r.inner = inner_solution(h, data.D, pD);
  r.decomposable = r.inner.has_value();
  r.alg.meta["series"] = "double extension";
  r.alg.meta["decomposable"] = r.decomposable;
  bool small = r.alg.dim() <= 40;
  r.jacobi = check_jacobi(r.alg, small, 20000, 1).ok();
  r.invariant = check_invariance(r.alg, r.form, small, 20000).ok;
  r.nondegenerate = is_nondegenerate(F, r.form);
  return r;
}

Recognition recognize_double_extension(const SuperAlgebra& g, const BilinearForm& B) {
  const Field& F = g.field();
  int n = g.dim();
  Recognition r;
  Subspace I = intersect(F, derived_subspace(g), center(g));
  if (I.dim() == 0) {
    r.status = "not_applicable";
    r.reason = "the derived algebra meets the center trivially";
    return r;
  }
  SVec c = I.basis[0];
  int pc = g.parity_of(c), pB = B.parity, pd = (pc + pB) % 2;
  r.c = c;
  if (!B(c, c).is_zero()) {
    r.status = "decomposable";
    r.reason = "B(c, c) != 0";
    return r;
  }
  // d with B(d, c) = 1
  SVec d;
  for (int k = 0; k < n && d.empty(); ++k) {
    if (g.parity(k) != pd) continue;
    Scalar v = B(sv_unit(F, k), c);
    if (!v.is_zero()) d = sv_scale(v.inv(), sv_unit(F, k));
  }
  if (d.empty()) {
    r.status = "not_applicable";
    r.reason = "B is degenerate on c";
    return r;
  }
  Scalar dd = B(d, d);
  if (!dd.is_zero()) {
    Scalar den = B(d, c) + B(c, d);
    if (!den.is_zero()) d = sv_axpy(d, -(dd / den), c);
    else r.reason = "B(d, d) = 0 cannot be arranged (characteristic 2)";
  }
  r.d = d;
  // W = c^perp meet d^perp, homogeneous basis
  for (int par = 0; par < 2; ++par) {
    std::vector<int> idx;
    for (int k = 0; k < n; ++k)
      if (g.parity(k) == par) idx.push_back(k);
    if (idx.empty()) continue;
    Mat A(2, std::vector<Scalar>(idx.size(), F.zero()));
    for (size_t t = 0; t < idx.size(); ++t) {
      A[0][t] = B(c, sv_unit(F, idx[t]));
      A[1][t] = B(d, sv_unit(F, idx[t]));
    }
    for (auto& k : mat_kernel(F, A)) {
      SVec v;
      for (auto& [t, x] : k) v.emplace_back(idx[t], x);
      r.W.push_back(v);
    }
  }
  int m = (int)r.W.size();
  r.h_dim = m;
  std::vector<SVec> frame{c};
  for (auto& w : r.W) frame.push_back(w);
  frame.push_back(d);
  SpanCoords sc(F, n, frame);
  if (!sc.independent() || (int)frame.size() != n) {
    r.status = "not_applicable";
    r.reason = "c, W, d do not form a basis";
    return r;
  }
  auto coords = [&](const SVec& v) { return *sc.coords(v); };
  std::vector<BasisElt> hb;
  for (auto& w : r.W) {
    BasisElt b;
    b.name = (w.size() == 1 && w[0].second.is_one()) ? g.basis()[w[0].first].name : sv_str(w, g.names());
    b.parity = g.parity_of(w);
    hb.push_back(b);
  }
  SuperAlgebra h(F, hb);
  r.sigma = mat_zero(F, m, m);
  bool clean = true;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      SVec k = coords(g.bracket(r.W[a], r.W[b]));
      SVec hw;
      for (auto& [i, x] : k) {
        if (i == 0) r.sigma[a][b] = x;
        else if (i == m + 1) clean = false;
        else hw.emplace_back(i - 1, x);
      }
      if (a <= b) h.set_bracket(a, b, hw);
    }
  Mat D = mat_zero(F, m, m);
  for (int a = 0; a < m; ++a)
    for (auto& [i, x] : coords(g.bracket(d, r.W[a])))
      if (i >= 1 && i <= m) D[i - 1][a] = x;
  r.data.base = h;
  r.data.D = D;
  r.data.parity_D = pd;
  r.data.form.parity = pB;
  r.data.form.gram = mat_zero(F, m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) r.data.form.gram[a][b] = B(r.W[a], r.W[b]);
  r.sigma_matches = clean;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (r.sigma[a][b] != r.data.form(act(D, sv_unit(F, a)), sv_unit(F, b))) r.sigma_matches = false;
  r.status = "double_extension";
  try {
    DExtension x = double_extend(r.data);
    bool same = true;
    // x basis (c, W, d) corresponds to frame
    for (int i = 0; i < n && same; ++i)
      for (int j = 0; j < n && same; ++j) {
        if (coords(g.bracket(frame[i], frame[j])) != x.alg.bracket(i, j)) same = false;
        if (B(frame[i], frame[j]) != x.form.gram[i][j]) same = false;
      }
    r.round_trip = same;
    if (x.decomposable) {
      r.status = "decomposable";
      r.reason = "D is inner";
    }
  } catch (const std::invalid_argument& ex) {
    r.reason = std::string("recovered data rejected: ") + ex.what();
  }
  return r;
}

std::vector<SVec> matrix_pmap(const MatrixAlgebra& M) {
  const Field& F = M.alg.field();
  if (F.characteristic() != 2) throw std::invalid_argument("the p-map is taken at p = 2");
  int N = (int)M.format.size();
  auto flat = [&](const Mat& X) {
    SVec v;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (!X[i][j].is_zero()) v.emplace_back(i * N + j, X[i][j]);
    return v;
  };
  std::vector<SVec> fam;
  for (auto& X : M.mats) fam.push_back(flat(X));
  SpanCoords sc(F, N * N, fam);
  std::vector<SVec> out;
  for (auto& X : M.mats) {
    auto c = sc.coords(flat(mat_mul(X, X)));
    if (!c) throw std::invalid_argument("the algebra is not closed under squaring of matrices");
    out.push_back(*c);
  }
  return out;
}

bool check_pmap(const SuperAlgebra& g, const std::vector<SVec>& pmap) {
  const Field& F = g.field();
  if ((int)pmap.size() != g.dim()) return false;
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j)
      if (g.bracket(pmap[i], sv_unit(F, j)) != g.bracket(sv_unit(F, i), g.bracket(i, j))) return false;
  return true;
}

Queerified queerify(const SuperAlgebra& g, const BilinearForm& B, const std::vector<SVec>& pmap) {
  const Field& F = g.field();
  if (F.characteristic() != 2) throw std::invalid_argument("queerification is defined for p = 2");
  if (pmap.empty() && g.dim() > 0) throw std::invalid_argument("queerification needs the p-map of the algebra");
  if (g.dim_odd() != 0) throw std::invalid_argument("queerification takes a Lie algebra");
  if (!check_pmap(g, pmap)) throw std::invalid_argument("the supplied p-map violates ad(x^[2]) = ad(x)^2");
  if (!check_invariance(g, B).ok || !is_nondegenerate(F, B))
    throw std::invalid_argument("the form on g must be invariant and nondegenerate");
  int n = g.dim();
  std::vector<BasisElt> basis;
  for (auto& b : g.basis()) basis.push_back({b.name, 0, b.degree});
  for (auto& b : g.basis()) basis.push_back({"Pi(" + b.name + ")", 1, b.degree});
  Queerified q;
  q.alg = SuperAlgebra(F, basis);
  auto shift = [&](const SVec& v) {
    SVec s;
    for (auto& [i, x] : v) s.emplace_back(i + n, x);
    return s;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i <= j) q.alg.set_bracket(i, j, g.bracket(i, j));
      q.alg.set_bracket(i, j + n, shift(g.bracket(i, j)));
      // polarization of the p-map: (x+y)^[2] - x^[2] - y^[2] = [x, y]; zero on the diagonal
      if (i < j) q.alg.set_bracket(i + n, j + n, g.bracket(i, j));
    }
  for (int i = 0; i < n; ++i) q.alg.set_squaring(i + n, pmap[i]);
  q.alg.meta["series"] = "queerification";
  q.form.parity = 1;
  q.form.gram = mat_zero(F, 2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      q.form.gram[i][j + n] = B.gram[i][j];
      q.form.gram[j + n][i] = B.gram[j][i];
    }
  q.invariant = check_invariance(q.alg, q.form).ok;
  q.nondegenerate = is_nondegenerate(F, q.form);
  return q;
}

}  // namespace nisforge
