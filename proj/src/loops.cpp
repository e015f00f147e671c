#include "nisforge/loops.hpp"

#include <array>
#include <map>
#include <stdexcept>

namespace nisforge {

namespace {

Scalar sgn(const Field& F, bool neg) { return neg ? -F.one() : F.one(); }

SVec column(const Mat& M, int j) {
  SVec v;
  for (size_t i = 0; i < M.size(); ++i)
    if (!M[i][j].is_zero()) v.emplace_back((int)i, M[i][j]);
  return v;
}

SVec act(const Mat& M, const SVec& v) {
  SVec r;
  for (auto& [j, x] : v) r = sv_axpy(r, x, column(M, j));
  return r;
}

// ---- Laurent polynomials in t with Grassmann theta_1..theta_n ----
// key: (power of t, mask of thetas)
struct LFun {
  std::map<std::pair<int, int>, Scalar> c;
  void add(int k, int mask, const Scalar& v) {
    if (v.is_zero()) return;
    auto it = c.find({k, mask});
    if (it == c.end()) c.emplace(std::make_pair(k, mask), v);
    else {
      it->second += v;
      if (it->second.is_zero()) c.erase(it);
    }
  }
  LFun& operator+=(const LFun& o) {
    for (auto& [key, v] : o.c) add(key.first, key.second, v);
    return *this;
  }
  LFun scaled(const Scalar& s) const {
    LFun r;
    if (s.is_zero()) return r;
    for (auto& [key, v] : c) r.c.emplace(key, v * s);
    return r;
  }
  bool zero() const { return c.empty(); }
  int parity() const {
    for (auto& [key, v] : c) return __builtin_popcount(key.second) & 1;
    return 0;
  }
};

int merge_sign(int a, int b) {
  // theta^a theta^b: count pairs (i in a, j in b) with i > j
  int s = 0;
  for (int j = 0; j < 31; ++j)
    if (b >> j & 1) s += __builtin_popcount(a >> (j + 1));
  return s & 1;
}

LFun mul(const Field& F, const LFun& f, const LFun& g) {
  LFun r;
  for (auto& [a, x] : f.c)
    for (auto& [b, y] : g.c) {
      if (a.second & b.second) continue;
      r.add(a.first + b.first, a.second | b.second, sgn(F, merge_sign(a.second, b.second)) * x * y);
    }
  return r;
}

LFun d_t(const Field& F, const LFun& f) {
  LFun r;
  for (auto& [a, x] : f.c)
    if (a.first != 0) r.add(a.first - 1, a.second, F.from_int(a.first) * x);
  return r;
}

// left derivative in theta_i
LFun d_theta(const Field& F, const LFun& f, int i) {
  LFun r;
  for (auto& [a, x] : f.c)
    if (a.second >> i & 1) r.add(a.first, a.second & ~(1 << i), sgn(F, __builtin_popcount(a.second & ((1 << i) - 1)) & 1) * x);
  return r;
}

LFun mono(const Field& F, int k, int mask, const Scalar& v) {
  LFun r;
  r.add(k, mask, v);
  (void)F;
  return r;
}

// vector field: comp[0] on d_t, comp[1+i] on d_theta_i
struct LField {
  std::vector<LFun> comp;
  int parity = 0;
};

LFun apply_field(const Field& F, const LField& X, const LFun& f) {
  LFun r = mul(F, X.comp[0], d_t(F, f));
  for (size_t i = 1; i < X.comp.size(); ++i) r += mul(F, X.comp[i], d_theta(F, f, (int)i - 1));
  return r;
}

LField field_bracket(const Field& F, const LField& X, const LField& Y) {
  LField Z;
  Z.parity = (X.parity + Y.parity) & 1;
  Scalar s = sgn(F, X.parity && Y.parity);
  for (size_t j = 0; j < X.comp.size(); ++j) {
    LFun v = apply_field(F, X, Y.comp[j]);
    v += apply_field(F, Y, X.comp[j]).scaled(-s);
    Z.comp.push_back(v);
  }
  return Z;
}

LFun divergence(const Field& F, const LField& X) {
  LFun r = d_t(F, X.comp[0]);
  // odd coordinates: (-1)^{p(X)+1} d_theta_i X^i
  for (size_t i = 1; i < X.comp.size(); ++i) r += d_theta(F, X.comp[i], (int)i - 1).scaled(sgn(F, !X.parity));
  return r;
}

// coordinates of flattened objects in a fixed family
struct Flat {
  std::map<std::tuple<int, int, int>, int> keys;
  int key(int comp, int k, int mask) {
    auto t = std::make_tuple(comp, k, mask);
    auto it = keys.find(t);
    if (it != keys.end()) return it->second;
    int id = (int)keys.size();
    keys.emplace(t, id);
    return id;
  }
  std::optional<SVec> lookup(const std::vector<LFun>& comps) const {
    SVec v;
    for (size_t c = 0; c < comps.size(); ++c)
      for (auto& [a, x] : comps[c].c) {
        auto it = keys.find(std::make_tuple((int)c, a.first, a.second));
        if (it == keys.end()) return std::nullopt;
        v.emplace_back(it->second, x);
      }
    return sv_normalize(std::move(v));
  }
  SVec insert(const std::vector<LFun>& comps) {
    SVec v;
    for (size_t c = 0; c < comps.size(); ++c)
      for (auto& [a, x] : comps[c].c) v.emplace_back(key((int)c, a.first, a.second), x);
    return sv_normalize(std::move(v));
  }
};

}  // namespace

// ---------------- loops ----------------

Mat parity_automorphism(const SuperAlgebra& g) {
  const Field& F = g.field();
  Mat P = mat_zero(F, g.dim(), g.dim());
  for (int i = 0; i < g.dim(); ++i) P[i][i] = g.parity(i) ? -F.one() : F.one();
  return P;
}

LoopAlgebra loop_build(const SuperAlgebra& target, const BilinearForm& tr, int window, const Mat& psi, int order,
                       const Scalar& zeta) {
  if (window < 1) throw std::invalid_argument("window must be at least 1");
  return loop_build_range(target, tr, -window, window, psi, order, zeta);
}

LoopAlgebra loop_build_range(const SuperAlgebra& target, const BilinearForm& tr, int lo, int hi, const Mat& psi,
                             int order, const Scalar& zeta) {
  const Field& F = target.field();
  int n = target.dim();
  if (lo > 0 || hi < 0 || hi - lo < 1) throw std::invalid_argument("level range must contain 0 and have length >= 2");
  LoopAlgebra L;
  L.target = target;
  L.tr = tr;
  L.lo = lo;
  L.hi = hi;
  L.order = psi.empty() ? 1 : order;
  auto e = [&](int i) { return sv_unit(F, i); };
  // eigenspaces, per parity so that every vector is homogeneous
  std::vector<std::vector<SVec>> eig(L.order);
  if (psi.empty()) {
    for (int i = 0; i < n; ++i) eig[0].push_back(e(i));
  } else {
    if ((int)psi.size() != n) throw std::invalid_argument("twist has the wrong size");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!psi[i][j].is_zero() && target.parity(i) != target.parity(j))
          throw std::invalid_argument("twist does not preserve parity");
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        if (act(psi, target.bracket(i, j)) != target.bracket(column(psi, i), column(psi, j)))
          throw std::invalid_argument("twist is not an automorphism on (" + target.basis()[i].name + ", " +
                                      target.basis()[j].name + ")");
    Scalar z = F.one();
    int total = 0;
    for (int k = 0; k < L.order; ++k) {
      for (int par = 0; par < 2; ++par) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
          if (target.parity(i) == par) idx.push_back(i);
        if (idx.empty()) continue;
        Mat A(idx.size(), std::vector<Scalar>(idx.size(), F.zero()));
        for (size_t a = 0; a < idx.size(); ++a)
          for (size_t b = 0; b < idx.size(); ++b) A[a][b] = psi[idx[a]][idx[b]] - (a == b ? z : F.zero());
        for (auto& v : mat_kernel(F, A)) {
          SVec w;
          for (auto& [t, x] : v) w.emplace_back(idx[t], x);
          eig[k].push_back(w);
          ++total;
        }
      }
      z = z * zeta;
    }
    if (!z.is_one()) throw std::invalid_argument("zeta is not a root of unity of the given order");
    if (total != n) throw std::invalid_argument("eigenspaces of the twist do not span the target");
  }
  std::vector<SpanCoords> sc;
  for (auto& vs : eig) sc.emplace_back(F, n, vs);
  std::vector<BasisElt> basis;
  std::vector<int> cls;
  for (int d = lo; d <= hi; ++d) {
    int k = ((d % L.order) + L.order) % L.order;
    for (size_t a = 0; a < eig[k].size(); ++a) {
      const SVec& v = eig[k][a];
      std::string nm = (v.size() == 1 && v[0].second.is_one()) ? target.basis()[v[0].first].name
                                                                : "(" + sv_str(v, target.names()) + ")";
      basis.push_back({nm + " t^" + std::to_string(d), target.parity_of(v), d});
      L.vec.push_back(v);
      L.level.push_back(d);
      cls.push_back((int)a);
    }
  }
  L.alg = SuperAlgebra(F, basis);
  // first index of each level
  std::map<int, int> start;
  for (int i = (int)L.level.size() - 1; i >= 0; --i) start[L.level[i]] = i;
  int N = L.alg.dim();
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) {
      int d = L.level[i] + L.level[j];
      if (!L.exact(i, j)) continue;
      SVec b = target.bracket(L.vec[i], L.vec[j]);
      if (b.empty()) continue;
      int k = ((d % L.order) + L.order) % L.order;
      auto c = sc[k].coords(b);
      if (!c) throw std::logic_error("bracket left the eigenspace grading");
      SVec v;
      for (auto& [a, x] : *c) v.emplace_back(start[d] + a, x);
      L.alg.set_bracket(i, j, v);
    }
  L.alg.meta["series"] = "loop";
  L.alg.meta["truncated"] = true;
  L.alg.meta["levels"] = {lo, hi};
  L.alg.meta["twist_order"] = L.order;
  return L;
}

BilinearForm residue_nis(const LoopAlgebra& L, int power) {
  const Field& F = L.alg.field();
  int n = L.alg.dim();
  BilinearForm B;
  B.parity = L.tr.parity;
  B.gram = mat_zero(F, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (L.level[i] + L.level[j] == power) B.gram[i][j] = L.tr(L.vec[i], L.vec[j]);
  return B;
}

Scalar central_cocycle(const LoopAlgebra& L, const SVec& f, const SVec& g) {
  const Field& F = L.alg.field();
  Scalar s = F.zero();
  for (auto& [i, a] : f)
    for (auto& [j, b] : g)
      if (L.level[i] + L.level[j] == 0 && L.level[j] != 0)
        s += a * b * F.from_int(L.level[j]) * L.tr(L.vec[i], L.vec[j]);
  return s;
}

Mat central_cocycle_matrix(const LoopAlgebra& L) {
  const Field& F = L.alg.field();
  int n = L.alg.dim();
  Mat c = mat_zero(F, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c[i][j] = central_cocycle(L, sv_unit(F, i), sv_unit(F, j));
  return c;
}

namespace {

Scalar pair(const Mat& G, const SVec& x, const SVec& y, const Field& F) {
  Scalar s = F.zero();
  for (auto& [i, a] : x)
    for (auto& [j, b] : y)
      if (!G[i][j].is_zero()) s += a * b * G[i][j];
  return s;
}

}  // namespace

InteriorReport interior_invariance(const Truncated& T, const BilinearForm& B) {
  const Field& F = T.alg.field();
  int n = T.alg.dim();
  InteriorReport r;
  for (int x = 0; x < n && r.ok; ++x)
    for (int y = 0; y < n && r.ok; ++y) {
      if (!T.exact(x, y)) continue;
      SVec xy = T.alg.bracket(x, y);
      for (int z = 0; z < n; ++z) {
        if (!T.exact(y, z)) continue;
        ++r.checked;
        if (pair(B.gram, xy, sv_unit(F, z), F) != pair(B.gram, sv_unit(F, x), T.alg.bracket(y, z), F)) {
          r.ok = false;
          r.witness = Triple{x, y, z};
          break;
        }
      }
    }
  return r;
}

InteriorReport interior_cocycle_check(const Truncated& T, const Mat& c) {
  const Field& F = T.alg.field();
  const SuperAlgebra& g = T.alg;
  int n = g.dim();
  InteriorReport r;
  auto e = [&](int i) { return sv_unit(F, i); };
  for (int x = 0; x < n && r.ok; ++x)
    for (int y = 0; y < n; ++y) {
      ++r.checked;
      if (c[x][y] != -sgn(F, g.parity(x) && g.parity(y)) * c[y][x]) {
        r.ok = false;
        r.witness = Triple{x, y, y};
        break;
      }
    }
  for (int x = 0; x < n && r.ok; ++x)
    for (int y = 0; y < n && r.ok; ++y)
      for (int z = 0; z < n; ++z) {
        if (!T.exact(x, y) || !T.exact(y, z) || !T.exact(x, z)) continue;
        ++r.checked;
        Scalar lhs = pair(c, e(x), g.bracket(y, z), F);
        Scalar rhs = pair(c, g.bracket(x, y), e(z), F) +
                     sgn(F, g.parity(x) && g.parity(y)) * pair(c, e(y), g.bracket(x, z), F);
        if (lhs != rhs) {
          r.ok = false;
          r.witness = Triple{x, y, z};
          break;
        }
      }
  return r;
}

Truncated central_extension(const Truncated& T, const Mat& c, int parity, const std::string& name, int degree) {
  const Field& F = T.alg.field();
  int n = T.alg.dim();
  std::vector<BasisElt> basis = T.alg.basis();
  basis.push_back({name, parity, degree});
  Truncated X;
  X.alg = SuperAlgebra(F, basis);
  X.level = T.level;
  X.level.push_back(0);
  X.lo = T.lo;
  X.hi = T.hi;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      SVec v = T.alg.stored(i, j);
      if (!c[i][j].is_zero()) v = sv_axpy(v, c[i][j], sv_unit(F, n));
      if (!v.empty()) X.alg.set_bracket(i, j, v);
    }
  X.alg.meta = T.alg.meta;
  X.alg.meta["central"] = name;
  return X;
}

// ---------------- svect_alpha^L(1|2) ----------------

namespace {

const char* kFamilies[] = {"L", "E", "F", "G", "lambda", "eps", "phi", "gamma"};

LField stringy_element(const Field& F, const Scalar& al, int fam, int n) {
  LField X;
  X.comp.assign(3, LFun{});
  Scalar half = F.from_frac(1, 2);
  const int T1 = 1, T2 = 2, T12 = 3;
  switch (fam) {
    case 0:  // t^n (t d_t + 1/2 (n+1+alpha)(theta1 d1 + theta2 d2))
      X.comp[0].add(n + 1, 0, F.one());
      X.comp[1].add(n, T1, half * (F.from_int(n + 1) + al));
      X.comp[2].add(n, T2, half * (F.from_int(n + 1) + al));
      break;
    case 1: X.comp[1].add(n, T2, F.one()); break;  // t^n theta2 d1
    case 2: X.comp[2].add(n, T1, F.one()); break;  // t^n theta1 d2
    case 3:
      X.comp[2].add(n, T2, F.one());
      X.comp[1].add(n, T1, -F.one());
      break;
    case 4:  // t^{n-1} theta2 (t d_t + (n+alpha) theta1 d1)
      X.comp[0].add(n, T2, F.one());
      X.comp[1].add(n - 1, T12, -(F.from_int(n) + al));  // theta2 theta1 = -theta1 theta2
      X.parity = 1;
      break;
    case 5:  // t^{n-1} theta1 (t d_t + (n+alpha) theta2 d2)
      X.comp[0].add(n, T1, F.one());
      X.comp[2].add(n - 1, T12, F.from_int(n) + al);
      X.parity = 1;
      break;
    case 6:
      X.comp[1].add(n + 1, 0, F.one());
      X.parity = 1;
      break;
    default:
      X.comp[2].add(n + 1, 0, F.one());
      X.parity = 1;
      break;
  }
  return X;
}

// principal grading deg X_i^{+-} = +-1: weights t -> 3, theta1 -> 2, theta2 -> 1
int principal_degree(int fam, int n) {
  static const int shift[] = {0, -1, 1, 0, -2, -1, 1, 2};
  return 3 * n + shift[fam];
}

}  // namespace

Scalar stringy_cocycle_L(const Scalar& alpha, int m) {
  const Field& F = alpha.field();
  Scalar a1 = alpha + F.one();
  return F.from_frac(m, 2) * (F.from_int((long)m * m) - a1 * a1);
}

Scalar stringy_cocycle_G(int m) { return Field::Q().from_int(m); }

Stringy svect_alpha_build(const Field& F, const Scalar& alpha, int window) {
  if (F.characteristic() != 0) throw std::invalid_argument("svect_alpha^L is built over Q");
  {
    mpq_class q = alpha.rational();
    if (q.get_den() == 1) throw std::invalid_argument("alpha must not be an integer");
  }
  if (window < 2) throw std::invalid_argument("window must be at least 2");
  Stringy S;
  S.alpha = alpha;
  S.lo = -window;
  S.hi = window;
  // family over the doubled window for coordinates of brackets
  Flat flat;
  std::vector<LField> big;
  std::vector<int> big_n;
  for (int n = -2 * window; n <= 2 * window; ++n)
    for (int f = 0; f < 8; ++f) {
      big.push_back(stringy_element(F, alpha, f, n));
      big_n.push_back(n);
    }
  std::vector<SVec> bigv;
  for (auto& X : big) bigv.push_back(flat.insert(X.comp));
  SpanCoords sc(F, (int)flat.keys.size(), bigv);
  if (!sc.independent()) throw std::logic_error("stringy basis is dependent");
  std::vector<BasisElt> basis;
  std::vector<int> pos;  // index in big
  for (size_t b = 0; b < big.size(); ++b) {
    int n = big_n[b], f = (int)(b % 8);
    if (std::abs(n) > window) continue;
    basis.push_back({std::string(kFamilies[f]) + "_" + std::to_string(n), big[b].parity, principal_degree(f, n)});
    S.family.push_back(kFamilies[f]);
    S.index.push_back(n);
    S.level.push_back(n);
    pos.push_back((int)b);
  }
  std::map<int, int> where;  // big index -> basis index
  for (size_t i = 0; i < pos.size(); ++i) where[pos[i]] = (int)i;
  S.alg = SuperAlgebra(F, basis);
  int N = S.alg.dim();
  auto coords = [&](const LField& X) -> SVec {
    auto v = flat.lookup(X.comp);
    std::optional<SVec> c;
    if (v) c = sc.coords(*v);
    if (!c) throw std::logic_error("bracket does not close on the stringy basis");
    return *c;
  };
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) {
      if (!S.exact(i, j)) continue;
      SVec c = coords(field_bracket(F, big[pos[i]], big[pos[j]]));
      SVec v;
      for (auto& [b, x] : c) {
        auto it = where.find(b);
        if (it == where.end()) throw std::logic_error("bracket left the window");
        v.emplace_back(it->second, x);
      }
      S.alg.set_bracket(i, j, sv_normalize(std::move(v)));
    }
  // alpha f = -t Div D
  S.membership = true;
  LFun t1 = mono(F, 1, 0, F.one());
  for (int i = 0; i < N; ++i) {
    const LField& X = big[pos[i]];
    LFun lhs = X.comp[0].scaled(alpha);
    lhs += mul(F, t1, divergence(F, X));
    if (!lhs.zero()) S.membership = false;
  }
  // E_alpha = t d_t + alpha theta1 d1 + theta2 d2
  LField E;
  E.comp.assign(3, LFun{});
  E.comp[0].add(1, 0, F.one());
  E.comp[1].add(0, 1, alpha);
  E.comp[2].add(0, 2, F.one());
  S.E_alpha = mat_zero(F, N, N);
  for (int j = 0; j < N; ++j)
    for (auto& [b, x] : coords(field_bracket(F, E, big[pos[j]]))) S.E_alpha[where.at(b)][j] = x;
  S.alg.meta["series"] = "svect_alpha_L(1|2)";
  S.alg.meta["truncated"] = true;
  S.alg.meta["window"] = window;

  // even E_alpha-invariant cocycles: weights n + kappa (1 - alpha) sum to 0; every such triple is interior
  static const int kappa[] = {0, 1, -1, 0, 0, -1, 1, 0};
  std::vector<int> kap;
  for (int i = 0; i < N; ++i) kap.push_back(kappa[pos[i] % 8]);
  std::vector<std::pair<int, int>> unk;
  std::map<std::pair<int, int>, int> uid;
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) {
      if (S.level[i] + S.level[j] != 0 || kap[i] + kap[j] != 0 || S.alg.parity(i) != S.alg.parity(j)) continue;
      if (i == j && !S.alg.parity(i)) continue;
      uid[{i, j}] = (int)unk.size();
      unk.emplace_back(i, j);
    }
  auto entry = [&](int a, int b) -> std::pair<int, Scalar> {
    if (a <= b) {
      auto it = uid.find({a, b});
      return {it == uid.end() ? -1 : it->second, F.one()};
    }
    auto it = uid.find({b, a});
    return {it == uid.end() ? -1 : it->second, -sgn(F, S.alg.parity(a) && S.alg.parity(b))};
  };
  std::map<int, std::vector<int>> by_level;
  for (int i = 0; i < N; ++i) by_level[S.level[i]].push_back(i);
  Echelon E_(F, (int)unk.size());
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      auto it = by_level.find(-S.level[x] - S.level[y]);
      if (it == by_level.end()) continue;
      SVec xy = S.alg.bracket(x, y);
      for (int z : it->second) {
        // c(x,[y,z]) - c([x,y],z) - (-1)^{p(x)p(y)} c(y,[x,z])
        SVec row;
        for (auto& [k, v] : S.alg.bracket(y, z)) {
          auto [u, s] = entry(x, k);
          if (u >= 0) row.emplace_back(u, s * v);
        }
        for (auto& [k, v] : xy) {
          auto [u, s] = entry(k, z);
          if (u >= 0) row.emplace_back(u, -s * v);
        }
        Scalar sx = sgn(F, S.alg.parity(x) && S.alg.parity(y));
        for (auto& [k, v] : S.alg.bracket(x, z)) {
          auto [u, s] = entry(y, k);
          if (u >= 0) row.emplace_back(u, -sx * s * v);
        }
        row = sv_normalize(std::move(row));
        if (!row.empty()) E_.insert(std::move(row));
      }
    }
  auto K = E_.kernel();
  S.cocycle_space = (int)K.size();
  auto cmat = [&](const SVec& sol) {
    Mat c = mat_zero(F, N, N);
    for (auto& [u, v] : sol) {
      auto [i, j] = unk[u];
      c[i][j] = v;
      if (i != j) c[j][i] = -sgn(F, S.alg.parity(i) && S.alg.parity(j)) * v;
    }
    return c;
  };
  // normalization: c(L_m, L_-m) as quoted for m = 1, 2 (scale and the L_0 coboundary), c(L_1, G_-1) = 0 (the
  // G_0 coboundary). Everything else is a prediction.
  auto at = [&](const std::string& s) { return S.alg.index_of(s); };
  std::vector<std::pair<std::pair<int, int>, Scalar>> norm = {
      {{at("L_1"), at("L_-1")}, stringy_cocycle_L(alpha, 1)},
      {{at("L_2"), at("L_-2")}, stringy_cocycle_L(alpha, 2)},
      {{at("L_1"), at("G_-1")}, F.zero()}};
  Mat A;
  std::vector<Scalar> rhs;
  std::vector<Mat> Ks;
  for (auto& k : K) Ks.push_back(cmat(k));
  for (auto& [ij, v] : norm) {
    std::vector<Scalar> row;
    for (auto& c : Ks) row.push_back(c[ij.first][ij.second]);
    A.push_back(row);
    rhs.push_back(v);
  }
  S.cocycle = mat_zero(F, N, N);
  if (!Ks.empty()) {
    auto sol = solve_linear(F, A, rhs);
    if (sol.consistent)
      for (size_t k = 0; k < Ks.size(); ++k)
        if (!sol.particular[k].is_zero())
          for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) S.cocycle[i][j] += sol.particular[k] * Ks[k][i][j];
  }
  return S;
}

// ---------------- k^L(1|n) ----------------

namespace {

LFun contact_kb(const Field& F, int n_odd, const LFun& f, const LFun& g) {
  auto two_minus_E = [&](const LFun& h) {
    LFun r;
    for (auto& [a, x] : h.c) r.add(a.first, a.second, F.from_int(2 - __builtin_popcount(a.second)) * x);
    return r;
  };
  LFun r = mul(F, two_minus_E(f), d_t(F, g));
  r += mul(F, d_t(F, f), two_minus_E(g)).scaled(-F.one());
  // minus the Poisson bracket -(-1)^{p(f)} sum d_i f d_i g, per homogeneous part of f
  std::array<LFun, 2> parts;
  for (auto& [a, x] : f.c) parts[__builtin_popcount(a.second) & 1].add(a.first, a.second, x);
  for (int pf = 0; pf < 2; ++pf)
    for (int i = 0; i < n_odd; ++i)
      r += mul(F, d_theta(F, parts[pf], i), d_theta(F, g, i)).scaled(sgn(F, pf));
  return r;
}

}  // namespace

Truncated contact_loop(const Field& F, int n_odd, int window) {
  if (n_odd > 12) throw std::invalid_argument("too many odd indeterminates");
  Truncated T;
  T.lo = -window;
  T.hi = window;
  std::vector<BasisElt> basis;
  std::vector<std::pair<int, int>> mons;
  std::map<std::pair<int, int>, int> where;
  // deg t = 2, deg theta = 1, K_f has degree deg f - 2
  for (int d = -window; d <= window; ++d)
    for (int mask = 0; mask < (1 << n_odd); ++mask) {
      int s = __builtin_popcount(mask);
      int twok = d + 2 - s;
      if (twok % 2) continue;
      int k = twok / 2;
      std::string nm = "t^" + std::to_string(k);
      for (int i = 0; i < n_odd; ++i)
        if (mask >> i & 1) nm += " th" + std::to_string(i + 1);
      where[{k, mask}] = (int)mons.size();
      mons.emplace_back(k, mask);
      basis.push_back({nm, s & 1, d});
      T.level.push_back(d);
    }
  T.alg = SuperAlgebra(F, basis);
  int N = T.alg.dim();
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) {
      if (!T.exact(i, j)) continue;
      LFun r = contact_kb(F, n_odd, mono(F, mons[i].first, mons[i].second, F.one()),
                          mono(F, mons[j].first, mons[j].second, F.one()));
      SVec v;
      for (auto& [a, x] : r.c) v.emplace_back(where.at(a), x);
      T.alg.set_bracket(i, j, sv_normalize(std::move(v)));
    }
  T.alg.meta["series"] = "k^L(1|" + std::to_string(n_odd) + ")";
  T.alg.meta["truncated"] = true;
  T.alg.meta["window"] = window;
  T.alg.meta["n_odd"] = n_odd;
  return T;
}

BilinearForm contact_residue_pairing(const Truncated& T, int n_odd) {
  const Field& F = T.alg.field();
  int N = T.alg.dim();
  int top = (1 << n_odd) - 1;
  std::vector<std::pair<int, int>> mons;
  for (int i = 0; i < N; ++i) {
    // recover (k, mask) from the name
    const std::string& nm = T.alg.basis()[i].name;
    int k = std::stoi(nm.substr(2));
    int mask = 0;
    for (size_t p = nm.find(" th"); p != std::string::npos; p = nm.find(" th", p + 1))
      mask |= 1 << (std::stoi(nm.substr(p + 3)) - 1);
    mons.emplace_back(k, mask);
  }
  BilinearForm B;
  B.parity = n_odd & 1;
  B.gram = mat_zero(F, N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      auto [ki, mi] = mons[i];
      auto [kj, mj] = mons[j];
      if (ki + kj != -1 || (mi | mj) != top || (mi & mj)) continue;
      B.gram[i][j] = sgn(F, merge_sign(mi, mj));
    }
  return B;
}

// ---------------- graded search ----------------

GradedSearch graded_nis_search(const Truncated& T, uint64_t seed) {
  const SuperAlgebra& g = T.alg;
  const Field& F = g.field();
  int n = g.dim();
  if (!g.graded()) throw std::invalid_argument("graded_nis_search needs a grading");
  std::map<int, std::vector<int>> by_deg;
  for (int i = 0; i < n; ++i) by_deg[*g.degree(i)].push_back(i);
  GradedSearch out;
  std::string cert;
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<std::pair<int, int>> unk;
    std::map<std::pair<int, int>, int> uid;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        if (*g.degree(i) + *g.degree(j) != 0 || ((g.parity(i) + g.parity(j)) & 1) != parity) continue;
        if (i == j && g.parity(i) && F.characteristic() != 2) continue;
        uid[{i, j}] = (int)unk.size();
        unk.emplace_back(i, j);
      }
    auto entry = [&](int a, int b) -> std::pair<int, Scalar> {
      if (a <= b) {
        auto it = uid.find({a, b});
        return {it == uid.end() ? -1 : it->second, F.one()};
      }
      auto it = uid.find({b, a});
      return {it == uid.end() ? -1 : it->second, sgn(F, g.parity(a) && g.parity(b))};
    };
    FormSpace sp;
    sp.parity = parity;
    if (!unk.empty()) {
      Echelon E(F, (int)unk.size());
      for (int x = 0; x < n && E.rank() < (int)unk.size(); ++x)
        for (int y = 0; y < n; ++y) {
          if (!T.exact(x, y)) continue;
          auto it = by_deg.find(-*g.degree(x) - *g.degree(y));
          if (it == by_deg.end()) continue;
          SVec xy = g.bracket(x, y);
          for (int z : it->second) {
            if (!T.exact(y, z)) continue;
            SVec row;
            for (auto& [k, v] : xy) {
              auto [u, s] = entry(k, z);
              if (u >= 0) row.emplace_back(u, s * v);
            }
            for (auto& [k, v] : g.bracket(y, z)) {
              auto [u, s] = entry(x, k);
              if (u >= 0) row.emplace_back(u, -s * v);
            }
            row = sv_normalize(std::move(row));
            if (!row.empty()) E.insert(std::move(row));
          }
        }
      for (auto& k : E.kernel()) {
        BilinearForm B;
        B.parity = parity;
        B.gram = mat_zero(F, n, n);
        for (auto& [u, v] : k) {
          auto [i, j] = unk[u];
          B.gram[i][j] = v;
          if (i != j) B.gram[j][i] = sgn(F, g.parity(i) && g.parity(j)) * v;
        }
        sp.basis.push_back(B);
      }
    }
    NisResult r = find_nis(F, sp, seed);
    cert += (parity ? "odd" : "even") + std::string(": ") + std::to_string(sp.dim()) + " graded invariant forms, " +
            (r.form ? "nondegenerate found" : r.certified_none ? "none nondegenerate (certified)"
                                                                : "none nondegenerate (" + r.method + ")") +
            "; ";
    if (r.form && !out.nis.form) {
      out.space = sp;
      out.nis = r;
    } else if (!out.nis.form && parity == 0) {
      out.space = sp;
      out.nis = r;
    }
  }
  out.certificate = cert;
  return out;
}

}  // namespace nisforge
