#include "nisforge/cartan.hpp"

#include <functional>
#include <stdexcept>

namespace nisforge {

namespace {

Mat from_ints(const Field& F, const std::vector<std::vector<int>>& a) {
  Mat M = mat_zero(F, (int)a.size(), (int)a.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) M[i][j] = F.from_int(a[i][j]);
  return M;
}

Scalar param(const Field& F, const std::map<std::string, Scalar>& ps, const std::string& key) {
  auto it = ps.find(key);
  if (it == ps.end()) throw std::invalid_argument("missing parameter '" + key + "'");
  if (it->second.fd() && !(it->second.field() == F)) throw std::invalid_argument("parameter '" + key + "' over another field");
  return it->second.fd() ? it->second : F.zero();
}

// one side (positive or negative) of the triangular decomposition
struct Side {
  int sigma;
  struct Elem {
    std::vector<int> root;  // nonnegative coordinates
    int parity, level, gen, child;
  };
  std::vector<Elem> elems;
  std::vector<std::vector<int>> levels;  // level k (from 1) -> ids
  std::vector<std::vector<SVec>> down;   // down[e][j]: [g_j^{-sigma}, e]; level 1 in h coordinates
  std::vector<std::vector<SVec>> up;     // up[e][i]: [g_i^{sigma}, e]
};

struct Builder {
  const CartanSpec& s;
  const Field& F;
  int n;
  bool truncated = false;

  Builder(const CartanSpec& spec) : s(spec), F(spec.F), n((int)spec.A.size()) {}

  // [g_j^{-sigma}, g_j^{sigma}] = kappa h_j
  Scalar kappa(int sigma, int j) const {
    if (sigma < 0) return F.one();
    return (s.parities[j] & 1) ? F.one() : -F.one();
  }

  Scalar weight(int sigma, const std::vector<int>& root, int i) const {
    Scalar w;
    for (int m = 0; m < n; ++m)
      if (root[m]) w += F.from_int(root[m]) * s.A[i][m];
    return sigma > 0 ? w : -w;
  }

  SVec apply_up(const Side& S, const SVec& v, int i) const {
    SVec out;
    for (auto& [e, c] : v) out = sv_axpy(out, c, S.up[e][i]);
    return out;
  }

  void build(Side& S) {
    int sigma = S.sigma;
    S.levels.push_back({});  // level 0 placeholder
    S.levels.push_back({});
    for (int i = 0; i < n; ++i) {
      std::vector<int> r(n, 0);
      r[i] = 1;
      S.elems.push_back({r, s.parities[i] & 1, 1, i, -1});
      S.levels[1].push_back(i);
      std::vector<SVec> d(n);
      d[i] = SVec{{i, kappa(sigma, i)}};
      S.down.push_back(d);
      S.up.push_back(std::vector<SVec>(n));
    }
    for (int k = 2;; ++k) {
      const std::vector<int>& prev = S.levels[k - 1];
      if (prev.empty()) {
        S.levels.pop_back();
        break;
      }
      if (k > s.degree_cap) {
        truncated = true;
        break;
      }
      std::map<int, int> pos;
      for (size_t t = 0; t < prev.size(); ++t) pos[prev[t]] = (int)t;
      int L = (int)prev.size();
      std::map<std::vector<int>, std::vector<std::pair<int, int>>> cands;
      for (int c : prev)
        for (int i = 0; i < n; ++i) {
          std::vector<int> r = S.elems[c].root;
          ++r[i];
          cands[r].emplace_back(i, c);
        }
      std::vector<int> level;
      for (auto& [root, list] : cands) {
        std::vector<SVec> phis;
        for (auto [i, c] : list) {
          SVec phi;
          for (int j = 0; j < n; ++j) {
            SVec comp;
            if (i == j) comp = SVec{{c, kappa(sigma, i) * weight(sigma, S.elems[c].root, i)}};
            SVec inner;
            if (S.elems[c].level == 1) {
              int m = S.elems[c].gen;
              if (m == j) inner = SVec{{i, -kappa(sigma, m) * (sigma > 0 ? s.A[m][i] : -s.A[m][i])}};
            } else {
              inner = apply_up(S, S.down[c][j], i);
            }
            bool neg = (s.parities[i] & s.parities[j] & 1);
            comp = sv_axpy(comp, neg ? -F.one() : F.one(), inner);
            for (auto& [e, x] : comp)
              if (!x.is_zero()) phi.emplace_back(j * L + pos.at(e), x);
          }
          phis.push_back(sv_normalize(phi));
        }
        Echelon E(F, n * L);
        std::vector<int> chosen, ids;
        for (size_t t = 0; t < list.size(); ++t)
          if (!phis[t].empty() && E.insert(phis[t])) chosen.push_back((int)t);
        std::vector<SVec> fam;
        for (int t : chosen) {
          auto [i, c] = list[t];
          int id = (int)S.elems.size();
          S.elems.push_back({root, (S.elems[c].parity + s.parities[i]) & 1, k, i, c});
          std::vector<SVec> d(n);
          for (auto& [col, x] : phis[t]) d[col / L].emplace_back(prev[col % L], x);
          for (auto& v : d) v = sv_normalize(v);
          S.down.push_back(d);
          S.up.push_back(std::vector<SVec>(n));
          ids.push_back(id);
          level.push_back(id);
          fam.push_back(phis[t]);
        }
        if (chosen.empty()) continue;
        SpanCoords sc(F, n * L, fam);
        for (size_t t = 0; t < list.size(); ++t) {
          if (phis[t].empty()) continue;
          auto co = sc.coords(phis[t]);
          if (!co) throw std::logic_error("internal: candidate outside its root space");
          SVec v;
          for (auto& [q, x] : *co) v.emplace_back(ids[q], x);
          S.up[list[t].second][list[t].first] = sv_normalize(v);
        }
      }
      S.levels.push_back(level);
    }
  }
};

}  // namespace

bool symmetrize(CartanSpec& s) {
  const Field& F = s.F;
  int n = (int)s.A.size();
  std::vector<Scalar> eps(n);
  std::vector<bool> seen(n, false);
  for (int r = 0; r < n; ++r) {
    if (seen[r]) continue;
    seen[r] = true;
    eps[r] = F.one();
    std::vector<int> stack{r};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if (j == i || s.A[i][j].is_zero() || seen[j]) continue;
        if (s.A[j][i].is_zero()) {
          s.eps.reset();
          s.B.reset();
          return false;
        }
        // eps_j A_ij = eps_i A_ji
        eps[j] = eps[i] * s.A[j][i] / s.A[i][j];
        seen[j] = true;
        stack.push_back(j);
      }
    }
  }
  Mat B = mat_zero(F, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B[i][j] = s.A[i][j] / eps[i];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(B[i][j] == B[j][i])) {
        s.eps.reset();
        s.B.reset();
        return false;
      }
  s.eps = eps;
  s.B = B;
  return true;
}

std::vector<std::string> catalog_names() {
  return {"A<n>", "B<n>", "C<n>", "D<n>", "br2", "wk4", "wk3", "ag2", "ag2_2", "ag2_3", "ag2_4", "svect_alpha_L",
          "svect_alpha_L_2", "svect_alpha_L_3"};
}

CartanSpec catalog(const std::string& name, const Field& F, const std::map<std::string, Scalar>& ps) {
  CartanSpec s;
  s.F = F;
  s.name = name;
  auto odd_by_diagonal = [&] {
    s.parities.assign(s.A.size(), 0);
    for (size_t i = 0; i < s.A.size(); ++i)
      if (s.A[i][i].is_zero() || s.A[i][i].is_one()) s.parities[i] = 1;
  };
  if (name.size() >= 2 && std::string("ABCD").find(name[0]) != std::string::npos &&
      name.find_first_not_of("0123456789", 1) == std::string::npos) {
    int n = std::stoi(name.substr(1));
    if (n < 1 || (name[0] == 'D' && n < 4) || (name[0] != 'A' && n < 2))
      throw std::invalid_argument("rank out of range for " + name);
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    for (int i = 0; i + 1 < n; ++i) a[i][i + 1] = a[i + 1][i] = -1;
    if (name[0] == 'B') a[n - 1][n - 2] = -2;
    if (name[0] == 'C') a[n - 2][n - 1] = -2;
    if (name[0] == 'D') {
      a[n - 2][n - 1] = a[n - 1][n - 2] = 0;
      a[n - 3][n - 1] = a[n - 1][n - 3] = -1;
    }
    s.A = from_ints(F, a);
    s.parities.assign(n, 0);
  } else if (name == "br2") {
    Scalar e = param(F, ps, "eps");
    s.A = from_ints(F, {{2, -1}, {-2, 0}});
    s.A[1][1] = F.one() - e;
    s.parities = {0, 0};
  } else if (name == "wk4" || name == "wk3") {
    Scalar a = param(F, ps, "alpha");
    if (a.is_zero() || a.is_one()) throw std::invalid_argument(name + " needs alpha other than 0 and 1");
    if (name == "wk4") {
      s.A = from_ints(F, {{0, 0, 1, 0}, {0, 0, 0, 0}, {1, 0, 0, 1}, {0, 0, 1, 0}});
      s.A[0][1] = s.A[1][0] = a;
    } else {
      s.A = from_ints(F, {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}});
      s.A[0][1] = s.A[1][0] = a;
    }
    s.parities.assign(s.A.size(), 0);
  } else if (name == "ag2" || name == "ag2_2" || name == "ag2_3" || name == "ag2_4") {
    static const std::vector<std::vector<std::vector<int>>> M = {
        {{0, 1, 0}, {-1, 2, -3}, {0, -1, 2}},
        {{0, 1, 0}, {-1, 0, 3}, {0, -1, 2}},
        {{0, -3, 1}, {-3, 0, 2}, {-1, -2, 2}},
        {{2, -1, 0}, {-3, 0, 2}, {0, -1, 1}}};
    int k = name == "ag2" ? 0 : name.back() - '1';
    s.A = from_ints(F, M[k]);
    odd_by_diagonal();
  } else if (name.rfind("svect_alpha_L", 0) == 0) {
    Scalar a = param(F, ps, "alpha");
    Scalar one = F.one(), two = F.from_int(2);
    int k = name == "svect_alpha_L" ? 1 : name.back() - '0';
    if (k == 1)
      s.A = {{two, -one, -one}, {one - a, F.zero(), a}, {one + a, -a, F.zero()}};
    else if (k == 2)
      s.A = {{F.zero(), one - a, a - two}, {one - a, F.zero(), a}, {-one, -one, two}};
    else if (k == 3)
      s.A = {{F.zero(), -a, a + one}, {-one, two, -one}, {one + a, -a - two, F.zero()}};
    else
      throw std::invalid_argument("unknown catalog entry '" + name + "'");
    s.parities.assign(3, 0);
    for (int i = 0; i < 3; ++i)
      if (s.A[i][i].is_zero()) s.parities[i] = 1;
  } else {
    throw std::invalid_argument("unknown catalog entry '" + name + "'");
  }
  symmetrize(s);
  return s;
}

CartanResult build_contragredient(const CartanSpec& spec) {
  int n = (int)spec.A.size();
  if (n == 0 || (int)spec.parities.size() != n) throw std::invalid_argument("Cartan matrix and parities disagree");
  if (spec.eps) {
    if (!spec.B) throw std::invalid_argument("symmetrizer without B");
    for (int i = 0; i < n; ++i) {
      if ((*spec.eps)[i].is_zero()) throw std::invalid_argument("zero symmetrizer entry");
      for (int j = 0; j < n; ++j)
        if (!(spec.A[i][j] == (*spec.eps)[i] * (*spec.B)[i][j]) || !((*spec.B)[i][j] == (*spec.B)[j][i]))
          throw std::invalid_argument("A != D B with B symmetric");
    }
  }
  const Field& F = spec.F;
  Builder bld(spec);
  Side P, N;
  P.sigma = 1;
  N.sigma = -1;
  bld.build(P);
  bld.build(N);

  int np = (int)P.elems.size(), nn = (int)N.elems.size();
  int dim = n + np + nn;
  auto gh = [&](int m) { return m; };
  auto gp = [&](int e) { return n + e; };
  auto gn = [&](int e) { return n + np + e; };

  CartanResult R;
  std::vector<BasisElt> basis;
  R.chev.roots.assign(dim, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) basis.push_back({"h" + std::to_string(i + 1), 0, 0});
  for (int e = 0; e < np; ++e) {
    basis.push_back({"x" + std::to_string(e + 1), P.elems[e].parity, P.elems[e].level});
    R.chev.roots[gp(e)] = P.elems[e].root;
  }
  for (int e = 0; e < nn; ++e) {
    basis.push_back({"y" + std::to_string(e + 1), N.elems[e].parity, -N.elems[e].level});
    for (int m = 0; m < n; ++m) R.chev.roots[gn(e)][m] = -N.elems[e].root[m];
  }
  for (int i = 0; i < n; ++i) {
    R.chev.h.push_back(gh(i));
    R.chev.x.push_back(gp(i));
    R.chev.y.push_back(gn(i));
  }
  for (int b = n; b < dim; ++b) R.chev.root_spaces[R.chev.roots[b]].push_back(b);
  R.truncated = bld.truncated;

  auto map_side = [&](const SVec& v, bool pos) {
    SVec out;
    for (auto& [e, x] : v) out.emplace_back(pos ? gp(e) : gn(e), x);
    return out;
  };
  // [x_i, z] and [y_i, z] on basis vectors
  auto gen_act = [&](int sigma, int i, int z) -> SVec {
    const Side& S = sigma > 0 ? P : N;
    const Side& O = sigma > 0 ? N : P;
    int self = sigma > 0 ? gp(i) : gn(i);
    if (z < n) {
      Scalar c = spec.A[z][i];
      return SVec{{self, sigma > 0 ? -c : c}};
    }
    bool zpos = z < n + np;
    int e = zpos ? z - n : z - n - np;
    if ((zpos && sigma > 0) || (!zpos && sigma < 0)) return map_side(S.up[e][i], sigma > 0);
    if (O.elems[e].level == 1) {
      SVec out;
      for (auto& [m, x] : O.down[e][i]) out.emplace_back(gh(m), x);
      return out;
    }
    return map_side(O.down[e][i], sigma < 0);
  };

  std::vector<std::vector<SVec>> rows(dim, std::vector<SVec>(dim));
  auto apply_row = [&](int a, const SVec& v) {
    SVec out;
    for (auto& [k, x] : v) out = sv_axpy(out, x, rows[a][k]);
    return out;
  };
  for (int i = 0; i < n; ++i)
    for (int z = 0; z < dim; ++z) {
      if (z < n) continue;
      Scalar w;
      for (int m = 0; m < n; ++m)
        if (R.chev.roots[z][m]) w += F.from_int(R.chev.roots[z][m]) * spec.A[i][m];
      if (!w.is_zero()) rows[gh(i)][z] = SVec{{z, w}};
    }
  for (int side = 0; side < 2; ++side) {
    const Side& S = side == 0 ? P : N;
    int sigma = side == 0 ? 1 : -1;
    for (int e = 0; e < (int)S.elems.size(); ++e) {
      int a = side == 0 ? gp(e) : gn(e);
      const auto& el = S.elems[e];
      if (el.child < 0) {
        for (int z = 0; z < dim; ++z) rows[a][z] = gen_act(sigma, el.gen, z);
        continue;
      }
      int g = side == 0 ? gp(el.gen) : gn(el.gen);
      int c = side == 0 ? gp(el.child) : gn(el.child);
      bool neg = (spec.parities[el.gen] & S.elems[el.child].parity & 1);
      for (int z = 0; z < dim; ++z) {
        SVec v = apply_row(g, rows[c][z]);
        SVec w = apply_row(c, rows[g][z]);
        rows[a][z] = neg ? sv_add(v, w) : sv_sub(v, w);
      }
    }
  }
  SuperAlgebra g(F, basis);
  for (int a = 0; a < dim; ++a)
    for (int z = a; z < dim; ++z)
      if (!rows[a][z].empty()) g.set_bracket(a, z, rows[a][z]);
  g.meta["series"] = spec.name.empty() ? "g(A)" : spec.name;
  if (R.truncated) g.meta["truncated"] = true;

  if (F.characteristic() == 2) {
    bool super = false;
    for (int p : spec.parities) super |= (p & 1);
    if (super)
      for (auto& [r, ids] : R.chev.root_spaces) {
        std::vector<int> d(n);
        bool pos = true;
        for (int m = 0; m < n; ++m) {
          d[m] = 2 * r[m];
          pos &= r[m] >= 0;
        }
        if (pos && R.chev.root_spaces.count(d)) R.double_root_caveat = true;
      }
  }

  if (spec.eps) {
    const auto& eps = *spec.eps;
    BilinearForm Bf;
    Bf.parity = 0;
    Bf.gram = mat_zero(F, dim, dim);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Bf.gram[i][j] = (*spec.B)[i][j] * eps[i] * eps[j];
    for (int e = 0; e < nn; ++e) {
      int b = gn(e);
      const auto& el = N.elems[e];
      for (int a : R.chev.root_spaces.at(el.root)) {
        Scalar v;
        if (el.child < 0) {
          v = a == gp(el.gen) ? eps[el.gen] : F.zero();
        } else {
          // (a, [y_i, c']) = ([a, y_i], c')
          SVec ay = rows[a][gn(el.gen)];
          int c = gn(el.child);
          for (auto& [k, x] : ay) v += x * Bf.gram[k][c];
        }
        Bf.gram[a][b] = v;
        bool neg = (g.parity(a) & g.parity(b) & 1);
        Bf.gram[b][a] = neg ? -v : v;
      }
    }
    R.recipe = Bf;
  }
  R.alg = std::move(g);
  return R;
}

SimpleRelative quotient_to_simple(const SuperAlgebra& g, const std::optional<BilinearForm>& B) {
  SimpleRelative S;
  S.derived = derived_algebra(g);
  S.center = center(S.derived.alg);
  QuotientResult q = quotient(S.derived.alg, S.center);
  S.alg = q.alg;
  if (B) S.form = descend(q, restrict_form(S.derived, *B));
  auto simp = is_simple(S.alg);
  S.simple = simp.decided && simp.simple;
  return S;
}

std::vector<RootPairing> diagonal_pairings(const CartanResult& r) {
  std::vector<RootPairing> out;
  if (!r.recipe) return out;
  const SuperAlgebra& g = r.alg;
  const Field& F = g.field();
  int n = (int)r.chev.h.size();
  std::map<std::vector<int>, bool> done;
  // positive basis elements in construction order; words recovered from the bracket table
  std::vector<std::vector<int>> words(g.dim());
  for (int i = 0; i < n; ++i) words[r.chev.x[i]] = {i};
  for (int b = n; b < g.dim(); ++b) {
    if (!g.degree(b) || *g.degree(b) <= 0) continue;
    const auto& root = r.chev.roots[b];
    if (words[b].empty()) {
      // find x_i and an earlier positive basis element c with [x_i, c] proportional to b
      for (int i = 0; i < n && words[b].empty(); ++i)
        for (int c = n; c < b && words[b].empty(); ++c) {
          if (words[c].empty()) continue;
          SVec v = g.bracket(r.chev.x[i], c);
          if (v.size() == 1 && v[0].first == b && v[0].second.is_one()) {
            words[b] = words[c];
            words[b].push_back(i);
          }
        }
    }
    if (done[root] || words[b].empty()) continue;
    done[root] = true;
    SVec xw = sv_unit(F, r.chev.x[words[b][0]]), yw = sv_unit(F, r.chev.y[words[b][0]]);
    for (size_t t = 1; t < words[b].size(); ++t) {
      xw = g.bracket(sv_unit(F, r.chev.x[words[b][t]]), xw);
      yw = g.bracket(sv_unit(F, r.chev.y[words[b][t]]), yw);
    }
    out.push_back({root, words[b], (*r.recipe)(xw, yw)});
  }
  return out;
}

}  // namespace nisforge
