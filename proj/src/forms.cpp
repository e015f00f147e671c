#include "nisforge/forms.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

namespace nisforge {

Scalar BilinearForm::operator()(const SVec& x, const SVec& y) const {
  Scalar s;
  for (auto& [i, a] : x)
    for (auto& [j, b] : y)
      if (!gram[i][j].is_zero()) s += a * b * gram[i][j];
  return s;
}

std::vector<int> generating_set(const SuperAlgebra& g) {
  int n = g.dim();
  const Field& F = g.field();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (g.graded()) {
    int mind = *g.degree(0);
    for (int i = 0; i < n; ++i) mind = std::min(mind, *g.degree(i));
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      int da = *g.degree(a), db = *g.degree(b);
      bool la = da == mind, lb = db == mind;
      if (la != lb) return la;
      return da > db;
    });
  }
  std::vector<int> Y;
  Echelon cur(F, n);
  for (int i : order) {
    if (cur.contains(SVec{{i, F.one()}})) continue;
    Y.push_back(i);
    std::vector<SVec> gens;
    for (int y : Y) gens.push_back(SVec{{y, F.one()}});
    Subspace S = subalgebra_generated(g, gens);
    cur = Echelon(F, n);
    for (auto& v : S.basis) cur.insert(v);
    if (cur.rank() == n) break;
  }
  return Y;
}

namespace {

struct Layout {
  int n = 0;
  std::vector<int> idx;  // n*n -> unknown index or -1 (only i<=j used)
  std::vector<std::pair<int, int>> pairs;
  int count() const { return (int)pairs.size(); }
};

Layout make_layout(const SuperAlgebra& g, int parity, const FormOptions& opt) {
  Layout L;
  L.n = g.dim();
  L.idx.assign((size_t)L.n * L.n, -1);
  bool char2 = g.field().characteristic() == 2;
  for (int i = 0; i < L.n; ++i)
    for (int j = i; j < L.n; ++j) {
      if (((g.parity(i) + g.parity(j)) & 1) != parity) continue;
      if (i == j && g.parity(i) && !char2) continue;  // B(x,x) = -B(x,x) for odd x
      if (opt.degree_sum) {
        if (!g.degree(i) || !g.degree(j) || *g.degree(i) + *g.degree(j) != *opt.degree_sum) continue;
      }
      L.idx[(size_t)i * L.n + j] = (int)L.pairs.size();
      L.pairs.emplace_back(i, j);
    }
  return L;
}

// B(e_a, e_b) as (unknown, sign) ; unknown -1 means identically zero
inline std::pair<int, bool> entry(const SuperAlgebra& g, const Layout& L, int a, int b) {
  if (a <= b) return {L.idx[(size_t)a * L.n + b], false};
  int u = L.idx[(size_t)b * L.n + a];
  bool neg = g.parity(a) && g.parity(b);
  return {u, neg};
}

std::vector<SVec> invariance_rows(const SuperAlgebra& g, const Layout& L, const std::vector<int>& Y) {
  const Field& F = g.field();
  int n = g.dim();
  std::vector<SVec> rows;
  std::vector<SVec> xy(n), yz(n);
  for (int y : Y) {
    for (int x = 0; x < n; ++x) xy[x] = g.bracket(x, y);
    for (int z = 0; z < n; ++z) yz[z] = g.bracket(y, z);
    for (int x = 0; x < n; ++x)
      for (int z = 0; z < n; ++z) {
        if (xy[x].empty() && yz[z].empty()) continue;
        SVec r;
        for (auto& [k, c] : xy[x]) {
          auto [u, neg] = entry(g, L, k, z);
          if (u >= 0) r.emplace_back(u, neg ? -c : c);
        }
        for (auto& [k, c] : yz[z]) {
          auto [u, neg] = entry(g, L, x, k);
          if (u >= 0) r.emplace_back(u, neg ? c : -c);
        }
        r = sv_normalize(std::move(r));
        if (!r.empty()) rows.push_back(std::move(r));
      }
  }
  (void)F;
  return rows;
}

BilinearForm form_from_unknowns(const SuperAlgebra& g, const Layout& L, int parity, const SVec& sol) {
  const Field& F = g.field();
  BilinearForm B;
  B.parity = parity;
  B.gram = mat_zero(F, L.n, L.n);
  for (auto& [u, v] : sol) {
    auto [i, j] = L.pairs[u];
    B.gram[i][j] = v;
    if (i != j) B.gram[j][i] = (g.parity(i) && g.parity(j)) ? -v : v;
  }
  return B;
}

std::vector<int> acting_set(const SuperAlgebra& g, const FormOptions& opt) {
  if (opt.all_triples || g.has_squaring()) {
    std::vector<int> all(g.dim());
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  return generating_set(g);
}

}  // namespace

FormSpace invariant_forms(const SuperAlgebra& g, int parity, const FormOptions& opt) {
  FormSpace S;
  S.parity = parity;
  Layout L = make_layout(g, parity, opt);
  if (L.count() == 0) return S;
  Echelon E(g.field(), L.count());
  for (auto& r : invariance_rows(g, L, acting_set(g, opt))) {
    E.insert(std::move(r));
    if (E.rank() == L.count()) break;
  }
  for (auto& r : opt.extra_equations) E.insert(r);
  for (auto& k : E.kernel()) S.basis.push_back(form_from_unknowns(g, L, parity, k));
  return S;
}

std::optional<BilinearForm> invariant_form_with(const SuperAlgebra& g, int parity,
                                                const std::vector<GramConstraint>& cs, const FormOptions& opt) {
  Layout L = make_layout(g, parity, opt);
  std::vector<SVec> rows = invariance_rows(g, L, acting_set(g, opt));
  std::vector<Scalar> rhs(rows.size(), g.field().zero());
  for (auto& r : opt.extra_equations) {
    rows.push_back(r);
    rhs.push_back(g.field().zero());
  }
  for (auto& c : cs) {
    auto [u, neg] = entry(g, L, c.i, c.j);
    if (u < 0) {
      if (!c.value.is_zero()) return std::nullopt;
      continue;
    }
    rows.push_back(SVec{{u, neg ? -g.field().one() : g.field().one()}});
    rhs.push_back(c.value);
  }
  LinearSolution sol = solve_linear_sparse(g.field(), L.count(), rows, rhs);
  if (!sol.consistent) return std::nullopt;
  return form_from_unknowns(g, L, parity, sv_from_dense(sol.particular));
}

BilinearForm combine(const Field& F, const FormSpace& space, const std::vector<Scalar>& coeffs) {
  BilinearForm B;
  B.parity = space.parity;
  int n = space.basis.empty() ? 0 : (int)space.basis[0].gram.size();
  B.gram = mat_zero(F, n, n);
  for (size_t t = 0; t < space.basis.size(); ++t) {
    if (coeffs[t].is_zero()) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!space.basis[t].gram[i][j].is_zero()) B.gram[i][j] += coeffs[t] * space.basis[t].gram[i][j];
  }
  return B;
}

bool is_nondegenerate(const Field& F, const BilinearForm& B) {
  return mat_rank(F, B.gram) == (int)B.gram.size();
}

bool is_supersymmetric(const SuperAlgebra& g, const BilinearForm& B) {
  int n = g.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Scalar s = (g.parity(i) && g.parity(j)) ? -B.gram[j][i] : B.gram[j][i];
      if (B.gram[i][j] != s) return false;
      if (!B.gram[i][j].is_zero() && ((g.parity(i) + g.parity(j)) & 1) != B.parity) return false;
    }
  return true;
}

NisResult find_nis(const Field& F, const FormSpace& space, uint64_t seed) {
  NisResult res;
  int d = space.dim();
  if (d == 0) {
    res.method = "empty";
    res.certified_none = true;
    return res;
  }
  int n = (int)space.basis[0].gram.size();
  auto test = [&](const std::vector<Scalar>& c) -> bool {
    ++res.candidates;
    BilinearForm B = combine(F, space, c);
    if (is_nondegenerate(F, B)) {
      res.form = B;
      return true;
    }
    return false;
  };
  if (F.finite()) {
    double total = 1;
    for (int i = 0; i < d; ++i) total *= F.size();
    if (total <= double(1 << 24)) {
      res.method = "exhaustive";
      // projective enumeration: first nonzero coordinate is 1
      auto els = F.elements();
      uint32_t q = F.size();
      for (int lead = 0; lead < d; ++lead) {
        long rest = 1;
        for (int i = lead + 1; i < d; ++i) rest *= q;
        for (long idx = 0; idx < rest; ++idx) {
          std::vector<Scalar> c(d, F.zero());
          c[lead] = F.one();
          long t = idx;
          for (int i = lead + 1; i < d; ++i) {
            c[i] = els[t % q];
            t /= q;
          }
          if (test(c)) return res;
        }
      }
      res.certified_none = true;
      return res;
    }
  }
  if (d <= 3 && (!F.finite() || (long)F.size() > n)) {
    // det of a generic combination is homogeneous of degree n: a grid of side n+1 decides it
    res.method = "symbolic";
    std::vector<Scalar> S;
    for (int v = 0; v <= n; ++v) S.push_back(F.finite() ? F.from_index(v) : F.from_int(v));
    long side = n + 1, total = 1;
    for (int i = 0; i < d; ++i) total *= side;
    for (long idx = 0; idx < total; ++idx) {
      std::vector<Scalar> c(d);
      long t = idx;
      for (int i = 0; i < d; ++i) {
        c[i] = S[t % side];
        t /= side;
      }
      if (test(c)) return res;
    }
    res.certified_none = true;
    return res;
  }
  res.method = "probabilistic";
  res.probabilistic = true;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 64; ++t) {
    std::vector<Scalar> c(d);
    for (auto& x : c) x = F.random(rng);
    if (test(c)) return res;
  }
  return res;
}

InvarianceReport check_invariance(const SuperAlgebra& g, const BilinearForm& B, bool all, long n, uint64_t seed) {
  InvarianceReport rep;
  int d = g.dim();
  const Field& F = g.field();
  auto e = [&](int a) { return SVec{{a, F.one()}}; };
  auto one = [&](int x, int y, int z) {
    ++rep.checked;
    Scalar l = B(g.bracket(x, y), e(z));
    Scalar r = B(e(x), g.bracket(y, z));
    if (l != r) {
      rep.ok = false;
      rep.witness = Triple{x, y, z};
    }
  };
  if (all) {
    for (int y = 0; y < d && rep.ok; ++y) {
      std::vector<SVec> xy(d), yz(d);
      for (int x = 0; x < d; ++x) xy[x] = g.bracket(x, y);
      for (int z = 0; z < d; ++z) yz[z] = g.bracket(y, z);
      for (int x = 0; x < d && rep.ok; ++x)
        for (int z = 0; z < d; ++z) {
          ++rep.checked;
          Scalar l = B(xy[x], e(z));
          Scalar r = B(e(x), yz[z]);
          if (l != r) {
            rep.ok = false;
            rep.witness = Triple{x, y, z};
            break;
          }
        }
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> u(0, d - 1);
    for (long t = 0; t < n && rep.ok; ++t) one(u(rng), u(rng), u(rng));
  }
  return rep;
}

Subspace form_radical(const SuperAlgebra& g, const BilinearForm& B) {
  Subspace R = span(g.field(), g.dim(), mat_kernel(g.field(), B.gram));
  if (!is_ideal(g, R).ok) throw std::logic_error("radical of the form is not an ideal");
  return R;
}

BilinearForm descend(const QuotientResult& q, const BilinearForm& B) {
  BilinearForm out;
  out.parity = B.parity;
  int m = (int)q.reps.size();
  out.gram = mat_zero(q.F, m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) out.gram[a][b] = B.gram[q.reps[a]][q.reps[b]];
  return out;
}

BilinearForm restrict_form(const SubalgebraResult& s, const BilinearForm& B) {
  BilinearForm out;
  out.parity = B.parity;
  int m = (int)s.embedding.size();
  out.gram = mat_zero(s.alg.field(), m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) out.gram[a][b] = B(s.embedding[a], s.embedding[b]);
  return out;
}

GradedPairingReport graded_pairing_check(const SuperAlgebra& g, const BilinearForm& B) {
  GradedPairingReport rep;
  if (!g.graded()) {
    rep.ok = false;
    rep.violations.push_back("algebra carries no grading");
    return rep;
  }
  int lo = *g.degree(0), hi = lo;
  std::map<int, int> dims;
  for (int i = 0; i < g.dim(); ++i) {
    int dg = *g.degree(i);
    lo = std::min(lo, dg);
    hi = std::max(hi, dg);
    dims[dg]++;
  }
  rep.d = -lo;
  rep.h = hi;
  int target = hi + lo;  // h - d
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j)
      if (!B.gram[i][j].is_zero() && *g.degree(i) + *g.degree(j) != target) {
        rep.ok = false;
        rep.violations.push_back("B(" + g.basis()[i].name + ", " + g.basis()[j].name + ") != 0 across degrees " +
                                 std::to_string(*g.degree(i)) + " and " + std::to_string(*g.degree(j)));
        if (rep.violations.size() > 20) return rep;
      }
  for (int k = lo; k <= hi; ++k) {
    int a = dims.count(k) ? dims[k] : 0, b = dims.count(target - k) ? dims[target - k] : 0;
    if (a != b) {
      rep.ok = false;
      rep.violations.push_back("dim g_" + std::to_string(k) + " = " + std::to_string(a) + " but dim g_" +
                               std::to_string(target - k) + " = " + std::to_string(b));
    }
  }
  return rep;
}

nlohmann::json gram_json(const SuperAlgebra& g, const BilinearForm& B) {
  nlohmann::json j;
  j["parity"] = B.parity;
  j["basis"] = g.names();
  nlohmann::json rows = nlohmann::json::array();
  for (auto& r : B.gram) {
    nlohmann::json row = nlohmann::json::array();
    for (auto& x : r) row.push_back(x.str());
    rows.push_back(row);
  }
  j["gram"] = rows;
  return j;
}

std::string gram_text(const SuperAlgebra& g, const BilinearForm& B) {
  int n = g.dim();
  std::vector<std::vector<std::string>> cells(n + 1, std::vector<std::string>(n + 1));
  cells[0][0] = "";
  for (int i = 0; i < n; ++i) {
    cells[0][i + 1] = g.basis()[i].name;
    cells[i + 1][0] = g.basis()[i].name;
    for (int j = 0; j < n; ++j) cells[i + 1][j + 1] = B.gram[i][j].is_zero() ? "." : B.gram[i][j].str();
  }
  std::vector<size_t> w(n + 1, 0);
  for (auto& r : cells)
    for (int j = 0; j <= n; ++j) w[j] = std::max(w[j], r[j].size());
  std::ostringstream os;
  for (auto& r : cells) {
    for (int j = 0; j <= n; ++j) os << std::setw((int)w[j] + 1) << r[j];
    os << "\n";
  }
  return os.str();
}

}  // namespace nisforge
