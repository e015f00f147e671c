#include "nisforge/algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace nisforge {

SuperAlgebra::SuperAlgebra(Field F, std::vector<BasisElt> basis)
    : F_(F), basis_(std::move(basis)), table_(basis_.size() * basis_.size()), sq_(basis_.size()) {
  meta = nlohmann::json::object();
}

int SuperAlgebra::dim_even() const {
  int c = 0;
  for (auto& b : basis_) c += b.parity == 0;
  return c;
}
int SuperAlgebra::dim_odd() const { return dim() - dim_even(); }

std::vector<std::string> SuperAlgebra::names() const {
  std::vector<std::string> n;
  for (auto& b : basis_) n.push_back(b.name);
  return n;
}

bool SuperAlgebra::graded() const {
  if (basis_.empty()) return false;
  for (auto& b : basis_)
    if (!b.degree) return false;
  return true;
}

int SuperAlgebra::index_of(const std::string& name) const {
  for (int i = 0; i < dim(); ++i)
    if (basis_[i].name == name) return i;
  return -1;
}

void SuperAlgebra::set_bracket(int i, int j, SVec v) {
  if (i > j) {
    // [e_i,e_j] = -(-1)^{p_i p_j} [e_j,e_i]
    bool both_odd = parity(i) && parity(j);
    if (!both_odd) v = sv_scale(-F_.one(), v);
    std::swap(i, j);
  }
  table_[(size_t)i * basis_.size() + j] = std::move(v);
}

SVec SuperAlgebra::bracket(int i, int j) const {
  if (i <= j) return table_[(size_t)i * basis_.size() + j];
  const SVec& s = table_[(size_t)j * basis_.size() + i];
  if (parity(i) && parity(j)) return s;
  return sv_scale(-F_.one(), s);
}

SVec SuperAlgebra::bracket(const SVec& x, const SVec& y) const {
  SVec acc;
  // accumulate through a map keyed by output index to avoid quadratic merging
  std::map<int, Scalar> m;
  for (auto& [i, a] : x)
    for (auto& [j, b] : y) {
      bool swap = i > j;
      const SVec& s = swap ? table_[(size_t)j * basis_.size() + i] : table_[(size_t)i * basis_.size() + j];
      if (s.empty()) continue;
      Scalar c = a * b;
      if (swap && !(parity(i) && parity(j))) c = -c;
      for (auto& [k, v] : s) {
        auto it = m.find(k);
        if (it == m.end()) m.emplace(k, c * v);
        else it->second += c * v;
      }
    }
  for (auto& [k, v] : m)
    if (!v.is_zero()) acc.emplace_back(k, v);
  return acc;
}

void SuperAlgebra::set_squaring(int i, SVec v) {
  has_sq_ = true;
  sq_[i] = std::move(v);
}

SVec SuperAlgebra::squaring(int i) const { return sq_[i]; }

int SuperAlgebra::parity_of(const SVec& v) const {
  if (v.empty()) return 0;
  int p = parity(v.front().first);
  for (auto& [i, x] : v)
    if (parity(i) != p) return -1;
  return p;
}

Mat SuperAlgebra::ad_matrix(const SVec& x) const {
  int n = dim();
  Mat M = mat_zero(F_, n, n);
  for (int j = 0; j < n; ++j)
    for (auto& [k, v] : bracket(x, SVec{{j, F_.one()}})) M[k][j] = v;
  return M;
}

// ---------------- Jacobi ----------------

SVec jacobiator(const SuperAlgebra& g, int i, int j, int k) {
  const Field& F = g.field();
  auto e = [&](int a) { return SVec{{a, F.one()}}; };
  int pi = g.parity(i), pj = g.parity(j), pk = g.parity(k);
  auto sgn = [&](int a, int b) { return (a & b) ? -F.one() : F.one(); };
  SVec t1 = sv_scale(sgn(pi, pk), g.bracket(e(i), g.bracket(j, k)));
  SVec t2 = sv_scale(sgn(pj, pi), g.bracket(e(j), g.bracket(k, i)));
  SVec t3 = sv_scale(sgn(pk, pj), g.bracket(e(k), g.bracket(i, j)));
  return sv_add(sv_add(t1, t2), t3);
}

JacobiReport check_jacobi(const SuperAlgebra& g, bool all, long n, uint64_t seed) {
  JacobiReport rep;
  int d = g.dim();
  const Field& F = g.field();
  auto e = [&](int a) { return SVec{{a, F.one()}}; };
  if (all) {
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j)
        for (int k = j; k < d; ++k) {
          ++rep.checked;
          if (!jacobiator(g, i, j, k).empty()) rep.violations.emplace_back(i, j, k);
        }
  } else if (d > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> u(0, d - 1);
    for (long t = 0; t < n; ++t) {
      int i = u(rng), j = u(rng), k = u(rng);
      ++rep.checked;
      if (!jacobiator(g, i, j, k).empty()) rep.violations.emplace_back(i, j, k);
    }
  }
  if (g.has_squaring()) {
    // [s(x), y] = [x, [x, y]] for odd x
    for (int i = 0; i < d; ++i) {
      if (!g.parity(i)) continue;
      for (int j = 0; j < d; ++j) {
        SVec lhs = g.bracket(g.squaring(i), e(j));
        SVec rhs = g.bracket(e(i), g.bracket(i, j));
        if (!sv_sub(lhs, rhs).empty()) rep.violations.emplace_back(i, i, j);
      }
    }
  }
  return rep;
}

// ---------------- subspaces ----------------

Subspace span(const Field& F, int ambient, const std::vector<SVec>& vs) {
  Echelon E(F, ambient);
  for (auto& v : vs) E.insert(v);
  return Subspace{ambient, E.basis()};
}

bool subspace_contains(const Field& F, const Subspace& S, const SVec& v) {
  Echelon E(F, S.ambient);
  for (auto& b : S.basis) E.insert(b);
  return E.contains(v);
}

Subspace intersect(const Field& F, const Subspace& A, const Subspace& B) {
  // Zassenhaus: rows (a|a) and (b|0); the rows with zero left half give A∩B on the right
  int n = A.ambient;
  Echelon E(F, 2 * n);
  for (auto& a : A.basis) {
    SVec r = a;
    for (auto& [i, x] : a) r.emplace_back(n + i, x);
    E.insert(r);
  }
  for (auto& b : B.basis) E.insert(b);
  std::vector<SVec> out;
  for (auto& r : E.basis()) {
    if (r.front().first < n) continue;
    SVec w;
    for (auto& [i, x] : r) w.emplace_back(i - n, x);
    out.push_back(w);
  }
  return span(F, n, out);
}

Subspace derived_subspace(const SuperAlgebra& g) {
  Echelon E(g.field(), g.dim());
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i; j < g.dim(); ++j) {
      const SVec& s = g.stored(i, j);
      if (!s.empty()) E.insert(s);
    }
  if (g.has_squaring())
    for (int i = 0; i < g.dim(); ++i)
      if (g.parity(i) && !g.squaring(i).empty()) E.insert(g.squaring(i));
  return Subspace{g.dim(), E.basis()};
}

namespace {
std::string vec_name(const SuperAlgebra& g, const SVec& v) {
  if (v.size() == 1 && v[0].second.is_one()) return g.basis()[v[0].first].name;
  return sv_str(v, g.names());
}
}  // namespace

SubalgebraResult subalgebra(const SuperAlgebra& g, const Subspace& S) {
  const Field& F = g.field();
  std::vector<BasisElt> basis;
  for (auto& v : S.basis) {
    BasisElt b;
    b.name = vec_name(g, v);
    b.parity = g.parity(v.front().first);
    std::optional<int> d = g.degree(v.front().first);
    for (auto& [i, x] : v)
      if (g.degree(i) != d) d.reset();
    b.degree = d;
    basis.push_back(b);
  }
  SuperAlgebra h(F, basis);
  // S basis is reduced: coordinates are read off at pivot columns
  std::vector<int> piv;
  for (auto& v : S.basis) piv.push_back(v.front().first);
  std::map<int, int> pos;
  for (int r = 0; r < (int)piv.size(); ++r) pos[piv[r]] = r;
  Echelon E(F, g.dim());
  for (auto& v : S.basis) E.insert(v);
  for (int a = 0; a < h.dim(); ++a)
    for (int b = a; b < h.dim(); ++b) {
      SVec w = g.bracket(S.basis[a], S.basis[b]);
      if (w.empty()) continue;
      if (!E.contains(w)) throw std::invalid_argument("subspace is not closed under the bracket");
      SVec c;
      for (auto& [i, x] : w) {
        auto it = pos.find(i);
        if (it != pos.end()) c.emplace_back(it->second, x);
      }
      h.set_bracket(a, b, sv_normalize(c));
    }
  if (g.has_squaring()) {
    for (int a = 0; a < h.dim(); ++a) {
      if (!h.parity(a)) continue;
      // s(sum c_i e_i) for a reduced vector: s is quadratic; only unit vectors handled exactly
      const SVec& v = S.basis[a];
      SVec w;
      if (v.size() == 1) {
        w = sv_scale(v[0].second * v[0].second, g.squaring(v[0].first));
      } else {
        // s(x+y) = s(x) + s(y) + [x,y]
        for (size_t t = 0; t < v.size(); ++t) {
          w = sv_add(w, sv_scale(v[t].second * v[t].second, g.squaring(v[t].first)));
          for (size_t u = t + 1; u < v.size(); ++u)
            w = sv_add(w, sv_scale(v[t].second * v[u].second, g.bracket(v[t].first, v[u].first)));
        }
      }
      SVec c;
      for (auto& [i, x] : w) {
        auto it = pos.find(i);
        if (it != pos.end()) c.emplace_back(it->second, x);
      }
      h.set_squaring(a, sv_normalize(c));
    }
  }
  h.meta = g.meta;
  return {h, S.basis};
}

SubalgebraResult derived_algebra(const SuperAlgebra& g) {
  auto r = subalgebra(g, derived_subspace(g));
  r.alg.meta["derived_of"] = g.meta.value("series", std::string("?"));
  return r;
}

Subspace center(const SuperAlgebra& g) {
  int n = g.dim();
  const Field& F = g.field();
  std::map<std::pair<int, int>, SVec> rows;  // (j,k) -> coefficients over i
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (auto& [k, v] : g.bracket(i, j)) rows[{j, k}].emplace_back(i, v);
  Echelon E(F, n);
  for (auto& [key, r] : rows) E.insert(sv_normalize(r));
  return span(F, n, E.kernel());
}

IdealCheck is_ideal(const SuperAlgebra& g, const Subspace& S) {
  IdealCheck res;
  Echelon E(g.field(), g.dim());
  for (auto& v : S.basis) E.insert(v);
  for (int s = 0; s < (int)S.basis.size(); ++s)
    for (int i = 0; i < g.dim(); ++i) {
      SVec w = g.bracket(SVec{{i, g.field().one()}}, S.basis[s]);
      if (!E.contains(w)) {
        res.ok = false;
        res.witness_basis = i;
        res.witness_vector = s;
        return res;
      }
    }
  return res;
}

SVec QuotientResult::project(const SVec& v) const {
  Echelon E(F, ideal.ambient);
  for (auto& b : ideal.basis) E.insert(b);
  SVec w = E.reduce(v);
  SVec out;
  for (auto& [i, x] : w) {
    auto it = std::lower_bound(reps.begin(), reps.end(), i);
    out.emplace_back((int)(it - reps.begin()), x);
  }
  return out;
}

QuotientResult quotient(const SuperAlgebra& g, const Subspace& S) {
  IdealCheck ic = is_ideal(g, S);
  if (!ic.ok)
    throw std::invalid_argument("not an ideal: [" + g.basis()[ic.witness_basis].name + ", " +
                                vec_name(g, S.basis[ic.witness_vector]) + "] leaves the subspace");
  const Field& F = g.field();
  QuotientResult q;
  q.F = F;
  q.ideal = S;
  std::vector<bool> is_piv(g.dim(), false);
  for (auto& v : S.basis) is_piv[v.front().first] = true;
  std::vector<BasisElt> basis;
  for (int i = 0; i < g.dim(); ++i)
    if (!is_piv[i]) {
      q.reps.push_back(i);
      basis.push_back(g.basis()[i]);
    }
  Echelon E(F, g.dim());
  for (auto& v : S.basis) E.insert(v);
  std::vector<int> pos(g.dim(), -1);
  for (int r = 0; r < (int)q.reps.size(); ++r) pos[q.reps[r]] = r;
  auto proj = [&](const SVec& v) {
    SVec w = E.reduce(v), out;
    for (auto& [i, x] : w) out.emplace_back(pos[i], x);
    return out;
  };
  q.alg = SuperAlgebra(F, basis);
  for (int a = 0; a < (int)q.reps.size(); ++a)
    for (int b = a; b < (int)q.reps.size(); ++b) {
      const SVec& s = g.stored(q.reps[a], q.reps[b]);
      if (!s.empty()) q.alg.set_bracket(a, b, proj(s));
    }
  if (g.has_squaring())
    for (int a = 0; a < (int)q.reps.size(); ++a)
      if (g.parity(q.reps[a])) q.alg.set_squaring(a, proj(g.squaring(q.reps[a])));
  q.alg.meta = g.meta;
  return q;
}

Subspace ideal_generated(const SuperAlgebra& g, const std::vector<SVec>& vs) {
  const Field& F = g.field();
  Echelon E(F, g.dim());
  std::vector<SVec> queue;
  for (auto& v : vs)
    if (E.insert(v)) queue.push_back(v);
  while (!queue.empty()) {
    SVec v = queue.back();
    queue.pop_back();
    for (int i = 0; i < g.dim(); ++i) {
      SVec w = g.bracket(SVec{{i, F.one()}}, v);
      if (!w.empty() && E.insert(w)) queue.push_back(w);
      if (E.rank() == g.dim()) return Subspace{g.dim(), E.basis()};
    }
  }
  return Subspace{g.dim(), E.basis()};
}

Subspace subalgebra_generated(const SuperAlgebra& g, const std::vector<SVec>& vs) {
  const Field& F = g.field();
  Echelon E(F, g.dim());
  std::vector<SVec> gens, all;
  for (auto& v : vs)
    if (E.insert(v)) {
      gens.push_back(v);
      all.push_back(v);
    }
  std::vector<SVec> frontier = all;
  while (!frontier.empty()) {
    std::vector<SVec> next;
    for (auto& y : gens)
      for (auto& v : frontier) {
        SVec w = g.bracket(y, v);
        if (!w.empty() && E.insert(w)) next.push_back(w);
      }
    if (g.has_squaring())
      for (auto& v : frontier)
        if (v.size() == 1 && g.parity(v[0].first)) {
          SVec w = sv_scale(v[0].second * v[0].second, g.squaring(v[0].first));
          if (!w.empty() && E.insert(w)) next.push_back(w);
        }
    frontier = std::move(next);
  }
  return Subspace{g.dim(), E.basis()};
}

SimplicityResult is_simple(const SuperAlgebra& g, int cap) {
  SimplicityResult r;
  if (g.dim() > cap) return r;
  r.decided = true;
  const Field& F = g.field();
  if (g.dim() == 0) return r;
  Subspace der = derived_subspace(g);
  if (der.dim() < g.dim()) {
    r.witness = der;
    return r;
  }
  Subspace z = center(g);
  if (z.dim() > 0) {
    r.witness = z;
    return r;
  }
  for (int i = 0; i < g.dim(); ++i) {
    Subspace I = ideal_generated(g, {SVec{{i, F.one()}}});
    if (I.dim() < g.dim()) {
      r.witness = I;
      return r;
    }
  }
  r.simple = true;
  return r;
}

std::optional<std::vector<SVec>> extend_homomorphism(const SuperAlgebra& src, const SuperAlgebra& tgt,
                                                     const std::vector<std::pair<int, SVec>>& gens) {
  const Field& F = src.field();
  int n = src.dim();
  std::vector<std::optional<SVec>> img(n);
  for (auto& [i, v] : gens) img[i] = v;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (!img[i] || !img[j]) continue;
        SVec b = src.bracket(i, j);
        if (b.size() != 1 || img[b[0].first]) continue;
        img[b[0].first] = sv_scale(b[0].second.inv(), tgt.bracket(*img[i], *img[j]));
        grew = true;
      }
  }
  std::vector<SVec> out;
  for (auto& v : img) {
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  auto map = [&](const SVec& x) {
    SVec r;
    for (auto& [k, c] : x) r = sv_axpy(r, c, out[k]);
    return r;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (map(src.bracket(i, j)) != tgt.bracket(out[i], out[j])) return std::nullopt;
  return out;
}

std::string describe(const SuperAlgebra& g) {
  std::ostringstream os;
  os << g.meta.value("series", std::string("algebra")) << " over " << g.field().name() << ", dim " << g.dim_even()
     << "|" << g.dim_odd();
  return os.str();
}

}  // namespace nisforge
