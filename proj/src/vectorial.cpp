#include "nisforge/vectorial.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <bit>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "nisforge/cartan.hpp"

namespace nisforge {

// ---------- vector fields ----------

VField vf_zero(const Ring& R) { return VField(R->nvars(), Poly(R)); }

int vf_parity(const VField& D) {
  int par = 0;
  bool seen = false;
  for (size_t i = 0; i < D.size(); ++i) {
    if (D[i].is_zero()) continue;
    int pc = D[i].parity();
    if (pc < 0) return -1;
    int q = pc ^ D[i].ring()->var_parity((int)i);
    if (seen && q != par) return -1;
    par = q;
    seen = true;
  }
  return par;
}

Poly vf_apply(const VField& D, const Poly& f) {
  Poly r(f.ring());
  for (size_t i = 0; i < D.size(); ++i)
    if (!D[i].is_zero()) r += D[i] * f.derive((int)i);
  return r;
}

namespace {

std::array<VField, 2> vf_split(const VField& D) {
  std::array<VField, 2> out;
  const Ring& R = D[0].ring();
  out[0] = vf_zero(R);
  out[1] = vf_zero(R);
  for (size_t i = 0; i < D.size(); ++i) {
    auto parts = split_parity(D[i]);
    int vp = R->var_parity((int)i);
    out[vp] [i] = parts[0];
    out[vp ^ 1][i] = parts[1];
  }
  return out;
}

VField vf_bracket_h(const VField& A, int pa, const VField& B, int pb) {
  VField r(A.size(), Poly(A[0].ring()));
  bool sgn = pa && pb;
  for (size_t k = 0; k < A.size(); ++k) {
    Poly x = vf_apply(A, B[k]);
    Poly y = vf_apply(B, A[k]);
    r[k] = sgn ? x + y : x - y;
  }
  return r;
}

}  // namespace

std::array<Poly, 2> split_parity(const Poly& f) {
  std::array<Poly, 2> out{Poly(f.ring()), Poly(f.ring())};
  if (!f.ring()) return out;
  for (auto& [k, c] : f.terms()) out[std::popcount(f.ring()->mask(k)) & 1].add_term(k, c);
  return out;
}

VField vf_bracket(const VField& A, const VField& B) {
  int pa = vf_parity(A), pb = vf_parity(B);
  if (pa >= 0 && pb >= 0) return vf_bracket_h(A, pa, B, pb);
  auto as = vf_split(A), bs = vf_split(B);
  VField r = vf_zero(A[0].ring());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r = vf_add(r, vf_bracket_h(as[i], i, bs[j], j));
  return r;
}

VField vf_scaled(const VField& D, const Scalar& c) {
  VField r = D;
  for (auto& x : r) x = x.scaled(c);
  return r;
}

VField vf_add(const VField& A, const VField& B) {
  VField r = A;
  for (size_t i = 0; i < r.size(); ++i) r[i] += B[i];
  return r;
}

bool vf_equal(const VField& A, const VField& B) {
  for (size_t i = 0; i < A.size(); ++i)
    if (!(A[i] == B[i])) return false;
  return true;
}

Poly divergence(const VField& D) {
  const Ring& R = D[0].ring();
  Poly r(R);
  for (int i = 0; i < R->nvars(); ++i) {
    if (i < R->m) {
      r += D[i].derive(i);
    } else {
      auto parts = split_parity(D[i]);
      r += parts[0].derive(i);
      r -= parts[1].derive(i);
    }
  }
  return r;
}

std::string vf_str(const VField& D) {
  std::string s;
  for (size_t i = 0; i < D.size(); ++i) {
    if (D[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    std::string c = D[i].str();
    if (D[i].terms().size() > 1) c = "(" + c + ")";
    s += (c == "1" ? "" : c + " ") + "d_" + D[i].ring()->var_name((int)i);
  }
  return s.empty() ? "0" : s;
}

// ---------- function rings ----------

namespace {

std::vector<std::string> idx_names(const std::string& b, int n) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back(b + std::to_string(i + 1));
  return v;
}

Ring ring_for(const Field& F, std::vector<int> N, int n_odd, std::vector<std::string> even,
              std::vector<std::string> odd) {
  if (F.characteristic() == 0) {
    if (!N.empty()) throw std::invalid_argument("even indeterminates need characteristic p (divided powers)");
    return PolyRing::polynomial(F, 0, 0, n_odd, even, odd);
  }
  return PolyRing::divided(F, N, n_odd, even, odd);
}

std::vector<int> fill_N(std::vector<int> N, int count) {
  if (N.empty()) N.assign(count, 1);
  if ((int)N.size() != count)
    throw std::invalid_argument("shearing vector needs " + std::to_string(count) + " entries");
  return N;
}

}  // namespace

FnRing contact_ring(const Field& F, int n, std::vector<int> N, int m) {
  std::vector<std::string> ev{"t"};
  for (auto& s : idx_names("p", n)) ev.push_back(s);
  for (auto& s : idx_names("q", n)) ev.push_back(s);
  FnRing S;
  S.R = ring_for(F, fill_N(N, 2 * n + 1), m, ev, idx_names("theta", m));
  S.layout = Layout::Contact;
  S.n = n;
  return S;
}

FnRing poisson_ring(const Field& F, int n, std::vector<int> N, int m) {
  std::vector<std::string> ev;
  for (auto& s : idx_names("p", n)) ev.push_back(s);
  for (auto& s : idx_names("q", n)) ev.push_back(s);
  FnRing S;
  S.R = ring_for(F, n ? fill_N(N, 2 * n) : std::vector<int>{}, m, ev, idx_names("theta", m));
  S.layout = Layout::Poisson;
  S.n = n;
  return S;
}

FnRing pericontact_ring(const Field& F, int n, std::vector<int> N) {
  std::vector<std::string> odd{"tau"};
  for (auto& s : idx_names("xi", n)) odd.push_back(s);
  FnRing S;
  S.R = ring_for(F, n ? fill_N(N, n) : std::vector<int>{}, n + 1, idx_names("q", n), odd);
  S.layout = Layout::Pericontact;
  S.n = n;
  return S;
}

FnRing buttin_ring(const Field& F, int n, std::vector<int> N) {
  FnRing S;
  S.R = ring_for(F, n ? fill_N(N, n) : std::vector<int>{}, n, idx_names("q", n), idx_names("xi", n));
  S.layout = Layout::Buttin;
  S.n = n;
  return S;
}

namespace {

// degree of a monomial for E: all indeterminates except t / tau
long euler_weight(const FnRing& S, uint64_t k) {
  const PolyRing& R = *S.R;
  long w = 0;
  for (int i = 0; i < R.m; ++i)
    if (!(S.layout == Layout::Contact && i == 0)) w += R.exp(k, i);
  uint32_t msk = R.mask(k);
  if (S.layout == Layout::Pericontact) msk &= ~1u;
  return w + std::popcount(msk);
}

// standard grading weight: t and tau count 2, everything else 1
long std_weight(const FnRing& S, uint64_t k) {
  const PolyRing& R = *S.R;
  long w = euler_weight(S, k);
  if (S.layout == Layout::Contact) w += 2L * R.exp(k, 0);
  if (S.layout == Layout::Pericontact && (R.mask(k) & 1u)) w += 2;
  return w;
}

Poly sgn(int parity, const Poly& f) { return parity ? -f : f; }

}  // namespace

Poly euler(const FnRing& S, const Poly& f) {
  Poly r(S.R);
  const Field& F = S.R->F;
  for (auto& [k, c] : f.terms()) r.add_term(k, c * F.from_int(euler_weight(S, k)));
  return r;
}

Poly two_minus_E(const FnRing& S, const Poly& f) { return f.scaled(S.R->F.from_int(2)) - euler(S, f); }

Poly laplacian(const FnRing& S, const Poly& f) {
  Poly r(S.R);
  for (int i = 0; i < S.n; ++i) r += f.derive(S.xi(i)).derive(S.q(i));
  return r;
}

Poly poisson_bracket(const FnRing& S, const Poly& f, const Poly& g) {
  Poly r(S.R);
  auto fs = split_parity(f);
  for (int pf = 0; pf < 2; ++pf) {
    const Poly& a = fs[pf];
    if (a.is_zero()) continue;
    for (int i = 0; i < S.n; ++i) {
      r += a.derive(S.p(i)) * g.derive(S.q(i));
      r -= a.derive(S.q(i)) * g.derive(S.p(i));
    }
    for (int j = 0; j < S.n_theta(); ++j) r -= sgn(pf, a.derive(S.theta(j)) * g.derive(S.theta(j)));
  }
  return r;
}

Poly buttin_bracket(const FnRing& S, const Poly& f, const Poly& g) {
  Poly r(S.R);
  auto fs = split_parity(f);
  for (int pf = 0; pf < 2; ++pf) {
    const Poly& a = fs[pf];
    if (a.is_zero()) continue;
    for (int i = 0; i < S.n; ++i) {
      r += a.derive(S.q(i)) * g.derive(S.xi(i));
      r += sgn(pf, a.derive(S.xi(i)) * g.derive(S.q(i)));
    }
  }
  return r;
}

Poly contact_bracket(const FnRing& S, const Poly& f, const Poly& g) {
  int t = S.t();
  return two_minus_E(S, f) * g.derive(t) - f.derive(t) * two_minus_E(S, g) - poisson_bracket(S, f, g);
}

Poly pericontact_bracket(const FnRing& S, const Poly& f, const Poly& g) {
  Poly r(S.R);
  auto fs = split_parity(f);
  int tau = S.tau();
  for (int pf = 0; pf < 2; ++pf) {
    const Poly& a = fs[pf];
    if (a.is_zero()) continue;
    r += two_minus_E(S, a) * g.derive(tau);
    r += sgn(pf, a.derive(tau) * two_minus_E(S, g));
  }
  return r - buttin_bracket(S, f, g);
}

Poly contact_bracket_pqt(const FnRing& S, const Poly& f, const Poly& g) {
  if (S.layout != Layout::Contact || S.n != 1 || S.n_theta() != 0)
    throw std::invalid_argument("the (p,q,t) bracket needs the contact ring with one pair and no odd indeterminates");
  int t = S.t(), p = S.p(0), q = S.q(0);
  Poly df = two_minus_E(S, f), dg = two_minus_E(S, g);
  return df * g.derive(t) - f.derive(t) * dg + f.derive(p) * g.derive(q) - f.derive(q) * g.derive(p);
}

// ---------- generating-function fields ----------

VField H_field(const FnRing& S, const Poly& f) {
  VField D = vf_zero(S.R);
  auto fs = split_parity(f);
  for (int pf = 0; pf < 2; ++pf) {
    const Poly& a = fs[pf];
    if (a.is_zero()) continue;
    for (int i = 0; i < S.n; ++i) {
      D[S.q(i)] += a.derive(S.p(i));
      D[S.p(i)] -= a.derive(S.q(i));
    }
    for (int j = 0; j < S.n_theta(); ++j) D[S.theta(j)] -= sgn(pf, a.derive(S.theta(j)));
  }
  return D;
}

namespace {
// E as a field: sum of x d_x over all indeterminates except t / tau
VField euler_field_times(const FnRing& S, const Poly& c) {
  VField D = vf_zero(S.R);
  const PolyRing& R = *S.R;
  for (int v = 0; v < R.nvars(); ++v) {
    if (S.layout == Layout::Contact && v == S.t()) continue;
    if (S.layout == Layout::Pericontact && v == S.tau()) continue;
    D[v] = c * Poly::var(S.R, v);
  }
  return D;
}
}  // namespace

VField K_field(const FnRing& S, const Poly& f) {
  VField D = vf_scaled(H_field(S, f), S.R->F.from_int(-1));
  D = vf_add(D, euler_field_times(S, f.derive(S.t())));
  D[S.t()] += two_minus_E(S, f);
  return D;
}

VField Le_field(const FnRing& S, const Poly& f) {
  VField D = vf_zero(S.R);
  auto fs = split_parity(f);
  for (int pf = 0; pf < 2; ++pf) {
    const Poly& a = fs[pf];
    if (a.is_zero()) continue;
    for (int i = 0; i < S.n; ++i) {
      D[S.xi(i)] += a.derive(S.q(i));
      D[S.q(i)] += sgn(pf, a.derive(S.xi(i)));
    }
  }
  return D;
}

VField M_field(const FnRing& S, const Poly& f) {
  VField D = vf_scaled(Le_field(S, f), S.R->F.from_int(-1));
  auto fs = split_parity(f);
  for (int pf = 0; pf < 2; ++pf) {
    const Poly& a = fs[pf];
    if (a.is_zero()) continue;
    D = vf_add(D, euler_field_times(S, sgn(pf ^ 1, a.derive(S.tau()))));
    D[S.tau()] += two_minus_E(S, a);
  }
  return D;
}

Poly div_K(const FnRing& S, const Poly& f) {
  long c = 2L * S.n + 2 - S.n_theta();
  return f.derive(S.t()).scaled(S.R->F.from_int(c));
}

Poly div_M(const FnRing& S, const Poly& f) {
  Poly r(S.R);
  auto fs = split_parity(f);
  for (int pf = 0; pf < 2; ++pf) {
    const Poly& a = fs[pf];
    if (a.is_zero()) continue;
    Poly ft = a.derive(S.tau());
    Poly inner = ft - euler(S, ft) - laplacian(S, a);
    r += sgn(pf, inner.scaled(S.R->F.from_int(2)));
  }
  return r;
}

Poly div_Le(const FnRing& S, const Poly& f) {
  Poly r(S.R);
  auto fs = split_parity(f);
  for (int pf = 0; pf < 2; ++pf) r += sgn(pf, laplacian(S, fs[pf]).scaled(S.R->F.from_int(2)));
  return r;
}

// ---------- b_lambda and singular cocycles ----------

namespace {
long homogeneous_degree(const FnRing& S, const Poly& f) {
  if (f.is_zero()) return 0;
  long d = std_weight(S, f.terms()[0].first);
  for (auto& [k, c] : f.terms())
    if (std_weight(S, k) != d) throw std::invalid_argument("input is not homogeneous in the standard grading");
  return d;
}
long odd_degree(const FnRing& S, const Poly& f) {
  if (f.is_zero()) return 0;
  long d = std::popcount(S.R->mask(f.terms()[0].first));
  for (auto& [k, c] : f.terms())
    if (std::popcount(S.R->mask(k)) != d) throw std::invalid_argument("input is not homogeneous in the odd indeterminates");
  return d;
}
// f = a * g for a scalar a (g != 0)
std::optional<Scalar> proportional(const Poly& f, const Poly& g) {
  if (g.is_zero() || f.terms().size() != g.terms().size()) return std::nullopt;
  Scalar a = f.terms()[0].second / g.terms()[0].second;
  for (size_t i = 0; i < f.terms().size(); ++i)
    if (f.terms()[i].first != g.terms()[i].first || !(f.terms()[i].second == a * g.terms()[i].second))
      return std::nullopt;
  return a;
}
}  // namespace

Poly b_lambda_bracket(const FnRing& S, const Poly& f, const Poly& g, const Scalar& lambda) {
  if (S.layout != Layout::Buttin) throw std::invalid_argument("b_lambda bracket lives on functions of (q, xi)");
  Poly r = buttin_bracket(S, f, g);
  if (lambda.is_zero() || f.is_zero() || g.is_zero()) return r;
  const Field& F = S.R->F;
  long df = homogeneous_degree(S, f), dg = homogeneous_degree(S, g);
  auto c = [&](long d1, long d2) {
    Scalar den = F.from_int(2) + lambda * F.from_int(d2 - S.n);
    if (den.is_zero())
      throw std::invalid_argument("denominator 2 + lambda(deg - n) vanishes; lambda = " + lambda.str() +
                                  " is excluded for degree " + std::to_string(d2));
    return F.from_int(d1 - 2) / den;
  };
  auto fs = split_parity(f);
  for (int pf = 0; pf < 2; ++pf) {
    const Poly& a = fs[pf];
    if (a.is_zero()) continue;
    r += (a * laplacian(S, g)).scaled(lambda * c(df, dg));
    r += sgn(pf, (laplacian(S, a) * g).scaled(lambda * c(dg, df)));
  }
  return r;
}

Poly singular_cocycle(const FnRing& S, const std::string& variant, const Poly& f, const Poly& g) {
  const Field& F = S.R->F;
  Poly zero(S.R);
  if (f.is_zero() || g.is_zero()) return zero;
  if (variant == "b0") {
    Poly r = (f * g).scaled(F.from_int((odd_degree(S, f) - 1) * (odd_degree(S, g) - 1)));
    return f.parity() ? -r : r;
  }
  // xi_1...xi_n (b1) or tau xi_1...xi_n (binf)
  std::vector<int> odd;
  int n = S.n;
  bool inf = variant == "binf";
  if (inf) {
    if (S.layout != Layout::Pericontact) throw std::invalid_argument("binf cocycle needs the pericontact ring");
    odd.push_back(0);
    for (int i = 0; i < n; ++i) odd.push_back(i + 1);
  } else if (variant == "b1") {
    for (int i = 0; i < n; ++i) odd.push_back((S.layout == Layout::Pericontact ? 1 : 0) + i);
  } else {
    throw std::invalid_argument("unknown cocycle variant " + variant + " (b0, b1, binf)");
  }
  Poly top = Poly::mono(S.R, std::vector<int>(S.R->m, 0), odd, F.one());
  auto value = [&](const Scalar& a, const Poly& h) -> Poly {
    if (auto b = proportional(h, top)) {
      bool special = inf ? (n % 2 == 1) : (n % 2 == 0);
      if (!special) return zero;
      return top.scaled(a * *b * F.from_int(inf ? 2 : 2 * (n - 1)));
    }
    return h.scaled(a * F.from_int(odd_degree(S, h) - 1));
  };
  if (auto a = proportional(f, top)) return value(*a, g);
  if (auto a = proportional(g, top)) {
    // super antisymmetry with the shifted parities of the Buttin algebra
    int pf = (f.parity() + 1) & 1, pg = (g.parity() + 1) & 1;
    Poly v = value(*a, f);
    return (pf && pg) ? v : -v;
  }
  return zero;
}

// ---------- symplectic forms ----------

Mat omega1_matrix(const Field& F, const SymplecticForm& w, const std::vector<int>& N) {
  int k2 = (int)N.size(), k = k2 / 2;
  if (k2 % 2) throw std::invalid_argument("symplectic forms need an even number of indeterminates");
  if (w.eps.is_zero()) throw std::invalid_argument("eps must be nonzero");
  Mat J = mat_zero(F, k, k);
  if (w.shape == "J0") {
    if (k < 2) throw std::invalid_argument("J_k(0) needs k > 1");
    for (int i = 0; i + 1 < k; ++i) J[i][i + 1] = F.one();
  } else if (w.shape == "Jkr" || w.shape == "C") {
    int r = w.shape == "C" ? 1 : w.r;
    if (w.shape == "C" && k < 2) throw std::invalid_argument("C_k needs k > 1");
    if (r < 1 || k % r) throw std::invalid_argument("block size r must divide k");
    int blocks = k / r;
    long s1 = 0, s2 = 0;
    for (int i = 0; i < k; ++i) s1 += N[i], s2 += N[k + i];
    bool eq = s1 == s2;
    if (w.shape == "Jkr") {
      if (w.lambda.is_zero()) throw std::invalid_argument("J_{k,r}(lambda) needs lambda != 0");
      if (!eq) throw std::invalid_argument("J_{k,r}(lambda) needs N_1+...+N_k = N_{k+1}+...+N_{2k}");
      for (int g = 0; g < 2 * blocks; ++g)
        for (int j = 1; j < r; ++j)
          if (N[g * r + j] != N[g * r]) throw std::invalid_argument("J_{k,r}(lambda) needs equal heights within each group of r");
    } else if (eq) {
      throw std::invalid_argument("C_k occurs only when N_1+...+N_k != N_{k+1}+...+N_{2k}");
    }
    // cyclic shifts fixing both halves must be trivial
    for (int s = 1; s < k; ++s) {
      bool fixes = true;
      for (int i = 0; i < k && fixes; ++i) fixes = N[i] == N[(i + s) % k] && N[k + i] == N[k + (i + s) % k];
      if (fixes) throw std::invalid_argument("a nontrivial cyclic shift fixes (N_1..N_k) and (N_{k+1}..N_{2k})");
    }
    Scalar lam = w.shape == "C" ? F.one() : w.lambda;
    for (int b = 0; b + 1 < blocks; ++b)
      for (int j = 0; j < r; ++j) J[b * r + j][(b + 1) * r + j] = F.one();
    int last = (blocks - 1) * r;
    for (int j = 0; j < r; ++j) {
      J[last + j][j] = lam;
      if (j + 1 < r) J[last + j][j + 1] = F.one();
    }
  } else {
    throw std::invalid_argument("unknown A-matrix shape " + w.shape + " (J0, Jkr, C)");
  }
  Mat A = mat_zero(F, k2, k2);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      A[i][k + j] = J[i][j];
      A[k + i][j] = -J[j][i];
    }
  return A;
}

// ---------- VectorialAlgebra accessors ----------

int VectorialAlgebra::ambient() const {
  int M = (int)monos.size();
  if (kind == Realization::Functions) return M;
  int nv = fr.R->nvars();
  return kind == Realization::Vas ? 2 * M * nv : M * nv;
}

SVec VectorialAlgebra::ambient_of(const SVec& coords) const {
  SVec r;
  for (auto& [i, c] : coords) r = sv_axpy(r, c, elems[i]);
  return r;
}

namespace {

struct MonoIndex {
  std::unordered_map<uint64_t, int> idx;
  explicit MonoIndex(const std::vector<uint64_t>& monos) {
    for (int i = 0; i < (int)monos.size(); ++i) idx[monos[i]] = i;
  }
  int operator()(uint64_t k) const {
    auto it = idx.find(k);
    return it == idx.end() ? -1 : it->second;
  }
};

Poly poly_from(const Ring& R, const std::vector<uint64_t>& monos, const SVec& v, int offset = 0, int stride = 1,
               int comp = 0) {
  Poly f(R);
  for (auto& [i, c] : v) {
    int j = i - offset;
    if (j < 0 || j % stride != comp) continue;
    if (j / stride >= (int)monos.size()) continue;
    f.add_term(monos[j / stride], c);
  }
  return f;
}

void poly_into(SVec& out, const MonoIndex& mi, const Poly& f, int offset = 0, int stride = 1, int comp = 0) {
  for (auto& [k, c] : f.terms()) {
    int j = mi(k);
    if (j < 0) throw std::runtime_error("term outside the coefficient ring");
    out.emplace_back(offset + j * stride + comp, c);
  }
}

}  // namespace

Poly VectorialAlgebra::function_of(const SVec& coords) const {
  if (kind != Realization::Functions) throw std::logic_error("not a generating-function algebra");
  return poly_from(fr.R, monos, ambient_of(coords));
}

VField VectorialAlgebra::field_of(const SVec& coords) const {
  if (kind == Realization::Functions) {
    Poly f = function_of(coords);
    if (bracket == "kb" || bracket == "cb") return K_field(fr, f);
    if (bracket == "pb") return H_field(fr, f);
    if (bracket == "mb") return M_field(fr, f);
    if (bracket == "bb") return Le_field(fr, f);
    throw std::logic_error("no field realization for bracket " + bracket);
  }
  SVec a = ambient_of(coords);
  int nv = fr.R->nvars();
  VField D = vf_zero(fr.R);
  for (int v = 0; v < nv; ++v) D[v] = poly_from(fr.R, monos, a, 0, nv, v);
  return D;
}

// ---------- construction helpers ----------

namespace {

// kernel of a linear map given by images of candidate ambient vectors
std::vector<SVec> kernel_of(const Field& F, int target, const std::vector<SVec>& cands,
                            const std::vector<SVec>& images, int ambient) {
  Echelon E(F, target + (int)cands.size(), target);
  std::vector<SVec> out;
  for (size_t i = 0; i < cands.size(); ++i) {
    SVec row = images[i];
    row.emplace_back(target + (int)i, F.one());
    if (!E.insert(row)) {
      SVec coef;
      for (auto& [c, x] : E.last_remainder())
        if (c >= target) coef.emplace_back(c - target, x);
      SVec v;
      for (auto& [j, x] : coef) v = sv_axpy(v, x, cands[j]);
      if (!v.empty()) out.push_back(v);
    }
  }
  (void)ambient;
  return out;
}

std::vector<SVec> units(const Field& F, int n) {
  std::vector<SVec> v;
  for (int i = 0; i < n; ++i) v.push_back(sv_unit(F, i));
  return v;
}

void check_cap(size_t d, const VParams& P, const std::string& what) {
  if ((int)d > P.cap) throw std::invalid_argument(what + " has dimension " + std::to_string(d) + " above the cap " +
                                                  std::to_string(P.cap));
}

// function algebra from a family of function vectors (ambient = monomials)
VectorialAlgebra function_algebra(const std::string& series, const FnRing& S, const std::string& br, int shift,
                                  std::vector<SVec> family, bool mod_constants = false) {
  VectorialAlgebra v;
  v.series = series;
  v.fr = S;
  v.kind = Realization::Functions;
  v.bracket = br;
  v.shift = shift;
  v.monos = S.R->monomials();
  MonoIndex mi(v.monos);
  const Field& F = S.R->F;
  std::vector<BasisElt> basis;
  for (auto& a : family) {
    Poly f = poly_from(S.R, v.monos, a);
    BasisElt b;
    b.name = f.terms().size() == 1 && f.terms()[0].second.is_one() ? f.str() : "[" + f.str() + "]";
    if (b.name == "0") b.name = "1";
    int pf = f.parity();
    if (pf < 0) throw std::logic_error("inhomogeneous generating function in a basis");
    b.parity = (pf + shift) & 1;
    bool graded = F.characteristic() == 0 || true;
    std::optional<int> d;
    for (auto& [k, c] : f.terms()) {
      int w = (int)std_weight(S, k) - 2;
      if (!d) d = w;
      else if (*d != w) graded = false;
    }
    if (graded) b.degree = d;
    basis.push_back(b);
  }
  auto bracket = [&](const SVec& x, const SVec& y) {
    Poly f = poly_from(S.R, v.monos, x), g = poly_from(S.R, v.monos, y);
    Poly h;
    if (br == "pb") h = poisson_bracket(S, f, g);
    else if (br == "kb") h = contact_bracket(S, f, g);
    else if (br == "cb") h = contact_bracket_pqt(S, f, g);
    else if (br == "mb") h = pericontact_bracket(S, f, g);
    else h = buttin_bracket(S, f, g);
    if (mod_constants) h.add_term(S.R->pack(std::vector<int>(S.R->m, 0), 0), -h.coeff(S.R->pack(std::vector<int>(S.R->m, 0), 0)));
    SVec out;
    poly_into(out, mi, h);
    return sv_normalize(out);
  };
  v.alg = from_realization(F, (int)v.monos.size(), family, basis, bracket);
  v.elems = std::move(family);
  v.mod_constants = mod_constants;
  v.alg.meta["series"] = series;
  return v;
}

std::vector<SVec> field_to_svec_parts(const VField& D, const MonoIndex& mi, int nv, int offset = 0) {
  SVec out;
  for (int c = 0; c < nv; ++c) poly_into(out, mi, D[c], offset, nv, c);
  return {sv_normalize(out)};
}

SVec field_to_svec(const VField& D, const MonoIndex& mi, int nv, int offset = 0) {
  return field_to_svec_parts(D, mi, nv, offset)[0];
}

std::optional<int> field_degree(const VField& D) {
  std::optional<int> d;
  const PolyRing& R = *D[0].ring();
  for (int c = 0; c < (int)D.size(); ++c)
    for (auto& [k, x] : D[c].terms()) {
      int w = std::popcount(R.mask(k)) - 1;
      for (int i = 0; i < R.m; ++i) w += R.exp(k, i);
      if (!d) d = w;
      else if (*d != w) return std::nullopt;
    }
  return d;
}

VectorialAlgebra field_algebra(const std::string& series, const Ring& R, std::vector<SVec> family) {
  VectorialAlgebra v;
  v.series = series;
  v.fr.R = R;
  v.kind = Realization::Fields;
  v.monos = R->monomials();
  MonoIndex mi(v.monos);
  int nv = R->nvars();
  const Field& F = R->F;
  auto to_field = [&](const SVec& a) {
    VField D = vf_zero(R);
    for (int c = 0; c < nv; ++c) D[c] = poly_from(R, v.monos, a, 0, nv, c);
    return D;
  };
  std::vector<BasisElt> basis;
  for (auto& a : family) {
    VField D = to_field(a);
    BasisElt b;
    b.name = vf_str(D);
    int pd = vf_parity(D);
    if (pd < 0) throw std::logic_error("inhomogeneous vector field in a basis");
    b.parity = pd;
    b.degree = field_degree(D);
    basis.push_back(b);
  }
  auto bracket = [&](const SVec& x, const SVec& y) { return field_to_svec(vf_bracket(to_field(x), to_field(y)), mi, nv); };
  v.alg = from_realization(F, (int)v.monos.size() * nv, family, basis, bracket);
  v.elems = std::move(family);
  v.alg.meta["series"] = series;
  return v;
}

std::vector<SVec> all_fields(const Ring& R) {
  int M = (int)R->monomials().size() * R->nvars();
  return units(R->F, M);
}

// images of monomial fields under a linear map VField -> Poly (target = monomials of T)
std::vector<SVec> field_images(const Ring& R, const Ring& T, const std::vector<SVec>& cands,
                               const std::function<Poly(const VField&)>& map) {
  auto monos = R->monomials();
  MonoIndex mt(T->monomials());
  int nv = R->nvars();
  std::vector<SVec> out;
  for (auto& a : cands) {
    VField D = vf_zero(R);
    for (int c = 0; c < nv; ++c) D[c] = poly_from(R, monos, a, 0, nv, c);
    SVec s;
    poly_into(s, mt, map(D));
    out.push_back(sv_normalize(s));
  }
  return out;
}

std::vector<SVec> function_kernel(const FnRing& S, const std::vector<SVec>& cands,
                                  const std::function<Poly(const Poly&)>& map) {
  auto monos = S.R->monomials();
  MonoIndex mi(monos);
  std::vector<SVec> imgs;
  for (auto& a : cands) {
    SVec s;
    poly_into(s, mi, map(poly_from(S.R, monos, a)));
    imgs.push_back(sv_normalize(s));
  }
  return kernel_of(S.R->F, (int)monos.size(), cands, imgs, (int)monos.size());
}


// ---------- h_omega ----------

using PMat = std::vector<std::vector<Poly>>;

PMat pmat_mul(const PMat& A, const PMat& B, const Ring& R) {
  int n = (int)A.size();
  PMat C(n, std::vector<Poly>(n, Poly(R)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (A[i][k].is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!B[k][j].is_zero()) C[i][j] += A[i][k] * B[k][j];
    }
  return C;
}

Poly pfaffian(const PMat& A, std::vector<int> idx, const Ring& R) {
  if (idx.empty()) return Poly::constant(R, R->F.one());
  int a = idx[0];
  Poly r(R);
  for (size_t j = 1; j < idx.size(); ++j) {
    if (A[a][idx[j]].is_zero()) continue;
    std::vector<int> rest;
    for (size_t t = 1; t < idx.size(); ++t)
      if (t != j) rest.push_back(idx[t]);
    Poly term = A[a][idx[j]] * pfaffian(A, rest, R);
    if (j % 2 == 0) r -= term;
    else r += term;
  }
  return r;
}

VectorialAlgebra build_h_omega(const VParams& P) {
  const Field& F = P.F;
  int p = F.characteristic();
  if (p <= 2) throw std::invalid_argument("Hamiltonian algebras are built for p > 2");
  int k = P.k;
  std::vector<int> N = fill_N(P.N, 2 * k);
  Ring R = PolyRing::divided(F, N, 0);
  std::vector<int> N1 = N;
  for (auto& x : N1) ++x;
  Ring R1 = PolyRing::divided(F, N1, 0);
  int n = 2 * k;
  // omega = 1/2 sum Omega_ij du_i du_j
  PMat Om(n, std::vector<Poly>(n, Poly(R)));
  auto add = [&](int i, int j, const Poly& c) {
    Om[i][j] += c;
    Om[j][i] -= c;
  };
  const SymplecticForm& w = P.omega;
  std::string label = "h_omega0";
  if (w.kind == SymplecticForm::Omega2) {
    if (k < 2) throw std::invalid_argument("omega_2 needs k > 1");
    if (w.eps.is_zero()) throw std::invalid_argument("eps must be nonzero");
    if (w.j < 0 || w.j >= n) throw std::invalid_argument("omega_2 index out of range");
    // omega = exp(eps u_j) (omega_0 + eps du_j ^ alpha), alpha = sum u_i du_{k+i}; the exponential is
    // divided out and reappears through the twisted differential dH + eps H du_j
    for (int i = 0; i < k; ++i) {
      add(i, k + i, Poly::constant(R, F.one()));
      if (w.j != k + i) add(w.j, k + i, Poly::var(R, i).scaled(w.eps));
    }
    label = "h_omega2";
  } else {
    for (int i = 0; i < k; ++i) add(i, k + i, Poly::constant(R, F.one()));
    if (w.kind == SymplecticForm::Omega1) {
      Mat A = omega1_matrix(F, w, N);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          Scalar c = (A[i][j] - A[j][i]) * w.eps;
          if (c.is_zero()) continue;
          std::vector<int> ex(n, 0);
          ex[i] = R->bound[i] - 1;
          ex[j] = R->bound[j] - 1;
          add(i, j, Poly::mono(R, ex, {}, c));
        }
      label = "h_omega1";
    }
  }
  // inverse via the constant part
  Mat C0 = mat_zero(F, n, n);
  uint64_t one_key = R->pack(std::vector<int>(n, 0), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) C0[i][j] = Om[i][j].coeff(one_key);
  auto C0i = mat_inverse(F, C0);
  if (!C0i) throw std::invalid_argument("symplectic form is degenerate at the origin");
  PMat C0ip(n, std::vector<Poly>(n, Poly(R))), Mneg(n, std::vector<Poly>(n, Poly(R)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      C0ip[i][j] = Poly::constant(R, (*C0i)[i][j]);
      Mneg[i][j] = Poly::constant(R, C0[i][j]) - Om[i][j];
    }
  PMat T = pmat_mul(C0ip, Mneg, R);  // -C0^{-1} (Omega - C0)
  PMat inv = C0ip, term = C0ip;
  for (int it = 0; it < 200; ++it) {
    term = pmat_mul(T, term, R);
    bool zero = true;
    for (auto& row : term)
      for (auto& x : row) zero &= x.is_zero();
    if (zero) break;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) inv[i][j] += term[i][j];
  }
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  PMat C0pm(n, std::vector<Poly>(n, Poly(R)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) C0pm[i][j] = Poly::constant(R, C0[i][j]);
  Poly pf = pfaffian(Om, all, R);
  Scalar pf0 = pfaffian(C0pm, all, R).coeff(one_key);
  Poly density = pf.scaled(pf0.inv());
  if (w.kind == SymplecticForm::Omega2) {
    // omega^k carries exp(k eps u_j); its terms past the top of R never reach the integral
    Poly ex(R);
    Scalar c = F.one(), ke = F.from_int(k) * w.eps;
    std::vector<int> e(n, 0);
    for (int s = 0; s < R->bound[w.j]; ++s) {
      e[w.j] = s;
      ex += Poly::mono(R, e, {}, c);
      c = c * ke;
    }
    density = density * ex;
  }

  // Hamiltonians: maximal ideal and the phantoms u_i^(p^N_i)
  // (for omega_2 every function, constants included, is a Hamiltonian and there are no phantoms)
  bool twisted = w.kind == SymplecticForm::Omega2;
  std::vector<Poly> hams;
  for (uint64_t key : R->monomials())
    if (twisted || key != one_key) hams.push_back(Poly::monomial(R, key, F.one()).truncated_to(R1));
  for (int i = 0; i < n && !twisted; ++i) {
    std::vector<int> ex(n, 0);
    ex[i] = R->bound[i];
    hams.push_back(Poly::mono(R1, ex));
  }
  auto monos = R->monomials();
  MonoIndex mi(monos);
  std::vector<SVec> family;
  std::vector<BasisElt> basis;
  for (auto& H : hams) {
    VField X = vf_zero(R);
    for (int i = 0; i < n; ++i) {
      Poly dH = H.derive(i).truncated_to(R);
      if (twisted && i == w.j) dH += H.truncated_to(R).scaled(w.eps);
      if (dH.is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!inv[i][j].is_zero()) X[j] += dH * inv[i][j];
    }
    family.push_back(field_to_svec(X, mi, n));
    BasisElt b;
    b.name = "H[" + H.str() + "]";
    if (w.kind == SymplecticForm::Omega0) {
      int d = 0;
      for (int i = 0; i < n; ++i) d += R1->exp(H.terms()[0].first, i);
      b.degree = d - 2;
    }
    basis.push_back(b);
  }
  check_cap(family.size(), P, label);
  auto to_field = [&](const SVec& a) {
    VField D = vf_zero(R);
    for (int c = 0; c < n; ++c) D[c] = poly_from(R, monos, a, 0, n, c);
    return D;
  };
  auto bracket = [&](const SVec& x, const SVec& y) { return field_to_svec(vf_bracket(to_field(x), to_field(y)), mi, n); };
  VectorialAlgebra v;
  v.series = label;
  v.fr.R = R;
  v.kind = Realization::Fields;
  v.monos = monos;
  v.alg = from_realization(F, (int)monos.size() * n, family, basis, bracket);
  v.alg.meta["series"] = label;
  v.elems = family;
  v.ham_ring = R1;
  v.ham = hams;
  v.density = density;
  v.omega_inv = inv;
  if (twisted) {
    v.twist_index = w.j;
    v.twist_eps = w.eps;
  }
  return v;
}

// ---------- vas ----------

int perm_sign(std::vector<int> a) {
  int s = 1;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      if (a[i] > a[j]) s = -s;
  return s;
}

VectorialAlgebra build_vas(const VParams& P) {
  const Field& F = P.F;
  if (F.characteristic() <= 2) throw std::invalid_argument("vas is built for p > 2");
  std::vector<int> N = fill_N(P.N, 4);
  Ring R = PolyRing::divided(F, N, 0);
  auto monos = R->monomials();
  MonoIndex mi(monos);
  int M = (int)monos.size(), nv = 4, off = M * nv;
  Scalar mhalf = -F.from_int(1) / F.from_int(2);
  auto even_of = [&](const SVec& a) {
    VField D = vf_zero(R);
    for (int c = 0; c < nv; ++c) D[c] = poly_from(R, monos, a, 0, nv, c);
    return D;
  };
  auto odd_of = [&](const SVec& a) {
    VField w = vf_zero(R);
    for (int c = 0; c < nv; ++c) w[c] = poly_from(R, monos, a, off, nv, c);
    return w;
  };
  auto is_odd = [&](const SVec& a) { return !a.empty() && a.front().first >= off; };
  // [D, w vol^{-1/2}] = (L_D w - 1/2 Div D w) vol^{-1/2}
  auto act = [&](const VField& D, const VField& w) {
    Poly dv = divergence(D);
    VField r = vf_zero(R);
    for (int j = 0; j < nv; ++j) {
      r[j] = vf_apply(D, w[j]) + (dv * w[j]).scaled(mhalf);
      for (int i = 0; i < nv; ++i)
        if (!w[i].is_zero()) r[j] += w[i] * D[i].derive(j);
    }
    return r;
  };
  auto odd_odd = [&](const VField& a, const VField& b) {
    // 3-form coefficients on du_x du_y du_z for x<y<z
    std::map<std::vector<int>, Poly> c3;
    auto put = [&](int x, int y, int z, const Poly& c) {
      if (x == y || y == z || x == z || c.is_zero()) return;
      std::vector<int> s{x, y, z};
      int sg = perm_sign(s);
      std::sort(s.begin(), s.end());
      auto it = c3.find(s);
      if (it == c3.end()) it = c3.emplace(s, Poly(R)).first;
      it->second += sg > 0 ? c : -c;
    };
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j)
        for (int k = 0; k < nv; ++k) {
          put(i, j, k, a[j].derive(i) * b[k]);  // d a ^ b
          put(j, i, k, a[j] * b[k].derive(i));  // a ^ d b
        }
    VField D = vf_zero(R);
    for (auto& [s, c] : c3) {
      int l = 0 + 1 + 2 + 3 - s[0] - s[1] - s[2];
      int sg = perm_sign({s[0], s[1], s[2], l});
      D[l] += sg > 0 ? c : -c;
    }
    return D;
  };
  auto bracket = [&](const SVec& x, const SVec& y) -> SVec {
    bool ox = is_odd(x), oy = is_odd(y);
    if (!ox && !oy) return field_to_svec(vf_bracket(even_of(x), even_of(y)), mi, nv);
    if (!ox && oy) return field_to_svec(act(even_of(x), odd_of(y)), mi, nv, off);
    if (ox && !oy) return sv_scale(-F.one(), field_to_svec(act(even_of(y), odd_of(x)), mi, nv, off));
    return field_to_svec(odd_odd(odd_of(x), odd_of(y)), mi, nv);
  };
  std::vector<SVec> family;
  std::vector<BasisElt> basis;
  for (int a = 0; a < M; ++a)
    for (int c = 0; c < nv; ++c) {
      family.push_back(SVec{{a * nv + c, F.one()}});
      Poly f = Poly::monomial(R, monos[a], F.one());
      std::string fs = f.str();
      BasisElt b;
      b.name = (fs == "1" ? "" : fs + " ") + "d_" + R->var_name(c);
      b.parity = 0;
      int d = -1;
      for (int i = 0; i < nv; ++i) d += R->exp(monos[a], i);
      b.degree = d;
      basis.push_back(b);
    }
  for (int a = 0; a < M; ++a)
    for (int c = 0; c < nv; ++c) {
      family.push_back(SVec{{off + a * nv + c, F.one()}});
      Poly f = Poly::monomial(R, monos[a], F.one());
      std::string fs = f.str();
      BasisElt b;
      b.name = (fs == "1" ? "" : fs + " ") + "du" + std::to_string(c + 1) + "/sqrt(vol)";
      b.parity = 1;
      int d = -1;
      for (int i = 0; i < nv; ++i) d += R->exp(monos[a], i);
      b.degree = d;
      basis.push_back(b);
    }
  check_cap(family.size(), P, "vas");
  VectorialAlgebra v;
  v.series = "vas";
  v.fr.R = R;
  v.kind = Realization::Vas;
  v.monos = monos;
  v.alg = from_realization(F, 2 * off, family, basis, bracket);
  v.alg.meta["series"] = "vas";
  v.elems = family;
  return v;
}

}  // namespace

std::vector<std::string> vectorial_series() {
  return {"vect", "svect", "svect_h", "svect1", "k", "po", "m", "sm", "b_ab", "le", "sle", "sle1", "sb",
          "h_omega", "h_omega1", "h_omega2", "vas"};
}

VectorialAlgebra vectorial_subalgebra(const VectorialAlgebra& v, const std::vector<SVec>& ambient_vectors,
                                      const std::string& series) {
  if (v.kind == Realization::Functions)
    return function_algebra(series, v.fr, v.bracket, v.shift, ambient_vectors, v.mod_constants);
  if (v.kind == Realization::Fields && v.ham.empty()) {
    VectorialAlgebra r = field_algebra(series, v.fr.R, ambient_vectors);
    r.volume = v.volume;
    r.volume_ring = v.volume_ring;
    return r;
  }
  throw std::invalid_argument("subalgebras by ambient vectors are not supported for this realization");
}

VectorialAlgebra derived_vectorial(const VectorialAlgebra& v, int times) {
  VectorialAlgebra cur = v;
  for (int t = 0; t < times; ++t) {
    SubalgebraResult d = derived_algebra(cur.alg);
    VectorialAlgebra nx = cur;
    nx.alg = d.alg;
    nx.elems.clear();
    std::vector<Poly> ham;
    for (auto& e : d.embedding) {
      nx.elems.push_back(cur.ambient_of(e));
      if (!cur.ham.empty()) {
        Poly h(cur.ham_ring);
        for (auto& [i, c] : e) h += cur.ham[i].scaled(c);
        ham.push_back(h);
      }
    }
    nx.ham = ham;
    nx.series = cur.series + "'";
    nx.alg.meta["series"] = nx.series;
    cur = nx;
  }
  return cur;
}

VectorialAlgebra build_vectorial(const std::string& series, const VParams& P) {
  const Field& F = P.F;
  int p = F.characteristic();
  bool lie_field = series == "vect" || series == "svect" || series == "svect_h" || series == "svect1";
  if (p == 2 && !(lie_field && P.n_odd == 0))
    throw std::invalid_argument("characteristic 2 is only allowed for vect/svect Lie algebras");
  VectorialAlgebra v;
  if (lie_field) {
    if (P.N.empty() && P.n_odd == 0) throw std::invalid_argument("vect/svect need a shearing vector (its length is m)");
    Ring R = ring_for(F, P.N, P.n_odd, {}, {});
    auto cands = all_fields(R);
    if (series == "vect") {
      check_cap(cands.size(), P, "vect");
      v = field_algebra("vect", R, cands);
    } else {
      Density h = volume_density(R, series == "svect_h" ? P.density : DensityKind::One, P.density_index);
      auto imgs = field_images(R, h.ring, cands, [&](const VField& D) {
        VField Dh(D.size(), Poly(h.ring));
        for (size_t i = 0; i < D.size(); ++i) Dh[i] = D[i].truncated_to(h.ring);
        if (h.kind == DensityKind::Exp) {
          // d_i exp(ubar) = exp(ubar) u_i^(p^N_i - 1) holds only before truncation; divide out exp(ubar)
          int i = P.density_index;
          std::vector<int> e(R->m, 0);
          e[i] = R->bound[i] - 1;
          return divergence(D).truncated_to(h.ring) + Dh[i] * Poly::mono(h.ring, e);
        }
        return vf_apply(Dh, h.h) + h.h * divergence(D).truncated_to(h.ring);
      });
      auto ker = kernel_of(F, (int)h.ring->monomials().size(), cands, imgs, 0);
      check_cap(ker.size(), P, series);
      std::string nm = series == "svect1" ? "svect" : series;
      v = field_algebra(nm, R, ker);
      v.volume = h.h;
      v.volume_ring = h.ring;
      if (series == "svect1") v = derived_vectorial(v, 1), v.series = "svect1", v.alg.meta["series"] = "svect1";
    }
  } else if (series == "k") {
    FnRing S = contact_ring(F, P.n, P.N, P.n_odd);
    int M = (int)S.R->monomials().size();
    check_cap(M, P, "k");
    v = function_algebra("k", S, "kb", 0, units(F, M));
  } else if (series == "po") {
    FnRing S = poisson_ring(F, P.n, P.N, P.n_odd);
    int M = (int)S.R->monomials().size();
    check_cap(M, P, "po");
    v = function_algebra("po", S, "pb", 0, units(F, M));
  } else if (series == "m" || series == "sm" || series == "b_ab") {
    FnRing S = pericontact_ring(F, P.n, P.N);
    int M = (int)S.R->monomials().size();
    auto cands = units(F, M);
    if (series != "m") {
      cands = function_kernel(S, cands, [&](const Poly& f) {
        Poly ft = f.derive(S.tau());
        if (series == "sm") return ft - euler(S, ft) - laplacian(S, f);
        Scalar a = P.a, b = P.b;
        if (a == Scalar() || b == Scalar()) throw std::invalid_argument("b_ab needs parameters a and b");
        return ft.scaled(b * F.from_int(S.n)) - euler(S, ft).scaled(a) - laplacian(S, f).scaled(a);
      });
    }
    check_cap(cands.size(), P, series);
    v = function_algebra(series, S, "mb", 1, cands);
  } else if (series == "le" || series == "sle" || series == "sle1" || series == "sb") {
    FnRing S = buttin_ring(F, P.n, P.N);
    auto monos = S.R->monomials();
    int M = (int)monos.size();
    std::vector<SVec> cands;
    uint64_t one = S.R->pack(std::vector<int>(S.R->m, 0), 0);
    for (int i = 0; i < M; ++i)
      if (series == "sb" || monos[i] != one) cands.push_back(sv_unit(F, i));
    if (series != "le") cands = function_kernel(S, cands, [&](const Poly& f) { return laplacian(S, f); });
    check_cap(cands.size(), P, series);
    v = function_algebra(series == "sle1" ? "sle" : series, S, "bb", 1, cands, series != "sb");
    if (series == "sle1") v = derived_vectorial(v, 1), v.series = "sle1", v.alg.meta["series"] = "sle1";
  } else if (series == "h_omega" || series == "h_omega1" || series == "h_omega2") {
    v = build_h_omega(P);
    int steps = series == "h_omega" ? 0 : series == "h_omega1" ? 1 : 2;
    std::string base = v.series;
    if (steps) v = derived_vectorial(v, steps);
    v.series = base + (steps ? "^(" + std::to_string(steps) + ")" : "");
    v.alg.meta["series"] = v.series;
  } else if (series == "vas") {
    v = build_vas(P);
  } else {
    throw std::invalid_argument("unknown vectorial series " + series);
  }
  if (P.derived > 0) {
    std::string s = v.series;
    v = derived_vectorial(v, P.derived);
    v.series = s + "^(" + std::to_string(P.derived) + ")";
  }
  v.alg.meta["field"] = F.name();
  return v;
}

// ---------- forms ----------

bool contact_condition(int n, int m, int p) {
  long c = 2L * n + 2 - m + 4;
  if (p == 0) return c == 0;
  return ((c % p) + p) % p == 0;
}

std::optional<BilinearForm> form_with_values(const SuperAlgebra& g, const FormSpace& space,
                                             const std::vector<std::tuple<SVec, SVec, Scalar>>& values) {
  const Field& F = g.field();
  int d = space.dim();
  if (d == 0) return std::nullopt;
  Mat A;
  std::vector<Scalar> rhs;
  for (auto& [x, y, val] : values) {
    std::vector<Scalar> row;
    for (auto& B : space.basis) row.push_back(B(x, y));
    A.push_back(row);
    rhs.push_back(val);
  }
  auto sol = solve_linear(F, A, rhs);
  if (!sol.consistent) return std::nullopt;
  return combine(F, space, sol.particular);
}

BilinearForm integral_pairing(const VectorialAlgebra& v, int parity) {
  const Field& F = v.alg.field();
  int n = v.alg.dim();
  BilinearForm B;
  B.parity = parity;
  B.gram = mat_zero(F, n, n);
  if (!v.ham.empty()) {
    const Ring& R1 = v.ham_ring;
    const PolyRing& R = *v.fr.R;
    std::vector<int> top(R.m);
    for (int i = 0; i < R.m; ++i) top[i] = R.bound[i] - 1;
    uint64_t tk = R1->pack(top, 0);
    Poly dens = v.density->truncated_to(R1);
    for (int i = 0; i < n; ++i) {
      Poly a = v.ham[i] * dens;
      for (int j = 0; j < n; ++j) B.gram[i][j] = (a * v.ham[j]).coeff(tk);
    }
    return B;
  }
  if (v.kind == Realization::Vas) {
    int M = (int)v.monos.size(), nv = 4, off = M * nv;
    const Ring& R = v.fr.R;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const SVec &x = v.elems[i], &y = v.elems[j];
        int xi = x.front().first, yi = y.front().first;
        bool ox = xi >= off, oy = yi >= off;
        if (ox == oy) continue;
        int ev = ox ? yi : xi, od = (ox ? xi : yi) - off;
        if (ev % nv != od % nv) continue;
        Poly f = Poly::monomial(R, v.monos[ev / nv], x.front().second * Scalar(F.one()));
        Poly g = Poly::monomial(R, v.monos[od / nv], y.front().second);
        B.gram[i][j] = (f * g).integral();
      }
    return B;
  }
  if (v.kind != Realization::Functions) throw std::invalid_argument("integral pairing needs generating functions or Hamiltonians");
  std::vector<Poly> fs;
  for (int i = 0; i < n; ++i) fs.push_back(v.function_of(sv_unit(F, i)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B.gram[i][j] = (fs[i] * fs[j]).integral();
  return B;
}

namespace {

void verify(const VectorialAlgebra& v, NisFormula& r) {
  if (!r.form) return;
  r.nondegenerate = is_nondegenerate(v.alg.field(), *r.form);
  r.invariant = check_invariance(v.alg, *r.form, true).ok;
}

}  // namespace

NisFormula nis_formula(const VectorialAlgebra& v) {
  NisFormula r;
  const Field& F = v.alg.field();
  int p = F.characteristic();
  const std::string& s = v.series;
  const PolyRing& R = *v.fr.R;
  if (s == "vect") {
    if (R.n != 0) {
      r.reason = "closed form only for purely even vect";
      return r;
    }
    if (R.m == 1 && p == 3) {
      BilinearForm B;
      B.parity = 0;
      int n = v.alg.dim();
      B.gram = mat_zero(F, n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Poly a = poly_from(v.fr.R, v.monos, v.elems[i]), b = poly_from(v.fr.R, v.monos, v.elems[j]);
          B.gram[i][j] = (a * b).integral();
        }
      r.form = B;
      r.reason = "n = 1, p = 3: (u^(a) d, u^(b) d) = int u^(a) u^(b) du";
    } else if (R.m == 2 && p == 2) {
      BilinearForm B;
      B.parity = 0;
      int n = v.alg.dim();
      B.gram = mat_zero(F, n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          int ci = v.elems[i].front().first % 2, cj = v.elems[j].front().first % 2;
          if ((ci + cj + 2) % 2 == 0) continue;  // (i + j) mod 2 with indices 1, 2
          Poly a = Poly::monomial(v.fr.R, v.monos[v.elems[i].front().first / 2], F.one());
          Poly b = Poly::monomial(v.fr.R, v.monos[v.elems[j].front().first / 2], F.one());
          B.gram[i][j] = (a * b).integral();
        }
      r.form = B;
      r.reason = "n = p = 2: (u^(a) d_i, u^(b) d_j) = (i + j) int u^(a) u^(b)";
    } else {
      r.reason = "vect(n;N) has a NIS only for n = 1, p = 3 or n = p = 2";
      return r;
    }
  } else if (s == "svect1") {
    if (R.m != 3 || R.n != 0) {
      r.reason = "closed form stated for svect^(1)(3;N) only";
      return r;
    }
    // (d_i, D_jk(u^(tau))) = sign(i,j,k), completed by invariance
    int nv = 3;
    MonoIndex mi(v.monos);
    SpanCoords sc(F, v.ambient(), v.elems);
    std::vector<int> top(3);
    for (int i = 0; i < 3; ++i) top[i] = R.bound[i] - 1;
    Poly ut = Poly::mono(v.fr.R, top);
    std::vector<std::tuple<SVec, SVec, Scalar>> vals;
    for (int i = 0; i < 3; ++i) {
      VField di = vf_zero(v.fr.R);
      di[i] = Poly::constant(v.fr.R, F.one());
      int j = (i + 1) % 3, k = (i + 2) % 3;
      VField Djk = vf_zero(v.fr.R);
      Djk[j] = ut.derive(k);
      Djk[k] = -ut.derive(j);
      auto a = sc.coords(field_to_svec(di, mi, nv));
      auto b = sc.coords(field_to_svec(Djk, mi, nv));
      if (!a || !b) {
        r.reason = "d_i or D_jk(u^(tau)) not in the algebra";
        return r;
      }
      vals.emplace_back(*a, *b, F.one());
    }
    FormSpace fs = invariant_forms(v.alg, 0);
    r.form = form_with_values(v.alg, fs, vals);
    r.reason = "n = 3: (d_i, D_jk(u^(tau))) = sign(i,j,k) extended by invariance";
    if (!r.form) r.reason += "; no invariant form takes these values";
  } else if (!v.ham.empty()) {
    r.form = integral_pairing(v, 0);
    r.reason = "(X_F, X_G) = int F G omega^k";
  } else if (s == "k") {
    int n = v.fr.n, m = R.n;
    if (!contact_condition(n, m, p)) {
      r.reason = "2n+2-m = " + std::to_string(2 * n + 2 - m) + " is not -4 mod p";
      return r;
    }
    r.form = integral_pairing(v, m % 2);
    r.reason = "2n+2-m = -4 mod p: (f, g) = int f g vvol, parity m mod 2";
  } else if (s == "po") {
    if (R.m != 0 && p == 0) {
      r.reason = "Berezin pairing needs a top monomial";
      return r;
    }
    r.form = integral_pairing(v, R.n % 2);
    r.reason = "(f, g) = int f g vvol, parity m mod 2";
  } else if (s == "sb" || s == "sle1") {
    // parity of the pairing on the shifted algebra: the integral has parity n
    r.form = integral_pairing(v, R.n % 2);
    r.reason = "(f, g) = int f g vvol on Delta f = 0";
  } else if (s == "vas") {
    if (p != 3) {
      r.reason = "odd pairing needs -1/2 = 1, i.e. p = 3";
      return r;
    }
    r.form = integral_pairing(v, 1);
    r.reason = "p = 3: (f d_i, g du_j vol^(-1/2)) = delta_ij int f g vvol";
  } else {
    r.reason = "no closed-form NIS known for " + s;
    return r;
  }
  verify(v, r);
  return r;
}

int hamiltonian_integral_check(const VectorialAlgebra& v, int pairs, uint64_t seed) {
  if (v.ham.empty()) throw std::invalid_argument("not a Hamiltonian algebra");
  const Field& F = v.alg.field();
  const Ring& R1 = v.ham_ring;
  const PolyRing& R = *v.fr.R;
  int n = R.m;
  std::vector<int> top(n);
  for (int i = 0; i < n; ++i) top[i] = R.bound[i] - 1;
  uint64_t tk = R1->pack(top, 0);
  Poly dens = v.density->truncated_to(R1);
  auto dtw = [&](const Poly& H, int i) {
    Poly d = H.derive(i).truncated_to(v.fr.R);
    if (i == v.twist_index) d += H.truncated_to(v.fr.R).scaled(v.twist_eps);
    return d;
  };
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, v.alg.dim() - 1);
  int fails = 0;
  for (int t = 0; t < pairs; ++t) {
    Poly Fh(R1), Gh(R1);
    for (int s = 0; s < 3; ++s) {
      Fh += v.ham[pick(rng)].scaled(F.random(rng));
      Gh += v.ham[pick(rng)].scaled(F.random(rng));
    }
    Poly br(R1);
    for (int i = 0; i < n; ++i) {
      Poly dF = dtw(Fh, i);
      if (dF.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        if (v.omega_inv[i][j].is_zero()) continue;
        br += (dF * v.omega_inv[i][j] * dtw(Gh, j)).truncated_to(R1);
      }
    }
    if (!(br * dens).coeff(tk).is_zero()) ++fails;
  }
  return fails;
}

KasCheck kas_restriction(const VectorialAlgebra& k) {
  if (k.series != "k" || k.fr.n != 0 || k.fr.R->n != 6) throw std::invalid_argument("kas check needs k(1;N|6)");
  const Field& F = k.alg.field();
  const PolyRing& R = *k.fr.R;
  uint32_t all = (1u << 6) - 1;
  std::vector<int> keep;
  for (int i = 0; i < k.alg.dim(); ++i) {
    Poly f = k.function_of(sv_unit(F, i));
    bool bad = false;
    for (auto& [key, c] : f.terms()) bad |= R.mask(key) == all;
    if (!bad) keep.push_back(i);
  }
  BilinearForm B = integral_pairing(k, 0);
  int d = (int)keep.size();
  Mat G = mat_zero(F, d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) G[a][b] = B.gram[keep[a]][keep[b]];
  KasCheck r;
  r.envelope_dim = d;
  auto ker = mat_kernel(F, G);
  r.radical_dim = (int)ker.size();
  int one = -1;
  for (int a = 0; a < d; ++a)
    if (k.function_of(sv_unit(F, keep[a])).str() == "1") one = a;
  if (one >= 0) {
    bool zero = true;
    for (int b = 0; b < d; ++b) zero &= G[one][b].is_zero();
    r.one_in_radical = zero;
  }
  return r;
}

L22 deform_L22(const Field& F, const Scalar& eps) {
  if (F.characteristic() != 3) throw std::invalid_argument("L(2,2) lives in characteristic 3");
  FnRing S = contact_ring(F, 1, {1, 1, 1}, 0);
  const Ring& R = S.R;
  auto mono = [&](int t, int p, int q, Scalar c) {
    // ordinary powers in terms of divided ones: x^2 = 2 x^(2)
    Scalar f = F.one();
    for (int e : {t, p, q})
      if (e == 2) f = f * F.from_int(2);
    return Poly::mono(R, {t, p, q}, {}, c * f);
  };
  Scalar one = F.one(), e1 = F.one() + eps;
  std::vector<Poly> fn = {
      mono(0, 0, 0, one),                                          // y4
      mono(0, 1, 0, one),                                          // y2
      mono(0, 0, 1, one),                                          // y3
      mono(1, 0, 0, -eps) + mono(0, 1, 1, one),                    // h2
      mono(0, 1, 1, -one),                                         // h1
      mono(0, 2, 0, one),                                          // x1 = E_beta
      mono(0, 0, 2, -one),                                         // y1 = E_-beta
      mono(0, 1, 2, -e1) + mono(1, 0, 1, eps),                     // x2
      mono(0, 2, 1, e1) + mono(1, 1, 0, eps),                      // x3
      mono(0, 2, 2, eps * e1) + mono(2, 0, 0, eps * eps)};         // x4
  std::vector<std::string> names = {"y4", "y2", "y3", "h2", "h1", "x1", "y1", "x2", "x3", "x4"};
  std::vector<int> deg = {-2, -1, -1, 0, 0, 0, 0, 1, 1, 2};
  auto monos = R->monomials();
  MonoIndex mi(monos);
  std::vector<SVec> family;
  std::vector<BasisElt> basis;
  for (size_t i = 0; i < fn.size(); ++i) {
    SVec s;
    poly_into(s, mi, fn[i]);
    family.push_back(sv_normalize(s));
    basis.push_back({names[i], 0, deg[i]});
  }
  auto bracket = [&](const SVec& x, const SVec& y) {
    SVec out;
    poly_into(out, mi, contact_bracket_pqt(S, poly_from(R, monos, x), poly_from(R, monos, y)));
    return sv_normalize(out);
  };
  L22 res;
  res.br = from_realization(F, (int)monos.size(), family, basis, bracket);
  res.br.meta["series"] = "br2_table";
  res.functions = fn;
  // the deform lives over br(2;-1) = o(5); other eps only give br
  if (eps != -F.one()) {
    res.L = deform_L22(F, -F.one()).L;
    return res;
  }
  // the cocycle breaks the grading: L(2,2) is only filtered
  std::vector<BasisElt> ub = basis;
  for (auto& b : ub) b.degree.reset();
  res.L = SuperAlgebra(F, ub);
  for (int i = 0; i < res.br.dim(); ++i)
    for (int j = i; j < res.br.dim(); ++j) res.L.set_bracket(i, j, res.br.stored(i, j));
  // [.,.] = {.,.} + 2c with c = x1 dy3^dy4 + 2 x3 dy1^dy4 + x4 dy1^dy3
  auto idx = [&](const std::string& s) { return res.L.index_of(s); };
  auto add = [&](const std::string& a, const std::string& b, const std::string& x, long c) {
    int i = idx(a), j = idx(b);
    SVec cur = res.L.bracket(i, j);
    res.L.set_bracket(i, j, sv_axpy(cur, F.from_int(2 * c), sv_unit(F, idx(x))));
  };
  add("y3", "y4", "x1", 1);
  add("y1", "y4", "x3", 2);
  add("y1", "y3", "x4", 2);  // coefficient 2 (= -1) is what makes c closed for these functions
  res.L.meta["series"] = "L(2,2)";
  return res;
}

L22Comparison compare_L22_with_recipe(const Field& F) {
  L22Comparison r;
  L22 t = deform_L22(F, -F.one());
  r.jacobi_br = check_jacobi(t.br, true).ok();
  r.jacobi_L = check_jacobi(t.L, true).ok();
  CartanResult c = build_contragredient(catalog("br2", F, {{"eps", -F.one()}}));
  const SuperAlgebra& g = c.alg;
  r.names = g.names();
  int n = g.dim();
  std::vector<std::pair<int, SVec>> gens;
  for (int i = 0; i < 2; ++i) {
    std::string xi = "x" + std::to_string(i + 1), yi = "y" + std::to_string(i + 1), hi = "h" + std::to_string(i + 1);
    SVec x = sv_unit(F, t.br.index_of(xi)), y = sv_unit(F, t.br.index_of(yi));
    // [x, s y] = h pins s
    SVec b = t.br.bracket(x, y);
    int h = t.br.index_of(hi);
    if (b.size() != 1 || b[0].first != h) return r;
    Scalar s = b[0].second.inv();
    r.y_rescale.push_back(s.inv());
    gens.emplace_back(g.index_of(xi), x);
    gens.emplace_back(g.index_of(yi), sv_scale(s, y));
  }
  auto phi = extend_homomorphism(g, t.br, gens);
  if (!phi) return r;
  r.identified = true;
  auto space = invariant_forms(t.L, 0);
  r.form_space_dim = space.dim();
  if (space.dim() != 1 || !c.recipe) return r;
  const BilinearForm& B = space.basis[0];
  r.nondegenerate = is_nondegenerate(F, B);
  r.gram_L = mat_zero(F, n, n);
  r.gram_recipe = c.recipe->gram;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.gram_L[i][j] = B((*phi)[i], (*phi)[j]);
  // one global scalar
  std::optional<Scalar> ratio;
  bool eq = true;
  for (int i = 0; i < n && eq; ++i)
    for (int j = 0; j < n && eq; ++j) {
      const Scalar &a = r.gram_L[i][j], &b = r.gram_recipe[i][j];
      if (a.is_zero() != b.is_zero()) eq = false;
      else if (!a.is_zero()) {
        if (!ratio) ratio = b / a;
        else if (!(*ratio * a == b)) eq = false;
      }
    }
  if (eq && ratio)
    for (auto& row : r.gram_L)
      for (auto& x : row) x = x * *ratio;
  r.gram_equal = eq && ratio.has_value();
  return r;
}

}  // namespace nisforge
