#include "nisforge/suites.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>

#include "nisforge/cartan.hpp"
#include "nisforge/extensions.hpp"
#include "nisforge/loops.hpp"
#include "nisforge/matrix_alg.hpp"
#include "nisforge/vectorial.hpp"

namespace nisforge {

void SuiteContext::record(const std::string& name, const SuperAlgebra& g, const BilinearForm& B) {
  if (!g.graded()) return;
  graded.push_back({name, graded_pairing_check(g, B)});
}

bool SuiteResult::pass() const {
  if (checks.empty()) return false;
  for (auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const std::vector<SuiteInfo>& suite_list() {
  static const std::vector<SuiteInfo> L = {
      {1, "recipe", "recipe form on Cartan-matrix algebras"},
      {2, "l22", "L(2,2) against the recipe form of o(5)"},
      {3, "wk", "wk(4;a), wk(3;a) over GF(8)"},
      {4, "vect", "vect and svect NIS formulas"},
      {5, "conjecture", "no NIS on the svect deforms"},
      {6, "hamiltonian", "Hamiltonian algebras"},
      {7, "contact", "contact algebras"},
      {8, "queer", "odd forms: q, psq, queerification, po, sb"},
      {9, "dext", "double extensions"},
      {10, "loops", "loop and stringy superalgebras"},
      {11, "vas", "vas(4;1|4) at p = 3"},
      {12, "graded", "graded pairing property"},
  };
  return L;
}

namespace {

std::string yes(bool b) { return b ? "yes" : "no"; }

void add(SuiteResult& r, std::string name, std::string anchor, bool pass, std::string detail = "") {
  r.checks.push_back({std::move(name), std::move(anchor), pass, std::move(detail)});
}

// ---------- 1 ----------
void suite_recipe(SuiteResult& r, SuiteContext& ctx) {
  Field Q = Field::Q();
  auto a2 = build_contragredient(catalog("A2", Q));
  int fs = invariant_forms(a2.alg, 0).dim();
  bool ok = a2.alg.dim() == 8 && fs == 1 && a2.recipe && check_invariance(a2.alg, *a2.recipe).ok &&
            is_nondegenerate(Q, *a2.recipe);
  add(r, "A2 over Q: dim 8, one invariant form, recipe NIS", "recipe", ok,
      "dim " + std::to_string(a2.alg.dim()) + ", form space " + std::to_string(fs));
  if (a2.recipe) ctx.record("A2", a2.alg, *a2.recipe);
  Field F = Field::GF(3);
  auto br = build_contragredient(catalog("br2", F, {{"eps", -F.one()}}));
  ok = br.alg.dim() == 10 && br.recipe && check_invariance(br.alg, *br.recipe).ok && is_nondegenerate(F, *br.recipe);
  add(r, "br(2;-1) at p=3: dim 10, recipe form nondegenerate", "br(2;-1) = o(5)", ok,
      "dim " + std::to_string(br.alg.dim()));
  if (br.recipe) ctx.record("br(2;-1)", br.alg, *br.recipe);
}

// ---------- 2 ----------
void suite_l22(SuiteResult& r, SuiteContext&) {
  Field F = Field::GF(3);
  auto c = compare_L22_with_recipe(F);
  auto t = deform_L22(F, -F.one());
  auto jac = check_jacobi(t.L, true);
  add(r, "L(2,2) passes Jacobi on all basis triples", "L(2,2) table", jac.ok() && c.jacobi_L,
      std::to_string(jac.checked) + " triples");
  add(r, "table basis identified with the Chevalley basis of br(2;-1)", "L(2,2) table", c.identified);
  add(r, "invariant form of L(2,2) is unique and nondegenerate", "L(2,2) NIS",
      c.form_space_dim == 1 && c.nondegenerate, "form space " + std::to_string(c.form_space_dim));
  add(r, "its Gram matrix equals the recipe Gram of o(5)", "L(2,2) NIS", c.gram_equal);
}

// ---------- 3 ----------
// published diagonal x-y pairings at lambda = 0
std::vector<Scalar> wk4_published(const Scalar& a) {
  Field F = a.field();
  Scalar o = F.one(), A2 = a * a + a, A3 = a * a * a + a * a;
  return {o, o, o, o, a, o, o, a, o, A2, a, A2, A2, A3, a * A3};
}
std::vector<Scalar> wk3_published(const Scalar& a) {
  Field F = a.field();
  Scalar o = F.one();
  return {o, o, o, a, o, a, a * a + a};
}

struct PairingCompare {
  bool multiset = false, by_degree = false, exact = false;
  std::string detail;
};

PairingCompare compare_pairings(const CartanResult& res, const std::vector<Scalar>& pub) {
  PairingCompare pc;
  auto ours = diagonal_pairings(res);
  if (ours.size() != pub.size()) {
    pc.detail = std::to_string(ours.size()) + " positive roots vs " + std::to_string(pub.size()) + " published";
    return pc;
  }
  // order by principal degree, stable in construction order
  std::vector<int> deg;
  for (auto& p : ours) {
    int d = 0;
    for (int x : p.root) d += x;
    deg.push_back(d);
  }
  std::vector<int> idx(ours.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = (int)i;
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return deg[a] < deg[b]; });
  auto key = [](const Scalar& s) { return s.str(); };
  auto ms = [&](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  std::vector<std::string> A, B;
  for (size_t i = 0; i < pub.size(); ++i) {
    A.push_back(key(ours[idx[i]].value));
    B.push_back(key(pub[i]));
  }
  pc.multiset = ms(A) == ms(B);
  pc.exact = A == B;
  // consecutive slices of the published list with our per-degree counts
  pc.by_degree = true;
  size_t s = 0;
  while (s < idx.size()) {
    size_t e = s;
    while (e < idx.size() && deg[idx[e]] == deg[idx[s]]) ++e;
    std::vector<std::string> a(A.begin() + s, A.begin() + e), b(B.begin() + s, B.begin() + e);
    if (ms(a) != ms(b)) pc.by_degree = false;
    s = e;
  }
  std::ostringstream os;
  os << "ours:";
  for (int i : idx) os << " " << ours[i].value.str();
  pc.detail = os.str();
  return pc;
}

void suite_wk(SuiteResult& r, SuiteContext& ctx) {
  Field F = Field::GF(2, 3);
  Scalar g = F.generator();
  std::vector<Scalar> alphas = {g, g * g, g * g * g};
  if (ctx.quick) alphas.resize(1);
  bool nd4 = true, rad3 = true, gauge = true, exact = true;
  std::string det, rad_det;
  for (auto& a : alphas) {
    auto r4 = build_contragredient(catalog("wk4", F, {{"alpha", a}}));
    nd4 &= r4.recipe && check_invariance(r4.alg, *r4.recipe).ok && is_nondegenerate(F, *r4.recipe);
    if (r4.recipe) ctx.record("wk(4;" + a.str() + ")", r4.alg, *r4.recipe);
    auto r3 = build_contragredient(catalog("wk3", F, {{"alpha", a}}));
    if (r3.recipe) {
      Subspace rad = form_radical(r3.alg, *r3.recipe);
      SVec c = sv_axpy(sv_unit(F, r3.chev.h[0]), a, sv_unit(F, r3.chev.h[2]));
      Subspace D = derived_subspace(r3.alg);
      Subspace radD = intersect(F, rad, D);
      bool ok = radD.dim() == 1 && subspace_contains(F, radD, c);
      rad_det += "alpha=" + a.str() + ": radical " + std::to_string(rad.dim()) + ", in derived " +
                 std::to_string(radD.dim()) + "; ";
      rad3 &= ok;
    } else {
      rad3 = false;
    }
    auto p4 = compare_pairings(r4, wk4_published(a));
    auto p3 = compare_pairings(r3, wk3_published(a));
    gauge &= p4.multiset && p4.by_degree && p3.multiset && p3.by_degree;
    exact &= p4.exact && p3.exact;
    det += "alpha=" + a.str() + " wk4 " + p4.detail + "; wk3 " + p3.detail + ". ";
  }
  add(r, "wk(4;a) recipe form invariant and nondegenerate", "wk(4;a) NIS", nd4);
  add(r, "wk(3;a) recipe radical = span(h1 + a h3) inside the derived algebra", "wk(3;a) radical", rad3, rad_det);
  add(r, "diagonal x-y pairings match the lambda=0 lists (same-word gauge, per principal degree)",
      "wk pairings", gauge, det);
  // reported, not required
  r.checks.push_back({"positional order equals the published numbering (informational)", "wk pairings", true,
                      exact ? "exact" : "differs: the published numbering follows an external reference"});
}

// ---------- 4 ----------
VParams vp(const Field& F, std::vector<int> N) {
  VParams P;
  P.F = F;
  P.N = std::move(N);
  return P;
}

void suite_vect(SuiteResult& r, SuiteContext& ctx) {
  struct Yes {
    int p;
    std::vector<int> N;
    std::string label;
  };
  for (auto& y : std::vector<Yes>{{3, {1}, "vect(1;1) p=3"}, {3, {2}, "vect(1;2) p=3"}, {2, {1, 1}, "vect(2;11) p=2"}}) {
    auto v = build_vectorial("vect", vp(Field::GF(y.p), y.N));
    auto nf = nis_formula(v);
    add(r, y.label + ": closed-form NIS invariant and nondegenerate", "vect NIS formula",
        nf.form && nf.invariant && nf.nondegenerate, "dim " + std::to_string(v.alg.dim()));
    if (nf.form) ctx.record(y.label, v.alg, *nf.form);
  }
  for (auto& y : std::vector<Yes>{{5, {1}, "vect(1;1) p=5"}, {3, {1, 1}, "vect(2;11) p=3"}}) {
    auto v = build_vectorial("vect", vp(Field::GF(y.p), y.N));
    auto sp = invariant_forms(v.alg, 0);
    auto nis = find_nis(v.alg.field(), sp, ctx.seed);
    add(r, y.label + ": no NIS", "vect NIS formula", !nis.form && nis.certified_none,
        "form space " + std::to_string(sp.dim()) + ", " + nis.method);
  }
  auto s = build_vectorial("svect1", vp(Field::GF(3), {1, 1, 1}));
  auto nf = nis_formula(s);
  add(r, "svect^(1)(3;111) p=3: dim 52, closed-form NIS", "svect NIS formula",
      s.alg.dim() == 52 && nf.form && nf.invariant && nf.nondegenerate, "dim " + std::to_string(s.alg.dim()));
  if (nf.form) ctx.record("svect^(1)(3;111)", s.alg, *nf.form);
}

// ---------- 5 ----------
void no_nis_check(SuiteResult& r, SuiteContext& ctx, const std::string& label, const SuperAlgebra& g) {
  std::string det = "dim " + std::to_string(g.dim());
  bool none = true;
  for (int par = 0; par < 2; ++par) {
    auto sp = invariant_forms(g, par, FormOptions{true});
    auto nis = find_nis(g.field(), sp, ctx.seed);
    det += std::string(par ? ", odd" : ", even") + " forms " + std::to_string(sp.dim()) + " (" + nis.method +
           (nis.form ? ", nondegenerate found" : nis.certified_none ? ", certified none" : ", none found") + ")";
    if (nis.form || !nis.certified_none) none = false;
  }
  add(r, label + ": certified no NIS", "svect deform conjecture", none, det);
}

void suite_conjecture(SuiteResult& r, SuiteContext& ctx) {
  auto P = vp(Field::GF(3), {1, 1, 1});
  P.density = DensityKind::Exp;
  auto e = build_vectorial("svect_h", P);
  add(r, "svect_exp(3;111) has dim 54", "svect dimensions", e.alg.dim() == 54);
  no_nis_check(r, ctx, "svect_exp(3;111)", e.alg);
  P.density = DensityKind::OnePlusUbar;
  P.derived = 1;
  auto u = build_vectorial("svect_h", P);
  add(r, "svect_{1+u}^(1)(3;111) has dim 52", "svect dimensions", u.alg.dim() == 52);
  no_nis_check(r, ctx, "svect_{1+u}^(1)(3;111)", u.alg);
}

// ---------- 6 ----------
void suite_hamiltonian(SuiteResult& r, SuiteContext& ctx) {
  int pairs = ctx.quick ? 20 : 100;
  {
    VParams P = vp(Field::GF(5), {1, 1});
    P.k = 1;
    auto h = derived_vectorial(build_vectorial("h_omega", P), 2);
    add(r, "h_omega0^(2)(2;11) p=5 has dim 23", "Hamiltonian dimensions", h.alg.dim() == 23);
    auto nf = nis_formula(h);
    add(r, "omega0: closed-form NIS invariant and nondegenerate", "Hamiltonian NIS",
        nf.form && nf.invariant && nf.nondegenerate);
    if (nf.form) ctx.record("h_omega0^(2)(2;11)", h.alg, *nf.form);
    int bad = hamiltonian_integral_check(h, pairs, ctx.seed);
    add(r, "omega0: int {F,G} omega^k = 0 on random pairs", "Hamiltonian integral", bad == 0,
        std::to_string(bad) + " of " + std::to_string(pairs) + " failed");
  }
  {
    Field F = Field::GF(3);
    VParams P = vp(F, {1, 1, 1, 1});
    P.k = 2;
    P.omega.kind = SymplecticForm::Omega2;
    P.omega.eps = F.one();
    auto h = build_vectorial("h_omega", P);
    auto h1 = derived_vectorial(h, 1);
    add(r, "h_omega2(4;1111) p=3: dim 81, derived 80", "Hamiltonian dimensions",
        h.alg.dim() == 81 && h1.alg.dim() == 80,
        std::to_string(h.alg.dim()) + " -> " + std::to_string(h1.alg.dim()));
    auto nf = nis_formula(h1);
    add(r, "omega2: closed-form NIS invariant and nondegenerate", "Hamiltonian NIS",
        nf.form && nf.invariant && nf.nondegenerate,
        std::string("invariant ") + yes(nf.invariant) + ", nondegenerate " + yes(nf.nondegenerate) + "; " + nf.reason);
    int bad = hamiltonian_integral_check(h1, pairs, ctx.seed);
    add(r, "omega2: int {F,G} omega^k = 0 on random pairs", "Hamiltonian integral", bad == 0,
        std::to_string(bad) + " of " + std::to_string(pairs) + " failed");
  }
}

// ---------- 7 ----------
void suite_contact(SuiteResult& r, SuiteContext& ctx) {
  struct Case {
    int n, m, p;
    int want;  // -1 none, else parity
  };
  for (auto& c : std::vector<Case>{{0, 3, 3, 1}, {1, 2, 3, 0}, {0, 2, 3, -1}, {0, 6, 5, 0}}) {
    VParams P = vp(Field::GF(c.p), std::vector<int>(2 * c.n + 1, 1));
    P.n = c.n;
    P.n_odd = c.m;
    auto k = build_vectorial("k", P);
    bool cond = contact_condition(c.n, c.m, c.p);
    auto nf = nis_formula(k);
    std::string label = "(n,m,p)=(" + std::to_string(c.n) + "," + std::to_string(c.m) + "," + std::to_string(c.p) + ")";
    bool ok;
    std::string det = "dim " + std::to_string(k.alg.dim()) + ", condition " + yes(cond);
    if (c.want < 0) {
      // condition says no, and the solver agrees
      bool none = true;
      if (!ctx.quick || k.alg.dim() <= 100)
        for (int par = 0; par < 2; ++par) {
          auto nis = find_nis(k.alg.field(), invariant_forms(k.alg, par), ctx.seed);
          none &= !nis.form && nis.certified_none;
        }
      ok = !cond && !nf.form && none;
    } else {
      ok = cond && nf.form && nf.form->parity == c.want && nf.invariant && nf.nondegenerate;
      if (nf.form) ctx.record("k " + label, k.alg, *nf.form);
    }
    add(r, label + (c.want < 0 ? ": no NIS" : c.want ? ": odd NIS" : ": even NIS"), "contact condition", ok, det);
  }
  VParams P = vp(Field::GF(5), {1});
  P.n_odd = 6;
  auto k = build_vectorial("k", P);
  auto kc = kas_restriction(k);
  add(r, "k(1;1|6) p=5: half-density form restricted to the kas envelope is degenerate, 1 in its radical",
      "kas restriction", kc.radical_dim > 0 && kc.one_in_radical,
      "envelope " + std::to_string(kc.envelope_dim) + ", radical " + std::to_string(kc.radical_dim));
}

// ---------- 8 ----------
void suite_queer(SuiteResult& r, SuiteContext& ctx) {
  Field Q = Field::Q();
  for (auto& [nm, n] : std::vector<std::pair<std::string, int>>{{"q", 2}, {"q", 3}, {"psq", 3}}) {
    auto M = make_matrix_algebra(nm, {n}, Q);
    auto B = trace_form(M);
    bool ok = B.parity == 1 && check_invariance(M.alg, B).ok && is_nondegenerate(Q, B);
    add(r, nm + "(" + std::to_string(n) + "): qtr form is an odd NIS", "queer trace", ok);
  }
  {
    Field F = Field::GF(2);
    auto M = make_matrix_algebra("gl", {2, 0}, F);
    auto q = queerify(M.alg, trace_form(M), matrix_pmap(M));
    bool ok = q.alg.dim_even() == 4 && q.alg.dim_odd() == 4 && q.form.parity == 1 && q.invariant && q.nondegenerate &&
              check_jacobi(q.alg, true).ok();
    add(r, "queerified gl(2,GF(2)): 4|4 with odd NIS", "queerification", ok);
  }
  for (int m : {3, 4, 5}) {
    VParams P;
    P.F = Q;
    P.n_odd = m;
    auto v = build_vectorial("po", P);
    auto nf = nis_formula(v);
    bool ok = nf.form && nf.form->parity == m % 2 && nf.invariant && nf.nondegenerate;
    add(r, "po(0|" + std::to_string(m) + "): Berezin NIS of parity " + std::to_string(m % 2), "Poisson NIS", ok);
    if (nf.form) ctx.record("po(0|" + std::to_string(m) + ")", v.alg, *nf.form);
  }
  {
    VParams P = vp(Field::GF(3), {1, 1});
    P.n = 2;
    auto v = build_vectorial("sb", P);
    auto nf = nis_formula(v);
    bool ok = nf.form && nf.form->parity == (P.n + 1) % 2 && nf.invariant && nf.nondegenerate;
    add(r, "sb(2;11) p=3: NIS of parity n+1", "sb NIS", ok,
        std::string("invariant ") + yes(nf.invariant) + ", nondegenerate " + yes(nf.nondegenerate));
  }
}

// ---------- 9 ----------
void suite_dext(SuiteResult& r, SuiteContext&) {
  Field Q = Field::Q();
  auto abelian = [&](int e, int o) {
    std::vector<BasisElt> b;
    for (int i = 0; i < e; ++i) b.push_back({"a" + std::to_string(i + 1), 0, std::nullopt});
    for (int i = 0; i < o; ++i) b.push_back({"o" + std::to_string(i + 1), 1, std::nullopt});
    return SuperAlgebra(Q, b);
  };
  {
    DExtensionData d;
    d.base = abelian(2, 0);
    d.form.gram = mat_identity(Q, 2);
    d.D = {{Q.zero(), Q.one()}, {-Q.one(), Q.zero()}};
    auto x = double_extend(d);
    add(r, "oscillator: Jacobi, invariant, nondegenerate, cocycle", "double extension NIS",
        x.jacobi && x.invariant && x.nondegenerate && cocycle_identity(d) && !x.decomposable);
  }
  {
    DExtensionData d;
    d.base = abelian(0, 2);
    d.form.gram = {{Q.zero(), Q.one()}, {-Q.one(), Q.zero()}};
    d.D = {{Q.one(), Q.zero()}, {Q.zero(), -Q.one()}};
    auto x = double_extend(d);
    auto M = make_matrix_algebra("gl", {1, 1}, Q);
    auto rec = recognize_double_extension(M.alg, trace_form(M));
    add(r, "gl(1|1) from psl(1|1): Jacobi, invariant, nondegenerate, matches the matrix model", "double extension NIS",
        x.jacobi && x.invariant && x.nondegenerate && x.alg.dim_even() == 2 && x.alg.dim_odd() == 2 &&
            rec.status == "double_extension" && rec.round_trip);
  }
  {
    auto M = make_matrix_algebra("gl", {2, 2}, Q);
    auto rec = recognize_double_extension(M.alg, trace_form(M));
    bool ok = rec.status == "double_extension" && rec.data.base.dim_even() == 6 && rec.data.base.dim_odd() == 8 &&
              rec.sigma_matches && rec.round_trip && is_nondegenerate(Q, rec.data.form);
    add(r, "gl(2|2) recognized over psl(2|2) (6|8), round trip", "double extension recognition", ok,
        "status " + rec.status + ", h " + std::to_string(rec.h_dim));
  }
  {
    VParams P;
    P.F = Q;
    P.n_odd = 4;
    auto v = build_vectorial("po", P);
    auto nf = nis_formula(v);
    bool ok = false;
    std::string det;
    if (nf.form) {
      auto rec = recognize_double_extension(v.alg, *nf.form);
      ok = rec.status == "double_extension" && rec.h_dim == 14 && rec.round_trip && is_nondegenerate(Q, rec.data.form);
      det = "status " + rec.status + ", h " + std::to_string(rec.h_dim);
    }
    add(r, "po(0|4) recognized over a 14-dim quotient, round trip", "double extension recognition", ok, det);
  }
  {
    auto M = make_matrix_algebra("sl", {2, 0}, Q);
    DExtensionData d;
    d.base = M.alg;
    d.form = trace_form(M);
    // ad of the diagonal element
    int h = -1;
    for (int i = 0; i < 3; ++i)
      if (d.form.gram[i][i] == Q.from_int(2)) h = i;
    d.D = M.alg.ad_matrix(sv_unit(Q, h));
    auto x = double_extend(d);
    add(r, "inner derivation flagged decomposable", "decomposable case", x.decomposable && x.inner.has_value());
  }
}

// ---------- 10 ----------
void suite_loops(SuiteResult& r, SuiteContext& ctx) {
  Field Q = Field::Q();
  auto sl2 = make_matrix_algebra("sl", {2, 0}, Q);
  auto L = loop_build(sl2.alg, trace_form(sl2), 4);
  auto B = residue_nis(L);
  auto inv = interior_invariance(L, B);
  add(r, "sl(2) loops (window 4): residue form interior-invariant and nondegenerate", "residue NIS",
      inv.ok && is_nondegenerate(Q, B), std::to_string(inv.checked) + " triples");
  ctx.record("sl(2) loops", L.alg, B);
  auto psq = make_matrix_algebra("psq", {2}, Q);
  auto tr = trace_form(psq);
  auto T = loop_build_range(psq.alg, tr, -5, 4, parity_automorphism(psq.alg), 2, -Q.one());
  auto BT = residue_nis(T, -1);
  auto invT = interior_invariance(T, BT);
  add(r, "psq(2) twisted loops: residue form odd, interior-invariant, nondegenerate", "odd residue",
      BT.parity == 1 && invT.ok && is_nondegenerate(Q, BT), std::to_string(invT.checked) + " triples");
  ctx.record("psq(2) twisted loops", T.alg, BT);
  auto c = central_cocycle_matrix(L);
  auto U = loop_build(psq.alg, tr, 3);
  auto cu = central_cocycle_matrix(U);
  add(r, "central cocycle Res tr(f dg): cocycle identity on interior triples", "loop central extension",
      interior_cocycle_check(L, c).ok && interior_cocycle_check(U, cu).ok);
  Scalar al = Q.from_frac(1, 2);
  auto S = svect_alpha_build(Q, al, ctx.quick ? 3 : 4);
  bool Lok = true, Gok = true, FEok = true;
  std::string det;
  for (int m = 1; m <= 3; ++m) {
    auto at = [&](const std::string& s) { return S.alg.index_of(s); };
    std::string p = std::to_string(m), q = std::to_string(-m);
    Scalar cl = S.cocycle[at("L_" + p)][at("L_" + q)], cg = S.cocycle[at("G_" + p)][at("G_" + q)];
    Lok &= cl == stringy_cocycle_L(al, m);
    Gok &= cg == stringy_cocycle_G(m);
    FEok &= S.cocycle[at("F_" + p)][at("E_" + q)] == Q.from_int(m);
    det += "m=" + p + ": c(L)=" + cl.str() + " c(G)=" + cg.str() + "; ";
  }
  add(r, "svect_alpha^L: basis satisfies alpha f = -t Div D, one cocycle class", "stringy basis",
      S.membership && S.cocycle_space == 3 && interior_cocycle_check(S, S.cocycle).ok,
      "cocycle solution space " + std::to_string(S.cocycle_space));
  add(r, "svect_alpha^L cocycle: c(L_m,L_-m) = m(m^2-(alpha+1)^2)/2 for m <= 3", "stringy cocycle", Lok, det);
  add(r, "svect_alpha^L cocycle: c(G_m,G_-m) = m for m <= 3", "stringy cocycle", Gok, det);
  add(r, "svect_alpha^L cocycle: c(F_m,E_-m) = m for m <= 3", "stringy cocycle", FEok);
  auto S3 = svect_alpha_build(Q, al, 3);
  auto hat = central_extension(S3, S3.cocycle, 0, "c", 0);
  auto g = graded_nis_search(hat);
  add(r, "central extension of svect_alpha^L: no NIS compatible with the principal grading", "no graded NIS",
      !g.nis.form, g.certificate);
}

// ---------- 11 ----------
void suite_vas(SuiteResult& r, SuiteContext& ctx) {
  Field F = Field::GF(3);
  VParams P = vp(F, {1, 1, 1, 1});
  auto v = build_vectorial("vas", P);
  long n = ctx.quick ? 1000 : 10000;
  auto jac = check_jacobi(v.alg, false, n, ctx.seed);
  add(r, "vas(4;1|4): dim 648, sampled Jacobi", "vas bracket", v.alg.dim() == 648 && jac.ok(),
      std::to_string(jac.checked) + " random triples");
  auto nf = nis_formula(v);
  add(r, "vas: odd pairing delta_ij int f g nondegenerate and invariant", "vas NIS",
      nf.form && nf.form->parity == 1 && nf.nondegenerate && nf.invariant);
  if (nf.form) ctx.record("vas(4;1|4)", v.alg, *nf.form);
}

// ---------- 12 ----------
void suite_graded(SuiteResult& r, SuiteContext& ctx) {
  if (ctx.graded.empty()) {
    SuiteContext sub = ctx;
    for (int i = 1; i <= 11; ++i) run_suite(std::to_string(i), sub);
    ctx.graded = sub.graded;
  }
  for (auto& g : ctx.graded) {
    std::string det = "d=" + std::to_string(g.report.d) + " h=" + std::to_string(g.report.h);
    if (!g.report.violations.empty()) det += "; " + g.report.violations[0];
    add(r, g.name + ": B(g_i,g_j) = 0 unless i+j = h-d, dim g_i = dim g_{h-d-i}", "graded pairing", g.report.ok, det);
  }
}

// ---------- dimensions ----------
void suite_dimensions(SuiteResult& r, SuiteContext&) {
  Field F = Field::GF(3);
  auto P = vp(F, {1, 1, 1});
  int pN = 27, m = 3;
  P.density = DensityKind::Exp;
  int e = build_vectorial("svect_h", P).alg.dim();
  add(r, "svect_exp(3;111): (m-1) p^|N|", "svect dimensions", e == (m - 1) * pN, std::to_string(e));
  P.density = DensityKind::OnePlusUbar;
  P.derived = 1;
  int u = build_vectorial("svect_h", P).alg.dim();
  add(r, "svect_{1+u}^(1)(3;111): (m-1)(p^|N|-1)", "svect dimensions", u == (m - 1) * (pN - 1), std::to_string(u));
  int s1 = build_vectorial("svect1", vp(F, {1, 1, 1})).alg.dim();
  add(r, "svect^(1)(3;111): (m-1)(p^|N|-1)", "svect dimensions", s1 == (m - 1) * (pN - 1), std::to_string(s1));
  VParams H = vp(Field::GF(5), {1, 1});
  int h = derived_vectorial(build_vectorial("h_omega", H), 2).alg.dim();
  add(r, "h_omega0^(2)(2;11) p=5: p^|N| - 2", "Hamiltonian dimensions", h == 25 - 2, std::to_string(h));
  VParams W = vp(F, {1, 1, 1, 1});
  W.k = 2;
  W.omega.kind = SymplecticForm::Omega2;
  W.omega.eps = F.one();
  auto w = build_vectorial("h_omega", W);
  int w1 = derived_vectorial(w, 1).alg.dim();
  add(r, "h_omega2(4;1111) p=3: p^|N| and p^|N| - 1", "Hamiltonian dimensions", w.alg.dim() == 81 && w1 == 80,
      std::to_string(w.alg.dim()) + " -> " + std::to_string(w1));
}

}  // namespace

SuiteResult run_suite(const std::string& name, SuiteContext& ctx) {
  SuiteResult r;
  int num = 0;
  for (auto& s : suite_list())
    if (s.name == name || std::to_string(s.number) == name) num = s.number;
  if (num == 0 && name != "dimensions") throw std::invalid_argument("unknown suite '" + name + "'");
  r.number = num;
  r.name = num ? suite_list()[num - 1].name : name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    switch (num) {
      case 0: suite_dimensions(r, ctx); break;
      case 1: suite_recipe(r, ctx); break;
      case 2: suite_l22(r, ctx); break;
      case 3: suite_wk(r, ctx); break;
      case 4: suite_vect(r, ctx); break;
      case 5: suite_conjecture(r, ctx); break;
      case 6: suite_hamiltonian(r, ctx); break;
      case 7: suite_contact(r, ctx); break;
      case 8: suite_queer(r, ctx); break;
      case 9: suite_dext(r, ctx); break;
      case 10: suite_loops(r, ctx); break;
      case 11: suite_vas(r, ctx); break;
      case 12: suite_graded(r, ctx); break;
    }
  } catch (const std::exception& e) {
    add(r, "suite raised an exception", "", false, e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

nlohmann::json suite_json(const SuiteResult& r) {
  nlohmann::json j;
  j["suite"] = r.name;
  j["number"] = r.number;
  j["pass"] = r.pass();
  j["seconds"] = r.seconds;
  nlohmann::json cs = nlohmann::json::array();
  for (auto& c : r.checks) cs.push_back({{"check", c.name}, {"anchor", c.anchor}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = cs;
  return j;
}

}  // namespace nisforge
