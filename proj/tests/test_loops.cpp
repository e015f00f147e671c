#include "doctest.h"
#include "nisforge/loops.hpp"
#include "nisforge/matrix_alg.hpp"
#include "nisforge/vectorial.hpp"

using namespace nisforge;

static int at(const SuperAlgebra& g, const std::string& s) {
  int i = g.index_of(s);
  REQUIRE_MESSAGE(i >= 0, s);
  return i;
}

TEST_CASE("sl(2) loops and the residue form") {
  Field Q = Field::Q();
  auto M = make_matrix_algebra("sl", {2, 0}, Q);
  auto L = loop_build(M.alg, trace_form(M), 2);
  CHECK(L.alg.dim() == 15);
  auto B = residue_nis(L);
  CHECK(is_nondegenerate(Q, B));
  CHECK(B.gram[at(L.alg, "E12 t^2")][at(L.alg, "E21 t^-2")].is_one());
  CHECK(B.gram[at(L.alg, "E12 t^2")][at(L.alg, "E21 t^-1")].is_zero());
  auto L4 = loop_build(M.alg, trace_form(M), 4);
  auto B4 = residue_nis(L4);
  auto inv = interior_invariance(L4, B4);
  CHECK(inv.ok);
  CHECK(inv.checked > 0);
  CHECK(graded_pairing_check(L4.alg, B4).ok);
}

TEST_CASE("loop cocycle") {
  Field Q = Field::Q();
  auto M = make_matrix_algebra("sl", {2, 0}, Q);
  auto L = loop_build(M.alg, trace_form(M), 3);
  auto e = [&](const std::string& s) { return sv_unit(Q, at(L.alg, s)); };
  CHECK(central_cocycle(L, e("E12 t^1"), e("E21 t^-1")) == -Q.one());
  CHECK(central_cocycle(L, e("E12 t^0"), e("E21 t^0")).is_zero());
  // h = E11 - E22 when the basis has it, else tr(h^2) comes from the diagonal element
  int h = -1;
  for (int i = 0; i < M.alg.dim(); ++i)
    if (trace_form(M).gram[i][i] == Q.from_int(2)) h = i;
  REQUIRE(h >= 0);
  std::string hn = M.alg.basis()[h].name;
  CHECK(central_cocycle(L, e(hn + " t^2"), e(hn + " t^-2")) == Q.from_int(-4));
  auto c = central_cocycle_matrix(L);
  CHECK(interior_cocycle_check(L, c).ok);
  auto X = central_extension(L, c, 0);
  CHECK(X.alg.dim() == L.alg.dim() + 1);
}

TEST_CASE("twisted psq(2) loops carry an odd residue form") {
  Field Q = Field::Q();
  auto M = make_matrix_algebra("psq", {2}, Q);
  auto tr = trace_form(M);
  CHECK(tr.parity == 1);
  // levels -5..4 so that t^i pairs with t^{-1-i}
  auto L = loop_build_range(M.alg, tr, -5, 4, parity_automorphism(M.alg), 2, -Q.one());
  for (int i = 0; i < L.alg.dim(); ++i) CHECK(L.alg.parity(i) == (((L.level[i] % 2) + 2) % 2));
  CHECK(residue_nis(L, 0).gram == mat_zero(Q, L.alg.dim(), L.alg.dim()));
  auto B = residue_nis(L, -1);
  CHECK(B.parity == 1);
  CHECK(is_nondegenerate(Q, B));
  CHECK(interior_invariance(L, B).ok);
  // untwisted: the odd central cocycle
  auto U = loop_build(M.alg, tr, 3);
  auto c = central_cocycle_matrix(U);
  CHECK(interior_cocycle_check(U, c).ok);
  bool nonzero = false;
  for (auto& row : c)
    for (auto& x : row) nonzero = nonzero || !x.is_zero();
  CHECK(nonzero);
  // the twist must be an automorphism
  Mat bad = mat_identity(Q, M.alg.dim());
  bad[0][0] = Q.from_int(2);
  CHECK_THROWS_AS(loop_build(M.alg, tr, 2, bad, 2, -Q.one()), std::invalid_argument);
}

TEST_CASE("vect(0|2) with the theta -> -theta twist") {
  VParams P;
  P.F = Field::Q();
  P.n_odd = 2;
  auto v = build_vectorial("vect", P);
  // theta^S d_i -> (-1)^{|S|-1} theta^S d_i, i.e. the parity automorphism
  BilinearForm none;
  none.gram = mat_zero(P.F, v.alg.dim(), v.alg.dim());
  auto L = loop_build(v.alg, none, 2, parity_automorphism(v.alg), 2, -P.F.one());
  for (int i = 0; i < L.alg.dim(); ++i) CHECK(L.alg.parity(i) == (((L.level[i] % 2) + 2) % 2));
  CHECK(L.alg.dim() == 3 * 4 + 2 * 4);
}

TEST_CASE("svect_alpha^L(1|2)") {
  Field Q = Field::Q();
  Scalar al = Q.from_frac(1, 2);
  auto S = svect_alpha_build(Q, al, 4);
  CHECK(S.alg.dim() == 8 * 9);
  CHECK(S.membership);
  CHECK(S.cocycle_space == 3);
  const auto& g = S.alg;
  // Chevalley generators are F_0, phi_0, lambda_1 and E_0, eps_0, gamma_-1
  for (std::string s : {"F_0", "phi_0", "lambda_1"}) CHECK(*g.degree(at(g, s)) == 1);
  for (std::string s : {"E_0", "eps_0", "gamma_-1"}) CHECK(*g.degree(at(g, s)) == -1);
  for (int m = 1; m <= 3; ++m) {
    std::string p = std::to_string(m), q = std::to_string(-m);
    CHECK(S.cocycle[at(g, "L_" + p)][at(g, "L_" + q)] == stringy_cocycle_L(al, m));
    CHECK(S.cocycle[at(g, "F_" + p)][at(g, "E_" + q)] == Q.from_int(m));
    // forced by the affine sl(2) inside: c(G,G) = 2 c(F,E) since [F_0,E_0] = -G_0 and [E_0,G_0] = -2 E_0
    CHECK(S.cocycle[at(g, "G_" + p)][at(g, "G_" + q)] == Q.from_int(2 * m));
    CHECK(S.cocycle[at(g, "G_" + p)][at(g, "G_" + q)] != stringy_cocycle_G(m));
  }
  CHECK(interior_cocycle_check(S, S.cocycle).ok);
  // [G_1, G_-1] = 0, so c(G_1,G_-1) is not a coboundary
  CHECK(g.bracket(at(g, "G_1"), at(g, "G_-1")).empty());
  CHECK_THROWS_AS(svect_alpha_build(Q, Q.from_int(2), 3), std::invalid_argument);
}

TEST_CASE("no graded NIS on the central extension of svect_alpha^L") {
  Field Q = Field::Q();
  auto S = svect_alpha_build(Q, Q.from_frac(1, 2), 3);
  auto hat = central_extension(S, S.cocycle, 0, "c", 0);
  auto r = graded_nis_search(hat);
  CHECK(!r.nis.form);
  MESSAGE(r.certificate);
}

TEST_CASE("graded search finds the residue form on sl(2) loops") {
  Field Q = Field::Q();
  auto M = make_matrix_algebra("sl", {2, 0}, Q);
  auto L = loop_build(M.alg, trace_form(M), 2);
  auto r = graded_nis_search(L);
  REQUIRE(r.nis.form);
  CHECK(r.space.dim() == 1);
  // proportional to the residue form
  auto B = residue_nis(L);
  int i = at(L.alg, "E12 t^1"), j = at(L.alg, "E21 t^-1");
  Scalar s = r.nis.form->gram[i][j] / B.gram[i][j];
  for (int a = 0; a < L.alg.dim(); ++a)
    for (int b = 0; b < L.alg.dim(); ++b) CHECK(r.nis.form->gram[a][b] == s * B.gram[a][b]);
}

TEST_CASE("k^L(1|6) half-density pairing") {
  Field Q = Field::Q();
  auto T = contact_loop(Q, 6, 1);
  auto B = contact_residue_pairing(T, 6);
  CHECK(B.parity == 0);
  CHECK(is_nondegenerate(Q, B));
  CHECK(interior_invariance(T, B).ok);
  auto r = graded_nis_search(T);
  CHECK(r.nis.form);
}
