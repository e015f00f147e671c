#include "doctest.h"
#include "nisforge/matrix_alg.hpp"

using namespace nisforge;

static SuperAlgebra abelian(const Field& F, int n) {
  std::vector<BasisElt> b;
  for (int i = 0; i < n; ++i) b.push_back({"a" + std::to_string(i), 0, {}});
  return SuperAlgebra(F, b);
}

TEST_CASE("abelian: every symmetric form is invariant") {
  Field Q = Field::Q();
  for (int n = 1; n <= 4; ++n) CHECK(invariant_forms(abelian(Q, n), 0).dim() == n * (n + 1) / 2);
}

TEST_CASE("Heisenberg: three forms, z in every radical") {
  Field Q = Field::Q();
  SuperAlgebra g(Q, {{"x", 0, {}}, {"y", 0, {}}, {"z", 0, {}}});
  g.set_bracket(0, 1, {{2, Q.one()}});
  auto S = invariant_forms(g, 0);
  CHECK(S.dim() == 3);
  for (auto& B : S.basis) {
    CHECK(check_invariance(g, B).ok);
    CHECK(subspace_contains(Q, form_radical(g, B), sv_unit(Q, 2)));
  }
  auto r = find_nis(Q, S);
  CHECK_FALSE(r.form);
  CHECK(r.certified_none);
}

TEST_CASE("sl(2): one form, nondegenerate") {
  for (Field F : {Field::Q(), Field::GF(5), Field::GF(3, 2)}) {
    auto g = make_matrix_algebra("sl", {2, 0}, F).alg;
    auto S = invariant_forms(g, 0);
    CHECK(S.dim() == 1);
    auto r = find_nis(F, S);
    REQUIRE(r.form);
    CHECK_FALSE(r.probabilistic);
    CHECK(check_invariance(g, *r.form).ok);
  }
}

TEST_CASE("gl(2) over GF(2): trace form has zero radical") {
  auto M = make_matrix_algebra("gl", {2, 0}, Field::GF(2));
  auto B = trace_form(M);
  CHECK(form_radical(M.alg, B).dim() == 0);
}

TEST_CASE("sl(2|2) supertrace form: radical is the identity, descends to psl") {
  Field Q = Field::Q();
  auto M = make_matrix_algebra("sl", {2, 2}, Q);
  auto B = trace_form(M);
  Subspace R = form_radical(M.alg, B);
  REQUIRE(R.dim() == 1);
  auto q = quotient(M.alg, R);
  auto Bq = descend(q, B);
  CHECK(is_nondegenerate(Q, Bq));
  CHECK(check_invariance(q.alg, Bq).ok);
}

TEST_CASE("odd forms on q-type") {
  Field Q = Field::Q();
  auto psq = make_matrix_algebra("psq", {3}, Q).alg;
  auto S = invariant_forms(psq, 1);
  CHECK(S.dim() >= 1);
  auto r = find_nis(Q, S);
  CHECK(r.form);
  CHECK(invariant_forms(psq, 0).dim() == 0);
}

TEST_CASE("normalised solve") {
  Field Q = Field::Q();
  auto g = make_matrix_algebra("sl", {2, 0}, Q).alg;
  int e = g.index_of("E12"), f = g.index_of("E21");
  auto B = invariant_form_with(g, 0, {{e, f, Q.one()}});
  REQUIRE(B);
  CHECK(B->gram[e][f] == Q.one());
  CHECK_FALSE(invariant_form_with(g, 0, {{e, e, Q.one()}}));
}

TEST_CASE("graded pairing on sl(2) and a violation") {
  Field Q = Field::Q();
  auto M = make_matrix_algebra("sl", {2, 0}, Q);
  auto B = trace_form(M);
  auto rep = graded_pairing_check(M.alg, B);
  CHECK(rep.ok);
  // degrees 0 and 2 break the dimension symmetry
  SuperAlgebra g = M.alg;
  std::vector<BasisElt> b = g.basis();
  SuperAlgebra h(Q, {{"a", 0, 0}, {"b", 0, 0}, {"c", 0, 2}});
  BilinearForm D;
  D.gram = mat_identity(Q, 3);
  CHECK_FALSE(graded_pairing_check(h, D).ok);
}

TEST_CASE("gram export") {
  Field Q = Field::Q();
  auto M = make_matrix_algebra("sl", {2, 0}, Q);
  auto B = trace_form(M);
  auto j = gram_json(M.alg, B);
  CHECK(j.contains("gram"));
  CHECK(gram_text(M.alg, B).find("E12") != std::string::npos);
}
