#include "doctest.h"
#include "nisforge/cartan.hpp"

using namespace nisforge;

static void check_recipe(const CartanResult& r) {
  REQUIRE(r.recipe);
  CHECK(check_invariance(r.alg, *r.recipe).ok);
  CHECK(is_supersymmetric(r.alg, *r.recipe));
}

TEST_CASE("A2 over Q") {
  Field Q = Field::Q();
  auto s = catalog("A2", Q);
  REQUIRE(s.eps);
  auto r = build_contragredient(s);
  CHECK(r.alg.dim() == 8);
  CHECK_FALSE(r.truncated);
  CHECK(check_jacobi(r.alg, true).ok());
  check_recipe(r);
  CHECK(is_nondegenerate(Q, *r.recipe));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(r.recipe->gram[i][j] == s.A[i][j]);
  CHECK(invariant_forms(r.alg, 0).dim() == 1);
  auto simple = quotient_to_simple(r.alg);
  CHECK(simple.alg.dim() == 8);
  CHECK(simple.simple);
}

TEST_CASE("classical series dimensions") {
  Field Q = Field::Q();
  CHECK(build_contragredient(catalog("A3", Q)).alg.dim() == 15);
  CHECK(build_contragredient(catalog("B2", Q)).alg.dim() == 10);
  CHECK(build_contragredient(catalog("B3", Q)).alg.dim() == 21);
  CHECK(build_contragredient(catalog("C3", Q)).alg.dim() == 21);
  CHECK(build_contragredient(catalog("D4", Q)).alg.dim() == 28);
}

TEST_CASE("br(2;-1) at p=3 is o(5)") {
  Field F = Field::GF(3);
  auto r = build_contragredient(catalog("br2", F, {{"eps", -F.one()}}));
  CHECK(r.alg.dim() == 10);
  check_recipe(r);
  CHECK(is_nondegenerate(F, *r.recipe));
  CHECK(check_jacobi(r.alg, true).ok());
}

TEST_CASE("root spaces are orthogonal unless opposite") {
  Field F = Field::GF(3);
  auto r = build_contragredient(catalog("br2", F, {{"eps", F.one()}}));
  check_recipe(r);
  for (int a = 0; a < r.alg.dim(); ++a)
    for (int b = 0; b < r.alg.dim(); ++b) {
      bool opposite = true;
      for (size_t m = 0; m < r.chev.roots[a].size(); ++m) opposite &= r.chev.roots[a][m] + r.chev.roots[b][m] == 0;
      if (!opposite) CHECK(r.recipe->gram[a][b].is_zero());
    }
}

TEST_CASE("wk(4;alpha) and wk(3;alpha) over GF(8)") {
  Field F = Field::GF(2, 3);
  Scalar a = F.generator();
  auto r4 = build_contragredient(catalog("wk4", F, {{"alpha", a}}));
  CHECK(r4.alg.dim() == 34);
  CHECK(check_jacobi(r4.alg, true).ok());
  check_recipe(r4);
  CHECK(is_nondegenerate(F, *r4.recipe));
  auto r3 = build_contragredient(catalog("wk3", F, {{"alpha", a}}));
  check_recipe(r3);
  CHECK(check_jacobi(r3.alg, true).ok());
  Subspace rad = form_radical(r3.alg, *r3.recipe);
  REQUIRE(rad.dim() == 1);
  SVec c{{0, F.one()}, {2, a}};
  CHECK(subspace_contains(F, rad, c));
  CHECK_THROWS_AS(catalog("wk3", F, {{"alpha", F.one()}}), std::invalid_argument);
}

TEST_CASE("non-symmetrizable matrices build without a recipe form") {
  Field Q = Field::Q();
  auto s = catalog("svect_alpha_L", Q, {{"alpha", Q.from_frac(1, 2)}});
  CHECK_FALSE(s.eps);
  s.degree_cap = 6;
  auto r = build_contragredient(s);
  CHECK(r.truncated);
  CHECK_FALSE(r.recipe);
  CHECK(r.alg.dim_odd() > 0);
}

TEST_CASE("ag(2) at p=0: matrices 1 and 4 give the same dimension") {
  Field Q = Field::Q();
  auto r1 = build_contragredient(catalog("ag2", Q));
  auto r4 = build_contragredient(catalog("ag2_4", Q));
  CHECK(r1.alg.dim_even() == 17);
  CHECK(r1.alg.dim_odd() == 14);
  CHECK(r4.alg.dim() == r1.alg.dim());
  CHECK(check_jacobi(r1.alg, false, 3000, 2).ok());
  if (r1.recipe) CHECK(check_invariance(r1.alg, *r1.recipe).ok);
}

TEST_CASE("corank-one matrix: derived modulo center") {
  Field Q = Field::Q();
  CartanSpec s;
  s.F = Q;
  s.A = {{Q.from_int(2), Q.from_int(-2)}, {Q.from_int(-2), Q.from_int(2)}};
  s.parities = {0, 0};
  s.degree_cap = 5;
  REQUIRE(symmetrize(s));
  auto r = build_contragredient(s);
  CHECK(r.truncated);  // affine: infinite
}

TEST_CASE("permuted generators give equal dimensions") {
  Field F = Field::GF(3);
  auto s = catalog("br2", F, {{"eps", F.one()}});
  CartanSpec t = s;
  t.A = {{s.A[1][1], s.A[1][0]}, {s.A[0][1], s.A[0][0]}};
  symmetrize(t);
  auto a = build_contragredient(s), b = build_contragredient(t);
  CHECK(a.alg.dim() == b.alg.dim());
  CHECK(invariant_forms(a.alg, 0).dim() == invariant_forms(b.alg, 0).dim());
}
