#include "doctest.h"
#include "nisforge/matrix_alg.hpp"

using namespace nisforge;

static SuperAlgebra heisenberg(const Field& F) {
  SuperAlgebra g(F, {{"x", 0, {}}, {"y", 0, {}}, {"z", 0, {}}});
  g.set_bracket(0, 1, {{2, F.one()}});
  return g;
}

TEST_CASE("Heisenberg: derived equals center") {
  Field Q = Field::Q();
  auto g = heisenberg(Q);
  Subspace d = derived_subspace(g), z = center(g);
  CHECK(d.dim() == 1);
  CHECK(z.dim() == 1);
  CHECK(subspace_contains(Q, z, sv_unit(Q, 2)));
  CHECK(subspace_contains(Q, d, sv_unit(Q, 2)));
  auto s = is_simple(g);
  CHECK(s.decided);
  CHECK_FALSE(s.simple);
}

TEST_CASE("gl(2): derived is sl(2), center is the identity") {
  Field Q = Field::Q();
  auto gl = make_matrix_algebra("gl", {2, 0}, Q).alg;
  auto d = derived_algebra(gl);
  CHECK(d.alg.dim() == 3);
  Subspace z = center(gl);
  REQUIRE(z.dim() == 1);
  SVec one{{gl.index_of("E11"), Q.one()}, {gl.index_of("E22"), Q.one()}};
  CHECK(subspace_contains(Q, z, one));
  CHECK(is_simple(d.alg).simple);
}

TEST_CASE("quotient sq(2) by the identity gives psq(2)") {
  Field Q = Field::Q();
  auto sq = make_matrix_algebra("sq", {2}, Q).alg;
  Subspace z = center(sq);
  REQUIRE(z.dim() == 1);
  auto q = quotient(sq, z);
  CHECK(q.alg.dim_even() == 3);
  CHECK(q.alg.dim_odd() == 3);
  CHECK(check_jacobi(q.alg, true).ok());
}

TEST_CASE("quotient by a non-ideal throws") {
  Field Q = Field::Q();
  auto sl = make_matrix_algebra("sl", {2, 0}, Q).alg;
  CHECK_THROWS_AS(quotient(sl, span(Q, 3, {sv_unit(Q, sl.index_of("E12"))})), std::invalid_argument);
}

TEST_CASE("broken sl(2) fails Jacobi on (h,e,f)") {
  Field Q = Field::Q();
  SuperAlgebra g(Q, {{"h", 0, {}}, {"e", 0, {}}, {"f", 0, {}}});
  g.set_bracket(0, 1, {{1, Q.one()}});
  g.set_bracket(0, 2, {{2, -Q.from_int(2)}});
  g.set_bracket(1, 2, {{0, Q.one()}});
  auto r = check_jacobi(g, true);
  CHECK_FALSE(r.ok());
  CHECK(!r.violations.empty());
}

TEST_CASE("simplicity of classical examples") {
  Field Q = Field::Q();
  CHECK(is_simple(make_matrix_algebra("sl", {3, 0}, Q).alg).simple);
  CHECK(is_simple(make_matrix_algebra("psl", {2}, Q).alg).simple);
  CHECK(is_simple(make_matrix_algebra("osp", {1, 1}, Q).alg).simple);
  CHECK_FALSE(is_simple(make_matrix_algebra("gl", {1, 1}, Q).alg).simple);
  auto big = make_matrix_algebra("gl", {15, 0}, Field::GF(2)).alg;
  CHECK_FALSE(is_simple(big).decided);
}

TEST_CASE("ideal and subalgebra generation") {
  Field Q = Field::Q();
  auto gl = make_matrix_algebra("gl", {2, 0}, Q).alg;
  CHECK(ideal_generated(gl, {sv_unit(Q, gl.index_of("E12"))}).dim() == 3);
  CHECK(subalgebra_generated(gl, {sv_unit(Q, gl.index_of("E12")), sv_unit(Q, gl.index_of("E21"))}).dim() == 3);
}

TEST_CASE("random Jacobi mode") {
  auto g = make_matrix_algebra("sl", {2, 1}, Field::GF(7)).alg;
  auto r = check_jacobi(g, false, 200, 5);
  CHECK(r.ok());
  CHECK(r.checked == 200);
}
