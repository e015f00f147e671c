#include "doctest.h"
#include "nisforge/matrix_alg.hpp"

using namespace nisforge;

static int idx(const SuperAlgebra& g, const std::string& n) {
  int i = g.index_of(n);
  REQUIRE(i >= 0);
  return i;
}

TEST_CASE("gl(1|1) supercommutator") {
  Field Q = Field::Q();
  auto M = make_matrix_algebra("gl", {1, 1}, Q);
  const auto& g = M.alg;
  CHECK(g.dim_even() == 2);
  CHECK(g.dim_odd() == 2);
  SVec v = g.bracket(idx(g, "E12"), idx(g, "E21"));
  CHECK(v == SVec{{idx(g, "E11"), Q.one()}, {idx(g, "E22"), Q.one()}});
  CHECK(check_jacobi(g, true).ok());
}

TEST_CASE("dimensions of the matrix series") {
  Field Q = Field::Q();
  CHECK(make_matrix_algebra("sl", {2, 0}, Q).alg.dim() == 3);
  CHECK(make_matrix_algebra("sl", {2, 1}, Q).alg.dim() == 8);
  CHECK(make_matrix_algebra("psl", {2}, Q).alg.dim() == 14);
  auto q2 = make_matrix_algebra("q", {2}, Q).alg;
  CHECK(q2.dim_even() == 4);
  CHECK(q2.dim_odd() == 4);
  auto psq2 = make_matrix_algebra("psq", {2}, Q).alg;
  CHECK(psq2.dim_even() == 3);
  CHECK(psq2.dim_odd() == 3);
  auto osp = make_matrix_algebra("osp", {1, 1}, Q).alg;
  CHECK(osp.dim_even() == 3);
  CHECK(osp.dim_odd() == 2);
  auto osp32 = make_matrix_algebra("osp", {3, 1}, Q).alg;
  CHECK(osp32.dim_even() == 6);
  CHECK(osp32.dim_odd() == 6);
  CHECK(make_matrix_algebra("pe", {3}, Q).alg.dim() == 18);
  CHECK(make_matrix_algebra("spe", {3}, Q).alg.dim() == 17);
  CHECK(make_matrix_algebra("as", {}, Q).alg.dim() == 32);
}

TEST_CASE("aut(B) membership of every basis element") {
  Field F = Field::GF(5);
  for (auto [name, P] : std::vector<std::pair<std::string, std::vector<int>>>{{"osp", {2, 1}}, {"pe", {3}}, {"spe", {2}}}) {
    auto M = make_matrix_algebra(name, P, F);
    REQUIRE(M.form_matrix);
    for (int i = 0; i < M.alg.dim(); ++i)
      CHECK(mat_is_zero(aut_defect(M.mats[i], M.alg.parity(i), *M.form_matrix, M.form_parity, M.format)));
    CHECK(check_jacobi(M.alg, true).ok());
  }
}

TEST_CASE("Jacobi across the series over small fields") {
  for (Field F : {Field::Q(), Field::GF(3), Field::GF(2, 2)}) {
    CHECK(check_jacobi(make_matrix_algebra("sl", {2, 2}, F).alg, true).ok());
    CHECK(check_jacobi(make_matrix_algebra("psq", {3}, F).alg, true).ok());
    if (F.characteristic() != 2)
      CHECK(check_jacobi(make_matrix_algebra("spe_ab", {2}, F, F.one(), F.one()).alg, true).ok());
  }
  CHECK_THROWS(make_matrix_algebra("spe_ab", {2}, Field::GF(2), Field::GF(2).one(), Field::GF(2).one()));
}

TEST_CASE("as: Jacobi and the T_lambda representation") {
  Field Q = Field::Q();
  auto as = make_matrix_algebra("as", {}, Q);
  CHECK(check_jacobi(as.alg, false, 4000, 11).ok());
  for (int l : {0, 1, -3}) CHECK_FALSE(check_representation(as.alg, t_lambda(as, Q.from_int(l))));
  Field F = Field::GF(5);
  auto as5 = make_matrix_algebra("as", {}, F);
  CHECK_FALSE(check_representation(as5.alg, t_lambda(as5, F.from_int(2))));
}

TEST_CASE("hodge dual on antisymmetric 4x4") {
  Field Q = Field::Q();
  Mat c = mat_zero(Q, 4, 4);
  c[0][1] = Q.one();
  c[1][0] = -Q.one();
  Mat d = hodge4(Q, c);
  CHECK(d[2][3] == Q.one());
  CHECK(d[3][2] == -Q.one());
  CHECK(mat_is_zero(mat_sub(hodge4(Q, d), c)));
}

TEST_CASE("trace forms") {
  Field Q = Field::Q();
  auto gl = make_matrix_algebra("gl", {2, 2}, Q);
  BilinearForm B = trace_form(gl);
  CHECK(check_invariance(gl.alg, B).ok);
  CHECK(is_supersymmetric(gl.alg, B));
  auto psq3 = make_matrix_algebra("psq", {3}, Q);
  BilinearForm O = trace_form(psq3);
  CHECK(O.parity == 1);
  CHECK(check_invariance(psq3.alg, O).ok);
  CHECK(is_nondegenerate(Q, O));
  auto psq3p3 = make_matrix_algebra("psq", {3}, Field::GF(3));
  CHECK(psq3p3.note.find("not simple") != std::string::npos);
}
