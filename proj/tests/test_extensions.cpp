#include "doctest.h"
#include "nisforge/extensions.hpp"
#include "nisforge/vectorial.hpp"

using namespace nisforge;

static SuperAlgebra abelian(const Field& F, int even, int odd) {
  std::vector<BasisElt> b;
  for (int i = 0; i < even; ++i) b.push_back({"a" + std::to_string(i + 1), 0, std::nullopt});
  for (int i = 0; i < odd; ++i) b.push_back({"o" + std::to_string(i + 1), 1, std::nullopt});
  return SuperAlgebra(F, b);
}

TEST_CASE("oscillator algebra") {
  Field Q = Field::Q();
  DExtensionData d;
  d.base = abelian(Q, 2, 0);
  d.form.gram = mat_identity(Q, 2);
  d.D = {{Q.zero(), Q.one()}, {-Q.one(), Q.zero()}};
  CHECK(check_dext_data(d).ok);
  CHECK(cocycle_identity(d));
  auto x = double_extend(d);
  CHECK(x.alg.dim() == 4);
  CHECK(x.jacobi);
  CHECK(x.invariant);
  CHECK(x.nondegenerate);
  CHECK(!x.decomposable);
  // [a1, a2] = B(D a1, a2) c = -c
  CHECK(x.alg.bracket(1, 2) == SVec{{0, -Q.one()}});
  CHECK(x.alg.bracket(3, 1) == SVec{{2, -Q.one()}});
  // the form lies in the solved space
  auto sp = invariant_forms(x.alg, 0);
  CHECK(sp.dim() >= 1);
  auto rec = recognize_double_extension(x.alg, x.form);
  CHECK(rec.status == "double_extension");
  CHECK(rec.h_dim == 2);
  CHECK(rec.sigma_matches);
  CHECK(rec.round_trip);
}

TEST_CASE("gl(1|1) from the odd abelian algebra") {
  Field Q = Field::Q();
  DExtensionData d;
  d.base = abelian(Q, 0, 2);
  d.form.gram = {{Q.zero(), Q.one()}, {-Q.one(), Q.zero()}};
  d.D = {{Q.one(), Q.zero()}, {Q.zero(), -Q.one()}};
  CHECK(check_dext_data(d).ok);
  auto x = double_extend(d);
  CHECK(x.alg.dim_even() == 2);
  CHECK(x.alg.dim_odd() == 2);
  CHECK(x.jacobi);
  CHECK(x.invariant);
  CHECK(x.nondegenerate);
  CHECK(!x.decomposable);
  // compare with the matrix model: same recognition data
  auto M = make_matrix_algebra("gl", {1, 1}, Q);
  auto rec = recognize_double_extension(M.alg, trace_form(M));
  CHECK(rec.status == "double_extension");
  CHECK(rec.h_dim == 2);
  CHECK(rec.round_trip);
  CHECK(rec.data.base.dim_odd() == 2);
}

TEST_CASE("inner derivation gives a decomposable extension") {
  Field Q = Field::Q();
  auto M = make_matrix_algebra("sl", {2, 0}, Q);
  DExtensionData d;
  d.base = M.alg;
  d.form = trace_form(M);
  int h = 0;
  for (int i = 0; i < 3; ++i)
    if (M.alg.bracket(i, i).empty() && !M.alg.bracket(i, (i + 1) % 3).empty()) {
      // pick an element acting diagonally
      bool diag = true;
      for (int j = 0; j < 3; ++j) {
        auto v = M.alg.bracket(i, j);
        if (!(v.empty() || (v.size() == 1 && v[0].first == j))) diag = false;
      }
      if (diag) h = i;
    }
  d.D = mat_zero(Q, 3, 3);
  for (int j = 0; j < 3; ++j)
    for (auto& [i, x] : M.alg.bracket(h, j)) d.D[i][j] = x;
  auto x = double_extend(d);
  CHECK(x.decomposable);
  REQUIRE(x.inner);
  CHECK(*x.inner == SVec{{h, Q.one()}});
  CHECK(x.jacobi);
  CHECK(x.invariant);
}

TEST_CASE("odd derivation") {
  Field Q = Field::Q();
  DExtensionData d;
  d.base = abelian(Q, 1, 1);
  d.form.parity = 1;
  d.form.gram = {{Q.zero(), Q.one()}, {Q.one(), Q.zero()}};
  d.parity_D = 1;
  // o -> 2 a, a -> 0
  d.D = {{Q.zero(), Q.from_int(2)}, {Q.zero(), Q.zero()}};
  auto chk = check_dext_data(d);
  CHECK(chk.ok);
  auto x = double_extend(d);
  CHECK(x.alg.parity(0) == 0);  // c has parity p(B) + p(D) = 0
  CHECK(x.alg.parity(3) == 1);
  CHECK(x.jacobi);
  CHECK(x.invariant);
  CHECK(x.nondegenerate);
}

TEST_CASE("inadmissible data are rejected") {
  Field Q = Field::Q();
  DExtensionData d;
  d.base = abelian(Q, 2, 0);
  d.form.gram = mat_identity(Q, 2);
  d.D = {{Q.one(), Q.zero()}, {Q.zero(), Q.zero()}};
  auto chk = check_dext_data(d);
  CHECK(!chk.ok);
  REQUIRE(chk.witness);
  CHECK(chk.witness->first == 0);
  CHECK_THROWS_WITH_AS(double_extend(d), doctest::Contains("D-invariant"), std::invalid_argument);

  DExtensionData o;
  o.base = abelian(Q, 1, 1);
  o.form.parity = 1;
  o.form.gram = {{Q.zero(), Q.one()}, {Q.one(), Q.zero()}};
  o.parity_D = 1;
  // a <-> o swaps: D^2 = 1
  o.D = {{Q.zero(), Q.one()}, {Q.one(), Q.zero()}};
  CHECK(!check_dext_data(o).ok);
  CHECK_THROWS_AS(double_extend(o), std::invalid_argument);

  auto M = make_matrix_algebra("sl", {2, 0}, Q);
  DExtensionData s;
  s.base = M.alg;
  s.form = trace_form(M);
  s.D = mat_identity(Q, 3);
  CHECK_THROWS_WITH_AS(double_extend(s), doctest::Contains("derivation"), std::invalid_argument);
}

TEST_CASE("recognition on gl(2|2)") {
  Field Q = Field::Q();
  auto M = make_matrix_algebra("gl", {2, 2}, Q);
  auto B = trace_form(M);
  auto r = recognize_double_extension(M.alg, B);
  CHECK(r.status == "double_extension");
  CHECK(r.h_dim == 14);
  CHECK(r.data.base.dim_even() == 6);
  CHECK(r.data.base.dim_odd() == 8);
  CHECK(is_nondegenerate(Q, r.data.form));
  CHECK(check_invariance(r.data.base, r.data.form).ok);
  CHECK(r.sigma_matches);
  CHECK(r.round_trip);
  // c is a multiple of the identity
  int e11 = M.alg.index_of("E11"), e33 = M.alg.index_of("E33");
  Scalar a = Q.zero(), b = Q.zero();
  for (auto& [i, x] : r.c) {
    if (i == e11) a = x;
    if (i == e33) b = x;
  }
  CHECK(!a.is_zero());
  CHECK(a == b);
  CHECK(r.c.size() == 4);
}

TEST_CASE("recognition on po(0|4)") {
  VParams P;
  P.F = Field::Q();
  P.n = 0;
  P.n_odd = 4;
  auto v = build_vectorial("po", P);
  auto nf = nis_formula(v);
  REQUIRE(nf.form);
  auto r = recognize_double_extension(v.alg, *nf.form);
  CHECK(r.status == "double_extension");
  CHECK(r.h_dim == 14);
  CHECK(is_nondegenerate(P.F, r.data.form));
  CHECK(r.round_trip);
}

TEST_CASE("simple algebra is not a double extension") {
  Field Q = Field::Q();
  auto M = make_matrix_algebra("sl", {2, 0}, Q);
  CHECK(recognize_double_extension(M.alg, trace_form(M)).status == "not_applicable");
}

TEST_CASE("queerification of gl(2) at p=2") {
  Field F = Field::GF(2);
  auto M = make_matrix_algebra("gl", {2, 0}, F);
  auto pm = matrix_pmap(M);
  CHECK(check_pmap(M.alg, pm));
  auto q = queerify(M.alg, trace_form(M), pm);
  CHECK(q.alg.dim_even() == 4);
  CHECK(q.alg.dim_odd() == 4);
  CHECK(q.invariant);
  CHECK(q.nondegenerate);
  CHECK(check_jacobi(q.alg, true).ok());
  // E12 pairs with Pi(E21)
  int e12 = q.alg.index_of("E12"), pe21 = q.alg.index_of("Pi(E21)");
  CHECK(q.form.gram[e12][pe21].is_one());
  // q(x, y) = q(Pi x, Pi y) = 0
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(q.form.gram[i][j].is_zero());
      CHECK(q.form.gram[i + 4][j + 4].is_zero());
    }
  // (Pi E11)^2 = E11
  CHECK(q.alg.squaring(q.alg.index_of("Pi(E11)")) == SVec{{q.alg.index_of("E11"), F.one()}});
  CHECK_THROWS_AS(queerify(M.alg, trace_form(M), {}), std::invalid_argument);
  CHECK_THROWS_AS(matrix_pmap(make_matrix_algebra("gl", {2, 0}, Field::GF(3))), std::invalid_argument);
}

TEST_CASE("queerification of an abelian algebra") {
  Field F = Field::GF(2);
  auto g = abelian(F, 3, 0);
  BilinearForm B;
  B.gram = mat_identity(F, 3);
  std::vector<SVec> pm(3);  // zero p-map
  auto q = queerify(g, B, pm);
  CHECK(q.alg.dim() == 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(q.alg.bracket(i, j).empty());
  CHECK(q.invariant);
  CHECK(q.nondegenerate);
  for (int i = 0; i < 3; ++i) CHECK(q.form.gram[i][i + 3].is_one());
}
