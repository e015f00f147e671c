#include <random>

#include "doctest.h"
#include "nisforge/vectorial.hpp"

using namespace nisforge;

static int find_function(const VectorialAlgebra& v, const Poly& f) {
  for (int i = 0; i < v.alg.dim(); ++i)
    if (v.function_of(sv_unit(v.alg.field(), i)) == f) return i;
  return -1;
}

static Poly random_function(const Ring& R, std::mt19937_64& rng, int terms) {
  auto all = R->monomials();
  Poly f(R);
  for (int t = 0; t < terms; ++t) f.add_term(all[rng() % all.size()], R->F.random(rng));
  return f;
}

TEST_CASE("vect(1;1) at p=3 and its integral form") {
  Field F = Field::GF(3);
  VParams P;
  P.F = F;
  P.N = {1};
  auto v = build_vectorial("vect", P);
  REQUIRE(v.alg.dim() == 3);
  auto nf = nis_formula(v);
  REQUIRE(nf.form);
  CHECK(nf.invariant);
  CHECK(nf.nondegenerate);
  // basis d, u d, u^(2) d
  Mat want = {{F.zero(), F.zero(), F.one()}, {F.zero(), F.from_int(2), F.zero()}, {F.one(), F.zero(), F.zero()}};
  CHECK(nf.form->gram == want);
  CHECK(graded_pairing_check(v.alg, *nf.form).ok);
}

TEST_CASE("divergence of a field") {
  Field F = Field::GF(3);
  auto R = PolyRing::divided(F, {1}, 0);
  VField D = {Poly::mono(R, {2})};
  CHECK(divergence(D) == Poly::var(R, 0));
}

TEST_CASE("closed-form divergences agree with the realized fields") {
  Field F = Field::GF(3);
  {
    auto S = contact_ring(F, 0, {1}, 2);
    Poly t = Poly::var(S.R, S.t());
    CHECK(div_K(S, t).is_zero());
    CHECK(divergence(K_field(S, t)).is_zero());
  }
  auto check_all = [&](const FnRing& S, auto field, auto closed) {
    for (uint64_t key : S.R->monomials()) {
      Poly f = Poly::monomial(S.R, key, F.one());
      CHECK(divergence(field(S, f)) == closed(S, f));
    }
  };
  check_all(contact_ring(F, 1, {1, 1, 1}, 1), K_field, div_K);
  check_all(pericontact_ring(F, 1, {1}), M_field, div_M);
  check_all(buttin_ring(F, 2, {1, 1}), Le_field, div_Le);
  auto B = buttin_ring(F, 1, {1});
  Poly qxi = Poly::var(B.R, B.q(0)) * Poly::var(B.R, B.xi(0));
  Poly d = div_Le(B, qxi);
  CHECK((d == Poly::constant(B.R, F.from_int(2)) || d == Poly::constant(B.R, F.from_int(-2))));
}

TEST_CASE("generating functions realize the brackets") {
  Field F = Field::GF(3);
  std::mt19937_64 rng(11);
  {
    auto S = contact_ring(F, 1, {1, 1, 1}, 1);
    for (int t = 0; t < 20; ++t) {
      Poly f = split_parity(random_function(S.R, rng, 3))[t % 2];
      Poly g = split_parity(random_function(S.R, rng, 3))[(t / 2) % 2];
      CHECK(vf_equal(vf_bracket(K_field(S, f), K_field(S, g)), K_field(S, contact_bracket(S, f, g))));
    }
  }
  {
    auto S = pericontact_ring(F, 1, {1});
    for (int t = 0; t < 20; ++t) {
      Poly f = split_parity(random_function(S.R, rng, 3))[t % 2];
      Poly g = split_parity(random_function(S.R, rng, 3))[(t / 2) % 2];
      CHECK(vf_equal(vf_bracket(M_field(S, f), M_field(S, g)), M_field(S, pericontact_bracket(S, f, g))));
    }
  }
}

TEST_CASE("contact bracket in p, q, t") {
  Field F = Field::GF(3);
  auto S = contact_ring(F, 1, {1, 1, 1}, 0);
  Poly one = Poly::constant(S.R, F.one()), t = Poly::var(S.R, S.t());
  CHECK(contact_bracket_pqt(S, one, t) == Poly::constant(S.R, F.from_int(2)));
}

TEST_CASE("Buttin bracket and its deformation") {
  Field F = Field::GF(5);
  auto S = buttin_ring(F, 2, {1, 1});
  Poly q1 = Poly::var(S.R, S.q(0)), x1 = Poly::var(S.R, S.xi(0)), x2 = Poly::var(S.R, S.xi(1));
  CHECK(buttin_bracket(S, q1, x1) == Poly::constant(S.R, F.one()));
  // lambda = 0 is the Buttin bracket
  std::vector<Poly> hom = {q1, x1, q1 * x2, x1 * x2, q1 * q1 * x1, Poly::var(S.R, S.q(1)) * x1 * x2};
  for (auto& f : hom)
    for (auto& g : hom) CHECK(b_lambda_bracket(S, f, g, F.zero()) == buttin_bracket(S, f, g));
  CHECK(singular_cocycle(S, "b0", x1, x2).is_zero());
  // denominator 2 + lambda (deg g - n) vanishes: deg 1 element at n = 2 and lambda = 2
  CHECK_THROWS_WITH_AS(b_lambda_bracket(S, q1 * x2, x1, F.from_int(2)), doctest::Contains("lambda"),
                       std::invalid_argument);
}

TEST_CASE("svect and its deforms") {
  Field F = Field::GF(3);
  VParams P;
  P.F = F;
  P.N = {1, 1, 1};
  auto s1 = build_vectorial("svect1", P);
  CHECK(s1.alg.dim() == 52);
  auto nf = nis_formula(s1);
  CHECK(nf.invariant);
  CHECK(nf.nondegenerate);
  P.density = DensityKind::Exp;
  CHECK(build_vectorial("svect_h", P).alg.dim() == 54);
  P.density = DensityKind::OnePlusUbar;
  P.derived = 1;
  CHECK(build_vectorial("svect_h", P).alg.dim() == 52);
}

TEST_CASE("Hamiltonian algebras") {
  Field F = Field::GF(5);
  VParams P;
  P.F = F;
  P.k = 1;
  P.N = {1, 1};
  auto h = build_vectorial("h_omega", P);
  auto h2 = derived_vectorial(h, 2);
  CHECK(h2.alg.dim() == 23);
  auto nf = nis_formula(h2);
  CHECK(nf.invariant);
  CHECK(nf.nondegenerate);
  CHECK(hamiltonian_integral_check(h2, 50, 3) == 0);

  Field F3 = Field::GF(3);
  VParams Q;
  Q.F = F3;
  Q.k = 2;
  Q.N = {1, 1, 1, 1};
  Q.omega.kind = SymplecticForm::Omega2;
  Q.omega.eps = F3.one();
  auto w2 = build_vectorial("h_omega", Q);
  CHECK(w2.alg.dim() == 81);
  CHECK(derived_vectorial(w2, 1).alg.dim() == 80);
  CHECK(check_jacobi(w2.alg, false, 2000, 5).ok());

  Q.omega.kind = SymplecticForm::Omega1;
  Q.omega.shape = "Jkr";
  Q.omega.lambda = F3.one();
  CHECK_THROWS_AS(build_vectorial("h_omega", Q), std::invalid_argument);
  Q.omega.shape = "C";
  CHECK_THROWS_AS(build_vectorial("h_omega", Q), std::invalid_argument);  // C_k needs unequal halves
}

TEST_CASE("contact algebras") {
  Field F = Field::GF(3);
  VParams P;
  P.F = F;
  P.n = 0;
  P.n_odd = 3;
  P.N = {1};
  auto k = build_vectorial("k", P);
  CHECK(k.alg.dim() == 24);
  CHECK(contact_condition(0, 3, 3));
  auto nf = nis_formula(k);
  REQUIRE(nf.form);
  CHECK(nf.form->parity == 1);
  CHECK(nf.invariant);
  CHECK(nf.nondegenerate);
  CHECK(!contact_condition(0, 2, 3));
  P.n_odd = 2;
  CHECK(!nis_formula(build_vectorial("k", P)).form);
}

TEST_CASE("Poisson superalgebra po(0|4)") {
  VParams P;
  P.F = Field::Q();
  P.n = 0;
  P.n_odd = 4;
  auto v = build_vectorial("po", P);
  auto nf = nis_formula(v);
  REQUIRE(nf.form);
  CHECK(nf.form->parity == 0);
  CHECK(nf.invariant);
  CHECK(nf.nondegenerate);
  const Ring& R = v.fr.R;
  Poly a = Poly::var(R, v.fr.theta(0)) * Poly::var(R, v.fr.theta(1));
  Poly b = Poly::var(R, v.fr.theta(2)) * Poly::var(R, v.fr.theta(3));
  int i = find_function(v, a), j = find_function(v, b);
  REQUIRE(i >= 0);
  REQUIRE(j >= 0);
  Scalar c = nf.form->gram[i][j];
  CHECK((c.is_one() || (-c).is_one()));
}

TEST_CASE("Buttin-type series build and satisfy Jacobi") {
  Field F = Field::GF(3);
  VParams P;
  P.F = F;
  P.n = 2;
  P.N = {1, 1};
  for (std::string s : {"le", "sle", "sb", "m", "sm"}) {
    auto v = build_vectorial(s, P);
    CHECK_MESSAGE(check_jacobi(v.alg, false, 3000, 2).ok(), s);
  }
  // the half-density pairing on sb is invariant but degenerate
  auto nf = nis_formula(build_vectorial("sb", P));
  CHECK(nf.invariant);
  CHECK(!nf.nondegenerate);
}

TEST_CASE("L(2,2) and br(2;-1)") {
  Field F = Field::GF(3);
  auto r = compare_L22_with_recipe(F);
  CHECK(r.jacobi_br);
  CHECK(r.jacobi_L);
  CHECK(r.identified);
  CHECK(r.form_space_dim == 1);
  CHECK(r.nondegenerate);
  CHECK(r.gram_equal);
  auto t = deform_L22(F, -F.one());
  // cocycle entries: [y3, y4] picks up 2 x1
  SVec d = sv_sub(t.L.bracket(t.L.index_of("y3"), t.L.index_of("y4")),
                  t.br.bracket(t.br.index_of("y3"), t.br.index_of("y4")));
  CHECK(d == sv_scale(F.from_int(2), sv_unit(F, t.L.index_of("x1"))));
}

TEST_CASE("vas(4;1|4) at p=3") {
  Field F = Field::GF(3);
  VParams P;
  P.F = F;
  P.N = {1, 1, 1, 1};
  auto v = build_vectorial("vas", P);
  CHECK(v.alg.dim() == 648);
  CHECK(v.alg.dim_odd() == 324);
  CHECK(check_jacobi(v.alg, false, 2000, 9).ok());
}

TEST_CASE("size cap") {
  VParams P;
  P.F = Field::GF(5);
  P.N = {2, 2};
  P.cap = 100;
  CHECK_THROWS_AS(build_vectorial("vect", P), std::invalid_argument);
}
