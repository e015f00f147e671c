#include "doctest.h"
#include "nisforge/linalg.hpp"

using namespace nisforge;

TEST_CASE("field construction and errors") {
  Field F8 = Field::GF(2, 3);
  CHECK(F8.size() == 8);
  CHECK(F8.modulus() == std::vector<int>{1, 1, 0, 1});
  CHECK(F8.elements().size() == 8);
  CHECK(Field::Q().characteristic() == 0);
  CHECK_THROWS_AS(Field::GF(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(Field::GF(2, 2, {1, 0, 1}), std::invalid_argument);  // x^2+1 = (x+1)^2
  CHECK(Field::GF(3) == Field::GF(3));
}

TEST_CASE("table moduli are irreducible") {
  for (int p : {2, 3, 5, 7})
    for (int k = 1; k <= (p == 2 ? 8 : 4); ++k) CHECK(poly_irreducible(default_modulus(p, k), p));
}

TEST_CASE("GF(8) arithmetic") {
  Field F = Field::GF(2, 3);
  Scalar a = F.generator();
  CHECK((a * a * a) == a + F.one());  // x^3 = x + 1
  CHECK(a.pow(7) == F.one());
  CHECK((a * a.inv()).is_one());
  CHECK(F.parse("x^2+x+1") == a * a + a + F.one());
  CHECK(F.parse(a.pow(5).str()) == a.pow(5));
}

TEST_CASE("rationals") {
  Field Q = Field::Q();
  CHECK((Q.from_frac(1, 2) + Q.from_frac(1, 3)) == Q.from_frac(5, 6));
  CHECK(Q.parse("-3/6").str() == "-1/2");
  CHECK_THROWS(Q.zero().inv());
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(11);
  for (Field F : {Field::Q(), Field::GF(3), Field::GF(2, 3), Field::GF(3, 2), Field::GF(5, 3), Field::GF(2, 8)}) {
    for (int t = 0; t < 200; ++t) {
      Scalar a = F.random(rng), b = F.random(rng), c = F.random(rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a - a == F.zero());
      if (!a.is_zero()) CHECK((a * a.inv()).is_one());
    }
  }
}

TEST_CASE("solve_linear examples") {
  Field Q = Field::Q();
  auto q = [&](long v) { return Q.from_int(v); };
  {
    Mat I = mat_identity(Q, 2);
    auto s = solve_linear(Q, I, {q(1), q(0)});
    CHECK(s.consistent);
    CHECK(s.particular == std::vector<Scalar>{q(1), q(0)});
    CHECK(s.kernel.empty());
  }
  {
    auto s = solve_linear(Q, mat_zero(Q, 2, 2), {q(0), q(0)});
    CHECK(s.kernel.size() == 2);
  }
  {
    Mat A = {{q(1), q(1)}, {q(2), q(2)}};
    auto s = solve_linear(Q, A, {q(1), q(2)});
    CHECK(s.consistent);
    CHECK(s.particular == std::vector<Scalar>{q(1), q(0)});
    REQUIRE(s.kernel.size() == 1);
    CHECK(s.kernel[0] == std::vector<Scalar>{q(-1), q(1)});
  }
  {
    Mat A = {{q(1), q(1)}, {q(2), q(2)}};
    auto s = solve_linear(Q, A, {q(1), q(3)});
    CHECK_FALSE(s.consistent);
  }
}

TEST_CASE("solve_linear property: A x = b, rank + nullity = columns") {
  std::mt19937_64 rng(5);
  for (Field F : {Field::Q(), Field::GF(3), Field::GF(2, 2)}) {
    for (int t = 0; t < 20; ++t) {
      int r = 1 + rng() % 5, c = 1 + rng() % 6;
      Mat A = mat_zero(F, r, c);
      for (auto& row : A)
        for (auto& x : row)
          if (rng() % 2) x = F.random(rng);
      std::vector<Scalar> x0(c);
      for (auto& x : x0) x = F.random(rng);
      auto b = mat_vec(A, x0);
      auto s = solve_linear(F, A, b);
      REQUIRE(s.consistent);
      auto Ax = mat_vec(A, s.particular);
      for (int i = 0; i < r; ++i) CHECK(Ax[i] == b[i]);
      for (auto& k : s.kernel)
        for (auto& y : mat_vec(A, k)) CHECK(y.is_zero());
      CHECK(s.rank + (int)s.kernel.size() == c);
      CHECK(s.rank == mat_rank(F, A));
    }
  }
}

TEST_CASE("determinant and inverse") {
  Field F = Field::GF(5);
  Mat A = {{F.from_int(1), F.from_int(2)}, {F.from_int(3), F.from_int(4)}};
  CHECK(mat_det(F, A) == F.from_int(-2));
  auto inv = mat_inverse(F, A);
  REQUIRE(inv);
  CHECK(mat_mul(A, *inv) == mat_identity(F, 2));
}
