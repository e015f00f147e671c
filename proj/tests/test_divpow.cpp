#include <random>

#include "doctest.h"
#include "nisforge/divpow.hpp"

using namespace nisforge;

static Poly random_poly(const Ring& R, std::mt19937_64& rng, int terms) {
  auto all = R->monomials();
  std::vector<uint64_t> mons;
  // in truncated char-0 rings stay low so products never overflow
  for (auto k : all) {
    bool ok = true;
    for (int i = 0; i < R->m; ++i) ok &= R->F.characteristic() || R->exp(k, i) <= 2;
    if (ok) mons.push_back(k);
  }
  Poly f(R);
  for (int t = 0; t < terms; ++t) {
    uint64_t k = mons[rng() % mons.size()];
    f.add_term(k, R->F.random(rng));
  }
  return f;
}

static Poly homogeneous_part(const Poly& f, int par) {
  Poly r(f.ring());
  for (auto& [k, c] : f.terms())
    if ((std::popcount(f.ring()->mask(k)) & 1) == par) r.add_term(k, c);
  return r;
}

TEST_CASE("divided power products") {
  Field F = Field::GF(3);
  auto R = PolyRing::divided(F, {1}, 2);
  Poly u = Poly::mono(R, {1});
  CHECK(u * u == Poly::mono(R, {2}, {}, F.from_int(2)));
  CHECK((Poly::mono(R, {2}) * u).is_zero());
  Poly x1 = Poly::var(R, 1), x2 = Poly::var(R, 2);
  CHECK((x1 * x2 * x1).is_zero());
  CHECK(x1 * x2 == -(x2 * x1));
  CHECK((x1 * x2).str() == "xi1 xi2");
  CHECK(Poly::mono(R, {2}, {0}).str() == "u1^(2) xi1");
}

TEST_CASE("distinguished derivatives") {
  Field F = Field::GF(3);
  auto R = PolyRing::divided(F, {2}, 2);
  CHECK(Poly::mono(R, {3}).derive(0) == Poly::mono(R, {2}));
  Poly x1 = Poly::var(R, 1), x2 = Poly::var(R, 2);
  CHECK((x1 * x2).derive(1) == x2);
  CHECK((x1 * x2).derive(2) == -x1);
  CHECK(Poly::constant(R, F.one()).derive(0).is_zero());
}

TEST_CASE("integral") {
  Field F = Field::GF(3);
  auto R = PolyRing::divided(F, {1}, 0);
  CHECK(Poly::constant(R, F.one()).integral().is_zero());
  CHECK(Poly::mono(R, {2}).integral().is_one());
  auto L = PolyRing::polynomial(Field::Q(), 0, 0, 2);
  CHECK((Poly::var(L, 0) * Poly::var(L, 1)).integral().is_one());
}

TEST_CASE("Leibniz, commuting derivatives, integration by parts") {
  std::mt19937_64 rng(5);
  for (auto R : {PolyRing::divided(Field::GF(3), {1, 2}, 2), PolyRing::divided(Field::GF(5), {1}, 3),
                 PolyRing::polynomial(Field::Q(), 2, 8, 2)}) {
    for (int trial = 0; trial < 20; ++trial) {
      Poly f = homogeneous_part(random_poly(R, rng, 6), trial & 1);
      Poly g = random_poly(R, rng, 6);
      Poly h = random_poly(R, rng, 4);
      CHECK((f * g) * h == f * (g * h));
      for (int v = 0; v < R->nvars(); ++v) {
        int sign = (f.parity() & R->var_parity(v)) ? -1 : 1;
        Poly rhs = f.derive(v) * g + (f * g.derive(v)).scaled(R->F.from_int(sign));
        CHECK((f * g).derive(v) == rhs);
        for (int w = 0; w < R->nvars(); ++w) {
          int s = (R->var_parity(v) & R->var_parity(w)) ? -1 : 1;
          CHECK(g.derive(w).derive(v) == g.derive(v).derive(w).scaled(R->F.from_int(s)));
        }
        if (R->F.characteristic()) CHECK(g.derive(v).integral().is_zero());
      }
      Poly fe = homogeneous_part(f, 0), ge = homogeneous_part(g, 1);
      CHECK(fe * ge == ge * fe);
    }
  }
}

TEST_CASE("volume densities") {
  Field F = Field::GF(3);
  auto R = PolyRing::divided(F, {1, 1, 1}, 0);
  CHECK(volume_density(R, DensityKind::One).h == Poly::constant(R, F.one()));
  auto d = volume_density(R, DensityKind::OnePlusUbar);
  CHECK(d.h == Poly::constant(R, F.one()) + Poly::mono(R, {2, 2, 2}));
  auto R1 = PolyRing::divided(F, {1}, 0);
  auto e = volume_density(R1, DensityKind::Exp, 0);
  CHECK(e.ring->bound[0] == 9);
  CHECK(e.h == Poly::constant(e.ring, F.one()) + Poly::mono(e.ring, {3}) + Poly::mono(e.ring, {6}));
  // d/du exp(u^(3)) = u^(2) exp(u^(3)) up to the truncated top term
  CHECK(e.h.derive(0) == Poly::mono(e.ring, {2}) + Poly::mono(e.ring, {5}));
  CHECK_THROWS(volume_density(PolyRing::polynomial(Field::Q(), 1, 3, 0), DensityKind::Exp, 0));
}

TEST_CASE("Laurent ring") {
  Field Q = Field::Q();
  auto R = PolyRing::laurent_ring(Q, 3, 2);
  Poly t = Poly::mono(R, {1}), ti = Poly::mono(R, {-1});
  CHECK(t * ti == Poly::constant(R, Q.one()));
  CHECK(Poly::mono(R, {-2}).derive(0) == Poly::mono(R, {-3}, {}, Q.from_int(-2)));
  CHECK((Poly::mono(R, {3}) * t).is_zero());
  CHECK(R->monomials().size() == 7 * 4);
}
