#include "doctest.h"

#include <random>

#include "strata/formalgroup.hpp"

using namespace strata;
using namespace strata::formalgroup;
using curves::EllipticCurve;
using fields::FiniteField;

TEST_CASE("multiplicative group: [p](t) = t^p") {
  const FiniteField& F3 = FiniteField::get(3, 1);
  auto G = multiplicative_fgl(F3, 10);
  PSeries s = p_series(G);
  REQUIRE(s.valuation().has_value());
  CHECK(*s.valuation() == 3);
  CHECK(s.c[3] == 1);
  for (u32 k = 4; k <= 10; ++k) CHECK(s.c[k] == 0);  // (1+t)^3 - 1 = t^3 exactly
  CHECK(height_of(s) == Height::of(1));

  const FiniteField& F5 = FiniteField::get(5, 1);
  auto G5 = multiplicative_fgl(F5, default_precision(5));
  CHECK(*p_series(G5).valuation() == 5);
  CHECK(height_of(p_series(G5)) == Height::of(1));
}

TEST_CASE("additive group: [p] = 0, height infinity") {
  const FiniteField& F3 = FiniteField::get(3, 1);
  auto G = additive_fgl(F3, 12);
  PSeries s = p_series(G);
  CHECK_FALSE(s.valuation().has_value());
  CHECK(height_of(s) == Height::inf());
}

TEST_CASE("precision preconditions") {
  const FiniteField& F5 = FiniteField::get(5, 1);
  CHECK_THROWS_AS(multiplicative_fgl(F5, 3), std::invalid_argument);
  EllipticCurve E(F5, 1, 1);
  CHECK_THROWS_AS(elliptic_fgl(E, 20), std::invalid_argument);  // < p^2 + 1
}

TEST_CASE("elliptic formal group over F_3: supersingular curve has height 2") {
  const FiniteField& F3 = FiniteField::get(3, 1);
  EllipticCurve E(F3, 1, 0);  // y^2 = x^3 + x, a_3 = 0 from the point count
  CHECK(curves::trace_of_frobenius(E) == 0);
  auto G = elliptic_fgl(E, default_precision(3));
  PSeries s = p_series(G);
  REQUIRE(s.valuation().has_value());
  CHECK(*s.valuation() == 9);  // 3^2
  CHECK(height_of(s) == Height::of(2));
  CHECK(elliptic_height(E) == Height::of(2));

  EllipticCurve E2(F3, 1, 1);  // a_3 = 0 as well (all short forms over F_3 are supersingular)
  CHECK(curves::trace_of_frobenius(E2) % 3 == 0);
  CHECK(elliptic_height(E2) == Height::of(2));
}

TEST_CASE("elliptic formal group heights match the trace oracle over F_5") {
  const FiniteField& F5 = FiniteField::get(5, 1);
  u32 checked = 0;
  for (u32 a = 0; a < 5; ++a)
    for (u32 b = 0; b < 5; ++b) {
      u32 disc = F5.add(F5.mul(F5.from_int(4), F5.pow(a, 3)), F5.mul(F5.from_int(27), F5.mul(b, b)));
      if (disc == 0) continue;
      EllipticCurve E(F5, a, b);
      long long ap = curves::trace_of_frobenius(E);
      Height h = elliptic_height(E);
      CHECK((h == Height::of(2)) == (ap % 5 == 0));
      CHECK((h == Height::of(1)) == (ap % 5 != 0));
      ++checked;
    }
  CHECK(checked == 20);
}

TEST_CASE("formal inverse exists") {
  const FiniteField& F3 = FiniteField::get(3, 1);
  auto Gm = multiplicative_fgl(F3, 10);
  Series1 iota = formal_inverse(Gm);
  // for Ghat_m the inverse is 1/(1+t) - 1 = -t + t^2 - t^3 + ...
  CHECK(iota.c[1] == 2);
  CHECK(iota.c[2] == 1);
  CHECK(iota.c[3] == 2);
  EllipticCurve E(F3, 1, 0);
  auto Ge = elliptic_fgl(E, default_precision(3));
  CHECK_NOTHROW(formal_inverse(Ge));  // verifies F(t, iota) = 0 internally
}

TEST_CASE("[m]-series homomorphism: [m+n] = F([m],[n])") {
  const FiniteField& F3 = FiniteField::get(3, 1);
  EllipticCurve E(F3, 1, 0);
  auto G = elliptic_fgl(E, default_precision(3));
  for (u32 m = 0; m <= 3; ++m)
    for (u32 n = 1; n + m <= 4; ++n) {
      Series1 lhs = m_series(G, m + n);
      Series1 rhs = substitute(G, m_series(G, m), m_series(G, n));
      CHECK(lhs == rhs);
    }
  auto Gm = multiplicative_fgl(F3, 12);
  for (u32 m = 1; m <= 3; ++m) {
    Series1 lhs = m_series(Gm, m + 1);
    Series1 rhs = substitute(Gm, m_series(Gm, m), m_series(Gm, 1));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("height_of rejects a non-p-power valuation") {
  const FiniteField& F3 = FiniteField::get(3, 1);
  PSeries s;
  s.F = &F3;
  s.N = 10;
  s.c.assign(11, 0);
  s.c[6] = 1;  // 6 is not a power of 3
  CHECK_THROWS_AS(height_of(s), std::domain_error);
}
