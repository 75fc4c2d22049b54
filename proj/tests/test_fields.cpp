#include "doctest.h"

#include <random>

#include "strata/fields.hpp"

using namespace strata::fields;

TEST_CASE("prime field arithmetic") {
  const FiniteField& F3 = FiniteField::get(3, 1);
  FieldElement two = FieldElement::from_int(F3, 2);
  CHECK((two + two).code() == 1);  // 2 + 2 = 1 in F_3
  CHECK((two * two).code() == 1);
  CHECK((two - two).code() == 0);
  CHECK((two / two).code() == 1);
}

TEST_CASE("F_9 with modulus t^2 + 1") {
  const FiniteField& F9 = FiniteField::get(3, 2);
  CHECK(F9.spec().modulus == std::vector<u32>{1, 0, 1});  // canonical modulus
  FieldElement t(F9, 3);                                  // code of t
  CHECK(t.coeffs() == std::vector<u32>{0, 1});
  CHECK((t * t).code() == 2);  // t^2 = -1 = 2
  FieldElement tp1(F9, F9.add(3, 1));
  CHECK((tp1 / tp1).code() == 1);
}

TEST_CASE("field errors") {
  const FiniteField& F3 = FiniteField::get(3, 1);
  const FiniteField& F9 = FiniteField::get(3, 2);
  CHECK_THROWS_AS(FieldElement(F3, 1) / FieldElement(F3, 0), std::domain_error);
  CHECK_THROWS_AS(FieldElement(F3, 1) + FieldElement(F9, 1), std::invalid_argument);
  CHECK_THROWS_AS(FiniteField::get(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(FiniteField::get(4, 1), std::invalid_argument);
  // t^2 + 2t + 1 = (t + 1)^2 is reducible over F_3
  CHECK_THROWS_AS(FiniteField::get(3, 2, {1, 2, 1}), std::invalid_argument);
}

TEST_CASE("element construction validates coefficients") {
  const FiniteField& F9 = FiniteField::get(3, 2);
  CHECK_THROWS_AS(FieldElement::from_coeffs(F9, {1}), std::invalid_argument);
  CHECK_THROWS_AS(FieldElement::from_coeffs(F9, {1, 3}), std::invalid_argument);
  CHECK(FieldElement::from_coeffs(F9, {2, 1}).code() == 5);
  CHECK(FieldElement::from_coeffs(F9, {2, 1}).coeffs() == std::vector<u32>{2, 1});
}

TEST_CASE("frobenius") {
  const FiniteField& F9 = FiniteField::get(3, 2);
  u32 t = 3;
  // t^3 = t^2 * t = 2t with modulus t^2 + 1
  CHECK(F9.frobenius(t, 1) == F9.mul(2, t));
  CHECK(F9.frobenius(t, 1) == F9.pow(t, 3));  // repeated-squaring oracle
  CHECK(F9.frobenius(t, 0) == t);
  const FiniteField& F3 = FiniteField::get(3, 1);
  CHECK(F3.frobenius(2, 5) == 2);  // prime field fixed by Frobenius

  SUBCASE("order d, inverse, ring homomorphism") {
    std::mt19937_64 rng(7);
    for (u32 d : {1u, 2u, 3u}) {
      const FiniteField& F = FiniteField::get(5, d);
      for (int rep = 0; rep < 50; ++rep) {
        u32 a = static_cast<u32>(rng() % F.q()), b = static_cast<u32>(rng() % F.q());
        CHECK(F.frobenius(a, d) == a);
        CHECK(F.frobenius(F.frobenius(a, 1), -1) == a);
        CHECK(F.frobenius(F.mul(a, b), 1) == F.mul(F.frobenius(a, 1), F.frobenius(b, 1)));
        CHECK(F.frobenius(F.add(a, b), 1) == F.add(F.frobenius(a, 1), F.frobenius(b, 1)));
      }
    }
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(42);
  for (u32 p : {3u, 5u, 7u, 13u})
    for (u32 d : {1u, 2u}) {
      const FiniteField& F = FiniteField::get(p, d);
      for (int rep = 0; rep < 100; ++rep) {
        u32 a = static_cast<u32>(rng() % F.q());
        u32 b = static_cast<u32>(rng() % F.q());
        u32 c = static_cast<u32>(rng() % F.q());
        CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
        CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
        CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        CHECK(F.add(a, F.neg(a)) == 0);
        if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
      }
    }
}

TEST_CASE("polynomial powers") {
  const FiniteField& F3 = FiniteField::get(3, 1);
  Poly f = parse_poly(F3, "x+1");
  CHECK(poly_to_string(poly_power(f, 2)) == "x^2+2*x+1");
  Poly g = parse_poly(F3, "x^5+1");
  CHECK(poly_power(g, 1) == g);
  const FiniteField& F5 = FiniteField::get(5, 1);
  Poly h = parse_poly(F5, "x^3+x");
  // direct multiplication oracle
  CHECK(poly_power(h, 2) == h * h);
  CHECK(poly_to_string(poly_power(h, 2)) == "x^6+2*x^4+x^2");
}

TEST_CASE("polynomial parse/print canonical form") {
  const FiniteField& F3 = FiniteField::get(3, 1);
  CHECK(poly_to_string(parse_poly(F3, "x^5+x^2+1")) == "x^5+x^2+1");
  CHECK(poly_to_string(parse_poly(F3, "1*x^1 + 2")) == "x+2");
  CHECK(poly_to_string(parse_poly(F3, "2*x^3+2*x^3")) == "x^3");  // accumulates, reduces mod 3
  CHECK(poly_to_string(Poly(F3)) == "0");
  CHECK(parse_poly(F3, "0").is_zero());
  CHECK(parse_poly(F3, "0").deg() == -1);  // zero-degree sentinel
  CHECK_THROWS_AS(parse_poly(F3, "x^"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly(F3, "y+1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly(F3, ""), std::invalid_argument);
}

TEST_CASE("formal derivative on the truncated ring") {
  const FiniteField& F3 = FiniteField::get(3, 1);
  u32 m = 10;  // p^2 + 1
  auto elem = [&](const char* s) {
    return TruncatedDiffElem::from_poly(parse_poly(F3, s), m);
  };
  CHECK(formal_derivative(elem("x^3")).is_zero());           // p-th power killed
  CHECK(formal_derivative(elem("x^2")) == TruncatedDiffElem::from_poly(parse_poly(F3, "2*x"), m - 1));
  CHECK(formal_derivative(elem("x^4+x")) ==
        TruncatedDiffElem::from_poly(parse_poly(F3, "x^3+1"), m - 1));
}

TEST_CASE("derivative Leibniz rule and kernel") {
  std::mt19937_64 rng(5);
  for (u32 p : {3u, 5u}) {
    const FiniteField& F = FiniteField::get(p, 1);
    const u32 m = p * p + 1;
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<u32> ca(m), cb(m);
      for (auto& x : ca) x = static_cast<u32>(rng() % p);
      for (auto& x : cb) x = static_cast<u32>(rng() % p);
      TruncatedDiffElem a(F, m, ca), b(F, m, cb);
      CHECK(formal_derivative(a * b) ==
            formal_derivative(a) * TruncatedDiffElem(F, m - 1, std::vector<u32>(
                                       cb.begin(), cb.begin() + (m - 1))) +
                TruncatedDiffElem(F, m - 1,
                                  std::vector<u32>(ca.begin(), ca.begin() + (m - 1))) *
                    formal_derivative(b));
    }
    // kernel of d is exactly the span of p-th powers within the truncation
    for (u32 k = 0; k < m; ++k) {
      std::vector<u32> mono(m, 0);
      mono[k] = 1;
      TruncatedDiffElem x(F, m, mono);
      CHECK(formal_derivative(x).is_zero() == (k % p == 0));
    }
    // p-th powers of random elements are killed
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<u32> ca(m);
      for (auto& x : ca) x = static_cast<u32>(rng() % p);
      TruncatedDiffElem a(F, m, ca), ap = a;
      for (u32 k = 1; k < p; ++k) ap = ap * a;
      CHECK(formal_derivative(ap).is_zero());
    }
  }
}

TEST_CASE("canonical moduli") {
  CHECK(FiniteField::get(5, 2).spec().modulus == std::vector<u32>{2, 0, 1});  // t^2 + 2
  CHECK(FiniteField::get(7, 2).spec().modulus == std::vector<u32>{1, 0, 1});  // t^2 + 1
}
