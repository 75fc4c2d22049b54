#include "doctest.h"

#include <random>

#include "strata/dieudonne.hpp"

using namespace strata;
using namespace strata::dieudonne;
using fields::FiniteField;

TEST_CASE("model operators") {
  const FiniteField& F9 = FiniteField::get(3, 2);

  SUBCASE("h = 1: F is the bijective shift by zero") {
    auto m = h2_model(Height::of(1), 3, F9);
    CHECK(m.frobenius_matrix() == semilinear::FqMatrix::identity(F9, 3));
    CHECK_FALSE(m.frobenius_is_zero());
  }
  SUBCASE("h = 2, i = 2: e_0 -> e_1 -> 0") {
    auto m = h2_model(Height::of(2), 2, F9);
    auto M = m.frobenius_matrix();
    CHECK(M.at(1, 0) == 1);
    CHECK(M.at(0, 0) == 0);
    CHECK(M.at(0, 1) == 0);
    CHECK(M.at(1, 1) == 0);
  }
  SUBCASE("h = infinity: F = 0") {
    auto m = h2_model(Height::inf(), 4, F9);
    CHECK(m.frobenius_matrix().is_zero());
    CHECK(m.frobenius_is_zero());
  }
  SUBCASE("length must be positive") {
    CHECK_THROWS_AS(h2_model(Height::of(1), 0, F9), std::invalid_argument);
  }
}

TEST_CASE("kernel table: 0 / 1 / i") {
  const FiniteField& F3 = FiniteField::get(3, 1);
  for (u32 i = 1; i <= 6; ++i) {
    CHECK(ker_F_dim(h2_model(Height::of(1), i, F3)) == 0);
    CHECK(ker_F_dim(h2_model(Height::of(2), i, F3)) == (i >= 1 ? 1 : 0));
    CHECK(ker_F_dim(h2_model(Height::inf(), i, F3)) == i);
    // general finite h: min(i, h-1)
    for (u32 h = 3; h <= 5; ++h)
      CHECK(ker_F_dim(h2_model(Height::of(h), i, F3)) == std::min(i, h - 1));
  }
}

TEST_CASE("height recovered as the minimal non-vanishing length") {
  const FiniteField& F3 = FiniteField::get(3, 1);
  CHECK(height_from_models(Height::of(1), 6, F3) == Height::of(1));
  CHECK(height_from_models(Height::of(2), 6, F3) == Height::of(2));
  CHECK(height_from_models(Height::inf(), 5, F3) == Height::inf());
  CHECK(height_from_models(Height::of(3), 6, F3) == Height::of(3));
  CHECK_THROWS_AS(height_from_models(Height::of(4), 3, F3), std::invalid_argument);
}

TEST_CASE("phi_2 vanishing") {
  const FiniteField& F3 = FiniteField::get(3, 1);
  CHECK_FALSE(phi2_vanishes(h2_model(Height::of(2), 2, F3)));  // F e_0 = e_1
  CHECK(phi2_vanishes(h2_model(Height::inf(), 2, F3)));
  CHECK(phi2_vanishes(h2_model(Height::of(3), 2, F3)));  // shift falls off
  CHECK_THROWS_AS(phi2_vanishes(h2_model(Height::of(1), 2, F3)), std::invalid_argument);
  CHECK_THROWS_AS(phi2_vanishes(h2_model(Height::of(2), 3, F3)), std::invalid_argument);
}

TEST_CASE("exact sequence ranks and FV = VF") {
  const FiniteField& F9 = FiniteField::get(3, 2);
  std::mt19937_64 rng(31);
  std::vector<Height> heights = {Height::of(1), Height::of(2), Height::of(3), Height::inf()};
  for (Height h : heights)
    for (u32 i = 2; i <= 6; ++i) {
      auto m = h2_model(h, i, F9);
      // V is injective: the shift matrix has rank i - 1
      CHECK(semilinear::rank(m.verschiebung_matrix()) == i - 1);
      // R^{i-1} is surjective onto a 1-dimensional quotient with kernel the
      // V-part: applying R i-1 times leaves exactly e_0
      std::vector<u32> v(i, 0);
      for (auto& x : v) x = static_cast<u32>(rng() % 9);
      std::vector<u32> r = v;
      for (u32 k = 1; k < i; ++k) r = std::vector<u32>(r.begin(), r.end() - 1);
      CHECK(r.size() == 1);
      CHECK(r[0] == v[0]);
      // F V = V F on coordinates
      CHECK(m.apply_F(m.apply_V(v)) == m.apply_V(m.apply_F(v)));
    }
}

TEST_CASE("vanishing is monotone in the length") {
  const FiniteField& F3 = FiniteField::get(3, 1);
  std::vector<Height> heights = {Height::of(1), Height::of(2), Height::of(3), Height::of(4),
                                 Height::inf()};
  for (Height h : heights)
    for (u32 n = 1; n <= 6; ++n)
      if (h2_model(h, n, F3).frobenius_is_zero())
        for (u32 i = 1; i < n; ++i) CHECK(h2_model(h, i, F3).frobenius_is_zero());
}
