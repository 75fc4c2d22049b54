#include "doctest.h"

#include <random>

#include "strata/semilinear.hpp"

using namespace strata;
using namespace strata::semilinear;
using fields::FiniteField;

namespace {

FqMatrix mat2(const FiniteField& F, u32 a, u32 b, u32 c, u32 d) {
  FqMatrix m(F, 2, 2);
  m.set(0, 0, a);
  m.set(0, 1, b);
  m.set(1, 0, c);
  m.set(1, 1, d);
  return m;
}

FqMatrix random_matrix(const FiniteField& F, u32 n, std::mt19937_64& rng) {
  FqMatrix m(F, n, n);
  for (u32 i = 0; i < n; ++i)
    for (u32 j = 0; j < n; ++j) m.set(i, j, static_cast<u32>(rng() % F.q()));
  return m;
}

}  // namespace

TEST_CASE("compose") {
  const FiniteField& F9 = FiniteField::get(3, 2);
  std::mt19937_64 rng(3);
  SUBCASE("identity twist 1 against arbitrary g") {
    auto g = make_sigma_linear(random_matrix(F9, 2, rng), 1);
    auto f = make_sigma_linear(FqMatrix::identity(F9, 2), 1);
    auto fg = compose(f, g);
    CHECK(fg.twist == g.twist + 1);
    CHECK(fg.matrix == g.matrix.frobenius_entrywise(1));
  }
  SUBCASE("prime-field entries: matrix squares") {
    const FiniteField& F3 = FiniteField::get(3, 1);
    auto f = make_sigma_linear(mat2(F3, 1, 2, 0, 1), 1);
    auto ff = compose(f, f);
    CHECK(ff.twist == 2);
    CHECK(ff.matrix == f.matrix * f.matrix);  // Frobenius trivial on F_p
  }
  SUBCASE("nilpotent shift squares to zero") {
    const FiniteField& F3 = FiniteField::get(3, 1);
    auto f = make_sigma_linear(mat2(F3, 0, 0, 1, 0), 1);
    auto ff = compose(f, f);
    CHECK(ff.matrix.is_zero());
    CHECK(ff.twist == 2);
  }
  SUBCASE("dimension mismatch") {
    const FiniteField& F3 = FiniteField::get(3, 1);
    auto f = make_sigma_linear(FqMatrix::identity(F3, 2), 1);
    auto g = make_sigma_linear(FqMatrix::identity(F3, 3), 1);
    CHECK_THROWS_AS(compose(f, g), std::invalid_argument);
  }
}

TEST_CASE("kernel_dim and stable_rank") {
  const FiniteField& F3 = FiniteField::get(3, 1);
  auto zero2 = make_sigma_linear(FqMatrix(F3, 2, 2), 1);
  CHECK(kernel_dim(zero2) == 2);
  CHECK(stable_rank(zero2) == 0);

  auto id2 = make_sigma_linear(FqMatrix::identity(F3, 2), 1);
  CHECK(kernel_dim(id2) == 0);
  CHECK(stable_rank(id2) == 2);

  auto proj = make_sigma_linear(mat2(F3, 1, 0, 1, 0), 1);
  CHECK(kernel_dim(proj) == 1);   // Gaussian elimination: rank 1
  CHECK(stable_rank(proj) == 1);  // composite keeps rank 1

  auto nil = make_sigma_linear(mat2(F3, 0, 0, 1, 0), 1);
  CHECK(stable_rank(nil) == 0);  // square is zero
  CHECK(kernel_dim(nil) == 1);
}

TEST_CASE("rank/corank and idempotence of stable rank") {
  std::mt19937_64 rng(17);
  for (u32 p : {3u, 5u})
    for (u32 d : {1u, 2u}) {
      const FiniteField& F = FiniteField::get(p, d);
      for (u32 n : {1u, 2u, 3u, 4u})
        for (int rep = 0; rep < 30; ++rep) {
          auto f = make_sigma_linear(random_matrix(F, n, rng), 1);
          CHECK(kernel_dim(f) + rank(f.matrix) == n);
          CHECK(stable_rank(f) == stable_rank(compose(f, f)));
        }
    }
}

TEST_CASE("stable rank is invariant under base extension") {
  std::mt19937_64 rng(23);
  for (u32 p : {3u, 5u}) {
    const FiniteField& F = FiniteField::get(p, 1);
    const FiniteField& E = FiniteField::get(p, 2);
    for (int rep = 0; rep < 40; ++rep) {
      u32 n = 2 + static_cast<u32>(rng() % 2);
      FqMatrix m = random_matrix(F, n, rng);
      FqMatrix me(E, n, n);
      // prime subfield codes coincide under the canonical embedding
      for (u32 i = 0; i < n; ++i)
        for (u32 j = 0; j < n; ++j) me.set(i, j, m.at(i, j));
      CHECK(stable_rank(make_sigma_linear(m, 1)) == stable_rank(make_sigma_linear(me, 1)));
    }
  }
}

TEST_CASE("stable rank equals codim of the union of iterate kernels") {
  // brute force over all vectors, dim <= 3, small q
  using u64 = std::uint64_t;
  std::mt19937_64 rng(29);
  for (u32 p : {3u, 5u}) {
    const FiniteField& F = FiniteField::get(p, 1);
    for (u32 n : {2u, 3u})
      for (int rep = 0; rep < 20; ++rep) {
        auto f = make_sigma_linear(random_matrix(F, n, rng), 1);
        // count vectors annihilated by the n-fold iterate
        u64 total = 1;
        for (u32 k = 0; k < n; ++k) total *= F.q();
        u64 killed = 0;
        for (u64 code = 0; code < total; ++code) {
          std::vector<u32> v(n);
          u64 c = code;
          for (u32 k = 0; k < n; ++k) {
            v[k] = static_cast<u32>(c % F.q());
            c /= F.q();
          }
          for (u32 it = 0; it < n; ++it) v = f.apply(v);
          bool zero = true;
          for (u32 x : v) zero = zero && x == 0;
          if (zero) ++killed;
        }
        // the stable kernel is a subspace, so killed = q^kdim exactly
        u32 kdim = 0;
        while (killed > 1) {
          REQUIRE(killed % F.q() == 0);
          killed /= F.q();
          ++kdim;
        }
        CHECK(stable_rank(f) == n - kdim);
      }
  }
}
