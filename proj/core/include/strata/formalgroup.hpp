#pragma once
// formalgroup.hpp -- one-dimensional formal group laws over F_q to finite
// t-adic precision: the multiplicative and additive reference groups, the
// formal group of an elliptic curve expanded in t = -x/y, [p]-series and
// height extraction.  Series arithmetic is dense and exact; group-law
// axioms (unit sections, commutativity, associativity) are checked at
// construction to the working precision.

#include <cstdint>
#include <optional>
#include <vector>

#include "strata/curves.hpp"
#include "strata/fields.hpp"
#include "strata/height.hpp"

namespace strata::formalgroup {

using fields::u32;
using fields::u64;

// truncated univariate series: coefficients of t^0..t^N
struct Series1 {
  const fields::FiniteField* F = nullptr;
  u32 N = 0;
  std::vector<u32> c;

  Series1() = default;
  Series1(const fields::FiniteField& f, u32 n) : F(&f), N(n), c(n + 1, 0) {}
  friend bool operator==(const Series1&, const Series1&) = default;
  bool is_zero() const {
    for (u32 x : c)
      if (x) return false;
    return true;
  }
  std::optional<u32> valuation() const {
    for (u32 k = 0; k < c.size(); ++k)
      if (c[k]) return k;
    return std::nullopt;
  }
};

// truncated bivariate series of total degree <= N, triangular storage
class Series2 {
 public:
  Series2() = default;
  Series2(const fields::FiniteField& F, u32 N);

  const fields::FiniteField& field() const { return *F_; }
  u32 precision() const { return N_; }
  u32 at(u32 i, u32 j) const { return c_[idx(i, j)]; }
  void set(u32 i, u32 j, u32 v) { c_[idx(i, j)] = v; }

  friend bool operator==(const Series2&, const Series2&) = default;
  friend Series2 operator+(const Series2& a, const Series2& b);
  friend Series2 operator-(const Series2& a, const Series2& b);
  friend Series2 operator*(const Series2& a, const Series2& b);
  Series2 scaled(u32 s) const;
  // multiplicative inverse; requires a unit constant term
  Series2 inverse() const;

  const std::vector<u32>& data() const { return c_; }

 private:
  size_t idx(u32 i, u32 j) const {
    return static_cast<size_t>(i) * (N_ + 1) - static_cast<size_t>(i) * (i - 1) / 2 + j;
  }
  const fields::FiniteField* F_ = nullptr;
  u32 N_ = 0;
  std::vector<u32> c_;
};

// F(X, Y) with F(X,0) = X, F(0,Y) = Y, commutative and associative to
// precision N (all verified at construction; violation is a logic error).
struct FormalGroupLaw {
  const fields::FiniteField* F = nullptr;
  u32 N = 0;
  Series2 law;
};

// [p](t) to precision N; no constant term and no linear term over F_q
struct PSeries {
  const fields::FiniteField* F = nullptr;
  u32 N = 0;
  std::vector<u32> c;
  std::optional<u32> valuation() const {
    for (u32 k = 0; k < c.size(); ++k)
      if (c[k]) return k;
    return std::nullopt;
  }
};

u32 default_precision(u32 p);  // p^2 + 4

// Ghat_m: F = X + Y + XY; Ghat_a: F = X + Y.  Require N >= p.
FormalGroupLaw multiplicative_fgl(const fields::FiniteField& F, u32 N);
FormalGroupLaw additive_fgl(const fields::FiniteField& F, u32 N);

// formal group of y^2 = x^3 + ax + b in the parameter t = -x/y; requires
// N >= p^2 + 1 so that height-2 detection stays inside the precision window
FormalGroupLaw elliptic_fgl(const curves::EllipticCurve& E, u32 N);

// [m](t) by m-fold formal addition
Series1 m_series(const FormalGroupLaw& G, u32 m);
PSeries p_series(const FormalGroupLaw& G);

// F(g1(t), g2(t)) -- used to test the homomorphism property of [m]
Series1 substitute(const FormalGroupLaw& G, const Series1& g1, const Series1& g2);

// series iota with F(t, iota(t)) = 0 to precision
Series1 formal_inverse(const FormalGroupLaw& G);

// log_p of the valuation of [p]; infinity marker when [p] = 0 to precision;
// throws std::domain_error when the valuation is not a power of p
Height height_of(const PSeries& s);

// height of the elliptic formal group at default precision; hard-errors if
// the computed valuation escapes {p, p^2} (impossible for an elliptic
// curve, so it would signal a series bug)
Height elliptic_height(const curves::EllipticCurve& E);

}  // namespace strata::formalgroup
