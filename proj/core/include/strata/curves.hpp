#pragma once
// curves.hpp -- genus-2 hyperelliptic and elliptic curves over F_q:
// Cartier-Manin matrices, exhaustive point counts, L-polynomials and Newton
// slopes.  The Cartier-Manin route and the zeta route give two independent
// computations of p-rank / supersingularity, and classify() can assert
// their agreement.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "strata/fields.hpp"
#include "strata/height.hpp"
#include "strata/semilinear.hpp"

namespace strata::curves {

using fields::u32;
using fields::u64;

// y^2 = f(x), deg f in {5, 6}, f squarefree (gcd(f, f') = 1).
class Genus2Curve {
 public:
  Genus2Curve(const fields::FiniteField& F, fields::Poly f);
  const fields::FiniteField& field() const { return *F_; }
  const fields::Poly& f() const { return f_; }

 private:
  const fields::FiniteField* F_;
  fields::Poly f_;
};

// y^2 = x^3 + a x + b with 4a^3 + 27b^2 != 0.
class EllipticCurve {
 public:
  EllipticCurve(const fields::FiniteField& F, u32 a, u32 b);
  const fields::FiniteField& field() const { return *F_; }
  u32 a() const { return a_; }
  u32 b() const { return b_; }
  fields::Poly rhs() const;  // x^3 + a x + b

 private:
  const fields::FiniteField* F_;
  u32 a_, b_;
};

// L(T) = 1 + a1 T + a2 T^2 + q a1 T^3 + q^2 T^4 (genus 2) or
// 1 + a1 T + q T^2 (genus 1); reciprocal roots have |alpha| = sqrt(q).
struct LPolynomial {
  u32 p = 0;
  u32 d = 1;
  u64 q = 0;
  u32 genus = 2;
  std::vector<long long> coeffs;  // degree 2*genus, coeffs[0] = 1

  long long a1() const { return coeffs[1]; }
  long long a2() const { return genus == 2 ? coeffs[2] : 0; }
  friend bool operator==(const LPolynomial&, const LPolynomial&) = default;
};

// exact slope fraction num/den in lowest terms
struct Slope {
  long long num = 0;
  long long den = 1;
  friend bool operator==(const Slope&, const Slope&) = default;
  std::string to_string() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

enum class CaseType { Ordinary, PRank1, SsNotSuperspecial, Superspecial };
const char* to_string(CaseType t);
CaseType case_type_from_string(const std::string& s);

struct ClassificationRecord {
  u32 p_rank = 0;
  u32 a_number = 0;
  Height height;
  CaseType case_type = CaseType::Ordinary;
  semilinear::FqMatrix cartier_manin;
  std::optional<LPolynomial> l_poly;
  std::optional<std::vector<Slope>> slopes;
};

// Raised when the Cartier-Manin route and the Newton-slope route disagree;
// the message carries both answers and the offending curve.
struct OracleDisagreement : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// M_{ij} = coefficient of x^{i p - j} in f^{(p-1)/2}, i, j in {1, 2}.
// This is the matrix of the Cartier operator on H^0(Omega^1) in the basis
// dx/y, x dx/y; p-rank and a-number are insensitive to the transpose/twist
// normalization, so the library standardizes on this matrix throughout.
semilinear::FqMatrix cartier_manin_matrix(const Genus2Curve& C);
// Same coefficient extraction on a raw polynomial (exposed for tests).
semilinear::FqMatrix cartier_manin_from_poly(const fields::Poly& f, u32 genus = 2);

// coefficient of x^{p-1} in (x^3 + a x + b)^{(p-1)/2}
u32 hasse_invariant(const EllipticCurve& E);

u32 p_rank(const Genus2Curve& C);    // stable rank of the Cartier-Manin map
u32 a_number(const Genus2Curve& C);  // 2 - rank(M)

// number of points of the smooth projective model over F_{q^m}, m in {1,2}
u64 count_points(const Genus2Curve& C, u32 m);
u64 count_points(const EllipticCurve& E);  // over F_q
long long trace_of_frobenius(const EllipticCurve& E);  // a_p = q + 1 - #E(F_q)

LPolynomial l_polynomial(const Genus2Curve& C);
LPolynomial l_polynomial(const EllipticCurve& E);

// 2g slopes in [0,1], ascending, multiplicities included, normalized by d
std::vector<Slope> newton_slopes(const LPolynomial& L);

// numeric Weil check: every reciprocal root has |alpha| = sqrt(q) within tol
bool weil_moduli_ok(const LPolynomial& L, double tol = 1e-6);

// Cartier-Manin route classification; with verify = true the zeta route is
// also computed and agreement is asserted (throws OracleDisagreement).
ClassificationRecord classify(const Genus2Curve& C, bool verify = false);

struct EllipticRecord {
  u32 p_rank = 0;      // 0 or 1
  u32 a_number = 0;    // 1 - rank of the 1x1 Cartier-Manin matrix
  Height height;       // 1 (ordinary) or 2 (supersingular)
  bool supersingular = false;
  u32 hasse = 0;
  std::optional<long long> a_p;
};
EllipticRecord classify(const EllipticCurve& E, bool verify = false);

}  // namespace strata::curves
