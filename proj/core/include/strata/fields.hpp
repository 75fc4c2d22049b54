#pragma once
// fields.hpp -- arithmetic in F_p and F_{p^d}, univariate polynomials over
// them, and truncated differential rings F_q[x]/(x^m) with a formal
// derivative.  Everything here is exact and immutable after construction.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace strata::fields {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Defining data of F_{p^d}: the prime, the extension degree d >= 1 and a
// monic irreducible modulus of degree d over F_p.  modulus[k] is the
// coefficient of t^k, modulus[d] == 1.
struct PrimeSpec {
  u32 p = 0;
  u32 d = 1;
  std::vector<u32> modulus;
};

// F_{p^d} with O(1) code-level arithmetic.  Elements are packed codes in
// [0, p^d): the base-p digit vector of the coefficients on the power basis
// 1, t, ..., t^{d-1}.  Multiplication, inversion and Frobenius go through
// discrete-log tables over a fixed generator; addition is digit-wise.
//
// Instances live in a process-wide registry and are never destroyed, so
// holding `const FiniteField*` is always safe.  p = 2 is rejected (the
// hyperelliptic model y^2 = f(x) degenerates there); q is capped at 2^20
// to bound table memory.
class FiniteField {
 public:
  // Canonical field: modulus is the first monic irreducible polynomial of
  // degree d in code order (constant coefficient varies fastest).  For
  // F_9 this yields t^2 + 1, for F_25 t^2 + 2, for F_49 t^2 + 1.
  static const FiniteField& get(u32 p, u32 d = 1);
  // Same but with an explicitly chosen modulus (degree-d coefficients,
  // monic; irreducibility is verified by exhaustive factor search).
  static const FiniteField& get(u32 p, u32 d, const std::vector<u32>& modulus);

  const PrimeSpec& spec() const { return spec_; }
  u32 p() const { return spec_.p; }
  u32 degree() const { return spec_.d; }
  u32 q() const { return q_; }

  // --- code-level arithmetic -------------------------------------------
  u32 add(u32 a, u32 b) const {
    if (spec_.d == 1) { u32 s = a + b; return s >= spec_.p ? s - spec_.p : s; }
    return add_digits(a, b);
  }
  u32 neg(u32 a) const {
    if (spec_.d == 1) return a == 0 ? 0 : spec_.p - a;
    return neg_digits(a);
  }
  u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }
  u32 mul(u32 a, u32 b) const {
    if (a == 0 || b == 0) return 0;
    u32 e = log_[a] + log_[b];
    if (e >= qm1_) e -= qm1_;
    return exp_[e];
  }
  u32 inv(u32 a) const {
    if (a == 0) throw std::domain_error("FiniteField: division by zero");
    u32 l = log_[a];
    return exp_[l == 0 ? 0 : qm1_ - l];
  }
  u32 div(u32 a, u32 b) const { return mul(a, inv(b)); }
  // a^e for any integer exponent (e < 0 uses the inverse).
  u32 pow(u32 a, long long e) const;
  // a^(p^r); r may be negative (inverse Frobenius -- F_q is perfect).
  u32 frobenius(u32 a, long long r) const;
  // Quadratic character: +1 square, -1 non-square, 0 for zero.
  int chi(u32 a) const {
    if (a == 0) return 0;
    return (log_[a] & 1u) ? -1 : +1;
  }
  // Image of n in the prime subfield.
  u32 from_int(long long n) const {
    long long r = n % static_cast<long long>(spec_.p);
    if (r < 0) r += spec_.p;
    return static_cast<u32>(r);
  }
  // Code of the generator used by the log tables.
  u32 generator() const { return gen_; }

  std::vector<u32> decode(u32 code) const;          // d base-p digits
  u32 encode(const std::vector<u32>& coeffs) const; // inverse of decode

  FiniteField(const FiniteField&) = delete;
  FiniteField& operator=(const FiniteField&) = delete;

 private:
  explicit FiniteField(PrimeSpec spec);
  u32 add_digits(u32 a, u32 b) const;
  u32 neg_digits(u32 a) const;
  u32 mul_slow(u32 a, u32 b) const;  // poly-mod multiply; table bootstrap only

  PrimeSpec spec_;
  u32 q_ = 0, qm1_ = 0, gen_ = 0;
  std::vector<u32> exp_;   // exp_[k] = gen^k, k in [0, q-1)
  std::vector<u32> log_;   // log_[exp_[k]] = k; log_[0] unused
  std::vector<u32> pw_;    // pw_[i] = p^i, i <= d
};

// Element of F_{p^d}: a field pointer plus packed code.  The binary
// operators require both operands to come from the same FiniteField
// instance and throw std::invalid_argument otherwise.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const FiniteField& F, u32 code) : F_(&F), code_(code) {}
  static FieldElement from_coeffs(const FiniteField& F, const std::vector<u32>& coeffs) {
    return FieldElement(F, F.encode(coeffs));
  }
  static FieldElement from_int(const FiniteField& F, long long n) {
    return FieldElement(F, F.from_int(n));
  }

  const FiniteField& field() const { return *F_; }
  u32 code() const { return code_; }
  std::vector<u32> coeffs() const { return F_->decode(code_); }
  bool is_zero() const { return code_ == 0; }

  friend FieldElement operator+(FieldElement a, FieldElement b) {
    a.check(b); return FieldElement(*a.F_, a.F_->add(a.code_, b.code_));
  }
  friend FieldElement operator-(FieldElement a, FieldElement b) {
    a.check(b); return FieldElement(*a.F_, a.F_->sub(a.code_, b.code_));
  }
  friend FieldElement operator*(FieldElement a, FieldElement b) {
    a.check(b); return FieldElement(*a.F_, a.F_->mul(a.code_, b.code_));
  }
  friend FieldElement operator/(FieldElement a, FieldElement b) {
    a.check(b); return FieldElement(*a.F_, a.F_->div(a.code_, b.code_));
  }
  FieldElement operator-() const { return FieldElement(*F_, F_->neg(code_)); }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.F_ == b.F_ && a.code_ == b.code_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void check(const FieldElement& o) const {
    if (F_ != o.F_) throw std::invalid_argument("FieldElement: mismatched field specs");
  }
  const FiniteField* F_ = nullptr;
  u32 code_ = 0;
};

// a^(p^r) as an element-level operation.
FieldElement frobenius(const FieldElement& a, long long r);

// Univariate polynomial over F_q.  Coefficient c_[k] of x^k, no trailing
// zeros above the degree; the zero polynomial has empty storage and
// deg() == -1 (the distinguished sentinel).
class Poly {
 public:
  Poly() = default;
  explicit Poly(const FiniteField& F) : F_(&F) {}
  Poly(const FiniteField& F, std::vector<u32> coeffs) : F_(&F), c_(std::move(coeffs)) {
    normalize();
  }
  static Poly from_ints(const FiniteField& F, const std::vector<long long>& coeffs);
  static Poly x(const FiniteField& F) { return Poly(F, {0, 1}); }

  const FiniteField& field() const { return *F_; }
  int deg() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  u32 coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(k)] : 0;
  }
  u32 lead() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<u32>& coeffs() const { return c_; }

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.F_ == b.F_ && a.c_ == b.c_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly scaled(u32 s) const;
  u32 eval(u32 x) const;

  std::string to_string() const;

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  const FiniteField* F_ = nullptr;
  std::vector<u32> c_;
};

// Exact expansion of f^e (e >= 0).
Poly poly_power(const Poly& f, u64 e);
// Termwise derivative; p-th power terms map to zero.
Poly poly_derivative(const Poly& f);
// Remainder / quotient; b must be nonzero.
Poly poly_mod(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);  // monic gcd, or zero if both zero

// Canonical ASCII form: terms "c*x^k" joined by "+", descending degree,
// unit coefficients omitted ("x^5+x^2+1"); the zero polynomial prints "0".
// For d >= 2 a non-prime-subfield coefficient is printed as a base-p digit
// vector "[c0,c1,...]" on the power basis of t.  parse_poly accepts the
// same grammar (plus "x" for "x^1" and redundant "1*").
std::string poly_to_string(const Poly& f);
Poly parse_poly(const FiniteField& F, const std::string& text);

// Element of R = F_q[x]/(x^m): a polynomial of degree < m together with
// its truncation order.  The formal derivative lands in F_q[x]/(x^{m-1})
// (the coefficient ring of 1-forms c(x)*dx).
class TruncatedDiffElem {
 public:
  TruncatedDiffElem() = default;
  TruncatedDiffElem(const FiniteField& F, u32 m) : F_(&F), m_(m), c_(m, 0) {
    if (m < 1) throw std::invalid_argument("TruncatedDiffElem: order must be >= 1");
  }
  TruncatedDiffElem(const FiniteField& F, u32 m, std::vector<u32> dense);
  static TruncatedDiffElem from_poly(const Poly& f, u32 m);

  const FiniteField& field() const { return *F_; }
  u32 order() const { return m_; }
  const std::vector<u32>& dense() const { return c_; }  // always size m
  bool is_zero() const;
  Poly to_poly() const { return Poly(*F_, c_); }

  friend TruncatedDiffElem operator+(const TruncatedDiffElem& a, const TruncatedDiffElem& b);
  friend TruncatedDiffElem operator-(const TruncatedDiffElem& a, const TruncatedDiffElem& b);
  friend TruncatedDiffElem operator*(const TruncatedDiffElem& a, const TruncatedDiffElem& b);
  friend bool operator==(const TruncatedDiffElem& a, const TruncatedDiffElem& b) {
    return a.F_ == b.F_ && a.m_ == b.m_ && a.c_ == b.c_;
  }
  friend bool operator!=(const TruncatedDiffElem& a, const TruncatedDiffElem& b) {
    return !(a == b);
  }

 private:
  void check(const TruncatedDiffElem& o) const {
    if (F_ != o.F_ || m_ != o.m_)
      throw std::invalid_argument("TruncatedDiffElem: mismatched ring");
  }
  const FiniteField* F_ = nullptr;
  u32 m_ = 0;
  std::vector<u32> c_;
};

// d: F_q[x]/(x^m) -> F_q[x]/(x^{m-1}), the coefficient of the 1-form g'dx.
TruncatedDiffElem formal_derivative(const TruncatedDiffElem& g);

}  // namespace strata::fields
