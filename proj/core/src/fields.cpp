#include "strata/fields.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace strata::fields {

namespace {

constexpr u32 kMaxQ = 1u << 20;

bool is_prime(u32 n) {
  if (n < 2) return false;
  for (u32 k = 2; static_cast<u64>(k) * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

// --- tiny F_p[t] helpers used only while bootstrapping a field -----------

using Fp = std::vector<u32>;  // dense, may carry trailing zeros

void fp_trim(Fp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Fp fp_mod(Fp a, const Fp& m, u32 p) {
  fp_trim(a);
  u32 lead_inv = 1;
  {  // modular inverse of m's leading coefficient
    u32 l = m.back(), t = 1;
    for (u32 e = p - 2; e; e >>= 1) {
      if (e & 1) t = static_cast<u32>(static_cast<u64>(t) * l % p);
      l = static_cast<u32>(static_cast<u64>(l) * l % p);
    }
    lead_inv = t;
  }
  while (a.size() >= m.size()) {
    u32 c = static_cast<u32>(static_cast<u64>(a.back()) * lead_inv % p);
    size_t shift = a.size() - m.size();
    if (c != 0)
      for (size_t j = 0; j < m.size(); ++j) {
        u64 sub = static_cast<u64>(c) * m[j] % p;
        a[shift + j] = static_cast<u32>((a[shift + j] + p - sub) % p);
      }
    a.pop_back();
    fp_trim(a);
    if (a.empty()) break;
  }
  return a;
}

bool fp_is_irreducible(const Fp& m, u32 p) {
  size_t d = m.size() - 1;
  if (d == 0) return false;
  if (d == 1) return true;
  // exhaustive trial division by every monic polynomial of degree <= d/2
  for (size_t e = 1; 2 * e <= d; ++e) {
    u64 count = 1;
    for (size_t k = 0; k < e; ++k) count *= p;
    for (u64 code = 0; code < count; ++code) {
      Fp g(e + 1, 0);
      u64 c = code;
      for (size_t k = 0; k < e; ++k) { g[k] = static_cast<u32>(c % p); c /= p; }
      g[e] = 1;
      if (fp_mod(m, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<u32> prime_factors(u32 n) {
  std::vector<u32> fs;
  for (u32 k = 2; static_cast<u64>(k) * k <= n; ++k)
    if (n % k == 0) {
      fs.push_back(k);
      while (n % k == 0) n /= k;
    }
  if (n > 1) fs.push_back(n);
  return fs;
}

struct Registry {
  std::mutex mu;
  std::map<std::pair<std::pair<u32, u32>, std::vector<u32>>, std::unique_ptr<FiniteField>> fields;
};

Registry& registry() {
  static Registry* r = new Registry;
  return *r;
}

std::vector<u32> canonical_modulus(u32 p, u32 d) {
  if (d == 1) return {0, 1};  // t
  u64 count = 1;
  for (u32 k = 0; k < d; ++k) count *= p;
  for (u64 code = 0; code < count; ++code) {
    Fp m(d + 1, 0);
    u64 c = code;
    for (u32 k = 0; k < d; ++k) { m[k] = static_cast<u32>(c % p); c /= p; }
    m[d] = 1;
    if (fp_is_irreducible(m, p)) return m;
  }
  throw std::logic_error("canonical_modulus: no irreducible polynomial found");
}

}  // namespace

const FiniteField& FiniteField::get(u32 p, u32 d) {
  return get(p, d, canonical_modulus(p, d));
}

const FiniteField& FiniteField::get(u32 p, u32 d, const std::vector<u32>& modulus) {
  auto key = std::make_pair(std::make_pair(p, d), modulus);
  Registry& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto it = reg.fields.find(key);
  if (it != reg.fields.end()) return *it->second;
  PrimeSpec spec{p, d, modulus};
  auto field = std::unique_ptr<FiniteField>(new FiniteField(std::move(spec)));
  return *reg.fields.emplace(std::move(key), std::move(field)).first->second;
}

FiniteField::FiniteField(PrimeSpec spec) : spec_(std::move(spec)) {
  const u32 p = spec_.p, d = spec_.d;
  if (!is_prime(p)) throw std::invalid_argument("FiniteField: p must be prime");
  if (p == 2) throw std::invalid_argument("FiniteField: p = 2 is not supported");
  if (d < 1) throw std::invalid_argument("FiniteField: degree must be >= 1");
  if (spec_.modulus.size() != d + 1 || spec_.modulus[d] != 1)
    throw std::invalid_argument("FiniteField: modulus must be monic of degree d");
  for (u32 c : spec_.modulus)
    if (c >= p) throw std::invalid_argument("FiniteField: modulus coefficients must be reduced");
  if (!fp_is_irreducible(spec_.modulus, p))
    throw std::invalid_argument("FiniteField: modulus is reducible");

  u64 q = 1;
  for (u32 k = 0; k < d; ++k) {
    q *= p;
    if (q > kMaxQ) throw std::invalid_argument("FiniteField: q exceeds supported size");
  }
  q_ = static_cast<u32>(q);
  qm1_ = q_ - 1;
  pw_.resize(d + 1);
  pw_[0] = 1;
  for (u32 i = 1; i <= d; ++i) pw_[i] = pw_[i - 1] * p;

  // find a generator of the multiplicative group using slow arithmetic
  auto pow_slow = [&](u32 a, u32 e) {
    u32 r = 1;
    while (e) {
      if (e & 1) r = mul_slow(r, a);
      a = mul_slow(a, a);
      e >>= 1;
    }
    return r;
  };
  std::vector<u32> fs = prime_factors(qm1_);
  for (u32 cand = 2; cand < q_; ++cand) {
    bool ok = true;
    for (u32 f : fs)
      if (pow_slow(cand, qm1_ / f) == 1) { ok = false; break; }
    if (ok) { gen_ = cand; break; }
  }
  if (gen_ == 0) throw std::logic_error("FiniteField: no generator found");

  exp_.resize(qm1_);
  log_.assign(q_, 0);
  u32 acc = 1;
  for (u32 k = 0; k < qm1_; ++k) {
    exp_[k] = acc;
    log_[acc] = k;
    acc = mul_slow(acc, gen_);
  }
  if (acc != 1) throw std::logic_error("FiniteField: generator order mismatch");
}

u32 FiniteField::add_digits(u32 a, u32 b) const {
  u32 r = 0;
  for (u32 i = 0; i < spec_.d; ++i) {
    u32 da = a % spec_.p, db = b % spec_.p;
    a /= spec_.p;
    b /= spec_.p;
    u32 s = da + db;
    if (s >= spec_.p) s -= spec_.p;
    r += s * pw_[i];
  }
  return r;
}

u32 FiniteField::neg_digits(u32 a) const {
  u32 r = 0;
  for (u32 i = 0; i < spec_.d; ++i) {
    u32 da = a % spec_.p;
    a /= spec_.p;
    r += (da == 0 ? 0 : spec_.p - da) * pw_[i];
  }
  return r;
}

u32 FiniteField::mul_slow(u32 a, u32 b) const {
  const u32 p = spec_.p, d = spec_.d;
  std::vector<u32> da = decode(a), db = decode(b), prod(2 * d - 1, 0);
  for (u32 i = 0; i < d; ++i)
    for (u32 j = 0; j < d; ++j)
      prod[i + j] = static_cast<u32>((prod[i + j] + static_cast<u64>(da[i]) * db[j]) % p);
  for (int k = static_cast<int>(2 * d - 2); k >= static_cast<int>(d); --k) {
    u32 c = prod[static_cast<size_t>(k)];
    if (c == 0) continue;
    prod[static_cast<size_t>(k)] = 0;
    for (u32 j = 0; j < d; ++j) {
      u64 sub = static_cast<u64>(c) * spec_.modulus[j] % p;
      size_t idx = static_cast<size_t>(k) - d + j;
      prod[idx] = static_cast<u32>((prod[idx] + p - sub) % p);
    }
  }
  u32 code = 0;
  for (u32 i = 0; i < d; ++i) code += prod[i] * pw_[i];
  return code;
}

u32 FiniteField::pow(u32 a, long long e) const {
  if (a == 0) {
    if (e < 0) throw std::domain_error("FiniteField: zero to a negative power");
    return e == 0 ? 1 : 0;
  }
  long long r = e % static_cast<long long>(qm1_);
  if (r < 0) r += qm1_;
  u64 idx = static_cast<u64>(log_[a]) * static_cast<u64>(r) % qm1_;
  return exp_[idx];
}

u32 FiniteField::frobenius(u32 a, long long r) const {
  if (a == 0) return 0;
  long long s = r % static_cast<long long>(spec_.d);
  if (s < 0) s += spec_.d;
  u32 code = a;
  for (long long k = 0; k < s; ++k) {
    u64 idx = static_cast<u64>(log_[code]) * spec_.p % qm1_;
    code = exp_[idx];
  }
  return code;
}

std::vector<u32> FiniteField::decode(u32 code) const {
  std::vector<u32> out(spec_.d);
  for (u32 i = 0; i < spec_.d; ++i) {
    out[i] = code % spec_.p;
    code /= spec_.p;
  }
  return out;
}

u32 FiniteField::encode(const std::vector<u32>& coeffs) const {
  if (coeffs.size() != spec_.d)
    throw std::invalid_argument("FiniteField: coefficient vector must have length d");
  u32 code = 0;
  for (u32 i = 0; i < spec_.d; ++i) {
    if (coeffs[i] >= spec_.p)
      throw std::invalid_argument("FiniteField: coefficients must lie in [0, p)");
    code += coeffs[i] * pw_[i];
  }
  return code;
}

FieldElement frobenius(const FieldElement& a, long long r) {
  return FieldElement(a.field(), a.field().frobenius(a.code(), r));
}

std::string FieldElement::to_string() const {
  const u32 d = F_->degree();
  if (d == 1) return std::to_string(code_);
  std::vector<u32> cs = coeffs();
  std::ostringstream os;
  bool first = true;
  for (int k = static_cast<int>(d) - 1; k >= 0; --k) {
    u32 c = cs[static_cast<size_t>(k)];
    if (c == 0) continue;
    if (!first) os << "+";
    first = false;
    if (k == 0) {
      os << c;
    } else {
      if (c != 1) os << c << "*";
      os << "t";
      if (k > 1) os << "^" << k;
    }
  }
  if (first) os << "0";
  return os.str();
}

// --- Poly -----------------------------------------------------------------

Poly Poly::from_ints(const FiniteField& F, const std::vector<long long>& coeffs) {
  std::vector<u32> c(coeffs.size());
  for (size_t k = 0; k < coeffs.size(); ++k) c[k] = F.from_int(coeffs[k]);
  return Poly(F, std::move(c));
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.F_ != b.F_) throw std::invalid_argument("Poly: mismatched fields");
  std::vector<u32> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (size_t k = 0; k < c.size(); ++k)
    c[k] = a.F_->add(k < a.c_.size() ? a.c_[k] : 0, k < b.c_.size() ? b.c_[k] : 0);
  return Poly(*a.F_, std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  if (a.F_ != b.F_) throw std::invalid_argument("Poly: mismatched fields");
  std::vector<u32> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (size_t k = 0; k < c.size(); ++k)
    c[k] = a.F_->sub(k < a.c_.size() ? a.c_[k] : 0, k < b.c_.size() ? b.c_[k] : 0);
  return Poly(*a.F_, std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.F_ != b.F_) throw std::invalid_argument("Poly: mismatched fields");
  if (a.is_zero() || b.is_zero()) return Poly(*a.F_);
  std::vector<u32> c(a.c_.size() + b.c_.size() - 1, 0);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j)
      c[i + j] = a.F_->add(c[i + j], a.F_->mul(a.c_[i], b.c_[j]));
  }
  return Poly(*a.F_, std::move(c));
}

Poly Poly::scaled(u32 s) const {
  std::vector<u32> c(c_.size());
  for (size_t k = 0; k < c_.size(); ++k) c[k] = F_->mul(c_[k], s);
  return Poly(*F_, std::move(c));
}

u32 Poly::eval(u32 x) const {
  u32 acc = 0;
  for (size_t k = c_.size(); k-- > 0;) acc = F_->add(F_->mul(acc, x), c_[k]);
  return acc;
}

Poly poly_power(const Poly& f, u64 e) {
  Poly r(f.field(), {1});
  Poly base = f;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Poly poly_derivative(const Poly& f) {
  const FiniteField& F = f.field();
  if (f.deg() <= 0) return Poly(F);
  std::vector<u32> c(static_cast<size_t>(f.deg()), 0);
  for (int k = 1; k <= f.deg(); ++k)
    c[static_cast<size_t>(k - 1)] = F.mul(F.from_int(k), f.coeff(k));
  return Poly(F, std::move(c));
}

Poly poly_mod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("poly_mod: division by zero polynomial");
  const FiniteField& F = a.field();
  std::vector<u32> r = a.coeffs();
  u32 lead_inv = F.inv(b.lead());
  while (static_cast<int>(r.size()) - 1 >= b.deg()) {
    while (!r.empty() && r.back() == 0) r.pop_back();
    if (static_cast<int>(r.size()) - 1 < b.deg()) break;
    u32 c = F.mul(r.back(), lead_inv);
    size_t shift = r.size() - 1 - static_cast<size_t>(b.deg());
    for (int j = 0; j <= b.deg(); ++j)
      r[shift + static_cast<size_t>(j)] =
          F.sub(r[shift + static_cast<size_t>(j)], F.mul(c, b.coeff(j)));
  }
  return Poly(F, std::move(r));
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_mod(a, b);
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  return a.scaled(a.field().inv(a.lead()));  // monic normalization
}

std::string poly_to_string(const Poly& f) {
  if (f.is_zero()) return "0";
  const FiniteField& F = f.field();
  std::ostringstream os;
  bool first = true;
  for (int k = f.deg(); k >= 0; --k) {
    u32 c = f.coeff(k);
    if (c == 0) continue;
    if (!first) os << "+";
    first = false;
    std::string cs;
    if (c < F.p()) {
      cs = std::to_string(c);
    } else {
      std::vector<u32> digits = F.decode(c);
      cs = "[";
      for (size_t i = 0; i < digits.size(); ++i) {
        if (i) cs += ",";
        cs += std::to_string(digits[i]);
      }
      cs += "]";
    }
    if (k == 0) {
      os << cs;
    } else {
      if (!(c == 1)) os << cs << "*";
      os << "x";
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

std::string Poly::to_string() const { return poly_to_string(*this); }

namespace {

// one term of the canonical grammar: coeff ["*"] ["x" ["^" k]]
struct Term {
  u32 coeff;
  u32 exp;
};

Term parse_term(const FiniteField& F, const std::string& s) {
  size_t i = 0;
  auto fail = [&]() -> void {
    throw std::invalid_argument("parse_poly: bad term '" + s + "'");
  };
  if (s.empty()) fail();
  u32 coeff = 1;
  bool have_coeff = false;
  if (s[i] == '[') {
    size_t close = s.find(']', i);
    if (close == std::string::npos) fail();
    std::vector<u32> digits;
    size_t k = i + 1;
    while (k < close) {
      size_t comma = s.find(',', k);
      if (comma == std::string::npos || comma > close) comma = close;
      digits.push_back(static_cast<u32>(std::stoul(s.substr(k, comma - k))));
      k = comma + 1;
    }
    while (digits.size() < F.degree()) digits.push_back(0);
    coeff = F.encode(digits);
    have_coeff = true;
    i = close + 1;
  } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    coeff = F.from_int(static_cast<long long>(std::stoll(s.substr(i, j - i))));
    have_coeff = true;
    i = j;
  }
  if (i < s.size() && s[i] == '*') ++i;
  u32 exp = 0;
  if (i < s.size()) {
    if (s[i] != 'x') fail();
    ++i;
    exp = 1;
    if (i < s.size()) {
      if (s[i] != '^') fail();
      ++i;
      if (i >= s.size()) fail();
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i || j != s.size()) fail();
      exp = static_cast<u32>(std::stoul(s.substr(i)));
      i = j;
    }
  } else if (!have_coeff) {
    fail();
  }
  if (i != s.size()) fail();
  return {coeff, exp};
}

}  // namespace

Poly parse_poly(const FiniteField& F, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("parse_poly: empty input");
  std::vector<u32> acc;
  size_t start = 0;
  int bracket = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == '[') ++bracket;
    if (i < s.size() && s[i] == ']') --bracket;
    if (i == s.size() || (s[i] == '+' && bracket == 0)) {
      Term t = parse_term(F, s.substr(start, i - start));
      if (t.exp >= acc.size()) acc.resize(t.exp + 1, 0);
      acc[t.exp] = F.add(acc[t.exp], t.coeff);
      start = i + 1;
    }
  }
  return Poly(F, std::move(acc));
}

// --- TruncatedDiffElem ------------------------------------------------------

TruncatedDiffElem::TruncatedDiffElem(const FiniteField& F, u32 m, std::vector<u32> dense)
    : F_(&F), m_(m), c_(std::move(dense)) {
  if (m < 1) throw std::invalid_argument("TruncatedDiffElem: order must be >= 1");
  c_.resize(m, 0);
}

TruncatedDiffElem TruncatedDiffElem::from_poly(const Poly& f, u32 m) {
  TruncatedDiffElem r(f.field(), m);
  for (u32 k = 0; k < m; ++k) r.c_[k] = f.coeff(static_cast<int>(k));
  return r;
}

bool TruncatedDiffElem::is_zero() const {
  for (u32 c : c_)
    if (c != 0) return false;
  return true;
}

TruncatedDiffElem operator+(const TruncatedDiffElem& a, const TruncatedDiffElem& b) {
  a.check(b);
  TruncatedDiffElem r(*a.F_, a.m_);
  for (u32 k = 0; k < a.m_; ++k) r.c_[k] = a.F_->add(a.c_[k], b.c_[k]);
  return r;
}

TruncatedDiffElem operator-(const TruncatedDiffElem& a, const TruncatedDiffElem& b) {
  a.check(b);
  TruncatedDiffElem r(*a.F_, a.m_);
  for (u32 k = 0; k < a.m_; ++k) r.c_[k] = a.F_->sub(a.c_[k], b.c_[k]);
  return r;
}

TruncatedDiffElem operator*(const TruncatedDiffElem& a, const TruncatedDiffElem& b) {
  a.check(b);
  TruncatedDiffElem r(*a.F_, a.m_);
  for (u32 i = 0; i < a.m_; ++i) {
    if (a.c_[i] == 0) continue;
    for (u32 j = 0; i + j < a.m_; ++j)
      r.c_[i + j] = a.F_->add(r.c_[i + j], a.F_->mul(a.c_[i], b.c_[j]));
  }
  return r;
}

TruncatedDiffElem formal_derivative(const TruncatedDiffElem& g) {
  const FiniteField& F = g.field();
  if (g.order() < 2)
    throw std::invalid_argument("formal_derivative: truncation order must be >= 2");
  std::vector<u32> c(g.order() - 1, 0);
  for (u32 k = 1; k < g.order(); ++k) c[k - 1] = F.mul(F.from_int(k), g.dense()[k]);
  return TruncatedDiffElem(F, g.order() - 1, std::move(c));
}

}  // namespace strata::fields
