#include "strata/witt.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <unordered_map>

namespace strata::witt {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 ipow(u64 b, u32 e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

// --- IntPoly ----------------------------------------------------------------

IntPoly IntPoly::constant(KeyLayout lay, BigInt c) {
  IntPoly f(lay);
  if (c != 0) f.terms_.emplace_back(0, std::move(c));
  return f;
}

IntPoly IntPoly::variable(KeyLayout lay, u32 var, u64 exp) {
  if (var >= lay.nvars) throw std::invalid_argument("IntPoly: variable out of range");
  if (exp >= (u64{1} << lay.bits)) throw std::invalid_argument("IntPoly: exponent overflows layout");
  IntPoly f(lay);
  if (exp == 0) return constant(lay, 1);
  f.terms_.emplace_back(exp << (var * lay.bits), BigInt(1));
  return f;
}

void IntPoly::add_term(u64 key, BigInt c) { terms_.emplace_back(key, std::move(c)); }

void IntPoly::finalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const Term& t) { return t.second == 0; }),
            out.end());
  terms_ = std::move(out);
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  if (!(a.lay_ == b.lay_)) throw std::invalid_argument("IntPoly: layout mismatch");
  IntPoly r(a.lay_);
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
      r.terms_.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
      r.terms_.push_back(b.terms_[j++]);
    } else {
      BigInt c = a.terms_[i].second + b.terms_[j].second;
      if (c != 0) r.terms_.emplace_back(a.terms_[i].first, std::move(c));
      ++i, ++j;
    }
  }
  return r;
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + b.times(BigInt(-1)); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (!(a.lay_ == b.lay_)) throw std::invalid_argument("IntPoly: layout mismatch");
  IntPoly r(a.lay_);
  if (a.is_zero() || b.is_zero()) return r;
  std::unordered_map<u64, BigInt> acc;
  acc.reserve(a.terms_.size() + b.terms_.size());
  // iterate with the smaller polynomial innermost
  const IntPoly& big = a.terms_.size() >= b.terms_.size() ? a : b;
  const IntPoly& small = a.terms_.size() >= b.terms_.size() ? b : a;
  for (const auto& [kb, cb] : big.terms_)
    for (const auto& [ks, cs] : small.terms_) acc[kb + ks] += cb * cs;
  r.terms_.reserve(acc.size());
  for (auto& [k, c] : acc)
    if (c != 0) r.terms_.emplace_back(k, std::move(c));
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const IntPoly::Term& x, const IntPoly::Term& y) { return x.first < y.first; });
  return r;
}

IntPoly IntPoly::times(const BigInt& c) const {
  IntPoly r(lay_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& [k, v] : terms_) r.terms_.emplace_back(k, v * c);
  return r;
}

IntPoly IntPoly::pow(u64 e) const {
  IntPoly r = constant(lay_, 1);
  for (u64 k = 0; k < e; ++k) r = r * (*this);
  return r;
}

IntPoly IntPoly::divexact(const BigInt& c) const {
  IntPoly r(lay_);
  r.terms_.reserve(terms_.size());
  for (const auto& [k, v] : terms_) {
    BigInt q = v / c;
    if (q * c != v)
      throw std::logic_error("IntPoly::divexact: non-exact division in ghost solve");
    r.terms_.emplace_back(k, std::move(q));
  }
  return r;
}

u64 IntPoly::eval_mod(std::span<const u64> point, u64 mod) const {
  if (point.size() != lay_.nvars) throw std::invalid_argument("IntPoly::eval_mod: arity");
  const u64 mask = (u64{1} << lay_.bits) - 1;
  std::vector<u64> mx = max_exps();
  std::vector<std::vector<u64>> pows(lay_.nvars);
  for (u32 v = 0; v < lay_.nvars; ++v) {
    pows[v].reserve(mx[v] + 1);
    pows[v].push_back(1 % mod);
    for (u64 e = 1; e <= mx[v]; ++e) pows[v].push_back(mulmod(pows[v].back(), point[v] % mod, mod));
  }
  u64 acc = 0;
  for (const auto& [key, c] : terms_) {
    BigInt red = c % static_cast<long long>(mod);
    long long rl = red.convert_to<long long>();
    u64 term = static_cast<u64>(rl < 0 ? rl + static_cast<long long>(mod) : rl);
    u64 k = key;
    for (u32 v = 0; v < lay_.nvars; ++v, k >>= lay_.bits) {
      u64 e = k & mask;
      if (e) term = mulmod(term, pows[v][e], mod);
    }
    acc = (acc + term) % mod;
  }
  return acc;
}

std::vector<u64> IntPoly::max_exps() const {
  std::vector<u64> mx(lay_.nvars, 0);
  const u64 mask = (u64{1} << lay_.bits) - 1;
  for (const auto& [key, c] : terms_) {
    u64 k = key;
    for (u32 v = 0; v < lay_.nvars; ++v, k >>= lay_.bits)
      mx[v] = std::max(mx[v], k & mask);
  }
  return mx;
}

// --- table construction -----------------------------------------------------

bool expanded_table_supported(u32 p, u32 n) {
  if (n < 1) return false;
  if (n <= 2) return p <= 13;
  if (n == 3) return p <= 13;
  if (n == 4) return p <= 5;
  return false;
}

namespace {

// w_i over one block of variables (offset = 0 for a, n for b):
// sum_j p^j x_j^{p^{i-j}}
IntPoly ghost_poly(KeyLayout lay, u32 p, u32 i, u32 offset) {
  IntPoly g(lay);
  BigInt pj = 1;
  for (u32 j = 0; j <= i; ++j, pj *= p)
    g = g + IntPoly::variable(lay, offset + j, ipow(p, i - j)).times(pj);
  return g;
}

// Incremental power cache: pw[j] = coords[j]^{pe[j]}, raised by repeated
// multiplication with the (small) base polynomial coords[j].  Powering the
// accumulated power against itself would square intermediate sizes.
struct PowerCache {
  std::vector<IntPoly> pw;
  std::vector<u64> pe;
  const std::vector<IntPoly>* base = nullptr;
  void track(const std::vector<IntPoly>& coords) { base = &coords; }
  const IntPoly& at(u32 j, u64 target) {
    while (pw.size() <= j) {
      pw.push_back((*base)[pw.size()]);
      pe.push_back(1);
    }
    while (pe[j] < target) {
      pw[j] = pw[j] * (*base)[j];
      ++pe[j];
    }
    return pw[j];
  }
};

// Solve w_i(C_0..C_i) = rhs_i for C_i, i < n.  rhs(i) supplies the ghost
// right-hand side.  Divisions by p^i must be exact.
template <class RhsFn>
std::vector<IntPoly> ghost_solve(KeyLayout lay, u32 p, u32 n, RhsFn rhs) {
  std::vector<IntPoly> coords;
  PowerCache cache;
  cache.track(coords);
  for (u32 i = 0; i < n; ++i) {
    IntPoly acc(lay);
    BigInt pj = 1;
    for (u32 j = 0; j < i; ++j, pj *= p) acc = acc + cache.at(j, ipow(p, i - j)).times(pj);
    BigInt pi = pj;  // p^i
    coords.push_back((rhs(i) - acc).divexact(pi));
  }
  return coords;
}

// Independent re-expansion of the ghost identity from the stored
// polynomials; throws std::logic_error on any mismatch.
template <class RhsFn>
void verify_symbolic(KeyLayout lay, u32 p, u32 n, const std::vector<IntPoly>& coords, RhsFn rhs,
                     const char* what) {
  PowerCache cache;
  cache.track(coords);
  for (u32 i = 0; i < n; ++i) {
    IntPoly lhs(lay);
    BigInt pj = 1;
    for (u32 j = 0; j < i; ++j, pj *= p) lhs = lhs + cache.at(j, ipow(p, i - j)).times(pj);
    lhs = lhs + coords[i].times(pj);
    if (!((lhs - rhs(i)).is_zero()))
      throw std::logic_error(std::string("WittPolyTable: symbolic ghost identity failed for ") +
                             what);
  }
}

// Ghost identity at random integer points modulo a machine prime.
void verify_random(u32 p, u32 n, const WittPolyTable& t, u32 points, u64 seed) {
  constexpr u64 M = 0x3FFFFFFFFFFFFFC5ull;  // prime below 2^62
  std::mt19937_64 rng(seed);
  KeyLayout lay = t.sum_polys[0].layout();
  for (u32 rep = 0; rep < points; ++rep) {
    std::vector<u64> pt(lay.nvars);
    for (auto& x : pt) x = rng() % M;
    for (u32 i = 0; i < n; ++i) {
      u64 wa = 0, wb = 0, pj = 1;
      for (u32 j = 0; j <= i; ++j, pj *= p) {
        wa = (wa + mulmod(pj % M, powmod(pt[j], ipow(p, i - j), M), M)) % M;
        wb = (wb + mulmod(pj % M, powmod(pt[n + j], ipow(p, i - j), M), M)) % M;
      }
      u64 ws = 0, wp = 0;
      pj = 1;
      for (u32 j = 0; j <= i; ++j, pj *= p) {
        ws = (ws + mulmod(pj % M, powmod(t.sum_polys[j].eval_mod(pt, M), ipow(p, i - j), M), M)) % M;
        wp = (wp + mulmod(pj % M, powmod(t.prod_polys[j].eval_mod(pt, M), ipow(p, i - j), M), M)) %
             M;
      }
      if (ws != (wa + wb) % M)
        throw std::logic_error("WittPolyTable: random-point ghost identity failed (sum)");
      if (wp != mulmod(wa, wb, M))
        throw std::logic_error("WittPolyTable: random-point ghost identity failed (product)");
    }
  }
}

WittPolyTable build_table_impl(u32 p, u32 n) {
  KeyLayout lay{2 * n, 8};
  WittPolyTable t;
  t.p = p;
  t.n = n;
  auto sum_rhs = [&](u32 i) { return ghost_poly(lay, p, i, 0) + ghost_poly(lay, p, i, n); };
  auto prod_rhs = [&](u32 i) { return ghost_poly(lay, p, i, 0) * ghost_poly(lay, p, i, n); };
  t.sum_polys = ghost_solve(lay, p, n, sum_rhs);
  t.prod_polys = ghost_solve(lay, p, n, prod_rhs);
  verify_symbolic(lay, p, n, t.sum_polys, sum_rhs, "sum");
  verify_symbolic(lay, p, n, t.prod_polys, prod_rhs, "product");
  verify_random(p, n, t, /*points=*/100, /*seed=*/0x5eedbeefu + p * 100 + n);
  return t;
}

struct TableCache {
  std::mutex mu;
  std::map<std::pair<u32, u32>, std::unique_ptr<WittPolyTable>> tables;
};

TableCache& table_cache() {
  static TableCache* c = new TableCache;
  return *c;
}

}  // namespace

const WittPolyTable& build_witt_table(u32 p, u32 n) {
  if (n < 1) throw std::invalid_argument("build_witt_table: n must be >= 1");
  if (!expanded_table_supported(p, n))
    throw std::invalid_argument(
        "build_witt_table: (p, n) outside the expanded-table envelope "
        "(n <= 3 for p <= 13, n <= 4 for p <= 5)");
  TableCache& cache = table_cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.tables.find({p, n});
    if (it != cache.tables.end()) return *it->second;
  }
  // build outside the lock; first builder wins, losers reuse
  auto built = std::make_unique<WittPolyTable>(build_table_impl(p, n));
  std::lock_guard<std::mutex> lock(cache.mu);
  auto [it, inserted] = cache.tables.emplace(std::make_pair(p, n), std::move(built));
  return *it->second;
}

CompiledPoly compile_mod_p(const IntPoly& f, u32 p) {
  CompiledPoly out;
  out.lay = f.layout();
  auto mx = f.max_exps();
  out.max_exp.assign(mx.begin(), mx.end());
  for (const auto& [key, c] : f.terms()) {
    BigInt r = c % p;
    long long rl = r.convert_to<long long>();
    u32 cm = static_cast<u32>(rl < 0 ? rl + p : rl);
    if (cm != 0) out.terms.push_back({key, cm});
  }
  // max exponents over surviving terms only
  std::fill(out.max_exp.begin(), out.max_exp.end(), 0u);
  const u64 mask = (u64{1} << out.lay.bits) - 1;
  for (const auto& t : out.terms) {
    u64 k = t.key;
    for (u32 v = 0; v < out.lay.nvars; ++v, k >>= out.lay.bits)
      out.max_exp[v] = std::max<u32>(out.max_exp[v], static_cast<u32>(k & mask));
  }
  return out;
}

// --- carry polynomials -------------------------------------------------------
//
// theta_k(u, v) = coordinate k of [u] + [v], homogeneous of degree p^k.
// Built with coefficients mod p^n using the ghost recursion; dividing by p^k
// leaves k fewer tracked digits, so theta_k comes out valid mod p^{n-k} and
// in particular exactly mod p, which is all the fold evaluation needs.

namespace {

// dense homogeneous 2-variable polynomial: c[e] is the coefficient of
// u^e v^{deg-e}, reduced mod `mod`
struct Homog {
  u64 deg = 0;
  std::vector<u64> c;  // size deg + 1
};

Homog homog_mul(const Homog& a, const Homog& b, u64 mod) {
  Homog r;
  r.deg = a.deg + b.deg;
  r.c.assign(r.deg + 1, 0);
  for (u64 i = 0; i <= a.deg; ++i) {
    if (a.c[i] == 0) continue;
    for (u64 j = 0; j <= b.deg; ++j)
      r.c[i + j] = (r.c[i + j] + mulmod(a.c[i], b.c[j], mod)) % mod;
  }
  return r;
}

Homog homog_pow(const Homog& a, u64 e, u64 mod) {
  Homog r{0, {1 % mod}};
  for (u64 k = 0; k < e; ++k) r = homog_mul(r, a, mod);
  return r;
}

std::vector<CarryPoly> build_carries(u32 p, u32 n) {
  std::vector<CarryPoly> out;
  if (n < 2) return out;
  const u64 mod = ipow(p, n);  // p^n fits u64 for p <= 13, n <= 8
  std::vector<Homog> theta(n);
  theta[0] = Homog{1, {1, 1}};  // u + v
  for (u32 k = 1; k < n; ++k) {
    const u64 deg = ipow(p, k);
    // numerator = u^{p^k} + v^{p^k} - sum_{j<k} p^j theta_j^{p^{k-j}}
    std::vector<u64> num(deg + 1, 0);
    num[deg] = (num[deg] + 1) % mod;
    num[0] = (num[0] + 1) % mod;
    u64 pj = 1;
    for (u32 j = 0; j < k; ++j, pj *= p) {
      Homog tp = homog_pow(theta[j], ipow(p, k - j), mod);
      for (u64 e = 0; e <= deg; ++e)
        num[e] = (num[e] + mod - mulmod(pj % mod, tp.c[e], mod) % mod) % mod;
    }
    const u64 pk = ipow(p, k);
    theta[k].deg = deg;
    theta[k].c.assign(deg + 1, 0);
    for (u64 e = 0; e <= deg; ++e) {
      if (num[e] % pk != 0)
        throw std::logic_error("witt carries: non-exact division in ghost solve");
      theta[k].c[e] = (num[e] / pk) % (mod / pk);
    }
    CarryPoly cp;
    cp.deg = deg;
    for (u64 e = 0; e <= deg; ++e) {
      u32 cm = static_cast<u32>(theta[k].c[e] % p);
      if (cm != 0) cp.terms.emplace_back(e, cm);
    }
    out.push_back(std::move(cp));
  }
  return out;
}

struct ContextCacheStore {
  std::mutex mu;
  std::map<std::pair<u32, u32>, std::unique_ptr<WittContext>> ctxs;
};

ContextCacheStore& context_cache() {
  static ContextCacheStore* c = new ContextCacheStore;
  return *c;
}

}  // namespace

WittContext::WittContext(u32 p, u32 n) : p_(p), n_(n) {
  if (n < 1 || n > 8) throw std::invalid_argument("WittContext: length must be in [1, 8]");
  if (expanded_table_supported(p, n)) {
    table_ = &build_witt_table(p, n);
    sum_modp_.reserve(n);
    prod_modp_.reserve(n);
    for (u32 i = 0; i < n; ++i) {
      sum_modp_.push_back(compile_mod_p(table_->sum_polys[i], p));
      prod_modp_.push_back(compile_mod_p(table_->prod_polys[i], p));
    }
  }
  carries_ = build_carries(p, n);
}

const WittContext& WittContext::get(u32 p, u32 n) {
  ContextCacheStore& cache = context_cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.ctxs.find({p, n});
    if (it != cache.ctxs.end()) return *it->second;
  }
  auto built = std::unique_ptr<WittContext>(new WittContext(p, n));
  std::lock_guard<std::mutex> lock(cache.mu);
  auto [it, inserted] = cache.ctxs.emplace(std::make_pair(p, n), std::move(built));
  return *it->second;
}

}  // namespace strata::witt
