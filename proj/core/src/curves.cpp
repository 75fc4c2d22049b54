#include "strata/curves.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace strata::curves {

using fields::FiniteField;
using fields::Poly;
using semilinear::FqMatrix;

Genus2Curve::Genus2Curve(const FiniteField& F, Poly f) : F_(&F), f_(std::move(f)) {
  if (&f_.field() != &F) throw std::invalid_argument("Genus2Curve: field mismatch");
  if (f_.deg() != 5 && f_.deg() != 6)
    throw std::invalid_argument("Genus2Curve: f must have degree 5 or 6");
  Poly g = poly_gcd(f_, poly_derivative(f_));
  if (g.deg() != 0)
    throw std::invalid_argument("Genus2Curve: f must be squarefree (gcd(f, f') = 1)");
}

EllipticCurve::EllipticCurve(const FiniteField& F, u32 a, u32 b) : F_(&F), a_(a), b_(b) {
  u32 disc = F.add(F.mul(F.from_int(4), F.pow(a, 3)), F.mul(F.from_int(27), F.mul(b, b)));
  if (disc == 0) throw std::invalid_argument("EllipticCurve: 4a^3 + 27b^2 = 0 (singular)");
}

Poly EllipticCurve::rhs() const { return Poly(*F_, {b_, a_, 0, 1}); }

const char* to_string(CaseType t) {
  switch (t) {
    case CaseType::Ordinary: return "ordinary";
    case CaseType::PRank1: return "pRank1";
    case CaseType::SsNotSuperspecial: return "ssNotSuperspecial";
    case CaseType::Superspecial: return "superspecial";
  }
  return "?";
}

CaseType case_type_from_string(const std::string& s) {
  if (s == "ordinary") return CaseType::Ordinary;
  if (s == "pRank1") return CaseType::PRank1;
  if (s == "ssNotSuperspecial") return CaseType::SsNotSuperspecial;
  if (s == "superspecial") return CaseType::Superspecial;
  throw std::invalid_argument("unknown case type: " + s);
}

FqMatrix cartier_manin_from_poly(const Poly& f, u32 genus) {
  const FiniteField& F = f.field();
  const u32 p = F.p();
  Poly h = poly_power(f, (p - 1) / 2);
  FqMatrix M(F, genus, genus);
  for (u32 i = 1; i <= genus; ++i)
    for (u32 j = 1; j <= genus; ++j)
      M.set(i - 1, j - 1, h.coeff(static_cast<int>(i * p - j)));
  return M;
}

FqMatrix cartier_manin_matrix(const Genus2Curve& C) {
  return cartier_manin_from_poly(C.f(), 2);
}

u32 hasse_invariant(const EllipticCurve& E) {
  const u32 p = E.field().p();
  Poly h = poly_power(E.rhs(), (p - 1) / 2);
  return h.coeff(static_cast<int>(p - 1));
}

u32 p_rank(const Genus2Curve& C) {
  return semilinear::stable_rank(semilinear::make_sigma_linear(cartier_manin_matrix(C), 1));
}

u32 a_number(const Genus2Curve& C) {
  return 2 - semilinear::rank(cartier_manin_matrix(C));
}

// --- point counting ---------------------------------------------------------

namespace {

// cached embedding F_q -> F_{q^m}: image codes indexed by base code
struct EmbeddingCache {
  std::mutex mu;
  std::map<std::pair<const FiniteField*, const FiniteField*>, std::unique_ptr<std::vector<u32>>>
      maps;
};

EmbeddingCache& embedding_cache() {
  static EmbeddingCache* c = new EmbeddingCache;
  return *c;
}

const std::vector<u32>& embedding(const FiniteField& base, const FiniteField& ext) {
  EmbeddingCache& cache = embedding_cache();
  std::lock_guard<std::mutex> lock(cache.mu);
  auto key = std::make_pair(&base, &ext);
  auto it = cache.maps.find(key);
  if (it != cache.maps.end()) return *it->second;

  auto table = std::make_unique<std::vector<u32>>(base.q(), 0);
  if (base.degree() == 1) {
    // prime subfield: codes agree
    for (u32 c = 0; c < base.q(); ++c) (*table)[c] = c;
  } else {
    // send t to a root of the base modulus in the extension
    const auto& mod = base.spec().modulus;
    u32 root = 0;
    bool found = false;
    for (u32 cand = 0; cand < ext.q(); ++cand) {
      u32 acc = 0;
      for (size_t k = mod.size(); k-- > 0;) acc = ext.add(ext.mul(acc, cand), mod[k]);
      if (acc == 0) { root = cand; found = true; break; }
    }
    if (!found) throw std::logic_error("embedding: modulus has no root in extension");
    for (u32 c = 0; c < base.q(); ++c) {
      std::vector<u32> digits = base.decode(c);
      u32 acc = 0;
      for (size_t k = digits.size(); k-- > 0;) acc = ext.add(ext.mul(acc, root), digits[k]);
      (*table)[c] = acc;
    }
  }
  return *cache.maps.emplace(key, std::move(table)).first->second;
}

u64 count_affine(const FiniteField& K, const Poly& f_in_K) {
  u64 n = 0;
  for (u32 x = 0; x < K.q(); ++x) {
    int chi = K.chi(f_in_K.eval(x));
    n += static_cast<u64>(1 + chi);
  }
  return n;
}

u64 points_at_infinity(const FiniteField& K, const Poly& f_in_K) {
  if (f_in_K.deg() == 5) return 1;
  // smooth model of a sextic: two points iff the leading coefficient is a
  // square in K, none otherwise (they are conjugate over the extension)
  return K.chi(f_in_K.lead()) == 1 ? 2 : 0;
}

Poly map_poly(const Poly& f, const FiniteField& K, const std::vector<u32>& emb) {
  std::vector<u32> c(f.coeffs().size());
  for (size_t k = 0; k < c.size(); ++k) c[k] = emb[f.coeffs()[k]];
  return Poly(K, std::move(c));
}

}  // namespace

u64 count_points(const Genus2Curve& C, u32 m) {
  if (m != 1 && m != 2) throw std::invalid_argument("count_points: m must be 1 or 2");
  const FiniteField& F = C.field();
  if (m == 1) return count_affine(F, C.f()) + points_at_infinity(F, C.f());
  const FiniteField& K = FiniteField::get(F.p(), 2 * F.degree());
  Poly fK = map_poly(C.f(), K, embedding(F, K));
  return count_affine(K, fK) + points_at_infinity(K, fK);
}

u64 count_points(const EllipticCurve& E) {
  const FiniteField& F = E.field();
  return count_affine(F, E.rhs()) + 1;  // one point at infinity
}

long long trace_of_frobenius(const EllipticCurve& E) {
  return static_cast<long long>(E.field().q()) + 1 - static_cast<long long>(count_points(E));
}

LPolynomial l_polynomial(const Genus2Curve& C) {
  const FiniteField& F = C.field();
  const long long q = F.q();
  const long long N1 = static_cast<long long>(count_points(C, 1));
  const long long N2 = static_cast<long long>(count_points(C, 2));
  const long long a1 = N1 - (q + 1);
  const long long num = N2 - q * q - 1 + a1 * a1;
  if (num % 2 != 0)
    throw std::logic_error("l_polynomial: non-integer a2 (point counting bug)");
  const long long a2 = num / 2;
  LPolynomial L;
  L.p = F.p();
  L.d = F.degree();
  L.q = static_cast<u64>(q);
  L.genus = 2;
  L.coeffs = {1, a1, a2, q * a1, q * q};
  return L;
}

LPolynomial l_polynomial(const EllipticCurve& E) {
  const FiniteField& F = E.field();
  const long long q = F.q();
  const long long a1 = static_cast<long long>(count_points(E)) - (q + 1);
  LPolynomial L;
  L.p = F.p();
  L.d = F.degree();
  L.q = static_cast<u64>(q);
  L.genus = 1;
  L.coeffs = {1, a1, q};
  return L;
}

std::vector<Slope> newton_slopes(const LPolynomial& L) {
  // lower convex hull of (i, v_p(c_i)); hull slopes are the valuations of
  // the reciprocal roots, normalized by d
  struct Pt {
    long long x, y;
  };
  std::vector<Pt> pts;
  for (size_t i = 0; i < L.coeffs.size(); ++i) {
    long long c = L.coeffs[i];
    if (c == 0) continue;
    long long v = 0;
    while (c % static_cast<long long>(L.p) == 0) {
      c /= L.p;
      ++v;
    }
    pts.push_back({static_cast<long long>(i), v});
  }
  std::vector<Pt> hull;
  for (const Pt& pt : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull[hull.size() - 1];
      // drop b if it lies on or above segment a-pt
      if ((b.y - a.y) * (pt.x - a.x) >= (pt.y - a.y) * (b.x - a.x))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  std::vector<Slope> slopes;
  for (size_t s = 1; s < hull.size(); ++s) {
    long long run = hull[s].x - hull[s - 1].x;
    long long rise = hull[s].y - hull[s - 1].y;
    long long den = run * static_cast<long long>(L.d);
    long long g = std::gcd(std::abs(rise), std::abs(den));
    if (g == 0) g = 1;
    for (long long k = 0; k < run; ++k) slopes.push_back(Slope{rise / g, den / g});
  }
  return slopes;
}

bool weil_moduli_ok(const LPolynomial& L, double tol) {
  // The functional equation is structural, so the reciprocal roots come in
  // pairs alpha, q/alpha and closed-form quadratic solves reach every root
  // modulus at machine precision (no iteration, no trouble with repeated
  // roots).  Genus 1: roots of 1 + a1 T + q T^2 directly.  Genus 2: pass to
  // the palindromic normalization s = sqrt(q) T and split off
  // u = s + 1/s, a quadratic in u followed by s^2 - u s + 1 = 0.
  using C = std::complex<double>;
  const double rq = std::sqrt(static_cast<double>(L.q));
  std::vector<C> recip_roots;  // the alpha_i
  auto quad_roots = [](C b, C c) {  // z^2 + b z + c
    C disc = std::sqrt(b * b - 4.0 * c);
    return std::pair<C, C>{(-b + disc) / 2.0, (-b - disc) / 2.0};
  };
  if (L.genus == 1) {
    // alpha satisfies alpha^2 - a1' alpha + q with a1' = -a1
    auto [r1, r2] = quad_roots(C(static_cast<double>(L.coeffs[1]), 0),
                               C(static_cast<double>(L.q), 0));
    recip_roots = {r1, r2};
  } else {
    const double a1 = static_cast<double>(L.coeffs[1]);
    const double a2 = static_cast<double>(L.coeffs[2]);
    auto [u1, u2] = quad_roots(C(a1 / rq, 0), C(a2 / static_cast<double>(L.q) - 2.0, 0));
    for (C u : {u1, u2}) {
      auto [s1, s2] = quad_roots(-u, C(1, 0));
      // alpha = sqrt(q) / s (roots of L in T are s / sqrt(q))
      recip_roots.push_back(rq / s1);
      recip_roots.push_back(rq / s2);
    }
  }
  for (const C& a : recip_roots)
    if (std::abs(std::abs(a) - rq) > tol * rq) return false;
  return true;
}

namespace {

std::string matrix_str(const FqMatrix& M) {
  std::ostringstream os;
  os << "[";
  for (u32 i = 0; i < M.rows(); ++i) {
    os << "[";
    for (u32 j = 0; j < M.cols(); ++j) os << (j ? "," : "") << M.at(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace

ClassificationRecord classify(const Genus2Curve& C, bool verify) {
  ClassificationRecord rec;
  rec.cartier_manin = cartier_manin_matrix(C);
  auto sig = semilinear::make_sigma_linear(rec.cartier_manin, 1);
  rec.p_rank = semilinear::stable_rank(sig);
  rec.a_number = 2 - semilinear::rank(rec.cartier_manin);
  switch (rec.p_rank) {
    case 2:
      rec.height = Height::of(1);
      rec.case_type = CaseType::Ordinary;
      break;
    case 1:
      rec.height = Height::of(2);
      rec.case_type = CaseType::PRank1;
      break;
    default:
      rec.height = Height::inf();
      rec.case_type =
          rec.a_number == 2 ? CaseType::Superspecial : CaseType::SsNotSuperspecial;
      break;
  }

  if (verify) {
    LPolynomial L = l_polynomial(C);
    std::vector<Slope> slopes = newton_slopes(L);
    u32 zero_slopes = 0, half_slopes = 0;
    for (const Slope& s : slopes) {
      if (s.num == 0) ++zero_slopes;
      if (s.num * 2 == s.den) ++half_slopes;
    }
    const u64 q = C.field().q();
    const long long N1 = L.a1() + static_cast<long long>(q) + 1;
    const double bound = 4.0 * std::sqrt(static_cast<double>(q));  // 2g sqrt(q)
    std::ostringstream why;
    if (zero_slopes != rec.p_rank)
      why << "zero-slope count " << zero_slopes << " != Cartier-Manin p-rank " << rec.p_rank;
    else if ((half_slopes == slopes.size()) != (rec.p_rank == 0))
      why << "all-1/2 slopes " << (half_slopes == slopes.size()) << " != supersingular "
          << (rec.p_rank == 0);
    else if (std::abs(static_cast<double>(N1 - static_cast<long long>(q) - 1)) > bound)
      why << "Weil bound violated: N1 = " << N1;
    else if (!weil_moduli_ok(L))
      why << "reciprocal root moduli differ from sqrt(q)";
    if (!why.str().empty()) {
      std::ostringstream os;
      os << "oracle disagreement for y^2 = " << poly_to_string(C.f()) << " over F_"
         << C.field().q() << ": " << why.str() << "; cartier_manin = "
         << matrix_str(rec.cartier_manin) << ", L = [";
      for (size_t k = 0; k < L.coeffs.size(); ++k) os << (k ? "," : "") << L.coeffs[k];
      os << "]";
      throw OracleDisagreement(os.str());
    }
    rec.l_poly = std::move(L);
    rec.slopes = std::move(slopes);
  }
  return rec;
}

EllipticRecord classify(const EllipticCurve& E, bool verify) {
  EllipticRecord rec;
  rec.hasse = hasse_invariant(E);
  rec.p_rank = rec.hasse != 0 ? 1 : 0;
  rec.a_number = 1 - rec.p_rank;
  rec.supersingular = rec.p_rank == 0;
  rec.height = rec.supersingular ? Height::of(2) : Height::of(1);
  if (verify) {
    long long ap = trace_of_frobenius(E);
    bool ss_count = (ap % static_cast<long long>(E.field().p())) == 0;
    if (ss_count != rec.supersingular) {
      std::ostringstream os;
      os << "oracle disagreement for y^2 = x^3+" << E.a() << "x+" << E.b() << " over F_"
         << E.field().q() << ": hasse = " << rec.hasse << " but a_p = " << ap;
      throw OracleDisagreement(os.str());
    }
    rec.a_p = ap;
  }
  return rec;
}

}  // namespace strata::curves
