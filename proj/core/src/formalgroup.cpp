#include "strata/formalgroup.hpp"

#include <stdexcept>

namespace strata::formalgroup {

using fields::FiniteField;

u32 default_precision(u32 p) { return p * p + 4; }

Series2::Series2(const FiniteField& F, u32 N)
    : F_(&F), N_(N), c_(static_cast<size_t>(N + 1) * (N + 2) / 2, 0) {}

Series2 operator+(const Series2& a, const Series2& b) {
  Series2 r(*a.F_, a.N_);
  for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.F_->add(a.c_[k], b.c_[k]);
  return r;
}

Series2 operator-(const Series2& a, const Series2& b) {
  Series2 r(*a.F_, a.N_);
  for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.F_->sub(a.c_[k], b.c_[k]);
  return r;
}

Series2 operator*(const Series2& a, const Series2& b) {
  const FiniteField& F = *a.F_;
  const u32 N = a.N_;
  Series2 r(F, N);
  for (u32 i1 = 0; i1 <= N; ++i1)
    for (u32 j1 = 0; i1 + j1 <= N; ++j1) {
      u32 x = a.at(i1, j1);
      if (x == 0) continue;
      const u32 rem = N - i1 - j1;
      for (u32 i2 = 0; i2 <= rem; ++i2)
        for (u32 j2 = 0; i2 + j2 <= rem; ++j2) {
          u32 y = b.at(i2, j2);
          if (y == 0) continue;
          u32 i = i1 + i2, j = j1 + j2;
          r.set(i, j, F.add(r.at(i, j), F.mul(x, y)));
        }
    }
  return r;
}

Series2 Series2::scaled(u32 s) const {
  Series2 r(*F_, N_);
  for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = F_->mul(c_[k], s);
  return r;
}

Series2 Series2::inverse() const {
  const FiniteField& F = *F_;
  if (at(0, 0) == 0) throw std::domain_error("Series2::inverse: constant term is zero");
  Series2 one(F, N_);
  one.set(0, 0, 1);
  Series2 inv(F, N_);
  inv.set(0, 0, F.inv(at(0, 0)));
  // Newton iteration doubles the correct order each step
  u32 correct = 1;
  while (correct <= N_) {
    inv = inv + inv * (one - (*this) * inv);
    correct *= 2;
  }
  if (!((*this) * inv == one)) throw std::logic_error("Series2::inverse: iteration failed");
  return inv;
}

namespace {

// trivariate series of total degree <= N, slab-per-X-exponent storage
class Series3 {
 public:
  Series3(const FiniteField& F, u32 N) : F_(&F), N_(N) {
    off_.resize(N + 2, 0);
    for (u32 i = 0; i <= N; ++i)
      off_[i + 1] = off_[i] + static_cast<size_t>(N - i + 1) * (N - i + 2) / 2;
    c_.assign(off_[N + 1], 0);
  }
  void add_at(u32 i, u32 j, u32 k, u32 v) {
    size_t t = idx(i, j, k);
    c_[t] = F_->add(c_[t], v);
  }
  friend bool operator==(const Series3&, const Series3&) = default;

 private:
  size_t idx(u32 i, u32 j, u32 k) const {
    const u32 M = N_ - i;
    return off_[i] + static_cast<size_t>(j) * (M + 1) - static_cast<size_t>(j) * (j - 1) / 2 + k;
  }
  const FiniteField* F_;
  u32 N_;
  std::vector<size_t> off_;
  std::vector<u32> c_;
};

std::vector<Series2> law_powers(const Series2& A, u32 N) {
  std::vector<Series2> pw;
  pw.reserve(N + 1);
  Series2 one(A.field(), N);
  one.set(0, 0, 1);
  pw.push_back(one);
  for (u32 u = 1; u <= N; ++u) pw.push_back(pw.back() * A);
  return pw;
}

void check_group_law(const FormalGroupLaw& G) {
  const Series2& L = G.law;
  const u32 N = G.N;
  if (L.at(0, 0) != 0) throw std::logic_error("formal group law: nonzero constant term");
  for (u32 i = 0; i <= N; ++i) {
    if (L.at(i, 0) != (i == 1 ? 1u : 0u))
      throw std::logic_error("formal group law: F(X,0) != X");
    if (L.at(0, i) != (i == 1 ? 1u : 0u))
      throw std::logic_error("formal group law: F(0,Y) != Y");
  }
  for (u32 i = 0; i <= N; ++i)
    for (u32 j = 0; i + j <= N; ++j)
      if (L.at(i, j) != L.at(j, i))
        throw std::logic_error("formal group law: F(X,Y) != F(Y,X)");

  // associativity: F(F(X,Y), Z) == F(X, F(Y,Z)) to total degree N
  const FiniteField& F = *G.F;
  std::vector<Series2> pw = law_powers(L, N);
  Series3 lhs(F, N), rhs(F, N);
  for (u32 u = 0; u <= N; ++u)
    for (u32 z = 0; u + z <= N; ++z) {
      u32 c = L.at(u, z);
      if (c == 0) continue;
      const Series2& Au = pw[u];
      for (u32 i = 0; i <= N - z; ++i)
        for (u32 j = 0; i + j <= N - z; ++j) {
          u32 v = Au.at(i, j);
          if (v) lhs.add_at(i, j, z, F.mul(c, v));
        }
    }
  for (u32 x = 0; x <= N; ++x)
    for (u32 v = 0; x + v <= N; ++v) {
      u32 c = L.at(x, v);
      if (c == 0) continue;
      const Series2& Bv = pw[v];
      for (u32 j = 0; j <= N - x; ++j)
        for (u32 k = 0; j + k <= N - x; ++k) {
          u32 w = Bv.at(j, k);
          if (w) rhs.add_at(x, j, k, F.mul(c, w));
        }
    }
  if (!(lhs == rhs))
    throw std::logic_error("formal group law: associativity check failed");
}

}  // namespace

FormalGroupLaw multiplicative_fgl(const FiniteField& F, u32 N) {
  if (N < F.p()) throw std::invalid_argument("multiplicative_fgl: need N >= p");
  FormalGroupLaw G{&F, N, Series2(F, N)};
  G.law.set(1, 0, 1);
  G.law.set(0, 1, 1);
  if (N >= 2) G.law.set(1, 1, 1);
  check_group_law(G);
  return G;
}

FormalGroupLaw additive_fgl(const FiniteField& F, u32 N) {
  if (N < F.p()) throw std::invalid_argument("additive_fgl: need N >= p");
  FormalGroupLaw G{&F, N, Series2(F, N)};
  G.law.set(1, 0, 1);
  G.law.set(0, 1, 1);
  check_group_law(G);
  return G;
}

FormalGroupLaw elliptic_fgl(const curves::EllipticCurve& E, u32 N) {
  const FiniteField& F = E.field();
  if (N < F.p() * F.p() + 1)
    throw std::invalid_argument("elliptic_fgl: need N >= p^2 + 1");
  const u32 a = E.a(), b = E.b();

  // w(z) = z^3 + a z w^2 + b w^3, solved by fixed-point iteration; w needs
  // coefficients up to degree N + 1 to feed the divided difference
  const u32 M = N + 1;
  std::vector<u32> w(M + 1, 0);
  if (M >= 3) w[3] = 1;
  auto mul1 = [&](const std::vector<u32>& x, const std::vector<u32>& y) {
    std::vector<u32> r(M + 1, 0);
    for (u32 i = 0; i <= M; ++i) {
      if (x[i] == 0) continue;
      for (u32 j = 0; i + j <= M; ++j)
        if (y[j]) r[i + j] = F.add(r[i + j], F.mul(x[i], y[j]));
    }
    return r;
  };
  auto step = [&](const std::vector<u32>& cur) {
    std::vector<u32> w2 = mul1(cur, cur);
    std::vector<u32> w3 = mul1(w2, cur);
    std::vector<u32> next(M + 1, 0);
    if (M >= 3) next[3] = 1;
    for (u32 k = 0; k + 1 <= M; ++k)
      next[k + 1] = F.add(next[k + 1], F.mul(a, w2[k]));  // a z w^2
    for (u32 k = 0; k <= M; ++k) next[k] = F.add(next[k], F.mul(b, w3[k]));  // b w^3
    return next;
  };
  for (u32 it = 0; it <= M + 1; ++it) {
    std::vector<u32> next = step(w);
    bool stable = next == w;
    w = std::move(next);
    if (stable) break;
    if (it == M + 1)
      throw std::logic_error("elliptic_fgl: w-series iteration failed to stabilize");
  }

  // lambda(z1, z2) = (w(z2) - w(z1)) / (z2 - z1): coefficient of z1^i z2^j
  // is w_{i+j+1}; nu = w(z1) - lambda z1
  Series2 lam(F, N), nu(F, N);
  for (u32 i = 0; i <= N; ++i)
    for (u32 j = 0; i + j <= N; ++j) {
      lam.set(i, j, w[i + j + 1]);
      u32 v = (j == 0) ? w[i] : 0;
      if (i >= 1) v = F.sub(v, lam.at(i - 1, j));
      nu.set(i, j, v);
    }

  // chord-and-invert for y^2 = x^3 + ax + b:
  //   z3 = -z1 - z2 - (2a lam nu + 3b lam^2 nu) / (1 + a lam^2 + b lam^3)
  //   F(z1, z2) = -z3
  Series2 lam2 = lam * lam;
  Series2 lam3 = lam2 * lam;
  Series2 numer = (lam * nu).scaled(F.mul(F.from_int(2), a)) +
                  (lam2 * nu).scaled(F.mul(F.from_int(3), b));
  Series2 denom = lam2.scaled(a) + lam3.scaled(b);
  denom.set(0, 0, F.add(denom.at(0, 0), 1));
  Series2 frac = numer * denom.inverse();

  FormalGroupLaw G{&F, N, frac};
  G.law.set(1, 0, F.add(G.law.at(1, 0), 1));
  G.law.set(0, 1, F.add(G.law.at(0, 1), 1));
  check_group_law(G);
  return G;
}

namespace {

// F(t, g(t)) for univariate g with g(0) = 0
Series1 compose_t(const FormalGroupLaw& G, const Series1& g) {
  const FiniteField& F = *G.F;
  const u32 N = G.N;
  std::vector<Series1> gpow;
  gpow.reserve(N + 1);
  Series1 one(F, N);
  one.c[0] = 1;
  gpow.push_back(one);
  for (u32 j = 1; j <= N; ++j) {
    Series1 nxt(F, N);
    const Series1& prev = gpow.back();
    for (u32 x = 0; x <= N; ++x) {
      if (prev.c[x] == 0) continue;
      for (u32 y = 0; x + y <= N; ++y)
        if (g.c[y]) nxt.c[x + y] = F.add(nxt.c[x + y], F.mul(prev.c[x], g.c[y]));
    }
    gpow.push_back(std::move(nxt));
  }
  Series1 out(F, N);
  for (u32 i = 0; i <= N; ++i)
    for (u32 j = 0; i + j <= N; ++j) {
      u32 c = G.law.at(i, j);
      if (c == 0) continue;
      const Series1& gj = gpow[j];
      for (u32 k = 0; i + k <= N; ++k)
        if (gj.c[k]) out.c[i + k] = F.add(out.c[i + k], F.mul(c, gj.c[k]));
    }
  return out;
}

}  // namespace

Series1 m_series(const FormalGroupLaw& G, u32 m) {
  const FiniteField& F = *G.F;
  Series1 g(F, G.N);
  if (m == 0) return g;
  g.c[1] = 1;
  for (u32 k = 2; k <= m; ++k) g = compose_t(G, g);
  return g;
}

PSeries p_series(const FormalGroupLaw& G) {
  Series1 g = m_series(G, G.F->p());
  PSeries s;
  s.F = G.F;
  s.N = G.N;
  s.c = std::move(g.c);
  if (s.c[0] != 0 || s.c[1] != 0)
    throw std::logic_error("p_series: [p](t) must vanish mod (p, t^2)");
  return s;
}

Series1 substitute(const FormalGroupLaw& G, const Series1& g1, const Series1& g2) {
  const FiniteField& F = *G.F;
  const u32 N = G.N;
  auto powers = [&](const Series1& g) {
    std::vector<Series1> pw;
    Series1 one(F, N);
    one.c[0] = 1;
    pw.push_back(one);
    for (u32 j = 1; j <= N; ++j) {
      Series1 nxt(F, N);
      const Series1& prev = pw.back();
      for (u32 x = 0; x <= N; ++x) {
        if (prev.c[x] == 0) continue;
        for (u32 y = 0; x + y <= N; ++y)
          if (g.c[y]) nxt.c[x + y] = F.add(nxt.c[x + y], F.mul(prev.c[x], g.c[y]));
      }
      pw.push_back(std::move(nxt));
    }
    return pw;
  };
  std::vector<Series1> p1 = powers(g1), p2 = powers(g2);
  Series1 out(F, N);
  for (u32 i = 0; i <= N; ++i)
    for (u32 j = 0; i + j <= N; ++j) {
      u32 c = G.law.at(i, j);
      if (c == 0) continue;
      for (u32 x = 0; x <= N; ++x) {
        u32 v1 = p1[i].c[x];
        if (v1 == 0) continue;
        u32 cv = F.mul(c, v1);
        for (u32 y = 0; x + y <= N; ++y)
          if (p2[j].c[y]) out.c[x + y] = F.add(out.c[x + y], F.mul(cv, p2[j].c[y]));
      }
    }
  return out;
}

Series1 formal_inverse(const FormalGroupLaw& G) {
  const FiniteField& F = *G.F;
  const u32 N = G.N;
  Series1 iota(F, N);
  iota.c[1] = F.neg(1);
  for (u32 k = 2; k <= N; ++k) {
    Series1 r = compose_t(G, iota);
    // residual starts at degree k; F(t, iota + c t^k) = F(t, iota) + c t^k + ...
    iota.c[k] = F.sub(iota.c[k], r.c[k]);
  }
  Series1 r = compose_t(G, iota);
  if (!r.is_zero()) throw std::logic_error("formal_inverse: solve failed");
  return iota;
}

Height height_of(const PSeries& s) {
  const u32 p = s.F->p();
  if (s.N < p * p + 1)
    throw std::invalid_argument("height_of: need precision >= p^2 + 1");
  auto v = s.valuation();
  if (!v) return Height::inf();
  u32 val = *v, h = 0;
  while (val % p == 0) {
    val /= p;
    ++h;
  }
  if (val != 1 || h == 0)
    throw std::domain_error("height_of: [p]-series valuation is not a power of p");
  return Height::of(h);
}

Height elliptic_height(const curves::EllipticCurve& E) {
  const u32 p = E.field().p();
  FormalGroupLaw G = elliptic_fgl(E, default_precision(p));
  PSeries s = p_series(G);
  auto v = s.valuation();
  if (!v || *v > p * p)
    throw std::logic_error("elliptic_height: valuation escaped {p, p^2} (series bug)");
  return height_of(s);
}

}  // namespace strata::formalgroup
