#include "strata/witt.hpp"

#include <random>

namespace strata::witt {

namespace {

u64 ipow(u64 b, u32 e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

fields::TruncatedDiffElem truncate_to(const fields::TruncatedDiffElem& x, u32 m) {
  std::vector<u32> c(x.dense().begin(), x.dense().begin() + m);
  return fields::TruncatedDiffElem(x.field(), m, std::move(c));
}

}  // namespace

WittDifferential serre_D(const TruncRing& R, const WittVec<TruncRing>& a, u32 i) {
  if (a.n != i) throw std::invalid_argument("serre_D: vector length must equal i");
  if (i < 1) throw std::invalid_argument("serre_D: i must be >= 1");
  if (R.m < 2) throw std::invalid_argument("serre_D: truncation order must be >= 2");
  const u32 p = R.char_p();
  fields::TruncatedDiffElem acc(*R.F, R.m - 1);
  for (u32 j = 0; j < i; ++j) {
    u64 e = ipow(p, i - 1 - j) - 1;
    fields::TruncatedDiffElem factor = truncate_to(R.pow_u(a.coords[j], e), R.m - 1);
    acc = acc + factor * formal_derivative(a.coords[j]);
  }
  return WittDifferential{acc};
}

namespace {

template <class Ring>
WittVec<Ring> random_witt(const Ring& R, u32 p, u32 n, std::mt19937_64& rng);

WittVec<FqRing> random_witt_fq(const FqRing& R, u32 n, std::mt19937_64& rng) {
  std::vector<u32> c(n);
  for (auto& x : c) x = static_cast<u32>(rng() % R.F->q());
  return make_witt(R, std::move(c));
}

WittVec<TruncRing> random_witt_trunc(const TruncRing& R, u32 n, std::mt19937_64& rng) {
  std::vector<fields::TruncatedDiffElem> c;
  c.reserve(n);
  for (u32 j = 0; j < n; ++j) {
    std::vector<u32> coeffs(R.m);
    for (auto& x : coeffs) x = static_cast<u32>(rng() % R.F->q());
    c.emplace_back(*R.F, R.m, std::move(coeffs));
  }
  return make_witt(R, std::move(c));
}

template <class Ring>
WittVec<Ring> negate_coords(const Ring& R, const WittVec<Ring>& a) {
  // for odd p the Witt additive inverse is coordinate-wise negation
  WittVec<Ring> out;
  out.p = a.p;
  out.n = a.n;
  out.coords.reserve(a.n);
  for (const auto& c : a.coords) out.coords.push_back(R.sub(R.zero(), c));
  return out;
}

template <class Ring>
WittVec<Ring> extend_by_zero(const Ring& R, const WittVec<Ring>& a) {
  WittVec<Ring> out;
  out.p = a.p;
  out.n = a.n + 1;
  out.coords = a.coords;
  out.coords.push_back(R.zero());
  return out;
}

}  // namespace

SelfcheckReport witt_selfcheck(u32 p, u32 d, u32 n, u32 samples, u64 seed) {
  SelfcheckReport rep;
  rep.p = p;
  rep.d = d;
  rep.n = n;
  rep.seed = seed;
  const fields::FiniteField& F = fields::FiniteField::get(p, d);
  FqRing R{&F};
  std::mt19937_64 rng(seed);

  auto run = [&](const char* name, auto body) {
    SelfcheckLine line{name, true, samples};
    for (u32 s = 0; s < samples && line.pass; ++s) line.pass = body();
    rep.lines.push_back(std::move(line));
  };

  auto zero = [&](u32 len) {
    WittVec<FqRing> z;
    z.p = p;
    z.n = len;
    z.coords.assign(len, 0);
    return z;
  };
  auto one = [&](u32 len) {
    auto o = zero(len);
    o.coords[0] = 1;
    return o;
  };

  run("add-associative", [&] {
    auto a = random_witt_fq(R, n, rng), b = random_witt_fq(R, n, rng),
         c = random_witt_fq(R, n, rng);
    return witt_add(R, witt_add(R, a, b), c) == witt_add(R, a, witt_add(R, b, c));
  });
  run("add-commutative", [&] {
    auto a = random_witt_fq(R, n, rng), b = random_witt_fq(R, n, rng);
    return witt_add(R, a, b) == witt_add(R, b, a);
  });
  run("add-zero-identity", [&] {
    auto a = random_witt_fq(R, n, rng);
    return witt_add(R, a, zero(n)) == a;
  });
  run("add-inverse", [&] {
    auto a = random_witt_fq(R, n, rng);
    return witt_add(R, a, negate_coords(R, a)) == zero(n);
  });
  run("mul-associative", [&] {
    auto a = random_witt_fq(R, n, rng), b = random_witt_fq(R, n, rng),
         c = random_witt_fq(R, n, rng);
    return witt_mul(R, witt_mul(R, a, b), c) == witt_mul(R, a, witt_mul(R, b, c));
  });
  run("mul-commutative", [&] {
    auto a = random_witt_fq(R, n, rng), b = random_witt_fq(R, n, rng);
    return witt_mul(R, a, b) == witt_mul(R, b, a);
  });
  run("mul-one-identity", [&] {
    auto a = random_witt_fq(R, n, rng);
    return witt_mul(R, a, one(n)) == a;
  });
  run("distributive", [&] {
    auto a = random_witt_fq(R, n, rng), b = random_witt_fq(R, n, rng),
         c = random_witt_fq(R, n, rng);
    return witt_mul(R, a, witt_add(R, b, c)) ==
           witt_add(R, witt_mul(R, a, b), witt_mul(R, a, c));
  });
  run("RVF=FRV=RFV=p", [&] {
    auto a = random_witt_fq(R, n, rng);
    auto pa = witt_nsum(R, a, p);
    auto rvf = witt_R(witt_V(R, witt_F(R, a)));
    auto frv = witt_F(R, witt_R(witt_V(R, a)));
    auto rfv = witt_R(witt_F(R, witt_V(R, a)));
    return rvf == pa && frv == pa && rfv == pa;
  });
  run("FV=VF=p", [&] {
    auto a = random_witt_fq(R, n, rng);
    auto fv = witt_F(R, witt_V(R, a));
    auto vf = witt_V(R, witt_F(R, a));
    auto pa = witt_nsum(R, extend_by_zero(R, a), p);
    return fv == vf && fv == pa;
  });
  run("frobenius-ring-hom", [&] {
    auto a = random_witt_fq(R, n, rng), b = random_witt_fq(R, n, rng);
    return witt_F(R, witt_add(R, a, b)) == witt_add(R, witt_F(R, a), witt_F(R, b)) &&
           witt_F(R, witt_mul(R, a, b)) == witt_mul(R, witt_F(R, a), witt_F(R, b));
  });
  run("verschiebung-additive", [&] {
    auto a = random_witt_fq(R, n, rng), b = random_witt_fq(R, n, rng);
    return witt_V(R, witt_add(R, a, b)) == witt_add(R, witt_V(R, a), witt_V(R, b));
  });
  run("projection-formula", [&] {
    auto a = random_witt_fq(R, n, rng), b = random_witt_fq(R, n, rng);
    auto lhs = witt_V(R, witt_mul(R, witt_F(R, a), b));
    auto rhs = witt_mul(R, extend_by_zero(R, a), witt_V(R, b));
    return lhs == rhs;
  });
  if (WittContext::get(p, n).has_expanded_tables()) {
    const WittContext& C = WittContext::get(p, n);
    run("table-vs-carry", [&] {
      auto a = random_witt_fq(R, n, rng), b = random_witt_fq(R, n, rng);
      return detail::add_via_table(R, C, a, b) == detail::add_via_fold(R, C, a, b) &&
             detail::mul_via_table(R, C, a, b) == detail::mul_via_fold(R, C, a, b);
    });
  }
  return rep;
}

SelfcheckReport serre_selfcheck(u32 p, u32 d, u32 i_max, u32 samples, u64 seed) {
  SelfcheckReport rep;
  rep.p = p;
  rep.d = d;
  rep.n = i_max;
  rep.seed = seed;
  const fields::FiniteField& F = fields::FiniteField::get(p, d);
  TruncRing R{&F, p * p + 1};
  std::mt19937_64 rng(seed);

  for (u32 i = 1; i <= i_max; ++i) {
    auto run = [&](const std::string& name, auto body) {
      SelfcheckLine line{name, true, samples};
      for (u32 s = 0; s < samples && line.pass; ++s) line.pass = body();
      rep.lines.push_back(std::move(line));
    };
    run("D" + std::to_string(i) + "-additive", [&] {
      auto a = random_witt_trunc(R, i, rng), b = random_witt_trunc(R, i, rng);
      auto lhs = serre_D(R, witt_add(R, a, b), i);
      auto rhs = serre_D(R, a, i).form + serre_D(R, b, i).form;
      return lhs.form == rhs;
    });
    run("D" + std::to_string(i + 1) + "V=D" + std::to_string(i), [&] {
      auto a = random_witt_trunc(R, i, rng);
      return serre_D(R, witt_V(R, a), i + 1) == serre_D(R, a, i);
    });
    run("D" + std::to_string(i) + "F=0", [&] {
      auto a = random_witt_trunc(R, i, rng);
      return serre_D(R, witt_F(R, a), i).form.is_zero();
    });
  }
  return rep;
}

}  // namespace strata::witt
