#include <benchmark/benchmark.h>

#include <random>

#include "strata/census.hpp"
#include "strata/curves.hpp"
#include "strata/fields.hpp"
#include "strata/formalgroup.hpp"
#include "strata/witt.hpp"

using namespace strata;
using fields::FiniteField;
using fields::u32;

static void BM_field_mul(benchmark::State& state) {
  const FiniteField& F = FiniteField::get(7, static_cast<u32>(state.range(0)));
  std::mt19937_64 rng(1);
  u32 a = static_cast<u32>(rng() % F.q()), b = 1 + static_cast<u32>(rng() % (F.q() - 1));
  for (auto _ : state) {
    a = F.mul(a, b);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_field_mul)->Arg(1)->Arg(2);

static void BM_witt_add(benchmark::State& state) {
  const u32 p = static_cast<u32>(state.range(0));
  const u32 n = static_cast<u32>(state.range(1));
  witt::FqRing R{&FiniteField::get(p, 1)};
  std::mt19937_64 rng(2);
  std::vector<u32> ca(n), cb(n);
  for (auto& x : ca) x = static_cast<u32>(rng() % p);
  for (auto& x : cb) x = static_cast<u32>(rng() % p);
  auto a = witt::make_witt(R, ca), b = witt::make_witt(R, cb);
  witt::WittContext::get(p, n);  // build tables/carries outside the loop
  for (auto _ : state) {
    auto c = witt::witt_add(R, a, b);
    benchmark::DoNotOptimize(c);
  }
}
// (5,4) uses the expanded-table route, (7,4) the carry route
BENCHMARK(BM_witt_add)->Args({3, 3})->Args({5, 4})->Args({7, 4});

static void BM_classify_quintic(benchmark::State& state) {
  const FiniteField& F = FiniteField::get(3, 1);
  curves::Genus2Curve C(F, fields::parse_poly(F, "x^5+x^2+1"));
  const bool verify = state.range(0) != 0;
  for (auto _ : state) {
    auto rec = curves::classify(C, verify);
    benchmark::DoNotOptimize(rec);
  }
}
BENCHMARK(BM_classify_quintic)->Arg(0)->Arg(1);

static void BM_census_f3_quintics(benchmark::State& state) {
  census::CensusConfig cfg;
  cfg.p = 3;
  cfg.degrees = {5};
  cfg.verify = true;
  for (auto _ : state) {
    auto rep = census::run_census(cfg);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_census_f3_quintics);

static void BM_elliptic_p_series(benchmark::State& state) {
  const u32 p = static_cast<u32>(state.range(0));
  const FiniteField& F = FiniteField::get(p, 1);
  curves::EllipticCurve E(F, 1, p == 5 ? 1 : 0);
  for (auto _ : state) {
    auto G = formalgroup::elliptic_fgl(E, formalgroup::default_precision(p));
    auto s = formalgroup::p_series(G);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_elliptic_p_series)->Arg(5)->Arg(7);

BENCHMARK_MAIN();
