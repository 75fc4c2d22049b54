#pragma once
// census.hpp -- exhaustive or seeded-sample enumeration of curves over F_q,
// parallel classification, per-stratum tallies and CSV/JSON report
// emission.  Reports are deterministic: two runs with the same config are
// identical except for the elapsed-time field, and serial and parallel runs
// agree exactly.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strata/curves.hpp"
#include "strata/fields.hpp"
#include "strata/height.hpp"

namespace strata::census {

using fields::u32;
using fields::u64;

struct CensusConfig {
  u32 p = 3;
  u32 d = 1;
  u32 genus = 2;
  std::vector<u32> degrees = {5, 6};     // genus 2 only
  bool verify = false;
  // crude orbit deduplication under x -> lambda x + c and y-rescaling;
  // approximate (no isomorphism classification), off by default
  bool dedup = false;
  u32 jobs = 1;
  std::optional<u64> sample_count;       // unset = exhaustive
  u64 seed = 0;
};

// hard cap on exhaustive enumeration: q^(deg+1) candidate tuples
constexpr u64 kExhaustiveCap = 10'000'000;

struct CurveRow {
  u32 p = 0;
  std::string f;
  u32 p_rank = 0;
  u32 a_number = 0;
  Height height;
  std::string case_name;
  std::optional<long long> a1, a2;
  friend bool operator==(const CurveRow&, const CurveRow&) = default;
};

struct CensusReport {
  CensusConfig cfg;
  u64 candidates = 0;  // coefficient tuples examined before validity filters
  u64 total = 0;
  u64 oracle_checked = 0;
  // stratum key "r<r>_a<a>_h<height>_<case>" -> count; sorted map so that
  // emission order is deterministic
  std::map<std::string, u64> strata;
  std::vector<CurveRow> rows;
  u64 elapsed_ms = 0;
};

std::string stratum_key(u32 p_rank, u32 a_number, Height h, const std::string& case_name);

// number of raw candidate tuples the exhaustive enumeration examines
// (per-degree 2 q^deg for genus 2, q^2 for genus 1); for sampled mode the
// requested sample count
u64 candidate_count(const CensusConfig& cfg);

// Deterministic candidate stream (already filtered to valid curves):
// genus 2: polynomials of the configured degrees with leading coefficient 1
// or the least non-square (two cosets cover all quadratic twists),
// squarefree; genus 1: x^3 + ax + b with nonzero discriminant.
// Throws std::invalid_argument if exhaustive mode exceeds the cap.
std::vector<fields::Poly> enumerate_curves(const CensusConfig& cfg);

// classify every curve (optionally verifying against the zeta oracle) and
// aggregate; any oracle disagreement propagates as curves::OracleDisagreement
CensusReport run_census(const CensusConfig& cfg);

void emit_csv(const CensusReport& rep, std::ostream& os);
void emit_json(const CensusReport& rep, std::ostream& os);
std::vector<CurveRow> parse_csv(std::istream& is);
std::vector<CurveRow> parse_json(std::istream& is);

// write to path in "csv" or "json" format; errors carry the path
void write_report(const CensusReport& rep, const std::string& path, const std::string& format);

}  // namespace strata::census
