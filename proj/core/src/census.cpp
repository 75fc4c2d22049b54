#include "strata/census.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace strata::census {

using fields::FiniteField;
using fields::Poly;
using json = nlohmann::ordered_json;

std::string stratum_key(u32 p_rank, u32 a_number, Height h, const std::string& case_name) {
  std::ostringstream os;
  os << "r" << p_rank << "_a" << a_number << "_h" << h.to_string() << "_" << case_name;
  return os.str();
}

namespace {

u64 ipow(u64 b, u32 e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

u32 least_nonsquare(const FiniteField& F) {
  for (u32 c = 2; c < F.q(); ++c)
    if (F.chi(c) == -1) return c;
  throw std::logic_error("least_nonsquare: none found");
}

bool genus2_valid(const Poly& f) {
  if (f.deg() != 5 && f.deg() != 6) return false;
  return poly_gcd(f, poly_derivative(f)).deg() == 0;
}

Poly tuple_to_poly(const FiniteField& F, u32 deg, u32 lead, u64 tuple) {
  std::vector<u32> c(deg + 1, 0);
  for (u32 k = 0; k < deg; ++k) {
    c[k] = static_cast<u32>(tuple % F.q());
    tuple /= F.q();
  }
  c[deg] = lead;
  return Poly(F, std::move(c));
}

// f(lambda x + c) by Horner in lambda x + c
Poly substitute_affine(const Poly& f, u32 lambda, u32 c) {
  const FiniteField& F = f.field();
  Poly lin(F, {c, lambda});
  Poly acc(F);
  for (int k = f.deg(); k >= 0; --k) {
    acc = acc * lin;
    acc = acc + Poly(F, {f.coeff(k)});
  }
  return acc;
}

// canonical orbit representative under x -> lambda x + c followed by the
// y-rescaling that moves the leading coefficient into {1, nonsquare}; a
// curve survives the crude dedup iff it equals its representative
Poly orbit_representative(const Poly& f, u32 nonsquare) {
  const FiniteField& F = f.field();
  Poly best = f;
  for (u32 lambda = 1; lambda < F.q(); ++lambda)
    for (u32 c = 0; c < F.q(); ++c) {
      Poly g = substitute_affine(f, lambda, c);
      // scale by a square so the leading coefficient lands in {1, nonsquare}
      u32 target = F.chi(g.lead()) == 1 ? 1u : nonsquare;
      Poly h = g.scaled(F.mul(target, F.inv(g.lead())));
      if (h.coeffs() < best.coeffs()) best = h;
    }
  return best;
}

}  // namespace

u64 candidate_count(const CensusConfig& cfg) {
  const FiniteField& F = FiniteField::get(cfg.p, cfg.d);
  if (cfg.genus == 1) return static_cast<u64>(F.q()) * F.q();
  if (cfg.sample_count) return *cfg.sample_count;
  u64 n = 0;
  for (u32 deg : cfg.degrees) n += 2 * ipow(F.q(), deg);
  return n;
}

std::vector<Poly> enumerate_curves(const CensusConfig& cfg) {
  const FiniteField& F = FiniteField::get(cfg.p, cfg.d);
  std::vector<Poly> out;

  if (cfg.genus == 1) {
    for (u32 a = 0; a < F.q(); ++a)
      for (u32 b = 0; b < F.q(); ++b) {
        u32 disc = F.add(F.mul(F.from_int(4), F.pow(a, 3)),
                         F.mul(F.from_int(27), F.mul(b, b)));
        if (disc != 0) out.push_back(Poly(F, {b, a, 0, 1}));
      }
    return out;
  }

  if (cfg.genus != 2) throw std::invalid_argument("enumerate_curves: genus must be 1 or 2");
  const u32 ns = least_nonsquare(F);
  const u32 leads[2] = {1, ns};

  auto keep = [&](const Poly& f) {
    if (!genus2_valid(f)) return false;
    return !cfg.dedup || orbit_representative(f, ns) == f;
  };

  if (cfg.sample_count) {
    std::mt19937_64 rng(cfg.seed);
    std::vector<u32> degs = cfg.degrees;
    out.reserve(*cfg.sample_count);
    while (out.size() < *cfg.sample_count) {
      u32 deg = degs[rng() % degs.size()];
      u32 lead = leads[rng() % 2];
      u64 tuple = 0;
      for (u32 k = 0; k < deg; ++k) tuple = tuple * F.q() + rng() % F.q();
      Poly f = tuple_to_poly(F, deg, lead, tuple);
      if (keep(f)) out.push_back(std::move(f));
    }
    return out;
  }

  for (u32 deg : cfg.degrees) {
    if (ipow(F.q(), deg + 1) > kExhaustiveCap)
      throw std::invalid_argument(
          "enumerate_curves: exhaustive mode exceeds the candidate cap; use sampled mode");
    const u64 tuples = ipow(F.q(), deg);
    for (u32 lead : leads)
      for (u64 t = 0; t < tuples; ++t) {
        Poly f = tuple_to_poly(F, deg, lead, t);
        if (keep(f)) out.push_back(std::move(f));
      }
  }
  return out;
}

namespace {

CurveRow classify_one(const CensusConfig& cfg, const FiniteField& F, const Poly& f) {
  CurveRow row;
  row.p = cfg.p;
  row.f = poly_to_string(f);
  if (cfg.genus == 2) {
    curves::Genus2Curve C(F, f);
    curves::ClassificationRecord rec = curves::classify(C, cfg.verify);
    row.p_rank = rec.p_rank;
    row.a_number = rec.a_number;
    row.height = rec.height;
    row.case_name = curves::to_string(rec.case_type);
    if (rec.l_poly) {
      row.a1 = rec.l_poly->a1();
      row.a2 = rec.l_poly->a2();
    }
  } else {
    curves::EllipticCurve E(F, f.coeff(1), f.coeff(0));
    curves::EllipticRecord rec = curves::classify(E, cfg.verify);
    row.p_rank = rec.p_rank;
    row.a_number = rec.a_number;
    row.height = rec.height;
    row.case_name = rec.supersingular ? "supersingular" : "ordinary";
    if (rec.a_p) row.a1 = -*rec.a_p;  // a1 = N1 - (q+1)
  }
  return row;
}

}  // namespace

CensusReport run_census(const CensusConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const FiniteField& F = FiniteField::get(cfg.p, cfg.d);
  std::vector<Poly> curves_list = enumerate_curves(cfg);

  CensusReport rep;
  rep.cfg = cfg;
  rep.candidates = candidate_count(cfg);
  rep.total = curves_list.size();
  rep.rows.resize(curves_list.size());

  const u32 jobs = std::max<u32>(1, cfg.jobs);
  if (jobs == 1) {
    for (size_t i = 0; i < curves_list.size(); ++i)
      rep.rows[i] = classify_one(cfg, F, curves_list[i]);
  } else {
    std::vector<std::thread> pool;
    std::mutex err_mu;
    std::exception_ptr first_error;
    std::atomic<size_t> next{0};
    for (u32 w = 0; w < jobs; ++w)
      pool.emplace_back([&] {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= curves_list.size()) return;
          try {
            rep.rows[i] = classify_one(cfg, F, curves_list[i]);
          } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!first_error) first_error = std::current_exception();
            return;
          }
        }
      });
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  for (const CurveRow& r : rep.rows)
    ++rep.strata[stratum_key(r.p_rank, r.a_number, r.height, r.case_name)];
  rep.oracle_checked = cfg.verify ? rep.total : 0;
  rep.elapsed_ms = static_cast<u64>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                        std::chrono::steady_clock::now() - t0)
                                        .count());
  return rep;
}

// --- emission / parsing -------------------------------------------------------

namespace {
constexpr const char* kCsvHeader = "p,f,p_rank,a_number,height,case,a1,a2";
}

void emit_csv(const CensusReport& rep, std::ostream& os) {
  os << kCsvHeader << "\n";
  for (const CurveRow& r : rep.rows) {
    os << r.p << "," << r.f << "," << r.p_rank << "," << r.a_number << ","
       << r.height.to_string() << "," << r.case_name << ",";
    if (r.a1) os << *r.a1;
    os << ",";
    if (r.a2) os << *r.a2;
    os << "\n";
  }
}

namespace {

json row_to_json(const CurveRow& r) {
  json j;
  j["p"] = r.p;
  j["f"] = r.f;
  j["p_rank"] = r.p_rank;
  j["a_number"] = r.a_number;
  j["height"] = r.height.finite ? json(r.height.value) : json(nullptr);
  j["height_is_infinite"] = !r.height.finite;
  j["case"] = r.case_name;
  j["a1"] = r.a1 ? json(*r.a1) : json(nullptr);
  j["a2"] = r.a2 ? json(*r.a2) : json(nullptr);
  return j;
}

CurveRow row_from_json(const json& j) {
  CurveRow r;
  r.p = j.at("p").get<u32>();
  r.f = j.at("f").get<std::string>();
  r.p_rank = j.at("p_rank").get<u32>();
  r.a_number = j.at("a_number").get<u32>();
  r.height = j.at("height_is_infinite").get<bool>() ? Height::inf()
                                                    : Height::of(j.at("height").get<u32>());
  r.case_name = j.at("case").get<std::string>();
  if (!j.at("a1").is_null()) r.a1 = j.at("a1").get<long long>();
  if (!j.at("a2").is_null()) r.a2 = j.at("a2").get<long long>();
  return r;
}

}  // namespace

void emit_json(const CensusReport& rep, std::ostream& os) {
  json j;
  j["p"] = rep.cfg.p;
  j["field_deg"] = rep.cfg.d;
  j["genus"] = rep.cfg.genus;
  j["verify"] = rep.cfg.verify;
  j["candidates"] = rep.candidates;
  j["total"] = rep.total;
  j["oracle_checked"] = rep.oracle_checked;
  j["elapsed_ms"] = rep.elapsed_ms;
  json strata = json::array();
  for (const auto& [key, count] : rep.strata) {
    json s;
    s["stratum"] = key;
    s["count"] = count;
    strata.push_back(std::move(s));
  }
  j["strata"] = std::move(strata);
  json rows = json::array();
  for (const CurveRow& r : rep.rows) rows.push_back(row_to_json(r));
  j["rows"] = std::move(rows);
  os << j.dump(2) << "\n";
}

std::vector<CurveRow> parse_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("parse_csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw std::invalid_argument("parse_csv: unexpected header '" + line + "'");
  std::vector<CurveRow> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    // the f field may carry commas (extension-field coefficient vectors),
    // so take the first comma and the last six
    size_t first = line.find(',');
    if (first == std::string::npos)
      throw std::invalid_argument("parse_csv: bad row '" + line + "'");
    std::vector<size_t> tail;
    for (size_t i = line.size(); i-- > first + 1 && tail.size() < 6;)
      if (line[i] == ',') tail.push_back(i);
    if (tail.size() != 6 || tail.back() <= first)
      throw std::invalid_argument("parse_csv: bad row '" + line + "'");
    std::reverse(tail.begin(), tail.end());
    auto piece = [&](size_t from, size_t to) { return line.substr(from, to - from); };
    CurveRow r;
    r.p = static_cast<u32>(std::stoul(piece(0, first)));
    r.f = piece(first + 1, tail[0]);
    r.p_rank = static_cast<u32>(std::stoul(piece(tail[0] + 1, tail[1])));
    r.a_number = static_cast<u32>(std::stoul(piece(tail[1] + 1, tail[2])));
    r.height = Height::parse(piece(tail[2] + 1, tail[3]));
    r.case_name = piece(tail[3] + 1, tail[4]);
    std::string a1s = piece(tail[4] + 1, tail[5]), a2s = piece(tail[5] + 1, line.size());
    if (!a1s.empty()) r.a1 = std::stoll(a1s);
    if (!a2s.empty()) r.a2 = std::stoll(a2s);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<CurveRow> parse_json(std::istream& is) {
  json j = json::parse(is);
  std::vector<CurveRow> rows;
  for (const json& rj : j.at("rows")) rows.push_back(row_from_json(rj));
  return rows;
}

void write_report(const CensusReport& rep, const std::string& path, const std::string& format) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_report: cannot open '" + path + "' for writing");
  if (format == "csv")
    emit_csv(rep, os);
  else if (format == "json")
    emit_json(rep, os);
  else
    throw std::invalid_argument("write_report: unknown format '" + format + "'");
  os.flush();
  if (!os) throw std::runtime_error("write_report: I/O failure writing '" + path + "'");
}

}  // namespace strata::census
