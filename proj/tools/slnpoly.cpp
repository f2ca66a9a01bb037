// Copyright (C) 2026 The slnpoly Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: E-polynomials, type and coefficient tables, and the
// verification suites.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "slnpoly/slnpoly.hpp"

namespace {

using namespace slnpoly;
using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr const char* kCacheEnv = "SLNPOLY_CACHE_DIR";
constexpr const char* kCacheVersion = "slnpoly-epoly-v1";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string subtarget;
  int n = 0;
  int g = 0;
  long q = 0;
  int t = 0;
  int D = 0;
  int z_power = 1;
  int max = 8;
  bool alt = false;
  bool nonzero = false;
  std::string format = "plain";
  std::string cache_dir;
  unsigned jobs = 1;
  int verbosity = 0;
  int max_n = 8;
  int max_g = 5;
  std::uint64_t group_budget = 10'000'000;
  std::uint64_t kernel_budget = 1'000'000;
  std::uint64_t work_budget = 500'000'000;
  std::uint64_t label_budget = 5'000'000;
  double tuple_budget = 2e8;
  std::size_t poset_budget = 5000;
};

void log(const RunConfig& cfg, const std::string& msg) {
  if (cfg.verbosity > 0) std::cerr << "slnpoly: " << msg << "\n";
}

void check_range(const char* name, long value, long lo, long hi) {
  if (value < lo || value > hi)
    throw UsageError(std::string("--") + name + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                     "], got " + std::to_string(value));
}

// ---- rendering -------------------------------------------------------------

Json partition_json(const Partition& p) { return Json(p.parts()); }

Json type_json(const PureType& tau) {
  Json mults = Json::array();
  for (const auto& [lambda, m] : tau.mults()) mults.push_back(Json::array({partition_json(lambda), m}));
  return Json{{"d", tau.degree()}, {"mults", mults}};
}

std::string support_string(const PureType& tau) {
  std::string s;
  for (const auto& [lambda, m] : tau.mults()) s += (s.empty() ? "" : " ") + to_string(lambda) + "^" + std::to_string(m);
  return s;
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

std::string latex_rat(const BigRat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  const std::string sign = r < 0 ? "-" : "";
  return sign + "\\frac{" + BigInt(abs(r.get_num())).get_str() + "}{" + r.get_den().get_str() + "}";
}

Json epoly_json(const EPolyResult& r) {
  Json coeffs = Json::array();
  auto terms = r.poly.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) coeffs.push_back(Json::array({it->first, it->second.get_str()}));
  Json euler = r.euler.fits_slong_p() ? Json(r.euler.get_si()) : Json(r.euler.get_str());
  return Json{{"n", r.n},
              {"g", r.g},
              {"variable", "q"},
              {"coeffs", coeffs},
              {"euler", euler},
              {"degree", r.degree},
              {"expected_degree", expected_degree(r.n, r.g)},
              {"palindromic", r.palindromic},
              {"monic", r.monic}};
}

std::optional<EPolyResult> epoly_from_json(const Json& j, int n, int g) {
  if (j.at("n").get<int>() != n || j.at("g").get<int>() != g) return std::nullopt;
  std::vector<std::pair<int, BigInt>> terms;
  for (const auto& c : j.at("coeffs")) terms.emplace_back(c.at(0).get<int>(), BigInt(c.at(1).get<std::string>()));
  EPolyResult r;
  r.n = n;
  r.g = g;
  r.poly = IntLaurentPoly::from_terms(terms);
  const Json& e = j.at("euler");
  r.euler = e.is_string() ? BigInt(e.get<std::string>()) : BigInt(e.get<long>());
  r.degree = j.at("degree").get<int>();
  r.monic = j.at("monic").get<bool>();
  r.palindromic = j.at("palindromic").get<bool>();
  // A stored entry must agree with what its own polynomial implies.
  const auto rep = structural_check(r);
  if (r.euler != poly_eval_int(r.poly, 1) || r.monic != rep.monic || r.palindromic != rep.palindromic ||
      r.degree != (r.poly.is_zero() ? -1 : r.poly.degree()))
    return std::nullopt;
  return r;
}

std::string render_epoly(const EPolyResult& r, const std::string& format) {
  const auto rep = structural_check(r);
  std::ostringstream os;
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  if (format == "json") {
    os << epoly_json(r).dump() << "\n";
  } else if (format == "csv") {
    os << "exponent,coefficient\n";
    auto terms = r.poly.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) os << it->first << "," << it->second.get_str() << "\n";
  } else if (format == "latex") {
    os << "$" << to_string(r.poly, "q", true) << "$\n";
    os << "% degree " << r.degree << " (expected " << rep.expected_degree << "), monic " << yn(r.monic)
       << ", palindromic " << yn(r.palindromic) << ", euler " << r.euler.get_str() << "\n";
  } else {
    os << to_string(r.poly) << "\n";
    os << "degree " << r.degree << " (expected " << rep.expected_degree << "), monic " << yn(r.monic)
       << ", palindromic " << yn(r.palindromic) << ", euler " << r.euler.get_str() << "\n";
  }
  return os.str();
}

// ---- cache -----------------------------------------------------------------

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string cache_directory(const RunConfig& cfg) {
  if (!cfg.cache_dir.empty()) return cfg.cache_dir;
  if (const char* env = std::getenv(kCacheEnv)) return env;
  return {};
}

fs::path cache_path(const std::string& dir, int n, int g, bool alt) {
  std::ostringstream key;
  key << kCacheVersion << "|n=" << n << "|g=" << g << "|alt=" << alt;
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(key.str())));
  return fs::path(dir) / (std::string("epoly-") + hex + ".json");
}

std::optional<EPolyResult> cache_load(const RunConfig& cfg, const fs::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    auto r = epoly_from_json(Json::parse(in), cfg.n, cfg.g);
    if (!r) log(cfg, "ignoring mismatched cache entry " + path.string());
    return r;
  } catch (const std::exception& e) {
    log(cfg, "ignoring unreadable cache entry " + path.string() + ": " + e.what());
    return std::nullopt;
  }
}

void cache_store(const RunConfig& cfg, const fs::path& path, const EPolyResult& r) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) {
      log(cfg, "cannot write cache entry " + path.string());
      return;
    }
    out << epoly_json(r).dump() << "\n";
  }
  fs::rename(tmp, path, ec);
  if (ec) log(cfg, "cannot store cache entry: " + ec.message());
}

// ---- commands --------------------------------------------------------------

int cmd_epoly(const RunConfig& cfg) {
  check_range("n", cfg.n, 1, cfg.max_n);
  check_range("g", cfg.g, 1, cfg.max_g);
  const std::string dir = cache_directory(cfg);
  std::optional<EPolyResult> result;
  fs::path path;
  if (!dir.empty()) {
    path = cache_path(dir, cfg.n, cfg.g, cfg.alt);
    result = cache_load(cfg, path);
    log(cfg, std::string(result ? "cache hit " : "cache miss ") + path.string());
  }
  if (!result) {
    result = cfg.alt ? n_poly_alt(cfg.n, cfg.g, cfg.jobs) : n_poly(cfg.n, cfg.g, cfg.jobs);
    if (!dir.empty()) cache_store(cfg, path, *result);
  }
  std::cout << render_epoly(*result, cfg.format);
  return 0;
}

int cmd_euler(const RunConfig& cfg) {
  check_range("n", cfg.n, 1, cfg.max_n);
  check_range("g", cfg.g, 1, cfg.max_g);
  const BigInt value = euler_char(cfg.n, cfg.g, cfg.jobs);
  const BigInt formula = euler_char_formula(cfg.n, cfg.g);
  if (cfg.format == "json") {
    std::cout << Json{{"n", cfg.n}, {"g", cfg.g}, {"euler", value.get_str()}, {"formula", formula.get_str()},
                      {"match", value == formula}}
                     .dump()
              << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "n,g,euler,formula\n" << cfg.n << "," << cfg.g << "," << value << "," << formula << "\n";
  } else {
    std::cout << value << "\n";
  }
  return value == formula ? 0 : 1;
}

int cmd_types(const RunConfig& cfg) {
  check_range("n", cfg.n, 1, cfg.max_n);
  const auto types = enumerate_pure_types(cfg.n);
  if (cfg.format == "csv") std::cout << "index,d,support\n";
  int index = 0;
  for (const auto& tau : types) {
    ++index;
    if (cfg.format == "json")
      std::cout << type_json(tau).dump() << "\n";
    else if (cfg.format == "csv")
      std::cout << index << "," << tau.degree() << "," << csv_quote(support_string(tau)) << "\n";
    else if (cfg.format == "latex")
      std::cout << "$d=" << tau.degree() << "$ & $" << support_string(tau) << "$ \\\\\n";
    else
      std::cout << to_string(tau) << "\n";
  }
  return 0;
}

int cmd_coeff(const RunConfig& cfg) {
  check_range("n", cfg.n, 1, cfg.max_n);
  if (cfg.format == "csv") std::cout << "d,support,t,value\n";
  for (const auto& e : c_t_all(cfg.n)) {
    if (cfg.nonzero && e.value == 0) continue;
    if (cfg.format == "json")
      std::cout << Json{{"tau", type_json(e.tau)}, {"t", e.t}, {"value", to_string(e.value)}}.dump() << "\n";
    else if (cfg.format == "csv")
      std::cout << e.tau.degree() << "," << csv_quote(support_string(e.tau)) << "," << e.t << "," << to_string(e.value)
                << "\n";
    else if (cfg.format == "latex")
      std::cout << "$d=" << e.tau.degree() << "$, $" << support_string(e.tau) << "$ & " << e.t << " & $"
                << latex_rat(e.value) << "$ \\\\\n";
    else
      std::cout << to_string(e.tau) << "  t=" << e.t << "  " << to_string(e.value) << "\n";
  }
  return 0;
}

// ---- verification ----------------------------------------------------------

class Reporter {
 public:
  void check(Json j, bool pass) {
    j["pass"] = pass;
    j["status"] = pass ? "pass" : "fail";
    if (!pass) ++failures_;
    emit(j);
  }
  void skip(Json j, const std::string& reason) {
    j["pass"] = nullptr;
    j["status"] = "skipped";
    j["reason"] = reason;
    emit(j);
  }
  int exit_code() const { return failures_ == 0 ? 0 : 1; }

 private:
  static void emit(const Json& j) { std::cout << j.dump() << std::endl; }
  int failures_ = 0;
};

std::pair<int, int> prime_power(long q) {
  if (q < 2) throw UsageError("--q must be a prime power");
  long p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;
  int k = 0;
  long r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1) throw UsageError("--q must be a prime power, got " + std::to_string(q));
  return {static_cast<int>(p), k};
}

MatFq root_of_unity_scalar(const FqField& F, int n, int power) {
  for (int a = 1; a < F.size(); ++a)
    if (F.order(a) == n) return MatFq::scalar(n, F.pow(a, static_cast<std::uint64_t>(power)));
  throw UsageError("n must divide q - 1");
}

std::string quotient_string(const BigInt& num, const BigInt& den) { return to_string(make_rat(num, den)); }

int verify_brute(const RunConfig& cfg) {
  check_range("n", cfg.n, 2, 3);
  check_range("g", cfg.g, 1, cfg.max_g);
  if (std::gcd(cfg.z_power, cfg.n) != 1) throw UsageError("--z-power must be coprime to n");
  const auto [p, k] = prime_power(cfg.q);
  if ((cfg.q - 1) % cfg.n != 0) throw UsageError("n must divide q - 1");
  Json base{{"check", "brute"}, {"n", cfg.n}, {"q", cfg.q}, {"g", cfg.g}, {"z_power", cfg.z_power}};
  Reporter rep;
  try {
    const FqField F = build_field(p, k);
    const GroupTable gt = enumerate_sln(F, cfg.n, cfg.g > 1, cfg.group_budget);
    const MatFq z = root_of_unity_scalar(F, cfg.n, cfg.z_power);
    const BigInt count = cfg.g == 1 ? commutator_fiber_count(gt, z, cfg.jobs, cfg.kernel_budget)
                                    : genus_count(gt, cfg.g, z, cfg.work_budget, cfg.jobs);
    const BigInt pg = pgln_order(cfg.n, cfg.q);
    Json j = base;
    j["count"] = count.get_str();
    j["pgln_order"] = pg.get_str();
    j["quotient"] = quotient_string(count, pg);
    std::optional<BigInt> expected;
    if (cfg.g == 1)
      expected = BigInt(1);
    else if (cfg.n == 2)
      expected = n2_closed_form(cfg.q, cfg.g);
    else if (satisfies_oddity(cfg.q, cfg.n))
      expected = poly_eval_int(n_poly(cfg.n, cfg.g, cfg.jobs).poly, cfg.q);
    if (!expected) {
      j["expected"] = nullptr;
      rep.skip(j, "no reference value for this (n, q, g)");
    } else {
      j["expected"] = expected->get_str();
      rep.check(j, count == *expected * pg);
    }
  } catch (const BudgetExceeded& e) {
    rep.skip(base, e.what());
  }
  return rep.exit_code();
}

void compositions(int rem, int max_len, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (rem == 0) {
    if (!cur.empty()) out.push_back(cur);
    return;
  }
  if (static_cast<int>(cur.size()) == max_len) return;
  for (int a = 1; a <= rem; ++a) {
    cur.push_back(a);
    compositions(rem - a, max_len, cur, out);
    cur.pop_back();
  }
}

std::vector<PureType> pure_types_of_degree(int size, int d) {
  std::vector<PureType> out;
  for (const auto& tau : enumerate_pure_types(size))
    if (tau.degree() == d) out.push_back(tau);
  return out;
}

// Two-component types of size n with components of distinct degree.
std::vector<MixedType> two_component_types(int n) {
  std::vector<MixedType> out;
  for (int a = 1; a < n; ++a)
    for (auto d1 : divisors(a))
      for (auto d2 : divisors(n - a)) {
        if (d1 >= d2) continue;
        for (const auto& x : pure_types_of_degree(a, static_cast<int>(d1)))
          for (const auto& y : pure_types_of_degree(n - a, static_cast<int>(d2))) out.push_back(MixedType{x, y});
      }
  return out;
}

int verify_gamma(const RunConfig& cfg) {
  if (cfg.q < 3) throw UsageError("--q is required");
  check_range("n", cfg.n, 1, cfg.max_n);
  if ((cfg.q - 1) % cfg.n != 0) throw UsageError("n must divide q - 1");
  if (cfg.t != 0 && cfg.n % cfg.t != 0) throw UsageError("--t must divide n");
  const bool oddity = satisfies_oddity(cfg.q, cfg.n);
  Reporter rep;
  auto record = [&](Json j, const BigInt& expected, const CycloInt& got) {
    j["expected"] = expected.get_str();
    j["got"] = to_string(got);
    if (!oddity)
      rep.skip(j, "oddity condition fails for (q, n)");
    else
      rep.check(j, got.is_rational() && got.rational_value() == expected);
  };
  auto guarded = [&](const Json& params, const std::function<void()>& body) {
    try {
      body();
    } catch (const BudgetExceeded& e) {
      rep.skip(params, e.what());
    }
  };
  const long q = cfg.q;
  const int n = cfg.n;

  for (auto t64 : divisors(n)) {
    const int t = static_cast<int>(t64);
    if (cfg.t != 0 && t != cfg.t) continue;
    for (int dhat = 1; t * dhat <= n; ++dhat) {
      if (n % (t * dhat) != 0) continue;
      for (int D = dhat; D <= t * dhat; D += dhat) {
        if ((t * dhat) % D != 0 || (cfg.D != 0 && D != cfg.D)) continue;
        std::vector<int> cur;
        std::vector<std::vector<int>> ls;
        compositions(n / (t * dhat), 3, cur, ls);
        for (const auto& lambdas : ls) {
          Json params{{"q", q}, {"n", n}, {"t", t}, {"D", D}, {"dhat", dhat}, {"lambda", lambdas}};
          guarded(Json{{"lemma", "keylemma"}, {"params", params}}, [&] {
            const GammaContext ctx(q, n, t, D, static_cast<std::int64_t>(cfg.label_budget));
            record(Json{{"lemma", "keylemma"}, {"params", params}},
                   keylemma_value(q, t, D, dhat, static_cast<int>(lambdas.size())),
                   zhat_brute(ctx, dhat, lambdas, cfg.tuple_budget));
            if (lambdas.size() < 2) return;
            std::vector<int> allowed;
            for (auto d : divisors(D))
              if (d % dhat == 0) allowed.push_back(static_cast<int>(d));
            std::vector<std::size_t> idx(lambdas.size(), 0);
            while (true) {
              std::vector<int> degs;
              for (auto i : idx) degs.push_back(allowed[i]);
              if (std::set<int>(degs.begin(), degs.end()).size() > 1) {
                Json pm = params;
                pm["degrees"] = degs;
                record(Json{{"lemma", "mixdeg"}, {"params", pm}}, 0,
                       z_brute_mixed_degrees(ctx, degs, dhat, lambdas, cfg.tuple_budget));
              }
              std::size_t k = 0;
              while (k < idx.size() && ++idx[k] == allowed.size()) idx[k++] = 0;
              if (k == idx.size()) break;
            }
          });
        }
      }
    }
  }

  for (const auto& tau : enumerate_pure_types(n))
    for (auto t64 : divisors(n)) {
      const int t = static_cast<int>(t64);
      if (cfg.t != 0 && t != cfg.t) continue;
      Json params{{"q", q}, {"n", n}, {"t", t}, {"tau", type_json(tau)}};
      guarded(Json{{"lemma", "mixnewdeg"}, {"params", params}}, [&] {
        for (const auto& [nt, v] : shat_brute(q, n, t, tau, cfg.group_budget).by_new_type)
          if (!is_pure_newtype(nt)) record(Json{{"lemma", "mixnewdeg"}, {"params", params}}, 0, v);
      });
      guarded(Json{{"lemma", "ctaut"}, {"params", params}}, [&] {
        const BigRat got = ctaut_from_gamma(q, tau, t, cfg.group_budget);
        const BigRat expected = c_t(tau, t);
        Json j{{"lemma", "ctaut"}, {"params", params}, {"expected", to_string(expected)}, {"got", to_string(got)}};
        if (!oddity)
          rep.skip(j, "oddity condition fails for (q, n)");
        else
          rep.check(j, got == expected);
      });
    }

  for (const auto& tau : two_component_types(n))
    for (auto t64 : divisors(n)) {
      const int t = static_cast<int>(t64);
      if (cfg.t != 0 && t != cfg.t) continue;
      Json comps = Json::array();
      for (const auto& c : tau) comps.push_back(type_json(c));
      Json params{{"q", q}, {"n", n}, {"t", t}, {"tau", comps}};
      guarded(Json{{"lemma", "nonpure"}, {"params", params}}, [&] {
        record(Json{{"lemma", "nonpure"}, {"params", params}}, 0, shat_brute(q, n, t, tau, cfg.group_budget).total);
      });
    }
  return rep.exit_code();
}

std::uint64_t bell_number(int N) {
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= N; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto x : row) next.push_back(next.back() + x);
    row = next;
  }
  return row.front();
}

void cycle_types(int rem, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (rem == 0) {
    out.push_back(cur);
    return;
  }
  for (int a = std::min(rem, max_part); a >= 1; --a) {
    cur.push_back(a);
    cycle_types(rem - a, a, cur, out);
    cur.pop_back();
  }
}

int verify_hanlon(const RunConfig& cfg) {
  check_range("max", cfg.max, 1, 12);
  Reporter rep;
  for (int N = 1; N <= cfg.max; ++N) {
    std::vector<int> cur;
    std::vector<std::vector<int>> types;
    cycle_types(N, N, cur, types);
    for (const auto& lengths : types) {
      const bool equal = std::set<int>(lengths.begin(), lengths.end()).size() == 1;
      const int d = lengths.front();
      const int m = static_cast<int>(lengths.size());
      Json j{{"check", "hanlon"}, {"cycle_type", lengths}};
      const BigInt expected = equal ? hanlon_mu(d, m) : BigInt(0);
      j["expected"] = expected.get_str();
      if (bell_number(N) > cfg.poset_budget) {
        rep.skip(j, "partition lattice larger than --poset-budget");
        continue;
      }
      const auto got = fixed_subposet_mobius(N, permutation_of_cycle_type(lengths));
      j["got"] = std::to_string(got);
      rep.check(j, BigInt(static_cast<long>(got)) == expected);
    }
  }
  return rep.exit_code();
}

int verify_crossformula(const RunConfig& cfg) {
  Reporter rep;
  const int n_lo = cfg.n ? cfg.n : 1, n_hi = cfg.n ? cfg.n : 6;
  const int g_lo = cfg.g ? cfg.g : 1, g_hi = cfg.g ? cfg.g : 3;
  check_range("n", n_lo, 1, cfg.max_n);
  check_range("g", g_lo, 1, cfg.max_g);
  for (int n = n_lo; n <= n_hi; ++n)
    for (int g = g_lo; g <= g_hi; ++g) {
      const auto a = n_poly(n, g, cfg.jobs);
      const auto b = n_poly_alt(n, g, cfg.jobs);
      rep.check(Json{{"check", "crossformula"},
                     {"n", n},
                     {"g", g},
                     {"expected", to_string(a.poly)},
                     {"got", to_string(b.poly)}},
                a.poly == b.poly);
    }
  return rep.exit_code();
}

int verify_sl2(const RunConfig& cfg) {
  const auto [p, k] = prime_power(cfg.q);
  if (p == 2) throw UsageError("--q must be odd");
  check_range("g", cfg.g, 1, cfg.max_g);
  Json base{{"check", "sl2"}, {"q", cfg.q}, {"g", cfg.g}};
  Reporter rep;
  try {
    const FqField F = build_field(p, k);
    const GroupTable gt = enumerate_sln(F, 2, true, cfg.group_budget);
    const BigInt conv = genus_count(gt, cfg.g, root_of_unity_scalar(F, 2, 1), cfg.work_budget, cfg.jobs);
    const BigInt frob = frobenius_from_table(sl2_central_table(cfg.q), sln_order(2, cfg.q), cfg.g);
    const BigInt pg = pgln_order(2, cfg.q);
    const BigInt closed = n2_closed_form(cfg.q, cfg.g) * pg;
    Json j = base;
    j["convolution"] = conv.get_str();
    j["character_sum"] = frob.get_str();
    j["closed_form"] = closed.get_str();
    j["pgln_order"] = pg.get_str();
    rep.check(j, conv == frob && frob == closed);
  } catch (const BudgetExceeded& e) {
    rep.skip(base, e.what());
  }
  return rep.exit_code();
}

int dispatch(const RunConfig& cfg) {
  if (cfg.command == "epoly") return cmd_epoly(cfg);
  if (cfg.command == "euler") return cmd_euler(cfg);
  if (cfg.command == "types") return cmd_types(cfg);
  if (cfg.command == "coeff") return cmd_coeff(cfg);
  if (cfg.subtarget == "brute") return verify_brute(cfg);
  if (cfg.subtarget == "gamma") return verify_gamma(cfg);
  if (cfg.subtarget == "hanlon") return verify_hanlon(cfg);
  if (cfg.subtarget == "crossformula") return verify_crossformula(cfg);
  if (cfg.subtarget == "sl2") return verify_sl2(cfg);
  throw UsageError("unknown command");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"E-polynomials of twisted Sl_n character varieties"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"plain", "json", "csv", "latex"}));
  app.add_option("--cache-dir", cfg.cache_dir, std::string("Result cache directory (overrides $") + kCacheEnv + ")");
  app.add_option("-j,--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_flag("-v,--verbose", cfg.verbosity, "Log progress to stderr");
  app.add_option("--max-n", cfg.max_n, "Upper bound accepted for --n");
  app.add_option("--max-g", cfg.max_g, "Upper bound accepted for --g");
  app.add_option("--group-budget", cfg.group_budget, "Largest group or multipartition enumeration");
  app.add_option("--kernel-budget", cfg.kernel_budget, "Largest kernel enumeration per matrix");
  app.add_option("--work-budget", cfg.work_budget, "Largest |G| * classes * g for convolutions");
  app.add_option("--label-budget", cfg.label_budget, "Largest character group q^D - 1");
  app.add_option("--tuple-budget", cfg.tuple_budget, "Largest tuple enumeration in Z-hat sums");
  app.add_option("--poset-budget", cfg.poset_budget, "Largest partition lattice for Hanlon checks");

  auto* epoly = app.add_subcommand("epoly", "E-polynomial and structural report");
  epoly->add_option("--n", cfg.n)->required();
  epoly->add_option("--g", cfg.g)->required();
  epoly->add_flag("--alt", cfg.alt, "Use the quotient-type formula");

  auto* euler = app.add_subcommand("euler", "Euler characteristic against its closed form");
  euler->add_option("--n", cfg.n)->required();
  euler->add_option("--g", cfg.g)->required();

  auto* types = app.add_subcommand("types", "Pure types of size n");
  types->add_option("--n", cfg.n)->required();

  auto* coeff = app.add_subcommand("coeff", "Coefficients C_tau^t for all pure types and t | n");
  coeff->add_option("--n", cfg.n)->required();
  coeff->add_flag("--nonzero", cfg.nonzero, "Only print nonzero coefficients");

  auto* verify = app.add_subcommand("verify", "Run a verification suite (JSON lines)");
  verify->require_subcommand(1);
  auto* brute = verify->add_subcommand("brute", "Count commutator solutions in Sl_n(q)");
  brute->add_option("--n", cfg.n)->required();
  brute->add_option("--q", cfg.q)->required();
  brute->add_option("--g", cfg.g, "Genus (default 1)");
  brute->add_option("--z-power", cfg.z_power, "Use zeta_n^j as the twist");
  auto* gamma = verify->add_subcommand("gamma", "Character-sum lemmas over Z/(q^D - 1)");
  gamma->add_option("--q", cfg.q)->required();
  gamma->add_option("--n", cfg.n)->required();
  gamma->add_option("--t", cfg.t, "Only this t (default: all t | n)");
  gamma->add_option("--d", cfg.D, "Only this D (default: all)");
  auto* hanlon = verify->add_subcommand("hanlon", "Moebius values of fixed partition lattices");
  hanlon->add_option("--max", cfg.max, "Largest ground set")->capture_default_str();
  auto* cross = verify->add_subcommand("crossformula", "Both E-polynomial formulas agree");
  cross->add_option("--n", cfg.n, "Only this n (default: 1..6)");
  cross->add_option("--g", cfg.g, "Only this g (default: 1..3)");
  auto* sl2 = verify->add_subcommand("sl2", "Sl_2(q) counts by convolution, characters and closed form");
  sl2->add_option("--q", cfg.q)->required();
  sl2->add_option("--g", cfg.g, "Genus (default 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (auto* sub : {brute, sl2})
    if (sub->parsed() && cfg.g == 0) cfg.g = sub == brute ? 1 : 2;
  for (auto* sub : {epoly, euler, types, coeff, verify})
    if (sub->parsed()) cfg.command = sub->get_name();
  for (auto* sub : {brute, gamma, hanlon, cross, sl2})
    if (sub->parsed()) cfg.subtarget = sub->get_name();

  try {
    return dispatch(cfg);
  } catch (const UsageError& e) {
    std::cerr << "slnpoly: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "slnpoly: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "slnpoly: error: " << e.what() << "\n";
    return 1;
  }
}
