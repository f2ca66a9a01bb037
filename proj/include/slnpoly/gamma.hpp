// Copyright (C) 2026 The slnpoly Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "slnpoly/cyclotomic.hpp"
#include "slnpoly/exactmath.hpp"
#include "slnpoly/partitions.hpp"
#include "slnpoly/types.hpp"

namespace slnpoly {

/// q = 1 mod n for odd n, q = 1 mod 2n for even n.
inline bool satisfies_oddity(std::int64_t q, int n) {
  if (n < 1 || q < 2) return false;
  const std::int64_t m = (n % 2 == 0) ? 2 * static_cast<std::int64_t>(n) : n;
  return (q - 1) % m == 0;
}

namespace detail {
inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}
inline std::int64_t checked_qpow_minus_one(std::int64_t q, int D, std::int64_t limit) {
  std::int64_t p = 1;
  for (int i = 0; i < D; ++i) {
    if (p > limit / q) throw BudgetExceeded("q^D exceeds the label budget");
    p *= q;
  }
  return p - 1;
}
}  // namespace detail

/// The character group of F_{q^D}^x, realized as Z/M with M = q^D - 1, together
/// with the twist data (n, t) and the subgroup generated by delta^s.
///
/// A label e stands for the character sending a fixed generator to exp(2 pi i e / M).
/// delta generates the image of Gamma_1, so delta^s has label s M / (q-1) = M / t.
struct GammaContext {
  std::int64_t q;
  int D;
  std::int64_t M;
  int t;
  int n;
  std::int64_t s;
  std::int64_t deltaS_label;
  std::int64_t subgroup_modulus;

  static constexpr std::int64_t kDefaultLabelBudget = 50'000'000;

  GammaContext(std::int64_t q_, int n_, int t_, int D_, std::int64_t label_budget = kDefaultLabelBudget)
      : q(q_), D(D_), t(t_), n(n_) {
    if (q < 2) throw std::invalid_argument("GammaContext: q must be >= 2");
    if (n < 1 || (q - 1) % n != 0) throw std::invalid_argument("GammaContext: n must divide q - 1");
    if (t < 1 || n % t != 0) throw std::invalid_argument("GammaContext: t must divide n");
    if (D < 1) throw std::invalid_argument("GammaContext: D must be >= 1");
    M = detail::checked_qpow_minus_one(q, D, label_budget + 1);
    s = (q - 1) / t;
    deltaS_label = (s * (M / (q - 1))) % M;
    subgroup_modulus = M / t;
  }

  bool oddity() const { return satisfies_oddity(q, n); }
  /// Order of delta^s inside Z/M.
  std::int64_t delta_s_order() const { return deltaS_label == 0 ? 1 : M / std::gcd(M, deltaS_label); }
};

/// Size of the Frobenius orbit of label e in Z/M.
inline int char_degree(const GammaContext& ctx, std::int64_t e) {
  if (e < 0 || e >= ctx.M) throw std::out_of_range("char_degree: label out of range");
  std::int64_t x = e;
  for (int r = 1;; ++r) {
    x = detail::mulmod(x, ctx.q, ctx.M);
    if (x == e) return r;
  }
}

/// Degree of the class of e in Z/M modulo <delta^s>.
inline int char_newdegree(const GammaContext& ctx, std::int64_t e) {
  if (e < 0 || e >= ctx.M) throw std::out_of_range("char_newdegree: label out of range");
  const std::int64_t mod = ctx.subgroup_modulus;
  const std::int64_t x = e % mod;
  std::int64_t y = x;
  for (int r = 1;; ++r) {
    y = detail::mulmod(y, ctx.q, mod);
    if (y == x) return r;
  }
}

/// alpha_e(zeta_n^power) with zeta_n the (M/n)-th power of the generator.
inline CycloInt eval_at_zeta(const GammaContext& ctx, std::int64_t e, std::int64_t power) {
  const std::int64_t n = ctx.n;
  const std::int64_t ex = detail::mulmod(((e % n) + n) % n, ((power % n) + n) % n, n);
  return CycloInt::root(ctx.n, ex);
}

/// Order of the subgroup of Z/(M/t) fixed by Frob^{d1}, counted directly.
inline std::int64_t fixed_subgroup_order_brute(const GammaContext& ctx, int d1) {
  const std::int64_t mod = ctx.subgroup_modulus;
  const std::int64_t k = detail::checked_qpow_minus_one(ctx.q, d1, std::int64_t{1} << 62) % mod;
  std::int64_t count = 0;
  for (std::int64_t c = 0; c < mod; ++c)
    if (detail::mulmod(c, k, mod) == 0) ++count;
  return count;
}

/// (q^{d1} - 1)/t * gcd(D/d1, t).
inline std::int64_t fixed_subgroup_order_formula(std::int64_t q, int D, int t, int d1) {
  if (d1 < 1 || D % d1 != 0) throw std::invalid_argument("fixed_subgroup_order_formula: d1 must divide D");
  const std::int64_t qd = detail::checked_qpow_minus_one(q, d1, std::int64_t{1} << 62);
  if (qd % t != 0) throw std::invalid_argument("fixed_subgroup_order_formula: t must divide q^{d1} - 1");
  return qd / t * std::gcd(static_cast<std::int64_t>(D / d1), static_cast<std::int64_t>(t));
}

/// Closed form for Z-hat: mu(dhat) (-dhat)^{m-1} (m-1)! (q-1)/t when gcd(D,t) = 1, else 0.
inline BigInt keylemma_value(std::int64_t q, int t, int D, int dhat, int m) {
  if (m < 1) throw std::invalid_argument("keylemma_value: m must be >= 1");
  if (std::gcd(D, t) != 1) return 0;
  BigInt v = BigInt(mobius(dhat)) * ipow(BigInt(-dhat), static_cast<std::uint64_t>(m - 1)) * factorial(m - 1);
  return v * BigInt(static_cast<long>((q - 1) / t));
}

namespace detail {

struct ClassInfo {
  std::int64_t label;
  std::int64_t orbit;
  int degree;
};

// Classes of Z/(M/t) with the given newdegree, with their Frobenius orbit ids
// (the least element of the orbit) and the degree of the label itself.
inline std::vector<ClassInfo> classes_of_newdegree(const GammaContext& ctx, int dhat) {
  const std::int64_t mod = ctx.subgroup_modulus;
  std::vector<ClassInfo> out;
  for (std::int64_t c = 0; c < mod; ++c) {
    if (char_newdegree(ctx, c) != dhat) continue;
    std::int64_t least = c;
    std::int64_t y = c;
    for (int r = 1; r < dhat; ++r) {
      y = mulmod(y, ctx.q, mod);
      least = std::min(least, y);
    }
    out.push_back({c, least, char_degree(ctx, c)});
  }
  return out;
}

inline void check_zhat_preconditions(const GammaContext& ctx, int dhat, const std::vector<int>& lambdas) {
  if (dhat < 1 || ctx.D % dhat != 0) throw std::invalid_argument("zhat: dhat must divide D");
  if ((ctx.t * dhat) % ctx.D != 0) throw std::invalid_argument("zhat: D must divide t * dhat");
  long sum = 0;
  for (int l : lambdas) {
    if (l < 1) throw std::invalid_argument("zhat: exponents must be positive");
    sum += l;
  }
  if (!lambdas.empty() && static_cast<long>(dhat) * ctx.t * sum != ctx.n)
    throw std::invalid_argument("zhat: n must equal dhat * t * sum(lambda)");
}

// Sum over ordered m-tuples of classes in pairwise distinct Frobenius orbits,
// drawing entry i from pools[i], of prod zeta_n^{c_i lambda_i that}.
inline CycloInt tuple_sum(const GammaContext& ctx, const std::vector<std::vector<ClassInfo>>& pools,
                          const std::vector<int>& lambdas, std::int64_t that, double budget) {
  double work = 1;
  for (const auto& p : pools) work *= static_cast<double>(p.size());
  if (work > budget) throw BudgetExceeded("zhat: tuple enumeration exceeds budget");
  const int n = ctx.n;
  std::vector<long long> hist(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> used;
  const std::size_t m = lambdas.size();
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t ex) {
    if (i == m) {
      ++hist[static_cast<std::size_t>(ex)];
      return;
    }
    const std::int64_t step = (static_cast<std::int64_t>(lambdas[i]) * that) % n;
    for (const auto& c : pools[i]) {
      bool clash = false;
      for (auto o : used)
        if (o == c.orbit) {
          clash = true;
          break;
        }
      if (clash) continue;
      used.push_back(c.orbit);
      rec(i + 1, (ex + mulmod(c.label % n, step, n)) % n);
      used.pop_back();
    }
  };
  rec(0, 0);
  return CycloInt::from_histogram(n, hist);
}

}  // namespace detail

/// Z-hat(D, t, dhat, lambda) by direct enumeration of m-tuples of classes of
/// newdegree dhat in Z/(M/t) with pairwise distinct Frobenius orbits.
inline CycloInt zhat_brute(const GammaContext& ctx, int dhat, const std::vector<int>& lambdas,
                           double budget = 2e8) {
  detail::check_zhat_preconditions(ctx, dhat, lambdas);
  if (lambdas.empty()) return CycloInt::one(ctx.n);
  const std::int64_t that = static_cast<std::int64_t>(ctx.t) * dhat / ctx.D;
  auto pool = detail::classes_of_newdegree(ctx, dhat);
  std::vector<std::vector<detail::ClassInfo>> pools(lambdas.size(), pool);
  return detail::tuple_sum(ctx, pools, lambdas, that, budget);
}

/// The same sum with entry i further restricted to labels of degree d_i.
inline CycloInt z_brute_mixed_degrees(const GammaContext& ctx, const std::vector<int>& degrees, int dhat,
                                      const std::vector<int>& lambdas, double budget = 2e8) {
  if (degrees.size() != lambdas.size()) throw std::invalid_argument("z_brute_mixed_degrees: length mismatch");
  if (lambdas.empty()) return CycloInt::one(ctx.n);
  detail::check_zhat_preconditions(ctx, dhat, lambdas);
  for (int d : degrees)
    if (d < 1 || d % dhat != 0 || ctx.D % d != 0)
      throw std::invalid_argument("z_brute_mixed_degrees: each degree must be a multiple of dhat dividing D");
  const std::int64_t that = static_cast<std::int64_t>(ctx.t) * dhat / ctx.D;
  auto pool = detail::classes_of_newdegree(ctx, dhat);
  std::vector<std::vector<detail::ClassInfo>> pools;
  for (int d : degrees) {
    std::vector<detail::ClassInfo> p;
    for (const auto& c : pool)
      if (c.degree == d) p.push_back(c);
    pools.push_back(std::move(p));
  }
  return detail::tuple_sum(ctx, pools, lambdas, that, budget);
}

/// delta(zeta_n)^{d s C(that,2) sum_lambda}; always +1 or -1.
inline int sign_factor(std::int64_t q, int n, int t, int d, int that, int sum_lambda) {
  if (n < 1 || (q - 1) % n != 0) throw std::invalid_argument("sign_factor: n must divide q - 1");
  if (t < 1 || n % t != 0) throw std::invalid_argument("sign_factor: t must divide n");
  if (d < 1 || that < 1 || (static_cast<std::int64_t>(d) * that) % t != 0)
    throw std::invalid_argument("sign_factor: t must divide d * that");
  const std::int64_t s = (q - 1) / t;
  const std::int64_t binom = static_cast<std::int64_t>(that) * (that - 1) / 2;
  __int128 ex = static_cast<__int128>(d) * s % n * (binom % n) % n * (sum_lambda % n) % n;
  if (ex == 0) return 1;
  if (2 * ex == n) return -1;
  throw std::logic_error("sign_factor: exponent is not a multiple of n/2");
}

/// One Frobenius orbit of Gamma_d (by representative label in Z/(q^d - 1)) and its partition.
struct OrbitAssignment {
  int d;
  std::int64_t label;
  Partition lambda;
};
using Multipartition = std::vector<OrbitAssignment>;

/// prod over orbits of zeta_n^{e |Lambda(e)|}, evaluating each label in its own Gamma_d.
inline CycloInt delta_eval(int n, const Multipartition& lambda) {
  std::int64_t ex = 0;
  for (const auto& a : lambda) ex = (ex + (a.label % n) * (a.lambda.size() % n)) % n;
  return CycloInt::root(n, ex);
}

/// A type whose components are pure types of distinct degrees.
using MixedType = std::vector<PureType>;

inline int mixed_size(const MixedType& tau) {
  int s = 0;
  for (const auto& p : tau) s += p.size();
  return s;
}

/// Frobenius orbits of exact degree d in Z/(q^d - 1) and their grouping into
/// <Frob, delta^s> orbits, where delta^s acts by e -> e + (q^d - 1)/t.
struct DegreeOrbits {
  int d = 0;
  std::int64_t Md = 0;
  std::vector<std::vector<std::int64_t>> frob;       // labels of each Frobenius orbit
  std::vector<std::vector<std::size_t>> supers;      // Frobenius orbit indices of each super-orbit
  std::vector<int> super_newdegree;
  std::vector<std::int64_t> super_weight;            // sum over member orbits of (label mod n)
  std::vector<std::size_t> shift;                    // Frobenius orbit reached by one delta^s step
};

inline DegreeOrbits degree_orbits(std::int64_t q, int n, int t, int d, std::int64_t label_budget = 5'000'000) {
  DegreeOrbits out;
  out.d = d;
  out.Md = detail::checked_qpow_minus_one(q, d, label_budget);
  const std::int64_t Md = out.Md;
  GammaContext ctx(q, n, t, d, label_budget);
  std::vector<std::int64_t> orbit_of(static_cast<std::size_t>(Md), -1);
  for (std::int64_t e = 0; e < Md; ++e) {
    if (orbit_of[static_cast<std::size_t>(e)] >= 0) continue;
    std::vector<std::int64_t> orb{e};
    for (std::int64_t y = detail::mulmod(e, q, Md); y != e; y = detail::mulmod(y, q, Md)) orb.push_back(y);
    const auto id = static_cast<std::int64_t>(out.frob.size());
    for (auto y : orb) orbit_of[static_cast<std::size_t>(y)] = static_cast<int>(orb.size()) == d ? id : -2;
    if (static_cast<int>(orb.size()) == d) out.frob.push_back(std::move(orb));
  }
  const std::int64_t step = Md / t;
  out.shift.resize(out.frob.size());
  for (std::size_t i = 0; i < out.frob.size(); ++i)
    out.shift[i] = static_cast<std::size_t>(orbit_of[static_cast<std::size_t>((out.frob[i][0] + step) % Md)]);
  std::vector<bool> seen(out.frob.size(), false);
  for (std::size_t i = 0; i < out.frob.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> members;
    for (std::size_t j = i; !seen[j]; j = out.shift[j]) {
      seen[j] = true;
      members.push_back(j);
    }
    std::int64_t w = 0;
    for (auto j : members) w = (w + out.frob[j][0] % n) % n;
    out.super_weight.push_back(w);
    out.super_newdegree.push_back(char_newdegree(ctx, out.frob[i][0]));
    out.supers.push_back(std::move(members));
  }
  return out;
}

/// New-type of a delta^s-stable multipartition: (degree, newdegree, partition) -> number of
/// <Frob, delta^s> orbits carrying that partition.
using NewType = std::map<std::tuple<int, int, Partition>, int>;

inline bool is_pure_newtype(const NewType& nt) {
  int first = -1;
  for (const auto& [key, m] : nt) {
    int dh = std::get<1>(key);
    if (first < 0) first = dh;
    else if (dh != first) return false;
  }
  return true;
}

struct ShatResult {
  CycloInt total;
  std::map<NewType, CycloInt> by_new_type;
  std::uint64_t multipartitions = 0;
};

namespace detail {

using NewTypeHist = std::map<NewType, std::vector<long long>>;

// Enumerates delta^s-stable assignments for one pure component by choosing a
// partition (or nothing) for each <Frob, delta^s> orbit.
inline NewTypeHist stable_assignments(const DegreeOrbits& orbits, const PureType& comp, int n,
                                      std::uint64_t& visits, std::uint64_t budget, std::uint64_t& count) {
  const auto& mults = comp.mults();
  std::vector<int> rem;
  for (const auto& [l, m] : mults) rem.push_back(m);
  int remaining_total = comp.m_count();
  NewTypeHist out;
  NewType cur;
  // Each level picks the next super-orbit that carries a partition, so the
  // recursion depth is at most m(tau) however many orbits there are.
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t first, std::int64_t ex) {
    if (remaining_total == 0) {
      auto& h = out[cur];
      if (h.empty()) h.assign(static_cast<std::size_t>(n), 0);
      ++h[static_cast<std::size_t>(ex)];
      ++count;
      return;
    }
    for (std::size_t i = first; i < orbits.supers.size(); ++i) {
      if (++visits > budget) throw BudgetExceeded("shat: multipartition enumeration exceeds budget");
      const int k = static_cast<int>(orbits.supers[i].size());
      if (k > remaining_total) continue;
      for (std::size_t j = 0; j < mults.size(); ++j) {
        if (rem[j] < k) continue;
        rem[j] -= k;
        remaining_total -= k;
        auto key = std::make_tuple(orbits.d, orbits.super_newdegree[i], mults[j].first);
        ++cur[key];
        const std::int64_t add = orbits.super_weight[i] * (mults[j].first.size() % n) % n;
        rec(i + 1, (ex + add) % n);
        if (--cur[key] == 0) cur.erase(key);
        rem[j] += k;
        remaining_total += k;
      }
    }
  };
  rec(0, 0);
  return out;
}

inline NewTypeHist combine(const NewTypeHist& a, const NewTypeHist& b, int n) {
  NewTypeHist out;
  for (const auto& [ka, ha] : a)
    for (const auto& [kb, hb] : b) {
      NewType key = ka;
      for (const auto& [k, m] : kb) key[k] += m;
      auto& h = out[key];
      if (h.empty()) h.assign(static_cast<std::size_t>(n), 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h[static_cast<std::size_t>((i + j) % n)] += ha[static_cast<std::size_t>(i)] * hb[static_cast<std::size_t>(j)];
    }
  return out;
}

inline void check_mixed_type(const MixedType& tau) {
  if (tau.empty()) throw std::invalid_argument("shat: empty type");
  for (std::size_t i = 0; i < tau.size(); ++i)
    for (std::size_t j = i + 1; j < tau.size(); ++j)
      if (tau[i].degree() == tau[j].degree()) throw std::invalid_argument("shat: components must have distinct degrees");
}

}  // namespace detail

/// S-hat(t, tau): sum of Delta_Lambda(zeta_n) over multipartitions of type tau
/// fixed by delta^s, with the total split by new-type.
inline ShatResult shat_brute(std::int64_t q, int n, int t, const MixedType& tau, std::uint64_t budget = 20'000'000) {
  detail::check_mixed_type(tau);
  if (mixed_size(tau) != n) throw std::invalid_argument("shat: type size must equal n");
  std::uint64_t visits = 0;
  detail::NewTypeHist acc{{NewType{}, std::vector<long long>(static_cast<std::size_t>(n), 0)}};
  acc.begin()->second[0] = 1;
  for (const auto& comp : tau) {
    auto orbits = degree_orbits(q, n, t, comp.degree());
    std::uint64_t local = 0;
    auto part = detail::stable_assignments(orbits, comp, n, visits, budget, local);
    acc = detail::combine(acc, part, n);
  }
  ShatResult res{CycloInt(n), {}, 0};
  std::vector<long long> total(static_cast<std::size_t>(n), 0);
  for (const auto& [key, h] : acc) {
    long long terms = 0;
    for (int i = 0; i < n; ++i) {
      total[static_cast<std::size_t>(i)] += h[static_cast<std::size_t>(i)];
      terms += h[static_cast<std::size_t>(i)];
    }
    res.multipartitions += static_cast<std::uint64_t>(terms);
    res.by_new_type.emplace(key, CycloInt::from_histogram(n, h));
  }
  res.total = CycloInt::from_histogram(n, total);
  return res;
}

inline ShatResult shat_brute(std::int64_t q, int n, int t, const PureType& tau, std::uint64_t budget = 20'000'000) {
  return shat_brute(q, n, t, MixedType{tau}, budget);
}

/// S-hat by a second route: enumerate every multipartition of type tau on
/// Frobenius orbits, keep those invariant under delta^s, and add up delta_eval.
inline CycloInt shat_by_filtering(std::int64_t q, int n, int t, const MixedType& tau, std::uint64_t budget = 20'000'000) {
  detail::check_mixed_type(tau);
  if (mixed_size(tau) != n) throw std::invalid_argument("shat: type size must equal n");
  std::uint64_t visits = 0;
  CycloInt product = CycloInt::one(n);
  for (const auto& comp : tau) {
    auto orbits = degree_orbits(q, n, t, comp.degree());
    const auto& mults = comp.mults();
    std::vector<int> rem;
    for (const auto& [l, m] : mults) rem.push_back(m);
    int remaining_total = comp.m_count();
    std::vector<int> assigned(orbits.frob.size(), -1);
    CycloInt sum = CycloInt::zero(n);
    std::vector<std::size_t> used;
    std::function<void(std::size_t)> rec = [&](std::size_t first) {
      if (remaining_total == 0) {
        ++visits;
        for (auto j : used)
          if (assigned[j] != assigned[orbits.shift[j]]) return;
        Multipartition lam;
        for (auto j : used) lam.push_back({orbits.d, orbits.frob[j][0], mults[static_cast<std::size_t>(assigned[j])].first});
        sum += delta_eval(n, lam);
        return;
      }
      for (std::size_t i = first; i + static_cast<std::size_t>(remaining_total) <= orbits.frob.size(); ++i) {
        if (++visits > budget) throw BudgetExceeded("shat: multipartition enumeration exceeds budget");
        for (std::size_t j = 0; j < mults.size(); ++j) {
          if (rem[j] == 0) continue;
          --rem[j];
          --remaining_total;
          assigned[i] = static_cast<int>(j);
          used.push_back(i);
          rec(i + 1);
          used.pop_back();
          assigned[i] = -1;
          ++rem[j];
          ++remaining_total;
        }
      }
    };
    rec(0);
    product = product * sum;
  }
  return product;
}

/// C_tau^t recovered from the brute S-hat values: (t/(q-1)) sum_{k | n/t} mu(k) S-hat(kt, tau).
inline BigRat ctaut_from_gamma(std::int64_t q, const PureType& tau, int t, std::uint64_t budget = 20'000'000) {
  const int n = tau.size();
  if (t < 1 || n % t != 0) throw std::invalid_argument("ctaut_from_gamma: t must divide |tau|");
  if ((q - 1) % n != 0) throw std::invalid_argument("ctaut_from_gamma: n must divide q - 1");
  CycloInt acc = CycloInt::zero(n);
  for (auto k : divisors(n / t)) {
    int mu = mobius(k);
    if (mu == 0) continue;
    acc += shat_brute(q, n, static_cast<int>(k) * t, tau, budget).total * BigInt(mu);
  }
  if (!acc.is_rational()) throw std::logic_error("ctaut_from_gamma: S-hat combination is not rational");
  BigRat r(acc.rational_value() * t, BigInt(static_cast<long>(q - 1)));
  r.canonicalize();
  return r;
}

/// sum over labels e of exp(2 pi i e a / M), as an element of Z[zeta_M].
inline CycloInt character_sum(std::int64_t M, const std::vector<std::int64_t>& labels, std::int64_t a) {
  if (M < 1 || M > 100000) throw std::invalid_argument("character_sum: modulus out of range");
  std::vector<long long> hist(static_cast<std::size_t>(M), 0);
  const std::int64_t am = ((a % M) + M) % M;
  for (auto e : labels) ++hist[static_cast<std::size_t>(detail::mulmod(((e % M) + M) % M, am, M))];
  return CycloInt::from_histogram(static_cast<int>(M), hist);
}

}  // namespace slnpoly
