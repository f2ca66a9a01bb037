// Copyright (C) 2026 The slnpoly Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "slnpoly/coefficients.hpp"
#include "slnpoly/gamma.hpp"

namespace slnpoly {
namespace {

struct Context {
  long q;
  int n;
};

// (q, n) pairs with q in {5, 7, 17}, n in {2, 3, 4} satisfying the oddity condition.
const std::vector<Context> kOddity{{5, 2}, {7, 3}, {17, 2}, {17, 4}};

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

// Every (t, dhat, D, lambda) admissible for the Z-hat sum at (q, n) with m <= 3.
struct ZhatCase {
  int t, dhat, D;
  std::vector<int> lambdas;
};
std::vector<ZhatCase> zhat_cases(int n) {
  std::vector<ZhatCase> out;
  for (auto t64 : divisors(n)) {
    const int t = static_cast<int>(t64);
    for (int dhat = 1; t * dhat <= n; ++dhat) {
      if (n % (t * dhat) != 0) continue;
      for (int D = dhat; D <= t * dhat; D += dhat) {
        if ((t * dhat) % D != 0) continue;
        std::vector<int> cur;
        std::vector<std::vector<int>> ls;
        compositions(n / (t * dhat), 3, cur, ls);
        for (auto& l : ls) out.push_back({t, dhat, D, l});
      }
    }
  }
  return out;
}

TEST(Gamma, ContextFields) {
  GammaContext c(5, 2, 2, 2);
  EXPECT_EQ(c.M, 24);
  EXPECT_EQ(c.s, 2);
  EXPECT_EQ(c.deltaS_label, 12);
  EXPECT_EQ(c.subgroup_modulus, 12);
  EXPECT_EQ(c.delta_s_order(), 2);
  EXPECT_TRUE(c.oddity());
  EXPECT_THROW(GammaContext(5, 3, 1, 1), std::invalid_argument);
  EXPECT_THROW(GammaContext(5, 4, 3, 1), std::invalid_argument);
  EXPECT_THROW(GammaContext(17, 4, 1, 12, 1'000'000), BudgetExceeded);
  for (long q : {5L, 7L, 13L, 17L})
    for (auto n : divisors(q - 1))
      for (auto t : divisors(n))
        for (int D = 1; D <= 3; ++D) EXPECT_EQ(GammaContext(q, static_cast<int>(n), static_cast<int>(t), D).delta_s_order(), t);
}

TEST(Gamma, DegreeExamples) {
  GammaContext c(5, 2, 1, 2);
  EXPECT_EQ(char_degree(c, 0), 1);
  int deg1 = 0, deg2 = 0;
  for (std::int64_t e = 0; e < c.M; ++e) {
    int d = char_degree(c, e);
    if (d == 1) {
      ++deg1;
      EXPECT_EQ(e % 6, 0);
    }
    if (d == 2) ++deg2;
  }
  EXPECT_EQ(deg1, 4);
  EXPECT_EQ(deg2, 20);
  EXPECT_THROW(char_degree(c, 24), std::out_of_range);
}

TEST(Gamma, NewdegreeExamples) {
  GammaContext c(5, 2, 2, 2);
  std::set<std::int64_t> classes;
  for (std::int64_t e = 0; e < c.M; ++e)
    if (char_newdegree(c, e) == 1) classes.insert(e % c.subgroup_modulus);
  EXPECT_EQ(classes.size(), 4u);
  EXPECT_EQ(fixed_subgroup_order_formula(5, 2, 2, 1), 4);
}

TEST(Gamma, EvaluationExamples) {
  GammaContext c(5, 2, 1, 2);
  EXPECT_EQ(eval_at_zeta(c, 0, 1), CycloInt::one(2));
  EXPECT_EQ(eval_at_zeta(c, 4, 1), CycloInt::one(2));
  EXPECT_EQ(eval_at_zeta(c, 3, 1), CycloInt::integer(2, -1));
  EXPECT_EQ(delta_eval(4, {}), CycloInt::one(4));
  EXPECT_EQ(delta_eval(4, {{1, 0, Partition{2, 2}}}), CycloInt::one(4));
  EXPECT_EQ(delta_eval(4, {{1, 1, Partition{1}}, {2, 2, Partition{1}}}), CycloInt::root(4, 3));
}

TEST(Gamma, KeyLemmaExamples) {
  GammaContext c(5, 2, 1, 2);
  EXPECT_EQ(zhat_brute(c, 2, {1}), CycloInt::integer(2, -4));
  EXPECT_EQ(keylemma_value(5, 1, 2, 2, 1), -4);
  GammaContext c2(5, 2, 2, 1);
  EXPECT_EQ(zhat_brute(c2, 1, {1}), CycloInt::integer(2, 2));
  EXPECT_EQ(zhat_brute(c, 2, {}), CycloInt::one(2));
  EXPECT_THROW(zhat_brute(c, 1, {1}), std::invalid_argument);
  // Outside the oddity regime, with gcd(D, t) > 1: observed to vanish as well.
  GammaContext c3(13, 4, 2, 2);
  EXPECT_TRUE(zhat_brute(c3, 1, {2}).is_zero());
  EXPECT_TRUE(zhat_brute(c3, 1, {1, 1}).is_zero());
  EXPECT_TRUE(zhat_brute(c3, 2, {1}).is_zero());
}

TEST(Gamma, MixedDegreeExamples) {
  for (long q : {5L, 17L}) {
    GammaContext c(q, 4, 2, 2);
    EXPECT_TRUE(z_brute_mixed_degrees(c, {1, 2}, 1, {1, 1}).is_zero());
    EXPECT_TRUE(z_brute_mixed_degrees(c, {2, 1}, 1, {1, 1}).is_zero());
    EXPECT_FALSE(z_brute_mixed_degrees(c, {1, 1}, 1, {1, 1}).is_zero());
    EXPECT_FALSE(z_brute_mixed_degrees(c, {2, 2}, 1, {1, 1}).is_zero());
  }
  GammaContext c(5, 4, 2, 2);
  EXPECT_EQ(z_brute_mixed_degrees(c, {}, 1, {}), CycloInt::one(4));
  EXPECT_THROW(z_brute_mixed_degrees(c, {3, 2}, 1, {1, 1}), std::invalid_argument);
}

TEST(Gamma, ShatExamples) {
  MixedType mixed{PureType(1, {{Partition{1}, 1}}), PureType(2, {{Partition{1}, 1}})};
  for (int t : {1, 3}) {
    EXPECT_TRUE(shat_brute(7, 3, t, mixed).total.is_zero());
    EXPECT_TRUE(shat_by_filtering(7, 3, t, mixed).is_zero());
  }
  for (auto [q, n] : kOddity) {
    auto r = shat_brute(q, n, 1, trivial_type(n));
    EXPECT_EQ(r.total, CycloInt::integer(n, q - 1));
  }
  EXPECT_THROW(shat_brute(7, 3, 1, MixedType{PureType(1, {{Partition{1}, 1}}), PureType(1, {{Partition{2}, 1}})}),
               std::invalid_argument);
  EXPECT_THROW(shat_brute(7, 3, 1, PureType(1, {{Partition{1}, 1}}), 10), std::invalid_argument);
  EXPECT_THROW(shat_brute(7, 3, 1, PureType(1, {{Partition{1}, 3}}), 10), BudgetExceeded);
}

TEST(Gamma, CtautExamples) {
  EXPECT_EQ(ctaut_from_gamma(5, trivial_type(2), 1), BigRat(1));
  EXPECT_EQ(ctaut_from_gamma(5, PureType(2, {{Partition{1}, 1}}), 2), BigRat(-1));
  EXPECT_EQ(ctaut_from_gamma(5, PureType(2, {{Partition{1}, 1}}), 1), BigRat(0));
}

TEST(Gamma, SignFactorExamples) {
  EXPECT_EQ(sign_factor(13, 4, 1, 1, 1, 4), 1);
  EXPECT_THROW(sign_factor(13, 4, 4, 1, 1, 1), std::invalid_argument);
  int minus = 0;
  for (int t : {1, 2, 4})
    for (int d = 1; d <= 4; ++d)
      for (int that = 1; that <= 4; ++that)
        for (int sl = 1; sl <= 4; ++sl)
          if ((d * that) % t == 0 && sign_factor(13, 4, t, d, that, sl) == -1) ++minus;
  EXPECT_GT(minus, 0);
}

TEST(GammaProperty, NewdegreeDividesDegree) {
  for (auto [q, n] : kOddity)
    for (auto t : divisors(n))
      for (int D = 1; D <= 3; ++D) {
        GammaContext c(q, n, static_cast<int>(t), D);
        if (c.M > 6000) continue;
        for (std::int64_t e = 0; e < c.M; ++e) {
          int d = char_degree(c, e);
          EXPECT_EQ(D % d, 0);
          EXPECT_EQ(d % char_newdegree(c, e), 0);
        }
      }
}

TEST(GammaProperty, FixedSubgroupOrder) {
  for (long q : {5L, 7L, 13L, 17L})
    for (auto t : divisors(q - 1))
      for (int D = 1; D <= 4; ++D) {
        GammaContext c(q, static_cast<int>(q - 1), static_cast<int>(t), D, 200'000);
        for (auto d1 : divisors(D))
          EXPECT_EQ(fixed_subgroup_order_brute(c, static_cast<int>(d1)),
                    fixed_subgroup_order_formula(q, D, static_cast<int>(t), static_cast<int>(d1)))
              << q << " t=" << t << " D=" << D << " d1=" << d1;
      }
}

TEST(GammaProperty, EvaluationWellDefinedOnClasses) {
  for (auto [q, n] : kOddity)
    for (const auto& zc : zhat_cases(n)) {
      GammaContext c(q, n, zc.t, zc.D);
      const std::int64_t that = static_cast<std::int64_t>(zc.t) * zc.dhat / zc.D;
      for (std::int64_t e = 0; e < c.M; ++e)
        ASSERT_EQ(eval_at_zeta(c, e, that), eval_at_zeta(c, (e + c.deltaS_label) % c.M, that));
    }
}

TEST(GammaProperty, KeyLemmaOnOddityContexts) {
  int checked = 0;
  for (auto [q, n] : kOddity)
    for (const auto& zc : zhat_cases(n)) {
      GammaContext c(q, n, zc.t, zc.D);
      auto z = zhat_brute(c, zc.dhat, zc.lambdas);
      ASSERT_TRUE(z.is_rational());
      EXPECT_EQ(z.rational_value(), keylemma_value(q, zc.t, zc.D, zc.dhat, static_cast<int>(zc.lambdas.size())))
          << "q=" << q << " n=" << n << " t=" << zc.t << " D=" << zc.D << " dhat=" << zc.dhat;
      ++checked;
    }
  EXPECT_GE(checked, 36);
}

TEST(GammaProperty, MixedDegreeVectorsVanish) {
  for (auto [q, n] : kOddity)
    for (const auto& zc : zhat_cases(n)) {
      if (zc.lambdas.size() < 2) continue;
      GammaContext c(q, n, zc.t, zc.D);
      std::vector<int> allowed;
      for (auto d : divisors(zc.D))
        if (d % zc.dhat == 0) allowed.push_back(static_cast<int>(d));
      // Enumerate every degree vector; mixed ones vanish and all of them sum to Z-hat.
      const std::size_t m = zc.lambdas.size();
      std::vector<std::size_t> idx(m, 0);
      CycloInt total = CycloInt::zero(n);
      while (true) {
        std::vector<int> degs;
        for (auto i : idx) degs.push_back(allowed[i]);
        auto z = z_brute_mixed_degrees(c, degs, zc.dhat, zc.lambdas);
        bool mixed = std::set<int>(degs.begin(), degs.end()).size() > 1;
        if (mixed) {
          EXPECT_TRUE(z.is_zero()) << "q=" << q << " t=" << zc.t << " D=" << zc.D;
        }
        total += z;
        std::size_t k = 0;
        while (k < m && ++idx[k] == allowed.size()) idx[k++] = 0;
        if (k == m) break;
      }
      EXPECT_EQ(total, zhat_brute(c, zc.dhat, zc.lambdas));
    }
}

TEST(GammaProperty, ShatRoutesAgreeAndNonPureVanishes) {
  for (auto [q, n] : std::vector<Context>{{5, 2}, {13, 2}, {7, 3}, {13, 3}, {17, 4}})
    for (const auto& tau : enumerate_pure_types(n))
      for (auto t : divisors(n)) {
        auto r = shat_brute(q, n, static_cast<int>(t), tau);
        EXPECT_EQ(r.total, shat_by_filtering(q, n, static_cast<int>(t), MixedType{tau}));
        CycloInt parts = CycloInt::zero(n);
        for (const auto& [nt, v] : r.by_new_type) parts += v;
        EXPECT_EQ(parts, r.total);
      }
  std::vector<std::pair<Context, MixedType>> mixed{
      {{7, 3}, {PureType(1, {{Partition{1}, 1}}), PureType(2, {{Partition{1}, 1}})}},
      {{17, 4}, {PureType(1, {{Partition{1}, 2}}), PureType(2, {{Partition{1}, 1}})}},
      {{17, 4}, {PureType(1, {{Partition{2}, 1}}), PureType(2, {{Partition{1}, 1}})}},
      {{17, 4}, {PureType(1, {{Partition{1}, 1}}), PureType(3, {{Partition{1}, 1}})}},
      {{13, 3}, {PureType(1, {{Partition{1}, 1}}), PureType(2, {{Partition{1}, 1}})}}};
  for (const auto& [ctx, tau] : mixed) {
    for (auto t : divisors(ctx.n)) {
      EXPECT_TRUE(shat_brute(ctx.q, ctx.n, static_cast<int>(t), tau).total.is_zero());
      EXPECT_TRUE(shat_by_filtering(ctx.q, ctx.n, static_cast<int>(t), tau).is_zero());
    }
  }
}

TEST(GammaProperty, MixedNewdegreeGroupsCancel) {
  int mixed_groups = 0;
  auto check = [&](long q, int n, int t, const PureType& tau) {
    auto r = shat_brute(q, n, t, tau);
    for (const auto& [nt, v] : r.by_new_type)
      if (!is_pure_newtype(nt)) {
        ++mixed_groups;
        EXPECT_TRUE(v.is_zero()) << to_string(tau) << " t=" << t;
      }
  };
  for (auto [q, n] : kOddity)
    for (const auto& tau : enumerate_pure_types(n))
      for (auto t : divisors(n)) check(q, n, static_cast<int>(t), tau);
  // The smallest instance with a genuinely mixed new-type.
  check(13, 6, 2, PureType(2, {{Partition{1}, 3}}));
  check(25, 6, 2, PureType(2, {{Partition{1}, 3}}));
  EXPECT_GE(mixed_groups, 2);
}

TEST(GammaProperty, CtautIsQIndependentAndMatchesCoefficients) {
  for (int n : {2, 3})
    for (const auto& tau : enumerate_pure_types(n))
      for (auto t : divisors(n)) {
        std::set<std::string> values;
        for (long q : {5L, 7L, 13L}) {
          if (!satisfies_oddity(q, n)) continue;
          auto v = ctaut_from_gamma(q, tau, static_cast<int>(t));
          EXPECT_EQ(v, c_t(tau, static_cast<int>(t)));
          values.insert(to_string(v));
        }
        EXPECT_EQ(values.size(), 1u);
      }
}

TEST(GammaProperty, CharacterSumsVanishOffKernel) {
  std::mt19937 rng(424242);
  for (long q : {5L, 7L, 13L})
    for (auto t : divisors(q - 1))
      for (int D = 1; D <= 2; ++D) {
        const std::int64_t M = D == 1 ? q - 1 : q * q - 1;
        const std::int64_t step = M / t;
        for (int trial = 0; trial < 5; ++trial) {
          // A random union of cosets of <M/t>.
          std::vector<std::int64_t> labels;
          std::bernoulli_distribution coin(0.4);
          for (std::int64_t r = 0; r < step; ++r)
            if (coin(rng))
              for (std::int64_t k = 0; k < t; ++k) labels.push_back(r + k * step);
          for (std::int64_t a = 0; a < M; ++a)
            if (a % t != 0) {
              EXPECT_TRUE(character_sum(M, labels, a).is_zero()) << "M=" << M << " a=" << a;
            }
        }
      }
}

TEST(Gamma, ShatHandlesManyOrbits) {
  // q^6 - 1 labels give about 400k orbits of degree 6; the enumeration must not recurse per orbit.
  const PureType big(6, {{Partition{1}, 1}});
  for (int t : {1, 2}) EXPECT_EQ(shat_brute(13, 6, t, big).total, shat_by_filtering(13, 6, t, MixedType{big}));
  EXPECT_THROW(shat_brute(13, 6, 1, PureType(3, {{Partition{1}, 2}}), 1000), BudgetExceeded);
}

}  // namespace
}  // namespace slnpoly
