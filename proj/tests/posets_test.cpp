// Copyright (C) 2026 The slnpoly Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "slnpoly/posets.hpp"

namespace slnpoly {
namespace {

std::vector<long> bell_numbers(int N) {
  // Bell triangle.
  std::vector<long> bell{1};
  std::vector<long> row{1};
  for (int i = 1; i <= N; ++i) {
    std::vector<long> next{row.back()};
    for (long x : row) next.push_back(next.back() + x);
    row = next;
    bell.push_back(row.front());
  }
  return bell;
}

// Block structure as a set of sets, so comparisons do not depend on the RGS encoding.
std::set<std::set<int>> as_blocks(const SetPartition& p) {
  std::set<std::set<int>> out;
  for (const auto& b : p.blocks()) out.insert(std::set<int>(b.begin(), b.end()));
  return out;
}

bool stable_under(const SetPartition& p, const std::vector<int>& rho) {
  auto blocks = as_blocks(p);
  for (const auto& b : blocks) {
    std::set<int> image;
    for (int x : b) image.insert(rho[static_cast<std::size_t>(x - 1)]);
    if (!blocks.count(image)) return false;
  }
  return true;
}

std::vector<std::vector<std::int64_t>> multiply(const std::vector<std::vector<std::int64_t>>& a,
                                                const std::vector<std::vector<std::int64_t>>& b) {
  const std::size_t n = a.size();
  std::vector<std::vector<std::int64_t>> c(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

TEST(Posets, ChainAndDivisors) {
  auto c = chain(2);
  EXPECT_EQ(mobius_matrix(c)[0][1], -1);
  auto p = divisor_poset(12);
  auto ds = divisors(12);
  auto mu = mobius_matrix(p);
  for (std::size_t a = 0; a < ds.size(); ++a)
    for (std::size_t b = 0; b < ds.size(); ++b) {
      if (ds[b] % ds[a] == 0)
        EXPECT_EQ(mu[a][b], mobius(ds[b] / ds[a]));
      else
        EXPECT_EQ(mu[a][b], 0);
    }
}

TEST(Posets, RejectsNonPosets) {
  EXPECT_THROW(FinitePoset(2, [](std::size_t, std::size_t) { return true; }), std::invalid_argument);
  EXPECT_THROW(FinitePoset(3, [](std::size_t a, std::size_t b) { return a == b || (a + 1) % 3 == b; }),
               std::invalid_argument);
}

TEST(Posets, SetPartitionCountsAndOrder) {
  EXPECT_EQ(set_partitions(3).size(), 5u);
  EXPECT_EQ(set_partitions(4).size(), 15u);
  auto bell = bell_numbers(10);
  for (int N = 1; N <= 10; ++N) {
    auto all = set_partitions(N);
    EXPECT_EQ(static_cast<long>(all.size()), bell[static_cast<std::size_t>(N)]);
    std::set<std::set<std::set<int>>> distinct;
    for (const auto& p : all) distinct.insert(as_blocks(p));
    EXPECT_EQ(distinct.size(), all.size());
  }
  auto fine = SetPartition::from_blocks(4, {{1}, {2}, {3, 4}});
  auto mid = SetPartition::from_blocks(4, {{1, 2}, {3, 4}});
  auto top = SetPartition::from_blocks(4, {{1, 2, 3, 4}});
  EXPECT_TRUE(refinement_leq(fine, mid));
  EXPECT_TRUE(refinement_leq(mid, top));
  EXPECT_FALSE(refinement_leq(mid, fine));
  EXPECT_EQ(to_string(fine), "1|2|34");
  EXPECT_EQ(SetPartition::from_blocks(4, {{3, 4}, {2}, {1}}), fine);
}

TEST(Posets, PartitionLatticeClosedForm) {
  auto all3 = set_partitions(3);
  auto bottom3 = SetPartition::from_blocks(3, {{1}, {2}, {3}});
  auto top3 = SetPartition::from_blocks(3, {{1, 2, 3}});
  EXPECT_EQ(mobius_partition_lattice(bottom3, top3), 2);
  auto bottom4 = SetPartition::from_blocks(4, {{1}, {2}, {3}, {4}});
  auto top4 = SetPartition::from_blocks(4, {{1, 2, 3, 4}});
  EXPECT_EQ(mobius_partition_lattice(bottom4, top4), -6);
  EXPECT_EQ(mobius_partition_lattice(top4, top4), 1);
  EXPECT_THROW(mobius_partition_lattice(top4, bottom4), std::invalid_argument);
}

TEST(Posets, PartitionLatticeMatchesMatrixInversion) {
  for (int N = 1; N <= 6; ++N) {
    auto all = set_partitions(N);
    FinitePoset p(all.size(), [&all](std::size_t a, std::size_t b) { return refinement_leq(all[a], all[b]); });
    auto mu = mobius_matrix(p);
    for (std::size_t a = 0; a < all.size(); ++a)
      for (std::size_t b = 0; b < all.size(); ++b) {
        if (!p.leq(a, b)) {
          EXPECT_EQ(mu[a][b], 0);
          continue;
        }
        EXPECT_EQ(BigInt(static_cast<long>(mu[a][b])), mobius_partition_lattice(all[a], all[b]));
      }
  }
}

TEST(Posets, FixedSubposets) {
  auto id = fixed_subposet(4, {1, 2, 3, 4});
  EXPECT_EQ(id.elements.size(), 15u);
  auto rho = permutation_of_cycle_type({2, 2});
  EXPECT_EQ(rho, (std::vector<int>{2, 1, 4, 3}));
  auto sub = fixed_subposet(4, rho);
  std::size_t filtered = 0;
  for (const auto& p : set_partitions(4))
    if (stable_under(p, rho)) ++filtered;
  EXPECT_EQ(sub.elements.size(), filtered);
  for (const auto& p : sub.elements) EXPECT_TRUE(stable_under(p, rho));
  EXPECT_EQ(as_blocks(sub.elements[sub.poset.bottom()]), as_blocks(SetPartition::from_blocks(4, {{1}, {2}, {3}, {4}})));
  EXPECT_EQ(as_blocks(sub.elements[sub.poset.top()]), as_blocks(SetPartition::from_blocks(4, {{1, 2, 3, 4}})));
}

TEST(Posets, HanlonExamples) {
  EXPECT_EQ(hanlon_mu(1, 1), 1);
  EXPECT_EQ(hanlon_mu(2, 1), -1);
  EXPECT_EQ(hanlon_mu(2, 3), -8);
  EXPECT_EQ(fixed_subposet_mobius(6, permutation_of_cycle_type({3, 3})), hanlon_mu(3, 2));
}

TEST(PosetsProperty, ZetaTimesMobiusIsIdentity) {
  std::vector<FinitePoset> posets{chain(5), divisor_poset(60), divisor_poset(36)};
  auto all = set_partitions(5);
  posets.emplace_back(all.size(), [&all](std::size_t a, std::size_t b) { return refinement_leq(all[a], all[b]); });
  posets.push_back(fixed_subposet(6, permutation_of_cycle_type({2, 2, 2})).poset);
  for (const auto& p : posets) {
    auto prod = multiply(zeta_matrix(p), mobius_matrix(p));
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j) EXPECT_EQ(prod[i][j], i == j ? 1 : 0);
  }
}

TEST(PosetsProperty, HanlonForEqualCycles) {
  for (int d = 1; d <= 8; ++d)
    for (int m = 1; d * m <= 8; ++m) {
      std::vector<int> lengths(static_cast<std::size_t>(m), d);
      EXPECT_EQ(BigInt(static_cast<long>(fixed_subposet_mobius(d * m, permutation_of_cycle_type(lengths)))),
                hanlon_mu(d, m))
          << "d=" << d << " m=" << m;
    }
}

TEST(PosetsProperty, MixedCycleTypesVanish) {
  std::vector<std::vector<int>> mixed{{1, 2}, {2, 3}, {1, 1, 2}, {1, 3}, {2, 4}, {1, 2, 2}, {3, 4}, {1, 1, 3}, {2, 2, 3}, {1, 2, 3}};
  for (const auto& lengths : mixed) {
    int N = 0;
    for (int l : lengths) N += l;
    EXPECT_EQ(fixed_subposet_mobius(N, permutation_of_cycle_type(lengths)), 0) << N;
  }
}

TEST(PosetsProperty, PermutedPartitionsStayCanonical) {
  auto rho = permutation_of_cycle_type({3, 2});
  for (const auto& p : set_partitions(5)) {
    auto img = p.permuted(rho);
    std::set<std::set<int>> expect;
    for (const auto& b : as_blocks(p)) {
      std::set<int> s;
      for (int x : b) s.insert(rho[static_cast<std::size_t>(x - 1)]);
      expect.insert(s);
    }
    EXPECT_EQ(as_blocks(img), expect);
    EXPECT_EQ(img, SetPartition::from_blocks(5, img.blocks()));
  }
}

}  // namespace
}  // namespace slnpoly
