// Copyright (C) 2026 The slnpoly Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "slnpoly/exactmath.hpp"

namespace slnpoly {

/// A finite poset on elements 0..size-1 with a dense order relation.
///
/// The poset axioms are verified on construction when size <= axiom_check_limit.
class FinitePoset {
 public:
  static constexpr std::size_t kAxiomCheckLimit = 400;

  FinitePoset(std::size_t size, const std::function<bool(std::size_t, std::size_t)>& leq,
              std::size_t axiom_check_limit = kAxiomCheckLimit)
      : n_(size), leq_(size * size, 0) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) leq_[i * n_ + j] = leq(i, j) ? 1 : 0;
    if (n_ <= axiom_check_limit) check_axioms();
    else check_antisymmetric();
    build_order();
  }

  std::size_t size() const { return n_; }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a * n_ + b] != 0; }
  /// Elements sorted so that a < b implies a appears first.
  const std::vector<std::size_t>& linear_extension() const { return order_; }

  /// The unique minimum, or size() when there is none.
  std::size_t bottom() const { return extreme(true); }
  std::size_t top() const { return extreme(false); }

 private:
  void check_axioms() const {
    for (std::size_t i = 0; i < n_; ++i)
      if (!leq(i, i)) throw std::invalid_argument("FinitePoset: relation is not reflexive");
    check_antisymmetric();
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        if (!leq(i, j)) continue;
        for (std::size_t k = 0; k < n_; ++k)
          if (leq(j, k) && !leq(i, k)) throw std::invalid_argument("FinitePoset: relation is not transitive");
      }
  }
  void check_antisymmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (leq(i, j) && leq(j, i)) throw std::invalid_argument("FinitePoset: relation is not antisymmetric");
  }
  void build_order() {
    std::vector<std::size_t> below(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (leq(j, i)) ++below[i];
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });
  }
  std::size_t extreme(bool lower) const {
    for (std::size_t c = 0; c < n_; ++c) {
      bool ok = true;
      for (std::size_t x = 0; x < n_ && ok; ++x) ok = lower ? leq(c, x) : leq(x, c);
      if (ok) return c;
    }
    return n_;
  }

  std::size_t n_;
  std::vector<std::uint8_t> leq_;
  std::vector<std::size_t> order_;
};

namespace detail {
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Mobius value overflows int64");
  return r;
}
}  // namespace detail

/// mu(x, y) for all y, by mu(x,x) = 1 and mu(x,y) = -sum_{x <= z < y} mu(x,z).
inline std::vector<std::int64_t> mobius_row(const FinitePoset& p, std::size_t x) {
  const std::size_t n = p.size();
  if (x >= n) throw std::out_of_range("mobius_row: element out of range");
  std::vector<std::int64_t> mu(n, 0);
  std::vector<std::size_t> above;
  for (auto y : p.linear_extension())
    if (p.leq(x, y)) above.push_back(y);
  for (std::size_t i = 0; i < above.size(); ++i) {
    const std::size_t y = above[i];
    if (y == x) {
      mu[y] = 1;
      continue;
    }
    std::int64_t s = 0;
    for (std::size_t j = 0; j < i; ++j)
      if (p.leq(above[j], y)) s = detail::checked_add(s, mu[above[j]]);
    mu[y] = -s;
  }
  return mu;
}

/// Inverse of the zeta matrix, mu[x][y], zero unless x <= y.
inline std::vector<std::vector<std::int64_t>> mobius_matrix(const FinitePoset& p) {
  std::vector<std::vector<std::int64_t>> out;
  out.reserve(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) out.push_back(mobius_row(p, x));
  return out;
}

inline std::vector<std::vector<std::int64_t>> zeta_matrix(const FinitePoset& p) {
  std::vector<std::vector<std::int64_t>> z(p.size(), std::vector<std::int64_t>(p.size(), 0));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) z[i][j] = p.leq(i, j) ? 1 : 0;
  return z;
}

inline FinitePoset chain(std::size_t length) {
  return FinitePoset(length, [](std::size_t a, std::size_t b) { return a <= b; });
}

/// Divisors of n ordered by divisibility; element i is divisors(n)[i].
inline FinitePoset divisor_poset(std::int64_t n) {
  auto ds = divisors(n);
  return FinitePoset(ds.size(), [ds](std::size_t a, std::size_t b) { return ds[b] % ds[a] == 0; });
}

/// Set partition of {1..N} as a restricted growth string: block labels
/// 0,1,2,... assigned in order of first appearance, so blocks are sorted by
/// their minimum element.
class SetPartition {
 public:
  explicit SetPartition(std::vector<int> labels) : rgs_(std::move(labels)) {
    int next = 0;
    for (int l : rgs_) {
      if (l < 0 || l > next) throw std::invalid_argument("SetPartition: not a restricted growth string");
      if (l == next) ++next;
    }
    blocks_ = next;
  }
  /// From explicit blocks of 1-based elements.
  static SetPartition from_blocks(int N, const std::vector<std::vector<int>>& blocks) {
    std::vector<int> owner(static_cast<std::size_t>(N), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (int x : blocks[b]) {
        if (x < 1 || x > N || owner[static_cast<std::size_t>(x - 1)] >= 0)
          throw std::invalid_argument("SetPartition: blocks must partition {1..N}");
        owner[static_cast<std::size_t>(x - 1)] = static_cast<int>(b);
      }
    for (int o : owner)
      if (o < 0) throw std::invalid_argument("SetPartition: blocks must cover {1..N}");
    return canonical(owner);
  }
  /// Relabel arbitrary block ids into restricted growth form.
  static SetPartition canonical(const std::vector<int>& ids) {
    std::vector<int> map;
    std::vector<int> out;
    out.reserve(ids.size());
    for (int id : ids) {
      auto it = std::find(map.begin(), map.end(), id);
      if (it == map.end()) {
        map.push_back(id);
        out.push_back(static_cast<int>(map.size()) - 1);
      } else {
        out.push_back(static_cast<int>(it - map.begin()));
      }
    }
    return SetPartition(std::move(out));
  }

  int ground_size() const { return static_cast<int>(rgs_.size()); }
  int block_count() const { return blocks_; }
  const std::vector<int>& labels() const { return rgs_; }
  std::vector<std::vector<int>> blocks() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(blocks_));
    for (std::size_t i = 0; i < rgs_.size(); ++i) out[static_cast<std::size_t>(rgs_[i])].push_back(static_cast<int>(i) + 1);
    return out;
  }
  /// Image under a permutation of {1..N} (perm[i-1] is the image of i).
  SetPartition permuted(const std::vector<int>& perm) const {
    std::vector<int> ids(rgs_.size());
    for (std::size_t i = 0; i < rgs_.size(); ++i) ids[static_cast<std::size_t>(perm[i] - 1)] = rgs_[i];
    return canonical(ids);
  }

  friend bool operator==(const SetPartition&, const SetPartition&) = default;
  friend auto operator<=>(const SetPartition& a, const SetPartition& b) { return a.rgs_ <=> b.rgs_; }

 private:
  std::vector<int> rgs_;
  int blocks_ = 0;
};

inline std::string to_string(const SetPartition& p) {
  std::string s;
  for (const auto& b : p.blocks()) {
    if (!s.empty()) s += "|";
    for (int x : b) s += std::to_string(x);
  }
  return s;
}

/// All set partitions of {1..N}, in lexicographic order of restricted growth strings.
inline std::vector<SetPartition> set_partitions(int N) {
  if (N < 0 || N > 12) throw std::invalid_argument("set_partitions: N must lie in [0, 12]");
  std::vector<SetPartition> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int maxlabel) {
    if (static_cast<int>(cur.size()) == N) {
      out.emplace_back(cur);
      return;
    }
    for (int l = 0; l <= maxlabel + 1; ++l) {
      cur.push_back(l);
      rec(std::max(maxlabel, l));
      cur.pop_back();
    }
  };
  rec(-1);
  return out;
}

/// nu <= pi when every block of nu lies inside a block of pi (pi is coarser).
inline bool refinement_leq(const SetPartition& nu, const SetPartition& pi) {
  if (nu.ground_size() != pi.ground_size()) throw std::invalid_argument("refinement_leq: ground sets differ");
  std::array<int, 64> small;
  std::vector<int> large;
  int* image = small.data();
  if (nu.block_count() > 64) {
    large.resize(static_cast<std::size_t>(nu.block_count()));
    image = large.data();
  }
  std::fill(image, image + nu.block_count(), -1);
  for (std::size_t i = 0; i < nu.labels().size(); ++i) {
    auto& slot = image[nu.labels()[i]];
    if (slot < 0) slot = pi.labels()[i];
    else if (slot != pi.labels()[i]) return false;
  }
  return true;
}

/// (-1)^{s-r} prod_i (i-1)!^{r_i} for nu <= pi.
inline BigInt mobius_partition_lattice(const SetPartition& nu, const SetPartition& pi) {
  if (!refinement_leq(nu, pi)) throw std::invalid_argument("mobius_partition_lattice: pair is not comparable");
  std::vector<std::vector<int>> inside(static_cast<std::size_t>(pi.block_count()));
  for (std::size_t i = 0; i < nu.labels().size(); ++i) {
    auto& v = inside[static_cast<std::size_t>(pi.labels()[i])];
    int b = nu.labels()[i];
    if (std::find(v.begin(), v.end(), b) == v.end()) v.push_back(b);
  }
  BigInt out = 1;
  for (const auto& v : inside) out *= factorial(static_cast<std::int64_t>(v.size()) - 1);
  if ((nu.block_count() - pi.block_count()) % 2 != 0) out = -out;
  return out;
}

/// Set partitions of {1..N} stable under rho, with the refinement order.
struct PartitionSubposet {
  std::vector<SetPartition> elements;
  FinitePoset poset;
};

inline PartitionSubposet fixed_subposet(int N, const std::vector<int>& rho) {
  if (static_cast<int>(rho.size()) != N) throw std::invalid_argument("fixed_subposet: permutation has wrong length");
  std::vector<int> sorted(rho);
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < N; ++i)
    if (sorted[static_cast<std::size_t>(i)] != i + 1) throw std::invalid_argument("fixed_subposet: not a permutation");
  std::vector<SetPartition> elems;
  for (auto& p : set_partitions(N))
    if (p.permuted(rho) == p) elems.push_back(std::move(p));
  FinitePoset poset(elems.size(), [&elems](std::size_t a, std::size_t b) { return refinement_leq(elems[a], elems[b]); });
  return {std::move(elems), std::move(poset)};
}

/// Product of disjoint cycles with the given lengths, on consecutive points.
inline std::vector<int> permutation_of_cycle_type(const std::vector<int>& lengths) {
  std::vector<int> perm;
  int base = 0;
  for (int len : lengths) {
    if (len < 1) throw std::invalid_argument("permutation_of_cycle_type: cycle lengths must be positive");
    for (int i = 0; i < len; ++i) perm.push_back(base + (i + 1) % len + 1);
    base += len;
  }
  return perm;
}

/// mu(d) (-d)^{m-1} (m-1)!.
inline BigInt hanlon_mu(int d, int m) {
  if (d < 1 || m < 1) throw std::invalid_argument("hanlon_mu: d and m must be >= 1");
  return BigInt(mobius(d)) * ipow(BigInt(-d), static_cast<std::uint64_t>(m - 1)) * factorial(m - 1);
}

/// mu(0, 1) of the rho-fixed partition subposet, by back-substitution.
inline std::int64_t fixed_subposet_mobius(int N, const std::vector<int>& rho) {
  auto sub = fixed_subposet(N, rho);
  const std::size_t lo = sub.poset.bottom();
  const std::size_t hi = sub.poset.top();
  if (lo == sub.poset.size() || hi == sub.poset.size()) throw std::logic_error("fixed_subposet_mobius: missing bounds");
  return mobius_row(sub.poset, lo)[hi];
}

}  // namespace slnpoly
