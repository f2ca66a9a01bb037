// Copyright (C) 2026 The slnpoly Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slnpoly/exactmath.hpp"
#include "slnpoly/partitions.hpp"

namespace slnpoly {

/// A pure type: every Frobenius orbit in the support has the same degree d,
/// and the partition lambda occurs on m_lambda orbits.
///
/// The support is kept sorted by PartitionOrder so equal types compare equal.
class PureType {
 public:
  using Mults = std::vector<std::pair<Partition, int>>;

  PureType(int d, Mults mults) : d_(d), mults_(std::move(mults)) {
    if (d_ < 1) throw std::invalid_argument("PureType: degree must be >= 1");
    std::sort(mults_.begin(), mults_.end(),
              [](const auto& a, const auto& b) { return PartitionOrder{}(a.first, b.first); });
    Mults merged;
    for (auto& [lambda, m] : mults_) {
      if (lambda.empty()) throw std::invalid_argument("PureType: empty partition in support");
      if (m < 0) throw std::invalid_argument("PureType: negative multiplicity");
      if (m == 0) continue;
      if (!merged.empty() && merged.back().first == lambda)
        merged.back().second += m;
      else
        merged.emplace_back(lambda, m);
    }
    mults_ = std::move(merged);
    if (mults_.empty()) throw std::invalid_argument("PureType: empty support");
  }

  int degree() const { return d_; }
  const Mults& mults() const { return mults_; }

  /// m(tau) = sum of multiplicities.
  int m_count() const {
    int m = 0;
    for (const auto& [lambda, mult] : mults_) m += mult;
    return m;
  }
  /// |tau| = d * sum m_lambda |lambda|.
  int size() const {
    int s = 0;
    for (const auto& [lambda, mult] : mults_) s += mult * lambda.size();
    return d_ * s;
  }
  int multiplicity(const Partition& lambda) const {
    for (const auto& [l, m] : mults_)
      if (l == lambda) return m;
    return 0;
  }

  friend bool operator==(const PureType&, const PureType&) = default;
  friend auto operator<=>(const PureType& a, const PureType& b) {
    if (auto c = a.d_ <=> b.d_; c != 0) return c;
    return a.mults_ <=> b.mults_;
  }

 private:
  int d_;
  Mults mults_;
};

/// tau' : conjugate every partition in the support.
inline PureType conjugate(const PureType& tau) {
  PureType::Mults m;
  for (const auto& [lambda, mult] : tau.mults()) m.emplace_back(conjugate(lambda), mult);
  return PureType(tau.degree(), std::move(m));
}

/// The type of the trivial character: d = 1, (1^n) with multiplicity one.
inline PureType trivial_type(int n) { return PureType(1, {{Partition(std::vector<int>(static_cast<std::size_t>(n), 1)), 1}}); }

/// Multisets of nonempty partitions with total size `total`, listed in
/// lexicographic order of their sorted supports.
inline std::vector<PureType::Mults> partition_multisets(int total) {
  std::vector<Partition> pool;
  for (int k = total; k >= 1; --k)
    for (auto& p : partitions_of(k)) pool.push_back(std::move(p));
  std::vector<PureType::Mults> out;
  PureType::Mults cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t start, int remaining) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      int sz = pool[i].size();
      if (sz > remaining) continue;
      bool bumped = !cur.empty() && cur.back().first == pool[i];
      if (bumped)
        ++cur.back().second;
      else
        cur.emplace_back(pool[i], 1);
      rec(i, remaining - sz);
      if (bumped)
        --cur.back().second;
      else
        cur.pop_back();
    }
  };
  rec(0, total);
  return out;
}

/// All pure types of size n, by increasing degree d | n.
inline std::vector<PureType> enumerate_pure_types(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_pure_types: n must be >= 1");
  std::vector<PureType> out;
  for (auto d : divisors(n))
    for (auto& m : partition_multisets(n / static_cast<int>(d))) out.emplace_back(static_cast<int>(d), std::move(m));
  return out;
}

/// |Gl_n(q)| = q^{C(n,2)} prod_{i=1}^n (q^i - 1).
inline IntLaurentPoly gl_order(int n) {
  if (n < 1) throw std::invalid_argument("gl_order: n must be >= 1");
  IntLaurentPoly out = IntLaurentPoly::monomial(1, n * (n - 1) / 2);
  for (int i = 1; i <= n; ++i) out = out * (IntLaurentPoly::monomial(1, i) - IntLaurentPoly(1L));
  return out;
}

/// |Gl_n(q)| / chi_tau(1) = q^{C(n,2) - n(Lambda')} H_Lambda(q), an integer polynomial.
inline IntLaurentPoly degree_quotient(const PureType& tau) {
  const int n = tau.size();
  const int d = tau.degree();
  int n_conj = 0;
  IntLaurentPoly hooks(1L);
  for (const auto& [lambda, m] : tau.mults()) {
    n_conj += d * m * n_stat(conjugate(lambda));
    hooks = hooks * poly_pow(hook_poly(lambda, d), m);
  }
  IntLaurentPoly out = IntLaurentPoly::monomial(1, n * (n - 1) / 2 - n_conj) * hooks;
  if (!out.is_polynomial()) throw std::logic_error("degree_quotient: result has negative exponents");
  return out;
}

/// tau/(t_d, t_m): degree d/t_d and multiplicities m_lambda/t_m, when integral.
inline std::optional<PureType> quotient_type(const PureType& tau, int t_d, int t_m) {
  if (t_d < 1 || t_m < 1) throw std::invalid_argument("quotient_type: factors must be >= 1");
  if (tau.degree() % t_d != 0) return std::nullopt;
  PureType::Mults m;
  for (const auto& [lambda, mult] : tau.mults()) {
    if (mult % t_m != 0) return std::nullopt;
    m.emplace_back(lambda, mult / t_m);
  }
  return PureType(tau.degree() / t_d, std::move(m));
}

inline std::string to_string(const PureType& tau) {
  std::string s = "{d=" + std::to_string(tau.degree());
  for (const auto& [lambda, m] : tau.mults()) s += ", " + to_string(lambda) + "^" + std::to_string(m);
  return s + "}";
}

}  // namespace slnpoly
