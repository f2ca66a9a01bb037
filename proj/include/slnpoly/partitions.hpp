// Copyright (C) 2026 The slnpoly Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "slnpoly/exactmath.hpp"

namespace slnpoly {

/// Integer partition stored as weakly decreasing positive parts.
/// Rows and columns of the Ferrers diagram are 1-based.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) throw std::invalid_argument("Partition: parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
  }

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int size() const {
    int s = 0;
    for (int p : parts_) s += p;
    return s;
  }

  /// lambda_i with lambda_i = 0 past the last row.
  int part(int i) const {
    if (i < 1) throw std::out_of_range("Partition::part: rows are 1-based");
    return i <= length() ? parts_[static_cast<std::size_t>(i - 1)] : 0;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

 private:
  std::vector<int> parts_;
};

inline Partition conjugate(const Partition& lambda) {
  std::vector<int> out;
  int width = lambda.empty() ? 0 : lambda.part(1);
  for (int j = 1; j <= width; ++j) {
    int count = 0;
    for (int p : lambda.parts())
      if (p >= j) ++count;
    out.push_back(count);
  }
  return Partition(std::move(out));
}

inline int hook_length(const Partition& lambda, int i, int j) {
  if (i < 1 || j < 1 || j > lambda.part(i)) throw std::out_of_range("hook_length: box outside diagram");
  Partition conj = conjugate(lambda);
  return lambda.part(i) + conj.part(j) - i - j + 1;
}

/// All hook lengths, row by row.
inline std::vector<int> hook_lengths(const Partition& lambda) {
  Partition conj = conjugate(lambda);
  std::vector<int> out;
  for (int i = 1; i <= lambda.length(); ++i)
    for (int j = 1; j <= lambda.part(i); ++j) out.push_back(lambda.part(i) + conj.part(j) - i - j + 1);
  return out;
}

/// n(lambda) = sum (i-1) lambda_i.
inline int n_stat(const Partition& lambda) {
  int s = 0;
  for (int i = 1; i <= lambda.length(); ++i) s += (i - 1) * lambda.part(i);
  return s;
}

/// <lambda, lambda> = sum_j (lambda'_j)^2.
inline int inner_self(const Partition& lambda) {
  const Partition conj = conjugate(lambda);
  int s = 0;
  for (int c : conj.parts()) s += c * c;
  return s;
}

/// prod over boxes of (q^{d h} - 1).
inline IntLaurentPoly hook_poly(const Partition& lambda, int d) {
  if (d < 1) throw std::invalid_argument("hook_poly: d must be >= 1");
  IntLaurentPoly out(1L);
  for (int h : hook_lengths(lambda)) out = out * (IntLaurentPoly::monomial(1, d * h) - IntLaurentPoly(1L));
  return out;
}

/// Partitions of n, in reverse lexicographic order ((n) first, (1,...,1) last).
inline std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw std::invalid_argument("partitions_of: n must be >= 0");
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

inline std::string to_string(const Partition& lambda) {
  std::string s = "(";
  for (std::size_t i = 0; i < lambda.parts().size(); ++i) {
    if (i) s += ",";
    s += std::to_string(lambda.parts()[i]);
  }
  return s + ")";
}

inline std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << to_string(p); }

/// Canonical ordering used for type supports: larger size first, then
/// reverse lexicographic, so (2) precedes (1,1) precedes (1).
struct PartitionOrder {
  bool operator()(const Partition& a, const Partition& b) const {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.parts() > b.parts();
  }
};

}  // namespace slnpoly
