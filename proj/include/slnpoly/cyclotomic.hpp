// Copyright (C) 2026 The slnpoly Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "slnpoly/exactmath.hpp"

namespace slnpoly {

/// Phi_n(x) as ascending integer coefficients, obtained by dividing x^n - 1
/// by Phi_d for every proper divisor d of n.
inline const std::vector<BigInt>& cyclotomic_poly(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_poly: n must be >= 1");
  static std::mutex mu;
  static std::map<int, std::vector<BigInt>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  IntLaurentPoly p = IntLaurentPoly::monomial(1, n) - IntLaurentPoly(1L);
  for (auto d : divisors(n)) {
    if (d == n) continue;
    const auto& phi_d = cyclotomic_poly(static_cast<int>(d));
    p = poly_divide_exact(p, IntLaurentPoly::from_coeffs(phi_d));
  }
  std::vector<BigInt> coeffs;
  for (int e = 0; e <= p.degree(); ++e) coeffs.push_back(p.coeff(e));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, std::move(coeffs)).first->second;
}

inline int euler_phi(int n) {
  int result = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

/// Element of Z[zeta_n], stored as its remainder modulo Phi_n (length phi(n)).
class CycloInt {
 public:
  explicit CycloInt(int n) : n_(n), c_(static_cast<std::size_t>(euler_phi(check(n))), BigInt(0)) {}

  static CycloInt zero(int n) { return CycloInt(n); }
  static CycloInt integer(int n, const BigInt& v) {
    CycloInt z(n);
    z.c_[0] = v;
    return z;
  }
  static CycloInt one(int n) { return integer(n, 1); }
  /// zeta_n^j for any integer j.
  static CycloInt root(int n, long long j) {
    std::vector<BigInt> counts(static_cast<std::size_t>(n), BigInt(0));
    counts[static_cast<std::size_t>(((j % n) + n) % n)] = 1;
    return from_power_counts(n, counts);
  }
  /// sum_j counts[j] zeta_n^j.
  static CycloInt from_power_counts(int n, std::vector<BigInt> counts) {
    if (static_cast<int>(counts.size()) != n) throw std::invalid_argument("CycloInt: count vector must have length n");
    CycloInt z(n);
    z.assign_reduced(std::move(counts));
    return z;
  }
  template <class Int>
  static CycloInt from_histogram(int n, const std::vector<Int>& hist) {
    std::vector<BigInt> counts;
    counts.reserve(hist.size());
    for (const auto& h : hist) counts.emplace_back(BigInt(static_cast<long>(h)));
    return from_power_counts(n, std::move(counts));
  }

  int order() const { return n_; }
  const std::vector<BigInt>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  /// In reduced form, rational elements are exactly the constants.
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  BigInt rational_value() const {
    if (!is_rational()) throw std::domain_error("CycloInt: value is not rational");
    return c_[0];
  }

  CycloInt& operator+=(const CycloInt& o) {
    same_order(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  CycloInt& operator-=(const CycloInt& o) {
    same_order(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  CycloInt& operator*=(const BigInt& k) {
    for (auto& x : c_) x *= k;
    return *this;
  }
  friend CycloInt operator+(CycloInt a, const CycloInt& b) { return a += b; }
  friend CycloInt operator-(CycloInt a, const CycloInt& b) { return a -= b; }
  friend CycloInt operator*(CycloInt a, const BigInt& k) { return a *= k; }
  friend CycloInt operator*(const CycloInt& a, const CycloInt& b) {
    a.same_order(b);
    std::vector<BigInt> prod(static_cast<std::size_t>(a.n_), BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) prod[(i + j) % static_cast<std::size_t>(a.n_)] += a.c_[i] * b.c_[j];
    }
    return from_power_counts(a.n_, std::move(prod));
  }
  friend bool operator==(const CycloInt& a, const CycloInt& b) { return a.n_ == b.n_ && a.c_ == b.c_; }
  friend bool operator!=(const CycloInt& a, const CycloInt& b) { return !(a == b); }

 private:
  static int check(int n) {
    if (n < 1) throw std::invalid_argument("CycloInt: order must be >= 1");
    return n;
  }
  void same_order(const CycloInt& o) const {
    if (o.n_ != n_) throw std::invalid_argument("CycloInt: mismatched orders");
  }
  // Long division by the monic Phi_n, top coefficient first.
  void assign_reduced(std::vector<BigInt> v) {
    const auto& phi = cyclotomic_poly(n_);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t top = v.size(); top-- > deg;) {
      if (v[top] == 0) continue;
      BigInt lead = v[top];
      for (std::size_t k = 0; k <= deg; ++k) v[top - deg + k] -= lead * phi[k];
    }
    v.resize(deg);
    c_ = std::move(v);
  }

  int n_;
  std::vector<BigInt> c_;
};

inline std::string to_string(const CycloInt& z) {
  std::string s;
  for (std::size_t i = 0; i < z.coeffs().size(); ++i) {
    const BigInt& c = z.coeffs()[i];
    if (c == 0) continue;
    if (!s.empty()) s += c > 0 ? " + " : " - ";
    else if (c < 0) s += "-";
    BigInt a = abs(c);
    if (i == 0) s += a.get_str();
    else {
      if (a != 1) s += a.get_str();
      s += "z" + std::to_string(z.order()) + (i == 1 ? "" : "^" + std::to_string(i));
    }
  }
  return s.empty() ? "0" : s;
}

}  // namespace slnpoly
