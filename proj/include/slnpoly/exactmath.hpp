// Copyright (C) 2026 The slnpoly Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace slnpoly {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Thrown when a brute-force enumeration would exceed its configured budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Elementary number theory
// ---------------------------------------------------------------------------

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("divisors: n must be positive");
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Arithmetic Möbius function: (-1)^k on square-free m with k prime factors, else 0.
inline int mobius(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("mobius: argument must be >= 1");
  int sign = 1;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) return 0;
    sign = -sign;
  }
  if (m > 1) sign = -sign;
  return sign;
}

inline std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

inline BigInt factorial(std::int64_t k) {
  if (k < 0) throw std::invalid_argument("factorial: negative argument");
  BigInt r = 1;
  for (std::int64_t i = 2; i <= k; ++i) r *= i;
  return r;
}

inline BigInt ipow(const BigInt& base, std::uint64_t e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// Checked 64-bit power; throws on overflow.
inline std::int64_t ipow64(std::int64_t base, unsigned e) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) throw std::overflow_error("ipow64 overflow");
  }
  return r;
}

/// Number of elements of exact order t in the torus (C^x)^N:
/// O^N(t) = sum_{d | t} mu(t/d) d^N.
inline BigInt torsion_count(std::int64_t t, std::int64_t N) {
  if (t < 1 || N < 1) throw std::invalid_argument("torsion_count: t, N must be >= 1");
  BigInt total = 0;
  for (auto d : divisors(t)) {
    int mu = mobius(t / d);
    if (mu != 0) total += mu * ipow(BigInt(d), static_cast<std::uint64_t>(N));
  }
  return total;
}

inline std::string to_string(const BigInt& x) { return x.get_str(); }

inline std::string to_string(const BigRat& x) {
  return x.get_den() == 1 ? x.get_num().get_str() : x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline BigRat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("make_rat: zero denominator");
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// IntLaurentPoly
// ---------------------------------------------------------------------------

/// Integer Laurent polynomial in one variable q.
///
/// Coefficients live in a dense window [valuation, degree] whose end points
/// are nonzero; the zero polynomial has an empty window.
class IntLaurentPoly {
 public:
  IntLaurentPoly() = default;
  IntLaurentPoly(long c) : IntLaurentPoly(BigInt(c)) {}  // NOLINT(google-explicit-constructor)
  IntLaurentPoly(const BigInt& c) {                       // NOLINT(google-explicit-constructor)
    if (c != 0) coeffs_.push_back(c);
  }

  static IntLaurentPoly monomial(const BigInt& c, int exponent) {
    IntLaurentPoly p(c);
    if (!p.is_zero()) p.low_ = exponent;
    return p;
  }
  static IntLaurentPoly q() { return monomial(1, 1); }

  /// Build from (exponent, coefficient) terms; repeated exponents accumulate.
  static IntLaurentPoly from_terms(const std::vector<std::pair<int, BigInt>>& terms) {
    std::map<int, BigInt> acc;
    for (const auto& [e, c] : terms) acc[e] += c;
    IntLaurentPoly p;
    if (acc.empty()) return p;
    p.low_ = acc.begin()->first;
    p.coeffs_.assign(static_cast<std::size_t>(acc.rbegin()->first - p.low_ + 1), BigInt(0));
    for (const auto& [e, c] : acc) p.coeffs_[static_cast<std::size_t>(e - p.low_)] = c;
    p.normalize();
    return p;
  }

  /// Ascending coefficient list starting at q^0.
  static IntLaurentPoly from_coeffs(const std::vector<BigInt>& ascending) {
    IntLaurentPoly p;
    p.coeffs_ = ascending;
    p.low_ = 0;
    p.normalize();
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }
  int valuation() const {
    require_nonzero("valuation");
    return low_;
  }
  int degree() const {
    require_nonzero("degree");
    return low_ + static_cast<int>(coeffs_.size()) - 1;
  }
  BigInt coeff(int e) const {
    if (is_zero() || e < low_ || e > degree()) return 0;
    return coeffs_[static_cast<std::size_t>(e - low_)];
  }
  BigInt leading_coeff() const { return is_zero() ? BigInt(0) : coeffs_.back(); }
  bool is_polynomial() const { return is_zero() || low_ >= 0; }

  /// Nonzero terms in increasing exponent order.
  std::vector<std::pair<int, BigInt>> terms() const {
    std::vector<std::pair<int, BigInt>> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) out.emplace_back(low_ + static_cast<int>(i), coeffs_[i]);
    return out;
  }

  IntLaurentPoly& operator+=(const IntLaurentPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    int lo = std::min(low_, o.low_);
    int hi = std::max(degree(), o.degree());
    std::vector<BigInt> c(static_cast<std::size_t>(hi - lo + 1), BigInt(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[static_cast<std::size_t>(low_ - lo) + i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[static_cast<std::size_t>(o.low_ - lo) + i] += o.coeffs_[i];
    coeffs_ = std::move(c);
    low_ = lo;
    normalize();
    return *this;
  }
  IntLaurentPoly& operator-=(const IntLaurentPoly& o) { return *this += -o; }
  IntLaurentPoly& operator*=(const IntLaurentPoly& o) { return *this = *this * o; }
  IntLaurentPoly& operator*=(const BigInt& c) {
    if (c == 0) {
      coeffs_.clear();
      low_ = 0;
      return *this;
    }
    for (auto& x : coeffs_) x *= c;
    return *this;
  }

  friend IntLaurentPoly operator-(IntLaurentPoly p) {
    for (auto& x : p.coeffs_) x = -x;
    return p;
  }
  friend IntLaurentPoly operator+(IntLaurentPoly a, const IntLaurentPoly& b) { return a += b; }
  friend IntLaurentPoly operator-(IntLaurentPoly a, const IntLaurentPoly& b) { return a -= b; }
  friend IntLaurentPoly operator*(IntLaurentPoly a, const BigInt& c) { return a *= c; }
  friend IntLaurentPoly operator*(const BigInt& c, IntLaurentPoly a) { return a *= c; }
  friend IntLaurentPoly operator*(const IntLaurentPoly& a, const IntLaurentPoly& b) {
    IntLaurentPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.low_ = a.low_ + b.low_;
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        mpz_addmul(r.coeffs_[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
      }
    }
    r.normalize();
    return r;
  }
  friend bool operator==(const IntLaurentPoly& a, const IntLaurentPoly& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const IntLaurentPoly& a, const IntLaurentPoly& b) { return !(a == b); }

  /// Divide every coefficient by c; throws unless each division is exact.
  IntLaurentPoly divided_by_scalar(const BigInt& c) const {
    if (c == 0) throw std::domain_error("divided_by_scalar: division by zero");
    IntLaurentPoly r = *this;
    for (auto& x : r.coeffs_) {
      if (!mpz_divisible_p(x.get_mpz_t(), c.get_mpz_t()))
        throw std::domain_error("divided_by_scalar: coefficient not divisible");
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    }
    return r;
  }

  /// Long division of polynomials (no negative exponents) over Z. Returns
  /// {quotient, remainder} with deg(remainder) < deg(divisor). Throws when a
  /// quotient coefficient would not be integral.
  std::pair<IntLaurentPoly, IntLaurentPoly> divmod(const IntLaurentPoly& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("divmod: division by zero polynomial");
    if (!is_polynomial() || !divisor.is_polynomial())
      throw std::domain_error("divmod: negative exponents are not supported");
    IntLaurentPoly rem = *this;
    IntLaurentPoly quo;
    const BigInt& lead = divisor.leading_coeff();
    const int dd = divisor.degree();
    while (!rem.is_zero() && rem.degree() >= dd) {
      const BigInt lc = rem.leading_coeff();
      if (!mpz_divisible_p(lc.get_mpz_t(), lead.get_mpz_t()))
        throw std::domain_error("divmod: quotient is not integral");
      BigInt c;
      mpz_divexact(c.get_mpz_t(), lc.get_mpz_t(), lead.get_mpz_t());
      IntLaurentPoly step = monomial(c, rem.degree() - dd);
      quo += step;
      rem -= step * divisor;
    }
    return {quo, rem};
  }

 private:
  void normalize() {
    std::size_t first = 0;
    while (first < coeffs_.size() && coeffs_[first] == 0) ++first;
    if (first == coeffs_.size()) {
      coeffs_.clear();
      low_ = 0;
      return;
    }
    std::size_t last = coeffs_.size();
    while (coeffs_[last - 1] == 0) --last;
    coeffs_ = std::vector<BigInt>(coeffs_.begin() + static_cast<std::ptrdiff_t>(first),
                                  coeffs_.begin() + static_cast<std::ptrdiff_t>(last));
    low_ += static_cast<int>(first);
  }
  void require_nonzero(const char* what) const {
    if (is_zero()) throw std::domain_error(std::string(what) + ": zero polynomial");
  }

  int low_ = 0;
  std::vector<BigInt> coeffs_;
};

inline IntLaurentPoly poly_add(const IntLaurentPoly& a, const IntLaurentPoly& b) { return a + b; }
inline IntLaurentPoly poly_mul(const IntLaurentPoly& a, const IntLaurentPoly& b) { return a * b; }

inline IntLaurentPoly poly_pow(IntLaurentPoly base, long exponent) {
  if (exponent < 0) throw std::invalid_argument("poly_pow: negative exponent");
  IntLaurentPoly result(1);
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

/// Substitute an integer for q. Negative exponents are only allowed at q = ±1.
inline BigInt poly_eval_int(const IntLaurentPoly& p, const BigInt& x) {
  if (p.is_zero()) return 0;
  if (p.valuation() < 0 && abs(x) != 1)
    throw std::domain_error("poly_eval_int: negative exponent at |q| != 1");
  BigInt acc = 0;
  // Horner over the dense window, then shift by the valuation.
  for (int e = p.degree(); e >= p.valuation(); --e) acc = acc * x + p.coeff(e);
  int v = p.valuation();
  if (v > 0) acc *= ipow(x, static_cast<std::uint64_t>(v));
  if (v < 0 && x == -1 && (-v) % 2 == 1) acc = -acc;
  return acc;
}

/// q^d * p(1/q). Requires p to be a polynomial of degree <= d.
inline IntLaurentPoly poly_reverse(const IntLaurentPoly& p, int d) {
  if (p.is_zero()) return p;
  if (p.valuation() < 0) throw std::domain_error("poly_reverse: not a polynomial");
  if (p.degree() > d) throw std::domain_error("poly_reverse: degree exceeds d");
  std::vector<std::pair<int, BigInt>> terms;
  for (auto& [e, c] : p.terms()) terms.emplace_back(d - e, c);
  return IntLaurentPoly::from_terms(terms);
}

/// Exact division; throws std::domain_error if the remainder is nonzero.
inline IntLaurentPoly poly_divide_exact(const IntLaurentPoly& a, const IntLaurentPoly& b) {
  auto [quo, rem] = a.divmod(b);
  if (!rem.is_zero()) throw std::domain_error("poly_divide_exact: nonzero remainder");
  return quo;
}

/// Plain-text rendering, e.g. "q^6 - 2q^4 - 30q^3 - 2q^2 + 1" (descending powers).
inline std::string to_string(const IntLaurentPoly& p, const std::string& var = "q", bool latex = false) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  auto terms = p.terms();
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [e, c] = *it;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str();
    os << var;
    if (e != 1) {
      if (latex)
        os << "^{" << e << "}";
      else
        os << "^" << e;
    }
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const IntLaurentPoly& p) { return os << to_string(p); }

}  // namespace slnpoly
