// Copyright (C) 2026 The slnpoly Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "slnpoly/coefficients.hpp"
#include "slnpoly/exactmath.hpp"
#include "slnpoly/parallel.hpp"
#include "slnpoly/types.hpp"

namespace slnpoly {

/// 2(g-1)(n^2-1).
inline int expected_degree(int n, int g) { return 2 * (g - 1) * (n * n - 1); }

struct EPolyResult {
  int n = 0;
  int g = 0;
  IntLaurentPoly poly;
  BigInt euler;
  int degree = 0;
  bool monic = false;
  bool palindromic = false;
};

struct StructuralReport {
  int expected_degree = 0;
  bool degree_ok = false;
  bool monic = false;
  bool palindromic = false;
  bool all() const { return degree_ok && monic && palindromic; }
};

inline StructuralReport structural_check(const EPolyResult& r) {
  StructuralReport rep;
  rep.expected_degree = expected_degree(r.n, r.g);
  const auto& p = r.poly;
  rep.degree_ok = !p.is_zero() && p.is_polynomial() && p.degree() == rep.expected_degree;
  rep.monic = !p.is_zero() && p.leading_coeff() == 1;
  rep.palindromic = rep.degree_ok && poly_reverse(p, rep.expected_degree) == p;
  return rep;
}

/// A polynomial with a common positive denominator.
struct ScaledPoly {
  IntLaurentPoly numerator;
  BigInt denominator = 1;
};

namespace detail {

inline void check_ng(int n, int g) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (g < 1) throw std::invalid_argument("g must be >= 1");
}

inline IntLaurentPoly q_minus_one() { return IntLaurentPoly::q() - IntLaurentPoly(1L); }

// Sum of weight_i * poly_i with rational weights, over a common denominator.
inline ScaledPoly combine(const std::vector<std::pair<IntLaurentPoly, BigRat>>& terms) {
  BigInt L = 1;
  for (const auto& [p, w] : terms) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), w.get_den().get_mpz_t());
  ScaledPoly out;
  out.denominator = L;
  for (const auto& [p, w] : terms) {
    if (w == 0) continue;
    BigInt scaled = w.get_num() * (L / w.get_den());
    out.numerator += p * scaled;
  }
  return out;
}

inline EPolyResult finish(int n, int g, IntLaurentPoly poly) {
  if (!poly.is_polynomial()) throw std::logic_error("E-polynomial has negative exponents");
  EPolyResult r;
  r.n = n;
  r.g = g;
  r.poly = std::move(poly);
  r.euler = poly_eval_int(r.poly, 1);
  r.degree = r.poly.is_zero() ? -1 : r.poly.degree();
  auto rep = structural_check(r);
  r.monic = rep.monic;
  r.palindromic = rep.palindromic;
  return r;
}

inline IntLaurentPoly clear_denominator(const ScaledPoly& sp) {
  try {
    return sp.numerator.divided_by_scalar(sp.denominator);
  } catch (const std::domain_error&) {
    throw std::logic_error("E-polynomial assembly left a non-integral coefficient");
  }
}

}  // namespace detail

/// sum over pure tau accepted by `include` of (|Gl_n|/(chi_tau(1)(q-1)))^{2g-2} sum_t t^{2g-1} C_tau^t.
inline ScaledPoly n_poly_sum(int n, int g, const std::function<bool(const PureType&)>& include = {}, unsigned jobs = 1) {
  detail::check_ng(n, g);
  auto types = enumerate_pure_types(n);
  auto ts = divisors(n);
  const IntLaurentPoly qm1 = detail::q_minus_one();
  std::vector<std::pair<IntLaurentPoly, BigRat>> terms(types.size());
  parallel_for(types.size(), jobs, [&](std::size_t i) {
    const PureType& tau = types[i];
    if (include && !include(tau)) return;
    BigRat w = 0;
    for (auto t : ts) w += BigRat(ipow(BigInt(static_cast<long>(t)), static_cast<std::uint64_t>(2 * g - 1))) * c_t(tau, static_cast<int>(t));
    if (w == 0) return;
    IntLaurentPoly base = poly_divide_exact(degree_quotient(tau), qm1);
    terms[i] = {poly_pow(base, 2 * (g - 1)), w};
  });
  return detail::combine(terms);
}

/// N^g_n(q) by the sum over pure types and t | n.
inline EPolyResult n_poly(int n, int g, unsigned jobs = 1) {
  return detail::finish(n, g, detail::clear_denominator(n_poly_sum(n, g, {}, jobs)));
}

/// N^g_n(q) by the sum over quotient types:
/// (q-1)^{-(2g-2)} sum mu(t_d) O^{2g}(t_d t_m)/(t_d t_m) (|Gl_n|/chi_tau(1))^{2g-2} C0(tau/(t_d,t_m)).
inline EPolyResult n_poly_alt(int n, int g, unsigned jobs = 1) {
  detail::check_ng(n, g);
  auto types = enumerate_pure_types(n);
  auto Ts = divisors(n);
  std::vector<std::pair<IntLaurentPoly, BigRat>> terms(types.size());
  parallel_for(types.size(), jobs, [&](std::size_t i) {
    const PureType& tau = types[i];
    BigRat w = 0;
    for (auto T64 : Ts) {
      const int T = static_cast<int>(T64);
      for (auto td64 : divisors(T)) {
        const int t_d = static_cast<int>(td64);
        const int mu_td = mobius(t_d);
        if (mu_td == 0) continue;
        auto hat = quotient_type(tau, t_d, T / t_d);
        if (!hat || std::gcd(hat->degree(), T) != 1) continue;
        w += make_rat(BigInt(mu_td) * torsion_count(T, 2 * g), BigInt(T)) * c0(*hat);
      }
    }
    if (w == 0) return;
    terms[i] = {poly_pow(degree_quotient(tau), 2 * (g - 1)), w};
  });
  IntLaurentPoly total = detail::clear_denominator(detail::combine(terms));
  IntLaurentPoly den = poly_pow(detail::q_minus_one(), 2 * (g - 1));
  IntLaurentPoly poly;
  try {
    poly = poly_divide_exact(total, den);
  } catch (const std::domain_error&) {
    throw std::logic_error("n_poly_alt: sum is not divisible by (q-1)^{2g-2}");
  }
  return detail::finish(n, g, std::move(poly));
}

/// The n = 2 count as a function of odd q, covering both residues mod 4.
inline BigInt n2_closed_form(const BigInt& q, int g) {
  if (g < 1) throw std::invalid_argument("n2_closed_form: g must be >= 1");
  if (q < 3 || mpz_even_p(q.get_mpz_t())) throw std::invalid_argument("n2_closed_form: q must be odd");
  const BigInt H = q * (q * q - 1);
  const auto e = static_cast<std::uint64_t>(2 * g - 2);
  const BigInt two = ipow(BigInt(2), static_cast<std::uint64_t>(2 * g - 1));
  const BigInt half = (q - 1) / 2;
  const int s1 = mpz_even_p(half.get_mpz_t()) ? 1 : -1;
  const int s2 = -s1;
  auto coef = [&](int s) -> BigInt { return BigInt(s) * two - BigInt((1 + s) / 2); };
  return coef(s1) * ipow(H / (q + 1), e) + coef(s2) * ipow(H / (q - 1), e) + ipow(H, e) + ipow(H / q, e);
}

/// The n = 2 polynomial valid for q = 1 mod 4:
/// (2^{2g-1}-1)(q(q-1))^{2g-2} - 2^{2g-1}(q(q+1))^{2g-2} + (q(q^2-1))^{2g-2} + (q^2-1)^{2g-2}.
inline IntLaurentPoly n2_polynomial(int g) {
  if (g < 1) throw std::invalid_argument("n2_polynomial: g must be >= 1");
  const IntLaurentPoly q = IntLaurentPoly::q();
  const IntLaurentPoly one(1L);
  const long e = 2 * g - 2;
  const BigInt two = ipow(BigInt(2), static_cast<std::uint64_t>(2 * g - 1));
  return poly_pow(q * (q - one), e) * BigInt(two - 1) - poly_pow(q * (q + one), e) * two +
         poly_pow(q * (q * q - one), e) + poly_pow(q * q - one, e);
}

/// N^g_n evaluated at q = 1.
inline BigInt euler_char(int n, int g, unsigned jobs = 1) { return n_poly(n, g, jobs).euler; }

/// 1 for g = 1, mu(n) n^{4g-3} otherwise.
inline BigInt euler_char_formula(int n, int g) {
  detail::check_ng(n, g);
  if (g == 1) return 1;
  return BigInt(mobius(n)) * ipow(BigInt(n), static_cast<std::uint64_t>(4 * g - 3));
}

}  // namespace slnpoly
