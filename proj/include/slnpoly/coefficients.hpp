// Copyright (C) 2026 The slnpoly Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "slnpoly/exactmath.hpp"
#include "slnpoly/types.hpp"

namespace slnpoly {

/// C0(tau) = (-1)^{m-1} (mu(d)/d) (m-1)! / prod_lambda m_lambda!.
inline BigRat c0(const PureType& tau) {
  const int m = tau.m_count();
  const int d = tau.degree();
  BigInt num = BigInt(mobius(d)) * factorial(m - 1);
  if ((m - 1) % 2 != 0) num = -num;
  BigInt den = d;
  for (const auto& [lambda, mult] : tau.mults()) den *= factorial(mult);
  return make_rat(num, den);
}

/// C_tau^t: sum over k | n/t and factorizations t k = t_d t_m for which
/// tau/(t_d, t_m) exists with degree coprime to t_d t_m, of
/// (mu(k)/k) mu(t_d) C0(tau/(t_d, t_m)).
inline BigRat c_t(const PureType& tau, int t) {
  const int n = tau.size();
  if (t < 1 || n % t != 0) throw std::invalid_argument("c_t: t must divide |tau|");
  BigRat total = 0;
  for (auto k64 : divisors(n / t)) {
    const int k = static_cast<int>(k64);
    const int mu_k = mobius(k);
    if (mu_k == 0) continue;
    const int T = t * k;
    for (auto td64 : divisors(T)) {
      const int t_d = static_cast<int>(td64);
      const int mu_td = mobius(t_d);
      if (mu_td == 0) continue;
      const int t_m = T / t_d;
      auto hat = quotient_type(tau, t_d, t_m);
      if (!hat || std::gcd(hat->degree(), T) != 1) continue;
      total += make_rat(BigInt(mu_k * mu_td), BigInt(k)) * c0(*hat);
    }
  }
  return total;
}

struct CoeffEntry {
  PureType tau;
  int t;
  BigRat value;
};

/// C_tau^t for every pure type of size n (enumeration order) and every t | n.
inline std::vector<CoeffEntry> c_t_all(int n) {
  std::vector<CoeffEntry> out;
  for (const auto& tau : enumerate_pure_types(n))
    for (auto t : divisors(n)) out.push_back({tau, static_cast<int>(t), c_t(tau, static_cast<int>(t))});
  return out;
}

}  // namespace slnpoly
