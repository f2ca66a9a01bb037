// Copyright (C) 2026 The slnpoly Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slnpoly/exactmath.hpp"
#include "slnpoly/parallel.hpp"

namespace slnpoly {

/// GF(p^k) with elements encoded as integers 0..p^k-1: the code of
/// sum a_i x^i is sum a_i p^i. Arithmetic goes through lookup tables.
class FqField {
 public:
  using Elem = std::uint16_t;

  int p() const { return p_; }
  int k() const { return k_; }
  int size() const { return q_; }
  /// Ascending coefficients of the monic modulus (length k+1).
  const std::vector<int>& modulus() const { return modulus_; }
  Elem generator() const { return gen_; }

  Elem add(Elem a, Elem b) const { return add_[idx(a, b)]; }
  Elem sub(Elem a, Elem b) const { return add_[idx(a, neg_[b])]; }
  Elem mul(Elem a, Elem b) const { return mul_[idx(a, b)]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("FqField: zero has no inverse");
    return inv_[a];
  }
  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = 1;
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  /// Multiplicative order of a nonzero element.
  int order(Elem a) const {
    if (a == 0) throw std::domain_error("FqField: zero has no multiplicative order");
    Elem x = a;
    for (int r = 1;; ++r) {
      if (x == 1) return r;
      x = mul(x, a);
    }
  }
  /// The element x^j (j < k), which together form an F_p-basis.
  Elem basis(int j) const {
    Elem c = 1;
    for (int i = 0; i < j; ++i) c = static_cast<Elem>(c * p_);
    return c;
  }

  friend FqField build_field(int p, int k);

 private:
  std::size_t idx(Elem a, Elem b) const { return static_cast<std::size_t>(a) * static_cast<std::size_t>(q_) + b; }

  int p_ = 0;
  int k_ = 0;
  int q_ = 0;
  std::vector<int> modulus_;
  Elem gen_ = 0;
  std::vector<Elem> add_, mul_, neg_, inv_;
};

namespace detail {
inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}
inline std::vector<int> digits(int code, int p, int k) {
  std::vector<int> d(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    d[static_cast<std::size_t>(i)] = code % p;
    code /= p;
  }
  return d;
}
// Does the monic polynomial with ascending coefficients f have a monic factor
// of degree between 1 and deg/2? Checked by trial division over F_p.
inline bool has_small_factor(const std::vector<int>& f, int p) {
  const int deg = static_cast<int>(f.size()) - 1;
  for (int dg = 1; 2 * dg <= deg; ++dg) {
    int count = 1;
    for (int i = 0; i < dg; ++i) count *= p;
    for (int code = 0; code < count; ++code) {
      std::vector<int> g = digits(code, p, dg);
      g.push_back(1);
      std::vector<int> r(f);
      for (int top = deg; top >= dg; --top) {
        int c = r[static_cast<std::size_t>(top)];
        if (c == 0) continue;
        for (int i = 0; i <= dg; ++i) {
          auto& x = r[static_cast<std::size_t>(top - dg + i)];
          x = ((x - c * g[static_cast<std::size_t>(i)]) % p + p) % p;
        }
      }
      bool zero = true;
      for (int i = 0; i < dg; ++i) zero = zero && r[static_cast<std::size_t>(i)] == 0;
      if (zero) return true;
    }
  }
  return false;
}
}  // namespace detail

/// GF(p^k) for k <= 3 and p^k <= 512, with the first irreducible monic modulus
/// in order of its lower coefficients' code.
inline FqField build_field(int p, int k) {
  if (!detail::is_prime(p)) throw std::invalid_argument("build_field: p must be prime");
  if (k < 1 || k > 3) throw std::invalid_argument("build_field: k must lie in [1, 3]");
  int q = 1;
  for (int i = 0; i < k; ++i) q *= p;
  if (q > 512) throw std::invalid_argument("build_field: p^k exceeds 512");
  FqField F;
  F.p_ = p;
  F.k_ = k;
  F.q_ = q;
  if (k == 1) {
    F.modulus_ = {0, 1};
  } else {
    for (int code = 0; code < q; ++code) {
      auto f = detail::digits(code, p, k);
      f.push_back(1);
      if (!detail::has_small_factor(f, p)) {
        F.modulus_ = f;
        break;
      }
    }
    if (F.modulus_.empty()) throw std::logic_error("build_field: no irreducible modulus found");
  }
  const auto Q = static_cast<std::size_t>(q);
  F.add_.assign(Q * Q, 0);
  F.mul_.assign(Q * Q, 0);
  F.neg_.assign(Q, 0);
  F.inv_.assign(Q, 0);
  auto encode = [&](const std::vector<int>& d) {
    int c = 0;
    for (int i = k - 1; i >= 0; --i) c = c * p + d[static_cast<std::size_t>(i)];
    return static_cast<FqField::Elem>(c);
  };
  for (int a = 0; a < q; ++a) {
    auto da = detail::digits(a, p, k);
    std::vector<int> dn(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) dn[static_cast<std::size_t>(i)] = (p - da[static_cast<std::size_t>(i)]) % p;
    F.neg_[static_cast<std::size_t>(a)] = encode(dn);
    for (int b = 0; b < q; ++b) {
      auto db = detail::digits(b, p, k);
      std::vector<int> ds(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) ds[static_cast<std::size_t>(i)] = (da[static_cast<std::size_t>(i)] + db[static_cast<std::size_t>(i)]) % p;
      std::vector<int> prod(static_cast<std::size_t>(2 * k - 1), 0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          prod[static_cast<std::size_t>(i + j)] = (prod[static_cast<std::size_t>(i + j)] + da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) % p;
      for (int top = 2 * k - 2; top >= k; --top) {
        int c = prod[static_cast<std::size_t>(top)];
        if (c == 0) continue;
        for (int i = 0; i <= k; ++i) {
          auto& x = prod[static_cast<std::size_t>(top - k + i)];
          x = ((x - c * F.modulus_[static_cast<std::size_t>(i)]) % p + p) % p;
        }
      }
      prod.resize(static_cast<std::size_t>(k));
      F.add_[static_cast<std::size_t>(a) * Q + static_cast<std::size_t>(b)] = encode(ds);
      F.mul_[static_cast<std::size_t>(a) * Q + static_cast<std::size_t>(b)] = encode(prod);
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (F.mul(static_cast<FqField::Elem>(a), static_cast<FqField::Elem>(b)) == 1) {
        F.inv_[static_cast<std::size_t>(a)] = static_cast<FqField::Elem>(b);
        break;
      }
  for (int a = 1; a < q; ++a)
    if (F.inv_[static_cast<std::size_t>(a)] == 0) throw std::logic_error("build_field: modulus is reducible");
  for (int a = 1; a < q; ++a)
    if (F.order(static_cast<FqField::Elem>(a)) == q - 1) {
      F.gen_ = static_cast<FqField::Elem>(a);
      break;
    }
  return F;
}

/// n x n matrix over an FqField (n <= 3), entries row-major.
struct MatFq {
  int n = 0;
  std::array<FqField::Elem, 9> a{};

  FqField::Elem& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  FqField::Elem at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }

  static MatFq identity(int n) { return scalar(n, 1); }
  static MatFq scalar(int n, FqField::Elem c) {
    MatFq m;
    m.n = n;
    for (int i = 0; i < n; ++i) m.at(i, i) = c;
    return m;
  }
  friend bool operator==(const MatFq& x, const MatFq& y) { return x.n == y.n && x.a == y.a; }
};

inline MatFq mat_mul(const FqField& F, const MatFq& x, const MatFq& y) {
  MatFq r;
  r.n = x.n;
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) {
      FqField::Elem s = 0;
      for (int k = 0; k < x.n; ++k) s = F.add(s, F.mul(x.at(i, k), y.at(k, j)));
      r.at(i, j) = s;
    }
  return r;
}

inline FqField::Elem mat_det(const FqField& F, const MatFq& m) {
  switch (m.n) {
    case 1:
      return m.at(0, 0);
    case 2:
      return F.sub(F.mul(m.at(0, 0), m.at(1, 1)), F.mul(m.at(0, 1), m.at(1, 0)));
    case 3: {
      auto minor = [&](int r1, int r2, int c1, int c2) {
        return F.sub(F.mul(m.at(r1, c1), m.at(r2, c2)), F.mul(m.at(r1, c2), m.at(r2, c1)));
      };
      FqField::Elem d = F.mul(m.at(0, 0), minor(1, 2, 1, 2));
      d = F.sub(d, F.mul(m.at(0, 1), minor(1, 2, 0, 2)));
      return F.add(d, F.mul(m.at(0, 2), minor(1, 2, 0, 1)));
    }
    default:
      throw std::invalid_argument("mat_det: n must lie in [1, 3]");
  }
}

/// Inverse through the adjugate; throws on singular input.
inline MatFq mat_inv(const FqField& F, const MatFq& m) {
  const FqField::Elem d = mat_det(F, m);
  if (d == 0) throw std::domain_error("mat_inv: singular matrix");
  const FqField::Elem di = F.inv(d);
  MatFq r;
  r.n = m.n;
  if (m.n == 1) {
    r.at(0, 0) = di;
    return r;
  }
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) {
      // cofactor C_{ji}
      FqField::Elem c;
      if (m.n == 2) {
        c = m.at(1 - j, 1 - i);
        if ((i + j) % 2) c = F.neg(c);
      } else {
        int rows[2], cols[2], ri = 0, ci = 0;
        for (int x = 0; x < 3; ++x) {
          if (x != j) rows[ri++] = x;
          if (x != i) cols[ci++] = x;
        }
        c = F.sub(F.mul(m.at(rows[0], cols[0]), m.at(rows[1], cols[1])), F.mul(m.at(rows[0], cols[1]), m.at(rows[1], cols[0])));
        if ((i + j) % 2) c = F.neg(c);
      }
      r.at(i, j) = F.mul(c, di);
    }
  return r;
}

/// |Sl_n(q)| = q^{n(n-1)/2} prod_{i=2}^n (q^i - 1).
inline BigInt sln_order(int n, const BigInt& q) {
  BigInt out = ipow(q, static_cast<std::uint64_t>(n * (n - 1) / 2));
  for (int i = 2; i <= n; ++i) out *= ipow(q, static_cast<std::uint64_t>(i)) - 1;
  return out;
}

/// |PGl_n(q)| = |Gl_n(q)| / (q - 1), numerically equal to |Sl_n(q)|.
inline BigInt pgln_order(int n, const BigInt& q) {
  BigInt out = ipow(q, static_cast<std::uint64_t>(n * (n - 1) / 2));
  for (int i = 1; i <= n; ++i) out *= ipow(q, static_cast<std::uint64_t>(i)) - 1;
  return out / (q - 1);
}

struct ConjugacyClass {
  std::uint32_t rep;
  std::vector<std::uint32_t> members;
};

/// All of Sl_n(q), stored as sorted base-q matrix codes; lookups by binary search.
class GroupTable {
 public:
  GroupTable(FqField field, int n) : F_(std::move(field)), n_(n) {}

  const FqField& field() const { return F_; }
  int n() const { return n_; }
  std::size_t size() const { return codes_.size(); }

  std::uint64_t encode(const MatFq& m) const {
    std::uint64_t c = 0;
    for (int i = n_ * n_ - 1; i >= 0; --i) c = c * static_cast<std::uint64_t>(F_.size()) + m.a[static_cast<std::size_t>(i)];
    return c;
  }
  MatFq decode(std::uint64_t c) const {
    MatFq m;
    m.n = n_;
    for (int i = 0; i < n_ * n_; ++i) {
      m.a[static_cast<std::size_t>(i)] = static_cast<FqField::Elem>(c % static_cast<std::uint64_t>(F_.size()));
      c /= static_cast<std::uint64_t>(F_.size());
    }
    return m;
  }
  MatFq element(std::size_t i) const { return decode(codes_[i]); }
  /// Index of a matrix in the table; throws if it is not an element.
  std::uint32_t index_of(const MatFq& m) const {
    const auto c = encode(m);
    auto it = std::lower_bound(codes_.begin(), codes_.end(), c);
    if (it == codes_.end() || *it != c) throw std::out_of_range("GroupTable: matrix is not in the group");
    return static_cast<std::uint32_t>(it - codes_.begin());
  }
  bool contains(const MatFq& m) const { return std::binary_search(codes_.begin(), codes_.end(), encode(m)); }
  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const { return index_of(mat_mul(F_, element(i), element(j))); }
  std::uint32_t inverse(std::uint32_t i) const { return index_of(mat_inv(F_, element(i))); }

  bool has_classes() const { return !class_of_.empty() || codes_.empty(); }
  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  std::uint32_t class_of(std::uint32_t i) const { return class_of_[i]; }

  /// Transvections I + beta E_{i,i+1} and I + beta E_{i+1,i}, beta over an F_p-basis.
  std::vector<MatFq> generators() const {
    std::vector<MatFq> gens;
    for (int i = 0; i + 1 < n_; ++i)
      for (int j = 0; j < F_.k(); ++j)
        for (int dir = 0; dir < 2; ++dir) {
          MatFq g = MatFq::identity(n_);
          if (dir == 0) g.at(i, i + 1) = F_.basis(j);
          else g.at(i + 1, i) = F_.basis(j);
          gens.push_back(g);
        }
    return gens;
  }

  /// Conjugacy classes by closing each unseen element under conjugation by generators.
  void compute_classes() {
    class_of_.assign(codes_.size(), UINT32_MAX);
    classes_.clear();
    std::vector<std::pair<MatFq, MatFq>> gens;
    for (const auto& g : generators()) gens.emplace_back(g, mat_inv(F_, g));
    for (std::uint32_t i = 0; i < codes_.size(); ++i) {
      if (class_of_[i] != UINT32_MAX) continue;
      const auto cid = static_cast<std::uint32_t>(classes_.size());
      ConjugacyClass cls{i, {i}};
      class_of_[i] = cid;
      for (std::size_t head = 0; head < cls.members.size(); ++head) {
        const MatFq x = element(cls.members[head]);
        for (const auto& [g, gi] : gens) {
          const auto y = index_of(mat_mul(F_, mat_mul(F_, g, x), gi));
          if (class_of_[y] == UINT32_MAX) {
            class_of_[y] = cid;
            cls.members.push_back(y);
          }
        }
      }
      std::sort(cls.members.begin(), cls.members.end());
      classes_.push_back(std::move(cls));
    }
  }

  friend GroupTable enumerate_sln(const FqField& field, int n, bool with_classes, std::uint64_t budget);

 private:
  FqField F_;
  int n_;
  std::vector<std::uint64_t> codes_;
  std::vector<ConjugacyClass> classes_;
  std::vector<std::uint32_t> class_of_;
};

/// Every determinant-one n x n matrix over the field, in increasing code order.
inline GroupTable enumerate_sln(const FqField& field, int n, bool with_classes = true, std::uint64_t budget = 10'000'000) {
  if (n < 1 || n > 3) throw std::invalid_argument("enumerate_sln: n must lie in [1, 3]");
  const BigInt order = sln_order(n, field.size());
  if (order > budget) throw BudgetExceeded("enumerate_sln: group order exceeds budget");
  double space = 1;
  for (int i = 0; i < n * n; ++i) space *= field.size();
  if (space > 9.0e18) throw BudgetExceeded("enumerate_sln: matrix codes do not fit in 64 bits");
  GroupTable gt(field, n);
  gt.codes_.reserve(order.get_ui());
  const auto total = static_cast<std::uint64_t>(space);
  for (std::uint64_t c = 0; c < total; ++c) {
    const MatFq m = gt.decode(c);
    if (mat_det(field, m) == 1) gt.codes_.push_back(c);
  }
  if (BigInt(static_cast<unsigned long>(gt.codes_.size())) != order) throw std::logic_error("enumerate_sln: order mismatch");
  if (with_classes) gt.compute_classes();
  return gt;
}

namespace detail {

// Number of B in Sl_n with A B = W B A. The condition is linear in B, so the
// solutions form a subspace; it is enumerated and filtered by det B = 1.
inline std::uint64_t twisted_centralizer_count(const FqField& F, const MatFq& A, const MatFq& W, std::uint64_t kernel_budget) {
  const int n = A.n;
  const int N = n * n;
  std::array<std::array<FqField::Elem, 9>, 9> L{};
  // Coefficient of b_{lk} in equation (i,j): [k == j] A_{il} - W_{il} A_{kj}; the
  // sum over l of W_{il} (B A)_{lj} expands the right-hand side.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto& row = L[static_cast<std::size_t>(i * n + j)];
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) {
          FqField::Elem c = F.neg(F.mul(W.at(i, l), A.at(k, j)));
          if (k == j) c = F.add(c, A.at(i, l));
          row[static_cast<std::size_t>(l * n + k)] = c;
        }
    }
  // Reduced row echelon form.
  std::array<int, 9> pivot_col{};
  int rank = 0;
  std::array<bool, 9> is_pivot{};
  for (int col = 0; col < N && rank < N; ++col) {
    int sel = -1;
    for (int r = rank; r < N; ++r)
      if (L[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(L[static_cast<std::size_t>(sel)], L[static_cast<std::size_t>(rank)]);
    auto& pr = L[static_cast<std::size_t>(rank)];
    const FqField::Elem inv = F.inv(pr[static_cast<std::size_t>(col)]);
    for (int c = 0; c < N; ++c) pr[static_cast<std::size_t>(c)] = F.mul(pr[static_cast<std::size_t>(c)], inv);
    for (int r = 0; r < N; ++r) {
      if (r == rank) continue;
      auto& row = L[static_cast<std::size_t>(r)];
      const FqField::Elem f = row[static_cast<std::size_t>(col)];
      if (f == 0) continue;
      for (int c = 0; c < N; ++c) row[static_cast<std::size_t>(c)] = F.sub(row[static_cast<std::size_t>(c)], F.mul(f, pr[static_cast<std::size_t>(c)]));
    }
    pivot_col[static_cast<std::size_t>(rank)] = col;
    is_pivot[static_cast<std::size_t>(col)] = true;
    ++rank;
  }
  const int dim = N - rank;
  if (dim == 0) return 0;
  double vectors = 1;
  for (int i = 0; i < dim; ++i) vectors *= F.size();
  if (vectors > static_cast<double>(kernel_budget)) throw BudgetExceeded("kernel enumeration exceeds budget");
  // Kernel basis: one vector per free column.
  std::vector<std::array<FqField::Elem, 9>> basis;
  for (int fc = 0; fc < N; ++fc) {
    if (is_pivot[static_cast<std::size_t>(fc)]) continue;
    std::array<FqField::Elem, 9> v{};
    v[static_cast<std::size_t>(fc)] = 1;
    for (int r = 0; r < rank; ++r)
      v[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] = F.neg(L[static_cast<std::size_t>(r)][static_cast<std::size_t>(fc)]);
    basis.push_back(v);
  }
  std::vector<FqField::Elem> coef(static_cast<std::size_t>(dim), 0);
  MatFq B;
  B.n = n;
  std::uint64_t count = 0;
  const auto total = static_cast<std::uint64_t>(vectors);
  for (std::uint64_t it = 0; it < total; ++it) {
    B.a.fill(0);
    for (int b = 0; b < dim; ++b) {
      const FqField::Elem c = coef[static_cast<std::size_t>(b)];
      if (c == 0) continue;
      for (int x = 0; x < N; ++x)
        B.a[static_cast<std::size_t>(x)] = F.add(B.a[static_cast<std::size_t>(x)], F.mul(c, basis[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)]));
    }
    if (mat_det(F, B) == 1) ++count;
    for (int b = 0; b < dim; ++b) {
      if (++coef[static_cast<std::size_t>(b)] < F.size()) break;
      coef[static_cast<std::size_t>(b)] = 0;
    }
  }
  return count;
}

}  // namespace detail

/// sum over A in Sl_n of #{B in Sl_n : A B = z B A}; z must be central.
inline BigInt commutator_fiber_count(const GroupTable& gt, const MatFq& z, unsigned jobs = 1,
                                     std::uint64_t kernel_budget = 1'000'000) {
  const MatFq zi = MatFq::scalar(gt.n(), z.at(0, 0));
  if (!(zi == z)) throw std::invalid_argument("commutator_fiber_count: z must be a scalar matrix");
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(gt.size(), 64 * std::max(1u, jobs)));
  std::vector<std::uint64_t> partial(chunks, 0);
  parallel_for(chunks, jobs, [&](std::size_t c) {
    const std::size_t lo = gt.size() * c / chunks;
    const std::size_t hi = gt.size() * (c + 1) / chunks;
    std::uint64_t s = 0;
    for (std::size_t i = lo; i < hi; ++i) s += detail::twisted_centralizer_count(gt.field(), gt.element(i), z, kernel_budget);
    partial[c] = s;
  });
  BigInt total = 0;
  for (auto s : partial) total += BigInt(static_cast<unsigned long>(s));
  return total;
}

/// f(w) = #{(A, B) : A B A^{-1} B^{-1} = w}, one value per conjugacy class.
inline std::vector<BigInt> commutator_distribution(const GroupTable& gt, unsigned jobs = 1,
                                                   std::uint64_t kernel_budget = 1'000'000) {
  if (!gt.has_classes()) throw std::logic_error("commutator_distribution: classes not computed");
  const auto& cls = gt.classes();
  std::vector<BigInt> f(cls.size());
  for (std::size_t c = 0; c < cls.size(); ++c) {
    const MatFq W = gt.element(cls[c].rep);
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(gt.size(), 16 * std::max(1u, jobs)));
    std::vector<std::uint64_t> partial(chunks, 0);
    parallel_for(chunks, jobs, [&](std::size_t k) {
      std::uint64_t s = 0;
      for (std::size_t i = gt.size() * k / chunks; i < gt.size() * (k + 1) / chunks; ++i)
        s += detail::twisted_centralizer_count(gt.field(), gt.element(i), W, kernel_budget);
      partial[k] = s;
    });
    BigInt total = 0;
    for (auto s : partial) total += BigInt(static_cast<unsigned long>(s));
    f[c] = total;
  }
  return f;
}

/// Classwise convolution (f * h)(z) = sum_w f(w) h(w^{-1} z), evaluated at each class.
inline std::vector<BigInt> class_convolve(const GroupTable& gt, const std::vector<BigInt>& f, const std::vector<BigInt>& h) {
  const auto& cls = gt.classes();
  std::vector<MatFq> inverses(gt.size());
  for (std::uint32_t w = 0; w < gt.size(); ++w) inverses[w] = mat_inv(gt.field(), gt.element(w));
  std::vector<BigInt> out(cls.size());
  for (std::size_t c = 0; c < cls.size(); ++c) {
    const MatFq z = gt.element(cls[c].rep);
    BigInt s = 0;
    for (std::uint32_t w = 0; w < gt.size(); ++w) {
      const BigInt& fw = f[gt.class_of(w)];
      if (fw == 0) continue;
      s += fw * h[gt.class_of(gt.index_of(mat_mul(gt.field(), inverses[w], z)))];
    }
    out[c] = s;
  }
  return out;
}

/// Number of 2g-tuples with prod [A_i, B_i] = z, by g-fold convolution of the commutator distribution.
inline BigInt genus_count(const GroupTable& gt, int g, const MatFq& z, std::uint64_t budget = 2'000'000'000ULL,
                          unsigned jobs = 1) {
  if (g < 1) throw std::invalid_argument("genus_count: g must be >= 1");
  const double work = static_cast<double>(gt.size()) * static_cast<double>(gt.classes().size()) * g;
  if (work > static_cast<double>(budget)) throw BudgetExceeded("genus_count: convolution exceeds budget");
  const auto f = commutator_distribution(gt, jobs);
  auto acc = f;
  for (int i = 1; i < g; ++i) acc = class_convolve(gt, acc, f);
  return acc[gt.class_of(gt.index_of(z))];
}

struct CharacterEntry {
  BigInt degree;
  BigRat value;
};

/// sum_chi chi(z) (|G| / chi(1))^{2g-1}; throws unless the result is a non-negative integer.
inline BigInt frobenius_from_table(const std::vector<CharacterEntry>& entries, const BigInt& group_order, int g) {
  if (g < 1) throw std::invalid_argument("frobenius_from_table: g must be >= 1");
  BigRat total = 0;
  for (const auto& e : entries) {
    if (e.degree <= 0) throw std::invalid_argument("frobenius_from_table: degrees must be positive");
    BigRat ratio = make_rat(group_order, e.degree);
    BigRat pw = 1;
    for (int i = 0; i < 2 * g - 1; ++i) pw *= ratio;
    total += e.value * pw;
  }
  total.canonicalize();
  if (total.get_den() != 1 || total < 0) throw std::logic_error("frobenius_from_table: result is not a non-negative integer");
  return total.get_num();
}

/// Degrees and values at -I of the irreducible characters of Sl_2(q), q odd.
inline std::vector<CharacterEntry> sl2_central_table(long q) {
  if (q < 3 || q % 2 == 0) throw std::invalid_argument("sl2_central_table: q must be odd");
  std::vector<CharacterEntry> t;
  auto sgn = [](long e) { return e % 2 == 0 ? 1 : -1; };
  t.push_back({1, BigRat(1)});
  t.push_back({q, BigRat(q)});
  for (long i = 1; i <= (q - 3) / 2; ++i) t.push_back({q + 1, BigRat((q + 1) * sgn(i))});
  for (int j = 0; j < 2; ++j) t.push_back({(q + 1) / 2, BigRat((q + 1) / 2 * sgn((q - 1) / 2))});
  for (long i = 1; i <= (q - 1) / 2; ++i) t.push_back({q - 1, BigRat((q - 1) * sgn(i))});
  for (int j = 0; j < 2; ++j) t.push_back({(q - 1) / 2, BigRat((q - 1) / 2 * sgn((q + 1) / 2))});
  return t;
}

/// The same characters evaluated at the identity.
inline std::vector<CharacterEntry> at_identity(std::vector<CharacterEntry> table) {
  for (auto& e : table) e.value = BigRat(e.degree);
  return table;
}

/// Sizes of the orbits of Gl_n(q) acting by simultaneous conjugation on the
/// pairs (A, B) in Sl_n x Sl_n with A B = z B A.
inline std::vector<std::size_t> solution_orbit_sizes(const GroupTable& gt, const MatFq& z, std::uint64_t max_solutions = 2'000'000) {
  const FqField& F = gt.field();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> sols;
  for (std::uint32_t a = 0; a < gt.size(); ++a) {
    const MatFq A = gt.element(a);
    for (std::uint32_t b = 0; b < gt.size(); ++b) {
      const MatFq B = gt.element(b);
      if (mat_mul(F, A, B) == mat_mul(F, mat_mul(F, z, B), A)) {
        sols.emplace_back(a, b);
        if (sols.size() > max_solutions) throw BudgetExceeded("solution_orbit_sizes: too many solutions");
      }
    }
  }
  std::sort(sols.begin(), sols.end());
  std::vector<std::pair<MatFq, MatFq>> gens;
  for (const auto& g : gt.generators()) gens.emplace_back(g, mat_inv(F, g));
  MatFq d = MatFq::identity(gt.n());
  d.at(0, 0) = F.generator();
  gens.emplace_back(d, mat_inv(F, d));
  std::vector<bool> seen(sols.size(), false);
  auto find = [&](std::uint32_t a, std::uint32_t b) {
    auto it = std::lower_bound(sols.begin(), sols.end(), std::make_pair(a, b));
    if (it == sols.end() || *it != std::make_pair(a, b)) throw std::logic_error("solution_orbit_sizes: orbit left the solution set");
    return static_cast<std::size_t>(it - sols.begin());
  };
  std::vector<std::size_t> sizes;
  for (std::size_t s = 0; s < sols.size(); ++s) {
    if (seen[s]) continue;
    std::deque<std::size_t> queue{s};
    seen[s] = true;
    std::size_t size = 0;
    while (!queue.empty()) {
      const auto cur = queue.front();
      queue.pop_front();
      ++size;
      const MatFq A = gt.element(sols[cur].first);
      const MatFq B = gt.element(sols[cur].second);
      for (const auto& [g, gi] : gens) {
        const auto na = gt.index_of(mat_mul(F, mat_mul(F, g, A), gi));
        const auto nb = gt.index_of(mat_mul(F, mat_mul(F, g, B), gi));
        const auto id = find(na, nb);
        if (!seen[id]) {
          seen[id] = true;
          queue.push_back(id);
        }
      }
    }
    sizes.push_back(size);
  }
  return sizes;
}

}  // namespace slnpoly
