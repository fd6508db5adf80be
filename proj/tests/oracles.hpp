#pragma once

// Slow, independent reference computations. Nothing here calls the routine
// it is meant to check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "mtcircle/gfield.hpp"
#include "mtcircle/zmodlin.hpp"

namespace oracle {

using mtc::Fp2Elt;
using mtc::Fp2Field;
using mtc::Modulus;
using mtc::residue;
using mtc::ZMat;
using mtc::ZVec;

inline std::size_t encode(std::span<const residue> v, std::uint64_t m) {
  std::size_t code = 0;
  for (std::size_t i = v.size(); i-- > 0;) code = code * m + v[i];
  return code;
}

inline ZVec decode(std::size_t code, std::size_t n, std::uint64_t m) {
  ZVec v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = code % m;
    code /= m;
  }
  return v;
}

// Membership bitmap over (Z/m)^cols of the row span of a, by breadth-first
// closure under adding generators.
inline std::vector<char> span(const ZMat& a, std::uint64_t m) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < a.cols(); ++i) total *= m;
  std::vector<char> seen(total, 0);
  std::vector<std::size_t> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    ZVec v = decode(queue[head], a.cols(), m);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      ZVec w(a.cols());
      for (std::size_t j = 0; j < a.cols(); ++j) w[j] = (v[j] + a(r, j)) % m;
      std::size_t c = encode(w, m);
      if (!seen[c]) {
        seen[c] = 1;
        queue.push_back(c);
      }
    }
  }
  return seen;
}

inline std::size_t count(const std::vector<char>& bitmap) {
  return static_cast<std::size_t>(std::count(bitmap.begin(), bitmap.end(), 1));
}

// All of (Z/m)^n.
inline std::vector<ZVec> ambient(std::size_t n, std::uint64_t m) {
  std::vector<ZVec> out;
  ZVec v(n, 0);
  while (true) {
    out.push_back(v);
    std::size_t k = 0;
    while (k < n && ++v[k] == m) v[k++] = 0;
    if (k == n) break;
  }
  return out;
}

inline ZMat random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c,
                          std::uint64_t m) {
  ZMat a(r, c);
  std::uniform_int_distribution<std::uint64_t> d(0, m - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = d(rng);
  return a;
}

// Laplace expansion over the integers, then reduced.
inline std::int64_t det_cofactor(const std::vector<std::vector<std::int64_t>>& a,
                                 std::int64_t m) {
  const std::size_t n = a.size();
  if (n == 0) return 1 % m;
  if (n == 1) return ((a[0][0] % m) + m) % m;
  std::int64_t acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<std::int64_t>> sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<std::int64_t> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      sub.push_back(row);
    }
    std::int64_t term = (a[0][j] % m) * det_cofactor(sub, m) % m;
    acc = (j % 2 ? acc - term : acc + term) % m;
  }
  return (acc % m + m) % m;
}

// ind_g(x) for every x, by walking the powers of g.
inline std::vector<std::uint64_t> index_table(std::uint64_t p, std::uint64_t g) {
  std::vector<std::uint64_t> ind(p, 0);
  std::uint64_t x = 1;
  for (std::uint64_t k = 0; k + 1 < p; ++k) {
    ind[x] = k;
    x = x * g % p;
  }
  return ind;
}

// Quadratic character table on F_{p^2}, indexed by Fp2Field::index.
class PointCounter {
 public:
  PointCounter(std::uint64_t p, std::uint64_t qnr) : f_(p, qnr), p_(p) {
    const std::uint64_t q = p * p;
    chi_.assign(q, -1);
    chi_[0] = 0;
    for (std::uint64_t i = 1; i < q; ++i) {
      Fp2Elt x = f_.from_index(i);
      chi_[f_.index(f_.mul(x, x))] = 1;
    }
    cubes_.resize(q);
    for (std::uint64_t i = 0; i < q; ++i) {
      Fp2Elt x = f_.from_index(i);
      cubes_[i] = f_.mul(f_.mul(x, x), x);
    }
  }

  // #E(F_{p^2}) for y^2 = x^3 + A x + B.
  std::int64_t count(Fp2Elt A, Fp2Elt B) const {
    const std::uint64_t q = p_ * p_;
    std::int64_t total = 1;  // point at infinity
    for (std::uint64_t i = 0; i < q; ++i) {
      Fp2Elt x = f_.from_index(i);
      Fp2Elt rhs = f_.add(f_.add(cubes_[i], f_.mul(A, x)), B);
      total += 1 + chi_[f_.index(rhs)];
    }
    return total;
  }

  // A model with j-invariant j.
  std::pair<Fp2Elt, Fp2Elt> model(Fp2Elt j) const {
    const Fp2Elt k1728 = f_.from_int(1728);
    if (j.is_zero()) return {Fp2Elt{0, 0}, Fp2Elt{1, 0}};
    if (j == k1728) return {Fp2Elt{1, 0}, Fp2Elt{0, 0}};
    Fp2Elt k = f_.sub(k1728, j);
    Fp2Elt A = f_.scale(f_.mul(j, k), 3);
    Fp2Elt B = f_.scale(f_.mul(j, f_.mul(k, k)), 2);
    return {A, B};
  }

  // Trace of Frobenius over F_{p^2} divisible by p.
  bool supersingular(Fp2Elt j) const {
    auto [A, B] = model(j);
    std::int64_t n = count(A, B);
    std::int64_t q = static_cast<std::int64_t>(p_ * p_);
    std::int64_t trace = q + 1 - n;
    return trace % static_cast<std::int64_t>(p_) == 0;
  }

  // |Aut(E)|/2 from the u in mu_12 with u^4 A = A and u^6 B = B.
  unsigned weight(Fp2Elt j) const {
    auto [A, B] = model(j);
    const std::uint64_t q = p_ * p_;
    unsigned count = 0;
    for (std::uint64_t i = 1; i < q; ++i) {
      Fp2Elt u = f_.from_index(i);
      if (!(f_.pow(u, 12) == Fp2Elt{1, 0})) continue;
      if (f_.mul(f_.pow(u, 4), A) == A && f_.mul(f_.pow(u, 6), B) == B) ++count;
    }
    return count / 2;
  }

  const Fp2Field& field() const noexcept { return f_; }

 private:
  Fp2Field f_;
  std::uint64_t p_;
  std::vector<std::int8_t> chi_;
  std::vector<Fp2Elt> cubes_;
};

// Spanning-tree sum by testing every (n-1)-edge subset for acyclicity.
inline residue tree_sum_by_subsets(const ZMat& w, const Modulus& m) {
  const std::size_t n = w.rows();
  if (n == 1) return 1 % m.value();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j});
  const std::size_t e = edges.size();
  residue total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << e); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != n - 1) continue;
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    bool acyclic = true;
    residue prod = 1 % m.value();
    for (std::size_t k = 0; k < e && acyclic; ++k) {
      if (!(mask >> k & 1)) continue;
      auto [a, b] = edges[k];
      std::size_t ra = find(a), rb = find(b);
      if (ra == rb) acyclic = false;
      parent[ra] = rb;
      prod = m.mul(prod, w(a, b) % m.value());
    }
    if (acyclic) total = m.add(total, prod);
  }
  return total;
}

}  // namespace oracle
