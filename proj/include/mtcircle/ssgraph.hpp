#pragma once

// The supersingular module N = Z[S]: the points, their automorphism weights,
// the L-matrix built from logs of norms of j-differences, Brandt matrices
// from modular polynomials, and a Hecke-polynomial expression for L.

#include <cstdint>
#include <optional>
#include <vector>

#include "mtcircle/gfield.hpp"
#include "mtcircle/zmodlin.hpp"

namespace mtc {

struct SupersingularSet {
  std::uint64_t p = 0;
  std::uint64_t qnr = 0;
  std::vector<Fp2Elt> js;    // ascending by (c0, c1)
  std::vector<unsigned> weights;  // |Aut(E)|/2, aligned with js

  std::size_t size() const noexcept { return js.size(); }
  std::optional<std::size_t> index_of(Fp2Elt j) const;
};

// Supersingular j-invariants from the roots of the Deuring polynomial
// sum_i C((p-1)/2, i)^2 x^i over F_{p^2}.
SupersingularSet enumerate_supersingular(const PrimeContext& ctx);
SupersingularSet enumerate_supersingular(std::uint64_t p, std::uint64_t qnr);

unsigned supersingular_weight(std::uint64_t p, Fp2Elt j);
// (p-1)/12 + {0, 1, 1, 2} for p = 1, 5, 7, 11 mod 12.
std::size_t eichler_count(std::uint64_t p);

// Column E holds L([E]): entry E' != E is log(N(j(E') - j(E)))/w_{E'} and the
// diagonal entry makes the column sum vanish. Entries live in Z/l^t.
struct LMatrix {
  std::uint64_t modulus = 0;
  ZMat mat;
};

LMatrix build_l_matrix(const PrimeContext& ctx, const SupersingularSet& S);

// entry(i, j) = multiplicity of js[j] as a root of Phi_q(js[i], Y).
struct BrandtMatrix {
  unsigned q = 0;
  std::size_t n = 0;
  std::vector<std::int64_t> entries;

  std::int64_t operator()(std::size_t i, std::size_t j) const {
    return entries[i * n + j];
  }
  // The matrix of T_q on N in the column convention of LMatrix (column E is
  // T_q[E]), i.e. the transpose of the root-multiplicity table.
  ZMat hecke_action(const Modulus& m) const;
};

BrandtMatrix brandt_matrix(const PrimeContext& ctx, const SupersingularSet& S,
                           unsigned q);

// sum_i coeff_i * prod_{q in primes_i} T_q
struct HeckeTerm {
  residue coeff = 0;
  std::vector<std::uint64_t> primes;  // sorted multiset

  friend bool operator==(const HeckeTerm&, const HeckeTerm&) = default;
};

struct HeckePolynomial {
  std::uint64_t modulus = 0;
  std::size_t dim = 0;
  std::vector<HeckeTerm> terms;

  bool is_zero() const noexcept { return terms.empty(); }
  // Substitute the given operator matrices (all of size n x n) for T_q.
  template <typename OpLookup>
  ZMat evaluate(OpLookup&& op, std::size_t n, const Modulus& m) const {
    ZMat acc(n, n);
    for (const auto& t : terms) {
      ZMat prod = ZMat::identity(n);
      for (auto q : t.primes) prod = mat_mul(prod, op(q), m);
      acc = mat_add(acc, mat_scale(prod, t.coeff, m), m);
    }
    return acc;
  }
};

struct HeckeSearchOptions {
  unsigned degree = 6;       // initial total-degree budget
  unsigned max_degree = 16;  // give up beyond this
};

// Finds P with P(T_2, T_3, ...) == L mod l^s as matrices on N. Throws
// Error(search_exhausted) with a diagnostic when no representation is found.
HeckePolynomial hecke_polynomial_for_l(const PrimeContext& ctx,
                                       const SupersingularSet& S,
                                       const LMatrix& L,
                                       const std::vector<BrandtMatrix>& brandts,
                                       const HeckeSearchOptions& opts = {});

}  // namespace mtc
