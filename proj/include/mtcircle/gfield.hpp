#pragma once

// Prime-field and quadratic-extension arithmetic, plus the parameter context
// (p, l, s) shared by every other module.

#include <compare>
#include <cstdint>
#include <vector>

#include "mtcircle/zmodlin.hpp"

namespace mtc {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t n);
bool is_prime(std::uint64_t n);
std::uint64_t smallest_primitive_root(std::uint64_t p);
std::uint64_t smallest_nonresidue(std::uint64_t p);
// Legendre symbol (a/p) in {-1, 0, 1}.
int legendre(std::int64_t a, std::uint64_t p);

// Everything deterministic about a run lives here.
//
// r is l^t, the full l-part of p-1. Discrete logs land in Z/r; homology is
// taken with Z/l^s coefficients.
struct PrimeContext {
  std::uint64_t p = 0;
  std::uint64_t ell = 0;
  unsigned s = 0;
  unsigned t = 0;
  std::uint64_t r = 0;
  std::uint64_t g = 0;    // smallest primitive root mod p
  std::uint64_t qnr = 0;  // F_{p^2} = F_p[x]/(x^2 - qnr)

  Modulus log_modulus() const { return Modulus::prime_power(ell, t); }
  Modulus coeff_modulus() const { return Modulus::prime_power(ell, s); }
};

// Throws Error(invalid_argument) on any violated precondition.
PrimeContext make_context(std::uint64_t p, std::uint64_t ell, unsigned s);

// Smallest prime l >= 5 dividing p - 1, or 0 if there is none.
std::uint64_t default_ell(std::uint64_t p);

struct Fp2Elt {
  std::uint64_t c0 = 0;
  std::uint64_t c1 = 0;

  friend auto operator<=>(const Fp2Elt&, const Fp2Elt&) = default;
  bool is_zero() const noexcept { return c0 == 0 && c1 == 0; }
};

enum class Fp2Op { add, sub, mul, div };

// F_p[x]/(x^2 - qnr); elements c0 + c1*sqrt(qnr).
class Fp2Field {
 public:
  Fp2Field(std::uint64_t p, std::uint64_t qnr);

  std::uint64_t p() const noexcept { return p_; }
  std::uint64_t qnr() const noexcept { return qnr_; }

  Fp2Elt from_int(std::int64_t x) const;
  Fp2Elt add(Fp2Elt a, Fp2Elt b) const noexcept {
    return {addp(a.c0, b.c0), addp(a.c1, b.c1)};
  }
  Fp2Elt sub(Fp2Elt a, Fp2Elt b) const noexcept {
    return {subp(a.c0, b.c0), subp(a.c1, b.c1)};
  }
  Fp2Elt neg(Fp2Elt a) const noexcept { return {subp(0, a.c0), subp(0, a.c1)}; }
  Fp2Elt mul(Fp2Elt a, Fp2Elt b) const noexcept {
    std::uint64_t c0 = (a.c0 * b.c0 + (a.c1 * b.c1 % p_) * qnr_) % p_;
    std::uint64_t c1 = (a.c0 * b.c1 + a.c1 * b.c0) % p_;
    return {c0, c1};
  }
  Fp2Elt scale(Fp2Elt a, std::uint64_t k) const noexcept {
    k %= p_;
    return {a.c0 * k % p_, a.c1 * k % p_};
  }
  Fp2Elt inv(Fp2Elt a) const;
  Fp2Elt div(Fp2Elt a, Fp2Elt b) const { return mul(a, inv(b)); }
  Fp2Elt pow(Fp2Elt a, std::uint64_t e) const noexcept;
  Fp2Elt frobenius(Fp2Elt a) const noexcept { return {a.c0, subp(0, a.c1)}; }
  // a^{p+1} = c0^2 - qnr c1^2, an element of F_p.
  std::uint64_t norm(Fp2Elt a) const noexcept;

  // Dense index c0 * p + c1 in [0, p^2).
  std::uint64_t index(Fp2Elt a) const noexcept { return a.c0 * p_ + a.c1; }
  Fp2Elt from_index(std::uint64_t i) const noexcept { return {i / p_, i % p_}; }

 private:
  std::uint64_t addp(std::uint64_t a, std::uint64_t b) const noexcept {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t subp(std::uint64_t a, std::uint64_t b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }

  std::uint64_t p_;
  std::uint64_t qnr_;
};

Fp2Elt fp2_arith(const Fp2Field& f, Fp2Elt a, Fp2Elt b, Fp2Op op);
Fp2Elt frobenius(const Fp2Field& f, Fp2Elt a);
std::uint64_t norm_to_fp(const Fp2Field& f, Fp2Elt a);

// ind_g(x) mod l^t via Pohlig-Hellman on the l-Sylow subgroup of F_p^x.
residue dlog_ell(std::uint64_t x, const PrimeContext& ctx);

// dlog_ell tabulated for every x in [1, p).
class LogTable {
 public:
  explicit LogTable(const PrimeContext& ctx);

  // log(x) mod l^t; x is reduced mod p and must be nonzero.
  residue operator()(std::int64_t x) const;
  // log(x) reduced mod l^s.
  residue at_level(std::int64_t x, const Modulus& m) const {
    return (*this)(x) % m.value();
  }
  std::uint64_t p() const noexcept { return p_; }

 private:
  std::uint64_t p_;
  std::vector<residue> table_;
};

}  // namespace mtc
