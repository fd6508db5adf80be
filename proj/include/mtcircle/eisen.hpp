#pragma once

// Eisenstein ideal on H_+: the filtration I^n H_+, Mazur's logarithm on
// (H^0)_+, the winding vector and alpha(p, l, s).

#include <cstdint>
#include <optional>
#include <vector>

#include "mtcircle/gfield.hpp"
#include "mtcircle/modsym.hpp"
#include "mtcircle/zmodlin.hpp"

namespace mtc {

// max(20, ceil((p+1)/6))
std::uint64_t default_prime_bound(std::uint64_t p);

// T_q - (q+1) for primes q <= bound, q != p, then U_p - 1, as matrices on H.
// A bound of 0 means default_prime_bound(p).
std::vector<HeckeMatrix> ideal_generators(const ManinSpace& space,
                                          const ZMat& u_p,
                                          std::uint64_t prime_bound = 0);

struct IdealFiltration {
  // chain[n] = I^n H_+; the last entry repeats the one before it.
  std::vector<Submodule> chain;
  std::size_t stabilization_index = 0;  // least n with chain[n] == chain[n+1]

  const Submodule& at(std::size_t n) const {
    return chain[n < chain.size() ? n : chain.size() - 1];
  }
};

IdealFiltration ideal_filtration(const Submodule& h_plus,
                                 const std::vector<HeckeMatrix>& gens,
                                 const Modulus& m, std::size_t n_max = 64);

// sum lambda_a {oo, a/p} -> sum lambda_a log(a) mod l^s.
class MazurLog {
 public:
  MazurLog(const ManinSpace& space, const LogTable& logs);

  residue of_coefficients(std::span<const residue> lambda) const;
  // Expands v over the symbols {oo, a/p}; nullopt when v is outside (H^0)_+'s
  // span of those symbols.
  std::optional<residue> operator()(std::span<const residue> v) const;
  // The symbols {oo, a/p}, a = 1..p-1, as rows.
  const ZMat& spanning_rows() const noexcept { return rows_; }

 private:
  Modulus mod_;
  std::vector<residue> logs_;  // logs_[a-1]
  ZMat rows_;
  HowellWithTransform span_;
};

// sum_{a=1}^{p-1} log(a) {a/p, oo}
ZVec log_symbol_sum(const ManinSpace& space, const LogTable& logs);
// 2^{-1} (U_p + 1) sum_a log(a) {a/p, oo}
ZVec winding_rhs(const ManinSpace& space, const LogTable& logs,
                 const ZMat& u_p);

struct AlphaReport {
  std::uint64_t p = 0, ell = 0;
  unsigned s = 0;
  std::size_t alpha = 0;
  bool stabilized = false;  // membership persists on the stable tail
  std::optional<std::size_t> cross_alpha;
  std::optional<bool> cross_stabilized;
  bool method_cross_check = false;
  residue merel_sum = 0;
  bool i2_eq_i3 = false;
};

struct AlphaLevel {
  std::size_t alpha = 0;
  bool stabilized = false;
};

// Largest n with v in chain[n].
AlphaLevel alpha_of_vector(const IdealFiltration& f,
                           std::span<const residue> v, const Modulus& m);
// Largest n with L H_+ inside chain[n].
AlphaLevel alpha_of_operator(const IdealFiltration& f, const Submodule& h_plus,
                             const ZMat& l_on_h, const Modulus& m);

// Throws Error(verification_failed) when both methods run and disagree.
AlphaReport alpha_compute(const PrimeContext& ctx, const IdealFiltration& f,
                          const Submodule& h_plus, std::span<const residue> rhs,
                          const ZMat* l_on_h);

// sum_{k=1}^{(p-1)/2} k log(k) mod l
residue merel_sum(const PrimeContext& ctx, const LogTable& logs);

struct MerelCheck {
  bool chains_equal = false;  // chain[2] == chain[3]
  bool merel_nonzero = false;
  bool consistent() const noexcept { return chains_equal == merel_nonzero; }
};

MerelCheck i2_equals_i3_check(const IdealFiltration& f, residue merel);

}  // namespace mtc
