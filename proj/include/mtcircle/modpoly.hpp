#pragma once

// Classical modular polynomials Phi_q(X, Y) for q in {2, 3, 5, 7}, stored as
// exact integer coefficient tables and reduced on demand.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mtcircle/gfield.hpp"

namespace mtc {

struct ModPolyTerm {
  int x_deg;
  int y_deg;
  const char* coeff;  // decimal, possibly signed
};

std::span<const ModPolyTerm> modular_polynomial_terms(unsigned q);
std::vector<unsigned> available_modular_polynomials();

std::uint64_t decimal_mod(std::string_view decimal, std::uint64_t n);

// Checks Phi_q(X,Y) = Phi_q(Y,X) and Phi_q = (X^q - Y)(X - Y^q) mod q.
// Throws Error(verification_failed) on mismatch.
void validate_modular_polynomial(unsigned q);

class ReducedModPoly {
 public:
  ReducedModPoly(unsigned q, std::uint64_t p);

  unsigned q() const noexcept { return q_; }
  // Coefficients (index = Y-degree) of Phi_q(x, Y) over F_{p^2}.
  std::vector<Fp2Elt> specialize_x(const Fp2Field& f, Fp2Elt x) const;
  std::uint64_t coeff(int x_deg, int y_deg) const {
    return coeff_[x_deg][y_deg];
  }

 private:
  unsigned q_;
  std::uint64_t p_;
  std::vector<std::vector<std::uint64_t>> coeff_;
};

}  // namespace mtc
