#include "mtcircle/modpoly.hpp"

#include <map>
#include <string>

#include "mtcircle/error.hpp"

namespace mtc {

namespace {
#include "modpoly_tables.inc"
}  // namespace

std::span<const ModPolyTerm> modular_polynomial_terms(unsigned q) {
  switch (q) {
    case 2: return phi2_terms;
    case 3: return phi3_terms;
    case 5: return phi5_terms;
    case 7: return phi7_terms;
    default:
      fail(ErrorCode::invalid_argument,
           "no modular polynomial table for q=" + std::to_string(q));
  }
}

std::vector<unsigned> available_modular_polynomials() { return {2, 3, 5, 7}; }

std::uint64_t decimal_mod(std::string_view decimal, std::uint64_t n) {
  bool negative = false;
  if (!decimal.empty() && (decimal.front() == '-' || decimal.front() == '+')) {
    negative = decimal.front() == '-';
    decimal.remove_prefix(1);
  }
  if (decimal.empty()) fail(ErrorCode::invalid_argument, "empty decimal");
  std::uint64_t acc = 0;
  for (char ch : decimal) {
    if (ch < '0' || ch > '9') fail(ErrorCode::invalid_argument, "bad decimal");
    acc = (acc * 10 + static_cast<std::uint64_t>(ch - '0')) % n;
  }
  return negative && acc != 0 ? n - acc : acc;
}

void validate_modular_polynomial(unsigned q) {
  auto terms = modular_polynomial_terms(q);
  std::map<std::pair<int, int>, std::string> by_exp;
  for (const auto& t : terms) by_exp[{t.x_deg, t.y_deg}] = t.coeff;
  for (const auto& [exp, c] : by_exp) {
    auto it = by_exp.find({exp.second, exp.first});
    if (it == by_exp.end() || it->second != c) {
      fail(ErrorCode::verification_failed,
           "Phi_" + std::to_string(q) + " is not symmetric");
    }
  }
  const int top = static_cast<int>(q) + 1;
  // (X^q - Y)(X - Y^q) = X^{q+1} - X^q Y^q - X Y + Y^{q+1}
  std::map<std::pair<int, int>, std::int64_t> kronecker{
      {{top, 0}, 1}, {{0, top}, 1}, {{top - 1, top - 1}, -1}, {{1, 1}, -1}};
  for (int a = 0; a <= top; ++a) {
    for (int b = 0; b <= top; ++b) {
      auto it = by_exp.find({a, b});
      std::uint64_t have = it == by_exp.end() ? 0 : decimal_mod(it->second, q);
      auto kt = kronecker.find({a, b});
      std::int64_t want = kt == kronecker.end() ? 0 : kt->second;
      auto want_mod = static_cast<std::uint64_t>(
          (want % static_cast<std::int64_t>(q) + q) % q);
      if (have != want_mod) {
        fail(ErrorCode::verification_failed,
             "Phi_" + std::to_string(q) + " fails the Kronecker congruence");
      }
    }
  }
}

ReducedModPoly::ReducedModPoly(unsigned q, std::uint64_t p)
    : q_(q), p_(p), coeff_(q + 2, std::vector<std::uint64_t>(q + 2, 0)) {
  for (const auto& t : modular_polynomial_terms(q))
    coeff_[t.x_deg][t.y_deg] = decimal_mod(t.coeff, p);
}

std::vector<Fp2Elt> ReducedModPoly::specialize_x(const Fp2Field& f,
                                                 Fp2Elt x) const {
  std::vector<Fp2Elt> out(q_ + 2);
  Fp2Elt xpow{1, 0};
  for (unsigned a = 0; a <= q_ + 1; ++a) {
    for (unsigned b = 0; b <= q_ + 1; ++b) {
      if (coeff_[a][b] == 0) continue;
      out[b] = f.add(out[b], f.scale(xpow, coeff_[a][b]));
    }
    xpow = f.mul(xpow, x);
  }
  return out;
}

}  // namespace mtc
