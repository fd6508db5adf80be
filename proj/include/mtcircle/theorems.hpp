#pragma once

// End-to-end checks. A Circle bundles every object derived from one
// (p, l, s): supersingular data, the Hecke polynomial for L, homology with
// its operators, and the Eisenstein filtration.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtcircle/eisen.hpp"
#include "mtcircle/gfield.hpp"
#include "mtcircle/modsym.hpp"
#include "mtcircle/ssgraph.hpp"

namespace mtc {

class Cache;

struct RunOptions {
  unsigned degree_budget = 16;    // max total degree of Hecke monomials
  std::uint64_t prime_bound = 0;  // 0: default_prime_bound(p)
  unsigned tree_cap = 8;          // brute-force spanning trees up to this size
};

struct Circle {
  Circle(const PrimeContext& c, SupersingularSet s, ManinSpace h)
      : ctx(c), mod(c.coeff_modulus()), S(std::move(s)), space(std::move(h)) {}

  PrimeContext ctx;
  Modulus mod;  // l^s
  SupersingularSet S;
  LMatrix L;
  std::vector<BrandtMatrix> brandts;
  std::optional<HeckePolynomial> poly;
  std::string poly_error;

  ManinSpace space;
  HeckeMatrix star, w_p, u_p;
  std::map<std::uint64_t, ZMat> hecke;  // T_q on H for q in {2,3,5,7}, q != p
  PlusSubspaces sub;
  std::vector<HeckeMatrix> gens;
  IdealFiltration filtration;
  ZVec winding;   // {0, oo}
  ZVec log_sum;   // sum log(a) {a/p, oo}
  ZVec rhs;       // winding_rhs
  std::optional<ZMat> l_on_h;
};

// Builds every piece; the cache (may be null) supplies S and the presentation.
std::unique_ptr<Circle> build_circle(const PrimeContext& ctx,
                                     const RunOptions& opts = {},
                                     Cache* cache = nullptr);

struct VerificationReport {
  std::string theorem;  // main | alpha2 | alpha3 | tree
  std::string label;
  std::uint64_t p = 0, ell = 0;
  unsigned s = 0;
  bool pass = false;
  nlohmann::json witnesses = nlohmann::json::object();
  double seconds = 0;
};

VerificationReport verify_main_identity(const Circle& c);
VerificationReport verify_alpha_geq2(const Circle& c);
VerificationReport verify_alpha3_equivalence(const Circle& c);

// Throws Error(invalid_argument) unless p = 1 mod 12.
VerificationReport verify_tree_formula(const PrimeContext& ctx,
                                       const SupersingularSet& S,
                                       unsigned tree_cap = 8);
VerificationReport verify_tree_formula(const PrimeContext& ctx,
                                       unsigned tree_cap = 8,
                                       Cache* cache = nullptr);

// Weighted Laplacian of the complete graph with symmetric edge weights w.
ZMat weighted_laplacian(const ZMat& w, const Modulus& m);
// Sum over spanning trees of the product of edge weights, via Pruefer codes.
residue spanning_tree_bruteforce(const ZMat& w, const Modulus& m,
                                 std::size_t cap = 8);

AlphaReport alpha_report(const Circle& c);

struct BatteryContext {
  std::uint64_t p, ell;
  unsigned s;
};
const std::vector<BatteryContext>& standard_battery();
const std::vector<std::array<std::uint64_t, 2>>& tree_battery();

// Every theorem on every battery context, sorted by (theorem, p, l, s).
std::vector<VerificationReport> run_battery(const RunOptions& opts = {},
                                            Cache* cache = nullptr);

}  // namespace mtc
