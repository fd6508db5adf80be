#pragma once

// Relative homology H = H_1(X_0(p), cusps; Z/l^s) via Manin symbols.
//
// Generators are the p+1 points of P^1(Z/p); the symbol of the coset of
// (a b; c d) is the path {b/d, a/c} and its point is [c:d]. Elements of H are
// row vectors of coordinates; operators act on the right (v -> v * M).

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mtcircle/zmodlin.hpp"

namespace mtc {

// A point of P^1(Q): num/den in lowest terms with den >= 0; den == 0 is oo.
struct Cusp {
  std::int64_t num = 1;
  std::int64_t den = 0;

  static Cusp make(std::int64_t num, std::int64_t den);
  static Cusp infinity() { return {1, 0}; }
  bool is_infinity() const noexcept { return den == 0; }
  friend bool operator==(const Cusp&, const Cusp&) = default;
};

// Integer matrix acting on P^1(Q) by Moebius transformation.
struct IntMatrix2 {
  std::int64_t a, b, c, d;

  Cusp apply(const Cusp& z) const;
  std::int64_t det() const noexcept { return a * d - b * c; }
};

// P^1(Z/p) normalized as [c:1] (c in [0,p)) or [1:0].
struct P1Point {
  std::uint64_t c = 0;
  std::uint64_t d = 1;
  friend bool operator==(const P1Point&, const P1Point&) = default;
};

unsigned genus_x0(std::uint64_t p);

class ManinSpace {
 public:
  ManinSpace(std::uint64_t p, const Modulus& m, std::vector<std::size_t> basis,
             ZMat gen_to_coord);

  std::uint64_t p() const noexcept { return p_; }
  const Modulus& modulus() const noexcept { return mod_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  std::size_t num_generators() const noexcept { return p_ + 1; }

  // Index of [c:d]; [c:1] -> c, [1:0] -> p. Throws if c = d = 0 mod p.
  std::size_t generator_index(std::int64_t c, std::int64_t d) const;
  P1Point generator(std::size_t index) const;
  // Generator index behind each coordinate of H.
  const std::vector<std::size_t>& basis_generators() const noexcept {
    return basis_;
  }
  // Coordinates of the Manin symbol xi(index).
  std::span<const residue> symbol(std::size_t index) const {
    return gen_to_coord_.row(index);
  }
  const ZMat& generator_coordinates() const noexcept { return gen_to_coord_; }
  // The path {b/d, a/c} for a fixed SL_2(Z) lift of the generator.
  std::pair<Cusp, Cusp> generator_path(std::size_t index) const;

 private:
  std::uint64_t p_;
  Modulus mod_;
  std::vector<std::size_t> basis_;
  ZMat gen_to_coord_;
};

// Quotient of the free module on P^1(Z/p) by the two- and three-term
// relations. Throws if the quotient is not free over Z/m.
ManinSpace build_presentation(std::uint64_t p, const Modulus& m);

// The class of the geodesic {alpha, beta}, expanded by continued fractions.
ZVec path_symbol(const ManinSpace& space, const Cusp& alpha, const Cusp& beta);

// Cusp class: oo when p divides the denominator, 0 otherwise.
bool is_cusp_infinity(const Cusp& z, std::uint64_t p);

// Boundary as the coefficient n of the degree-zero divisor n((oo) - (0)).
residue boundary(const ManinSpace& space, std::span<const residue> v);
ZVec boundary_functional(const ManinSpace& space);

struct HeckeMatrix {
  std::string label;
  ZMat mat;
};

// Matrix of sum_k {g_k alpha, g_k beta} on H.
ZMat path_operator(const ManinSpace& space,
                   const std::vector<IntMatrix2>& matrices);

// {alpha, beta} -> {-alpha, -beta}
HeckeMatrix star_involution(const ManinSpace& space);
// Coset sum over (1 r; 0 q), 0 <= r < q, and (q 0; 0 1).
HeckeMatrix hecke_tq(const ManinSpace& space, std::uint64_t q);
// w_p from z -> -1/(p z); U_p = -w_p.
std::pair<HeckeMatrix, HeckeMatrix> atkin_lehner(const ManinSpace& space);
// U_p from the coset sum over (1 r; 0 p); cross-check for -w_p.
HeckeMatrix hecke_up_coset_sum(const ManinSpace& space);

struct PlusSubspaces {
  Submodule h_plus;   // fixed by star
  Submodule h0;       // kernel of the boundary
  Submodule h0_plus;  // both
};

PlusSubspaces plus_subspaces(const ManinSpace& space, const HeckeMatrix& star);

}  // namespace mtc
