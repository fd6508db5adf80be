#include "mtcircle/modsym.hpp"

#include <numeric>
#include <string>

#include "mtcircle/error.hpp"
#include "mtcircle/gfield.hpp"

namespace mtc {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::uint64_t mod_p(std::int64_t x, std::uint64_t p) {
  auto pi = static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(((x % pi) + pi) % pi);
}

}  // namespace

Cusp Cusp::make(std::int64_t num, std::int64_t den) {
  if (num == 0 && den == 0) fail(ErrorCode::invalid_argument, "cusp 0/0");
  if (den == 0) return infinity();
  std::int64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return {num, den};
}

Cusp IntMatrix2::apply(const Cusp& z) const {
  return Cusp::make(a * z.num + b * z.den, c * z.num + d * z.den);
}

unsigned genus_x0(std::uint64_t p) {
  const int nu2 = 1 + legendre(-1, p);
  const int nu3 = 1 + legendre(-3, p);
  const auto twelve_g = static_cast<std::int64_t>(p) + 1 - 3 * nu2 - 4 * nu3;
  if (twelve_g < 0 || twelve_g % 12 != 0) {
    fail(ErrorCode::verification_failed, "genus formula is not integral");
  }
  return static_cast<unsigned>(twelve_g / 12);
}

ManinSpace::ManinSpace(std::uint64_t p, const Modulus& m,
                       std::vector<std::size_t> basis, ZMat gen_to_coord)
    : p_(p), mod_(m), basis_(std::move(basis)),
      gen_to_coord_(std::move(gen_to_coord)) {
  if (gen_to_coord_.rows() != p_ + 1 || gen_to_coord_.cols() != basis_.size()) {
    fail(ErrorCode::dimension_mismatch, "ManinSpace: coordinate table shape");
  }
}

std::size_t ManinSpace::generator_index(std::int64_t c, std::int64_t d) const {
  std::uint64_t cc = mod_p(c, p_), dd = mod_p(d, p_);
  if (dd == 0) {
    if (cc == 0) fail(ErrorCode::invalid_argument, "[0:0] is not in P^1");
    return p_;
  }
  return static_cast<std::size_t>(mulmod(cc, powmod(dd, p_ - 2, p_), p_));
}

P1Point ManinSpace::generator(std::size_t index) const {
  if (index == p_) return {1, 0};
  return {index, 1};
}

std::pair<Cusp, Cusp> ManinSpace::generator_path(std::size_t index) const {
  // [c:1] lifts to (1 0; c 1), [1:0] to (0 -1; 1 0).
  if (index == p_) return {Cusp::infinity(), Cusp::make(0, 1)};
  return {Cusp::make(0, 1), Cusp::make(1, static_cast<std::int64_t>(index))};
}

ManinSpace build_presentation(std::uint64_t p, const Modulus& m) {
  const std::size_t n = p + 1;
  auto index_of = [&](std::int64_t c, std::int64_t d) -> std::size_t {
    std::uint64_t cc = mod_p(c, p), dd = mod_p(d, p);
    if (dd == 0) return p;
    return static_cast<std::size_t>(mulmod(cc, powmod(dd, p - 2, p), p));
  };
  auto point_of = [&](std::size_t idx) -> std::pair<std::int64_t, std::int64_t> {
    if (idx == p) return {1, 0};
    return {static_cast<std::int64_t>(idx), 1};
  };

  ZMat rel(0, n);
  ZVec row(n);
  for (std::size_t x = 0; x < n; ++x) {
    auto [c, d] = point_of(x);
    std::fill(row.begin(), row.end(), 0);
    // x + x*sigma, sigma = (0 -1; 1 0): [c:d] -> [d:-c]
    row[x] = m.add(row[x], 1);
    row[index_of(d, -c)] = m.add(row[index_of(d, -c)], 1);
    rel.append_row(row);
    // x + x*tau + x*tau^2, tau = (0 -1; 1 -1)
    std::fill(row.begin(), row.end(), 0);
    row[x] = m.add(row[x], 1);
    std::size_t xt = index_of(d, -c - d);
    std::size_t xtt = index_of(-c - d, c);
    row[xt] = m.add(row[xt], 1);
    row[xtt] = m.add(row[xtt], 1);
    rel.append_row(row);
  }
  Submodule relations = howell_form(rel, m);

  std::vector<bool> is_pivot(n, false);
  std::vector<std::size_t> pivot_row(n, 0);
  for (std::size_t i = 0; i < relations.basis.rows(); ++i) {
    auto r = relations.basis.row(i);
    std::size_t c = 0;
    while (r[c] == 0) ++c;
    if (r[c] != 1) {
      fail(ErrorCode::verification_failed,
           "Manin relations have a non-unit pivot; quotient is not free");
    }
    is_pivot[c] = true;
    pivot_row[c] = i;
  }
  std::vector<std::size_t> basis;
  std::vector<std::size_t> coord_of(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    if (!is_pivot[k]) {
      coord_of[k] = basis.size();
      basis.push_back(k);
    }
  }
  ZMat table(n, basis.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (!is_pivot[k]) {
      table(k, coord_of[k]) = 1;
      continue;
    }
    // Reduced echelon with unit pivots: e_k = -sum_{free j} R[j] e_j.
    auto r = relations.basis.row(pivot_row[k]);
    for (std::size_t j = k + 1; j < n; ++j) {
      if (r[j] != 0 && !is_pivot[j]) table(k, coord_of[j]) = m.neg(r[j]);
    }
  }
  ManinSpace space(p, m, std::move(basis), std::move(table));
  const unsigned g = genus_x0(p);
  if (space.dim() != 2 * g + 1) {
    fail(ErrorCode::verification_failed,
         "dim H = " + std::to_string(space.dim()) + " but 2g+1 = " +
             std::to_string(2 * g + 1));
  }
  return space;
}

namespace {

// {0, z} as a sum of unimodular paths along the convergents of z.
ZVec zero_to(const ManinSpace& space, const Cusp& z) {
  const Modulus& m = space.modulus();
  ZVec out(space.symbol(space.generator_index(0, 1)).begin(),
           space.symbol(space.generator_index(0, 1)).end());  // {0, oo}
  if (z.is_infinity()) return out;
  std::int64_t p_prev2 = 0, q_prev2 = 1;  // p_{k-2}/q_{k-2}
  std::int64_t p_prev = 1, q_prev = 0;    // p_{k-1}/q_{k-1}
  std::int64_t a = z.num, b = z.den;
  while (true) {
    std::int64_t quot = floor_div(a, b);
    std::int64_t rem = a - quot * b;
    std::int64_t p_k = quot * p_prev + p_prev2;
    std::int64_t q_k = quot * q_prev + q_prev2;
    // {p_{k-1}/q_{k-1}, p_k/q_k} is the symbol of (p_k p_{k-1}; q_k q_{k-1}),
    // with the first column negated when that determinant is -1.
    std::int64_t det = p_k * q_prev - p_prev * q_k;
    std::size_t idx =
        space.generator_index(det == 1 ? q_k : -q_k, q_prev);
    auto sym = space.symbol(idx);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = m.add(out[i], sym[i]);
    if (rem == 0) break;
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p_k;
    q_prev = q_k;
    a = b;
    b = rem;
  }
  return out;
}

}  // namespace

ZVec path_symbol(const ManinSpace& space, const Cusp& alpha,
                 const Cusp& beta) {
  const Modulus& m = space.modulus();
  ZVec to_beta = zero_to(space, beta);
  ZVec to_alpha = zero_to(space, alpha);
  for (std::size_t i = 0; i < to_beta.size(); ++i)
    to_beta[i] = m.sub(to_beta[i], to_alpha[i]);
  return to_beta;
}

bool is_cusp_infinity(const Cusp& z, std::uint64_t p) {
  return z.den % static_cast<std::int64_t>(p) == 0;
}

ZVec boundary_functional(const ManinSpace& space) {
  const Modulus& m = space.modulus();
  ZVec out(space.dim(), 0);
  for (std::size_t i = 0; i < space.dim(); ++i) {
    auto [from, to] = space.generator_path(space.basis_generators()[i]);
    std::int64_t coeff = (is_cusp_infinity(to, space.p()) ? 1 : 0) -
                         (is_cusp_infinity(from, space.p()) ? 1 : 0);
    out[i] = m.reduce(coeff);
  }
  return out;
}

residue boundary(const ManinSpace& space, std::span<const residue> v) {
  if (v.size() != space.dim()) {
    fail(ErrorCode::dimension_mismatch, "boundary: vector length");
  }
  const Modulus& m = space.modulus();
  ZVec f = boundary_functional(space);
  residue acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i) acc = m.add(acc, m.mul(v[i], f[i]));
  return acc;
}

ZMat path_operator(const ManinSpace& space,
                   const std::vector<IntMatrix2>& matrices) {
  const Modulus& m = space.modulus();
  ZMat out(space.dim(), space.dim());
  for (std::size_t i = 0; i < space.dim(); ++i) {
    auto [from, to] = space.generator_path(space.basis_generators()[i]);
    auto dst = out.row(i);
    for (const auto& g : matrices) {
      ZVec img = path_symbol(space, g.apply(from), g.apply(to));
      for (std::size_t j = 0; j < img.size(); ++j) dst[j] = m.add(dst[j], img[j]);
    }
  }
  return out;
}

HeckeMatrix star_involution(const ManinSpace& space) {
  return {"star", path_operator(space, {IntMatrix2{-1, 0, 0, 1}})};
}

HeckeMatrix hecke_tq(const ManinSpace& space, std::uint64_t q) {
  if (q == space.p()) fail(ErrorCode::invalid_argument, "hecke_tq: q == p");
  if (!is_prime(q)) fail(ErrorCode::invalid_argument, "hecke_tq: q not prime");
  std::vector<IntMatrix2> cosets;
  const auto qi = static_cast<std::int64_t>(q);
  for (std::int64_t r = 0; r < qi; ++r) cosets.push_back({1, r, 0, qi});
  cosets.push_back({qi, 0, 0, 1});
  return {"T" + std::to_string(q), path_operator(space, cosets)};
}

std::pair<HeckeMatrix, HeckeMatrix> atkin_lehner(const ManinSpace& space) {
  const auto pi = static_cast<std::int64_t>(space.p());
  HeckeMatrix w{"w_p", path_operator(space, {IntMatrix2{0, -1, pi, 0}})};
  HeckeMatrix u{"U_p", mat_scale(w.mat, space.modulus().value() - 1,
                                 space.modulus())};
  return {std::move(w), std::move(u)};
}

HeckeMatrix hecke_up_coset_sum(const ManinSpace& space) {
  const auto pi = static_cast<std::int64_t>(space.p());
  std::vector<IntMatrix2> cosets;
  for (std::int64_t r = 0; r < pi; ++r) cosets.push_back({1, r, 0, pi});
  return {"U_p(cosets)", path_operator(space, cosets)};
}

PlusSubspaces plus_subspaces(const ManinSpace& space, const HeckeMatrix& star) {
  const Modulus& m = space.modulus();
  const std::size_t n = space.dim();
  ZMat fix = mat_sub(star.mat, ZMat::identity(n), m);
  ZVec bnd = boundary_functional(space);
  ZMat bcol(n, 1);
  ZMat both(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    bcol(i, 0) = bnd[i];
    for (std::size_t j = 0; j < n; ++j) both(i, j) = fix(i, j);
    both(i, n) = bnd[i];
  }
  return {kernel(fix, m), kernel(bcol, m), kernel(both, m)};
}

}  // namespace mtc
