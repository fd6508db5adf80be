#include "mtcircle/ssgraph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "mtcircle/error.hpp"
#include "mtcircle/modpoly.hpp"

namespace mtc {

std::optional<std::size_t> SupersingularSet::index_of(Fp2Elt j) const {
  auto it = std::lower_bound(js.begin(), js.end(), j);
  if (it == js.end() || *it != j) return std::nullopt;
  return static_cast<std::size_t>(it - js.begin());
}

std::size_t eichler_count(std::uint64_t p) {
  std::size_t base = (p - 1) / 12;
  switch (p % 12) {
    case 1: return base;
    case 5:
    case 7: return base + 1;
    case 11: return base + 2;
    default: fail(ErrorCode::invalid_argument, "eichler_count: p must be >= 5");
  }
}

unsigned supersingular_weight(std::uint64_t p, Fp2Elt j) {
  if (j == Fp2Elt{0, 0}) return 3;
  if (j == Fp2Elt{1728 % p, 0}) return 2;
  return 1;
}

SupersingularSet enumerate_supersingular(const PrimeContext& ctx) {
  return enumerate_supersingular(ctx.p, ctx.qnr);
}

SupersingularSet enumerate_supersingular(std::uint64_t p, std::uint64_t qnr) {
  if (p < 11) fail(ErrorCode::invalid_argument, "enumerate_supersingular: p < 11");
  const Fp2Field f(p, qnr);
  const std::uint64_t m = (p - 1) / 2;

  std::vector<std::uint64_t> coeffs(m + 1);
  std::uint64_t binom = 1;
  for (std::uint64_t i = 0; i <= m; ++i) {
    coeffs[i] = binom * binom % p;
    // C(m, i+1) = C(m, i) * (m - i) / (i + 1)
    binom = binom * ((m - i) % p) % p * powmod(i + 1, p - 2, p) % p;
  }

  auto j_of_lambda = [&](Fp2Elt lam) {
    const Fp2Elt one{1, 0};
    Fp2Elt num = f.add(f.sub(f.mul(lam, lam), lam), one);
    num = f.scale(f.mul(f.mul(num, num), num), 256);
    Fp2Elt lm1 = f.sub(lam, one);
    Fp2Elt den = f.mul(f.mul(lam, lam), f.mul(lm1, lm1));
    return f.div(num, den);
  };

  // Root scan over all of F_{p^2}, split by c0 across threads; merge is a set
  // so the result does not depend on scheduling.
  const unsigned workers =
      std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::set<Fp2Elt>> found(workers);
  auto scan = [&](unsigned w) {
    for (std::uint64_t c0 = w; c0 < p; c0 += workers) {
      for (std::uint64_t c1 = 0; c1 < p; ++c1) {
        const Fp2Elt lam{c0, c1};
        Fp2Elt acc{coeffs[m], 0};
        for (std::uint64_t i = m; i-- > 0;) {
          acc = f.mul(acc, lam);
          acc.c0 += coeffs[i];
          if (acc.c0 >= p) acc.c0 -= p;
        }
        if (acc.is_zero()) found[w].insert(j_of_lambda(lam));
      }
    }
  };
  if (workers == 1 || p < 200) {
    for (unsigned w = 0; w < workers; ++w) scan(w);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    for (auto& t : pool) t.join();
  }

  std::set<Fp2Elt> all;
  for (auto& s : found) all.insert(s.begin(), s.end());

  SupersingularSet out;
  out.p = p;
  out.qnr = qnr;
  out.js.assign(all.begin(), all.end());
  for (auto j : out.js) out.weights.push_back(supersingular_weight(p, j));
  if (out.size() != eichler_count(p)) {
    fail(ErrorCode::verification_failed,
         "supersingular count " + std::to_string(out.size()) +
             " != Eichler count " + std::to_string(eichler_count(p)));
  }
  return out;
}

LMatrix build_l_matrix(const PrimeContext& ctx, const SupersingularSet& S) {
  if (S.size() == 0) fail(ErrorCode::invalid_argument, "empty supersingular set");
  const Modulus mr = ctx.log_modulus();
  const Fp2Field f(ctx.p, ctx.qnr);
  const LogTable log(ctx);
  const std::size_t n = S.size();

  LMatrix out{mr.value(), ZMat(n, n)};
  for (std::size_t e = 0; e < n; ++e) {
    residue total = 0;
    for (std::size_t e2 = 0; e2 < n; ++e2) {
      if (e2 == e) continue;
      std::uint64_t nrm = f.norm(f.sub(S.js[e2], S.js[e]));
      residue entry = mr.mul(mr.inverse(S.weights[e2]),
                             log(static_cast<std::int64_t>(nrm)));
      out.mat(e2, e) = entry;
      total = mr.add(total, entry);
    }
    out.mat(e, e) = mr.neg(total);
  }
  return out;
}

ZMat BrandtMatrix::hecke_action(const Modulus& m) const {
  ZMat out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(j, i) = m.reduce((*this)(i, j));
  return out;
}

BrandtMatrix brandt_matrix(const PrimeContext& ctx, const SupersingularSet& S,
                           unsigned q) {
  if (q == ctx.p) fail(ErrorCode::invalid_argument, "brandt_matrix: q == p");
  const Fp2Field f(ctx.p, ctx.qnr);
  const ReducedModPoly phi(q, ctx.p);
  const std::size_t n = S.size();

  BrandtMatrix out{q, n, std::vector<std::int64_t>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Fp2Elt> poly = phi.specialize_x(f, S.js[i]);
    std::int64_t row_total = 0;
    for (std::size_t k = 0; k < n; ++k) {
      // Strip (Y - js[k]) factors by synthetic division.
      std::vector<Fp2Elt> cur = poly;
      std::int64_t mult = 0;
      while (cur.size() > 1) {
        std::vector<Fp2Elt> quot(cur.size() - 1);
        Fp2Elt carry{0, 0};
        for (std::size_t d = cur.size(); d-- > 1;) {
          carry = f.add(cur[d], f.mul(carry, S.js[k]));
          quot[d - 1] = carry;
        }
        Fp2Elt rem = f.add(cur[0], f.mul(carry, S.js[k]));
        if (!rem.is_zero()) break;
        cur = std::move(quot);
        ++mult;
      }
      out.entries[i * n + k] = mult;
      row_total += mult;
    }
    if (row_total != static_cast<std::int64_t>(q) + 1) {
      fail(ErrorCode::verification_failed,
           "Phi_" + std::to_string(q) + "(j, Y) does not split over S at row " +
               std::to_string(i));
    }
  }
  return out;
}

namespace {

// Column-convention product M * v.
ZVec mat_vec(const ZMat& a, const ZVec& v, const Modulus& m) {
  ZVec out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    residue acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j)
      acc = (acc + a(i, j) * v[j]) % m.value();
    out[i] = acc;
  }
  return out;
}

struct Monomial {
  std::vector<std::uint64_t> primes;
  ZMat mat;
};

// All monomials in the given operators of total degree <= degree, in graded
// order (degree first, then lexicographic by prime multiset).
std::vector<Monomial> build_monomials(
    const std::vector<std::uint64_t>& primes,
    const std::map<std::uint64_t, ZMat>& ops, unsigned degree, std::size_t n,
    const Modulus& m) {
  std::vector<Monomial> out;
  out.push_back({{}, ZMat::identity(n)});
  std::size_t level_begin = 0;
  for (unsigned d = 1; d <= degree; ++d) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (auto q : primes) {
        const std::vector<std::uint64_t> prev = out[i].primes;
        if (!prev.empty() && q < prev.back()) continue;
        Monomial next;
        next.primes = prev;
        next.primes.push_back(q);
        next.mat = mat_mul(out[i].mat, ops.at(q), m);
        out.push_back(std::move(next));
      }
    }
    level_begin = level_end;
  }
  return out;
}

std::optional<HeckePolynomial> assemble_and_check(
    const std::vector<const Monomial*>& chosen, const ZVec& coeffs,
    const ZMat& target, std::size_t n, const Modulus& m) {
  ZMat acc(n, n);
  HeckePolynomial poly{m.value(), n, {}};
  for (std::size_t k = 0; k < chosen.size(); ++k) {
    if (coeffs[k] == 0) continue;
    acc = mat_add(acc, mat_scale(chosen[k]->mat, coeffs[k], m), m);
    poly.terms.push_back({coeffs[k], chosen[k]->primes});
  }
  if (!(acc == target)) return std::nullopt;
  return poly;
}

// Solve sum c_k * (M_k v) = L v over a greedily chosen independent set of
// monomials, provided v generates N under them.
std::optional<HeckePolynomial> solve_with_generator(
    const std::vector<Monomial>& monos, const ZVec& v, const ZMat& target,
    std::size_t n, const Modulus& m) {
  std::vector<const Monomial*> kept;
  ZMat images(0, n);
  Submodule span = zero_module(n);
  for (const auto& mono : monos) {
    ZVec w = mat_vec(mono.mat, v, m);
    if (membership(w, span, m)) continue;
    kept.push_back(&mono);
    images.append_row(w);
    span = howell_form(images, m);
    if (span == full_module(n)) break;
  }
  if (!(span == full_module(n))) return std::nullopt;
  auto hw = howell_form_with_transform(images, m);
  auto c = membership(mat_vec(target, v, m), hw.module, m);
  if (!c) return std::nullopt;
  ZVec coeffs = vec_mat(*c, hw.transform, m);
  return assemble_and_check(kept, coeffs, target, n, m);
}

// Direct solve of sum c_k M_k = L on flattened matrices, over a greedily
// chosen independent subset of the monomials.
std::optional<HeckePolynomial> solve_flattened(
    const std::vector<Monomial>& monos, const ZMat& target, std::size_t n,
    const Modulus& m) {
  std::vector<const Monomial*> kept;
  ZMat flat(0, n * n);
  Submodule span = zero_module(n * n);
  for (const auto& mono : monos) {
    if (membership(mono.mat.data(), span, m)) continue;
    kept.push_back(&mono);
    flat.append_row(mono.mat.data());
    span = howell_form(flat, m);
  }
  auto hw = howell_form_with_transform(flat, m);
  auto c = membership(target.data(), hw.module, m);
  if (!c) return std::nullopt;
  ZVec coeffs = vec_mat(*c, hw.transform, m);
  return assemble_and_check(kept, coeffs, target, n, m);
}

}  // namespace

HeckePolynomial hecke_polynomial_for_l(const PrimeContext& ctx,
                                       const SupersingularSet& S,
                                       const LMatrix& L,
                                       const std::vector<BrandtMatrix>& brandts,
                                       const HeckeSearchOptions& opts) {
  const Modulus ms = ctx.coeff_modulus();
  const std::size_t n = S.size();
  const ZMat target = mat_reduce(L.mat, ms);
  if (is_zero(target.data())) return HeckePolynomial{ms.value(), n, {}};

  std::map<std::uint64_t, ZMat> ops;
  for (const auto& b : brandts) ops[b.q] = b.hecke_action(ms);
  if (!ops.count(2) || !ops.count(3)) {
    fail(ErrorCode::invalid_argument,
         "hecke_polynomial_for_l needs Brandt matrices for q = 2 and 3");
  }

  std::vector<std::vector<std::uint64_t>> prime_sets{{2, 3}};
  std::vector<std::uint64_t> all_primes;
  for (const auto& [q, _] : ops) all_primes.push_back(q);
  if (all_primes.size() > 2) prime_sets.push_back(all_primes);

  std::vector<ZVec> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    ZVec e(n, 0);
    e[i] = 1;
    candidates.push_back(std::move(e));
  }
  std::mt19937_64 rng(0x5eedULL);
  for (int k = 0; k < 4; ++k) {
    ZVec v(n);
    for (auto& x : v) x = rng() % ms.value();
    candidates.push_back(std::move(v));
  }

  std::vector<Monomial> last;
  for (const auto& primes : prime_sets) {
    for (unsigned d = opts.degree; d <= opts.max_degree; d += 2) {
      auto monos = build_monomials(primes, ops, d, n, ms);
      for (const auto& v : candidates) {
        if (auto poly = solve_with_generator(monos, v, target, n, ms)) {
          return *poly;
        }
      }
      last = std::move(monos);
    }
  }
  if (auto poly = solve_flattened(last, target, n, ms)) return *poly;

  std::ostringstream msg;
  msg << "no Hecke polynomial for L found (p=" << ctx.p << ", ell=" << ctx.ell
      << ", s=" << ctx.s << ", |S|=" << n << ", primes=";
  for (auto q : all_primes) msg << q << ' ';
  msg << "max_degree=" << opts.max_degree << ")";
  fail(ErrorCode::search_exhausted, msg.str());
}

}  // namespace mtc
