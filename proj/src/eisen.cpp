#include "mtcircle/eisen.hpp"

#include <string>

#include "mtcircle/error.hpp"

namespace mtc {

std::uint64_t default_prime_bound(std::uint64_t p) {
  std::uint64_t sturm = (p + 1 + 5) / 6;
  return sturm > 20 ? sturm : 20;
}

std::vector<HeckeMatrix> ideal_generators(const ManinSpace& space,
                                          const ZMat& u_p,
                                          std::uint64_t prime_bound) {
  const Modulus& m = space.modulus();
  if (prime_bound == 0) prime_bound = default_prime_bound(space.p());
  const std::size_t n = space.dim();
  std::vector<HeckeMatrix> out;
  for (std::uint64_t q = 2; q <= prime_bound; ++q) {
    if (q == space.p() || !is_prime(q)) continue;
    HeckeMatrix t = hecke_tq(space, q);
    ZMat shift = mat_scale(ZMat::identity(n), m.reduce(static_cast<std::int64_t>(q + 1)), m);
    out.push_back({t.label + "-" + std::to_string(q + 1), mat_sub(t.mat, shift, m)});
  }
  out.push_back({"U_p-1", mat_sub(u_p, ZMat::identity(n), m)});
  return out;
}

IdealFiltration ideal_filtration(const Submodule& h_plus,
                                 const std::vector<HeckeMatrix>& gens,
                                 const Modulus& m, std::size_t n_max) {
  if (n_max < 2) fail(ErrorCode::invalid_argument, "ideal_filtration: n_max < 2");
  IdealFiltration f;
  f.chain.push_back(h_plus);
  for (std::size_t n = 0; n < n_max; ++n) {
    std::vector<Submodule> parts;
    parts.reserve(gens.size());
    for (const auto& g : gens) parts.push_back(image(f.chain[n], g.mat, m));
    Submodule next = module_sum(parts, m);
    if (!contains(f.chain[n], next, m)) {
      fail(ErrorCode::verification_failed,
           "ideal filtration is not descending at step " + std::to_string(n));
    }
    bool same = next == f.chain[n];
    f.chain.push_back(std::move(next));
    if (same) {
      f.stabilization_index = n;
      return f;
    }
  }
  fail(ErrorCode::search_exhausted, "ideal filtration did not stabilize");
}

MazurLog::MazurLog(const ManinSpace& space, const LogTable& logs)
    : mod_(space.modulus()), rows_(0, space.dim()) {
  const auto p = static_cast<std::int64_t>(space.p());
  for (std::int64_t a = 1; a < p; ++a) {
    logs_.push_back(logs.at_level(a, mod_));
    rows_.append_row(path_symbol(space, Cusp::infinity(), Cusp::make(a, p)));
  }
  span_ = howell_form_with_transform(rows_, mod_);
  // Relations among the symbols must have zero log.
  Submodule rel = kernel(rows_, mod_);
  for (std::size_t i = 0; i < rel.size(); ++i) {
    if (of_coefficients(rel.basis.row(i)) != 0) {
      fail(ErrorCode::verification_failed,
           "Mazur logarithm is not well defined on (H^0)_+");
    }
  }
}

residue MazurLog::of_coefficients(std::span<const residue> lambda) const {
  if (lambda.size() != logs_.size()) {
    fail(ErrorCode::dimension_mismatch, "MazurLog: expected p-1 coefficients");
  }
  residue acc = 0;
  for (std::size_t i = 0; i < lambda.size(); ++i)
    acc = mod_.add(acc, mod_.mul(lambda[i] % mod_.value(), logs_[i]));
  return acc;
}

std::optional<residue> MazurLog::operator()(std::span<const residue> v) const {
  auto c = membership(v, span_.module, mod_);
  if (!c) return std::nullopt;
  ZVec lambda = vec_mat(*c, span_.transform, mod_);
  return of_coefficients(lambda);
}

ZVec log_symbol_sum(const ManinSpace& space, const LogTable& logs) {
  const Modulus& m = space.modulus();
  const auto p = static_cast<std::int64_t>(space.p());
  ZVec acc(space.dim(), 0);
  for (std::int64_t a = 1; a < p; ++a) {
    residue la = logs.at_level(a, m);
    if (la == 0) continue;
    ZVec sym = path_symbol(space, Cusp::make(a, p), Cusp::infinity());
    acc = vec_add(acc, vec_scale(sym, la, m), m);
  }
  return acc;
}

ZVec winding_rhs(const ManinSpace& space, const LogTable& logs,
                 const ZMat& u_p) {
  const Modulus& m = space.modulus();
  ZVec sum = log_symbol_sum(space, logs);
  ZVec both = vec_add(sum, vec_mat(sum, u_p, m), m);
  return vec_scale(both, m.inverse(2), m);
}

AlphaLevel alpha_of_vector(const IdealFiltration& f,
                           std::span<const residue> v, const Modulus& m) {
  const std::size_t stable = f.stabilization_index;
  for (std::size_t n = 0; n <= stable; ++n) {
    if (!membership(v, f.chain[n], m)) {
      if (n == 0) {
        fail(ErrorCode::verification_failed, "vector is not in H_+");
      }
      return {n - 1, false};
    }
  }
  return {stable, true};
}

AlphaLevel alpha_of_operator(const IdealFiltration& f, const Submodule& h_plus,
                             const ZMat& l_on_h, const Modulus& m) {
  Submodule img = image(h_plus, l_on_h, m);
  const std::size_t stable = f.stabilization_index;
  for (std::size_t n = 0; n <= stable; ++n) {
    if (!contains(f.chain[n], img, m)) {
      if (n == 0) {
        fail(ErrorCode::verification_failed, "L does not preserve H_+");
      }
      return {n - 1, false};
    }
  }
  return {stable, true};
}

residue merel_sum(const PrimeContext& ctx, const LogTable& logs) {
  const std::uint64_t ell = ctx.ell;
  std::uint64_t acc = 0;
  for (std::uint64_t k = 1; k <= (ctx.p - 1) / 2; ++k)
    acc = (acc + (k % ell) * (logs(static_cast<std::int64_t>(k)) % ell)) % ell;
  return acc;
}

MerelCheck i2_equals_i3_check(const IdealFiltration& f, residue merel) {
  MerelCheck out;
  out.chains_equal = f.at(2) == f.at(3);
  out.merel_nonzero = merel != 0;
  return out;
}

AlphaReport alpha_compute(const PrimeContext& ctx, const IdealFiltration& f,
                          const Submodule& h_plus, std::span<const residue> rhs,
                          const ZMat* l_on_h) {
  const Modulus m = Modulus::prime_power(ctx.ell, ctx.s);
  LogTable logs(ctx);
  AlphaReport r;
  r.p = ctx.p;
  r.ell = ctx.ell;
  r.s = ctx.s;
  AlphaLevel fast = alpha_of_vector(f, rhs, m);
  r.alpha = fast.alpha;
  r.stabilized = fast.stabilized;
  if (l_on_h) {
    AlphaLevel cross = alpha_of_operator(f, h_plus, *l_on_h, m);
    r.cross_alpha = cross.alpha;
    r.cross_stabilized = cross.stabilized;
    r.method_cross_check =
        cross.alpha == fast.alpha && cross.stabilized == fast.stabilized;
    if (!r.method_cross_check) {
      fail(ErrorCode::verification_failed,
           "alpha methods disagree: winding vector gives " +
               std::to_string(fast.alpha) + (fast.stabilized ? "+" : "") +
               ", operator image gives " + std::to_string(cross.alpha) +
               (cross.stabilized ? "+" : ""));
    }
  }
  r.merel_sum = merel_sum(ctx, logs);
  r.i2_eq_i3 = f.at(2) == f.at(3);
  return r;
}

}  // namespace mtc
