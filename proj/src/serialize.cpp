#include "mtcircle/serialize.hpp"

#include "mtcircle/error.hpp"

namespace mtc {

json to_json(const ZMat& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row_vec(i));
  return rows;
}

ZMat zmat_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorCode::invalid_argument, "matrix: expected array");
  std::vector<ZVec> rows;
  std::size_t cols = 0;
  for (const auto& r : j) {
    rows.push_back(r.get<ZVec>());
    if (rows.size() == 1) cols = rows[0].size();
    if (rows.back().size() != cols) {
      fail(ErrorCode::dimension_mismatch, "matrix: ragged rows");
    }
  }
  return ZMat::from_rows(rows, cols);
}

json to_json(const SupersingularSet& S) {
  json pts = json::array();
  for (const auto& j : S.js) pts.push_back({j.c0, j.c1});
  return {{"p", S.p}, {"qnr", S.qnr}, {"S", pts}, {"weights", S.weights}};
}

SupersingularSet supersingular_from_json(const json& j) {
  SupersingularSet S;
  S.p = j.at("p").get<std::uint64_t>();
  S.qnr = j.at("qnr").get<std::uint64_t>();
  for (const auto& pt : j.at("S")) {
    if (!pt.is_array() || pt.size() != 2) {
      fail(ErrorCode::invalid_argument, "supersingular point: expected [c0, c1]");
    }
    S.js.push_back({pt[0].get<std::uint64_t>(), pt[1].get<std::uint64_t>()});
  }
  S.weights = j.at("weights").get<std::vector<unsigned>>();
  if (S.weights.size() != S.js.size()) {
    fail(ErrorCode::dimension_mismatch, "weights and points differ in length");
  }
  return S;
}

json to_json(const LMatrix& L) {
  return {{"modulus", L.modulus}, {"mat", to_json(L.mat)}};
}

json to_json(const BrandtMatrix& B) {
  json rows = json::array();
  for (std::size_t i = 0; i < B.n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < B.n; ++j) row.push_back(B(i, j));
    rows.push_back(std::move(row));
  }
  return {{"q", B.q}, {"mat", rows}};
}

json to_json(const HeckePolynomial& P) {
  json terms = json::array();
  for (const auto& t : P.terms)
    terms.push_back({{"coeff", t.coeff}, {"primes", t.primes}});
  return {{"modulus", P.modulus}, {"terms", terms}};
}

json to_json(const ManinSpace& space) {
  return {{"p", space.p()},
          {"modulus", space.modulus().value()},
          {"basis", space.basis_generators()},
          {"table", to_json(space.generator_coordinates())}};
}

ManinSpace presentation_from_json(const json& j) {
  auto p = j.at("p").get<std::uint64_t>();
  Modulus m(j.at("modulus").get<std::uint64_t>());
  auto basis = j.at("basis").get<std::vector<std::size_t>>();
  ZMat table = zmat_from_json(j.at("table"));
  return ManinSpace(p, m, std::move(basis), std::move(table));
}

json homology_json(const Circle& c) {
  const Modulus& m = c.mod;
  std::vector<const ZMat*> ops{&c.star.mat, &c.u_p.mat, &c.w_p.mat};
  for (const auto& [q, mat] : c.hecke) ops.push_back(&mat);
  bool commute = true;
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t k = i + 1; k < ops.size(); ++k)
      commute = commute && mat_mul(*ops[i], *ops[k], m) == mat_mul(*ops[k], *ops[i], m);

  json orders = json::array();
  for (const auto& sub : c.filtration.chain) orders.push_back(sub.order_exponent(m));
  return {{"p", c.ctx.p},
          {"ell", c.ctx.ell},
          {"s", c.ctx.s},
          {"genus", genus_x0(c.ctx.p)},
          {"dim_H", c.space.dim()},
          {"rank_H_plus", c.sub.h_plus.free_rank(m)},
          {"rank_H0", c.sub.h0.free_rank(m)},
          {"rank_H0_plus", c.sub.h0_plus.free_rank(m)},
          {"hecke_commute", commute},
          {"chain_order_exponents", orders},
          {"stabilization_index", c.filtration.stabilization_index}};
}

json to_json(const AlphaReport& a) {
  json j{{"p", a.p},
         {"ell", a.ell},
         {"s", a.s},
         {"alpha", a.alpha},
         {"stabilized", a.stabilized},
         {"merel_sum", a.merel_sum},
         {"i2_eq_i3", a.i2_eq_i3},
         {"method_cross_check", a.method_cross_check}};
  j["cross_alpha"] = a.cross_alpha ? json(*a.cross_alpha) : json(nullptr);
  return j;
}

json to_json(const VerificationReport& r, bool with_timing) {
  json j{{"theorem", r.theorem},
         {"label", r.label},
         {"p", r.p},
         {"ell", r.ell},
         {"s", r.s},
         {"verdict", r.pass ? "pass" : "fail"},
         {"witnesses", r.witnesses}};
  if (with_timing) j["seconds"] = r.seconds;
  return j;
}

}  // namespace mtc
