#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mtcircle/error.hpp"
#include "mtcircle/theorems.hpp"
#include "oracles.hpp"

using namespace mtc;

namespace {

ZMat random_symmetric(std::mt19937_64& rng, std::size_t n, std::uint64_t m) {
  ZMat w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) w(i, j) = w(j, i) = rng() % m;
  return w;
}

}  // namespace

TEST_CASE("spanning tree enumeration, small cases") {
  Modulus m(125);
  CHECK(spanning_tree_bruteforce(ZMat(1, 1), m) == 1);
  ZMat w2 = ZMat::from_rows({{0, 17}, {17, 0}}, m);
  CHECK(spanning_tree_bruteforce(w2, m) == 17);
  const std::int64_t a = 3, b = 7, c = 11;  // edges 01, 12, 02
  ZMat w3 = ZMat::from_rows({{0, a, c}, {a, 0, b}, {c, b, 0}}, m);
  CHECK(spanning_tree_bruteforce(w3, m) == static_cast<residue>((a * b + b * c + c * a) % 125));
  CHECK(minor_det(weighted_laplacian(w3, m), 0, 0, m) == static_cast<residue>((a * b + b * c + c * a) % 125));
  // Cayley: all-ones weights count n^{n-2} trees
  Modulus big(1000003);
  for (std::size_t n = 1; n <= 7; ++n) {
    ZMat ones(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ones(i, j) = i == j ? 0 : 1;
    std::uint64_t cayley = 1;
    for (std::size_t k = 0; k + 2 < n; ++k) cayley *= n;
    CHECK(spanning_tree_bruteforce(ones, big) == cayley);
  }
  CHECK_THROWS_AS(spanning_tree_bruteforce(ZMat(9, 9), m), Error);
}

TEST_CASE("matrix-tree theorem on random weighted graphs") {
  std::mt19937_64 rng(17);
  for (std::uint64_t mv : {5ull, 25ull, 7ull, 125ull, 121ull}) {
    Modulus m(mv);
    for (int t = 0; t < 40; ++t) {
      std::size_t n = 1 + rng() % 6;
      ZMat w = random_symmetric(rng, n, mv);
      residue brute = spanning_tree_bruteforce(w, m);
      CHECK(brute == oracle::tree_sum_by_subsets(w, m));
      ZMat lap = weighted_laplacian(w, m);
      for (std::size_t i = 0; i < n; ++i) {
        residue col = 0;
        for (std::size_t j = 0; j < n; ++j) col = m.add(col, lap(j, i));
        CHECK(col == 0);
        CHECK(minor_det(lap, i, i, m) == brute);
        for (std::size_t j = 0; j < n; ++j) {
          residue cof = minor_det(lap, i, j, m);
          CHECK(((i + j) % 2 ? m.neg(cof) : cof) == brute);
        }
      }
    }
  }
}

TEST_CASE("tree formula") {
  for (auto [p, ell] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{61, 5}, {181, 5}, {241, 5}, {337, 7}, {421, 5}}) {
    CAPTURE(p);
    PrimeContext ctx = make_context(p, ell, 1);
    VerificationReport r = verify_tree_formula(ctx);
    CHECK(r.pass);
    CHECK(r.theorem == "tree");
  }
  // Pruefer sum for p = 61 against the edge-subset oracle
  PrimeContext ctx = make_context(61, 5, 1);
  SupersingularSet S = enumerate_supersingular(ctx);
  REQUIRE(S.size() == 5);
  Modulus r = ctx.log_modulus();
  LMatrix L = build_l_matrix(ctx, S);
  ZMat w(5, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) w(i, j) = i == j ? 0 : L.mat(i, j);
  CHECK(oracle::tree_sum_by_subsets(w, r) == 0);
  CHECK(spanning_tree_bruteforce(w, r) == 0);
  CHECK(weighted_laplacian(w, r) == mat_scale(L.mat, r.value() - 1, r));

  CHECK_THROWS_AS(verify_tree_formula(make_context(31, 5, 1)), Error);
  CHECK_THROWS_AS(verify_tree_formula(make_context(11, 5, 1)), Error);
}

TEST_CASE("main identity and alpha reports on the battery") {
  for (const auto& b : standard_battery()) {
    CAPTURE(b.p);
    auto c = build_circle(make_context(b.p, b.ell, b.s));
    REQUIRE(c->poly.has_value());
    VerificationReport main = verify_main_identity(*c);
    CHECK(main.pass);
    CHECK(verify_alpha_geq2(*c).pass);
    VerificationReport a3 = verify_alpha3_equivalence(*c);
    CHECK(a3.pass);
    CHECK(a3.label == "alpha>=3 criterion (homological form)");
    AlphaReport ar = alpha_report(*c);
    CHECK(ar.alpha >= 2);
    if (b.p == 181) {
      CHECK(ar.alpha == 2);
      CHECK_FALSE(ar.stabilized);
      CHECK(a3.witnesses.at("log_sum_in_chain3") == false);
    }
    // LHS computed directly from the polynomial and T_q on H
    ZMat lh = c->poly->evaluate([&](std::uint64_t q) { return c->hecke.at(q); }, c->space.dim(), c->mod);
    CHECK(vec_mat(c->winding, lh, c->mod) == c->rhs);
  }
  CHECK(standard_battery().size() == 10);
  CHECK(tree_battery().size() == 5);
}

TEST_CASE("battery is deterministic and sorted") {
  auto r1 = run_battery();
  auto r2 = run_battery();
  REQUIRE(r1.size() == r2.size());
  REQUIRE(r1.size() == 35);
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].pass);
    CHECK(r1[i].theorem == r2[i].theorem);
    CHECK(r1[i].p == r2[i].p);
    CHECK(r1[i].witnesses == r2[i].witnesses);
    if (i > 0)
      CHECK(std::tie(r1[i - 1].theorem, r1[i - 1].p, r1[i - 1].ell, r1[i - 1].s) <
            std::tie(r1[i].theorem, r1[i].p, r1[i].ell, r1[i].s));
  }
}
