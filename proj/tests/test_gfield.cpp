#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mtcircle/error.hpp"
#include "mtcircle/gfield.hpp"
#include "oracles.hpp"

using namespace mtc;

namespace {

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 2; k <= n; ++k) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= k; ++d) prime = prime && k % d != 0;
    if (prime) out.push_back(k);
  }
  return out;
}

}  // namespace

TEST_CASE("primality and residues agree with trial division") {
  auto ps = primes_up_to(2000);
  std::size_t idx = 0;
  for (std::uint64_t n = 0; n <= 2000; ++n) {
    bool want = idx < ps.size() && ps[idx] == n;
    if (want) ++idx;
    CHECK(is_prime(n) == want);
  }
  CHECK(is_prime(2147483647));
  CHECK_FALSE(is_prime(2147483649ull));

  for (std::uint64_t p : primes_up_to(200)) {
    if (p == 2) continue;
    std::vector<char> square(p, 0);
    for (std::uint64_t x = 1; x < p; ++x) square[x * x % p] = 1;
    for (std::uint64_t a = 0; a < p; ++a) {
      int want = a == 0 ? 0 : (square[a] ? 1 : -1);
      CHECK(legendre(static_cast<std::int64_t>(a), p) == want);
    }
    std::uint64_t qnr = smallest_nonresidue(p);
    CHECK_FALSE(square[qnr]);
    for (std::uint64_t a = 2; a < qnr; ++a) CHECK(square[a]);

    std::uint64_t g = smallest_primitive_root(p);
    auto ind = oracle::index_table(p, g);
    std::vector<char> hit(p, 0);
    std::uint64_t x = 1;
    for (std::uint64_t k = 0; k + 1 < p; ++k, x = x * g % p) hit[x] = 1;
    CHECK(std::count(hit.begin() + 1, hit.end(), 1) == static_cast<long>(p - 1));
    for (std::uint64_t h = 2; h < g; ++h) CHECK(std::gcd(ind[h], p - 1) != 1);
  }
}

TEST_CASE("context validation") {
  CHECK_THROWS_AS(make_context(13, 5, 1), Error);  // 5 does not divide 12
  CHECK_THROWS_AS(make_context(12, 5, 1), Error);
  CHECK_THROWS_AS(make_context(11, 3, 1), Error);
  CHECK_THROWS_AS(make_context(11, 5, 2), Error);
  CHECK_THROWS_AS(make_context(11, 5, 0), Error);
  CHECK_THROWS_AS(make_context(7, 3, 1), Error);

  PrimeContext c = make_context(251, 5, 3);
  CHECK(c.t == 3);
  CHECK(c.r == 125);
  CHECK(c.g == 6);
  CHECK(legendre(static_cast<std::int64_t>(c.qnr), 251) == -1);

  CHECK(default_ell(11) == 5);
  CHECK(default_ell(13) == 0);
  CHECK(default_ell(43) == 7);
  CHECK(default_ell(181) == 5);
}

TEST_CASE("discrete logs match index tables") {
  for (std::uint64_t p : primes_up_to(200)) {
    if (p < 11) continue;
    for (std::uint64_t ell : primes_up_to(p)) {
      if (ell < 5 || (p - 1) % ell != 0) continue;
      PrimeContext ctx = make_context(p, ell, 1);
      auto ind = oracle::index_table(p, ctx.g);
      LogTable logs(ctx);
      for (std::uint64_t x = 1; x < p; ++x) {
        CAPTURE(p);
        CAPTURE(ell);
        CAPTURE(x);
        REQUIRE(dlog_ell(x, ctx) == ind[x] % ctx.r);
        CHECK(logs(static_cast<std::int64_t>(x)) == ind[x] % ctx.r);
      }
      CHECK(logs(-1) == ind[p - 1] % ctx.r);
      CHECK(logs.at_level(2, Modulus(ell)) == ind[2] % ell);
    }
  }
}

TEST_CASE("logs are homomorphisms on a deeper l-part") {
  PrimeContext ctx = make_context(251, 5, 3);
  LogTable logs(ctx);
  Modulus r = ctx.log_modulus();
  std::mt19937_64 rng(1);
  for (int i = 0; i < 500; ++i) {
    std::int64_t a = 1 + static_cast<std::int64_t>(rng() % 250);
    std::int64_t b = 1 + static_cast<std::int64_t>(rng() % 250);
    CHECK(logs(a * b % 251) == r.add(logs(a), logs(b)));
  }
  CHECK(logs(1) == 0);
  CHECK(logs(static_cast<std::int64_t>(ctx.g)) == 1);
}

TEST_CASE("F_p^2 field axioms") {
  for (std::uint64_t p : {11ull, 31ull, 61ull, 181ull}) {
    Fp2Field f(p, smallest_nonresidue(p));
    std::mt19937_64 rng(p);
    auto rnd = [&] { return f.from_index(rng() % (p * p)); };
    const Fp2Elt one{1, 0}, zero{0, 0};
    for (int i = 0; i < 300; ++i) {
      Fp2Elt a = rnd(), b = rnd(), c = rnd();
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.add(a, f.neg(a)) == zero);
      CHECK(f.sub(f.add(a, b), b) == a);
      CHECK(f.mul(a, one) == a);
      if (!a.is_zero()) {
        CHECK(f.mul(a, f.inv(a)) == one);
        CHECK(f.pow(a, p * p - 1) == one);
        CHECK(f.norm(a) == f.pow(a, p + 1).c0);
        CHECK(f.pow(a, p + 1).c1 == 0);
      }
      CHECK(f.frobenius(a) == f.pow(a, p));
      CHECK(f.frobenius(f.mul(a, b)) == f.mul(f.frobenius(a), f.frobenius(b)));
      CHECK(f.from_index(f.index(a)) == a);
      CHECK(fp2_arith(f, a, b, Fp2Op::sub) == f.sub(a, b));
      if (!b.is_zero()) CHECK(f.mul(fp2_arith(f, a, b, Fp2Op::div), b) == a);
    }
    CHECK(f.from_int(-1) == f.neg(one));
    CHECK_THROWS_AS(f.inv(zero), Error);
  }
  CHECK_THROWS_AS(Fp2Field(11, 3), Error);  // 3 is a square mod 11
}
