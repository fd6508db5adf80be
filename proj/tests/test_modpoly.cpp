#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mtcircle/error.hpp"
#include "mtcircle/modpoly.hpp"

using namespace mtc;

TEST_CASE("tables are available and self-consistent") {
  CHECK(available_modular_polynomials() == std::vector<unsigned>{2, 3, 5, 7});
  for (unsigned q : available_modular_polynomials()) CHECK_NOTHROW(validate_modular_polynomial(q));
  CHECK_THROWS_AS(validate_modular_polynomial(11), Error);
}

TEST_CASE("decimal reduction") {
  CHECK(decimal_mod("0", 7) == 0);
  CHECK(decimal_mod("157464000000000", 1000003) == 157464000000000ull % 1000003);
  CHECK(decimal_mod("-1", 11) == 10);
  CHECK(decimal_mod("-157464000000000", 181) == (181 - 157464000000000ull % 181) % 181);
  CHECK(decimal_mod("123456789012345678901234567890", 1000000007) == 197434842);
}

TEST_CASE("Phi_2 coefficients") {
  const std::uint64_t p = 1000003;
  ReducedModPoly phi(2, p);
  auto r = [&](std::int64_t c) { return static_cast<std::uint64_t>(((c % (std::int64_t)p) + (std::int64_t)p) % (std::int64_t)p); };
  CHECK(phi.coeff(3, 0) == 1);
  CHECK(phi.coeff(0, 3) == 1);
  CHECK(phi.coeff(2, 2) == r(-1));
  CHECK(phi.coeff(2, 1) == 1488);
  CHECK(phi.coeff(1, 2) == 1488);
  CHECK(phi.coeff(2, 0) == r(-162000));
  CHECK(phi.coeff(1, 1) == r(40773375));
  CHECK(phi.coeff(1, 0) == r(8748000000));
  CHECK(phi.coeff(0, 0) == r(-157464000000000));
}

TEST_CASE("specialization is symmetric in the two variables") {
  const std::uint64_t p = 61;
  Fp2Field f(p, 2);
  for (unsigned q : available_modular_polynomials()) {
    ReducedModPoly phi(q, p);
    for (std::uint64_t i = 0; i < 40; ++i) {
      Fp2Elt x = f.from_index(i * 37 % (p * p));
      Fp2Elt y = f.from_index((i * 53 + 11) % (p * p));
      auto eval = [&](Fp2Elt a, Fp2Elt b) {
        auto c = phi.specialize_x(f, a);
        Fp2Elt acc{0, 0};
        for (std::size_t k = c.size(); k-- > 0;) acc = f.add(f.mul(acc, b), c[k]);
        return acc;
      };
      CHECK(eval(x, y) == eval(y, x));
    }
  }
}
