#include "mtcircle/gfield.hpp"

#include <string>

#include "mtcircle/error.hpp"

namespace mtc {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  std::uint64_t result = 1 % n;
  a %= n;
  while (e > 0) {
    if (e & 1) result = mulmod(result, a, n);
    a = mulmod(a, a, n);
    e >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

std::uint64_t smallest_primitive_root(std::uint64_t p) {
  if (p == 2) return 1;
  const auto factors = prime_factors(p - 1);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : factors) {
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  fail(ErrorCode::invalid_argument, "no primitive root");
}

std::uint64_t smallest_nonresidue(std::uint64_t p) {
  for (std::uint64_t a = 2; a < p; ++a)
    if (powmod(a, (p - 1) / 2, p) == p - 1) return a;
  fail(ErrorCode::invalid_argument, "no quadratic non-residue");
}

int legendre(std::int64_t a, std::uint64_t p) {
  auto pi = static_cast<std::int64_t>(p);
  auto x = static_cast<std::uint64_t>(((a % pi) + pi) % pi);
  if (x == 0) return 0;
  return powmod(x, (p - 1) / 2, p) == 1 ? 1 : -1;
}

PrimeContext make_context(std::uint64_t p, std::uint64_t ell, unsigned s) {
  auto bad = [&](const std::string& why) {
    fail(ErrorCode::invalid_argument,
         "invalid context (p=" + std::to_string(p) +
             ", ell=" + std::to_string(ell) + ", s=" + std::to_string(s) +
             "): " + why);
  };
  if (p < 11) bad("p must be >= 11");
  if (p >= (1ULL << 31)) bad("p too large");
  if (!is_prime(p)) bad("p is not prime");
  if (!is_prime(ell)) bad("ell is not prime");
  if (ell < 5) bad("ell must be >= 5");
  if ((p - 1) % ell != 0) bad("ell does not divide p-1");

  PrimeContext ctx;
  ctx.p = p;
  ctx.ell = ell;
  ctx.r = 1;
  std::uint64_t rest = p - 1;
  while (rest % ell == 0) {
    rest /= ell;
    ctx.r *= ell;
    ++ctx.t;
  }
  if (s < 1 || s > ctx.t) bad("s must satisfy 1 <= s <= t=" + std::to_string(ctx.t));
  ctx.s = s;
  ctx.g = smallest_primitive_root(p);
  ctx.qnr = smallest_nonresidue(p);
  return ctx;
}

std::uint64_t default_ell(std::uint64_t p) {
  if (p < 2) return 0;
  for (auto q : prime_factors(p - 1))
    if (q >= 5) return q;
  return 0;
}

Fp2Field::Fp2Field(std::uint64_t p, std::uint64_t qnr) : p_(p), qnr_(qnr) {
  if (p < 3 || p >= (1ULL << 31)) {
    fail(ErrorCode::invalid_argument, "Fp2Field: bad characteristic");
  }
  if (legendre(static_cast<std::int64_t>(qnr), p) != -1) {
    fail(ErrorCode::invalid_argument, "Fp2Field: qnr is a square");
  }
}

Fp2Elt Fp2Field::from_int(std::int64_t x) const {
  auto pi = static_cast<std::int64_t>(p_);
  return {static_cast<std::uint64_t>(((x % pi) + pi) % pi), 0};
}

Fp2Elt Fp2Field::inv(Fp2Elt a) const {
  std::uint64_t n = norm(a);
  if (n == 0) fail(ErrorCode::invalid_argument, "division by zero in F_p^2");
  std::uint64_t ninv = powmod(n, p_ - 2, p_);
  Fp2Elt conj = frobenius(a);
  return {conj.c0 * ninv % p_, conj.c1 * ninv % p_};
}

Fp2Elt Fp2Field::pow(Fp2Elt a, std::uint64_t e) const noexcept {
  Fp2Elt result{1, 0};
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::uint64_t Fp2Field::norm(Fp2Elt a) const noexcept {
  std::uint64_t x = a.c0 * a.c0 % p_;
  std::uint64_t y = (a.c1 * a.c1 % p_) * qnr_ % p_;
  return subp(x, y);
}

Fp2Elt fp2_arith(const Fp2Field& f, Fp2Elt a, Fp2Elt b, Fp2Op op) {
  switch (op) {
    case Fp2Op::add: return f.add(a, b);
    case Fp2Op::sub: return f.sub(a, b);
    case Fp2Op::mul: return f.mul(a, b);
    case Fp2Op::div: return f.div(a, b);
  }
  fail(ErrorCode::invalid_argument, "unknown Fp2Op");
}

Fp2Elt frobenius(const Fp2Field& f, Fp2Elt a) { return f.frobenius(a); }

std::uint64_t norm_to_fp(const Fp2Field& f, Fp2Elt a) { return f.norm(a); }

residue dlog_ell(std::uint64_t x, const PrimeContext& ctx) {
  const std::uint64_t p = ctx.p;
  x %= p;
  if (x == 0) fail(ErrorCode::invalid_argument, "dlog of zero");
  const std::uint64_t cofactor = (p - 1) / ctx.r;
  const std::uint64_t h = powmod(ctx.g, cofactor, p);  // order l^t
  const std::uint64_t y = powmod(x, cofactor, p);      // = h^{ind(x)}
  const std::uint64_t h_inv = powmod(h, p - 2, p);
  const std::uint64_t gamma = powmod(h, ctx.r / ctx.ell, p);  // order l

  residue k = 0;
  std::uint64_t ell_i = 1;
  for (unsigned i = 0; i < ctx.t; ++i) {
    std::uint64_t z = mulmod(y, powmod(h_inv, k, p), p);
    z = powmod(z, ctx.r / ell_i / ctx.ell, p);
    std::uint64_t d = 0, acc = 1;
    while (acc != z) {
      acc = mulmod(acc, gamma, p);
      if (++d == ctx.ell) fail(ErrorCode::verification_failed, "dlog digit");
    }
    k += d * ell_i;
    ell_i *= ctx.ell;
  }
  return k % ctx.r;
}

LogTable::LogTable(const PrimeContext& ctx) : p_(ctx.p), table_(ctx.p, 0) {
  for (std::uint64_t x = 1; x < ctx.p; ++x) table_[x] = dlog_ell(x, ctx);
}

residue LogTable::operator()(std::int64_t x) const {
  auto pi = static_cast<std::int64_t>(p_);
  auto v = static_cast<std::uint64_t>(((x % pi) + pi) % pi);
  if (v == 0) fail(ErrorCode::invalid_argument, "log of zero");
  return table_[v];
}

}  // namespace mtc
