#!/usr/bin/env python3
"""Generate classical modular polynomial tables Phi_q(X, Y) over Z.

Solves Phi_q(j(q^q), j(q)) = 0 for the unknown coefficients using exact
rational Gaussian elimination on q-expansions of j. Emits a C++ header with
the coefficients as decimal strings (they exceed 64 bits for q >= 3).

usage: gen_modpoly.py 2 3 5 7 > src/modpoly_tables.inc
"""
import sys
from fractions import Fraction


def sigma3(n):
    return sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


def mul(a, b, prec):
    out = [0] * prec
    for i, x in enumerate(a[:prec]):
        if x == 0:
            continue
        for k, y in enumerate(b[: prec - i]):
            out[i + k] += x * y
    return out


def j_coefficients(prec):
    """Coefficients c[n] of q*j(q) = sum c[n] q^n, n < prec."""
    e4 = [1] + [240 * sigma3(n) for n in range(1, prec)]
    e4_3 = mul(mul(e4, e4, prec), e4, prec)
    # prod (1 - q^n)^24
    eta24 = [1] + [0] * (prec - 1)
    for n in range(1, prec):
        for _ in range(24):
            nxt = eta24[:]
            for i in range(n, prec):
                nxt[i] -= eta24[i - n]
            eta24 = nxt
    # invert eta24
    inv = [0] * prec
    inv[0] = 1
    for n in range(1, prec):
        inv[n] = -sum(eta24[k] * inv[n - k] for k in range(1, n + 1))
    return mul(e4_3, inv, prec)


def modular_polynomial(ell):
    top = ell + 1
    extra = 12
    span = ell * top + extra + 1  # number of q-powers tracked, from q^{-ell*top}
    jc = j_coefficients(span + 2)

    def series_power(base_val, base, power, prec):
        # (q^base_val * base)^power truncated to prec normalized terms
        s = [1] + [0] * (prec - 1)
        for _ in range(power):
            s = mul(s, base, prec)
        return base_val * power, s

    # X = j(q^ell) = q^{-ell} * sum jc[n] q^{ell n}
    xs = [0] * span
    for n in range(span):
        if ell * n < span:
            xs[ell * n] = jc[n]
    ys = jc[:span]
    lo = -ell * top

    def monomial(a, b):
        va, sa = series_power(-ell, xs, a, span)
        vb, sb = series_power(-1, ys, b, span)
        v = va + vb
        s = mul(sa, sb, span)
        dense = [0] * span
        for i, c in enumerate(s):
            idx = v + i - lo
            if 0 <= idx < span:
                dense[idx] = c
        return dense

    unknowns = [(a, b) for a in range(top) for b in range(a, top)]
    known = [0] * span
    for a, b, c in ((top, 0, 1), (0, top, 1)):
        m = monomial(a, b)
        for i in range(span):
            known[i] += c * m[i]
    cols = []
    for a, b in unknowns:
        m = monomial(a, b)
        if a != b:
            m2 = monomial(b, a)
            m = [x + y for x, y in zip(m, m2)]
        cols.append(m)
    rows = [[Fraction(cols[k][i]) for k in range(len(unknowns))] + [Fraction(-known[i])]
            for i in range(span)]
    n = len(unknowns)
    r = 0
    piv = []
    for c in range(n):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            raise RuntimeError("underdetermined system")
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][n] != 0:
            raise RuntimeError("inconsistent system")
    coeffs = {}
    for k, (a, b) in enumerate(unknowns):
        v = rows[k][n]
        assert v.denominator == 1
        if v.numerator:
            coeffs[(a, b)] = v.numerator
    coeffs[(top, 0)] = 1
    coeffs[(0, top)] = 1
    full = {}
    for (a, b), c in coeffs.items():
        full[(a, b)] = c
        full[(b, a)] = c
    return full


def main():
    qs = [int(x) for x in sys.argv[1:]] or [2, 3, 5, 7]
    print("// Generated by tools/gen_modpoly.py. Do not edit.")
    print("// Each entry: {x_degree, y_degree, \"decimal coefficient\"}.")
    for q in qs:
        poly = modular_polynomial(q)
        print(f"inline constexpr ModPolyTerm phi{q}_terms[] = {{")
        for (a, b) in sorted(poly):
            print(f"    {{{a}, {b}, \"{poly[(a, b)]}\"}},")
        print("};")


if __name__ == "__main__":
    main()
