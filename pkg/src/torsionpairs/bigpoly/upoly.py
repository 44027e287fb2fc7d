"""Dense univariate polynomials over Z as coefficient lists, lowest degree first."""
from __future__ import annotations

import math
from functools import reduce

import gmpy2

from . import kronecker


def trim(c: list[int]) -> list[int]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def degree(c: list[int]) -> int:
    """Degree of a trimmed list; -1 is never returned for zero, callers test ``not c``."""
    if not c:
        raise ValueError("degree of the zero polynomial")
    return len(c) - 1


def add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return trim(out)


def sub(a: list[int], b: list[int]) -> list[int]:
    return add(a, [-x for x in b])


def scale(a: list[int], c: int) -> list[int]:
    return trim([x * c for x in a])


def mul(a: list[int], b: list[int]) -> list[int]:
    return trim(kronecker.mul_dense(a, b))


def power(a: list[int], n: int) -> list[int]:
    result = [1]
    base = a
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = trim(kronecker.sqr_dense(base))
    return result


def deriv(a: list[int]) -> list[int]:
    return trim([k * a[k] for k in range(1, len(a))])


def evaluate(a: list[int], x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def content(a: list[int]) -> int:
    return reduce(math.gcd, a, 0)


def primitive(a: list[int]) -> list[int]:
    """Primitive part with positive leading coefficient."""
    a = trim(a)
    if not a:
        return []
    c = content(a)
    if a[-1] < 0:
        c = -c
    return [x // c for x in a]


def norm2_bits(a: list[int]) -> int:
    return (gmpy2.isqrt(sum(gmpy2.mpz(x) * x for x in a)) + 1).bit_length()


def mignotte_bits(f: list[int]) -> int:
    """Bit bound for the coefficients of any divisor of f in Z[x]."""
    return len(f) + norm2_bits(f)


def divexact(f: list[int], g: list[int]) -> list[int] | None:
    """Quotient f/g when g divides f in Z[x], else None."""
    f, g = trim(f), trim(g)
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    if not f:
        return []
    if len(g) > len(f):
        return None
    if len(g) == 1:
        c = g[0]
        out = []
        for x in f:
            q, r = divmod(x, c)
            if r:
                return None
            out.append(q)
        return out
    if len(f) * len(g) <= 2048:
        return _divexact_school(f, g)
    q = kronecker.divexact_dense(f, g, kronecker.max_bits(f) + 16)
    if q is None:
        q = kronecker.divexact_dense(f, g, mignotte_bits(f))
    return q


def _divexact_school(f: list[int], g: list[int]) -> list[int] | None:
    r = list(f)
    dg = len(g) - 1
    lc = g[-1]
    q = [0] * (len(f) - dg)
    for k in range(len(f) - 1, dg - 1, -1):
        c = r[k]
        if c:
            t, rem = divmod(c, lc)
            if rem:
                return None
            q[k - dg] = t
            for j in range(dg + 1):
                r[k - dg + j] -= t * g[j]
    if any(r[:dg]):
        return None
    return q


def prem(f: list[int], g: list[int]) -> list[int]:
    """Pseudo-remainder lc(g)^(deg f - deg g + 1) f mod g."""
    f, g = trim(f), trim(g)
    if not g:
        raise ZeroDivisionError("pseudo-division by zero")
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return f
    lc = g[-1]
    r = list(f)
    steps = len(f) - dg
    for k in range(len(f) - 1, dg - 1, -1):
        c = r[k]
        r = [x * lc for x in r]
        if c:
            for j in range(dg + 1):
                r[k - dg + j] -= c * g[j]
        r.pop()
        steps -= 1
    return trim(r)


def resultant(f: list[int], g: list[int]) -> int:
    """Exact resultant over Z by the subresultant PRS."""
    f, g = trim(f), trim(g)
    if not f or not g:
        return 0
    if len(f) == 1 and len(g) == 1:
        return 1
    a, b = content(f), content(g)
    if f[-1] < 0:
        a = -a
    if g[-1] < 0:
        b = -b
    A = [x // a for x in f]
    B = [x // b for x in g]
    da, db = len(A) - 1, len(B) - 1
    t = a ** db * b ** da
    s = 1
    if da < db:
        A, B = B, A
        da, db = db, da
        if da & 1 and db & 1:
            s = -s
    g_, h = 1, 1
    while db > 0:
        d = da - db
        if da & 1 and db & 1:
            s = -s
        R = prem(A, B)
        if not R:
            return 0
        A = B
        div = g_ * h ** d
        B = [x // div for x in R]
        g_ = A[-1]
        h = g_ ** d // h ** (d - 1) if d else h
        da, db = len(A) - 1, len(B) - 1
    h = B[0] ** da // h ** (da - 1) if da else h
    return s * t * h


def eval_pow2(f: list[int], bits: int) -> gmpy2.mpz:
    """f(2^bits) for coefficients of any size."""
    if kronecker.max_bits(f) < bits - 1 and bits % 8 == 0:
        return kronecker.pack(f, bits // 8)

    def rec(lo: int, hi: int):
        if hi - lo == 1:
            return gmpy2.mpz(f[lo])
        mid = (lo + hi) // 2
        return rec(lo, mid) + (rec(mid, hi) << (bits * (mid - lo)))

    return rec(0, len(f)) if f else gmpy2.mpz(0)


def heugcd_candidate(f: list[int], g: list[int], bits: int) -> list[int]:
    """gcd image from evaluation at 2^bits (bits a multiple of 8)."""
    sb = bits // 8
    gamma = gmpy2.gcd(eval_pow2(f, bits), eval_pow2(g, bits))
    n = min(len(f), len(g)) + 1
    return primitive(kronecker.unpack(gamma, n, sb))


def gcd(f: list[int], g: list[int]) -> list[int]:
    """Primitive gcd with positive leading coefficient (heuristic GCD, verified)."""
    f, g = trim(f), trim(g)
    if not f:
        return primitive(g)
    if not g:
        return primitive(f)
    cf, cg = content(f), content(g)
    f = [x // cf for x in f]
    g = [x // cg for x in g]
    if len(f) == 1 or len(g) == 1:
        return [1]
    if len(f) < len(g):
        f, g = g, f
    bound = min(kronecker.max_bits(f), kronecker.max_bits(g)) + 3
    bits = ((bound + 7) // 8) * 8
    for _ in range(8):
        try:
            h = heugcd_candidate(f, g, bits)
        except OverflowError:
            h = []
        if h and divexact(g, h) is not None and divexact(f, h) is not None:
            return h
        bits = ((bits * 3 // 2 + 64 + 7) // 8) * 8
    return _gcd_prs(f, g)


def _gcd_prs(f: list[int], g: list[int]) -> list[int]:
    """Primitive PRS fallback; slow but unconditional."""
    a, b = primitive(f), primitive(g)
    while b and len(b) > 1:
        r = prem(a, b)
        a, b = b, primitive(r)
    if not b:
        return primitive(a)
    return [1]
