"""Ring-level operations on MPoly: arithmetic dispatch, pseudo-division, content, gcd, substitution."""
from __future__ import annotations

from . import upoly
from .mpoly import ZERO_DEGREE, MPoly, order_vars


def arith(f: MPoly, g: MPoly | int, op: str) -> MPoly:
    """Apply ``op`` in {add, sub, mul, pow}; for pow, g is a non-negative int."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "pow":
        if isinstance(g, MPoly):
            g = g.constant_value()
        if g < 0:
            raise ValueError("negative exponent")
        return f ** g
    raise ValueError(f"unknown operation {op!r}")


def pseudo_divrem(f: MPoly, g: MPoly, var: str) -> tuple[MPoly, MPoly, int]:
    """Return (q, r, k) with lc_var(g)^k f = q g + r and deg_var r < deg_var g.

    One scaling per elimination step, so k <= deg_var f - deg_var g + 1.
    """
    if g.is_zero():
        raise ZeroDivisionError("pseudo-division by the zero polynomial")
    dg = g.degree(var)
    if dg < 1:
        raise ValueError(f"divisor must have positive degree in {var!r}")
    lc = g.lc_in(var)
    v = MPoly.gen(var)
    q = MPoly.const(0)
    r = f
    k = 0
    while not r.is_zero() and r.degree(var) >= dg:
        dr = r.degree(var)
        lr = r.lc_in(var)
        shift = v ** (dr - dg)
        q = q * lc + lr * shift
        r = r * lc - lr * shift * g
        k += 1
    return q, r, k


def content_primitive(f: MPoly) -> tuple[int, MPoly, int]:
    """Split f = sign * content * primitive, primitive having positive leading coefficient."""
    if f.is_zero():
        return 0, f, 1
    c = f.content()
    sign = 1 if f.leading_coefficient() > 0 else -1
    return c, f.exact_div_int(sign * c), sign


def primitive_part(f: MPoly) -> MPoly:
    return content_primitive(f)[1]


def divexact(f: MPoly, g: MPoly) -> MPoly | None:
    """Quotient f / g when g divides f exactly, else None."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return f
    vars = order_vars(f.used_vars() + g.used_vars())
    if len(vars) <= 1:
        var = vars[0] if vars else "x"
        q = upoly.divexact(f.to_univariate(var) if vars else [f.constant_value()],
                           g.to_univariate(var) if vars else [g.constant_value()])
        return None if q is None else MPoly.from_univariate(q, var)
    return _divexact_sparse(f.with_vars(vars), g.with_vars(vars))


def _divexact_sparse(f: MPoly, g: MPoly) -> MPoly | None:
    gt = g.terms()
    lexp, lcoef = gt[0]
    rest = gt[1:]
    rem = f.as_dict()
    quot: dict = {}

    def key(e):
        return (sum(e), e)

    while rem:
        e = max(rem, key=key)
        c = rem[e]
        shift = tuple(a - b for a, b in zip(e, lexp))
        if min(shift) < 0:
            return None
        qc, r = divmod(c, lcoef)
        if r:
            return None
        quot[shift] = qc
        del rem[e]
        for ge, gc in rest:
            t = tuple(a + b for a, b in zip(shift, ge))
            s = rem.get(t, 0) - qc * gc
            if s:
                rem[t] = s
            else:
                rem.pop(t, None)
    return MPoly(quot, f.vars)


def gcd_poly(f: MPoly, g: MPoly) -> MPoly:
    """Greatest common divisor: primitive, positive leading coefficient."""
    if f.is_zero() and g.is_zero():
        return MPoly.const(0)
    if f.is_zero():
        return primitive_part(g)
    if g.is_zero():
        return primitive_part(f)
    vars = order_vars(f.used_vars() + g.used_vars())
    if not vars:
        return MPoly.const(1)
    if len(vars) == 1:
        var = vars[0]
        return MPoly.from_univariate(upoly.gcd(f.to_univariate(var), g.to_univariate(var)), var)
    return _gcd_recursive(f.with_vars(vars), g.with_vars(vars), vars)


def _content_in(f: MPoly, var: str) -> MPoly:
    out = MPoly.const(0)
    for c in f.coeffs_in(var).values():
        out = gcd_poly(out, c)
        if out.is_constant():
            return MPoly.const(1)
    return out


def _gcd_recursive(f: MPoly, g: MPoly, vars: tuple[str, ...]) -> MPoly:
    # primitive PRS in the last variable, coefficient gcds by recursion
    var = vars[-1]
    cf, cg = _content_in(f, var), _content_in(g, var)
    cont = gcd_poly(cf, cg)
    a, b = divexact(f, cf), divexact(g, cg)
    if a.degree(var) < b.degree(var):
        a, b = b, a
    while not b.is_zero() and b.degree(var) > 0:
        _, r, _ = pseudo_divrem(a, b, var)
        a = b
        b = divexact(r, _content_in(r, var)) if not r.is_zero() else r
    h = a if b.is_zero() else MPoly.const(1)
    if h.degree(var) == 0:
        h = MPoly.const(1)
    return primitive_part(h * cont)


def substitute_rational(f: MPoly, var: str, num: MPoly, den: MPoly) -> MPoly:
    """Return den^(deg_var f) * f(var = num/den), exact."""
    if isinstance(den, int):
        den = MPoly.const(den)
    if isinstance(num, int):
        num = MPoly.const(num)
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    d = f.degree(var)
    if d == ZERO_DEGREE:
        return f
    rest = tuple(v for v in f.vars if v != var)
    parts = {k: c.with_vars(rest) for k, c in f.coeffs_in(var).items()}
    coeffs = [parts.get(k, MPoly.const(0)) for k in range(d + 1)]
    num_pows: dict[int, MPoly] = {}
    den_pows: dict[int, MPoly] = {}

    def power(base: MPoly, cache: dict, n: int) -> MPoly:
        if n not in cache:
            if n == 0:
                cache[n] = MPoly.const(1)
            elif n == 1:
                cache[n] = base
            else:
                h = power(base, cache, n // 2)
                p = h * h
                cache[n] = p * base if n & 1 else p
        return cache[n]

    def block(lo: int, hi: int) -> MPoly:
        # sum_{k=lo}^{hi} c_k num^(k-lo) den^(hi-k)
        if lo == hi:
            return coeffs[lo]
        mid = (lo + hi) // 2
        left = block(lo, mid)
        right = block(mid + 1, hi)
        return left * power(den, den_pows, hi - mid) + right * power(num, num_pows, mid + 1 - lo)

    return block(0, d)
