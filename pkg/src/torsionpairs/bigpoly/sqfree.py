"""Yun's squarefree decomposition over Z."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import upoly
from .mpoly import MPoly


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """f = sign * content * prod(factor ** multiplicity)."""

    sign: int
    content: int
    factors: list[tuple[MPoly, int]] = field(default_factory=list)

    def expand(self) -> MPoly:
        out = MPoly.const(self.sign * self.content)
        for f, m in self.factors:
            out = out * f ** m
        return out

    def degrees(self) -> list[tuple[int, int]]:
        """(degree, multiplicity) per factor."""
        return [(f.degree(), m) for f, m in self.factors]


def yun(f: list[int]) -> list[tuple[list[int], int]]:
    """Squarefree parts of a primitive f with positive leading coefficient.

    Returns (part, multiplicity) for every multiplicity whose part is nonconstant.
    """
    f = upoly.trim(f)
    if len(f) <= 1:
        return []
    df = upoly.deriv(f)
    g = upoly.gcd(f, df)
    c = upoly.divexact(f, g)
    d = upoly.sub(upoly.divexact(df, g), upoly.deriv(c))
    out = []
    i = 1
    while len(c) > 1:
        a = upoly.gcd(c, d)
        c = upoly.divexact(c, a)
        d = upoly.sub(upoly.divexact(d, a), upoly.deriv(c))
        if len(a) > 1:
            out.append((upoly.primitive(a), i))
        i += 1
    return out


def squarefree_decompose(f: MPoly) -> SquarefreeDecomposition:
    """Decompose a nonzero polynomial in one effective variable."""
    if f.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    used = f.used_vars()
    if len(used) > 1:
        raise ValueError(f"expected one effective variable, got {used}")
    if not used:
        c = f.constant_value()
        return SquarefreeDecomposition(1 if c > 0 else -1, abs(c), [])
    var = used[0]
    coeffs = f.to_univariate(var)
    content = upoly.content(coeffs)
    sign = 1 if coeffs[-1] > 0 else -1
    prim = [x // (sign * content) for x in coeffs]
    # a pure power of var is split off first; Yun would otherwise run once per multiplicity
    low = next(k for k, x in enumerate(prim) if x)
    factors = []
    parts = yun(prim[low:])
    merged = dict((m, p) for p, m in parts)
    if low:
        merged[low] = upoly.mul(merged[low], [0, 1]) if low in merged else [0, 1]
    for m in sorted(merged):
        factors.append((MPoly.from_univariate(merged[m], var), m))
    return SquarefreeDecomposition(sign, content, factors)
