"""Symbolic identities over Q[a]: the 3-division quartic of y^2 = (x - a)(x^2 - a), its resolvent cubic,
the cube-root form of the cubic's roots, and the agreement of two j-invariant formulas.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bigpoly import MPoly, resultant_subres
from .curves import WeierstrassCurve, division_poly, j_invariant_edelta, legendre_lambda

a = MPoly.gen("a")


@dataclass(frozen=True)
class QPoly:
    """num / den with num in Z[vars] and a positive integer den, kept in lowest terms."""

    num: MPoly
    den: int = 1

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError("denominator must be positive")
        g = math.gcd(self.num.content(), self.den)
        if g > 1:
            object.__setattr__(self, "num", self.num.exact_div_int(g))
            object.__setattr__(self, "den", self.den // g)

    @classmethod
    def of(cls, value) -> "QPoly":
        if isinstance(value, QPoly):
            return value
        if isinstance(value, Fraction):
            return cls(MPoly.const(value.numerator), value.denominator)
        if isinstance(value, int):
            return cls(MPoly.const(value))
        return cls(value)

    def __add__(self, other) -> "QPoly":
        o = QPoly.of(other)
        return QPoly(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly(-self.num, self.den)

    def __sub__(self, other) -> "QPoly":
        return self + (-QPoly.of(other))

    def __rsub__(self, other) -> "QPoly":
        return QPoly.of(other) - self

    def __mul__(self, other) -> "QPoly":
        o = QPoly.of(other)
        return QPoly(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QPoly":
        return QPoly(self.num ** n, self.den ** n)

    def __eq__(self, other) -> bool:
        o = QPoly.of(other)
        return self.num * o.den == o.num * self.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def evaluate(self, values) -> Fraction:
        return Fraction(self.num.evaluate(values)) / self.den

    def __str__(self) -> str:
        return f"({self.num})/{self.den}" if self.den != 1 else str(self.num)


@dataclass(frozen=True)
class MonicQuartic:
    """x^4 + p3 x^3 + p2 x^2 + p1 x + p0."""

    p3: QPoly
    p2: QPoly
    p1: QPoly
    p0: QPoly

    def coeffs(self) -> list[QPoly]:
        """Lowest degree first, including the leading 1."""
        return [self.p0, self.p1, self.p2, self.p3, QPoly.of(1)]

    def evaluate(self, x_value, a_value):
        return _eval_monic(self.coeffs(), x_value, a_value)


@dataclass(frozen=True)
class MonicCubic:
    """x^3 + c2 x^2 + c1 x + c0."""

    c2: QPoly
    c1: QPoly
    c0: QPoly

    def coeffs(self) -> list[QPoly]:
        return [self.c0, self.c1, self.c2, QPoly.of(1)]

    def evaluate(self, x_value, a_value):
        return _eval_monic(self.coeffs(), x_value, a_value)


def _eval_monic(coeffs: list[QPoly], x_value, a_value):
    vals = []
    for c in coeffs:
        n = c.num.evaluate({"a": a_value}) if c.num.used_vars() else c.num.constant_value()
        vals.append(n / c.den if not isinstance(n, int) else Fraction(n, c.den))
    acc = 0
    for c in reversed(vals):
        acc = acc * x_value + c
    return acc


def cube_curve() -> WeierstrassCurve:
    """y^2 = (x - a)(x + sqrt a)(x - sqrt a) = x^3 - a x^2 - a x + a^2."""
    return WeierstrassCurve(-a, -a, a ** 2)


def f3_of_cube_curve() -> MonicQuartic:
    """psi_3 / 3 of the cube curve, as a monic quartic over Q[a]."""
    psi3 = division_poly(cube_curve(), 3)
    parts = psi3.coeffs_in("X")
    if parts[4] != 3:
        raise ArithmeticError("psi_3 should have leading coefficient 3")
    c = [QPoly(parts.get(k, MPoly.const(0)).with_vars(("a",)), 3) for k in range(4)]
    return MonicQuartic(c[3], c[2], c[1], c[0])


def resolvent_cubic(q: MonicQuartic) -> MonicCubic:
    """Cubic with roots r1 r2 + r3 r4, r1 r3 + r2 r4, r1 r4 + r2 r3 over the roots r_i of q."""
    e1, e2, e3, e4 = -q.p3, q.p2, -q.p1, q.p0
    return MonicCubic(-e2, e1 * e3 - 4 * e4, -(e1 * e1 * e4 + e3 * e3 - 4 * e2 * e4))


def cube_root_identity_check(rc: MonicCubic | None = None) -> bool:
    """rc(-(2/3) a - (4/3) a t) vanishes in Q[a, t] / (t^3 - (a - 1)^2)."""
    if rc is None:
        rc = resolvent_cubic(f3_of_cube_curve())
    t = MPoly.gen("t")
    # 3 * root = -2a - 4a t, so 27 rc(root) = (3 root)^3 + 3 c2 (3 root)^2 + 9 c1 (3 root) + 27 c0
    r3 = -2 * a - 4 * a * t
    den = rc.c2.den * rc.c1.den * rc.c0.den
    total = (r3 ** 3 * den
             + 3 * rc.c2.num * (den // rc.c2.den) * r3 ** 2
             + 9 * rc.c1.num * (den // rc.c1.den) * r3
             + 27 * rc.c0.num * (den // rc.c0.den))
    return _reduce_cube(total, (a - 1) ** 2).is_zero()


def _reduce_cube(f: MPoly, c: MPoly) -> MPoly:
    """Rewrite t^3 -> c until deg_t f < 3."""
    t = MPoly.gen("t")
    while f.used_vars() and "t" in f.used_vars() and f.degree("t") >= 3:
        parts = f.coeffs_in("t")
        out = MPoly.const(0)
        for k, coef in parts.items():
            q, r = divmod(k, 3)
            out = out + coef * c ** q * t ** r
        f = out
    return f


def lambda_j_equivalence_check(constant: int = 14) -> bool:
    """16 (d^4 + d^-4 + constant)^3 / (d^4 + d^-4 - 2)^2 == 256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2), l = (d + 1/d)^2 / 4.

    Cross-multiplied in Z[delta]; ``constant`` exists for fault injection.
    """
    d = MPoly.gen("delta")
    if constant == 14:
        jn, jd = j_invariant_edelta()
    else:
        jn = 16 * (d ** 8 + constant * d ** 4 + 1) ** 3
        jd = d ** 4 * (d ** 4 - 1) ** 4
    N, D = legendre_lambda()
    ln = 256 * (N ** 2 - N * D + D ** 2) ** 3
    ld = D ** 2 * N ** 2 * (N - D) ** 2
    return (jn * ld - ln * jd).is_zero()


def discriminant(coeffs: list[QPoly]) -> QPoly:
    """Discriminant of a monic polynomial over Q[a] via Res(f, f') (f monic of degree n)."""
    n = len(coeffs) - 1
    den = 1
    for c in coeffs:
        den = den * c.den // math.gcd(den, c.den)
    xs = MPoly.gen("x")
    f = MPoly.const(0)
    for k, c in enumerate(coeffs):
        f = f + c.num * (den // c.den) * xs ** k
    r = resultant_subres(f, f.diff("x"), "x")
    # disc(den * f) = den^(2n-2) disc(f); res(f~, f~') = lc * disc * (-1)^(n(n-1)/2), lc = den
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return QPoly(r * sign, den ** (2 * n - 1))
