"""Curve models, division polynomials and the modified division polynomials F_p(x, delta).

The quartic family is y^2 = x^4 - (delta^2 + delta^-2) x^2 + 1 with origin
(delta, 0) and projection (x, y) -> x.  Its nonsingular model is the Legendre
curve Y^2 = X (X - 1) (X - lam) with lam = (delta + 1/delta)^2 / 4, reached by
X = (delta^2 + 1)(delta x - 1) / (2 delta (x - delta)).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath

from .bigpoly import MPoly, content_primitive, gcd_poly, substitute_rational
from .bigpoly.ops import divexact

log = logging.getLogger(__name__)

SUPPORTED_PRIMES = (3, 5, 7, 11, 13, 17)
POINT_AT_INFINITY = "inf"

X, Y = MPoly.gen("X"), MPoly.gen("Y")
x, delta = MPoly.gen("x"), MPoly.gen("delta")


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 = X^3 + a2 X^2 + a4 X + a6, coefficients polynomial in parameters."""

    a2: MPoly
    a4: MPoly
    a6: MPoly

    @classmethod
    def from_ints(cls, a2: int, a4: int, a6: int) -> "WeierstrassCurve":
        return cls(MPoly.const(a2), MPoly.const(a4), MPoly.const(a6))

    def rhs(self) -> MPoly:
        return X ** 3 + self.a2 * X ** 2 + self.a4 * X + self.a6

    def b_invariants(self):
        b2 = 4 * self.a2
        b4 = 2 * self.a4
        b6 = 4 * self.a6
        b8 = 4 * self.a2 * self.a6 - self.a4 ** 2
        return b2, b4, b6, b8

    def discriminant(self) -> MPoly:
        b2, b4, b6, b8 = self.b_invariants()
        return -b2 ** 2 * b8 - 8 * b4 ** 3 - 27 * b6 ** 2 + 9 * b2 * b4 * b6

    def is_nonsingular(self) -> bool:
        return not self.discriminant().is_zero()


@dataclass
class DivisionPolySet:
    """f_n = psi_n for odd n and psi_n / (2Y) for even n, built by the usual recurrences.

    Even-index members carry the 2Y factor implicitly; ``has_y_factor(n)`` says so.
    """

    curve: WeierstrassCurve
    polys: dict[int, MPoly] = field(default_factory=dict)

    def __post_init__(self):
        b2, b4, b6, b8 = self.curve.b_invariants()
        one = MPoly.const(1)
        self.polys.update({
            0: MPoly.const(0),
            1: one,
            2: one,
            3: 3 * X ** 4 + b2 * X ** 3 + 3 * b4 * X ** 2 + 3 * b6 * X + b8,
            4: (2 * X ** 6 + b2 * X ** 5 + 5 * b4 * X ** 4 + 10 * b6 * X ** 3 + 10 * b8 * X ** 2
                + (b2 * b8 - b4 * b6) * X + (b4 * b8 - b6 ** 2)),
        })
        self._y4 = 16 * self.curve.rhs() ** 2   # (2Y)^4 rewritten through the curve equation

    @staticmethod
    def has_y_factor(n: int) -> bool:
        return n % 2 == 0

    def __getitem__(self, n: int) -> MPoly:
        if n < 0:
            raise ValueError("negative index")
        if n not in self.polys:
            m = n // 2
            f = self.__getitem__
            if n % 2:
                if m % 2 == 0:
                    r = self._y4 * f(m + 2) * f(m) ** 3 - f(m - 1) * f(m + 1) ** 3
                else:
                    r = f(m + 2) * f(m) ** 3 - self._y4 * f(m - 1) * f(m + 1) ** 3
            else:
                r = f(m) * (f(m + 2) * f(m - 1) ** 2 - f(m - 2) * f(m + 1) ** 2)
            self.polys[n] = r
        return self.polys[n]

    def check_recurrence(self, n: int) -> bool:
        """Re-derive f_n from neighbours by the recurrence and compare."""
        fresh = DivisionPolySet(self.curve)
        return fresh[n] == self[n]


def division_poly(curve: WeierstrassCurve, n: int) -> MPoly:
    """psi_n for odd n (degree (n^2-1)/2 in X); psi_n / (2Y) for even n."""
    if n < 1:
        raise ValueError("division polynomial index must be >= 1")
    return DivisionPolySet(curve)[n]


# -- the quartic family -------------------------------------------------------------


def legendre_lambda() -> tuple[MPoly, MPoly]:
    """lam = num / den with num = (delta^2 + 1)^2, den = 4 delta^2."""
    return (delta ** 2 + 1) ** 2, 4 * delta ** 2


def nonsingular_model() -> WeierstrassCurve:
    """Y^2 = X (X - 4 delta^2)(X - (delta^2+1)^2): the Legendre model with X scaled by 4 delta^2."""
    lam_n, lam_d = legendre_lambda()
    return WeierstrassCurve(-(lam_d + lam_n), lam_d * lam_n, MPoly.const(0))


def model_map() -> tuple[MPoly, MPoly]:
    """X = num / den as functions of (x, delta), for the Legendre-model X."""
    return (delta ** 2 + 1) * (delta * x - 1), 2 * delta * (x - delta)


def model_map_scaled() -> tuple[MPoly, MPoly]:
    """Scaled X' = 4 delta^2 X = 2 delta (delta^2 + 1)(delta x - 1) / (x - delta)."""
    return 2 * delta * (delta ** 2 + 1) * (delta * x - 1), x - delta


def x_from_model_X(Xv, d):
    """Inverse of the model map on x-coordinates; returns POINT_AT_INFINITY at the pole."""
    den = d * (2 * Xv - (d * d + 1))
    if den == 0:
        return POINT_AT_INFINITY
    return (2 * d * d * Xv - (d * d + 1)) / den


@lru_cache(maxsize=None)
def modified_division_poly(p: int) -> MPoly:
    """F_p(x, delta): the delta-content-free transform of psi_p, sign fixed by x^((p^2-1)/2) delta^((p^2-1)/8)."""
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"p must be one of {SUPPORTED_PRIMES}")
    psi = division_poly(nonsingular_model(), p)
    num, den = model_map_scaled()
    F = substitute_rational(psi, "X", num, den)
    F = _strip_delta_content(F)
    _, F, _ = content_primitive(F)
    dx, dd = (p * p - 1) // 2, (p * p - 1) // 8
    key = F.with_vars(("x", "delta")).as_dict().get((dx, dd), 0)
    if key == 0:
        raise ArithmeticError(f"F_{p} lacks the x^{dx} delta^{dd} term")
    if key < 0:
        F = -F
    if F.degree("x") != dx or F.degree("delta") != (p * p - 1) // 4:
        raise ArithmeticError(f"F_{p} has unexpected degrees {F.degrees()}")
    return F.with_vars(("x", "delta"))


def _strip_delta_content(F: MPoly) -> MPoly:
    """Divide by the gcd (in Z[delta]) of the coefficients of the powers of x."""
    parts = sorted(F.coeffs_in("x").values(), key=lambda c: (len(c), c.degree("delta")))
    g = MPoly.const(0)
    for c in parts:
        g = gcd_poly(g, c.compact())
        if g.is_constant():
            return F
    q = divexact(F, g)
    if q is None:
        raise ArithmeticError("content does not divide")
    return q


def F3_closed_form() -> MPoly:
    return 2 * x ** 3 * delta ** 2 + (x ** 4 - 1) * delta - 2 * x


def torsion_image_orbit(a) -> set:
    """{a, -a, 1/a, -1/a}; exact for int/Fraction/complex rationals, set semantics collapse repeats."""
    if a == 0 or a == POINT_AT_INFINITY:
        raise ValueError("orbit of 0 or infinity is {0, inf}")
    if isinstance(a, int):
        a = Fraction(a)
    return {a, -a, 1 / a, -1 / a}


def two_and_four_torsion_images(d) -> tuple[set, set]:
    """Projected 2-torsion {+-d^{+-1}} and projected exact 4-torsion {0, inf, +-1, +-i}."""
    if isinstance(d, int):
        d = Fraction(d)
    if d ** 4 in (0, 1):
        raise ValueError("delta^4 must avoid 0 and 1")
    four = {Fraction(0), POINT_AT_INFINITY, Fraction(1), Fraction(-1), 1j, -1j}
    return torsion_image_orbit(d), four


def j_invariant_edelta() -> tuple[MPoly, MPoly]:
    """j of E_delta as num/den in delta: 16 (t+14)^3 / (t-2)^2 with t = delta^4 + delta^-4, cleared."""
    t_num = delta ** 8 + 14 * delta ** 4 + 1
    return 16 * t_num ** 3, delta ** 4 * (delta ** 4 - 1) ** 4


def j_invariant_value(d):
    """Numeric or exact j(E_delta) via the t = delta^4 + delta^-4 form."""
    if isinstance(d, int):
        d = Fraction(d)
    d4 = d ** 4
    if d4 == 0 or d4 == 1:
        raise ValueError("delta^4 must avoid 0 and 1")
    t = d4 + 1 / d4
    return 16 * (t + 14) ** 3 / (t - 2) ** 2


def j_invariant_legendre(lam):
    return 256 * (lam ** 2 - lam + 1) ** 3 / (lam ** 2 * (lam - 1) ** 2)


# -- numeric oracle --------------------------------------------------------------------


def _integral_model(a2, a4, a6):
    """Scale rational coefficients: X = X'/D^2 makes the model integral."""
    a2, a4, a6 = Fraction(a2), Fraction(a4), Fraction(a6)
    D = 1
    for c in (a2, a4, a6):
        D = D * c.denominator // _gcd(D, c.denominator)
    A2, A4, A6 = a2 * D ** 2, a4 * D ** 4, a6 * D ** 6
    assert A2.denominator == A4.denominator == A6.denominator == 1
    return WeierstrassCurve.from_ints(int(A2), int(A4), int(A6)), D


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _add(P, Q, a2, a4, tol):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    scale = 1 + abs(x1) + abs(x2)
    if abs(x1 - x2) <= tol * scale:
        if abs(y1 + y2) <= tol * (1 + abs(y1) + abs(y2)):
            return None
        lam = (3 * x1 ** 2 + 2 * a2 * x1 + a4) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam ** 2 - a2 - x1 - x2
    y3 = lam * (x1 - x3) - y1
    return (x3, y3)


def point_order(P, a2, a4, limit: int, tol) -> int | None:
    """Smallest k <= limit with kP = O under the affine group law, else None."""
    Q = P
    for k in range(1, limit + 1):
        if Q is None:
            return k
        if k == limit:
            break
        Q = _add(Q, P, a2, a4, tol)
    return None


def numeric_torsion_oracle(a2, a4, a6, n: int, bits: int = 256, exact_order: bool = False) -> list:
    """X-coordinates (mpmath mpc) of the nonzero n-torsion of y^2 = X^3 + a2 X^2 + a4 X + a6.

    Coefficients are exact rationals.  Roots of the division polynomial are
    certified balls; each is then checked under the group law at ``bits``
    precision.  With ``exact_order`` only points of order exactly n are kept.
    """
    from .numcert.roots import roots_univariate

    if n < 1 or n > 20:
        raise ValueError("oracle supports 1 <= n <= 20")
    if bits < 128:
        raise ValueError("oracle needs at least 128 bits")
    curve, D = _integral_model(a2, a4, a6)
    if not curve.is_nonsingular():
        raise ValueError("singular curve")
    if n == 1:
        return []
    divs = DivisionPolySet(curve)
    polys = [divs[n]]
    if n % 2 == 0:
        polys.append(curve.rhs())
    out = []
    with mpmath.workprec(bits):
        tol = mpmath.mpf(2) ** (-(bits // 2))
        A4 = mpmath.mpf(Fraction(a4).numerator) / Fraction(a4).denominator
        A6 = mpmath.mpf(Fraction(a6).numerator) / Fraction(a6).denominator
        A2 = mpmath.mpf(Fraction(a2).numerator) / Fraction(a2).denominator
        for poly in polys:
            if poly.is_constant():
                continue
            coeffs = poly.compact().to_univariate("X")
            for ball in roots_univariate(coeffs, bits):
                Xv = ball.mid / D ** 2
                Y2 = Xv ** 3 + A2 * Xv ** 2 + A4 * Xv + A6
                # a root of the cubic has Y = 0; its square root would only be ~ sqrt(tol)
                Yv = mpmath.mpc(0) if abs(Y2) <= tol * (1 + abs(Xv) ** 3) else mpmath.sqrt(Y2)
                order = point_order((Xv, Yv), A2, A4, n, tol)
                if order is None or n % order:
                    raise ArithmeticError(f"root {Xv} is not {n}-torsion under the group law")
                if exact_order and order != n:
                    continue
                out.append(Xv)
    return out
