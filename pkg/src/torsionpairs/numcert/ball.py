"""Complex balls over mpmath: a midpoint and a radius enclosing the exact value.

Every operation is done at the current mpmath precision and the radius is
inflated by a bound on the rounding error of the midpoint computation, so a
result ball contains the exact result whenever the input balls contain theirs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpc, mpf


def _ulp(x) -> mpf:
    """Upper bound on the rounding error of one operation producing x."""
    return abs(x) * mpf(2) ** (3 - mpmath.mp.prec)


def _up(r) -> mpf:
    """Round a nonnegative radius up (one relative ulp of slack)."""
    return r * (1 + mpf(2) ** (2 - mpmath.mp.prec))


@dataclass(frozen=True)
class ComplexBall:
    mid: mpc
    rad: mpf

    def __post_init__(self):
        if self.rad < 0:
            raise ValueError("negative radius")

    @classmethod
    def exact(cls, z) -> "ComplexBall":
        """A ball around z; z is converted at the current precision and the conversion error is kept."""
        if isinstance(z, Fraction):
            m = mpc(mpf(z.numerator) / z.denominator)
            return cls(m, _ulp(m))
        if isinstance(z, int):
            m = mpc(z)
            return cls(m, mpf(0) if m.real == z else _ulp(m))
        m = mpc(z)
        return cls(m, mpf(0))

    @classmethod
    def coerce(cls, z) -> "ComplexBall":
        return z if isinstance(z, ComplexBall) else cls.exact(z)

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other) -> "ComplexBall":
        o = ComplexBall.coerce(other)
        m = self.mid + o.mid
        return ComplexBall(m, _up(self.rad + o.rad + _ulp(m)))

    __radd__ = __add__

    def __neg__(self) -> "ComplexBall":
        return ComplexBall(-self.mid, self.rad)

    def __sub__(self, other) -> "ComplexBall":
        return self + (-ComplexBall.coerce(other))

    def __rsub__(self, other) -> "ComplexBall":
        return ComplexBall.coerce(other) - self

    def __mul__(self, other) -> "ComplexBall":
        o = ComplexBall.coerce(other)
        m = self.mid * o.mid
        r = abs(self.mid) * o.rad + abs(o.mid) * self.rad + self.rad * o.rad
        return ComplexBall(m, _up(r + _ulp(m)))

    __rmul__ = __mul__

    def inverse(self) -> "ComplexBall":
        a = abs(self.mid)
        if a <= self.rad:
            raise ZeroDivisionError("ball contains zero")
        m = 1 / self.mid
        # |1/z - 1/c| <= r / (|c| (|c| - r))
        r = self.rad / (a * (a - self.rad))
        return ComplexBall(m, _up(_up(r) + _ulp(m)))

    def __truediv__(self, other) -> "ComplexBall":
        return self * ComplexBall.coerce(other).inverse()

    def __rtruediv__(self, other) -> "ComplexBall":
        return ComplexBall.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "ComplexBall":
        if n < 0:
            return (self ** -n).inverse()
        out = ComplexBall(mpc(1), mpf(0))
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    # -- queries ----------------------------------------------------------------

    def upper(self) -> mpf:
        """Upper bound on |z| over the ball."""
        return _up(abs(self.mid) + self.rad)

    def lower(self) -> mpf:
        """Lower bound on |z| over the ball (0 when the ball meets 0)."""
        v = abs(self.mid) * (1 - mpf(2) ** (2 - mpmath.mp.prec)) - self.rad
        return v if v > 0 else mpf(0)

    def contains(self, z) -> bool:
        return abs(mpc(z) - self.mid) <= self.rad

    def overlaps(self, other: "ComplexBall", margin=0) -> bool:
        return abs(self.mid - other.mid) <= self.rad + other.rad + margin

    def __repr__(self) -> str:
        return f"ComplexBall({mpmath.nstr(self.mid, 20)} +/- {mpmath.nstr(self.rad, 3)})"


def horner(coeffs, z: ComplexBall) -> ComplexBall:
    """Evaluate sum coeffs[k] z^k; coefficients may be ints, Fractions or balls."""
    acc = ComplexBall(mpc(0), mpf(0))
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def horner_with_derivative(coeffs, z: ComplexBall) -> tuple[ComplexBall, ComplexBall]:
    p = ComplexBall(mpc(0), mpf(0))
    dp = ComplexBall(mpc(0), mpf(0))
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp
