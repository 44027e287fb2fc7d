"""Certified isolation of all complex roots of a squarefree polynomial.

Seeds come from Aberth iteration in double precision (evaluated through the
reversed polynomial outside the unit disk so large degrees do not overflow);
each seed is then polished by Newton's method at full precision.  A disk of
radius n |f(z)| / |f'(z)| around z contains a root, so n pairwise disjoint such
disks contain exactly one root each.
"""
from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np
from mpmath import mpc, mpf

from ..bigpoly import MPoly, gcd_poly
from .ball import ComplexBall, horner_with_derivative

ABERTH_ITERATIONS = 500
NEWTON_ITERATIONS = 200


class RootIsolationError(ArithmeticError):
    pass


def _as_coeffs(f) -> list:
    if isinstance(f, MPoly):
        used = f.used_vars()
        if len(used) > 1:
            raise ValueError("expected a univariate polynomial")
        if not used:
            return [f.constant_value()]
        return f.to_univariate(used[0])
    return list(f)


def _midpoint(c):
    if isinstance(c, ComplexBall):
        return c.mid
    if isinstance(c, Fraction):
        return mpc(mpf(c.numerator) / c.denominator)
    return mpc(c)


def _scaled_doubles(mids: list) -> np.ndarray:
    """Coefficients divided by a common power of two, as complex128."""
    top = max(max(abs(m.real), abs(m.imag)) for m in mids)
    e = int(mpmath.floor(mpmath.log(top, 2))) if top else 0
    scale = mpf(2) ** (-e)
    out = np.empty(len(mids), dtype=np.complex128)
    for k, m in enumerate(mids):
        out[k] = complex(m * scale)
    return out


def _root_scale_exponent(mids: list) -> int:
    """log2 of the geometric mean of the root moduli, rounded; zero roots are skipped."""
    low = next(k for k, m in enumerate(mids) if m != 0)
    n = len(mids) - 1
    if n == low:
        return 0
    ratio = abs(mids[low]) / abs(mids[n])
    return int(mpmath.nint(mpmath.log(ratio, 2) / (n - low)))


def _newton_ratio(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    """f(z)/f'(z) for every z, using the reversed polynomial where |z| > 1."""
    n = len(c) - 1
    out = np.empty_like(z)
    inside = np.abs(z) <= 1
    zi = z[inside]
    p = np.zeros_like(zi)
    dp = np.zeros_like(zi)
    for a in c[::-1]:
        dp = dp * zi + p
        p = p * zi + a
    out[inside] = p / dp
    zo = z[~inside]
    w = 1 / zo
    q = np.zeros_like(w)
    dq = np.zeros_like(w)
    for a in c:
        dq = dq * w + q
        q = q * w + a
    # f(z) = z^n q(w), f'(z) = z^(n-1) (n q(w) - w q'(w))
    out[~inside] = zo * q / (n * q - w * dq)
    return out


def aberth_seeds(c: np.ndarray, iterations: int = ABERTH_ITERATIONS) -> np.ndarray:
    n = len(c) - 1
    # initial radius from the Fujiwara-style bound on root moduli, spread on a circle
    a = np.abs(c)
    with np.errstate(divide="ignore"):
        lower = min((a[0] / a[k]) ** (1 / k) for k in range(1, n + 1) if a[k] and a[0]) if a[0] else 1.0
        upper = max((a[n - k] / a[n]) ** (1 / k) for k in range(1, n + 1))
    rho = math.sqrt(max(lower, 1e-8) * max(upper, 1e-8)) if np.isfinite(upper) else 1.0
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    z = rho * np.exp(1j * angles)
    for _ in range(iterations):
        ratio = _newton_ratio(c, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1)
        s = (1 / diff).sum(axis=1) - 1
        step = ratio / (1 - ratio * s)
        step = np.where(np.isfinite(step), step, 0)
        z = z - step
        if np.all(np.abs(step) <= 1e-14 * np.maximum(np.abs(z), 1e-300)):
            break
    return z


def _polish(coeffs: list, z: mpc, dcoeffs: list) -> mpc:
    tol = mpf(2) ** (8 - mpmath.mp.prec)
    for _ in range(NEWTON_ITERATIONS):
        fz = mpmath.polyval(coeffs, z)
        dz = mpmath.polyval(dcoeffs, z)
        if dz == 0:
            break
        step = fz / dz
        z -= step
        if abs(step) <= tol * max(abs(z), mpf(1)):
            fz = mpmath.polyval(coeffs, z)
            dz = mpmath.polyval(dcoeffs, z)
            if dz:
                z -= fz / dz
            break
    return z


def _aberth_mp(desc: list, ddesc: list, z: list) -> list:
    """Aberth iteration at the working precision."""
    n = len(z)
    tol = mpf(2) ** (8 - mpmath.mp.prec)
    for _ in range(NEWTON_ITERATIONS):
        done = True
        for i in range(n):
            zi = z[i]
            fz = mpmath.polyval(desc, zi)
            dz = mpmath.polyval(ddesc, zi)
            if fz == 0:
                continue
            ratio = fz / dz
            s = sum(1 / (zi - z[j]) for j in range(n) if j != i)
            step = ratio / (1 - ratio * s)
            z[i] = zi - step
            if abs(step) > tol * max(abs(z[i]), mpf(1)):
                done = False
        if done:
            break
    return z


def inclusion_radius(coeffs: list, z: mpc) -> mpf:
    """Radius of a disk about z certified to contain a root of every polynomial in the coefficient balls."""
    n = len(coeffs) - 1
    fz, dfz = horner_with_derivative(coeffs, ComplexBall(mpc(z), mpf(0)))
    low = dfz.lower()
    if low == 0:
        return mpf("inf")
    return n * fz.upper() / low * (1 + mpf(2) ** (4 - mpmath.mp.prec))


def isolate(coeffs: list, approx: list) -> list[ComplexBall]:
    """Balls of certified radius around ``approx``; raises when they are not pairwise disjoint."""
    balls = [ComplexBall(mpc(z), inclusion_radius(coeffs, z)) for z in approx]
    order = sorted(range(len(balls)), key=lambda i: balls[i].mid.real - balls[i].rad)
    # sweep on real intervals to find candidate overlaps
    active: list[int] = []
    for i in order:
        b = balls[i]
        if not mpmath.isfinite(b.rad):
            raise RootIsolationError(f"derivative vanishes near {mpmath.nstr(b.mid, 15)}")
        left = b.mid.real - b.rad
        active = [j for j in active if balls[j].mid.real + balls[j].rad >= left]
        for j in active:
            if b.overlaps(balls[j]):
                raise RootIsolationError(
                    f"inclusion disks around {mpmath.nstr(b.mid, 15)} and {mpmath.nstr(balls[j].mid, 15)} overlap")
        active.append(i)
    return balls


def _sort_key(b: ComplexBall):
    """(real, imaginary), with parts the ball cannot distinguish from zero read as zero."""
    re, im = b.mid.real, b.mid.imag
    return (re if abs(re) > b.rad else 0, im if abs(im) > b.rad else 0)


def roots_univariate(f, bits: int, check_squarefree: bool = True) -> list[ComplexBall]:
    """All deg f roots of f as pairwise disjoint balls, each holding exactly one root.

    ``f`` is an MPoly in one variable or a coefficient list (lowest degree first)
    of ints, Fractions or ComplexBalls.  Results are sorted by (real, imaginary).
    """
    if bits < 64:
        raise ValueError("need at least 64 bits")
    coeffs = _as_coeffs(f)
    while coeffs and not (coeffs[-1].mid if isinstance(coeffs[-1], ComplexBall) else coeffs[-1]):
        coeffs.pop()
    n = len(coeffs) - 1
    if n < 1:
        return []
    exact = all(isinstance(c, int) for c in coeffs)
    if check_squarefree and exact and n > 1:
        fm = MPoly.from_univariate(coeffs, "z")
        if not gcd_poly(fm, fm.diff("z")).is_constant():
            raise ValueError("polynomial is not squarefree")
    with mpmath.workprec(bits + 32):
        mids = [_midpoint(c) for c in coeffs]
        # substitute z = 2^e y so the roots cluster near the unit circle
        e = _root_scale_exponent(mids)
        scaled = [m * mpf(2) ** (e * k) for k, m in enumerate(mids)]
        seeds = aberth_seeds(_scaled_doubles(scaled)) * 2.0 ** e
        desc = mids[::-1]
        ddesc = [k * mids[k] for k in range(n, 0, -1)]
        approx = [_polish(desc, mpc(complex(z)), ddesc) for z in seeds]
    try:
        with mpmath.workprec(bits):
            balls = isolate(coeffs, [mpc(z) for z in approx])
    except RootIsolationError:
        # clustered roots: Newton can pull two seeds onto one root, Aberth keeps them apart
        with mpmath.workprec(bits + 32):
            approx = _aberth_mp(desc, ddesc, [mpc(complex(z)) for z in seeds])
        with mpmath.workprec(bits):
            balls = isolate(coeffs, [mpc(z) for z in approx])
    balls.sort(key=_sort_key)
    return balls
