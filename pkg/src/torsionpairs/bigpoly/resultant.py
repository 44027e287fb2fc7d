"""Resultants: subresultant PRS (direct) and evaluation/CRT/interpolation (modular).

The modular route handles inputs in two variables.  For a prime q and an
evaluation point t where neither leading coefficient vanishes mod q, the
univariate resultant of the images equals the image of the true resultant,
so points hitting a leading-coefficient zero are skipped and primes that
kill a leading coefficient identically are skipped as well.
"""
from __future__ import annotations

import logging
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import modular, upoly
from .mpoly import ZERO_DEGREE, MPoly
from .ops import divexact, pseudo_divrem

log = logging.getLogger(__name__)

# inputs beyond either threshold take the modular route under method="auto"
MODULAR_DEGREE = 40
MODULAR_TERMS = 100
EXTRA_PRIMES = 2
VERIFY_POINTS = 2


class ResultantVerificationError(ArithmeticError):
    pass


def resultant(f: MPoly, g: MPoly, var: str, method: str = "auto", workers: int | None = None,
              verify: bool = True) -> MPoly:
    """Resultant of f and g with respect to ``var`` (Sylvester determinant convention)."""
    df, dg = f.degree(var), g.degree(var)
    if f.is_zero() or g.is_zero() or df == ZERO_DEGREE or dg == ZERO_DEGREE:
        raise ValueError("resultant of a zero polynomial")
    if df == 0 and dg == 0:
        raise ValueError(f"both polynomials are free of {var!r}")
    others = tuple(v for v in sorted(set(f.used_vars()) | set(g.used_vars())) if v != var)
    if method == "auto":
        big = max(f.degree(), g.degree()) > MODULAR_DEGREE or max(len(f), len(g)) > MODULAR_TERMS
        method = "modular" if big and len(others) == 1 else "direct"
    if method == "direct":
        return resultant_subres(f, g, var)
    if method == "modular":
        if len(others) != 1:
            raise ValueError("the modular route needs exactly one remaining variable")
        return resultant_modular(f, g, var, others[0], workers=workers, verify=verify)
    raise ValueError(f"unknown method {method!r}")


# -- direct route -----------------------------------------------------------------


def resultant_subres(f: MPoly, g: MPoly, var: str) -> MPoly:
    """Subresultant PRS over Z[other variables]."""
    others = tuple(v for v in sorted(set(f.used_vars()) | set(g.used_vars())) if v != var)
    if not others:
        r = upoly.resultant(_univ(f, var), _univ(g, var))
        return MPoly.const(r)
    A, B = f, g
    da, db = A.degree(var), B.degree(var)
    s = 1
    if da < db:
        A, B = B, A
        da, db = db, da
        if da & 1 and db & 1:
            s = -s
    if db == 0:
        return MPoly.const(s) * B ** da
    gg = MPoly.const(1)
    h = MPoly.const(1)
    while True:
        d = da - db
        if da & 1 and db & 1:
            s = -s
        _, R, k = pseudo_divrem(A, B, var)
        # pseudo_divrem may stop early; pad to the full scaling d + 1
        lcB = B.lc_in(var)
        if k < d + 1:
            R = R * lcB ** (d + 1 - k)
        if R.is_zero():
            return MPoly.const(0)
        A = B
        B = _exact(R, gg * h ** d)
        gg = A.lc_in(var)
        if d:
            h = _exact(gg ** d, h ** (d - 1)) if d > 1 else gg
        da, db = A.degree(var), B.degree(var)
        if db == 0:
            lb = B
            res = lb ** da if da == 1 else _exact(lb ** da, h ** (da - 1))
            return (res * s).compact()


def _exact(a: MPoly, b: MPoly) -> MPoly:
    q = divexact(a, b)
    if q is None:
        raise ArithmeticError("inexact division in subresultant sequence")
    return q


def _univ(f: MPoly, var: str) -> list[int]:
    if f.is_constant():
        return [f.constant_value()]
    return f.to_univariate(var)


# -- modular route -------------------------------------------------------------------


@dataclass
class ModularPlan:
    """Everything the per-prime workers need, in plain arrays."""

    F: list[list[int]]     # exact coefficients, F[k][j] of y^k t^j
    G: list[list[int]]
    low: int               # t-valuation lower bound
    high: int              # t-degree upper bound
    bound_bits: int        # Hadamard bound on |coefficients|
    primes: list[int]


def _split(f: MPoly, y: str, t: str) -> list[list[int]]:
    parts = f.coeffs_in(y)
    dy = f.degree(y)
    dt = max(f.degree(t), 0)
    rows = []
    for k in range(dy + 1):
        row = [0] * (dt + 1)
        c = parts.get(k)
        if c is not None:
            i = c.vars.index(t) if t in c.vars else -1
            for exp, val in c.as_dict().items():
                row[exp[i] if i >= 0 else 0] += val
        rows.append(row)
    return rows


def _degree_range(F: list[list[int]], G: list[list[int]]) -> tuple[int, int]:
    """Bounds on valuation and degree in t of det(Sylvester) by optimal assignment."""
    df, dg = len(F) - 1, len(G) - 1
    n = df + dg
    NEG = -10 ** 9
    hi = np.full((n, n), NEG, dtype=np.int64)
    lo = np.full((n, n), -NEG, dtype=np.int64)

    def fill(rows, shift_rows, offset):
        d = len(rows) - 1
        for i in range(shift_rows):
            for k in range(d + 1):
                col = i + (d - k)
                c = rows[k]
                nz = [j for j, x in enumerate(c) if x]
                if nz:
                    hi[offset + i, col] = max(nz)
                    lo[offset + i, col] = min(nz)

    fill(F, dg, 0)
    fill(G, df, dg)
    r, c = linear_sum_assignment(-hi)
    high = int(hi[r, c].sum())
    r2, c2 = linear_sum_assignment(lo)
    low = int(lo[r2, c2].sum())
    if high < 0 or low > -NEG // 2:
        # no permutation avoids a zero entry: determinant is identically zero
        return 0, -1
    return low, high


def _hadamard_bits(F: list[list[int]], G: list[list[int]]) -> int:
    """Bits of max_{|t|=1} |det Sylvester|, which bounds every coefficient."""
    df, dg = len(F) - 1, len(G) - 1
    nf = sum(sum(abs(x) for x in row) ** 2 for row in F)
    ng = sum(sum(abs(x) for x in row) ** 2 for row in G)
    # (sqrt nf)^dg (sqrt ng)^df, rounded up in bits
    return math.ceil(dg * math.log2(nf) / 2 + df * math.log2(ng) / 2) + 1


def plan_modular(f: MPoly, g: MPoly, y: str, t: str) -> ModularPlan:
    F, G = _split(f, y, t), _split(g, y, t)
    low, high = _degree_range(F, G)
    bits = _hadamard_bits(F, G)
    qbits = math.log2(modular.PRIME_CEILING) - 1
    nprimes = math.ceil((bits + 1) / qbits) + EXTRA_PRIMES
    return ModularPlan(F, G, low, high, bits, modular.word_primes(nprimes))


def _image(F, G, low: int, npts: int, q: int):
    """Coefficients of R(t)/t^low mod q, or None when q kills a leading coefficient."""
    CF = np.array([[x % q for x in row] for row in F], dtype=np.int64)
    CG = np.array([[x % q for x in row] for row in G], dtype=np.int64)
    if not CF[-1].any() or not CG[-1].any():
        return None
    pts = []
    t = 1
    batch = npts + 16
    while len(pts) < npts:
        cand = np.arange(t, t + batch, dtype=np.int64)
        t += batch
        lf = modular.eval_matrix(CF[-1:], cand, q)[:, 0]
        lg = modular.eval_matrix(CG[-1:], cand, q)[:, 0]
        good = cand[(lf != 0) & (lg != 0)]
        pts.extend(good[: npts - len(pts)].tolist())
        if t > q // 2:
            return None
    pts = np.array(pts, dtype=np.int64)
    EA = modular.eval_matrix(CF, pts, q)
    EB = modular.eval_matrix(CG, pts, q)
    vals = modular.resultant_mod_batch(EA, EB, q)
    if low:
        inv = np.array([pow(int(x), -low, q) for x in pts], dtype=np.int64)
        vals = vals * inv % q
    return modular.interpolate_mod(pts, vals, q)


def _image_job(args):
    F, G, low, npts, q = args
    return q, _image(F, G, low, npts, q)


def resultant_modular(f: MPoly, g: MPoly, y: str, t: str, workers: int | None = None,
                      verify: bool = True, seed: int = 0x5EED) -> MPoly:
    plan = plan_modular(f, g, y, t)
    if plan.high < plan.low:
        return MPoly.const(0)
    npts = plan.high - plan.low + 1
    log.info("modular resultant: t-degree in [%d, %d], %d bits, %d primes",
             plan.low, plan.high, plan.bound_bits, len(plan.primes))
    needed = len(plan.primes)
    images: list[np.ndarray] = []
    used: list[int] = []
    skip = 0
    workers = workers or os.cpu_count() or 1
    while len(used) < needed:
        batch = modular.word_primes(needed - len(used), skip=skip)
        skip += len(batch)
        jobs = [(plan.F, plan.G, plan.low, npts, q) for q in batch]
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_image_job, jobs))
        else:
            results = [_image_job(j) for j in jobs]
        # merge in prime order so the lift does not depend on completion order
        for q, img in results:
            if img is None:
                log.info("skipping unlucky prime %d", q)
                continue
            used.append(q)
            images.append(img)
    coeffs = modular.crt(np.vstack(images), used)
    shifted = [0] * plan.low + coeffs
    R = MPoly.from_univariate(upoly.trim(shifted), t)
    if verify:
        _verify(f, g, y, t, R, seed)
    return R


def _verify(f: MPoly, g: MPoly, y: str, t: str, R: MPoly, seed: int) -> None:
    rng = random.Random(seed)
    lf, lg = f.lc_in(y), g.lc_in(y)
    checked = 0
    tries = 0
    while checked < VERIFY_POINTS:
        tries += 1
        if tries > 100:
            raise ResultantVerificationError("could not find verification points")
        t0 = rng.randrange(-97, 98)
        if t0 == 0 or not lf.subs(t, t0) or not lg.subs(t, t0):
            continue
        fa, ga = _univ(f.subs(t, t0), y), _univ(g.subs(t, t0), y)
        direct = upoly.resultant(fa, ga)
        got = R.subs(t, t0)
        got = got.constant_value() if got else 0
        if direct != got:
            raise ResultantVerificationError(f"modular resultant disagrees with direct value at {t}={t0}")
        checked += 1
