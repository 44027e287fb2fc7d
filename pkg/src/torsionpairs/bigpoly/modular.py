"""Word-size modular images: primes, evaluation, batched resultants, interpolation, CRT.

Primes stay below 2^31 so that products of two residues fit in int64.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Mapping

import gmpy2
import numba as nb
import numpy as np

from .mpoly import MPoly

PRIME_CEILING = 1 << 31


class UnluckyPrimeError(ArithmeticError):
    """The prime kills a leading coefficient the caller relies on."""


@lru_cache(maxsize=None)
def _prime_table(count: int) -> tuple[int, ...]:
    out = []
    q = PRIME_CEILING
    while len(out) < count:
        q = int(gmpy2.prev_prime(q)) if hasattr(gmpy2, "prev_prime") else _prev_prime(q)
        out.append(q)
    return tuple(out)


def _prev_prime(n: int) -> int:
    n -= 1
    while not gmpy2.is_prime(n, 50):
        n -= 1
    return n


def word_primes(count: int, skip: int = 0) -> list[int]:
    """The primes just below 2^31, largest first; ``skip`` drops the leading ones."""
    return list(_prime_table(count + skip)[skip:])


def eval_mod(f: MPoly, assignments: Mapping[str, int], prime: int, main_var: str | None = None):
    """Reduce f mod ``prime`` and evaluate the assigned variables.

    Returns an int residue in [0, prime) when every used variable is assigned,
    otherwise an MPoly image with coefficients in [0, prime).  With ``main_var``
    set, raises UnluckyPrimeError when the image loses degree in that variable.
    """
    if prime <= 2 or prime >= PRIME_CEILING * 2:
        raise ValueError("prime must be an odd word-size prime")
    assigned = {v: a % prime for v, a in assignments.items()}
    idx = [(i, assigned[v]) for i, v in enumerate(f.vars) if v in assigned]
    keep = tuple(v for v in f.vars if v not in assigned)
    keep_idx = [i for i, v in enumerate(f.vars) if v not in assigned]
    out: dict = {}
    for exp, c in f.as_dict().items():
        val = c % prime
        for i, a in idx:
            if exp[i]:
                val = val * pow(a, exp[i], prime) % prime
        if val:
            e = tuple(exp[i] for i in keep_idx)
            out[e] = (out.get(e, 0) + val) % prime
    image = MPoly({e: c for e, c in out.items() if c}, keep)
    if main_var is not None and main_var in keep:
        if image.degree(main_var) != f.degree(main_var):
            raise UnluckyPrimeError(f"leading coefficient in {main_var} vanishes mod {prime}")
    if not image.used_vars():
        return image.constant_value() % prime if image else 0
    return image


def poly_mod(coeffs: list[int], q: int) -> np.ndarray:
    return np.array([c % q for c in coeffs], dtype=np.int64)


@nb.njit(cache=True)
def _powmod(base, e, q):
    r = 1
    base %= q
    while e > 0:
        if e & 1:
            r = r * base % q
        base = base * base % q
        e >>= 1
    return r


@nb.njit(cache=True)
def eval_matrix(C, pts, q):
    """C[k, j] = coefficient of t^j in the k-th polynomial; returns out[i, k] = C_k(pts[i])."""
    m, n = C.shape
    out = np.zeros((pts.shape[0], m), dtype=np.int64)
    for i in range(pts.shape[0]):
        t = pts[i]
        for k in range(m):
            acc = 0
            for j in range(n - 1, -1, -1):
                acc = (acc * t + C[k, j]) % q
            out[i, k] = acc
    return out


@nb.njit(cache=True)
def resultant_mod(a, b, q):
    """Resultant of two univariate images (low first, leading entries nonzero) mod q."""
    A = a.copy()
    B = b.copy()
    da = A.shape[0] - 1
    db = B.shape[0] - 1
    res = 1
    if da < db:
        A, B = B, A
        da, db = db, da
        if (da & 1) and (db & 1):
            res = q - 1
    while True:
        if db == 0:
            return res * _powmod(B[0], da, q) % q
        inv = _powmod(B[db], q - 2, q)
        for i in range(da, db - 1, -1):
            c = A[i] * inv % q
            if c != 0:
                for j in range(db + 1):
                    A[i - db + j] = (A[i - db + j] - c * B[j]) % q
        dr = db - 1
        while dr >= 0 and A[dr] == 0:
            dr -= 1
        if dr < 0:
            return 0
        res = res * _powmod(B[db], da - dr, q) % q
        if (da & 1) and (db & 1):
            res = (q - res) % q
        A, B = B, A[: dr + 1].copy()
        da, db = db, dr


@nb.njit(cache=True)
def resultant_mod_batch(EA, EB, q):
    n = EA.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        out[i] = resultant_mod(EA[i], EB[i], q)
    return out


@nb.njit(cache=True)
def interpolate_mod(xs, ys, q):
    """Coefficients (low first) of the polynomial through (xs[i], ys[i]) mod q.

    Lagrange form with barycentric weights: O(n^2) products and n inversions.
    """
    n = xs.shape[0]
    x = xs % q
    # master polynomial M = prod (X - x_i), degree n, low first
    M = np.zeros(n + 1, dtype=np.int64)
    M[0] = 1
    for i in range(n):
        xi = x[i]
        for k in range(i + 1, 0, -1):
            M[k] = (M[k - 1] - xi * M[k]) % q
        M[0] = (q - xi) * M[0] % q
    out = np.zeros(n, dtype=np.int64)
    Q = np.zeros(n, dtype=np.int64)
    for i in range(n):
        xi = x[i]
        # Q = M / (X - x_i) by synthetic division; M'(x_i) = Q(x_i)
        Q[n - 1] = M[n]
        for k in range(n - 1, 0, -1):
            Q[k - 1] = (M[k] + xi * Q[k]) % q
        d = 0
        for k in range(n - 1, -1, -1):
            d = (d * xi + Q[k]) % q
        c = ys[i] % q * _powmod(d, q - 2, q) % q
        if c:
            for k in range(n):
                out[k] = (out[k] + c * Q[k]) % q
    return out


def crt(residues: np.ndarray, primes: list[int]) -> list[int]:
    """Symmetric CRT lift of residues[i, j] (prime i, coefficient j)."""
    k, n = residues.shape
    xs = [gmpy2.mpz(int(r)) for r in residues[0]]
    modulus = gmpy2.mpz(primes[0])
    for i in range(1, k):
        q = primes[i]
        inv = int(gmpy2.invert(modulus % q, q))
        row = residues[i]
        for j in range(n):
            x = xs[j]
            t = (int(row[j]) - int(x % q)) * inv % q
            if t:
                xs[j] = x + modulus * t
        modulus *= q
    half = modulus // 2
    return [int(x - modulus) if x > half else int(x) for x in xs]
