"""Dense polynomial products through Kronecker substitution.

A dense coefficient vector is packed into one big integer with a fixed slot
width per coefficient; one gmpy2 multiplication (GMP switches to FFT for
large operands) then yields all product coefficients at once.
"""
from __future__ import annotations

import gmpy2
import numpy as np

# below this many coefficient products the schoolbook loop wins
SCHOOLBOOK_CUTOFF = 4096


def max_bits(coeffs) -> int:
    return max((abs(c).bit_length() for c in coeffs), default=0)


def pack(coeffs, slot_bytes: int) -> gmpy2.mpz:
    """Pack signed coefficients (low index first) as sum c_k 2^(8 k slot_bytes)."""
    n = len(coeffs)
    pos = bytearray(n * slot_bytes)
    neg = bytearray(n * slot_bytes)
    have_neg = False
    for k, c in enumerate(coeffs):
        if c > 0:
            pos[k * slot_bytes:(k + 1) * slot_bytes] = int(c).to_bytes(slot_bytes, "little")
        elif c < 0:
            neg[k * slot_bytes:(k + 1) * slot_bytes] = int(-c).to_bytes(slot_bytes, "little")
            have_neg = True
    value = gmpy2.mpz.from_bytes(bytes(pos), "little")
    if have_neg:
        value -= gmpy2.mpz.from_bytes(bytes(neg), "little")
    return value


def unpack(value, nslots: int, slot_bytes: int) -> list[int]:
    """Inverse of :func:`pack` for coefficients bounded by 2^(8*slot_bytes - 1)."""
    half = 1 << (8 * slot_bytes - 1)
    bias_row = half.to_bytes(slot_bytes, "little")
    bias = gmpy2.mpz.from_bytes(bias_row * nslots, "little")
    shifted = gmpy2.mpz(value) + bias
    if shifted < 0:
        raise OverflowError("packed value outside the slot range")
    raw = shifted.to_bytes(nslots * slot_bytes, "little")
    arr = np.frombuffer(raw, dtype=np.uint8).reshape(nslots, slot_bytes)
    pattern = np.frombuffer(bias_row, dtype=np.uint8)
    nonzero = np.flatnonzero(np.any(arr != pattern, axis=1))
    out = [0] * nslots
    for k in nonzero.tolist():
        out[k] = int.from_bytes(raw[k * slot_bytes:(k + 1) * slot_bytes], "little") - half
    return out


def _slot_bytes(bits: int) -> int:
    return (bits + 2 + 7) // 8


def mul_dense(a: list[int], b: list[int]) -> list[int]:
    """Product of two dense integer coefficient vectors (low degree first)."""
    if not a or not b:
        return []
    na, nb = len(a), len(b)
    if na * nb <= SCHOOLBOOK_CUTOFF:
        out = [0] * (na + nb - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return out
    bits = max_bits(a) + max_bits(b) + min(na, nb).bit_length()
    sb = _slot_bytes(bits)
    prod = pack(a, sb) * pack(b, sb)
    return unpack(prod, na + nb - 1, sb)


def sqr_dense(a: list[int]) -> list[int]:
    if len(a) ** 2 <= SCHOOLBOOK_CUTOFF:
        return mul_dense(a, a)
    bits = 2 * max_bits(a) + len(a).bit_length()
    sb = _slot_bytes(bits)
    pa = pack(a, sb)
    return unpack(pa * pa, 2 * len(a) - 1, sb)


def divexact_dense(f: list[int], g: list[int], quotient_bits: int) -> list[int] | None:
    """Exact quotient f / g via one big-integer division, or None when g does not divide f.

    ``quotient_bits`` must bound the bit size of the quotient coefficients when
    the division is exact (a Mignotte-type bound is the usual choice).
    """
    if not g or not any(g):
        raise ZeroDivisionError("division by the zero polynomial")
    if not f:
        return []
    nq = len(f) - len(g) + 1
    if nq <= 0:
        return None
    bits = max(quotient_bits, max_bits(f)) + max_bits(g) + len(g).bit_length() + 2
    sb = _slot_bytes(bits)
    pf = pack(f, sb)
    pg = pack(g, sb)
    q, r = gmpy2.f_divmod(pf, pg)
    # an exact polynomial division packs to an exact integer division
    if r:
        return None
    try:
        qc = unpack(q, nq, sb)
    except OverflowError:
        return None
    if _trim(mul_dense(qc, g)) != _trim(list(f)):
        return None
    return qc


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c
