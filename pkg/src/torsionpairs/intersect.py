"""Obstruction polynomials C_{p,0}, C_{p,1}, their compressed forms, resultant profiles and counts.

A common projective torsion image u of order 3 on E_d1 and E_d2 with a common
image v of order p forces F_3(u, d) to divide F_p(v, d) in d.  Pseudo-division
leaves a remainder C_{p,1}(u, v) d + C_{p,0}(u, v) whose two coefficients must
vanish together; their resultants locate the admissible u and v.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import mpmath

from .bigpoly import (
    MPoly,
    content_primitive,
    divexact,
    gcd_poly,
    pseudo_divrem,
    resultant,
    squarefree_decompose,
)
from .curves import modified_division_poly

log = logging.getLogger(__name__)

def cosine_factor(p: int, var: str = "w") -> MPoly:
    """w^m Psi(-1/w), m = (p - 1)/2, Psi the minimal polynomial of 2 cos(2 pi / p).

    Its roots are w = -1 / (2 cos(2 pi k / p)).  Psi = 1 + T_1 + ... + T_m with
    T_0 = 2, T_1 = x, T_{k+1} = x T_k - T_{k-1}.
    """
    m = (p - 1) // 2
    x = MPoly.gen(var)
    T = [MPoly.const(2), x]
    for _ in range(2, m + 1):
        T.append(x * T[-1] - T[-2])
    psi = MPoly.const(1)
    for k in range(1, m + 1):
        psi = psi + T[k]
    c = psi.to_univariate(var) if m else [1]
    c += [0] * (m + 1 - len(c))
    rev = MPoly.from_univariate([c[m - j] * (-1) ** (m - j) for j in range(m + 1)], var)
    return rev if rev.leading_coefficient() > 0 else -rev


def trivial_factors(var: str, p: int) -> tuple[MPoly, ...]:
    """Factors stripped before squarefree decomposition, keyed by the surviving variable."""
    t = MPoly.gen(var)
    if var in ("u", "v"):
        return (t ** 4 - 1,)
    if var == "s":
        return (t - 1,)
    if var == "w":
        return (t - 1, t + 1, cosine_factor(p, var))
    return ()


class ShapeError(ValueError):
    """A polynomial does not have the u^k * C(u^4, v/u) shape."""


class ZeroResultantError(ArithmeticError):
    def __init__(self, common: MPoly):
        super().__init__(f"C_0 and C_1 share the factor {common}")
        self.common = common


# -- reduction ------------------------------------------------------------------------


@dataclass(frozen=True)
class Normalization:
    """What was divided out of a raw remainder coefficient: sign * content * monomial."""

    sign: int
    content: int
    monomial: dict[str, int]


@dataclass(frozen=True)
class ReductionPair:
    p: int
    c0: MPoly
    c1: MPoly
    scale_power: int
    norm0: Normalization
    norm1: Normalization

    def raw(self) -> tuple[MPoly, MPoly]:
        """The remainder coefficients before normalization."""
        return _denormalize(self.c0, self.norm0), _denormalize(self.c1, self.norm1)


def _normalize(c: MPoly) -> tuple[MPoly, Normalization]:
    mono = {k: e for k, e in c.monomial_content().items() if e}
    c = c.shift_down(mono)
    content, prim, sign = content_primitive(c)
    return prim.with_vars(("u", "v")), Normalization(sign, content, mono)


def _denormalize(c: MPoly, n: Normalization) -> MPoly:
    return c * MPoly.monomial(n.monomial, n.sign * n.content) if n.monomial else c * (n.sign * n.content)


def reduce_Fp_mod_F3(p: int) -> ReductionPair:
    """Pseudo-divide F_p(v, d) by F_3(u, d) in d and normalize the two remainder coefficients.

    Normalization divides out the integer content and the largest monomial
    factor, then makes the leading coefficient (graded lex) positive.
    """
    if p < 5:
        raise ValueError("reduction needs p >= 5")
    Fp = modified_division_poly(p).rename({"x": "v"})
    F3 = modified_division_poly(3).rename({"x": "u"})
    _, r, k = pseudo_divrem(Fp, F3, "delta")
    if r.degree("delta") > 1:
        raise ArithmeticError("pseudo-remainder has delta-degree above 1")
    c0, n0 = _normalize(r.coeff_in("delta", 0))
    c1, n1 = _normalize(r.coeff_in("delta", 1))
    return ReductionPair(p, c0, c1, k, n0, n1)


# -- compression ---------------------------------------------------------------------


@dataclass(frozen=True)
class CompressedPair:
    """C_i(u, v) = u^k_i * D_i(s, w) with s = u^4, w = v/u."""

    p: int
    d0: MPoly
    d1: MPoly
    k0: int
    k1: int


def compress_poly(c: MPoly) -> tuple[MPoly, int]:
    c = c.with_vars(("u", "v"))
    totals = {a + b for a, b in c.as_dict()}
    k = min(totals)
    out = {}
    for (a, b), coef in c.as_dict().items():
        m, r = divmod(a + b - k, 4)
        if r:
            raise ShapeError(f"term u^{a} v^{b} breaks the u^{k} (u^4, v/u) shape")
        out[(m, b)] = coef
    return MPoly(out, ("s", "w")), k


def decompress_poly(d: MPoly, k: int) -> MPoly:
    d = d.with_vars(("s", "w"))
    out = {}
    for (m, b), coef in d.as_dict().items():
        out[(4 * m + k - b, b)] = coef
    return MPoly(out, ("u", "v"))


def compress(pair: ReductionPair) -> CompressedPair:
    d0, k0 = compress_poly(pair.c0)
    d1, k1 = compress_poly(pair.c1)
    return CompressedPair(pair.p, d0, d1, k0, k1)


def decompress(cp: CompressedPair) -> tuple[MPoly, MPoly]:
    return decompress_poly(cp.d0, cp.k0), decompress_poly(cp.d1, cp.k1)


# -- profiles --------------------------------------------------------------------------


def leading_pair(f: MPoly) -> tuple[int, int]:
    """Coefficients of t^n and t^(n - g), g the gcd of the exponents (so u^4-polynomials step by 4)."""
    var = f.used_vars()[0]
    c = f.to_univariate(var)
    n = len(c) - 1
    g = math.gcd(*[k for k, a in enumerate(c) if a]) or 1
    return c[n], c[n - g] if n >= g else 0


@dataclass
class ProfilePart:
    poly: MPoly
    multiplicity: int
    factors: list[MPoly] | None = None

    @property
    def degree(self) -> int:
        return self.poly.degree()

    @property
    def irreducible_degrees(self) -> list[int] | None:
        return None if self.factors is None else [f.degree() for f in self.factors]

    def leading_pair(self) -> tuple[int, int]:
        return leading_pair(self.poly)


@dataclass
class ResultantProfile:
    """R = sign * odd_content * 2^two_power * var^monomial_power * prod(trivial^e) * prod(part^m)."""

    p: int
    eliminated: str
    var: str
    sign: int
    two_power: int
    odd_content: int
    monomial_power: int
    trivial: list[tuple[MPoly, int]]
    parts: list[ProfilePart]
    total_degree: int
    resultant: MPoly | None = field(default=None, repr=False)

    def expand(self) -> MPoly:
        t = MPoly.gen(self.var)
        out = MPoly.const(self.sign * self.odd_content * 2 ** self.two_power) * t ** self.monomial_power
        for f, e in self.trivial:
            out = out * f ** e
        for part in self.parts:
            out = out * part.poly ** part.multiplicity
        return out

    def nontrivial_degree(self) -> int:
        return sum(part.degree for part in self.parts)

    def irreducible_parts(self) -> list[tuple[MPoly, int]]:
        """(factor, multiplicity) over every part, split into irreducibles when known."""
        return [(f, part.multiplicity) for part in self.parts for f in (part.factors or [part.poly])]

    def degree_table(self) -> list[tuple[int, int]]:
        """(degree, multiplicity) of every irreducible piece when known, else of every part."""
        return sorted(((f.degree(), m) for f, m in self.irreducible_parts()), key=lambda r: (r[1], r[0]))


def _strip_power(f: MPoly, g: MPoly) -> tuple[MPoly, int]:
    e = 0
    while True:
        q = divexact(f, g)
        if q is None:
            return f, e
        f, e = q, e + 1


def profile_of(R: MPoly, p: int, eliminated: str, var: str, factor: bool = True) -> ResultantProfile:
    """Split an exact univariate resultant into trivial pieces and squarefree parts."""
    if R.is_zero():
        raise ZeroResultantError(MPoly.const(0))
    R = R.with_vars((var,)) if R.used_vars() else R
    total = R.degree(var) if R.used_vars() else 0
    c, rest, sign = content_primitive(R)
    two = (c & -c).bit_length() - 1
    odd = c >> two
    mono = rest.min_degree(var) if rest.used_vars() else 0
    if mono:
        rest = rest.shift_down({var: mono})
    trivial = []
    for g in trivial_factors(var, p):
        rest, e = _strip_power(rest, g)
        if e:
            trivial.append((g, e))
    parts = []
    if rest.used_vars():
        dec = squarefree_decompose(rest.compact())
        if dec.sign != 1 or dec.content != 1:
            raise ArithmeticError("primitive remainder lost primitivity")
        for f, m in dec.factors:
            f = f.with_vars((var,))
            parts.append(ProfilePart(f, m, irreducible_factors(f) if factor else None))
    return ResultantProfile(p, eliminated, var, sign, two, odd, mono, trivial, parts, total, R)


def irreducible_factors(f: MPoly) -> list[MPoly]:
    """Irreducible factors over Z of a squarefree univariate f, positive leading coefficient, by degree."""
    import flint

    var = f.used_vars()[0]
    fac = flint.fmpz_poly(f.to_univariate(var)).factor()[1]
    if any(m != 1 for _, m in fac):
        raise ArithmeticError("part is not squarefree")
    out = []
    for g, _ in fac:
        h = MPoly.from_univariate([int(c) for c in g.coeffs()], var)
        out.append(h if h.leading_coefficient() > 0 else -h)
    return sorted(out, key=lambda h: (h.degree(), str(h)))


def compressed_resultant(cp: CompressedPair, eliminate: str, workers: int | None = None) -> MPoly:
    if eliminate not in ("s", "w"):
        raise ValueError("compressed profiles eliminate s or w")
    return resultant(cp.d0, cp.d1, eliminate, workers=workers)


def resultant_profile(pair: ReductionPair | CompressedPair, eliminate: str, workers: int | None = None,
                      factor: bool = True) -> ResultantProfile:
    """Profile of Res(C_0, C_1) eliminating ``eliminate`` (u, v for pairs; s, w for compressed pairs)."""
    if isinstance(pair, CompressedPair):
        R = compressed_resultant(pair, eliminate, workers)
        var = "w" if eliminate == "s" else "s"
        f0, f1 = pair.d0, pair.d1
    else:
        if eliminate not in ("u", "v"):
            raise ValueError("uncompressed profiles eliminate u or v")
        R = resultant(pair.c0, pair.c1, eliminate, workers=workers)
        var = "v" if eliminate == "u" else "u"
        f0, f1 = pair.c0, pair.c1
    if R.is_zero():
        raise ZeroResultantError(gcd_poly(f0, f1))
    return profile_of(R, pair.p, eliminate, var, factor=factor)


# -- counting ----------------------------------------------------------------------


@dataclass(frozen=True)
class IntersectionBound:
    u_count: int
    v_count: int
    multiplicity: int
    cardinality: int


def coordinate_counts(u_profile: ResultantProfile, v_profile: ResultantProfile) -> tuple[int, int]:
    """Nontrivial u- and v-coordinates, counted without multiplicity.

    ``u_profile`` is the one whose surviving variable is u (v eliminated).
    """
    return u_profile.nontrivial_degree(), v_profile.nontrivial_degree()


def pigeonhole_bound(u_count: int, v_count: int) -> IntersectionBound:
    """Six order-4 images, the four-element orbit of u, and four images per shared v."""
    if u_count <= 0 or v_count <= 0:
        raise ValueError("counts must be positive")
    m = -(-v_count // u_count)
    return IntersectionBound(u_count, v_count, m, 6 + 4 + 4 * m)


# -- delta pair ------------------------------------------------------------------------


class DegenerateUError(ValueError):
    pass


def delta_pair_from_u(u, tol=None):
    """The two roots d of 2u^3 d^2 + (u^4 - 1) d - 2u = 0, larger real part first.

    Rejects u^4 in {0, 1} and u^8 + 14u^4 + 1 = 0 (double root); ``tol``
    sets the numeric zero test and defaults to 2^(-prec/2).
    """
    u = mpmath.mpc(u)
    if tol is None:
        tol = mpmath.mpf(2) ** (-mpmath.mp.prec // 2)
    u4 = u ** 4
    if abs(u) < tol:
        raise DegenerateUError("u = 0")
    if abs(u4 - 1) < tol:
        raise DegenerateUError("u^4 = 1")
    disc = (u4 - 1) ** 2 + 16 * u4
    if abs(disc) < tol:
        raise DegenerateUError("u^8 + 14u^4 + 1 = 0")
    a, b = 2 * u ** 3, u4 - 1
    r = mpmath.sqrt(disc)
    # numerically stable pair
    qq = -(b + r) / 2 if mpmath.re(mpmath.conj(b) * r) >= 0 else -(b - r) / 2
    d1, d2 = qq / a, (-2 * u) / qq
    return tuple(sorted((d1, d2), key=lambda z: (float(mpmath.re(z)), float(mpmath.im(z))), reverse=True))


def expected_total_degree(profile: ResultantProfile) -> int:
    deg = profile.monomial_power
    deg += sum(f.degree() * e for f, e in profile.trivial)
    deg += sum(part.degree * part.multiplicity for part in profile.parts)
    return deg
