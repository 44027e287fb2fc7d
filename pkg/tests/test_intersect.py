from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from torsionpairs.bigpoly import MPoly, gens
from torsionpairs.curves import modified_division_poly
from torsionpairs.intersect import (
    CompressedPair,
    DegenerateUError,
    ReductionPair,
    ShapeError,
    ZeroResultantError,
    compress,
    compress_poly,
    coordinate_counts,
    cosine_factor,
    decompress,
    decompress_poly,
    delta_pair_from_u,
    expected_total_degree,
    pigeonhole_bound,
    profile_of,
    reduce_Fp_mod_F3,
    resultant_profile,
    trivial_factors,
)

from conftest import pair, profile

u, v, s, w = gens("u", "v", "s", "w")


def _rem_in_delta(p: int, u0: int, v0: int) -> list[Fraction]:
    """Remainder of F_p(v0, d) on division by F_3(u0, d) over Q, lowest degree first."""
    def coeffs(F, x0):
        c = F.coeffs_in("delta")
        return [Fraction(c[k].evaluate({"x": x0})) if k in c else Fraction(0)
                for k in range(F.degree("delta") + 1)]

    f = coeffs(modified_division_poly(p), v0)
    g = coeffs(modified_division_poly(3), u0)
    while len(f) >= len(g):
        q = f[-1] / g[-1]
        shift = len(f) - len(g)
        for k in range(len(g)):
            f[shift + k] -= q * g[k]
        f.pop()
    return f


# -- reduction ------------------------------------------------------------------------


def test_reduction_p7_shape(pair7):
    assert pair7.c0.degree() == 58 and len(pair7.c0) == 177
    assert pair7.c1.degree() == 62 and len(pair7.c1) == 202


@pytest.mark.parametrize("u0,v0", [(2, 3), (-3, 5), (5, -7)])
def test_reduction_matches_rational_division(pair7, u0, v0):
    raw0, raw1 = pair7.raw()
    r = _rem_in_delta(7, u0, v0)
    lc = Fraction(2 * u0 ** 3) ** pair7.scale_power
    assert Fraction(raw0.evaluate({"u": u0, "v": v0})) == lc * r[0]
    assert Fraction(raw1.evaluate({"u": u0, "v": v0})) == lc * r[1]


def test_reduction_normalized(pair7):
    for c in (pair7.c0, pair7.c1):
        assert c.content() == 1
        assert not any(c.monomial_content().values())


def test_reduction_rejects_small_p():
    with pytest.raises(ValueError):
        reduce_Fp_mod_F3(3)


# -- compression ------------------------------------------------------------------------


def test_compress_roundtrip_p7(pair7):
    cp = compress(pair7)
    assert (cp.k0, cp.k1) == (10, 10)
    assert decompress(cp) == (pair7.c0, pair7.c1)


def test_compress_small_example():
    f = u ** 3 * v + u ** 8 - 2 * u ** 4 * v ** 4
    d, k = compress_poly(f)
    assert k == 4
    assert d == w + s - 2 * s * w ** 4
    assert decompress_poly(d, k) == f


def test_compress_rejects_bad_shape():
    with pytest.raises(ShapeError):
        compress_poly(u + v ** 2)


# -- trivial factors -------------------------------------------------------------------------


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_cosine_factor_roots(p):
    f = cosine_factor(p)
    assert f.degree() == (p - 1) // 2
    with mpmath.workprec(128):
        for k in range(1, (p - 1) // 2 + 1):
            r = -1 / (2 * mpmath.cos(2 * mpmath.pi * k / p))
            assert abs(f.evaluate({"w": r})) < mpmath.mpf(2) ** -100


def test_cosine_factor_examples():
    assert cosine_factor(5) == w ** 2 + w - 1
    assert cosine_factor(7) == w ** 3 - 2 * w ** 2 - w + 1


def test_trivial_factors_by_variable():
    assert trivial_factors("u", 7) == (u ** 4 - 1,)
    assert trivial_factors("s", 7) == (s - 1,)
    assert trivial_factors("w", 7)[:2] == (w - 1, w + 1)


# -- profiles ------------------------------------------------------------------------------


def test_profile_of_synthetic():
    R = -24 * u ** 3 * (u ** 4 - 1) ** 2 * (u ** 2 + 3) ** 2 * (u + 5)
    P = profile_of(R, 7, "v", "u")
    assert (P.sign, P.two_power, P.odd_content, P.monomial_power) == (-1, 3, 3, 3)
    assert P.trivial == [(u ** 4 - 1, 2)]
    assert sorted((pt.degree, pt.multiplicity) for pt in P.parts) == [(1, 1), (2, 2)]
    assert P.expand() == R
    assert expected_total_degree(P) == P.total_degree == R.degree()


def test_zero_resultant_reports_common_factor():
    c0 = (u - v) * (u + 1)
    c1 = (u - v) * (v + 2)
    fake = ReductionPair(7, c0, c1, 0, None, None)
    with pytest.raises(ZeroResultantError) as err:
        resultant_profile(fake, "v", workers=1)
    assert err.value.common in (u - v, v - u)


def test_profile_p7_eliminate_v(u_profile7):
    P = u_profile7
    assert P.total_degree == 1692
    assert (P.two_power, P.odd_content, P.monomial_power) == (240, 1, 900)
    assert P.trivial == [(u ** 4 - 1, 132)]
    rows = {(pt.degree, pt.multiplicity): pt for pt in P.parts}
    assert sorted(rows) == [(48, 1), (72, 3)]
    lead, second = rows[(48, 1)].leading_pair()
    assert Fraction(second, lead) == Fraction(24352, 128)
    assert rows[(72, 3)].leading_pair() == (1, 16)
    assert P.expand() == P.resultant


def test_profile_p7_eliminate_u(v_profile7):
    P = v_profile7
    assert P.total_degree == 692 + 4 * 132 + 264
    assert (P.two_power, P.monomial_power) == (320, 692)
    assert P.trivial == [(v ** 4 - 1, 132)]
    assert P.degree_table() == [(48, 1), (216, 1)]
    assert P.expand() == P.resultant


def test_compressed_p7_profiles_match_uncompressed():
    Pw = profile(7, "w")
    assert (Pw.two_power, Pw.monomial_power) == (240, 249)
    assert Pw.trivial == [(s - 1, 132)]
    assert sorted((pt.degree, pt.multiplicity) for pt in Pw.parts) == [(12, 1), (18, 3)]
    Ps = profile(7, "s")
    assert [(f, e) for f, e in Ps.trivial] == [(w - 1, 72), (w + 1, 60), (cosine_factor(7), 3)]
    assert Ps.degree_table() == [(12, 1), (54, 1)]
    # s = u^4 multiplies u-degrees by 4
    assert 4 * Pw.nontrivial_degree() == profile(7, "v").nontrivial_degree()


def test_compressed_requires_matching_variable():
    with pytest.raises(ValueError):
        resultant_profile(pair(7), "s")


# -- counting -------------------------------------------------------------------------------


def test_counts_and_bound_p7(u_profile7, v_profile7):
    assert coordinate_counts(u_profile7, v_profile7) == (120, 264)
    b = pigeonhole_bound(120, 264)
    assert (b.multiplicity, b.cardinality) == (3, 22)


@given(st.integers(1, 10 ** 6), st.integers(1, 10 ** 6))
def test_pigeonhole_bound_properties(nu, nv):
    b = pigeonhole_bound(nu, nv)
    assert b.multiplicity * nu >= nv > (b.multiplicity - 1) * nu
    assert b.cardinality == 10 + 4 * b.multiplicity


def test_pigeonhole_bound_rejects_empty():
    with pytest.raises(ValueError):
        pigeonhole_bound(0, 3)


# -- delta pair -----------------------------------------------------------------------------


def _F3(x, dv):
    return 2 * x ** 3 * dv ** 2 + (x ** 4 - 1) * dv - 2 * x


@given(st.complex_numbers(min_magnitude=0.05, max_magnitude=20, allow_nan=False, allow_infinity=False))
def test_delta_pair_roots(z):
    with mpmath.workprec(200):
        z = mpmath.mpc(z)
        if abs(z ** 4 - 1) < 1e-3 or abs(z ** 8 + 14 * z ** 4 + 1) < 1e-3:
            return
        d1, d2 = delta_pair_from_u(z)
        scale = 1 + abs(z) ** 4
        for dv in (d1, d2):
            assert abs(_F3(z, dv)) <= mpmath.mpf(2) ** -150 * scale * (1 + abs(dv)) ** 2
        assert abs(d1 * d2 + 1 / z ** 2) <= mpmath.mpf(2) ** -150 * (1 + abs(1 / z ** 2))
        assert (mpmath.re(d1), mpmath.im(d1)) >= (mpmath.re(d2), mpmath.im(d2))


def test_delta_pair_degenerate():
    root = mpmath.exp(1j * mpmath.pi / 4) * mpmath.sqrt(2 - mpmath.sqrt(3))
    for bad in (0, 1, 1j, root):
        with pytest.raises(DegenerateUError):
            delta_pair_from_u(bad)


def test_compressed_pair_type():
    cp = compress(pair(7))
    assert isinstance(cp, CompressedPair) and cp.p == 7
    assert isinstance(cp.d0, MPoly)
