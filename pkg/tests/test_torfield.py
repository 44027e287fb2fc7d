from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from torsionpairs.bigpoly import MPoly
from torsionpairs.curves import numeric_torsion_oracle
from torsionpairs.torfield import (
    MonicCubic,
    MonicQuartic,
    QPoly,
    cube_root_identity_check,
    discriminant,
    f3_of_cube_curve,
    lambda_j_equivalence_check,
    resolvent_cubic,
)

a = MPoly.gen("a")


def _q(num, den=1):
    return QPoly(MPoly.const(num) if isinstance(num, int) else num, den)


EXPECTED_QUARTIC = MonicQuartic(_q(-4 * a, 3), _q(-2 * a), _q(4 * a ** 2), _q(-4 * a ** 3 - a ** 2, 3))
EXPECTED_CUBIC = MonicCubic(_q(2 * a), _q(4 * a ** 2, 3), _q(64 * a ** 5 - 128 * a ** 4 + 72 * a ** 3, 27))


def test_quartic_closed_form():
    assert f3_of_cube_curve() == EXPECTED_QUARTIC


def test_resolvent_closed_form():
    assert resolvent_cubic(f3_of_cube_curve()) == EXPECTED_CUBIC


def test_cube_root_identity():
    assert cube_root_identity_check()


def test_cube_root_identity_detects_mutation():
    bad = MonicCubic(EXPECTED_CUBIC.c2, EXPECTED_CUBIC.c1, EXPECTED_CUBIC.c0 + _q(a ** 3))
    assert not cube_root_identity_check(bad)


def test_lambda_j_equivalence():
    assert lambda_j_equivalence_check()
    assert not lambda_j_equivalence_check(constant=13)


def test_resolvent_of_x4():
    q = MonicQuartic(_q(0), _q(0), _q(0), _q(0))
    assert resolvent_cubic(q) == MonicCubic(_q(0), _q(0), _q(0))


def test_quartic_at_a_zero_is_x4():
    q = f3_of_cube_curve()
    assert [c.evaluate({"a": 0}) for c in q.coeffs()] == [0, 0, 0, 0, 1]


@pytest.mark.parametrize("roots", [(1, -1, 2, -2), (1, 2, 3, 5), (Fraction(1, 2), -3, 7, 0)])
def test_resolvent_pairings(roots):
    x = MPoly.gen("x")
    f = MPoly.const(1)
    for r in roots:
        f = f * (x - MPoly.const(r)) if isinstance(r, int) else f * (r.denominator * x - r.numerator)
    lead = f.to_univariate("x")[-1]
    c = [Fraction(v, lead) for v in f.to_univariate("x")]
    q = MonicQuartic(*(QPoly(MPoly.const(v.numerator), v.denominator) for v in (c[3], c[2], c[1], c[0])))
    rc = resolvent_cubic(q)
    r1, r2, r3, r4 = (Fraction(r) for r in roots)
    for pair_sum in (r1 * r2 + r3 * r4, r1 * r3 + r2 * r4, r1 * r4 + r2 * r3):
        assert rc.evaluate(pair_sum, 0) == 0


@given(st.fractions(min_value=-20, max_value=20, max_denominator=50))
def test_resolvent_commutes_with_specialization(a0):
    q = f3_of_cube_curve()
    rc = resolvent_cubic(q)
    # specialize first, then take the resolvent of the numeric quartic
    qs = MonicQuartic(*(_frac(c.evaluate({"a": a0})) for c in (q.p3, q.p2, q.p1, q.p0)))
    rs = resolvent_cubic(qs)
    for c_gen, c_num in zip(rc.coeffs(), rs.coeffs()):
        assert c_gen.evaluate({"a": a0}) == c_num.evaluate({})


def _frac(v: Fraction) -> QPoly:
    return QPoly(MPoly.const(v.numerator), v.denominator)


def test_discriminant_examples():
    # x^2 - a: 4a ; x^3 + a x + 1: -4a^3 - 27
    assert discriminant([_q(-a), _q(0), _q(1)]) == _q(4 * a)
    assert discriminant([_q(1), _q(a), _q(0), _q(1)]) == _q(-4 * a ** 3 - 27)


def test_discriminants_of_quartic_and_resolvent_agree():
    q = f3_of_cube_curve()
    assert discriminant(q.coeffs()) == discriminant(resolvent_cubic(q).coeffs())


def test_quartic_roots_match_oracle():
    # a = 2: the curve y^2 = x^3 - 2x^2 - 2x + 4
    q = f3_of_cube_curve()
    coeffs = [c.evaluate({"a": 2}) for c in q.coeffs()]
    with mpmath.workprec(256):
        xs = numeric_torsion_oracle(-2, -2, 4, 3, bits=256)
        assert len(xs) == 4
        for x0 in xs:
            val = sum(mpmath.mpf(c.numerator) / c.denominator * x0 ** k for k, c in enumerate(coeffs))
            assert abs(val) < mpmath.mpf(2) ** -200
        # resolvent roots are the pairing sums of the oracle roots
        rc = [c.evaluate({"a": 2}) for c in resolvent_cubic(q).coeffs()]
        sums = [xs[0] * xs[k] + xs[m] * xs[n] for k, m, n in ((1, 2, 3), (2, 1, 3), (3, 1, 2))]
        for z in sums:
            val = sum(mpmath.mpf(c.numerator) / c.denominator * z ** k for k, c in enumerate(rc))
            assert abs(val) < mpmath.mpf(2) ** -190


@pytest.mark.parametrize("a0", [2, 5, Fraction(-3, 2)])
def test_resolvent_roots_cube_root_form(a0):
    rc = [c.evaluate({"a": a0}) for c in resolvent_cubic(f3_of_cube_curve()).coeffs()]
    with mpmath.workprec(200):
        am = mpmath.mpf(a0.numerator) / a0.denominator if isinstance(a0, Fraction) else mpmath.mpf(a0)
        t = mpmath.cbrt((am - 1) ** 2)
        for k in range(3):
            z = -2 * am / 3 - 4 * am / 3 * t * mpmath.exp(2j * mpmath.pi * k / 3)
            val = sum(mpmath.mpf(c.numerator) / c.denominator * z ** n for n, c in enumerate(rc))
            assert abs(val) < mpmath.mpf(2) ** -150 * (1 + abs(z)) ** 3 * (1 + abs(am)) ** 5
