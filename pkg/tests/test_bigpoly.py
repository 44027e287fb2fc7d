import random

import pytest
from hypothesis import given, strategies as st

from torsionpairs.bigpoly import (
    MPoly,
    UnluckyPrimeError,
    arith,
    content_primitive,
    divexact,
    eval_mod,
    gcd_poly,
    gens,
    pseudo_divrem,
    resultant,
    resultant_modular,
    resultant_subres,
    squarefree_decompose,
    substitute_rational,
    word_primes,
)
from torsionpairs.bigpoly import kronecker, upoly

x, d, u, v, t = gens("x", "delta", "u", "v", "t")

small_int = st.integers(-10 ** 6, 10 ** 6)


def polys(names=("x", "delta"), max_deg=4, max_terms=6, coeff=small_int):
    exps = st.tuples(*[st.integers(0, max_deg) for _ in names])
    return st.dictionaries(exps, coeff, max_size=max_terms).map(lambda m: MPoly(m, names))


def upolys(var="x", max_deg=8, coeff=small_int, min_deg=0):
    return st.lists(coeff, min_size=min_deg + 1, max_size=max_deg + 1).map(
        lambda c: MPoly.from_univariate(c, var))


# -- ring laws --------------------------------------------------------------------------


@given(polys(), polys(), polys())
def test_ring_laws(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == 0


@given(polys(max_deg=12, max_terms=30, coeff=st.integers(-2 ** 200, 2 ** 200)),
       polys(max_deg=12, max_terms=30, coeff=st.integers(-2 ** 200, 2 ** 200)))
def test_dense_product_matches_schoolbook(f, g):
    f, g = f.with_vars(("x", "delta")), g.with_vars(("x", "delta"))
    expected: dict = {}
    for (a1, b1), c1 in f.as_dict().items():
        for (a2, b2), c2 in g.as_dict().items():
            key = (a1 + a2, b1 + b2)
            expected[key] = expected.get(key, 0) + c1 * c2
    assert f * g == MPoly(expected, ("x", "delta"))


@given(st.lists(st.integers(-2 ** 300, 2 ** 300), min_size=1, max_size=40),
       st.lists(st.integers(-2 ** 300, 2 ** 300), min_size=1, max_size=40))
def test_kronecker_matches_schoolbook(a, b):
    school = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            school[i + j] += ai * bj
    assert upoly.trim(kronecker.mul_dense(a, b)) == upoly.trim(school)


def test_arith_examples():
    assert arith(x + 1, x - 1, "mul") == x ** 2 - 1
    assert arith(x ** 3 + d, MPoly.const(0), "mul") == 0
    assert arith(x, 3, "pow") == x ** 3
    with pytest.raises(ValueError):
        arith(x, -1, "pow")


def test_f3_from_explicit_terms():
    from torsionpairs.curves import modified_division_poly

    three_terms = arith(arith(2 * x ** 3 * d ** 2, (x ** 4 - 1) * d, "add"), -2 * x, "add")
    assert three_terms == modified_division_poly(3)


def test_zero_degree_sentinel():
    from torsionpairs.bigpoly import ZERO_DEGREE

    assert MPoly.const(0).degree() == ZERO_DEGREE
    assert MPoly.const(0).degree() < 0 < 1


@given(st.integers(-10 ** 80, 10 ** 80))
def test_bigint_decimal_round_trip(n):
    f = MPoly.const(n) * x
    assert MPoly.from_text(f.to_text()) == f
    assert int(str(n)) == n


@given(polys(names=("x", "delta", "u"), coeff=st.integers(-2 ** 100, 2 ** 100)))
def test_text_round_trip(f):
    assert MPoly.from_text(f.to_text()) == f


def test_terms_are_canonical():
    f = 3 * x * d + x ** 2 + 5 + d ** 2 - x ** 2
    exps = [e for e, _ in f.terms()]
    assert len(set(exps)) == len(exps)
    assert all(c != 0 for _, c in f.terms())
    assert exps == sorted(exps, key=lambda e: (sum(e), e), reverse=True)


# -- pseudo-division -------------------------------------------------------------------


@given(polys(names=("u", "delta"), max_deg=5), polys(names=("u", "delta"), max_deg=3))
def test_pseudo_division_identity(f, g):
    if g.degree("delta") < 1:
        return
    q, r, k = pseudo_divrem(f, g, "delta")
    assert g.lc_in("delta") ** k * f == q * g + r
    assert r.is_zero() or r.degree("delta") < g.degree("delta")


def test_pseudo_division_examples():
    g = 2 * u ** 3 * d ** 2 + (u ** 4 - 1) * d - 2 * u
    q, r, k = pseudo_divrem(d ** 2, g, "delta")
    assert r.degree("delta") == 1
    assert g.lc_in("delta") ** k * d ** 2 == q * g + r
    _, r, _ = pseudo_divrem(g, g, "delta")
    assert r == 0
    with pytest.raises(ZeroDivisionError):
        pseudo_divrem(g, MPoly.const(0), "delta")


# -- content, gcd ----------------------------------------------------------------------


def test_content_primitive_examples():
    assert content_primitive(6 * x ** 2 + 9 * x) == (3, 2 * x ** 2 + 3 * x, 1)
    c, prim, sign = content_primitive(MPoly.const(-4))
    assert (c, prim, sign) == (4, 1, -1)
    assert content_primitive(MPoly.const(0))[0] == 0


@given(polys(coeff=st.integers(-10 ** 30, 10 ** 30)))
def test_content_primitive_contract(f):
    c, prim, sign = content_primitive(f)
    assert prim * (sign * c) == f
    if f:
        assert c > 0 and prim.leading_coefficient() > 0 and prim.content() == 1


def test_gcd_examples():
    assert gcd_poly(x ** 2 - 1, x - 1) == x - 1
    assert gcd_poly(6 * x ** 2 + 9 * x, MPoly.const(0)) == 2 * x ** 2 + 3 * x
    assert gcd_poly((x + d) * (x - 2 * d), (x + d) * (x + 3)) == x + d


def _random_squarefree_coprime(rng):
    while True:
        A = MPoly.from_univariate([rng.randint(-9, 9) for _ in range(rng.randint(2, 5))], "x")
        B = MPoly.from_univariate([rng.randint(-9, 9) for _ in range(rng.randint(2, 5))], "x")
        if A.degree() < 1 or B.degree() < 1:
            continue
        ok = (gcd_poly(A, A.diff("x")).is_constant() and gcd_poly(B, B.diff("x")).is_constant()
              and gcd_poly(A, B).is_constant())
        if ok:
            return A, B


@pytest.mark.parametrize("seed", range(8))
def test_gcd_with_derivative_detects_cube(seed):
    A, B = _random_squarefree_coprime(random.Random(seed))
    f = A * B ** 3
    g = gcd_poly(f, f.diff("x"))
    assert g.degree() == 2 * B.degree()
    assert divexact(f, g) is not None and divexact(f.diff("x"), g) is not None


@given(upolys(max_deg=6), upolys(max_deg=6), upolys(max_deg=3, min_deg=1))
def test_gcd_divides_and_contains_planted_factor(f, g, h):
    if f.is_zero() or g.is_zero() or h.degree() < 1:
        return
    G = gcd_poly(f * h, g * h)
    assert divexact(f * h, G) is not None and divexact(g * h, G) is not None
    assert divexact(G, content_primitive(h)[1]) is not None


# -- resultants -------------------------------------------------------------------------


def test_resultant_examples():
    assert resultant(x - 2, x ** 2 + 1, "x") == 5
    f, g = x ** 3 + d * x + 1, d * x ** 2 - x + d ** 2
    assert resultant(f, g, "x") == resultant(g, f, "x")  # (-1)^(3*2) = 1


@given(upolys(max_deg=6, min_deg=1), upolys(max_deg=6, min_deg=1))
def test_resultant_swap_sign(f, g):
    if f.degree() < 1 or g.degree() < 1:
        return
    s = (-1) ** (f.degree() * g.degree())
    assert resultant(f, g, "x") == s * resultant(g, f, "x")


def _bareiss_det(rows):
    m = [list(r) for r in rows]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def test_resultant_is_sylvester_determinant():
    rng = random.Random(5)
    for _ in range(5):
        a = [rng.randint(-50, 50) for _ in range(5)] + [rng.randint(1, 9)]
        b = [rng.randint(-50, 50) for _ in range(3)] + [rng.randint(1, 9)]
        n, m = len(a) - 1, len(b) - 1
        rows = []
        for i in range(m):
            rows.append([0] * i + a[::-1] + [0] * (m - 1 - i))
        for i in range(n):
            rows.append([0] * i + b[::-1] + [0] * (n - 1 - i))
        det = _bareiss_det(rows)
        assert resultant(MPoly.from_univariate(a, "x"), MPoly.from_univariate(b, "x"), "x") == det


@given(polys(names=("x", "delta"), max_deg=3, max_terms=5, coeff=st.integers(-20, 20)),
       polys(names=("x", "delta"), max_deg=3, max_terms=5, coeff=st.integers(-20, 20)),
       polys(names=("x", "delta"), max_deg=2, max_terms=3, coeff=st.integers(-20, 20)))
def test_resultant_vanishes_on_common_factor(f, g, h):
    if h.degree("x") < 1 or (f * h).degree("x") < 1 or (g * h).degree("x") < 1:
        return
    if f.is_zero() or g.is_zero():
        return
    assert resultant_subres(f * h, g * h, "x") == 0


@given(upolys(max_deg=6, min_deg=1, coeff=st.integers(-30, 30)),
       upolys(max_deg=6, min_deg=1, coeff=st.integers(-30, 30)))
def test_resultant_nonzero_when_coprime(f, g):
    if f.degree() < 1 or g.degree() < 1:
        return
    common = gcd_poly(f, g)
    assert (resultant(f, g, "x") == 0) == (common.degree() >= 1)


bivariate_64 = polys(names=("x", "delta"), max_deg=6, max_terms=10,
                     coeff=st.integers(-2 ** 63, 2 ** 63))


@given(bivariate_64, bivariate_64)
def test_modular_agrees_with_direct(f, g):
    if f.degree("x") < 1 or g.degree("x") < 1 or f.degree() > 12 or g.degree() > 12:
        return
    if "delta" not in set(f.used_vars()) | set(g.used_vars()):
        return
    direct = resultant_subres(f, g, "x")
    modular = resultant_modular(f, g, "x", "delta")
    assert modular == direct


def test_modular_route_p3_sized_inputs():
    from torsionpairs.curves import modified_division_poly

    F3 = modified_division_poly(3)
    F3u = F3.rename({"x": "u"})
    G = F3.subs("x", 2 * u + 1)
    direct = resultant_subres(F3u, G, "delta")
    assert resultant_modular(F3u, G, "delta", "u") == direct
    assert resultant_modular(F3u, G, "delta", "u", workers=2) == direct


# -- modular images --------------------------------------------------------------------


def test_eval_mod_examples():
    assert eval_mod(x ** 2 - 1, {"x": 3}, 7) == 1
    with pytest.raises(ValueError):
        eval_mod(x, {"x": 1}, 2)
    with pytest.raises(UnluckyPrimeError):
        eval_mod(7 * x ** 2 + d * x, {"delta": 2}, 7, main_var="x")


@given(polys(coeff=st.integers(-2 ** 90, 2 ** 90)), polys(coeff=st.integers(-2 ** 90, 2 ** 90)),
       st.integers(0, 10 ** 12), st.integers(0, 10 ** 12), st.sampled_from(word_primes(4)))
def test_eval_mod_is_a_homomorphism(f, g, a, b, q):
    point = {"x": a, "delta": b}
    assert eval_mod(f * g, point, q) == eval_mod(f, point, q) * eval_mod(g, point, q) % q
    assert eval_mod(f + g, point, q) == (eval_mod(f, point, q) + eval_mod(g, point, q)) % q


def test_resultant_image_matches_exact_resultant():
    from torsionpairs.bigpoly.modular import resultant_mod
    import numpy as np

    from torsionpairs.curves import modified_division_poly

    F3 = modified_division_poly(3).rename({"x": "u"})
    G = F3.subs("u", u + 3) + 5 * u
    exact = resultant_subres(F3, G, "delta")
    for q in word_primes(3):
        for a in (2, 11, 123456):
            fa = eval_mod(F3, {"u": a}, q)
            ga = eval_mod(G, {"u": a}, q)
            img = resultant_mod(np.array(fa.to_univariate("delta"), dtype=np.int64),
                                np.array(ga.to_univariate("delta"), dtype=np.int64), q)
            assert img == eval_mod(exact, {"u": a}, q)


# -- squarefree ------------------------------------------------------------------------


def test_squarefree_examples():
    dec = squarefree_decompose(x ** 3)
    assert dec.content == 1 and dec.degrees() == [(1, 3)]
    dec = squarefree_decompose((x - 1) ** 2 * (x + 2))
    assert [(f, m) for f, m in dec.factors] == [(x + 2, 1), (x - 1, 2)]
    with pytest.raises(ValueError):
        squarefree_decompose(MPoly.const(0))


@given(st.lists(st.tuples(upolys(max_deg=3, coeff=st.integers(-9, 9)), st.integers(1, 4)), max_size=4),
       st.integers(-50, 50))
def test_squarefree_reexpands(pieces, c):
    if c == 0:
        return
    f = MPoly.const(c)
    for p, m in pieces:
        if p.is_zero():
            continue
        f = f * p ** m
    dec = squarefree_decompose(f)
    assert dec.expand() == f
    mults = [m for _, m in dec.factors]
    assert mults == sorted(set(mults))
    for g, _ in dec.factors:
        assert gcd_poly(g, g.diff("x")).is_constant()
    for i, (g, _) in enumerate(dec.factors):
        for h, _ in dec.factors[i + 1:]:
            assert gcd_poly(g, h).is_constant()


# -- substitution ---------------------------------------------------------------------


def test_substitute_rational_examples():
    assert substitute_rational(x ** 2, "x", MPoly.const(1), d) == 1
    f = 3 * d + 1
    assert substitute_rational(f, "x", x + 1, d) == f
    num = (d ** 2 + 1) * (d * x - 1)
    den = 2 * d * (x - d)
    assert substitute_rational(x, "x", num, den) == num
    with pytest.raises(ZeroDivisionError):
        substitute_rational(x, "x", x, MPoly.const(0))


@given(upolys(max_deg=5, coeff=st.integers(-20, 20)), st.integers(-5, 5), st.integers(1, 5))
def test_substitute_rational_clears_denominator(f, a, b):
    from fractions import Fraction

    n = max(f.degree("x"), 0) if f else 0
    g = substitute_rational(f, "x", MPoly.const(a), MPoly.const(b))
    value = f.evaluate({"x": Fraction(a, b)}) if f.used_vars() else (f.constant_value() if f else 0)
    got = g.constant_value() if g else 0
    assert got == value * b ** n
