"""A checkable record of 22 common projective torsion images of E_d1 and E_d2.

The record holds, for a root u of the multiplicity-3 factor of Res_v(C_0, C_1):
the two curve parameters d1, d2 with F_3(u, d_i) = 0; three common roots v_k
of C_0(u, .) and C_1(u, .), which satisfy F_p(v_k, d_i) = 0; the orbits
{+-u^{+-1}} and {+-v_k^{+-1}}; and the six exact order-4 images.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import mpmath
from mpmath import mpc, mpf

from ..bigpoly import MPoly
from ..curves import POINT_AT_INFINITY, modified_division_poly
from ..intersect import ReductionPair, delta_pair_from_u, reduce_Fp_mod_F3, resultant_profile
from .ball import ComplexBall, horner
from .roots import roots_univariate

FORMAT = "torsionpairs-certificate/1"
EXACT_ORDER4 = ("0", "inf", "1", "-1", "i", "-i")
ORBIT_MAPS = ("id", "neg", "inv", "neginv")


class CertificateError(ArithmeticError):
    pass


def _log2_upper(x: mpf) -> int:
    """Smallest integer e with x <= 2^e (very negative for x = 0)."""
    if x == 0:
        return -(10 ** 6)
    m, e = mpmath.frexp(x)
    return int(e) if m != 0.5 else int(e) - 1


def ball_of_poly_in(f: MPoly, var: str, values: dict) -> list[ComplexBall]:
    """Coefficients of f in ``var`` with every other variable set to a ball."""
    out = []
    parts = f.coeffs_in(var)
    for k in range(f.degree(var) + 1):
        c = parts.get(k)
        if c is None or c.is_zero():
            out.append(ComplexBall(mpc(0), mpf(0)))
            continue
        out.append(ComplexBall.coerce(c.evaluate(values)) if c.used_vars() else ComplexBall.exact(c.constant_value()))
    return out


def _relative_residual(f: MPoly, values: dict) -> mpf:
    """|f(values)| divided by sum |c| prod |values|^e, as an upper bound."""
    val = ComplexBall.coerce(f.evaluate(values))
    scale = mpf(0)
    mags = {k: abs(v.mid) for k, v in values.items()}
    for exp, c in f.as_dict().items():
        t = mpf(abs(c))
        for name, e in zip(f.vars, exp):
            if e:
                t *= mags[name] ** e
        scale += t
    return val.upper() / scale if scale else val.upper()


def common_v_roots(u0: ComplexBall, pair: ReductionPair, bits: int, tol_log2: int | None = None) -> list[ComplexBall]:
    """Roots v of C_0(u0, .) at which C_1(u0, .) also vanishes (relative residual below tolerance)."""
    if tol_log2 is None:
        tol_log2 = -(bits // 4)
    tol = mpf(2) ** tol_log2
    with mpmath.workprec(bits):
        coeffs = ball_of_poly_in(pair.c0, "v", {"u": u0})
        vs = roots_univariate(coeffs, bits)
        out = []
        for v in vs:
            if _relative_residual(pair.c1, {"u": u0, "v": v}) < tol:
                out.append(v)
    return out


# -- data ---------------------------------------------------------------------


@dataclass
class CertPoint:
    label: str
    order: int
    value: ComplexBall | str           # str for the exact order-4 images
    base: int | None = None           # index of the orbit preimage in the point list
    map: str = "id"
    residuals_log2: list[int] = field(default_factory=list)


@dataclass
class Certificate:
    p: int
    bits: int
    tol_log2: int
    u: ComplexBall
    u_source: dict
    deltas: tuple[ComplexBall, ComplexBall]
    points: list[CertPoint]

    def order_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for pt in self.points:
            counts[pt.order] = counts.get(pt.order, 0) + 1
        return dict(sorted(counts.items()))

    # -- serialization --

    def to_json(self) -> str:
        with mpmath.workprec(self.bits):
            doc = {
                "format": FORMAT,
                "p": self.p,
                "bits": self.bits,
                "tolerance_log2": self.tol_log2,
                "u": {"ball": _ball_json(self.u, self.bits), **self.u_source},
                "delta": [_ball_json(d, self.bits) for d in self.deltas],
                "points": [_point_json(pt, self.bits) for pt in self.points],
            }
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        doc = json.loads(text)
        if doc.get("format") != FORMAT:
            raise ValueError("unknown certificate format")
        bits = int(doc["bits"])
        with mpmath.workprec(bits):
            u = _ball_parse(doc["u"]["ball"])
            source = {k: v for k, v in doc["u"].items() if k != "ball"}
            deltas = tuple(_ball_parse(b) for b in doc["delta"])
            points = []
            for e in doc["points"]:
                value = e["value"] if isinstance(e["value"], str) else _ball_parse(e["value"])
                points.append(CertPoint(e["label"], int(e["order"]), value, e.get("base"), e.get("map", "id"),
                                        list(e.get("residuals_log2", []))))
        return cls(int(doc["p"]), bits, int(doc["tolerance_log2"]), u, source, deltas, points)


def _digits(bits: int) -> int:
    return int(bits * math.log10(2)) + 6


def _ball_json(b: ComplexBall, bits: int) -> dict:
    """Decimal midpoints plus a power-of-two radius covering the decimal rounding."""
    digits = _digits(bits)
    re = mpmath.nstr(b.mid.real, digits, strip_zeros=False, min_fixed=1, max_fixed=0)
    im = mpmath.nstr(b.mid.imag, digits, strip_zeros=False, min_fixed=1, max_fixed=0)
    with mpmath.workprec(bits + 64):
        back = mpc(mpf(re), mpf(im))
        rad = b.rad + abs(back - b.mid) * (1 + mpf(2) ** -60)
    return {"re": re, "im": im, "rad_log2": _log2_upper(rad) + 1}


def _ball_parse(d: dict) -> ComplexBall:
    mid = mpc(mpf(d["re"]), mpf(d["im"]))
    # parsing rounds to the working precision; fold that error into the radius
    with mpmath.workprec(mpmath.mp.prec + 64):
        exact = mpc(mpf(d["re"]), mpf(d["im"]))
        err = abs(exact - mid)
    return ComplexBall(mid, mpf(2) ** int(d["rad_log2"]) + err * 2)


def _point_json(pt: CertPoint, bits: int) -> dict:
    out = {"label": pt.label, "order": pt.order, "map": pt.map, "base": pt.base,
           "residuals_log2": pt.residuals_log2}
    out["value"] = pt.value if isinstance(pt.value, str) else _ball_json(pt.value, bits)
    return out


# -- building -------------------------------------------------------------------


def _apply_map(name: str, z: ComplexBall) -> ComplexBall:
    if name == "id":
        return z
    if name == "neg":
        return -z
    if name == "inv":
        return z.inverse()
    if name == "neginv":
        return -z.inverse()
    raise ValueError(name)


def _exact_value(sym: str):
    return {"0": 0, "1": 1, "-1": -1, "i": 1j, "-i": -1j}[sym]


def _residual_log2(F: MPoly, z: ComplexBall, d: ComplexBall) -> int:
    coeffs = ball_of_poly_in(F, "x", {"delta": d})
    return _log2_upper(horner(coeffs, z).upper())


def _family_poly(order: int, p: int) -> MPoly:
    return modified_division_poly(3 if order in (3, 6) else p)


def build_certificate(p: int = 7, bits: int = 512, tol_log2: int = -128, workers: int | None = None,
                      pair: ReductionPair | None = None, u_part: MPoly | None = None) -> Certificate:
    """Assemble and self-check a 22-point certificate (raises CertificateError on any failed check)."""
    if pair is None:
        pair = reduce_Fp_mod_F3(p)
    if u_part is None:
        profile = resultant_profile(pair, "v", workers=workers, factor=False)
        cubed = [part for part in profile.parts if part.multiplicity == 3]
        if not cubed:
            raise CertificateError("no multiplicity-3 part in the u-side profile")
        u_part = cubed[0].poly
    with mpmath.workprec(bits):
        us = roots_univariate(u_part, bits)
        u = us[0]
        d1m, d2m = delta_pair_from_u(u.mid)
        deltas = tuple(_delta_ball(u, d) for d in (d1m, d2m))
        vs = common_v_roots(u, pair, bits, tol_log2=tol_log2)
        if len(vs) < 3:
            raise CertificateError(f"only {len(vs)} common v-roots at u = {mpmath.nstr(u.mid, 15)}")
        vs = vs[:3]
        points = [CertPoint(f"order4:{s}", 4, s) for s in EXACT_ORDER4]
        base_u = len(points)
        for k, name in enumerate(ORBIT_MAPS):
            points.append(CertPoint(f"u:{name}", 3 if name == "id" else 6, _apply_map(name, u),
                                    None if name == "id" else base_u, name))
        for j, v in enumerate(vs, start=1):
            base_v = len(points)
            for name in ORBIT_MAPS:
                points.append(CertPoint(f"v{j}:{name}", p if name == "id" else 2 * p, _apply_map(name, v),
                                        None if name == "id" else base_v, name))
        cert = Certificate(p, bits, tol_log2, u, {"factor_degree": u_part.degree(), "multiplicity": 3,
                                                  "root_index": 0, "eliminated": "v"}, deltas, points)
        for pt in points:
            if pt.order == 4:
                continue
            pre = pt.value if pt.base is None else points[pt.base].value
            F = _family_poly(pt.order, p)
            pt.residuals_log2 = [_residual_log2(F, pre, d) for d in deltas]
    report = verify_certificate(cert)
    if not report.passed:
        raise CertificateError("; ".join(report.failures))
    return cert


def _delta_ball(u: ComplexBall, d: mpc) -> ComplexBall:
    """Certified ball around a root d of 2u^3 x^2 + (u^4 - 1) x - 2u."""
    from .roots import inclusion_radius

    coeffs = [-2 * u, u ** 4 - 1, 2 * u ** 3]
    return ComplexBall(mpc(d), inclusion_radius(coeffs, d))


# -- verification -----------------------------------------------------------------


@dataclass
class VerificationReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(ok for _, ok, _ in self.checks)

    @property
    def failures(self) -> list[str]:
        return [f"{name}: {detail}" for name, ok, detail in self.checks if not ok]


def verify_certificate(cert: Certificate) -> VerificationReport:
    """Recheck every claim from the certificate data and the exact F_3, F_p alone."""
    rep = VerificationReport()
    with mpmath.workprec(cert.bits):
        tol = mpf(2) ** cert.tol_log2
        d1, d2 = cert.deltas
        F3 = modified_division_poly(3)
        Fp = modified_division_poly(cert.p)
        pts = cert.points
        rep.add("point count", len(pts) == 22, f"{len(pts)} points")
        expected = {4: 6, 3: 1, 6: 3, cert.p: 3, 2 * cert.p: 9}
        rep.add("order multiset", cert.order_counts() == dict(sorted(expected.items())), str(cert.order_counts()))
        # u is a root of F_3(., d_i) for both d_i; d_i are roots of F_3(u, .)
        u = cert.u
        for i, d in enumerate((d1, d2), start=1):
            r = horner([-2 * u, u ** 4 - 1, 2 * u ** 3], d).upper()
            rep.add(f"delta{i} root of F_3(u, .)", r < tol, f"residual 2^{_log2_upper(r)}")
        # two-torsion image sets are disjoint and the deltas are not degenerate
        two1 = [_apply_map(m, d1) for m in ORBIT_MAPS]
        two2 = [_apply_map(m, d2) for m in ORBIT_MAPS]
        clash = [(a, b) for a in two1 for b in two2 if a.overlaps(b, tol)]
        rep.add("2-torsion images disjoint", not clash,
                f"{len(clash)} overlapping pairs" if clash else "")
        for i, d in enumerate((d1, d2), start=1):
            d4 = d ** 4
            ok = d4.lower() > tol and (d4 - 1).lower() > tol
            rep.add(f"delta{i}^4 avoids 0 and 1", ok)
        for idx, pt in enumerate(pts):
            if pt.order == 4:
                ok = isinstance(pt.value, str) and pt.value in EXACT_ORDER4
                rep.add(f"{pt.label} exact", ok, str(pt.value))
                continue
            if isinstance(pt.value, str):
                rep.add(f"{pt.label} numeric", False, "expected a ball")
                continue
            if pt.base is None:
                pre = pt.value
                if pt.map != "id":
                    rep.add(f"{pt.label} orbit", False, "map without base")
                    continue
            else:
                if not (0 <= pt.base < len(pts)) or isinstance(pts[pt.base].value, str):
                    rep.add(f"{pt.label} orbit", False, "bad base index")
                    continue
                pre = pts[pt.base].value
                image = _apply_map(pt.map, pre)
                rep.add(f"{pt.label} orbit", image.overlaps(pt.value, tol), f"{pt.map} of point {pt.base}")
                base_order = pts[pt.base].order
                ok_order = pt.order == 2 * base_order and base_order in (3, cert.p)
                rep.add(f"{pt.label} order from orbit", ok_order, f"{base_order} -> {pt.order}")
            F = F3 if pt.order in (3, 6) else Fp
            if pt.order not in (3, 6, cert.p, 2 * cert.p):
                rep.add(f"{pt.label} order", False, f"unexpected order {pt.order}")
                continue
            worst = -(10 ** 6)
            for d in (d1, d2):
                worst = max(worst, _residual_log2(F, pre, d))
            rep.add(f"{pt.label} residual", worst <= cert.tol_log2, f"2^{worst}")
        if any(pt.label.startswith("u:id") for pt in pts):
            upt = next(pt for pt in pts if pt.label == "u:id")
            rep.add("u matches recorded u", isinstance(upt.value, ComplexBall) and upt.value.overlaps(u, tol))
        # pairwise separation
        finite = []
        for pt in pts:
            if isinstance(pt.value, str):
                if pt.value == POINT_AT_INFINITY:
                    continue
                finite.append((pt.label, ComplexBall.exact(_exact_value(pt.value))))
            else:
                finite.append((pt.label, pt.value))
        bad = []
        for i in range(len(finite)):
            for j in range(i + 1, len(finite)):
                if finite[i][1].overlaps(finite[j][1], tol):
                    bad.append(f"{finite[i][0]}~{finite[j][0]}")
        infinities = sum(1 for pt in pts if pt.value == POINT_AT_INFINITY)
        rep.add("pairwise distinct", not bad and infinities <= 1, ", ".join(bad[:5]))
    return rep


def perturbed(cert: Certificate, index: int, eps_log2: int = -20) -> Certificate:
    """Copy of ``cert`` with one numeric point moved by 2^eps_log2 (fault injection)."""
    pts = [CertPoint(p.label, p.order, p.value, p.base, p.map, list(p.residuals_log2)) for p in cert.points]
    pt = pts[index]
    if isinstance(pt.value, str):
        raise ValueError("cannot perturb an exact point")
    with mpmath.workprec(cert.bits):
        pts[index] = CertPoint(pt.label, pt.order, ComplexBall(pt.value.mid + mpf(2) ** eps_log2, pt.value.rad),
                               pt.base, pt.map, pt.residuals_log2)
    return Certificate(cert.p, cert.bits, cert.tol_log2, cert.u, dict(cert.u_source), cert.deltas, pts)
