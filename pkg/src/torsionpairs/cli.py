"""Command line entry point: ``torsionpairs <subcommand> ...``.

Artifacts written with --out carry a header with the tool version and the
configuration; wall-clock timings go to stderr so artifacts stay byte-identical
across runs and worker counts.

Exit codes: 0 pass, 1 usage, 2 computation failure, 3 verification failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import asdict, dataclass

from . import __version__
from .curves import SUPPORTED_PRIMES, modified_division_poly

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_VERIFY = 0, 1, 2, 3
LONG_RUNNING_PRIMES = (17,)

log = logging.getLogger("torsionpairs")


class UsageError(ValueError):
    pass


class VerificationFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    p: int | None = None
    bits: int = 512
    compressed: bool = False
    eliminate: str | None = None
    out: str | None = None
    infile: str | None = None
    long_running: bool = False
    workers: int | None = None
    full: bool = False

    def validate(self) -> None:
        if self.p is not None:
            if self.p not in SUPPORTED_PRIMES:
                raise UsageError(f"--p must be one of {SUPPORTED_PRIMES}")
            if self.p in LONG_RUNNING_PRIMES and not self.long_running:
                raise UsageError(f"p = {self.p} needs --long-running")
        if self.bits < 128:
            raise UsageError("--bits must be at least 128")
        if self.workers is not None and self.workers < 1:
            raise UsageError("--workers must be positive")
        if self.eliminate is not None:
            allowed = ("s", "w") if self.compressed else ("u", "v")
            if self.eliminate not in allowed:
                raise UsageError(f"--eliminate must be one of {allowed}" + (" with --compressed" if self.compressed else ""))

    def header(self) -> str:
        # workers, output paths and timing never change results, so they stay out of the header
        keep = {k: v for k, v in asdict(self).items() if k not in ("out", "workers", "infile") and v not in (None, False)}
        if self.command != "certify":
            keep.pop("bits", None)
        items = " ".join(f"{k}={v}" for k, v in sorted(keep.items()))
        return f"# torsionpairs {__version__}\n# config: {items}\n"


# -- subcommands ------------------------------------------------------------------


def _emit(cfg: RunConfig, body: str) -> None:
    text = cfg.header() + body
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_divpoly(cfg: RunConfig) -> int:
    _need_p(cfg)
    _emit(cfg, modified_division_poly(cfg.p).to_text())
    return EXIT_OK


def cmd_reduce(cfg: RunConfig) -> int:
    from .intersect import reduce_Fp_mod_F3

    _need_p(cfg)
    pair = reduce_Fp_mod_F3(cfg.p)
    lines = [f"p: {cfg.p}", f"pseudo-division steps: {pair.scale_power}"]
    for name, c, n in (("C0", pair.c0, pair.norm0), ("C1", pair.c1, pair.norm1)):
        mono = " ".join(f"{k}^{e}" for k, e in sorted(n.monomial.items())) or "1"
        lines.append(f"{name}: degree {c.degree()}, {len(c)} terms, removed {n.sign * n.content} * {mono}")
    body = "\n".join(lines) + "\n"
    for name, c in (("C0", pair.c0), ("C1", pair.c1)):
        body += f"## {name}\n" + c.to_text()
    _emit(cfg, body)
    return EXIT_OK


def _profile(cfg: RunConfig, eliminate: str, compressed: bool):
    from .intersect import compress, reduce_Fp_mod_F3, resultant_profile

    pair = reduce_Fp_mod_F3(cfg.p)
    obj = compress(pair) if compressed else pair
    return resultant_profile(obj, eliminate, workers=cfg.workers)


def format_profile(P, full: bool = False) -> str:
    from .intersect import leading_pair

    v = P.var
    lines = [
        f"p: {P.p}",
        f"eliminated: {P.eliminated}",
        f"variable: {v}",
        f"total degree: {P.total_degree}",
        f"sign: {P.sign}",
        f"content: 2^{P.two_power} * {P.odd_content}",
        f"monomial: {v}^{P.monomial_power}",
    ]
    for f, e in P.trivial:
        lines.append(f"trivial: ({f})^{e}")
    for part in P.parts:
        lead, nxt = part.leading_pair()
        irr = ",".join(str(d) for d in part.irreducible_degrees) if part.factors else "?"
        lines.append(f"part: degree {part.degree} multiplicity {part.multiplicity} "
                     f"irreducible [{irr}] leading {lead} next {nxt}")
        if part.factors and len(part.factors) > 1:
            for f in part.factors:
                a, b = leading_pair(f)
                lines.append(f"  factor: degree {f.degree()} leading {a} next {b}")
    body = "\n".join(lines) + "\n"
    if full:
        for k, part in enumerate(P.parts):
            body += f"## part {k}\n" + part.poly.to_text()
    return body


def cmd_profile(cfg: RunConfig) -> int:
    _need_p(cfg)
    if cfg.eliminate is None:
        raise UsageError("profile needs --eliminate")
    P = _profile(cfg, cfg.eliminate, cfg.compressed)
    if P.expand() != P.resultant:
        raise VerificationFailure("profile does not multiply back to the resultant")
    _emit(cfg, format_profile(P, cfg.full))
    return EXIT_OK


def cmd_counts(cfg: RunConfig) -> int:
    from .intersect import coordinate_counts, pigeonhole_bound

    _need_p(cfg)
    if cfg.compressed:
        up, vp = _profile(cfg, "w", True), _profile(cfg, "s", True)
    else:
        up, vp = _profile(cfg, "v", False), _profile(cfg, "u", False)
    uc, vc = coordinate_counts(up, vp)
    b = pigeonhole_bound(uc, vc)
    _emit(cfg, f"u-count: {uc}\nv-count: {vc}\nshared v per u: {b.multiplicity}\nintersection size: {b.cardinality}\n")
    return EXIT_OK


def compressed_table(p: int, workers: int | None = None) -> str:
    from .intersect import compress, reduce_Fp_mod_F3, resultant_profile

    cp = compress(reduce_Fp_mod_F3(p))
    out = [f"p: {p}", f"compression: C0 = u^{cp.k0} D0(s, w), C1 = u^{cp.k1} D1(s, w), s = u^4, w = v/u"]
    for elim, label in (("w", "s = u^4"), ("s", "w = v/u")):
        P = resultant_profile(cp, elim, workers=workers)
        if P.expand() != P.resultant:
            raise VerificationFailure("profile does not multiply back to the resultant")
        rows = ", ".join(f"{d}" + (f"(x{m})" if m > 1 else "") for d, m in P.degree_table())
        triv = ", ".join(f"({f})^{e}" for f, e in P.trivial) or "none"
        out.append(f"in {label}: {rows}")
        out.append(f"  trivial: 2^{P.two_power} * {P.var}^{P.monomial_power}; {triv}")
    return "\n".join(out) + "\n"


def cmd_compressed_table(cfg: RunConfig) -> int:
    _need_p(cfg)
    _emit(cfg, compressed_table(cfg.p, cfg.workers))
    return EXIT_OK


def cmd_certify(cfg: RunConfig) -> int:
    from .numcert import build_certificate

    _need_p(cfg)
    cert = build_certificate(cfg.p, cfg.bits, workers=cfg.workers)
    text = cert.to_json()
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    log.info("certificate: %d points, orders %s", len(cert.points), cert.order_counts())
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    from .numcert import Certificate, verify_certificate

    if not cfg.infile:
        raise UsageError("verify needs a certificate file")
    with open(cfg.infile, encoding="utf-8") as fh:
        cert = Certificate.from_json(fh.read())
    rep = verify_certificate(cert)
    lines = [f"{'PASS' if ok else 'FAIL'} {name}" + (f" ({detail})" if detail and not ok else "")
             for name, ok, detail in rep.checks]
    lines.append("certificate: " + ("PASS" if rep.passed else "FAIL"))
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if rep.passed else EXIT_VERIFY


def cmd_torfield(cfg: RunConfig) -> int:
    from . import torfield as tf

    q = tf.f3_of_cube_curve()
    rc = tf.resolvent_cubic(q)
    checks = [
        ("discriminant(quartic) == discriminant(resolvent)", tf.discriminant(q.coeffs()) == tf.discriminant(rc.coeffs())),
        ("cube-root identity", tf.cube_root_identity_check(rc)),
        ("lambda-j identity", tf.lambda_j_equivalence_check()),
    ]
    body = f"quartic: x^4 + {q.p3} x^3 + {q.p2} x^2 + {q.p1} x + {q.p0}\n"
    body += f"resolvent: x^3 + {rc.c2} x^2 + {rc.c1} x + {rc.c0}\n"
    body += "".join(f"{'PASS' if ok else 'FAIL'} {name}\n" for name, ok in checks)
    _emit(cfg, body)
    return EXIT_OK if all(ok for _, ok in checks) else EXIT_VERIFY


COMMANDS = {
    "divpoly": cmd_divpoly,
    "reduce": cmd_reduce,
    "profile": cmd_profile,
    "counts": cmd_counts,
    "certify": cmd_certify,
    "verify": cmd_verify,
    "remark4-table": cmd_compressed_table,
    "torfield-checks": cmd_torfield,
}


def _need_p(cfg: RunConfig) -> None:
    if cfg.p is None:
        raise UsageError(f"{cfg.command} needs --p")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torsionpairs", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"torsionpairs {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, p=True, out=True):
        if p:
            sp.add_argument("--p", type=int, required=False)
        if out:
            sp.add_argument("--out")
        sp.add_argument("--workers", type=int)
        sp.add_argument("--long-running", action="store_true", help="allow p = 17")

    sp = sub.add_parser("divpoly", help="emit F_p(x, delta)")
    common(sp)
    sp.add_argument("--family", default="edelta", choices=["edelta"])
    common(sub.add_parser("reduce", help="emit C_{p,0}, C_{p,1}"))
    sp = sub.add_parser("profile", help="resultant profile")
    common(sp)
    sp.add_argument("--eliminate", required=True)
    sp.add_argument("--compressed", action="store_true")
    sp.add_argument("--full", action="store_true", help="append the squarefree parts")
    sp = sub.add_parser("counts", help="coordinate counts and pigeonhole bound")
    common(sp)
    sp.add_argument("--compressed", action="store_true")
    sp = sub.add_parser("certify", help="build a certificate")
    common(sp)
    sp.add_argument("--bits", type=int, default=512)
    sp = sub.add_parser("verify", help="check a certificate file")
    sp.add_argument("infile")
    common(sub.add_parser("remark4-table", help="compressed degree tables"))
    common(sub.add_parser("torfield-checks", help="symbolic identity checks"), p=False)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        p=getattr(ns, "p", None),
        bits=getattr(ns, "bits", 512),
        compressed=getattr(ns, "compressed", False),
        eliminate=getattr(ns, "eliminate", None),
        out=getattr(ns, "out", None),
        infile=getattr(ns, "infile", None),
        long_running=getattr(ns, "long_running", False),
        workers=getattr(ns, "workers", None),
        full=getattr(ns, "full", False),
    )


def run(cfg: RunConfig) -> int:
    cfg.validate()
    start = time.perf_counter()
    status = COMMANDS[cfg.command](cfg)
    log.info("%s finished in %.2f s", cfg.command, time.perf_counter() - start)
    return status


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return run(config_from_args(ns))
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"torsionpairs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationFailure as exc:
        print(f"torsionpairs: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ArithmeticError, ValueError, OSError) as exc:
        module = type(exc).__module__.replace("torsionpairs.", "")
        print(f"torsionpairs: {module}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
