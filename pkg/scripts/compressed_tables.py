"""Compressed resultant degree tables for a list of primes, one file per prime.

    python3 scripts/compressed_tables.py --primes 7 11 --outdir results/
"""
import argparse
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path

from torsionpairs.cli import compressed_table


@dataclass
class TableRun:
    primes: list[int] = field(default_factory=lambda: [7, 11])
    outdir: Path = Path("results")
    workers: int | None = None


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=[7, 11])
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    ap.add_argument("--workers", type=int)
    ns = ap.parse_args()
    run = TableRun(ns.primes, ns.outdir, ns.workers)
    logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s")
    run.outdir.mkdir(parents=True, exist_ok=True)
    for p in run.primes:
        start = time.perf_counter()
        table = compressed_table(p, run.workers)
        (run.outdir / f"compressed_p{p}.txt").write_text(table)
        print(table, end="")
        print(f"({time.perf_counter() - start:.1f}s)\n")


if __name__ == "__main__":
    main()
