"""Both p = 7 resultant profiles, the coordinate counts and the pigeonhole bound."""
import argparse
import time

from torsionpairs.cli import format_profile
from torsionpairs.intersect import coordinate_counts, leading_pair, pigeonhole_bound, reduce_Fp_mod_F3, resultant_profile


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int)
    ns = ap.parse_args()
    pair = reduce_Fp_mod_F3(7)
    profiles = {}
    for elim in ("v", "u"):
        start = time.perf_counter()
        P = resultant_profile(pair, elim, workers=ns.workers)
        profiles[elim] = P
        print(format_profile(P), end="")
        for f, m in P.irreducible_parts():
            print(f"  irreducible: degree {f.degree()} multiplicity {m} leading pair {leading_pair(f)}")
        print(f"({time.perf_counter() - start:.1f}s)\n")
    nu, nv = coordinate_counts(profiles["v"], profiles["u"])
    b = pigeonhole_bound(nu, nv)
    print(f"counts: u {nu}, v {nv}; some u carries >= {b.multiplicity} common v; intersection >= {b.cardinality}")


if __name__ == "__main__":
    main()
