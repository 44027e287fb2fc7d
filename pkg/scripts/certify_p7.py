"""Build the 22-point certificate for p = 7, write it as JSON and re-verify it from the file."""
import argparse
from pathlib import Path

from torsionpairs.numcert import Certificate, build_certificate, verify_certificate


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bits", type=int, default=512)
    ap.add_argument("--out", type=Path, default=Path("results/certificate_p7.json"))
    ns = ap.parse_args()
    cert = build_certificate(7, bits=ns.bits)
    ns.out.parent.mkdir(parents=True, exist_ok=True)
    ns.out.write_text(cert.to_json())
    report = verify_certificate(Certificate.from_json(ns.out.read_text()))
    for name, ok, detail in report.checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}" + (f" ({detail})" if detail else ""))
    print(f"orders: {cert.order_counts()}")
    print("certificate:", "PASS" if report.passed else "FAIL")


if __name__ == "__main__":
    main()
