#!/usr/bin/env python3
"""Analyze every corpus foliation and print a one-line summary per entry.

Usage: python scripts/run_corpus.py [--numeric] [--skip-slow]
"""

import argparse
import sys
import time

from folgal import corpus
from folgal.analyze import analyze

SLOW = {"icosahedral_60"}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--numeric", action="store_true",
                        help="attach the numeric monodromy cross-check")
    parser.add_argument("--skip-slow", action="store_true",
                        help="skip degree-60 entries")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    failures = 0
    for name in corpus.FOLIATION_SPECS:
        if args.skip_slow and name in SLOW:
            print(f"{name:24s} skipped")
            continue
        start = time.perf_counter()
        try:
            F = corpus.foliation(name)
            res = analyze(F, numeric=True if args.numeric else False, seed=args.seed)
            elapsed = time.perf_counter() - start
            klein = (
                str(res.symmetry.klein.klein) if res.symmetry is not None else "-"
            )
            bw = str(res.branching) if res.branching is not None else "-"
            genus = res.genus if res.genus is not None else "-"
            print(
                f"{name:24s} d={F.degree:<3d} {res.status:12s} "
                f"via {res.verdict.method:20s} group={klein:12s} "
                f"bw={bw:12s} genus={genus!s:3s} ({elapsed:6.2f}s)"
            )
        except Exception as exc:  # pragma: no cover - reporting script
            failures += 1
            print(f"{name:24s} ERROR {type(exc).__name__}: {exc}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
