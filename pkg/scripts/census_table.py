"""Count EC straight-form algebras over small prime fields, split by type.

    python3 scripts/census_table.py 2 3 5 7 13 --workers 4
"""
import argparse
import time

from ecalg.classify import enumerate_ecs
from ecalg.field_core import GF

TYPES = ["NotRank2", "TypeI", "TypeII", "TypeIII"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("primes", nargs="*", type=int, default=[2, 3, 5, 7])
    ap.add_argument("--budget", type=int, default=None)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    print("| p | " + " | ".join(TYPES) + " | total | seconds |")
    print("|---" * (len(TYPES) + 3) + "|")
    for p in args.primes:
        t0 = time.perf_counter()
        census = enumerate_ecs(GF(p), args.budget, args.workers)
        counts = census.by_type
        cells = " | ".join(str(counts[t]) for t in TYPES)
        print(f"| {p} | {cells} | {census.ec_total} | {time.perf_counter() - t0:.2f} |")


if __name__ == "__main__":
    main()
