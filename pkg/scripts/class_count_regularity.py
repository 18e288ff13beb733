"""Tabulate the number of type I classes against p mod 3.

Over GF(p) the count comes from the cube-class partition only; for p up to
--verify it is cross-checked by brute-force isomorphism search.
"""
import argparse

from sympy import primerange

from ecalg.classify import class_count_observation, type1_classification
from ecalg.field_core import GF


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=int, default=200)
    ap.add_argument("--verify", type=int, default=13)
    args = ap.parse_args()

    rows = class_count_observation(list(primerange(2, args.limit)))
    for p, residue, n in rows:
        mark = ""
        if p <= args.verify:
            brute = len(type1_classification(GF(p), with_census=False).representatives)
            mark = "  (brute force agrees)" if brute == n else f"  (brute force: {brute})"
        print(f"p={p:4d}  p mod 3={residue}  classes={n}{mark}")
    odd = [p for p, r, n in rows if n != (2 if r == 1 else 1)]
    print("exceptions:", odd or "none")


if __name__ == "__main__":
    main()
