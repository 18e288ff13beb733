"""List type II/III EC algebras that are isomorphic to a type I algebra.

Every hit is checked against the two sharp patterns; a hit matching neither
aborts with an invariant violation.
"""
import argparse
import json

from ecalg.classify import AlgebraType, cross_type_experiment
from ecalg.field_core import GF


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("primes", nargs="*", type=int, default=[2, 3, 5, 7])
    ap.add_argument("--json", action="store_true", help="dump full reports")
    args = ap.parse_args()

    for p in args.primes:
        report = cross_type_experiment(GF(p))
        if args.json:
            print(json.dumps(report.to_json(), indent=2))
            continue
        print(f"GF({p}): II->I {report.count(AlgebraType.TYPE_II)}, "
              f"III->I {report.count(AlgebraType.TYPE_III)}")
        for s, kind, r in report.isomorphic:
            print(f"  {s}  {kind.value:8s} ~ S({r.partner},0,0,0,0,0)  {r.pattern.value}")


if __name__ == "__main__":
    main()
