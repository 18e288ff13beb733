"""Command-line front end.

    ecalg ec-check ALGEBRA.json
    ecalg iso A.json B.json
    ecalg classify --field gf:7 --format md
    ecalg census --field gf:5
    ecalg qprimes 2 3 5 7 11
    ecalg cross-type --field gf:2
    ecalg verify-paper

Exit codes: 0 success (EC / isomorphic), 1 negative verdict, 2 bad input
or unsupported request, 3 invariant violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Optional, Sequence, Union

from . import acceptance
from .algebra2d import StraightParams, StructureMatrix
from .classify import (
    cross_type_experiment,
    enumerate_ecs,
    q_prime_family,
    resolve_budget,
    type1_classification,
    type_of_subfamily,
)
from .ec_check import is_ec_definitional, is_ec_straight, is_ec_system2
from .errors import EcalgError, InvariantViolation, ParseError
from .field_core import Field, field_from_json, parse_field_spec
from .iso import are_isomorphic_bruteforce, type1_iso_decide

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR, EXIT_INVARIANT = 0, 1, 2, 3


@dataclass
class CliConfig:
    command: str
    field: Optional[Field] = None
    inputs: list = dc_field(default_factory=list)
    format: str = "json"
    budget: int = 13
    workers: int = 1
    seed: int = 0
    method: str = "system2"
    primes: list = dc_field(default_factory=list)

    def __post_init__(self):
        if self.budget < 2 or self.workers < 1:
            raise ValueError("budget must be >= 2 and workers >= 1")


# ------------------------------------------------------------------ json

Algebra = Union[StructureMatrix, StraightParams]


def _parse_scalars(F: Field, values, location: str) -> list:
    if not isinstance(values, list):
        raise ParseError("expected a list of scalars", location)
    out = []
    for i, v in enumerate(values):
        try:
            out.append(F.parse(v))
        except ParseError as exc:
            raise ParseError(str(exc), f"{location}[{i}]") from exc
    return out


def parse_algebra(text: str) -> Algebra:
    """Read the algebra JSON: either ``"matrix"`` (4 rows of 2) or straight ``"s"`` (6 scalars)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object")
    F = field_from_json(obj.get("field"))
    if "s" in obj:
        values = _parse_scalars(F, obj["s"], "s")
        if len(values) != 6:
            raise ParseError(f"need 6 straight parameters, got {len(values)}", "s")
        return StraightParams(F, *values)
    if "matrix" in obj:
        rows = obj["matrix"]
        if not isinstance(rows, list) or len(rows) != 4:
            raise ParseError("structure matrix needs 4 rows", "matrix")
        parsed = []
        for i, row in enumerate(rows):
            vals = _parse_scalars(F, row, f"matrix[{i}]")
            if len(vals) != 2:
                raise ParseError("each row has 2 entries", f"matrix[{i}]")
            parsed.append(tuple(vals))
        return StructureMatrix(F, tuple(parsed))
    raise ParseError("expected a 'matrix' or 's' key")


def serialize_algebra(alg: Algebra) -> str:
    F = alg.field
    if isinstance(alg, StraightParams):
        body = {"field": F.to_json(), "s": [F.format(v) for v in alg.values]}
    else:
        body = {"field": F.to_json(), "matrix": [[F.format(v) for v in row] for row in alg.rows]}
    return json.dumps(body)


def _load(path: str) -> Algebra:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_algebra(text)


def _matrix(alg: Algebra) -> StructureMatrix:
    return alg.embed() if isinstance(alg, StraightParams) else alg


# ------------------------------------------------------------- rendering

def _markdown(rows: list[dict]) -> str:
    if not rows:
        return "(no rows)\n"
    keys = list(rows[0])
    lines = ["| " + " | ".join(keys) + " |", "|" + "---|" * len(keys)]
    lines += ["| " + " | ".join(str(r[k]) for k in keys) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue()


def _emit(payload: dict, rows: list[dict], fmt: str, out, header: str = ""):
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    elif fmt == "csv":
        out.write(_csv(rows))
    else:
        if header:
            out.write(header + "\n\n")
        out.write(_markdown(rows))


# -------------------------------------------------------------- commands

def _cmd_ec_check(cfg: CliConfig, out) -> int:
    alg = _load(cfg.inputs[0])
    A = _matrix(alg)
    if cfg.method == "straight" and not isinstance(alg, StraightParams):
        raise ParseError("--method straight needs the 's' form")
    verdicts = [is_ec_system2(A)]
    if cfg.method in ("straight", "all") and isinstance(alg, StraightParams):
        verdicts.append(is_ec_straight(alg))
    if cfg.method in ("definitional", "all") and A.field.is_finite:
        verdicts.append(is_ec_definitional(A))
    if len({v.is_ec for v in verdicts}) > 1:
        raise InvariantViolation(f"EC methods disagree: {[v.to_json() for v in verdicts]}")
    payload = {"algebra": json.loads(serialize_algebra(alg)),
               "is_ec": verdicts[0].is_ec,
               "verdicts": [v.to_json(A.field) for v in verdicts]}
    rows = [{"method": v.method.value, "is_ec": v.is_ec,
             "failing_equation": v.failing_equation or ""} for v in verdicts]
    _emit(payload, rows, cfg.format, out)
    return EXIT_OK if verdicts[0].is_ec else EXIT_NEGATIVE


def _type1_param(alg: Algebra):
    if isinstance(alg, StructureMatrix):
        alg = alg.straight_params()
    if alg is None:
        return None
    F = alg.field
    if all(F.eq(v, F.zero) for v in alg.values[1:]) and not F.eq(alg.p, F.zero):
        return alg.p
    return None


def _cmd_iso(cfg: CliConfig, out) -> int:
    a, b = _load(cfg.inputs[0]), _load(cfg.inputs[1])
    if a.field != b.field:
        raise ParseError(f"field mismatch: {a.field} vs {b.field}")
    pa, pb = _type1_param(a), _type1_param(b)
    if pa is not None and pb is not None:
        w = type1_iso_decide(pa, pb, a.field)
    else:
        w = are_isomorphic_bruteforce(_matrix(a), _matrix(b))
    _emit(w.to_json(), [w.to_json() | {"X": json.dumps(w.to_json().get("X"))}], cfg.format, out)
    return EXIT_OK if w.found else EXIT_NEGATIVE


def _cmd_classify(cfg: CliConfig, out) -> int:
    report = type1_classification(cfg.field, with_census=cfg.field.p <= cfg.budget,
                                  budget=cfg.budget)
    n = len(report.type1_classes)
    _emit(report.to_json(), report.rows(), cfg.format, out,
          header=f"Type I classes over {cfg.field}: {n}")
    return EXIT_OK


def _cmd_census(cfg: CliConfig, out) -> int:
    census = enumerate_ecs(cfg.field, cfg.budget, cfg.workers)
    payload = census.to_json()
    rows = [{"subfamily": k, "type": type_of_subfamily(k).value, "count": v}
            for k, v in sorted(census.by_subfamily.items())]
    rows.append({"subfamily": "-", "type": "NotRank2", "count": census.by_type["NotRank2"]})
    _emit(payload, rows, cfg.format, out,
          header=f"EC straight algebras over {cfg.field}: {census.ec_total} of {census.swept}")
    return EXIT_OK


def _cmd_qprimes(cfg: CliConfig, out) -> int:
    rep = q_prime_family(cfg.primes)
    rows = [{"p": p, "q": q, "p~q": s, "p^2~q": t} for p, q, s, t in rep.pairs]
    _emit(rep.to_json(), rows, cfg.format, out,
          header=f"pairwise distinct: {str(rep.pairwise_distinct).lower()}")
    return EXIT_OK if rep.pairwise_distinct else EXIT_NEGATIVE


def _cmd_cross_type(cfg: CliConfig, out) -> int:
    report = cross_type_experiment(cfg.field, cfg.budget)
    payload = report.to_json()
    rows = [{"s": " ".join(p["s"]), "type": p["type"], "partner": p["type1_partner"],
             "pattern": p["pattern"]} for p in payload["pairs"]]
    _emit(payload, rows, cfg.format, out,
          header=f"Type II/III algebras isomorphic to type I over {cfg.field}: {len(rows)}")
    return EXIT_OK


def _cmd_verify_paper(cfg: CliConfig, out) -> int:
    results = acceptance.run_all(cfg.seed, stop_on_failure=True)
    if cfg.format == "json":
        out.write(json.dumps([r.__dict__ for r in results], indent=2) + "\n")
    else:
        for r in results:
            out.write(r.line() + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_INVARIANT


COMMANDS = {
    "ec-check": _cmd_ec_check,
    "iso": _cmd_iso,
    "classify": _cmd_classify,
    "census": _cmd_census,
    "qprimes": _cmd_qprimes,
    "cross-type": _cmd_cross_type,
    "verify-paper": _cmd_verify_paper,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "md"], default="json")
    common.add_argument("--budget", type=int, default=None,
                        help="largest p for p^6 sweeps (default: $ECALG_BUDGET or 13)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="ecalg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ec-check", parents=[common], help="decide endo-commutativity")
    p.add_argument("algebra")
    p.add_argument("--method", choices=["system2", "straight", "definitional", "all"],
                   default="system2")
    p = sub.add_parser("iso", parents=[common], help="search for an isomorphism")
    p.add_argument("algebra", nargs=2)
    for name, text in (("classify", "type I isomorphism classes"),
                       ("census", "count EC straight forms by type"),
                       ("cross-type", "type II/III algebras isomorphic to type I")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--field", required=True, help="gf:<prime> or q")
    p = sub.add_parser("qprimes", parents=[common], help="check primes are pairwise inequivalent over Q")
    p.add_argument("primes", nargs="+", type=int)
    sub.add_parser("verify-paper", parents=[common], help="run every acceptance criterion")
    return parser


def config_from_args(ns: argparse.Namespace) -> CliConfig:
    cfg = CliConfig(
        command=ns.command,
        format=ns.format,
        budget=resolve_budget(ns.budget),
        workers=ns.workers,
        seed=ns.seed,
    )
    if getattr(ns, "field", None):
        cfg.field = parse_field_spec(ns.field)
        if not cfg.field.is_finite:
            raise ParseError(f"{ns.command} needs a finite field", "--field")
    if ns.command == "ec-check":
        cfg.inputs, cfg.method = [ns.algebra], ns.method
    elif ns.command == "iso":
        cfg.inputs = list(ns.algebra)
    elif ns.command == "qprimes":
        cfg.primes = list(ns.primes)
    return cfg


def run(cfg: CliConfig, out=None) -> int:
    out = out or sys.stdout
    return COMMANDS[cfg.command](cfg, out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return run(config_from_args(ns))
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (EcalgError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
