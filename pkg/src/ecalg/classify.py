"""Rank-2 type partition and the type I classification pipeline.

Straight algebras S(p, q, a, b, c, d) of rank 2 split by how many of
p, a, c are nonzero: one (type I), two (type II) or three (type III).
Endo-commutative type I algebras are exactly S(p, 0, 0, 0, 0, 0), p != 0,
and two of them are isomorphic iff p ≈ p'.  Everything here checks those
statements by exhaustive sweeps over GF(p) and raises
:class:`InvariantViolation` on any disagreement.
"""
from __future__ import annotations

import enum
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from . import algebra2d
from .algebra2d import StraightParams
from .ec_check import is_ec_straight, system3_mask
from .errors import DomainError, InvariantViolation, ResourceError
from .field_core import (
    Field,
    GF,
    cube_class_partition,
    is_cube_rootable,
    is_prime,
    q_signature,
    rep_system,
)
from .iso import IsoWitness, are_isomorphic_bruteforce, type1

DEFAULT_BUDGET = 13


class AlgebraType(str, enum.Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    TYPE_III = "TypeIII"
    NOT_RANK2 = "NotRank2"


class SharpPattern(str, enum.Enum):
    SHARP1 = "Sharp1"
    SHARP2 = "Sharp2"
    NEITHER = "Neither"


_TYPE_BY_COUNT = {0: AlgebraType.NOT_RANK2, 1: AlgebraType.TYPE_I,
                  2: AlgebraType.TYPE_II, 3: AlgebraType.TYPE_III}


@dataclass(frozen=True)
class TypeInfo:
    type: AlgebraType
    subfamily: Optional[str]  # "E100" etc, flags for (p, a, c); None when not rank 2


def _pattern(p_nz, a_nz, c_nz) -> str:
    return "E" + "".join("1" if f else "0" for f in (p_nz, a_nz, c_nz))


def classify_type(s: StraightParams) -> TypeInfo:
    F = s.field
    flags = [not F.eq(v, F.zero) for v in (s.p, s.a, s.c)]
    kind = _TYPE_BY_COUNT[sum(flags)]
    return TypeInfo(kind, None if kind is AlgebraType.NOT_RANK2 else _pattern(*flags))


def type_of_subfamily(sub: str) -> AlgebraType:
    return _TYPE_BY_COUNT[sub.count("1")]


# ---------------------------------------------------------------- census

def resolve_budget(budget: Optional[int] = None) -> int:
    if budget is None:
        budget = int(os.environ.get("ECALG_BUDGET", DEFAULT_BUDGET))
    if budget < 2:
        raise ValueError("enumeration budget must be at least 2")
    return budget


def _check_budget(field: Field, budget: Optional[int]):
    if not field.is_finite:
        raise DomainError("the census needs a finite field")
    cap = resolve_budget(budget)
    if field.p > cap:
        raise ResourceError(f"GF({field.p})^6 sweep exceeds the budget p <= {cap}")


def _sweep_slice(p: int, first: int) -> np.ndarray:
    # all tuples with the given p-coordinate; returns the EC ones as a 6 x n array
    g = np.indices((p,) * 5).reshape(5, -1).astype(np.int64)
    cols = [np.full(g.shape[1], first, dtype=np.int64), *g]
    return np.stack(cols)[:, system3_mask(cols, p)]


@dataclass
class Census:
    field: Field
    swept: int
    ec_tuples: np.ndarray  # 6 x n, lexicographic order
    by_subfamily: Counter = dc_field(default_factory=Counter)

    @property
    def by_type(self) -> Counter:
        out = Counter()
        for sub, n in self.by_subfamily.items():
            out[type_of_subfamily(sub).value] += n
        out[AlgebraType.NOT_RANK2.value] = self.ec_total - sum(self.by_subfamily.values())
        return out

    @property
    def ec_total(self) -> int:
        return self.ec_tuples.shape[1]

    def tuples_in(self, *subfamilies: str) -> list[StraightParams]:
        cols = self.ec_tuples
        codes = (cols[0] != 0) * 4 + (cols[2] != 0) * 2 + (cols[4] != 0)
        want = [int(s[1:], 2) for s in subfamilies]
        sel = cols[:, np.isin(codes, want)]
        return [StraightParams(self.field, *map(int, t)) for t in sel.T]

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "swept": self.swept,
            "ec_total": self.ec_total,
            "by_type": dict(sorted(self.by_type.items())),
            "by_subfamily": dict(sorted(self.by_subfamily.items())),
        }


def enumerate_ecs(field: Field, budget: Optional[int] = None, workers: int = 1) -> Census:
    """Test every S(p,q,a,b,c,d) over GF(p) and tally the EC ones by type."""
    _check_budget(field, budget)
    p = field.p
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            slices = list(pool.map(_sweep_slice, [p] * p, range(p)))
    else:
        slices = [_sweep_slice(p, k) for k in range(p)]
    tuples = np.concatenate(slices, axis=1)
    codes = (tuples[0] != 0) * 4 + (tuples[2] != 0) * 2 + (tuples[4] != 0)
    subs = Counter()
    for code, n in zip(*np.unique(codes, return_counts=True)):
        if code:
            subs[_pattern(*((int(code) >> k) & 1 for k in (2, 1, 0)))] = int(n)
    return Census(field, p**6, tuples, subs)


def verify_prop3(field: Field, budget: Optional[int] = None, census: Optional[Census] = None):
    """EC type I tuples are exactly (p, 0, 0, 0, 0, 0) with p != 0.

    Returns (ok, anomalies).
    """
    census = census or enumerate_ecs(field, budget)
    anomalies = []
    for sub in ("E001", "E010"):
        if census.by_subfamily.get(sub, 0):
            anomalies.append(f"{sub} has {census.by_subfamily[sub]} EC tuples, expected none")
    found = {s.values for s in census.tuples_in("E100")}
    expected = {(k, 0, 0, 0, 0, 0) for k in range(1, field.p)}
    if found != expected:
        anomalies.append(f"E100 EC tuples differ from {{S(p,0,0,0,0,0)}}: "
                         f"extra={sorted(found - expected)} missing={sorted(expected - found)}")
    return not anomalies, anomalies


# -------------------------------------------------------- classification

@dataclass
class ClassificationReport:
    field: Field
    census: Optional[dict]
    type1_classes: list  # (representative, members) pairs
    witnesses: dict = dc_field(default_factory=dict)  # (rep, member) -> IsoWitness
    anomalies: list = dc_field(default_factory=list)

    @property
    def representatives(self) -> list:
        return [rep for rep, _ in self.type1_classes]

    def to_json(self) -> dict:
        F = self.field
        return {
            "field": F.to_json(),
            "census": self.census,
            "type1_classes": [
                {"representative": F.format(rep), "members": [F.format(m) for m in members],
                 "table": multiplication_table(F, rep)}
                for rep, members in self.type1_classes
            ],
            "witnesses": [
                {"from": F.format(a), "to": F.format(b), **w.to_json()}
                for (a, b), w in sorted(self.witnesses.items())
            ],
            "anomalies": list(self.anomalies),
        }

    def rows(self) -> list[dict]:
        F = self.field
        return [
            {"field": str(F), "representative": F.format(rep),
             "members": " ".join(F.format(m) for m in members),
             "table": multiplication_table(F, rep)}
            for rep, members in self.type1_classes
        ]


def multiplication_table(field: Field, p) -> str:
    """The table of S(p,0,0,0,0,0) on {e, f}, written as (e² ef; fe f²)."""
    coeff = field.format(p)
    return f"(f 0; 0 {'' if coeff == '1' else coeff}e)"


def type1_classification(field: Field, with_census: bool = True,
                         budget: Optional[int] = None) -> ClassificationReport:
    """Partition {S(p,0,...,0) : p in K*} twice and insist the partitions agree.

    Once through p ≈ p' and once by brute-force search over GL2(K).
    """
    if not field.is_finite:
        raise DomainError("type I classification is enumerable only over GF(p)")
    approx = cube_class_partition(field, "approx")
    approx_classes = {frozenset(c) for c in approx.classes}

    witnesses = {}
    brute_classes = []
    unassigned = field.nonzero_elements()
    while unassigned:
        rep, rest = unassigned[0], unassigned[1:]
        members, left = [rep], []
        A = type1(field, rep).embed()
        for other in rest:
            w = are_isomorphic_bruteforce(A, type1(field, other).embed())
            if w.found:
                members.append(other)
                witnesses[(rep, other)] = w
            else:
                left.append(other)
        brute_classes.append((rep, tuple(members)))
        unassigned = left

    if {frozenset(m) for _, m in brute_classes} != approx_classes:
        raise InvariantViolation(
            f"{field}: ≈-classes {sorted(map(sorted, approx_classes))} differ from "
            f"isomorphism classes {[list(m) for _, m in brute_classes]}")
    reps = rep_system(field).reps
    if tuple(r for r, _ in brute_classes) != reps:
        raise InvariantViolation(f"{field}: representatives {reps} disagree with class minima")

    census = None
    if with_census:
        c = enumerate_ecs(field, budget)
        ok, anomalies = verify_prop3(field, census=c)
        if not ok:
            raise InvariantViolation("; ".join(anomalies))
        census = c.to_json()
    return ClassificationReport(field, census, brute_classes, witnesses)


def verify_corollary2(field: Field) -> bool:
    """Every type I algebra is commutative, has no identity, and is not associative."""
    for p in field.nonzero_elements():
        A = type1(field, p).embed()
        if not algebra2d.is_commutative(A):
            return False
        if algebra2d.find_identity(A) is not None:
            return False
        if algebra2d.is_associative(A):
            return False
    return True


def verify_corollary3(field: Field) -> bool:
    if not is_cube_rootable(field):
        raise DomainError(f"{field} is not cube-rootable")
    report = type1_classification(field, with_census=False)
    return report.representatives == [field.one]


# ----------------------------------------------------------- rationals

@dataclass(frozen=True)
class QPrimeReport:
    primes: tuple
    pairwise_distinct: bool
    pairs: tuple  # (p, q, p~q, p²~q)

    def to_json(self) -> dict:
        return {
            "primes": list(self.primes),
            "pairwise_distinct": self.pairwise_distinct,
            "pairs": [{"p": p, "q": q, "sim": s, "square_sim": t} for p, q, s, t in self.pairs],
        }


def q_prime_family(primes) -> QPrimeReport:
    """Check that distinct primes fall into distinct ≈-classes of Q*."""
    primes = tuple(primes)
    for n in primes:
        if not is_prime(n):
            raise DomainError(f"{n!r} is not prime")
    if len(set(primes)) != len(primes):
        raise DomainError("primes must be distinct")
    pairs = []
    for i, p in enumerate(primes):
        for q in primes[i + 1:]:
            # a ~ b iff the signature of a/b is trivial
            sim = (q_signature(p) * q_signature(q).inverse()).is_trivial()
            sq_sim = (q_signature(p * p) * q_signature(q).inverse()).is_trivial()
            pairs.append((p, q, sim, sq_sim))
    return QPrimeReport(primes, not any(s or t for _, _, s, t in pairs), tuple(pairs))


# ------------------------------------------------------- cross-type work

def sharp_pattern(s: StraightParams) -> SharpPattern:
    F = s.field
    z = F.zero
    shape = (not F.eq(s.a, z) and F.eq(s.q, F.neg(s.a)) and F.eq(s.b, z)
             and F.eq(s.c, s.a) and F.eq(s.d, z))
    if not shape:
        return SharpPattern.NEITHER
    return SharpPattern.SHARP1 if F.eq(s.p, z) else SharpPattern.SHARP2


@dataclass(frozen=True)
class Lemma6Result:
    pattern: SharpPattern
    status: str  # "consistent", "not_applicable" or "violation"
    partner: Optional[object] = None  # p' with s ≅ S(p',0,...,0)
    witness: Optional[IsoWitness] = None

    @property
    def consistent(self) -> bool:
        return self.status != "violation"


def lemma6_filter(s: StraightParams, field: Optional[Field] = None,
                  type1_reps: Optional[list] = None) -> Lemma6Result:
    """Necessary shape of a type II/III algebra isomorphic to a type I one.

    Searches GL2(K) for an isomorphism onto some S(p',0,...,0); if one
    exists, the algebra must match one of the two sharp patterns.
    """
    field = field or s.field
    if classify_type(s).type not in (AlgebraType.TYPE_II, AlgebraType.TYPE_III):
        raise DomainError(f"{s} is not of type II or III")
    if not is_ec_straight(s):
        raise DomainError(f"{s} is not endo-commutative")
    pattern = sharp_pattern(s)
    reps = type1_reps if type1_reps is not None else rep_system(field).reps
    A = s.embed()
    for rep in reps:
        w = are_isomorphic_bruteforce(A, type1(field, rep).embed())
        if w.found:
            status = "violation" if pattern is SharpPattern.NEITHER else "consistent"
            return Lemma6Result(pattern, status, rep, w)
    return Lemma6Result(pattern, "not_applicable")


@dataclass
class CrossTypeReport:
    field: Field
    counts: dict
    isomorphic: list  # (StraightParams, type, Lemma6Result)
    assertions: list = dc_field(default_factory=list)

    def count(self, kind: AlgebraType) -> int:
        return sum(1 for _, t, _ in self.isomorphic if t is kind)

    def to_json(self) -> dict:
        F = self.field
        return {
            "field": F.to_json(),
            "ec_counts": self.counts,
            "iso_to_type1": {"TypeII": self.count(AlgebraType.TYPE_II),
                             "TypeIII": self.count(AlgebraType.TYPE_III)},
            "pairs": [
                {"s": [F.format(v) for v in s.values], "type": t.value,
                 "type1_partner": F.format(r.partner), "pattern": r.pattern.value,
                 "lemma6": r.status, "X": r.witness.to_json()["X"]}
                for s, t, r in self.isomorphic
            ],
            "assertions": list(self.assertions),
        }


def cross_type_experiment(field: Field, budget: Optional[int] = None) -> CrossTypeReport:
    """Search every EC type II/III algebra for a type I isomorph."""
    census = enumerate_ecs(field, budget)
    reps = list(rep_system(field).reps)
    found = []
    for s in census.tuples_in("E011", "E101", "E110", "E111"):
        r = lemma6_filter(s, field, reps)
        if r.status == "violation":
            raise InvariantViolation(f"{s} ≅ S({r.partner},0,0,0,0,0) but matches neither sharp pattern")
        if r.status == "consistent":
            found.append((s, classify_type(s).type, r))
    report = CrossTypeReport(field, dict(sorted(census.by_type.items())), found)
    report.assertions.append("every type I isomorph matches a sharp pattern")
    if field.p == 2:
        if report.count(AlgebraType.TYPE_II):
            raise InvariantViolation("char 2: found a type II algebra isomorphic to type I")
        report.assertions.append("char 2: no type II algebra is isomorphic to a type I algebra")
    return report


def class_count_observation(primes) -> list[tuple[int, int, int]]:
    """(p, p mod 3, number of type I classes) via ≈ alone; an observation, not a claim."""
    return [(p, p % 3, len(rep_system(GF(p)).reps)) for p in primes]
