"""Exit criteria for the whole package, runnable from pytest or ``ecalg verify-paper``.

Each check returns a :class:`CriterionResult`; wall-clock limits are part
of the pass condition.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import _linalg
from .algebra2d import StraightParams, StructureMatrix, rank, tilde
from .classify import (
    AlgebraType,
    cross_type_experiment,
    enumerate_ecs,
    q_prime_family,
    type1_classification,
    verify_corollary2,
    verify_corollary3,
    verify_prop3,
)
from .ec_check import is_ec_definitional, is_ec_straight, is_ec_system2
from .errors import EcalgError
from .field_core import GF, QQ, approx_equiv
from .iso import gl2, system5_residuals, transform, type1, type1_iso_decide


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    elapsed: float
    limit: Optional[float] = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = f" (limit {self.limit:g}s)" if self.limit else ""
        return f"[{status}] {self.number:>2}. {self.name}: {self.detail} [{self.elapsed:.2f}s{budget}]"


def _all_matrices(F):
    for e in itertools.product(F.elements(), repeat=8):
        yield StructureMatrix(F, (e[0:2], e[2:4], e[4:6], e[6:8]))


def _random_matrix(F, rng):
    e = [rng.randrange(F.p) for _ in range(8)]
    return StructureMatrix(F, (tuple(e[0:2]), tuple(e[2:4]), tuple(e[4:6]), tuple(e[6:8])))


def check_ec_oracles(seed: int = 0):
    mismatches, counts = 0, {}
    for p in (2, 3):
        F = GF(p)
        n = 0
        for A in _all_matrices(F):
            n += 1
            if is_ec_definitional(A).is_ec != is_ec_system2(A).is_ec:
                mismatches += 1
        counts[p] = n
    ok = mismatches == 0 and counts == {2: 256, 3: 6561}
    return ok, f"{counts[2]} + {counts[3]} matrices, {mismatches} disagreements"


def check_straight_form(seed: int = 0):
    rng = random.Random(seed)
    mismatches, total = 0, 0

    def agree(s):
        return is_ec_system2(s.embed()).is_ec == is_ec_straight(s).is_ec

    for p in (2, 3):
        F = GF(p)
        for v in itertools.product(range(p), repeat=6):
            total += 1
            mismatches += not agree(StraightParams(F, *v))
    for p in (5, 7):
        F = GF(p)
        for _ in range(10_000):
            total += 1
            mismatches += not agree(StraightParams(F, *(rng.randrange(p) for _ in range(6))))
    return mismatches == 0 and total == 64 + 729 + 20_000, f"{total} tuples, {mismatches} disagreements"


def check_tilde_homomorphism(seed: int = 0):
    F = GF(3)
    group = gl2(F)
    lifts = {X: tilde(X) for X in group}
    bad_det = sum(
        1 for X, T in lifts.items() if _linalg.det(F, T) != F.pow(X.det(), 4)
    )
    bad_hom = sum(
        1 for X, Y in itertools.product(group, repeat=2)
        if lifts[X @ Y] != _linalg.mat_mul(F, lifts[X], lifts[Y])
    )
    ok = len(group) == 48 and bad_det == 0 and bad_hom == 0
    return ok, f"|GL2(3)| = {len(group)}, {bad_hom}/2304 product failures, {bad_det}/48 det failures"


def check_type1_census(seed: int = 0):
    counts, anomalies = {}, []
    for p in (2, 3, 5, 7):
        c = enumerate_ecs(GF(p))
        ok, notes = verify_prop3(GF(p), census=c)
        anomalies += notes
        counts[p] = c.by_subfamily.get("E100", 0)
    ok = not anomalies and counts == {2: 1, 3: 2, 5: 4, 7: 6}
    return ok, f"E100 counts {counts}; anomalies {anomalies or 'none'}"


def check_type1_classes(seed: int = 0):
    expected = {2: 1, 3: 1, 5: 1, 7: 2, 13: 2}
    got = {}
    for p in expected:
        # raises InvariantViolation if the ≈ and GL2 partitions differ
        got[p] = len(type1_classification(GF(p), with_census=False).type1_classes)
    return got == expected, f"class counts {got}"


def check_type1_properties(seed: int = 0):
    got = {p: verify_corollary2(GF(p)) for p in (2, 3, 5, 7, 13)}
    return all(got.values()), f"{got}"


def check_cube_rootable_fields(seed: int = 0):
    got = {p: verify_corollary3(GF(p)) for p in (2, 3, 5)}
    return all(got.values()), f"single class with representative 1: {got}"


def check_type1_witnesses(seed: int = 0):
    cases = [(GF(p), a, b) for p in (7, 13)
             for a in range(1, p) for b in range(1, p) if approx_equiv(a, b, GF(p))]
    cases.append((QQ, Fraction(8), Fraction(1)))
    bad = 0
    for F, a, b in cases:
        w = type1_iso_decide(a, b, F)
        if not w.found or any(not F.eq(r, F.zero) for r in system5_residuals(a, b, w.X)):
            bad += 1
        elif transform(type1(F, a).embed(), w.X) != type1(F, b).embed():
            bad += 1
    return bad == 0, f"{len(cases)} equivalent pairs, {bad} bad witnesses"


def check_q_primes(seed: int = 0):
    rep = q_prime_family([2, 3, 5, 7, 11, 13, 17, 19])
    return rep.pairwise_distinct and len(rep.pairs) == 28, f"{len(rep.pairs)} pairs, pairwise distinct = {rep.pairwise_distinct}"


def check_cross_type(seed: int = 0):
    notes = []
    ok = True
    for p in (2, 3, 5, 7):
        # raises InvariantViolation on a sharp-pattern violation or a char-2 type II isomorph
        r = cross_type_experiment(GF(p))
        n2, n3 = r.count(AlgebraType.TYPE_II), r.count(AlgebraType.TYPE_III)
        notes.append(f"GF({p}): I~II {n2}, I~III {n3}")
        ok &= all(res.consistent for _, _, res in r.isomorphic)
        if p == 2:
            ok &= n2 == 0
    return ok, "; ".join(notes)


def check_rank_invariance(seed: int = 0):
    rng = random.Random(seed)
    F = GF(3)
    group = gl2(F)
    bad = 0
    for _ in range(200):
        A = _random_matrix(F, rng)
        r = rank(A)
        bad += sum(rank(transform(A, X)) != r for X in group)
    return bad == 0, f"200 algebras x {len(group)} transforms, {bad} rank changes"


CRITERIA: list[tuple[int, str, Callable, Optional[float]]] = [
    (1, "definitional EC == eight-equation system (GF(2), GF(3))", check_ec_oracles, 10.0),
    (2, "eight-equation system == straight-form system", check_straight_form, 10.0),
    (3, "tilde lift is a homomorphism with det = det^4 on GL2(3)", check_tilde_homomorphism, 1.0),
    (4, "EC type I tuples are S(p,0,0,0,0,0), p in {2,3,5,7}", check_type1_census, 60.0),
    (5, "type I classes via ≈ equal GL2 brute-force classes", check_type1_classes, 120.0),
    (6, "type I algebras commutative, non-unital, non-associative", check_type1_properties, None),
    (7, "cube-rootable GF(2), GF(3), GF(5) have one type I class", check_cube_rootable_fields, None),
    (8, "type I witnesses satisfy the six equations and transform exactly", check_type1_witnesses, None),
    (9, "primes 2..19 pairwise inequivalent over Q", check_q_primes, 1.0),
    (10, "no type I ~ type II over GF(2); sharp patterns hold", check_cross_type, None),
    (11, "rank invariant under every GL2(3) transform", check_rank_invariance, None),
]


def run_criterion(number: int, seed: int = 0) -> CriterionResult:
    _, name, fn, limit = next(c for c in CRITERIA if c[0] == number)
    t0 = time.perf_counter()
    try:
        ok, detail = fn(seed)
    except EcalgError as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - t0
    if limit is not None and elapsed >= limit:
        ok, detail = False, f"{detail}; exceeded {limit:g}s"
    return CriterionResult(number, name, bool(ok), detail, elapsed, limit)


def run_all(seed: int = 0, stop_on_failure: bool = False) -> list[CriterionResult]:
    results = []
    for number, *_ in CRITERIA:
        res = run_criterion(number, seed)
        results.append(res)
        if stop_on_failure and not res.passed:
            break
    return results
