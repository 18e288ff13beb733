"""Isomorphism of 2-dimensional algebras.

A basis change X carries the structure matrix A to tilde(X)^-1 · A · X.
Over GF(p) every invertible X is scanned, either against that matrix
identity (:func:`are_isomorphic_bruteforce`) or against the eight
scalar equations for straight forms (:func:`straight_iso_system4`).
Type I algebras S(p,0,0,0,0,0) get a closed-form decision with an
explicit witness (:func:`type1_iso_decide`) that also works over Q.

Scans are vectorised with numpy over the whole of GL2(p) and always
return the lexicographically first witness in (x, y, z, w).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from . import _linalg
from .algebra2d import StraightParams, StructureMatrix, TransformMatrix, _check_field, tilde
from .errors import DomainError, InvariantViolation, UnsupportedField
from .field_core import Field, approx_equiv, cube_root, sim_equiv


class IsoMethod(str, enum.Enum):
    BRUTE_FORCE = "BruteForce"
    SYSTEM4 = "System4"
    LEMMA4_CASE1 = "Lemma4Case1"
    LEMMA4_CASE2 = "Lemma4Case2"
    LEMMA4 = "Lemma4"  # negative verdict, no witness


@dataclass(frozen=True)
class IsoWitness:
    found: bool
    method: IsoMethod
    X: Optional[TransformMatrix] = None

    def __bool__(self):
        return self.found

    def to_json(self) -> dict:
        out = {"found": self.found, "method": self.method.value}
        if self.X is not None:
            fmt = self.X.field.format
            out["X"] = [[fmt(self.X.x), fmt(self.X.y)], [fmt(self.X.z), fmt(self.X.w)]]
        return out


def transform(A: StructureMatrix, X: TransformMatrix) -> StructureMatrix:
    """Structure matrix of the same algebra in the basis changed by X."""
    _check_field(A, X)
    F = A.field
    if not X.is_invertible():
        raise DomainError("transform matrix is singular")
    T_inv = _linalg.inverse(F, tilde(X))
    rows = _linalg.mat_mul(F, _linalg.mat_mul(F, T_inv, A.rows), X.rows)
    return StructureMatrix(F, rows)


def _require_finite(field: Field):
    if not field.is_finite:
        raise UnsupportedField("exhaustive GL2 search needs a finite field")


@lru_cache(maxsize=32)
def gl2_arrays(p: int):
    """All invertible (x, y, z, w) over GF(p) in lexicographic order, as int64 columns."""
    grid = np.indices((p, p, p, p)).reshape(4, -1).astype(np.int64)
    x, y, z, w = grid
    keep = (x * w - y * z) % p != 0
    return tuple(col[keep] for col in grid)


def gl2(field: Field) -> list[TransformMatrix]:
    _require_finite(field)
    return [TransformMatrix(field, *map(int, t)) for t in zip(*gl2_arrays(field.p))]


def _first(mask) -> Optional[int]:
    idx = np.flatnonzero(mask)
    return int(idx[0]) if idx.size else None


def _witness(field, cols, i) -> TransformMatrix:
    return TransformMatrix(field, *(int(c[i]) for c in cols))


def _matrix_identity_mask(A: StructureMatrix, B: StructureMatrix, p: int):
    """Mask of X in GL2(p) with tilde(X)·B == A·X (equivalently B = transform(A, X))."""
    x, y, z, w = gl2_arrays(p)
    T = (
        (x * x, y * y, x * y, x * y),
        (z * z, w * w, z * w, z * w),
        (x * z, y * w, x * w, y * z),
        (x * z, y * w, y * z, x * w),
    )
    ok = np.ones_like(x, dtype=bool)
    for i in range(4):
        for j in range(2):
            lhs = sum(T[i][k] * B.rows[k][j] for k in range(4))
            rhs = A.rows[i][0] * (x if j == 0 else y) + A.rows[i][1] * (z if j == 0 else w)
            ok &= (lhs - rhs) % p == 0
    return ok


def _checked(A, B, X, method) -> IsoWitness:
    if transform(A, X) != B:
        raise InvariantViolation(f"{method.value} witness {X} does not transform {A.rows} to {B.rows}")
    return IsoWitness(True, method, X)


def are_isomorphic_bruteforce(A: StructureMatrix, B: StructureMatrix) -> IsoWitness:
    _check_field(A, B)
    F = A.field
    _require_finite(F)
    i = _first(_matrix_identity_mask(A, B, F.p))
    if i is None:
        return IsoWitness(False, IsoMethod.BRUTE_FORCE)
    return _checked(A, B, _witness(F, gl2_arrays(F.p), i), IsoMethod.BRUTE_FORCE)


def system4_residuals(s: StraightParams, t: StraightParams, x, y, z, w):
    """lhs - rhs of the eight equations for X = [[x, y], [z, w]] carrying s to t.

    Works on scalars or numpy arrays; no reduction is applied.
    """
    p, q, a, b, c, d = s.values
    p2, q2, a2, b2, c2, d2 = t.values
    return [
        p2*y*y + (a2 + c2)*x*y - z,
        x*x + q2*y*y + (b2 + d2)*x*y - w,
        p2*w*w + (a2 + c2)*z*w - (p*x + q*z),
        z*z + q2*w*w + (b2 + d2)*z*w - (p*y + q*w),
        p2*y*w + a2*x*w + c2*y*z - (a*x + b*z),
        x*z + q2*y*w + b2*x*w + d2*y*z - (a*y + b*w),
        p2*y*w + a2*y*z + c2*x*w - (c*x + d*z),
        x*z + q2*y*w + b2*y*z + d2*x*w - (c*y + d*w),
    ]


def straight_iso_system4(s: StraightParams, t: StraightParams) -> IsoWitness:
    _check_field(s, t)
    F = s.field
    _require_finite(F)
    cols = gl2_arrays(F.p)
    ok = np.ones_like(cols[0], dtype=bool)
    for r in system4_residuals(s, t, *cols):
        ok &= r % F.p == 0
    i = _first(ok)
    if i is None:
        return IsoWitness(False, IsoMethod.SYSTEM4)
    return _checked(s.embed(), t.embed(), _witness(F, cols, i), IsoMethod.SYSTEM4)


def system5_residuals(p, p2, X: TransformMatrix) -> list:
    """The six equations for S(p,0..) -> S(p2,0..), as lhs - rhs."""
    F = X.field
    x, y, z, w = X.x, X.y, X.z, X.w
    m, s = F.mul, F.sub
    return [
        s(m(p2, m(y, y)), z),
        s(m(x, x), w),
        s(m(p2, m(w, w)), m(p, x)),
        s(m(z, z), m(p, y)),
        m(y, w),
        m(x, z),
    ]


def type1(field: Field, p) -> StraightParams:
    return StraightParams.of(field, (p, 0, 0, 0, 0, 0))


def type1_iso_decide(p, p2, field: Field) -> IsoWitness:
    """Decide S(p,0,0,0,0,0) ≅ S(p2,0,0,0,0,0) through p ≈ p2, with a witness."""
    F = field
    p, p2 = F.canon(p), F.canon(p2)
    if not approx_equiv(p, p2, F):
        return IsoWitness(False, IsoMethod.LEMMA4)
    if sim_equiv(p, p2, F):
        # p = p2 x^3
        x = cube_root(F.div(p, p2), F)
        X = TransformMatrix(F, x, F.zero, F.zero, F.mul(x, x))
        method = IsoMethod.LEMMA4_CASE1
    else:
        # p^2 = p2 z^3
        z = cube_root(F.div(F.mul(p, p), p2), F)
        X = TransformMatrix(F, F.zero, F.div(F.mul(z, z), p), z, F.zero)
        method = IsoMethod.LEMMA4_CASE2
    if failing := [i + 1 for i, r in enumerate(system5_residuals(p, p2, X)) if not F.eq(r, F.zero)]:
        raise InvariantViolation(f"witness {X} fails equations {failing} for {p} -> {p2}")
    return _checked(type1(F, p).embed(), type1(F, p2).embed(), X, method)
