"""Endo-commutativity, x²y² = (xy)², decided three independent ways.

* :func:`is_ec_definitional` sweeps every pair of elements (finite fields).
* :func:`is_ec_system2` evaluates eight cubic equations in the structure
  constants (any field).
* :func:`is_ec_straight` evaluates five equations in the straight-form
  parameters (p, q, a, b, c, d).

Equations are numbered from 1, top to bottom, in failure reports.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .algebra2d import Element, StraightParams, StructureMatrix
from .errors import UnsupportedField


class EcMethod(str, enum.Enum):
    DEFINITIONAL = "Definitional"
    SYSTEM2 = "System2"
    SYSTEM3 = "System3"


@dataclass(frozen=True)
class EcVerdict:
    is_ec: bool
    method: EcMethod
    failing_equation: Optional[int] = None
    counterexample: Optional[tuple] = None

    def __bool__(self):
        return self.is_ec

    def to_json(self, field=None) -> dict:
        out = {"is_ec": self.is_ec, "method": self.method.value}
        if self.failing_equation is not None:
            out["failing_equation"] = self.failing_equation
        if self.counterexample is not None:
            fmt = field.format if field is not None else str
            out["counterexample"] = [[fmt(u.alpha), fmt(u.beta)] for u in self.counterexample]
        return out


def is_ec_definitional(A: StructureMatrix) -> EcVerdict:
    F = A.field
    if not F.is_finite:
        raise UnsupportedField("the definitional check needs a finite field")
    p = F.p
    (a1, b1), (a2, b2), (a3, b3), (a4, b4) = A.rows

    def mul(u, v):
        s, t = u
        s2, t2 = v
        ee, ef, fe, ff = s * s2, s * t2, t * s2, t * t2
        return ((ee * a1 + ef * a3 + fe * a4 + ff * a2) % p,
                (ee * b1 + ef * b3 + fe * b4 + ff * b2) % p)

    els = [(s, t) for s in range(p) for t in range(p)]
    squares = {u: mul(u, u) for u in els}
    for u in els:
        su = squares[u]
        for v in els:
            lhs = mul(su, squares[v])
            uv = mul(u, v)
            if lhs != mul(uv, uv):
                return EcVerdict(False, EcMethod.DEFINITIONAL,
                                 counterexample=(Element(*u), Element(*v)))
    return EcVerdict(True, EcMethod.DEFINITIONAL)


def system2_residuals(A: StructureMatrix) -> list:
    """lhs - rhs of each of the eight cubic equations."""
    F = A.field
    (a1, b1), (a2, b2), (a3, b3), (a4, b4) = A.rows
    return [F.canon(r) for r in _system2(a1, b1, a2, b2, a3, b3, a4, b4)]


def _system2(a1, b1, a2, b2, a3, b3, a4, b4):
    return [
        (a1*a1*a2 + b1*a2*b2 + a1*b2*a3 + b1*a2*a4) - (a1*a3*a3 + a2*b3*b3 + a3*a3*b3 + a3*b3*a4),
        (a1*a1*a2 + b1*a2*b2 + b1*a2*a3 + a1*b2*a4) - (a1*a4*a4 + a2*b4*b4 + a3*a4*b4 + a4*a4*b4),
        (a1*a1*a4 + b1*a4*a4 + b1*a2*b4 + a1*a3*b4) - (a1*a1*a3 + b1*a2*b3 + b1*a3*a3 + a1*b3*a4),
        a2*(a1*a4 + a4*b4 + b2*b4) - a2*(a1*a3 + b2*b3 + a3*b3),
        (a1*b1*a2 + b1*b2*b2 + a1*b2*b3 + b1*a2*b4) - (b1*a3*a3 + b2*b3*b3 + a3*b3*b3 + a3*b3*b4),
        (a1*b1*a2 + b1*b2*b2 + b1*a2*b3 + a1*b2*b4) - (b1*a4*a4 + b2*b4*b4 + b3*a4*b4 + a4*b4*b4),
        b1*(a1*a4 + a4*b4 + b2*b4) - b1*(a1*a3 + b2*b3 + a3*b3),
        (b1*a2*a4 + b2*b3*a4 + b2*b2*b4 + a2*b4*b4) - (b1*a2*a3 + b2*b2*b3 + a2*b3*b3 + b2*a3*b4),
    ]


def is_ec_system2(A: StructureMatrix) -> EcVerdict:
    F = A.field
    for i, r in enumerate(system2_residuals(A), start=1):
        if not F.eq(r, F.zero):
            return EcVerdict(False, EcMethod.SYSTEM2, failing_equation=i)
    return EcVerdict(True, EcMethod.SYSTEM2)


def _system3(p, q, a, b, c, d):
    return [
        (p*q + p*c) - (p*b*b + a*a*b + a*b*c),
        p*(c - a) - (b - d)*(p*(b + d) - q*(a + c)),
        p*(d - b) - (a*a - c*c),
        (q*q + p*d) - (a*a + q*b*b + a*b*b + a*b*d),
        q*(d - b) - (a*b - c*d),
    ]


def system3_residuals(s: StraightParams) -> list:
    return [s.field.canon(r) for r in _system3(*s.values)]


def is_ec_straight(s: StraightParams) -> EcVerdict:
    F = s.field
    for i, r in enumerate(system3_residuals(s), start=1):
        if not F.eq(r, F.zero):
            return EcVerdict(False, EcMethod.SYSTEM3, failing_equation=i)
    return EcVerdict(True, EcMethod.SYSTEM3)


def system3_mask(cols, p):
    """Vectorised system of five equations over integer arrays mod p.

    ``cols`` is a sequence of six equally shaped integer arrays holding
    residues; returns a boolean array marking the tuples that satisfy all
    five equations.  Entries stay below p^4 before reduction, so int64 is
    exact for every p the census accepts.
    """
    ok = None
    for r in _system3(*cols):
        hit = (r % p) == 0
        ok = hit if ok is None else ok & hit
    return ok


def is_ec(A: StructureMatrix) -> bool:
    """Default decision: the eight-equation system (works over any field)."""
    return is_ec_system2(A).is_ec
