"""Two-dimensional algebras given by structure constants on a basis {e, f}.

A structure matrix has rows (a1, b1), (a2, b2), (a3, b3), (a4, b4) with

    e·e = a1 e + b1 f      f·f = a2 e + b2 f
    e·f = a3 e + b3 f      f·e = a4 e + b4 f

Note the row order: e², f², ef, fe.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from . import _linalg
from .errors import DomainError
from .field_core import Field


@dataclass(frozen=True)
class Element:
    alpha: object
    beta: object

    def __iter__(self):
        return iter((self.alpha, self.beta))


@dataclass(frozen=True)
class StructureMatrix:
    field: Field
    rows: tuple

    @classmethod
    def of(cls, field: Field, rows) -> "StructureMatrix":
        rows = tuple(tuple(field.canon(v) for v in row) for row in rows)
        if len(rows) != 4 or any(len(r) != 2 for r in rows):
            raise DomainError("a structure matrix is 4x2")
        return cls(field, rows)

    @classmethod
    def zero(cls, field: Field) -> "StructureMatrix":
        return cls.of(field, [(0, 0)] * 4)

    @property
    def entries(self) -> tuple:
        """(a1, b1, a2, b2, a3, b3, a4, b4)"""
        return tuple(itertools.chain.from_iterable(self.rows))

    @property
    def e_sq(self):
        return self.rows[0]

    @property
    def f_sq(self):
        return self.rows[1]

    @property
    def ef(self):
        return self.rows[2]

    @property
    def fe(self):
        return self.rows[3]

    def straight_params(self) -> Optional["StraightParams"]:
        """Read back (p, q, a, b, c, d) if this matrix has the straight shape e² = f."""
        F = self.field
        if not (F.eq(self.rows[0][0], F.zero) and F.eq(self.rows[0][1], F.one)):
            return None
        (p, q), (a, b), (c, d) = self.rows[1:]
        return StraightParams(F, p, q, a, b, c, d)


@dataclass(frozen=True)
class StraightParams:
    """S(p, q, a, b, c, d): e² = f, f² = pe + qf, ef = ae + bf, fe = ce + df."""

    field: Field
    p: object
    q: object
    a: object
    b: object
    c: object
    d: object

    @classmethod
    def of(cls, field: Field, values) -> "StraightParams":
        values = [field.canon(v) for v in values]
        if len(values) != 6:
            raise DomainError("straight parameters are a 6-tuple")
        return cls(field, *values)

    @property
    def values(self) -> tuple:
        return (self.p, self.q, self.a, self.b, self.c, self.d)

    def embed(self) -> StructureMatrix:
        F = self.field
        return StructureMatrix(F, ((F.zero, F.one), (self.p, self.q), (self.a, self.b), (self.c, self.d)))

    def __str__(self):
        return "S(" + ", ".join(self.field.format(v) for v in self.values) + ")"


@dataclass(frozen=True)
class TransformMatrix:
    """Basis change X = [[x, y], [z, w]]."""

    field: Field
    x: object
    y: object
    z: object
    w: object

    @classmethod
    def of(cls, field: Field, x, y, z, w) -> "TransformMatrix":
        return cls(field, *(field.canon(v) for v in (x, y, z, w)))

    @classmethod
    def identity(cls, field: Field) -> "TransformMatrix":
        return cls(field, field.one, field.zero, field.zero, field.one)

    @property
    def rows(self):
        return ((self.x, self.y), (self.z, self.w))

    def det(self):
        F = self.field
        return F.sub(F.mul(self.x, self.w), F.mul(self.y, self.z))

    def is_invertible(self) -> bool:
        return not self.field.eq(self.det(), self.field.zero)

    def inverse(self) -> "TransformMatrix":
        F = self.field
        d = self.det()
        if F.eq(d, F.zero):
            raise DomainError("transform matrix is singular")
        di = F.inv(d)
        return TransformMatrix(F, F.mul(self.w, di), F.neg(F.mul(self.y, di)),
                               F.neg(F.mul(self.z, di)), F.mul(self.x, di))

    def __matmul__(self, other: "TransformMatrix") -> "TransformMatrix":
        (a, b), (c, d) = _linalg.mat_mul(self.field, self.rows, other.rows)
        return TransformMatrix(self.field, a, b, c, d)


def _check_field(*objs):
    fields = {o.field for o in objs}
    if len(fields) != 1:
        raise DomainError(f"field mismatch: {sorted(map(str, fields))}")


def _mul_raw(F, u, v, rows):
    (al, be), (al2, be2) = u, v
    (a1, b1), (a2, b2), (a3, b3), (a4, b4) = rows
    c_ee, c_ef, c_fe, c_ff = F.mul(al, al2), F.mul(al, be2), F.mul(be, al2), F.mul(be, be2)
    x = F.add(F.add(F.mul(c_ee, a1), F.mul(c_ef, a3)), F.add(F.mul(c_fe, a4), F.mul(c_ff, a2)))
    y = F.add(F.add(F.mul(c_ee, b1), F.mul(c_ef, b3)), F.add(F.mul(c_fe, b4), F.mul(c_ff, b2)))
    return x, y


def multiply(u: Element, v: Element, A: StructureMatrix) -> Element:
    """Bilinear product of two elements."""
    F = A.field
    return Element(*_mul_raw(F, tuple(u), tuple(v), A.rows))


def square(u: Element, A: StructureMatrix) -> Element:
    return multiply(u, u, A)


def all_elements(field: Field) -> list:
    return [Element(a, b) for a in field.elements() for b in field.elements()]


def is_commutative(A: StructureMatrix) -> bool:
    F = A.field
    return all(F.eq(s, t) for s, t in zip(A.ef, A.fe))


def find_identity(A: StructureMatrix) -> Optional[Element]:
    """Two-sided identity u = αe + βf, solved as a linear system in (α, β)."""
    F = A.field
    (a1, b1), (a2, b2), (a3, b3), (a4, b4) = A.rows
    # ue = e, uf = f, eu = e, fu = f, each split into e- and f-coordinates
    lhs = [
        (a1, a4), (b1, b4),
        (a3, a2), (b3, b2),
        (a1, a3), (b1, b3),
        (a4, a2), (b4, b2),
    ]
    rhs = [F.one, F.zero, F.zero, F.one] * 2
    sol = _linalg.solve(F, lhs, rhs)
    return None if sol is None else Element(*sol)


def find_identity_bruteforce(A: StructureMatrix) -> Optional[Element]:
    e, f = Element(A.field.one, A.field.zero), Element(A.field.zero, A.field.one)
    for u in all_elements(A.field):
        if (multiply(u, e, A) == e and multiply(u, f, A) == f
                and multiply(e, u, A) == e and multiply(f, u, A) == f):
            return u
    return None


def is_associative(A: StructureMatrix) -> bool:
    F = A.field
    basis = [Element(F.one, F.zero), Element(F.zero, F.one)]
    for g, h, k in itertools.product(basis, repeat=3):
        if multiply(multiply(g, h, A), k, A) != multiply(g, multiply(h, k, A), A):
            return False
    return True


def is_associative_bruteforce(A: StructureMatrix) -> bool:
    els = all_elements(A.field)
    for u, v, w in itertools.product(els, repeat=3):
        if multiply(multiply(u, v, A), w, A) != multiply(u, multiply(v, w, A), A):
            return False
    return True


def curl_form(A: StructureMatrix) -> tuple:
    """Coefficients of det(x | x²) as a binary cubic in (α, β).

    Returned in the order α³, α²β, αβ², β³.
    """
    F = A.field
    (a1, b1), (a2, b2), (a3, b3), (a4, b4) = A.rows
    return (
        b1,
        F.sub(F.add(b3, b4), a1),
        F.sub(b2, F.add(a3, a4)),
        F.neg(a2),
    )


def is_curled(A: StructureMatrix) -> bool:
    return all(A.field.eq(c, A.field.zero) for c in curl_form(A))


def is_straight(A: StructureMatrix) -> bool:
    return not is_curled(A)


def is_curled_pointwise(A: StructureMatrix) -> bool:
    """Every x² is a multiple of x, checked element by element (finite fields)."""
    F = A.field
    for u in all_elements(F):
        s = square(u, A)
        if not F.eq(F.mul(u.alpha, s.beta), F.mul(u.beta, s.alpha)):
            return False
    return True


def curl_disagreement(A: StructureMatrix) -> bool:
    """True when the pointwise and symbolic curledness notions differ on A."""
    return is_curled_pointwise(A) != is_curled(A)


def rank(A: StructureMatrix) -> int:
    return _linalg.rank(A.field, A.rows)


def tilde(X: TransformMatrix) -> tuple:
    """The 4x4 lift of X = [[a, b], [c, d]] acting on (e², f², ef, fe)."""
    F = X.field
    a, b, c, d = X.x, X.y, X.z, X.w
    m = F.mul
    return (
        (m(a, a), m(b, b), m(a, b), m(a, b)),
        (m(c, c), m(d, d), m(c, d), m(c, d)),
        (m(a, c), m(b, d), m(a, d), m(b, c)),
        (m(a, c), m(b, d), m(b, c), m(a, d)),
    )


def det4(field: Field, M) -> object:
    return _linalg.det(field, M)
