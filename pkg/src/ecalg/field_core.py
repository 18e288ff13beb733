"""Exact scalars: prime fields GF(p) and the rationals.

Elements are plain Python values so the hot enumeration loops stay cheap:
GF(p) scalars are ints in ``range(p)``, rational scalars are
:class:`fractions.Fraction`.  All arithmetic goes through the field object.

The second half of the module handles the multiplicative group: cubes,
the relations ``sim`` (a/b is a cube) and ``approx`` (a ~ b or a^2 ~ b),
representative systems, and cube-free signatures of rationals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from sympy import factorint, isprime

from .errors import DomainError, ParseError, ResourceError, UnsupportedField

# numerators/denominators at or above this are refused by q_signature
FACTOR_BOUND = 2**63


class Field:
    """Arithmetic interface shared by :class:`GF` and :class:`Rationals`."""

    is_finite = False

    def canon(self, value):
        raise NotImplementedError

    def add(self, a, b):
        return self.canon(a + b)

    def sub(self, a, b):
        return self.canon(a - b)

    def mul(self, a, b):
        return self.canon(a * b)

    def neg(self, a):
        return self.canon(-a)

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        out = self.one
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def eq(self, a, b) -> bool:
        return self.canon(a) == self.canon(b)

    @property
    def zero(self):
        return self.canon(0)

    @property
    def one(self):
        return self.canon(1)

    def elements(self) -> list:
        raise UnsupportedField(f"{self} is infinite; cannot enumerate its elements")

    def nonzero_elements(self) -> list:
        return [x for x in self.elements() if x != 0]

    def parse(self, text: str):
        """Read a scalar written as ``"n"`` or ``"n/d"``."""
        if not isinstance(text, str):
            raise ParseError(f"scalar must be a string, got {text!r}")
        try:
            r = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"malformed scalar {text!r}") from exc
        return self.from_fraction(r)

    def from_fraction(self, r: Fraction):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(self.canon(a))


@dataclass(frozen=True)
class GF(Field):
    p: int

    is_finite = True

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or not isprime(self.p):
            raise DomainError(f"GF({self.p!r}): modulus must be a prime >= 2")

    def canon(self, value):
        if isinstance(value, Fraction):
            return self.from_fraction(value)
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise DomainError("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, n: int):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def eq(self, a, b) -> bool:
        return (a - b) % self.p == 0

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def elements(self) -> list:
        return list(range(self.p))

    def from_fraction(self, r: Fraction):
        if r.denominator % self.p == 0:
            raise ParseError(f"denominator {r.denominator} vanishes in GF({self.p})")
        return r.numerator * pow(r.denominator, -1, self.p) % self.p

    def to_json(self) -> dict:
        return {"kind": "gf", "p": self.p}

    def __str__(self):
        return f"GF({self.p})"


@dataclass(frozen=True)
class Rationals(Field):

    def canon(self, value):
        return Fraction(value)

    def inv(self, a):
        if a == 0:
            raise DomainError("inverse of zero")
        return 1 / Fraction(a)

    def from_fraction(self, r: Fraction):
        return r

    def format(self, a) -> str:
        return str(Fraction(a))

    def to_json(self) -> dict:
        return {"kind": "q"}

    def __str__(self):
        return "Q"


QQ = Rationals()


def field_from_json(obj) -> Field:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError(f"field descriptor must be an object with 'kind', got {obj!r}", "field")
    kind = obj["kind"]
    if kind == "q":
        return QQ
    if kind == "gf":
        p = obj.get("p")
        if not isinstance(p, int) or isinstance(p, bool):
            raise ParseError(f"GF modulus must be an integer, got {p!r}", "field.p")
        try:
            return GF(p)
        except DomainError as exc:
            raise ParseError(str(exc), "field.p") from exc
    raise ParseError(f"unknown field kind {kind!r}", "field.kind")


def parse_field_spec(text: str) -> Field:
    """Short CLI form: ``gf:7`` or ``q``."""
    text = text.strip().lower()
    if text in ("q", "qq", "rationals"):
        return QQ
    if text.startswith("gf:"):
        try:
            p = int(text[3:])
        except ValueError as exc:
            raise ParseError(f"bad field spec {text!r}", "--field") from exc
        return field_from_json({"kind": "gf", "p": p})
    raise ParseError(f"bad field spec {text!r}; expected gf:<prime> or q", "--field")


def enumerate_elements(field: Field) -> list:
    return field.elements()


# ---------------------------------------------------------------- cubes

@lru_cache(maxsize=None)
def _cube_set(p: int) -> frozenset:
    return frozenset(pow(k, 3, p) for k in range(1, p))


def cube_subgroup(field: Field) -> frozenset:
    """{k^3 : k in K*} for a prime field."""
    if not field.is_finite:
        raise UnsupportedField("the cube subgroup of Q* is infinite")
    return _cube_set(field.p)


def _require_nonzero(field, *xs):
    for x in xs:
        if field.eq(x, field.zero):
            raise DomainError("cube-class relations are defined on K* only")


def sim_equiv(a, b, field: Field) -> bool:
    """a ~ b  iff  a/b is a cube in K*."""
    _require_nonzero(field, a, b)
    ratio = field.div(a, b)
    if field.is_finite:
        return ratio in _cube_set(field.p)
    return q_signature(ratio).is_trivial()


def approx_equiv(a, b, field: Field) -> bool:
    """a ≈ b  iff  a ~ b or a^2 ~ b."""
    return sim_equiv(a, b, field) or sim_equiv(field.mul(a, a), b, field)


def is_cube_rootable(field: Field) -> bool:
    if not field.is_finite:
        return False
    return len(_cube_set(field.p)) == field.p - 1


def cube_root(r, field: Field):
    """Some k with k^3 = r, or None.  Smallest residue over GF(p)."""
    if field.is_finite:
        r %= field.p
        for k in range(field.p):
            if pow(k, 3, field.p) == r:
                return k
        return None
    r = Fraction(r)
    if r == 0:
        return Fraction(0)
    num = _integer_cube_root(abs(r.numerator))
    den = _integer_cube_root(r.denominator)
    if num is None or den is None:
        return None
    return Fraction(num if r > 0 else -num, den)


def _integer_cube_root(n: int) -> Optional[int]:
    # exact root assembled from the factorization
    _check_bound(n)
    root = 1
    for prime, e in factorint(n).items():
        if e % 3:
            return None
        root *= prime ** (e // 3)
    return root


# ------------------------------------------------------------ partitions

@dataclass(frozen=True)
class CubeClassPartition:
    """K* split by ``sim`` or ``approx``.

    ``classes`` is None over Q, where the partition is infinite; use
    :meth:`equivalent` as the decision procedure there.
    """

    field: Field
    relation: str
    classes: Optional[tuple]

    def equivalent(self, a, b) -> bool:
        return _RELATIONS[self.relation](a, b, self.field)

    def class_of(self, a) -> frozenset:
        if self.classes is None:
            raise UnsupportedField("classes of Q* are not enumerable")
        for cls in self.classes:
            if a in cls:
                return cls
        raise DomainError(f"{a!r} is not in K*")


_RELATIONS: dict[str, Callable] = {"sim": sim_equiv, "approx": approx_equiv}


def cube_class_partition(field: Field, relation: str = "approx") -> CubeClassPartition:
    if relation not in _RELATIONS:
        raise ValueError(f"relation must be 'sim' or 'approx', not {relation!r}")
    if not field.is_finite:
        return CubeClassPartition(field, relation, None)
    rel = _RELATIONS[relation]
    classes = []
    seen = set()
    for a in field.nonzero_elements():
        if a in seen:
            continue
        cls = frozenset(b for b in field.nonzero_elements() if rel(a, b, field))
        seen |= cls
        classes.append(cls)
    return CubeClassPartition(field, relation, tuple(classes))


@dataclass(frozen=True)
class RepSystem:
    field: Field
    reps: tuple


def rep_system(field: Field) -> RepSystem:
    """Smallest residue of each ≈-class of K*."""
    if not field.is_finite:
        raise UnsupportedField("Q*/≈ is infinite; see classify.q_prime_family")
    part = cube_class_partition(field, "approx")
    return RepSystem(field, tuple(sorted(min(c) for c in part.classes)))


# ------------------------------------------------------------ signatures

@dataclass(frozen=True)
class QSignature:
    """Cube-free part of a nonzero rational: (prime, exponent mod 3) pairs."""

    pairs: tuple = ()

    def is_trivial(self) -> bool:
        return not self.pairs

    def __mul__(self, other: "QSignature") -> "QSignature":
        exps = dict(self.pairs)
        for prime, e in other.pairs:
            exps[prime] = (exps.get(prime, 0) + e) % 3
        return QSignature(tuple(sorted((q, e) for q, e in exps.items() if e)))

    def inverse(self) -> "QSignature":
        return QSignature(tuple((q, -e % 3) for q, e in self.pairs))

    def __str__(self):
        return "{" + ", ".join(f"({q},{e})" for q, e in self.pairs) + "}"


def _check_bound(n: int):
    if abs(n) >= FACTOR_BOUND:
        raise ResourceError(f"{n} exceeds the factorization bound 2^63")


def q_signature(r) -> QSignature:
    r = Fraction(r)
    if r == 0:
        raise DomainError("signature of zero is undefined")
    num, den = abs(r.numerator), r.denominator
    _check_bound(num)
    _check_bound(den)
    exps: dict[int, int] = {}
    for prime, e in factorint(num).items():
        exps[prime] = exps.get(prime, 0) + e
    for prime, e in factorint(den).items():
        exps[prime] = exps.get(prime, 0) - e
    return QSignature(tuple(sorted((q, e % 3) for q, e in exps.items() if e % 3)))


def is_prime(n: int) -> bool:
    return isinstance(n, int) and n >= 2 and isprime(n)


def gcd_cube_rootable(p: int) -> bool:
    """Closed-form counterpart of :func:`is_cube_rootable` for GF(p)."""
    return math.gcd(3, p - 1) == 1
