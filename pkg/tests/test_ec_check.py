import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ecalg.algebra2d import StraightParams, StructureMatrix, TransformMatrix, multiply, square
from ecalg.ec_check import (
    EcMethod,
    is_ec_definitional,
    is_ec_straight,
    is_ec_system2,
    system3_mask,
    system3_residuals,
)
from ecalg.errors import UnsupportedField
from ecalg.field_core import GF, QQ
from ecalg.iso import gl2, transform


def S(field, *vals):
    return StraightParams.of(field, vals)


def matrix(F, e):
    return StructureMatrix(F, (tuple(e[0:2]), tuple(e[2:4]), tuple(e[4:6]), tuple(e[6:8])))


def test_definitional_examples():
    v = is_ec_definitional(S(GF(2), 1, 0, 0, 0, 0, 0).embed())
    assert v.is_ec and v.method is EcMethod.DEFINITIONAL and v.counterexample is None
    assert is_ec_definitional(StructureMatrix.zero(GF(3)))


def test_definitional_counterexample_is_real():
    A = S(GF(3), 0, 0, 0, 0, 1, 0).embed()
    v = is_ec_definitional(A)
    assert not v.is_ec and v.failing_equation is None
    x, y = v.counterexample
    assert multiply(square(x, A), square(y, A), A) != square(multiply(x, y, A), A)


def test_definitional_refuses_rationals():
    with pytest.raises(UnsupportedField):
        is_ec_definitional(StructureMatrix.zero(QQ))


def test_system2_examples():
    assert is_ec_system2(S(QQ, 1, 0, 0, 0, 0, 0).embed())
    assert is_ec_system2(StructureMatrix.zero(QQ))
    v = is_ec_system2(S(GF(5), 0, 0, 1, 0, 0, 0).embed())
    assert not v.is_ec and v.failing_equation is not None and v.counterexample is None


def test_straight_examples():
    for p in range(1, 7):
        assert is_ec_straight(S(GF(7), p, 0, 0, 0, 0, 0))
    assert is_ec_straight(S(QQ, Fraction(-5, 3), 0, 0, 0, 0, 0))
    assert is_ec_straight(S(GF(7), 0, 0, 0, 0, 0, 0))
    v = is_ec_straight(S(GF(5), 0, 0, 1, 0, 0, 0))
    assert not v.is_ec and v.failing_equation == 3


def test_c_nonzero_with_p_a_zero_never_ec():
    # the third equation reads 0 = -c²
    F = GF(5)
    for q, b, c, d in itertools.product(range(5), range(5), range(1, 5), range(5)):
        s = S(F, 0, q, 0, b, c, d)
        assert not is_ec_straight(s)
        assert system3_residuals(s)[2] != 0


def test_definitional_equals_system2_gf2():
    for e in itertools.product(range(2), repeat=8):
        A = matrix(GF(2), e)
        assert is_ec_definitional(A).is_ec == is_ec_system2(A).is_ec


def test_definitional_equals_system2_gf5_sampled():
    rng = random.Random(0)
    F = GF(5)
    agree = 0
    for _ in range(10_000):
        A = matrix(F, [rng.randrange(5) for _ in range(8)])
        agree += is_ec_definitional(A).is_ec == is_ec_system2(A).is_ec
    assert agree == 10_000


def test_definitional_equals_system2_on_ec_straight_gf5():
    # uniform samples are almost never EC; cover the EC side explicitly
    F = GF(5)
    for vals in itertools.product(range(5), repeat=6):
        s = S(F, *vals)
        if is_ec_straight(s):
            assert is_ec_definitional(s.embed())


@pytest.mark.parametrize("p", [2, 3])
def test_system2_equals_straight_exhaustive(p):
    for vals in itertools.product(range(p), repeat=6):
        s = S(GF(p), *vals)
        assert is_ec_system2(s.embed()).is_ec == is_ec_straight(s).is_ec


straight_gf = st.sampled_from([5, 7]).flatmap(
    lambda p: st.lists(st.integers(0, p - 1), min_size=6, max_size=6).map(lambda v: S(GF(p), *v)))
straight_q = st.lists(st.fractions(-20, 20, max_denominator=5),
                      min_size=6, max_size=6).map(lambda v: S(QQ, *v))


@settings(max_examples=300)
@given(st.one_of(straight_gf, straight_q))
def test_system2_equals_straight_sampled(s):
    assert is_ec_system2(s.embed()).is_ec == is_ec_straight(s).is_ec


@pytest.mark.parametrize("p", [3, 5])
def test_vectorised_system3_matches_scalar(p):
    grid = np.indices((p,) * 6).reshape(6, -1).astype(np.int64)
    mask = system3_mask(list(grid), p)
    scalar = [is_ec_straight(S(GF(p), *map(int, t))).is_ec for t in grid.T]
    assert mask.tolist() == scalar


def test_ec_is_isomorphism_invariant_gf3():
    F = GF(3)
    ec = [A for A in (matrix(F, e) for e in itertools.product(range(3), repeat=8))
          if is_ec_system2(A)]
    rng = random.Random(0)
    group = gl2(F)
    for A in rng.sample(ec, 50):
        for X in group:
            assert is_ec_system2(transform(A, X))


@settings(max_examples=60)
@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6),
       st.tuples(*[st.integers(-4, 4)] * 4).filter(lambda t: t[0] * t[3] != t[1] * t[2]))
def test_ec_is_isomorphism_invariant_over_q(vals, xyzw):
    s = S(QQ, *vals)
    A = s.embed()
    B = transform(A, TransformMatrix.of(QQ, *xyzw))
    assert is_ec_system2(A).is_ec == is_ec_system2(B).is_ec


def test_verdict_json():
    F = GF(3)
    v = is_ec_definitional(S(F, 0, 0, 0, 0, 1, 0).embed())
    out = v.to_json(F)
    assert out["is_ec"] is False and len(out["counterexample"]) == 2
    assert is_ec_straight(S(F, 0, 0, 1, 0, 0, 0)).to_json() == {
        "is_ec": False, "method": "System3", "failing_equation": 3}
