import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ecalg import _linalg
from ecalg.algebra2d import (
    Element,
    StraightParams,
    StructureMatrix,
    TransformMatrix,
    all_elements,
    curl_disagreement,
    find_identity,
    find_identity_bruteforce,
    is_associative,
    is_commutative,
    is_curled,
    is_curled_pointwise,
    is_straight,
    multiply,
    rank,
    square,
    tilde,
)
from ecalg.errors import DomainError
from ecalg.field_core import GF, QQ
from ecalg.iso import gl2, transform

F2, F3, F5, F7 = GF(2), GF(3), GF(5), GF(7)


def S(field, *vals):
    return StraightParams.of(field, vals).embed()


def all_matrices(F):
    for e in itertools.product(F.elements(), repeat=8):
        yield StructureMatrix(F, (e[0:2], e[2:4], e[4:6], e[6:8]))


# e² = e, ef = fe = f, f² = 0: the dual numbers, with e the identity
DUAL = lambda F: StructureMatrix.of(F, [(1, 0), (0, 0), (0, 1), (0, 1)])


def test_products_of_basis():
    A = StructureMatrix.of(QQ, [(3, 5), (7, 11), (13, 17), (19, 23)])
    e, f = Element(QQ.one, QQ.zero), Element(QQ.zero, QQ.one)
    assert multiply(e, e, A) == Element(3, 5)
    assert multiply(f, f, A) == Element(7, 11)
    assert multiply(e, f, A) == Element(13, 17)
    assert multiply(f, e, A) == Element(19, 23)


def test_type1_table():
    A = S(F7, 3, 0, 0, 0, 0, 0)
    e, f = Element(1, 0), Element(0, 1)
    assert multiply(f, f, A) == Element(3, 0)
    assert multiply(e, f, A) == Element(0, 0)
    assert multiply(Element(0, 0), Element(4, 5), A) == Element(0, 0)


def test_square_examples():
    A = S(F2, 1, 0, 0, 0, 0, 0)
    assert square(Element(1, 0), A) == Element(0, 1)
    assert square(Element(1, 1), A) == Element(1, 1)
    assert square(Element(0, 0), A) == Element(0, 0)


def test_field_mismatch():
    with pytest.raises(DomainError):
        transform(S(F5, 1, 0, 0, 0, 0, 0), TransformMatrix.identity(F7))


matrices7 = st.lists(st.integers(0, 6), min_size=8, max_size=8).map(
    lambda e: StructureMatrix(F7, (tuple(e[0:2]), tuple(e[2:4]), tuple(e[4:6]), tuple(e[6:8]))))
elements7 = st.tuples(st.integers(0, 6), st.integers(0, 6)).map(lambda t: Element(*t))


@given(matrices7, elements7, elements7, elements7, st.integers(0, 6))
def test_bilinearity(A, u, u2, v, k):
    F = A.field
    lhs = multiply(Element(F.add(u.alpha, u2.alpha), F.add(u.beta, u2.beta)), v, A)
    a, b = multiply(u, v, A), multiply(u2, v, A)
    assert lhs == Element(F.add(a.alpha, b.alpha), F.add(a.beta, b.beta))
    scaled = multiply(u, Element(F.mul(k, v.alpha), F.mul(k, v.beta)), A)
    assert scaled == Element(F.mul(k, a.alpha), F.mul(k, a.beta))


def test_commutativity_examples():
    assert is_commutative(S(QQ, 5, 0, 0, 0, 0, 0))
    assert not is_commutative(StructureMatrix.of(F5, [(0, 0), (0, 0), (1, 0), (0, 1)]))
    assert is_commutative(StructureMatrix.zero(F5))


def test_identity_examples():
    assert find_identity(S(F7, 3, 0, 0, 0, 0, 0)) is None
    assert find_identity(S(QQ, Fraction(1, 2), 0, 0, 0, 0, 0)) is None
    assert find_identity(DUAL(QQ)) == Element(1, 0)
    assert find_identity(StructureMatrix.zero(F3)) is None


@pytest.mark.parametrize("F", [F2, F3])
def test_identity_agrees_with_search(F):
    for A in all_matrices(F):
        assert find_identity(A) == find_identity_bruteforce(A)


def test_associativity_examples():
    assert not is_associative(S(F7, 1, 0, 0, 0, 0, 0))
    assert is_associative(StructureMatrix.zero(F7))
    assert is_associative(DUAL(F5))
    assert is_associative(DUAL(QQ))


def _all_element_triples_associative(F):
    """Element-level associativity for every structure matrix at once (numpy)."""
    p = F.p
    M = np.array(list(itertools.product(range(p), repeat=8)), dtype=np.int64).T
    a1, b1, a2, b2, a3, b3, a4, b4 = M

    def mul(u, v):
        (s, t), (s2, t2) = u, v
        ee, ef, fe, ff = s * s2, s * t2, t * s2, t * t2
        return ((ee * a1 + ef * a3 + fe * a4 + ff * a2) % p,
                (ee * b1 + ef * b3 + fe * b4 + ff * b2) % p)

    ok = np.ones(M.shape[1], dtype=bool)
    els = [(s, t) for s in range(p) for t in range(p)]
    for u, v, w in itertools.product(els, repeat=3):
        l0, l1 = mul(mul(u, v), w)
        r0, r1 = mul(u, mul(v, w))
        ok &= (l0 == r0) & (l1 == r1)
    return ok


@pytest.mark.parametrize("F", [F2, F3])
def test_associativity_agrees_with_element_triples(F):
    expected = _all_element_triples_associative(F)
    got = np.array([is_associative(A) for A in all_matrices(F)])
    assert (got == expected).all()
    assert expected.any() and not expected.all()


def test_straight_examples():
    for vals in [(1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 0), (2, 3, 4, 1, 0, 6)]:
        assert is_straight(S(F7, *vals))
    assert not is_straight(StructureMatrix.zero(F7))
    # K x K: (αe + βf)² = α²e + β²f is not a multiple of e + 2f over GF(5)
    KxK = StructureMatrix.of(F5, [(1, 0), (0, 1), (0, 0), (0, 0)])
    assert is_straight(KxK) and not is_curled_pointwise(KxK)
    # x² = (2α + 3β) x for every x
    assert is_curled(StructureMatrix.of(F5, [(2, 0), (0, 3), (3, 2), (0, 0)]))


@pytest.mark.parametrize("F", [F3])
def test_curl_notions_agree_exhaustively(F):
    assert all(is_curled(A) == is_curled_pointwise(A) for A in all_matrices(F))


@pytest.mark.parametrize("F", [F5, F7])
def test_curl_notions_agree_sampled(F):
    rng = random.Random(1)
    for _ in range(400):
        e = [rng.randrange(F.p) for _ in range(8)]
        A = StructureMatrix(F, (tuple(e[0:2]), tuple(e[2:4]), tuple(e[4:6]), tuple(e[6:8])))
        assert is_curled(A) == is_curled_pointwise(A)
        if is_curled(A):
            assert is_curled_pointwise(A)


def test_curl_disagreement_flagged_on_gf2():
    # over GF(2) the form αβ(α + β) vanishes at every point
    flagged = [A for A in all_matrices(F2) if curl_disagreement(A)]
    assert flagged
    for A in flagged:
        assert is_curled_pointwise(A) and not is_curled(A)


def test_rank_examples():
    assert rank(S(QQ, 1, 0, 0, 0, 0, 0)) == 2
    assert rank(StructureMatrix.zero(QQ)) == 0
    assert rank(S(F3, 0, 0, 0, 0, 0, 0)) == 1


def test_straight_rank_criterion():
    for vals in itertools.product(range(3), repeat=6):
        p, q, a, b, c, d = vals
        assert (rank(S(F3, *vals)) == 2) == any((p, a, c))


def test_tilde_examples():
    I = TransformMatrix.identity(QQ)
    assert tilde(I) == _linalg.identity(QQ, 4)
    X = TransformMatrix.of(QQ, 1, 1, 0, 1)
    assert tilde(X) == ((1, 1, 1, 1), (0, 1, 0, 0), (0, 1, 1, 0), (0, 1, 0, 1))
    D = TransformMatrix.of(F7, 2, 0, 0, 1)
    assert _linalg.det(F7, tilde(D)) == 2 == F7.pow(D.det(), 4)


def _leibniz_det(F, M):
    total = F.zero
    n = len(M)
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = F.one
        for i in range(n):
            term = F.mul(term, M[i][perm[i]])
        total = F.sub(total, term) if inversions % 2 else F.add(total, term)
    return total


@pytest.mark.parametrize("F", [F3, F5])
def test_tilde_determinant(F):
    for X in gl2(F):
        d = _leibniz_det(F, tilde(X))
        assert d == F.pow(X.det(), 4) == _linalg.det(F, tilde(X))


def test_tilde_homomorphism_gl2_3():
    group = gl2(F3)
    assert len(group) == 48
    for X, Y in itertools.product(group, repeat=2):
        assert tilde(X @ Y) == _linalg.mat_mul(F3, tilde(X), tilde(Y))


def test_gl2_counts():
    for p in (2, 3, 5, 7):
        assert len(gl2(GF(p))) == (p * p - 1) * (p * p - p)


def test_inverse_and_solve():
    M = ((2, 1), (1, 1))
    assert _linalg.inverse(QQ, M) == ((1, -1), (-1, 2))
    with pytest.raises(DomainError):
        _linalg.inverse(QQ, ((1, 2), (2, 4)))
    assert _linalg.solve(QQ, ((1, 1), (1, 1)), (1, 2)) is None


def test_straight_params_roundtrip():
    s = StraightParams.of(F7, (1, 2, 3, 4, 5, 6))
    assert s.embed().straight_params() == s
    assert StructureMatrix.zero(F7).straight_params() is None
    assert str(s) == "S(1, 2, 3, 4, 5, 6)"
    assert len(all_elements(F3)) == 9
