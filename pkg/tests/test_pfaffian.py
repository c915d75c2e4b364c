import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import Q, arr, arrangements, braid
from stabhyp.pfaffian import (
    LogConnection,
    apply_addition,
    check_integrability,
    commutator,
    identity_matrix,
    is_zero,
    mat_inverse,
    mat_mul,
)


def M(*rows):
    return tuple(tuple(Q(c) for c in r) for r in rows)


def transposition_connection():
    # hyperplanes x1=x2, x1=x3, x2=x3 with the matching 3x3 permutation matrices
    P12 = M((0, 1, 0), (1, 0, 0), (0, 0, 1))
    P13 = M((0, 0, 1), (0, 1, 0), (1, 0, 0))
    P23 = M((1, 0, 0), (0, 0, 1), (0, 1, 0))
    return LogConnection(braid(3), 3, (P12, P13, P23))


def diagonal_counterexample():
    return LogConnection(arr("x1=0; x2=0", 2), 2, (M((1, 0), (0, 0)), M((0, 1), (0, 0))))


def test_transposition_connection_is_integrable():
    assert check_integrability(transposition_connection()) == []


def test_zero_connection():
    assert check_integrability(LogConnection.zero(braid(4), 3)) == []


def test_diagonal_counterexample():
    C = diagonal_counterexample()
    bad = check_integrability(C)
    assert len(bad) == 1
    (v,) = bad
    assert v.flat.codim == 2 and v.flat.point_coordinates() == (0, 0)
    A1, A2 = C.residues
    total = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(A1, A2))
    assert commutator(A1, total) == M((0, 1), (0, 0))


def test_addition_examples():
    C = LogConnection.zero(braid(3), 2)
    D = apply_addition(C, {0: Q(2), 2: Q(-1)})
    assert D.residues[0] == M((2, 0), (0, 2))
    assert D.residues[1] == M((0, 0), (0, 0))
    assert check_integrability(D) == []
    T = transposition_connection()
    assert apply_addition(T, {}) == T
    assert check_integrability(apply_addition(T, [Q(1)] * 3)) == []


def test_size_mismatch():
    with pytest.raises(ValueError):
        LogConnection(braid(3), 2, (M((1, 0), (0, 1)),) * 2)
    with pytest.raises(ValueError):
        LogConnection(braid(3), 2, (M((1, 0), (0, 1)),) * 2 + (M((1,),),))


def test_matrix_inverse():
    P = M((2, 1), (1, 1))
    assert mat_mul(P, mat_inverse(P)) == identity_matrix(2, Q)
    with pytest.raises(ValueError):
        mat_inverse(M((1, 2), (2, 4)))


entries = st.integers(-2, 2)


@st.composite
def connections(draw, max_size=3):
    A = draw(arrangements(max_dim=3, max_size=5, min_size=2))
    N = draw(st.integers(1, max_size))
    mats = tuple(
        tuple(tuple(Q(draw(entries)) for _ in range(N)) for _ in range(N)) for _ in range(len(A))
    )
    return LogConnection(A, N, mats)


@st.composite
def invertible(draw, N):
    while True:
        P = tuple(tuple(Q(draw(entries)) for _ in range(N)) for _ in range(N))
        try:
            mat_inverse(P)
            return P
        except ValueError:
            pass


def violation_key(bad):
    return [(v.flat, v.failing) for v in bad]


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_invariances(data):
    C = data.draw(connections())
    bad = violation_key(check_integrability(C))
    lams = {i: Q(data.draw(entries)) for i in range(len(C.arrangement))}
    assert violation_key(check_integrability(apply_addition(C, lams))) == bad
    P = data.draw(invertible(C.size))
    assert violation_key(check_integrability(C.conjugate(P))) == bad


@settings(max_examples=50, deadline=None)
@given(connections(max_size=1))
def test_rank_one_always_integrable(C):
    assert check_integrability(C) == []
    assert all(is_zero(commutator(X, Y)) for X in C.residues for Y in C.residues)
