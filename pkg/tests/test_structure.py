import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import GRID, Q, arr, arrangements, braid, example_decomposable, example_reducible
from stabhyp.convolve import is_axis_stable, is_stable, is_v_closed
from stabhyp.cyclo import cyclotomic_field
from stabhyp.geom import unit_vector
from stabhyp.structure import (
    CoordTransform,
    LinearChange,
    Reduction,
    decompose,
    find_reduction,
    pullback_all,
    reduce_fully,
    specialize,
    substitute,
)


def test_decompose_examples():
    dec = decompose(example_decomposable())
    assert dec.blocks == ((0, 2), (1, 3))
    assert all(len(F) == 5 for F in dec.factors)
    assert decompose(braid(3)).indecomposable
    assert decompose(arr("x1=0; x2=0", 2)).blocks == ((0,), (1,))


def test_find_reduction_examples():
    r = find_reduction(example_reducible())
    assert (r.i, r.j, r.a, r.b) == (1, 2, 1, 1)
    assert find_reduction(braid(3)) is None
    r = find_reduction(arr("x1=0", 2))
    assert (r.i, r.j, r.a, r.b) == (0, 1, 1, 0)
    with pytest.raises(ValueError):
        find_reduction(arr("x1=0", 1))


def test_reduce_fully_examples():
    R, steps = reduce_fully(example_reducible())
    assert R == arr("x1+x2=0; x1=1; x1=-1; x2=1; x2=-1", 2)
    assert len(steps) == 1
    A = braid(3)
    assert reduce_fully(A) == (A, [])
    R, steps = reduce_fully(arr("x1=0; x1=1", 3))
    assert R.dim == 1 and len(steps) == 2
    assert pullback_all(R, steps) == arr("x1=0; x1=1", 3)


def test_unused_leading_coordinate():
    A = arr("x2=0; x2=x3", 3)
    r = find_reduction(A)
    assert (r.i, r.j) == (0, 1) and r.a == 0
    assert r.pullback(r.apply(A)) == A


def test_specialize_examples():
    assert specialize(braid(4), 2, (0, 1)) == arr("x1=x2; x1=0; x2=0; x1=1; x2=1", 2)
    assert specialize(arr("x1=0", 2), 1, (5,)) == arr("x1=0", 1)
    assert len(specialize(arr("x2=1", 2), 1, (1,))) == 0
    with pytest.raises(ValueError):
        specialize(braid(3), 3, ())


@settings(max_examples=100, deadline=None)
@given(arrangements(max_dim=4, max_size=6))
def test_decompose_reassemble(A):
    dec = decompose(A)
    assert dec.reassemble() == A
    assert sorted(k for b in dec.blocks for k in b) == list(range(A.dim))
    assert is_axis_stable(A) == all(is_axis_stable(F) for F in dec.factors)


@st.composite
def pullbacks(draw):
    """A random arrangement pulled back along a random merge of coordinates."""
    B = draw(arrangements(max_dim=3, max_size=5))
    j = draw(st.integers(1, B.dim))
    i = draw(st.integers(0, j - 1))
    a = draw(GRID.filter(bool))
    b = draw(GRID)
    return Reduction(i, j, Q(a), Q(b)).pullback(B), B


@settings(max_examples=100, deadline=None)
@given(pullbacks())
def test_reduction_preserves_stability(pair):
    A, B = pair
    R, steps = reduce_fully(A)
    assert pullback_all(R, steps) == A
    assert R.dim < 2 or find_reduction(R) is None
    assert bool(is_stable(A)) == bool(is_stable(B)) == bool(is_stable(R))


@settings(max_examples=100, deadline=None)
@given(pullbacks())
def test_merge_preserves_axis_stability(pair):
    A, B = pair
    assert is_axis_stable(A) == is_axis_stable(B)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_specialization_keeps_closedness(data):
    A = data.draw(arrangements(max_dim=3, max_size=6, min_size=1).filter(lambda A: A.dim >= 2))
    m = data.draw(st.integers(1, A.dim - 1))
    p = tuple(data.draw(st.lists(GRID, min_size=A.dim - m, max_size=A.dim - m)))
    B = specialize(A, m, p)
    for i in range(m):
        if is_v_closed(A, unit_vector(A.dim, i, Q)):
            assert is_v_closed(B, unit_vector(m, i, Q))


@st.composite
def transforms(draw, n, field=Q):
    perm = tuple(draw(st.permutations(range(n))))
    scales = tuple(field(draw(GRID.filter(bool))) for _ in range(n))
    shifts = tuple(field(draw(GRID)) for _ in range(n))
    return CoordTransform(perm, scales, shifts)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_transform_round_trip_and_stability(data):
    A = data.draw(arrangements(max_dim=3, max_size=5))
    t = data.draw(transforms(A.dim))
    B = t.apply(A)
    assert t.pull(B) == A
    assert is_axis_stable(A) == is_axis_stable(B)


def test_transform_semantics():
    f = cyclotomic_field(1)
    t = CoordTransform((1, 0), (f(2), f(3)), (f(1), f(0)))
    # y-hyperplane y2 = 0 becomes x1 = 1 since x1 = 2*y2 + 1
    assert t.apply(arr("x2=0", 2)) == arr("x1=1", 2)
    with pytest.raises(ValueError):
        CoordTransform((0, 0), (f(1), f(1)), (f(0), f(0)))
    with pytest.raises(ValueError):
        CoordTransform((0, 1), (f(1), f(0)), (f(0), f(0)))


def test_linear_change_round_trip():
    A = arr("x1=x2; x1+x2=1; x1+x2=2", 2)
    P = LinearChange(((Q(1), Q(1)), (Q(-1), Q(1))))
    B = P.pull(A)
    assert P.push(B) == A
    assert is_axis_stable(B)


def test_substitute_arbitrary_coordinates():
    assert substitute(braid(3), {1: Q(2)}) == arr("x1=x2; x1=2; x2=2", 2)
