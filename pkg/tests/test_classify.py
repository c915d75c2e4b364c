import random

import pytest

from builders import (
    arr,
    braid,
    example3,
    example_decomposable,
    example_reducible,
    example_trivial,
    random_descriptor,
    random_transform,
    type_b,
    type_d,
)
from stabhyp.classify import (
    A_PRIME_ONLY,
    FAMILY,
    FULL,
    NOT_STABLE,
    TRIVIAL,
    UNRECOGNIZED,
    FamilyDescriptor,
    classify,
    make_family,
    omega_prime_saturation,
    recognize_family,
)
from stabhyp.convolve import is_axis_stable, is_stable
from stabhyp.cyclo import cyclotomic_field
from stabhyp.structure import LinearChange

Q = cyclotomic_field(1)


def test_make_family_examples():
    B3 = make_family(FamilyDescriptor(3, 2), Q)
    assert B3 == type_b(3)
    assert len(B3) == 9
    assert make_family(FamilyDescriptor(4, 1, variant=A_PRIME_ONLY), Q) == braid(4)
    A = make_family(FamilyDescriptor(2, 1, (Q(1), Q(2)), (Q.one,)), Q)
    assert A == arr("x1=x2; x1=1; x1=2; x2=1; x2=2; x1=0; x2=0", 2)


@pytest.mark.parametrize(
    "d, field",
    [
        (FamilyDescriptor(2, 1, (), (Q.one,)), Q),
        (FamilyDescriptor(2, 2, (Q(1),), (Q(-1),)), Q),
        (FamilyDescriptor(3, 1, (), None, A_PRIME_ONLY), Q),
        (FamilyDescriptor(4, 2, (), None, A_PRIME_ONLY), Q),
        (FamilyDescriptor(3, 3), Q),
        (FamilyDescriptor(3, 1, (Q(0),)), Q),
        (FamilyDescriptor(3, 1, (), (Q.one,)), Q),
        (FamilyDescriptor(1, 1, (Q(1),)), Q),
    ],
)
def test_make_family_rejects_invalid(d, field):
    with pytest.raises(ValueError):
        make_family(d, field)


def test_omega_prime_saturation():
    f4 = cyclotomic_field(4)
    z = f4.zeta
    assert set(omega_prime_saturation([Q(1), Q(-1)])) == {Q(1), Q(-1)}
    assert set(omega_prime_saturation([f4.one, z])) == {f4.one, z, f4(-1), -z}
    assert omega_prime_saturation([Q(1)]) == [Q(1)]
    with pytest.raises(ValueError):
        omega_prime_saturation([Q(1), Q(2)])
    with pytest.raises(ValueError):
        omega_prime_saturation([Q(-1)])


def test_classify_examples():
    rep = classify(braid(4))
    assert rep.kinds() == (FAMILY,)
    assert rep.descriptors() == [FamilyDescriptor(4, 1, (), None, A_PRIME_ONLY)]
    rep = classify(type_b(3))
    assert rep.descriptors() == [FamilyDescriptor(3, 2, (), None, FULL)]
    rep = classify(type_d(4))
    assert rep.kinds() == (NOT_STABLE,) and not rep.stable


def test_classify_decomposable_reducible_trivial():
    rep = classify(example_decomposable())
    assert rep.blocks == ((0, 2), (1, 3))
    assert rep.kinds() == (FAMILY, FAMILY)
    assert rep.reconstruct() == example_decomposable()

    rep = classify(example_reducible())
    (v,) = rep.factors
    assert len(v.reductions) == 1 and v.reduced.dim == 2
    assert v.kind == FAMILY
    assert rep.reconstruct() == example_reducible()

    rep = classify(example_trivial())
    assert rep.kinds() == (TRIVIAL,)
    assert rep.reconstruct() == example_trivial()

    # the braid arrangement in C^3 has a single codim-2 flat
    assert classify(braid(3)).kinds() == (TRIVIAL,)


def test_classify_changes_coordinates_when_needed():
    A = example3()
    rep = classify(A)
    assert rep.stable and isinstance(rep.coordinates, LinearChange)
    assert is_axis_stable(rep.coordinates.pull(A))
    assert rep.reconstruct() == A


def test_failed_recognition_names_the_first_mismatch():
    # one axis constant short of a family, and therefore not stable either
    A = arr("x1=x2; x1=0; x2=0; x1=1; x2=1; x1=2", 2)
    assert classify(A).kinds() == (NOT_STABLE,)
    res = recognize_family(arr("x1=x2; x1=-x2; x1=0; x2=0; x1=1; x2=1", 2))
    assert isinstance(res, str) and "x1 = -1 is missing" in res
    assert "involves 3" in recognize_family(arr("x1+x2+x3=0; x1=0; x1=x2", 3))


def test_families_are_stable_in_given_axes():
    rnd = random.Random(7)
    for _ in range(40):
        d, f = random_descriptor(rnd)
        A = make_family(d, f)
        assert is_axis_stable(A)
        assert is_stable(A)


def test_round_trip_sample():
    rnd = random.Random(11)
    for _ in range(40):
        d, f = random_descriptor(rnd)
        A = random_transform(rnd, d.n, f).apply(make_family(d, f))
        rep = classify(A)
        assert rep.kinds() == (FAMILY,), (d, rep.factors[0].diagnostic)
        (v,) = rep.factors
        assert v.transform.apply(make_family(v.descriptor, f)) == v.reduced
        assert rep.reconstruct() == A
        assert v.descriptor.n == d.n and v.descriptor.variant == d.variant


def test_verdict_kinds_are_exhaustive():
    for A in (braid(4), type_d(4), example_trivial(), example_decomposable()):
        for k in classify(A).kinds():
            assert k in (FAMILY, TRIVIAL, NOT_STABLE, UNRECOGNIZED)
