import pytest

from builders import Q, arr, braid, example3, type_b
from stabhyp.classify import FAMILY, TRIVIAL, FamilyDescriptor
from stabhyp.convolve import is_axis_stable
from stabhyp.cyclo import cyclotomic_field
from stabhyp.geom import Flat
from stabhyp.oracle import PoolSpec, brute_force_poset, enumerate_axis_stable, orbit_closure
from stabhyp.poset import Arrangement, build_poset

POOL2 = arr("x1=0; x2=0; x1=1; x1=-1; x2=1; x2=-1; x1=x2; x1=-x2", 2, M=2)


def test_brute_force_examples():
    assert brute_force_poset(braid(3)).level_sizes() == (1, 3, 1)
    P = brute_force_poset(example3())
    assert set(P.strata[2]) == {Flat.point((Q(1) / 2, Q(1) / 2)), Flat.point((Q(1), Q(1)))}
    assert brute_force_poset(Arrangement(2, Q, [])).flat_set() == {Flat.space(2)}
    with pytest.raises(ValueError):
        brute_force_poset(type_b(4))


def test_brute_force_matches_builder_on_b3():
    A = type_b(3)
    assert brute_force_poset(A).through == build_poset(A).through


def census_entry(pool, hyperplanes, **flags):
    spec = PoolSpec(pool.dim, pool.field, pool.hyperplanes, **flags)
    target = set(hyperplanes)
    for e in enumerate_axis_stable(spec):
        if set(e.arrangement) == target:
            return e
    return None


def test_census_trivial_subset():
    sub = arr("x1=x2; x1=0; x2=0", 2, M=2)
    e = census_entry(POOL2, sub, require_nontrivial=False)
    assert e is not None and e.verdicts == (TRIVIAL,)
    assert census_entry(POOL2, sub) is None


def test_census_full_pool():
    e = census_entry(POOL2, POOL2)
    f = POOL2.field
    assert e.verdicts == (FAMILY,)
    assert e.report.descriptors() == [FamilyDescriptor(2, 2, (f(1),), (f(1), f(-1)))]


def test_example3_inside_a_pool_is_not_axis_stable():
    pool = POOL2.union(arr("x1+x2=1; x1+x2=2", 2, M=2).hyperplanes)
    sub = arr("x1=x2; x1+x2=1; x1+x2=2", 2, M=2)
    assert census_entry(pool, sub, require_nontrivial=False, require_reduced=False) is None
    flags = dict(
        require_axis_stable=False, require_nontrivial=False, require_reduced=False, require_indecomposable=False
    )
    e = census_entry(pool, sub, **flags)
    assert e is not None and not is_axis_stable(e.arrangement)


def test_census_mask_filter_agrees_with_library():
    # the fast bitmask filter is cross-checked inside enumerate_axis_stable
    spec = PoolSpec(
        2,
        POOL2.field,
        POOL2.hyperplanes,
        require_indecomposable=False,
        require_reduced=False,
        require_nontrivial=False,
    )
    entries = enumerate_axis_stable(spec)
    brute = [
        bits
        for bits in range(1, 1 << len(POOL2))
        if is_axis_stable(POOL2.subset([i for i in range(len(POOL2)) if bits >> i & 1]))
    ]
    assert len(entries) == len(brute)


def test_pool_guards():
    big = arr(";".join(f"x1={k}" for k in range(21)), 1)
    with pytest.raises(ValueError):
        enumerate_axis_stable(PoolSpec(1, Q, big.hyperplanes))
    with pytest.raises(ValueError):
        PoolSpec(1, Q, big.hyperplanes[:2] * 2)


def test_orbit_examples():
    rep = orbit_closure(Q(-1), Q(-1), Q(0), Q(1))
    assert rep.closure == {Q(1), Q(-1)} and rep.m == 2 and rep.conclusion_holds
    assert not orbit_closure(Q(-1), Q(1), Q(1), Q(1)).finite
    f4 = cyclotomic_field(4)
    z = f4.zeta
    rep = orbit_closure(z, f4(-1), f4(0), f4(1))
    assert rep.closure == {f4(1), z, f4(-1), -z} and rep.m == 4 and rep.conclusion_holds


def test_orbit_preconditions():
    with pytest.raises(ValueError):
        orbit_closure(Q(1), Q(-1), Q(0), Q(1))
    with pytest.raises(ValueError):
        orbit_closure(Q(-1), Q(0), Q(0), Q(1))
    with pytest.raises(ValueError):
        orbit_closure(Q(-1), Q(-1), Q(0), Q(0))


@pytest.mark.parametrize("M", [1, 3, 4, 5, 6, 8, 12])
def test_finite_orbits_satisfy_the_conclusion(M):
    f = cyclotomic_field(M)
    roots = f.roots_of_unity(f.capacity)
    cands = roots + [f(2), f(1) / 2, f.zeta + 1]
    shifts = [f(0), f(1), f.zeta]
    seen_finite = 0
    for a1 in cands:
        if a1 == 1:
            continue
        for a2 in cands:
            for a3 in shifts:
                rep = orbit_closure(a1, a2, a3, f(1), budget=64)
                if rep.finite:
                    seen_finite += 1
                    assert rep.conclusion_holds, (a1, a2, a3)
                    assert all(a1 * w in rep.closure and a2 * w + a3 in rep.closure for w in rep.closure)
    assert seen_finite > 0
