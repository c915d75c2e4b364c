"""Checks of structural facts about v-closedness, computed by brute force.

Each function returns a list of human-readable violations (empty = holds).
"""

from itertools import combinations

from stabhyp.convolve import convolution, is_axis_stable, is_v_closed
from stabhyp.geom import Flat, unit_vector
from stabhyp.oracle import POSET_BOUND, brute_force_poset
from stabhyp.poset import build_poset


def _parallel(H, v):
    return H.direction_contains(v)


def refinement_pairs(A):
    """Distinct T, T' of codim k+1 inside S have A_T & A_T' = A_S."""
    P = brute_force_poset(A)
    bad = []
    for S in P.flats():
        k = S.codim
        if k + 1 >= len(P.strata):
            continue
        below = [T for T in P.strata[k + 1] if S.contains_flat(T)]
        for T, T2 in combinations(below, 2):
            if P.through[T] & P.through[T2] != P.through[S]:
                bad.append(f"refinement at {S}: {T} and {T2}")
    return bad


def convolution_is_closed(A, v):
    """mc_v A is v-closed."""
    return [] if is_v_closed(convolution(A, v), v) else ["mc_v A is not v-closed"]


def closed_flat_criterion(A, v):
    """S is v-closed iff every H through S is parallel to v."""
    P = brute_force_poset(A)
    bad = []
    for S in P.flats():
        closed = S.cylinder(v) == S
        parallel = all(_parallel(A[i], v) for i in P.through[S])
        if closed != parallel:
            bad.append(f"closed-flat criterion at {S}")
    return bad


def transversal_meets_closed_flat(A, v):
    """For v-closed S and H transversal to v, H & S is nonempty and
    the parallel members through H & S are exactly A_S."""
    P = brute_force_poset(A)
    bad = []
    for S in P.flats():
        if S.cylinder(v) != S:
            continue
        for i, H in enumerate(A):
            if _parallel(H, v):
                continue
            T = S.intersect(H)
            if T is None:
                bad.append(f"transversal {H} misses {S}")
                continue
            par = {j for j in P.through[T] if _parallel(A[j], v)}
            if par != set(P.through[S]):
                bad.append(f"transversal at {S} with {H}")
    return bad


def open_flat_structure(A, v):
    """For a v-closed A and a flat S that is not v-closed: S = H & <v,S>
    for every H through S transversal to v, <v,S> is the meet of the
    parallel members of A_S, and the poset is closed under cylinders along v."""
    if not is_v_closed(A, v):
        return []
    # convolutions can outgrow the subset oracle
    P = brute_force_poset(A) if len(A) <= POSET_BOUND else build_poset(A)
    flats = P.flat_set()
    bad = []
    for S in P.flats():
        C = S.cylinder(v)
        if C not in flats:
            bad.append(f"open flat: poset not closed: <v,{S}> missing")
        if C == S:
            continue
        par = [A[j] for j in P.through[S] if _parallel(A[j], v)]
        meet = Flat.space(A.dim)
        for H in par:
            meet = meet.intersect(H)
        if par and meet != C:
            bad.append(f"open flat: meet of parallel members at {S}")
        for H in (A[j] for j in P.through[S] if not _parallel(A[j], v)):
            if C.intersect(H) != S:
                bad.append(f"open flat: {S} != {H} & <v,S>")
    return bad


def closedness_checks(A, v):
    out = []
    out += refinement_pairs(A)
    out += convolution_is_closed(A, v)
    out += closed_flat_criterion(A, v)
    out += transversal_meets_closed_flat(A, v)
    out += open_flat_structure(convolution(A, v), v)
    return out


# -- projections along coordinate axes ----------------------------------------


def meet_closure(flats):
    """All nonempty intersections of members of ``flats`` (pairwise to a fixpoint)."""
    out = set(flats)
    frontier = list(out)
    while frontier:
        nxt = []
        for S in frontier:
            for T in list(out):
                U = S.meet(T)
                if U is not None and U not in out:
                    out.add(U)
                    nxt.append(U)
        frontier = nxt
    return out


def projection_identity(A, i):
    """Stated identity L(mc_{x_i} A) = L(A) | {pi^-1 pi (S)}; returns the
    symmetric difference (empty when it holds)."""
    e = unit_vector(A.dim, i, A.field)
    L = brute_force_poset(A).flat_set()
    lhs = brute_force_poset(convolution(A, e), bound=20).flat_set()
    rhs = L | {S.cylinder(e) for S in L}
    return lhs ^ rhs


def projection_identity_closed(A, i):
    """L(mc_{x_i} A) equals the intersection closure of L(A) | cylinders."""
    e = unit_vector(A.dim, i, A.field)
    L = brute_force_poset(A).flat_set()
    lhs = brute_force_poset(convolution(A, e), bound=20).flat_set()
    return lhs == meet_closure(L | {S.cylinder(e) for S in L})


def cylinder_closed_poset(A):
    """Every axis cylinder of every flat of L(A) is again in L(A)."""
    L = brute_force_poset(A).flat_set()
    axes = [unit_vector(A.dim, i, A.field) for i in range(A.dim)]
    return all(S.cylinder(e) in L for S in L for e in axes)


def axis_stability_by_projection(A):
    return is_axis_stable(A) == cylinder_closed_poset(A)
