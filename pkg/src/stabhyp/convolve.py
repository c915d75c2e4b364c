"""The convolution mc_v, v-closedness, valid directions and stability."""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field

from .geom import Flat, _check_vector, linear_span, rank, unit_vector
from .poset import Arrangement

DEFAULT_CLOSURE_BUDGET = 200


def _budget_default() -> int:
    env = os.environ.get("STABHYP_BUDGET")
    return int(env) if env else DEFAULT_CLOSURE_BUDGET


def convolution(A: Arrangement, v) -> Arrangement:
    """mc_v A: A together with every cylinder <v, S> of codim 1, S in L^(2)."""
    _check_vector(v, A.dim)
    new = []
    for S in A.codim2():
        C = S.cylinder(v)
        if C.codim == 1:
            new.append(C.as_hyperplane())
    return A.union(new)


@dataclass(frozen=True)
class Closedness:
    closed: bool
    witness: Flat | None = None  # a codim-2 flat whose cylinder is missing

    def __bool__(self):
        return self.closed


def is_v_closed(A: Arrangement, v) -> Closedness:
    _check_vector(v, A.dim)
    for S in A.codim2():
        C = S.cylinder(v)
        if C.codim == 1 and C.as_hyperplane() not in A:
            return Closedness(False, S)
    return Closedness(True)


@dataclass(frozen=True)
class DirectionFamily:
    """A finite union of pairwise incomparable nonzero linear subspaces."""

    dim: int
    field: object
    subspaces: tuple  # linear Flats

    def contains(self, v) -> bool:
        return any(W.direction_contains(v) for W in self.subspaces)

    def bases(self) -> list[list[tuple]]:
        return [W.direction_basis(self.field) for W in self.subspaces]

    def span_dim(self) -> int:
        vecs = [v for b in self.bases() for v in b]
        return rank(vecs, self.dim, self.field)

    def as_set(self) -> frozenset:
        return frozenset(self.subspaces)


def _maximal(subspaces) -> list[Flat]:
    uniq = list(dict.fromkeys(subspaces))
    # larger subspaces first so containment only needs checking one way
    uniq.sort(key=lambda W: W.codim)
    out = []
    for W in uniq:
        if not any(U.contains_flat(W) for U in out):
            out.append(W)
    return out


def valid_directions(A: Arrangement) -> DirectionFamily:
    """All v != 0 for which A is v-closed, as a union of linear subspaces.

    For v transversal to a codim-2 flat S, <v, S> is a hyperplane and it
    belongs to A iff v is parallel to some H in A_S; the parallel case is
    absorbed because Dir(S) lies in every Dir(H), H in A_S.
    """
    n = A.dim
    family = [Flat.space(n)]
    dirs = [H.as_flat().direction() for H in A.hyperplanes]
    flats = sorted(A.codim2().items(), key=lambda kv: len(kv[1]))
    for _, through in flats:
        nxt = []
        for W in family:
            hit = False
            for i in through:
                if dirs[i].contains_flat(W):
                    hit = True
                    break
            if hit:
                nxt.append(W)
                continue
            for i in through:
                U = W.meet(dirs[i])
                if U.dim > 0:
                    nxt.append(U)
        family = _maximal(nxt)
        if not family:
            break
    return DirectionFamily(n, A.field, tuple(family))


@dataclass(frozen=True)
class Stability:
    stable: bool
    basis: tuple = dc_field(default=())

    def __bool__(self):
        return self.stable


def is_stable(A: Arrangement, family: DirectionFamily | None = None) -> Stability:
    """Coordinate-free stability: n independent directions keeping A closed."""
    if family is None:
        family = valid_directions(A)
    picked = []
    for basis in family.bases():
        for v in basis:
            if rank(picked + [v], A.dim, A.field) > len(picked):
                picked.append(v)
    if len(picked) < A.dim:
        return Stability(False)
    for v in picked:
        if not is_v_closed(A, v):
            raise AssertionError("valid direction failed the closedness check")
    return Stability(True, tuple(picked))


def is_axis_stable(A: Arrangement) -> bool:
    """mc_{x_i} A == A for every coordinate direction."""
    n = A.dim
    axes = [unit_vector(n, i, A.field) for i in range(n)]
    for S in A.codim2():
        for e in axes:
            C = S.cylinder(e)
            if C.codim == 1 and C.as_hyperplane() not in A:
                return False
    return True


@dataclass(frozen=True)
class ClosureReport:
    result: Arrangement | None  # None means the budget was exceeded
    rounds: int
    growth: tuple  # hyperplane counts: initial, then after each sweep

    @property
    def diverged(self) -> bool:
        return self.result is None


def axis_closure(A: Arrangement, budget: int | None = None) -> ClosureReport:
    """Iterate full sweeps mc_{x_1} ... mc_{x_n} (x_n applied first) to a fixpoint."""
    if budget is None:
        budget = _budget_default()
    if budget < len(A):
        raise ValueError("budget smaller than the arrangement")
    n = A.dim
    axes = [unit_vector(n, i, A.field) for i in range(n)]
    growth = [len(A)]
    rounds = 0
    while True:
        before = len(A)
        for e in reversed(axes):
            A = convolution(A, e)
            if len(A) > budget:
                growth.append(len(A))
                return ClosureReport(None, rounds + 1, tuple(growth))
        rounds += 1
        growth.append(len(A))
        if len(A) == before:
            return ClosureReport(A, rounds, tuple(growth))


def direction_subspace(vectors, n: int, field) -> Flat:
    return linear_span(vectors, n, field)
