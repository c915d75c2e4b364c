"""Brute-force checks: subset posets, pool censuses, finite affine orbits."""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .classify import ClassificationReport, classify
from .convolve import is_axis_stable
from .cyclo import root_of_unity_order
from .geom import Flat, unit_vector
from .poset import Arrangement, IntersectionPoset
from .structure import decompose, find_reduction

POSET_BOUND = 12
POOL_BOUND = 20
ORBIT_BUDGET = 512


def brute_force_poset(A: Arrangement, bound: int = POSET_BOUND) -> IntersectionPoset:
    """L(A) from the intersection of every subset of A.

    A_S is recovered as the union of all subsets whose intersection is S.
    """
    k = len(A)
    if k > bound:
        raise ValueError(f"{k} hyperplanes exceed the brute-force bound {bound}")
    n = A.dim
    through: dict[Flat, set] = {}

    def visit(start, S, chosen):
        through.setdefault(S, set()).update(chosen)
        for i in range(start, k):
            T = S.intersect(A[i])
            # supersets of a subset with empty intersection are empty too
            if T is not None:
                visit(i + 1, T, chosen + (i,))

    visit(0, Flat.space(n), ())
    strata = [[] for _ in range(n + 1)]
    for S in through:
        strata[S.codim].append(S)
    while len(strata) > 1 and not strata[-1]:
        strata.pop()
    return IntersectionPoset(
        A,
        tuple(tuple(level) for level in strata),
        {S: frozenset(ix) for S, ix in through.items()},
    )


# -- census ----------------------------------------------------------------


@dataclass(frozen=True)
class PoolSpec:
    dim: int
    field: object
    pool: tuple  # distinct canonical Hyperplanes
    require_axis_stable: bool = True
    require_indecomposable: bool = True
    require_reduced: bool = True
    require_nontrivial: bool = True
    min_size: int = 1
    max_size: int | None = None

    def __post_init__(self):
        if len(set(self.pool)) != len(self.pool):
            raise ValueError("pool hyperplanes must be distinct")
        for H in self.pool:
            if H.dim != self.dim or H.field is not self.field:
                raise ValueError(f"pool hyperplane {H} does not live in C^{self.dim} over Q(z_{self.field.M})")


@dataclass(frozen=True)
class CensusEntry:
    indices: tuple  # positions in the pool
    arrangement: Arrangement
    report: ClassificationReport

    @property
    def verdicts(self) -> tuple:
        return self.report.kinds()


def _pool_flats(spec: PoolSpec):
    """(mask_S, required_mask or None) for each codim-2 flat of the pool.

    required_mask is the set of pool hyperplanes that axis cylinders over S
    need; None means some cylinder is not in the pool at all.
    """
    pool = spec.pool
    pos = {H: i for i, H in enumerate(pool)}
    masks: dict[Flat, int] = {}
    for i, H in enumerate(pool):
        F = H.as_flat()
        for j in range(i + 1, len(pool)):
            S = F.intersect(pool[j])
            if S is not None:
                masks[S] = masks.get(S, 0) | (1 << i) | (1 << j)
    axes = [unit_vector(spec.dim, k, spec.field) for k in range(spec.dim)]
    out = []
    for S, mask in masks.items():
        req = 0
        for e in axes:
            C = S.cylinder(e)
            if C.codim == 1:
                H = C.as_hyperplane()
                if H not in pos:
                    req = None
                    break
                req |= 1 << pos[H]
        out.append((mask, req))
    return out


def _axis_stable_mask(bits: int, flats) -> bool:
    for mask, req in flats:
        if (bits & mask).bit_count() >= 2:
            if req is None or bits & req != req:
                return False
    return True


def enumerate_axis_stable(spec: PoolSpec) -> list[CensusEntry]:
    """Classify every subset of the pool that passes the filters."""
    k = len(spec.pool)
    if k > POOL_BOUND:
        raise ValueError(f"pool of {k} hyperplanes exceeds the bound {POOL_BOUND}")
    lo = spec.min_size
    hi = k if spec.max_size is None else spec.max_size
    flats = _pool_flats(spec)
    out = []
    for bits in range(1, 1 << k):
        size = bits.bit_count()
        if not lo <= size <= hi:
            continue
        if spec.require_axis_stable and not _axis_stable_mask(bits, flats):
            continue
        idx = tuple(i for i in range(k) if bits >> i & 1)
        A = Arrangement(spec.dim, spec.field, [spec.pool[i] for i in idx])
        if spec.require_axis_stable and not is_axis_stable(A):
            raise AssertionError(f"mask filter and is_axis_stable disagree on {idx}")
        if spec.require_indecomposable and not decompose(A).indecomposable:
            continue
        if spec.require_reduced and A.dim >= 2 and find_reduction(A) is not None:
            continue
        if spec.require_nontrivial and len(A.codim2()) <= 1:
            continue
        out.append(CensusEntry(idx, A, classify(A)))
    return out


# -- finite orbits of z -> a1 z and z -> a2 z + a3 ---------------------------


@dataclass(frozen=True)
class OrbitReport:
    closure: frozenset | None  # None: budget exceeded
    m: int | None = None  # least m >= 1 with a1^m = a2^m = 1
    alpha3_zero: bool | None = None
    contains_rotations: bool | None = None  # F contains every m-th root times z

    @property
    def finite(self) -> bool:
        return self.closure is not None

    @property
    def conclusion_holds(self) -> bool | None:
        if not self.finite:
            return None
        return bool(self.alpha3_zero and self.m is not None and self.m >= 2 and self.contains_rotations)


def orbit_closure(a1, a2, a3, z, budget: int = ORBIT_BUDGET) -> OrbitReport:
    if not (a1 and a2 and a1 != 1):
        raise ValueError("need a1 * a2 * (a1 - 1) != 0")
    if not z:
        raise ValueError("z must be nonzero")
    seen = {z}
    frontier = [z]
    while frontier:
        nxt = []
        for w in frontier:
            for u in (a1 * w, a2 * w + a3):
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
                    if len(seen) > budget:
                        return OrbitReport(None)
        frontier = nxt
    F = frozenset(seen)
    o1, o2 = root_of_unity_order(a1), root_of_unity_order(a2)
    m = lcm(o1, o2) if o1 and o2 else None
    rot = None
    if m is not None:
        rot = all(w * z in F for w in z.field.roots_of_unity(m))
    return OrbitReport(F, m, not a3, rot)
