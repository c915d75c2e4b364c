"""Arrangements and their intersection posets L(A)."""

from __future__ import annotations

from dataclasses import dataclass

from .cyclo import CyclotomicField
from .geom import Flat, Hyperplane, _check_vector


class Arrangement:
    """A finite set of distinct canonical hyperplanes in C^n over Q(z_M).

    Order of first appearance is kept for indexing and output; equality
    and hashing are set-based.
    """

    __slots__ = ("dim", "field", "hyperplanes", "_index", "_codim2")

    def __init__(self, dim: int, field: CyclotomicField, hyperplanes=()):
        seen = {}
        for H in hyperplanes:
            if H.dim != dim:
                raise ValueError(f"hyperplane of dimension {H.dim} in C^{dim}")
            if H.field is not field:
                raise ValueError("hyperplane over a different field")
            seen.setdefault(H, len(seen))
        self.dim = dim
        self.field = field
        self.hyperplanes = tuple(seen)
        self._index = seen
        self._codim2 = None

    def __len__(self):
        return len(self.hyperplanes)

    def __iter__(self):
        return iter(self.hyperplanes)

    def __getitem__(self, i) -> Hyperplane:
        return self.hyperplanes[i]

    def __contains__(self, H):
        return H in self._index

    def __eq__(self, other):
        if not isinstance(other, Arrangement):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.field is other.field
            and self._index.keys() == other._index.keys()
        )

    def __hash__(self):
        return hash((self.dim, self.field.M, frozenset(self.hyperplanes)))

    def __repr__(self):
        return f"Arrangement(dim={self.dim}, M={self.field.M}, size={len(self)})"

    def index(self, H: Hyperplane) -> int:
        return self._index[H]

    def union(self, hyperplanes) -> Arrangement:
        return Arrangement(self.dim, self.field, self.hyperplanes + tuple(hyperplanes))

    def subset(self, indices) -> Arrangement:
        return Arrangement(self.dim, self.field, [self.hyperplanes[i] for i in indices])

    def issubset(self, other: Arrangement) -> bool:
        return all(H in other for H in self.hyperplanes)

    def is_homogeneous(self) -> bool:
        return all(H.is_homogeneous() for H in self.hyperplanes)

    def codim2(self) -> dict[Flat, tuple[int, ...]]:
        """L^(2) together with A_S for each codim-2 flat S.

        Every codim-2 flat is a pairwise intersection, and every H containing
        S meets any other member of A_S exactly in S, so one pass over pairs
        yields the complete incidence sets.
        """
        if self._codim2 is None:
            through: dict[Flat, set[int]] = {}
            flats = [H.as_flat() for H in self.hyperplanes]
            for i, Fi in enumerate(flats):
                for j in range(i + 1, len(flats)):
                    S = Fi.intersect(self.hyperplanes[j])
                    if S is not None:
                        through.setdefault(S, set()).update((i, j))
            self._codim2 = {S: tuple(sorted(ix)) for S, ix in through.items()}
        return self._codim2


@dataclass(frozen=True)
class IntersectionPoset:
    """L(A) stratified by codimension, with the incidence map S -> A_S."""

    arrangement: Arrangement
    strata: tuple  # strata[k] = tuple of flats of codim k
    through: dict  # Flat -> frozenset of hyperplane indices

    def __contains__(self, S):
        return S in self.through

    def level_sizes(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.strata)

    def flats(self):
        for level in self.strata:
            yield from level

    def flat_set(self) -> frozenset:
        return frozenset(self.through)

    def flats_between(self, k: int, S: Flat, mode: str) -> set[Flat]:
        """``mode='sub'``: flats of codim k inside S; ``'super'``: containing S."""
        if S not in self.through:
            raise KeyError("flat is not in the poset")
        if not 0 <= k < len(self.strata):
            return set()
        if mode == "super":
            return {T for T in self.strata[k] if T.contains_flat(S)}
        if mode == "sub":
            return {T for T in self.strata[k] if S.contains_flat(T)}
        raise ValueError(f"unknown mode {mode!r}")


def build_poset(A: Arrangement) -> IntersectionPoset:
    """Level-by-level construction: L^(k+1) from all S & H with S in L^(k)."""
    n = A.dim
    V = Flat.space(n)
    strata = [(V,)]
    through = {V: frozenset()}
    level = [V]
    for k in range(n):
        nxt = {}
        for S in level:
            inside = through[S]
            for i, H in enumerate(A.hyperplanes):
                if i in inside:
                    continue
                T = S.intersect(H)
                if T is None or T.codim != k + 1 or T in nxt:
                    continue
                nxt[T] = None
        if not nxt:
            break
        for T in nxt:
            through[T] = frozenset(i for i, H in enumerate(A.hyperplanes) if T.lies_in(H))
        level = list(nxt)
        strata.append(tuple(level))
    return IntersectionPoset(A, tuple(strata), through)


def flats_between(P: IntersectionPoset, k: int, S: Flat, mode: str) -> set[Flat]:
    return P.flats_between(k, S, mode)


def split_by_vector(A: Arrangement, v) -> tuple[Arrangement, Arrangement]:
    """Partition A into (A_v, A_v^c): hyperplanes transversal / parallel to v."""
    _check_vector(v, A.dim)
    trans, par = [], []
    for H in A:
        (par if H.direction_contains(v) else trans).append(H)
    return Arrangement(A.dim, A.field, trans), Arrangement(A.dim, A.field, par)
