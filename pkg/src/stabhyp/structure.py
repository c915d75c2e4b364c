"""Decomposition, reduction and specialization of arrangements.

Coordinate indices are 0-based in the API and 1-based in printed output.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geom import Hyperplane
from .poset import Arrangement


@dataclass(frozen=True)
class Decomposition:
    blocks: tuple  # tuple of sorted coordinate tuples, partitioning range(n)
    factors: tuple  # one Arrangement per block, in block coordinates
    dim: int

    @property
    def indecomposable(self) -> bool:
        return len(self.blocks) == 1

    def reassemble(self) -> Arrangement:
        return reassemble(self.dim, self.blocks, self.factors)


def reassemble(n: int, blocks, factors) -> Arrangement:
    """Union of the pullbacks of block arrangements to C^n."""
    field = factors[0].field
    out = []
    for block, F in zip(blocks, factors):
        for H in F:
            lin = [field.zero] * n
            for k, c in zip(block, H.linear):
                lin[k] = c
            out.append(Hyperplane(tuple(lin), H.constant))
    return Arrangement(n, field, out)


def decompose(A: Arrangement) -> Decomposition:
    """Split the coordinates into the connected components of the support graph."""
    n = A.dim
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for H in A:
        sup = H.support()
        for k in sup[1:]:
            a, b = find(sup[0]), find(k)
            if a != b:
                parent[max(a, b)] = min(a, b)
    comps: dict[int, list[int]] = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    blocks = tuple(tuple(c) for c in sorted(comps.values()))
    where = {k: (b, pos) for b, block in enumerate(blocks) for pos, k in enumerate(block)}
    parts = [[] for _ in blocks]
    for H in A:
        sup = H.support()
        b = where[sup[0]][0]
        if any(where[k][0] != b for k in sup):
            raise AssertionError("hyperplane straddles two blocks")
        parts[b].append(Hyperplane(tuple(H.linear[k] for k in blocks[b]), H.constant))
    factors = tuple(Arrangement(len(bl), A.field, p) for bl, p in zip(blocks, parts))
    return Decomposition(blocks, factors, n)


@dataclass(frozen=True)
class Reduction:
    """Merge x_i and x_j (i < j) into u = a*x_i + b*x_j, stored at position i.

    ``a`` may be 0 only in the degenerate case where x_i is unused.
    """

    i: int
    j: int
    a: object
    b: object

    def __str__(self):
        return f"(x{self.i + 1}, x{self.j + 1}) -> {self.a}*x{self.i + 1} + {self.b}*x{self.j + 1}"

    def apply(self, A: Arrangement) -> Arrangement:
        """The arrangement A' in C^(n-1) with A = pullback(A')."""
        out = []
        for H in A:
            ci, cj = H.linear[self.i], H.linear[self.j]
            lam = ci / self.a if self.a else cj / self.b
            lin = list(H.linear)
            lin[self.i] = lam
            del lin[self.j]
            out.append(Hyperplane.from_coefficients(lin, H.constant))
        return Arrangement(A.dim - 1, A.field, out)

    def pullback(self, A: Arrangement) -> Arrangement:
        out = []
        for H in A:
            lam = H.linear[self.i]
            lin = list(H.linear)
            lin.insert(self.j, lam * self.b)
            lin[self.i] = lam * self.a
            out.append(Hyperplane.from_coefficients(lin, H.constant))
        return Arrangement(A.dim + 1, A.field, out)


def find_reduction(A: Arrangement) -> Reduction | None:
    """First pair (i, j) whose coefficient pairs are all collinear, else None."""
    n = A.dim
    if n < 2:
        raise ValueError("reduction needs n >= 2")
    f = A.field
    for i in range(n):
        for j in range(i + 1, n):
            ab = None
            ok = True
            for H in A:
                ci, cj = H.linear[i], H.linear[j]
                if not ci and not cj:
                    continue
                if ab is None:
                    ab = (f.one, cj / ci) if ci else (f.zero, f.one)
                elif ci * ab[1] != cj * ab[0]:
                    ok = False
                    break
            if ok:
                a, b = ab if ab is not None else (f.one, f.zero)
                return Reduction(i, j, a, b)
    return None


def reduce_fully(A: Arrangement) -> tuple[Arrangement, list[Reduction]]:
    steps = []
    while A.dim >= 2:
        r = find_reduction(A)
        if r is None:
            break
        A = r.apply(A)
        steps.append(r)
    return A, steps


def pullback_all(A: Arrangement, steps) -> Arrangement:
    for r in reversed(steps):
        A = r.pullback(A)
    return A


def substitute(A: Arrangement, assignment: dict) -> Arrangement:
    """Fix coordinates ``{index: value}`` and restrict to the remaining ones.

    Hyperplanes that become the whole section or empty are dropped.
    """
    keep = [k for k in range(A.dim) if k not in assignment]
    out = []
    for H in A:
        const = H.constant
        for k, val in assignment.items():
            if H.linear[k]:
                const = const + H.linear[k] * val
        lin = [H.linear[k] for k in keep]
        if any(lin):
            out.append(Hyperplane.from_coefficients(lin, const))
    return Arrangement(len(keep), A.field, out)


def specialize(A: Arrangement, m: int, p) -> Arrangement:
    """Restrict A to the section x_{m+1..n} = p, living in C^m."""
    n = A.dim
    if not 1 <= m < n:
        raise ValueError("need 1 <= m < n")
    p = tuple(p)
    if len(p) != n - m:
        raise ValueError(f"point must have {n - m} coordinates")
    return substitute(A, {m + k: A.field(c) for k, c in enumerate(p)})


@dataclass(frozen=True)
class CoordTransform:
    """x_j = a_j * y_{perm[j]} + b_j, mapping normal-form coordinates y to x."""

    perm: tuple
    scales: tuple
    shifts: tuple

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm must be a permutation")
        if any(not a for a in self.scales):
            raise ValueError("scales must be nonzero")

    @classmethod
    def identity(cls, n: int, field) -> CoordTransform:
        return cls(tuple(range(n)), (field.one,) * n, (field.zero,) * n)

    def apply(self, A: Arrangement) -> Arrangement:
        """Rewrite an arrangement given in y-coordinates in x-coordinates."""
        n = A.dim
        out = []
        for H in A:
            lin = [None] * n
            const = H.constant
            for j in range(n):
                g = H.linear[self.perm[j]]
                c = g / self.scales[j]
                lin[j] = c
                if c and self.shifts[j]:
                    const = const - c * self.shifts[j]
            out.append(Hyperplane.from_coefficients(lin, const))
        return Arrangement(n, A.field, out)

    def pull(self, A: Arrangement) -> Arrangement:
        """Inverse of :meth:`apply`: rewrite x-coordinates in y-coordinates."""
        n = A.dim
        out = []
        for H in A:
            lin = [None] * n
            const = H.constant
            for j in range(n):
                c = H.linear[j]
                lin[self.perm[j]] = c * self.scales[j]
                if c and self.shifts[j]:
                    const = const + c * self.shifts[j]
            out.append(Hyperplane.from_coefficients(lin, const))
        return Arrangement(n, A.field, out)

    def to_data(self) -> dict:
        return {
            "perm": [k + 1 for k in self.perm],
            "scales": [str(a) for a in self.scales],
            "shifts": [str(b) for b in self.shifts],
        }


@dataclass(frozen=True)
class LinearChange:
    """New coordinates y with x = P y; the columns of P are ``basis``."""

    basis: tuple

    def pull(self, A: Arrangement) -> Arrangement:
        """A in y-coordinates: c.x + c0 becomes (c P).y + c0."""
        n = A.dim
        out = []
        for H in A:
            lin = []
            for v in self.basis:
                acc = A.field.zero
                for c, x in zip(H.linear, v):
                    if c and x:
                        acc = acc + c * x
                lin.append(acc)
            out.append(Hyperplane.from_coefficients(lin, H.constant))
        return Arrangement(n, A.field, out)

    def push(self, A: Arrangement) -> Arrangement:
        """Inverse of :meth:`pull`."""
        n = A.dim
        f = A.field
        P = [[self.basis[k][i] for k in range(n)] for i in range(n)]
        inv = _inverse(P, f)
        out = []
        for H in A:
            lin = []
            for col in range(n):
                acc = f.zero
                for k in range(n):
                    if H.linear[k] and inv[k][col]:
                        acc = acc + H.linear[k] * inv[k][col]
                lin.append(acc)
            out.append(Hyperplane.from_coefficients(lin, H.constant))
        return Arrangement(n, f, out)


def _inverse(P, f):
    n = len(P)
    aug = [list(P[i]) + [f.one if j == i else f.zero for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c])
        aug[c], aug[p] = aug[p], aug[c]
        inv = aug[c][c].inverse()
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                fct = aug[i][c]
                aug[i] = [x - fct * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]
