"""Hyperplanes and flats of C^n with canonical equation systems.

A flat is stored as the reduced row echelon form of an augmented system
``B x = d``: leading entries are 1, pivot columns are cleared, pivots are
taken leftmost-first.  Equal solution sets therefore give identical row
tuples, which is what makes flats usable as dictionary keys.

Linear subspaces (directions) are flats whose right-hand side is zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .cyclo import CycScalar


def echelon(rows, n: int):
    """Canonical RREF of augmented rows of length ``n + 1``.

    Returns ``(rows, pivots)`` with zero rows dropped, or ``None`` when the
    system is inconsistent.
    """
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            inv = piv.inverse()
            rows[r] = [x * inv if x else x for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [x - f * y if y else x for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][n]:
            return None
    return tuple(tuple(row) for row in rows[:r]), tuple(pivots)


def _reduce_against(row, rows, pivots):
    # remainder of ``row`` after clearing the pivot columns of an RREF system
    out = list(row)
    for prow, c in zip(rows, pivots):
        f = out[c]
        if f:
            out = [x - f * y if y else x for x, y in zip(out, prow)]
    return out


def _dot(a, b):
    acc = None
    for x, y in zip(a, b):
        if x and y:
            acc = x * y if acc is None else acc + x * y
    return acc


@dataclass(frozen=True)
class Hyperplane:
    """The hyperplane ``sum(linear[i] * x_i) + constant = 0``.

    Canonical: the first nonzero entry of ``linear`` is 1.  Build with
    :meth:`from_coefficients` to get that normalization.
    """

    linear: tuple
    constant: CycScalar

    @classmethod
    def from_coefficients(cls, linear, constant) -> Hyperplane:
        linear = tuple(linear)
        lead = next((c for c in linear if c), None)
        if lead is None:
            raise ValueError("hyperplane needs a nonzero linear part")
        if lead != 1:
            inv = lead.inverse()
            linear = tuple(c * inv for c in linear)
            constant = constant * inv
        return cls(linear, constant)

    @classmethod
    def from_row(cls, row) -> Hyperplane:
        """From a normalized augmented row ``(c | d)`` meaning ``c.x = d``."""
        return cls(tuple(row[:-1]), -row[-1])

    @property
    def dim(self) -> int:
        return len(self.linear)

    @property
    def field(self):
        return self.constant.field

    @property
    def row(self) -> tuple:
        return self.linear + (-self.constant,)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.linear) if c)

    def as_flat(self) -> Flat:
        return Flat(self.dim, (self.row,), (self.support()[0],))

    def is_homogeneous(self) -> bool:
        return not self.constant

    def evaluate(self, point) -> CycScalar:
        acc = self.constant
        for c, p in zip(self.linear, point):
            if c and p:
                acc = acc + c * p
        return acc

    def direction_contains(self, v) -> bool:
        """True iff ``v`` is parallel to the hyperplane (``c . v == 0``)."""
        _check_vector(v, self.dim)
        return not _dot(self.linear, v)

    def __str__(self):
        from .formats import format_hyperplane

        return format_hyperplane(self)


@dataclass(frozen=True)
class Flat:
    """Nonempty affine subspace ``{x : B x = d}`` in canonical RREF."""

    ambient: int
    rows: tuple
    pivots: tuple = dc_field(compare=False, hash=False, repr=False)

    @classmethod
    def space(cls, n: int) -> Flat:
        return cls(n, (), ())

    @classmethod
    def from_rows(cls, n: int, rows) -> Flat | None:
        res = echelon(rows, n)
        if res is None:
            return None
        return cls(n, *res)

    @classmethod
    def point(cls, coords) -> Flat:
        coords = tuple(coords)
        n = len(coords)
        f = coords[0].field
        rows = []
        for i, c in enumerate(coords):
            rows.append(tuple(f.one if j == i else f.zero for j in range(n)) + (c,))
        return cls(n, tuple(rows), tuple(range(n)))

    @property
    def codim(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return self.ambient - len(self.rows)

    def is_linear(self) -> bool:
        return not any(r[-1] for r in self.rows)

    # -- containment ---------------------------------------------------
    def in_rowspace(self, row) -> bool:
        return not any(_reduce_against(row, self.rows, self.pivots))

    def lies_in(self, H: Hyperplane) -> bool:
        """True iff this flat is contained in ``H``."""
        _check_dim(H.dim, self.ambient)
        return self.in_rowspace(H.row)

    def contains_flat(self, other: Flat) -> bool:
        """True iff ``other`` is a subset of this flat."""
        _check_dim(other.ambient, self.ambient)
        return all(other.in_rowspace(r) for r in self.rows)

    def direction_contains(self, v) -> bool:
        _check_vector(v, self.ambient)
        return all(not _dot(r[:-1], v) for r in self.rows)

    def contains_point(self, p) -> bool:
        for r in self.rows:
            lhs = _dot(r[:-1], p)
            if (lhs if lhs is not None else 0) != r[-1]:
                return False
        return True

    # -- constructions -------------------------------------------------
    def intersect(self, H: Hyperplane) -> Flat | None:
        """Canonical ``self & H``; ``None`` when the intersection is empty."""
        _check_dim(H.dim, self.ambient)
        rem = _reduce_against(H.row, self.rows, self.pivots)
        c = next((k for k in range(self.ambient) if rem[k]), None)
        if c is None:
            return None if rem[-1] else self
        return Flat.from_rows(self.ambient, self.rows + (tuple(rem),))

    def meet(self, other: Flat) -> Flat | None:
        _check_dim(other.ambient, self.ambient)
        return Flat.from_rows(self.ambient, self.rows + other.rows)

    def cylinder(self, v) -> Flat:
        """The affine hull of ``self + C v``."""
        _check_vector(v, self.ambient)
        w = [_dot(r[:-1], v) for r in self.rows]
        k = next((i for i, x in enumerate(w) if x), None)
        if k is None:
            return self
        pk = self.rows[k]
        inv = w[k].inverse()
        rows = []
        for i, r in enumerate(self.rows):
            if i == k:
                continue
            if w[i]:
                f = w[i] * inv
                r = tuple(x - f * y if y else x for x, y in zip(r, pk))
            rows.append(r)
        return Flat.from_rows(self.ambient, rows)

    def direction(self) -> Flat:
        """The linear subspace parallel to this flat."""
        if self.is_linear():
            return self
        zero = self.rows[0][-1].field.zero
        return Flat(self.ambient, tuple(r[:-1] + (zero,) for r in self.rows), self.pivots)

    def as_hyperplane(self) -> Hyperplane:
        if self.codim != 1:
            raise ValueError("flat is not a hyperplane")
        return Hyperplane.from_row(self.rows[0])

    def point_coordinates(self) -> tuple:
        if self.codim != self.ambient:
            raise ValueError("flat is not a point")
        return tuple(r[-1] for r in self.rows)

    def some_point(self, field) -> tuple:
        """A point of the flat with every free coordinate set to 0."""
        x = [field.zero] * self.ambient
        for r, c in zip(self.rows, self.pivots):
            x[c] = r[-1]
        return tuple(x)

    def direction_basis(self, field) -> list[tuple]:
        """Basis of the direction space (the null space of ``B``)."""
        free = [c for c in range(self.ambient) if c not in self.pivots]
        basis = []
        for f in free:
            v = [field.zero] * self.ambient
            v[f] = field.one
            for r, c in zip(self.rows, self.pivots):
                if r[f]:
                    v[c] = -r[f]
            basis.append(tuple(v))
        return basis

    def __str__(self):
        from .formats import format_flat

        return format_flat(self)


def _check_dim(a: int, b: int):
    if a != b:
        raise ValueError(f"dimension mismatch: {a} != {b}")


def _check_vector(v, n: int):
    if len(v) != n:
        raise ValueError(f"vector of length {len(v)} in ambient dimension {n}")
    if not any(v):
        raise ValueError("zero vector")


def linear_span(vectors, n: int, field) -> Flat:
    """The linear subspace spanned by ``vectors``, as an equation system."""
    vecs = [tuple(v) + (field.zero,) for v in vectors]
    if not vecs:
        return _zero_subspace(n, field)
    rows, piv = echelon(vecs, n)
    # equations of the span = annihilator of the spanning rows
    eqs = Flat(n, rows, piv).direction_basis(field)
    if not eqs:
        return Flat.space(n)
    return Flat.from_rows(n, [e + (field.zero,) for e in eqs])


def _zero_subspace(n, field):
    rows = [unit_vector(n, i, field) + (field.zero,) for i in range(n)]
    return Flat(n, tuple(rows), tuple(range(n)))


def rank(vectors, n: int, field) -> int:
    vecs = [tuple(v) + (field.zero,) for v in vectors]
    if not vecs:
        return 0
    return len(echelon(vecs, n)[0])


# module-level forms of the flat operations


def intersect(S: Flat, H: Hyperplane) -> Flat | None:
    return S.intersect(H)


def contains(H: Hyperplane, S: Flat) -> bool:
    return S.lies_in(H)


def direction_contains(X, v) -> bool:
    return X.direction_contains(v)


def cylinder(v, S: Flat) -> Flat:
    return S.cylinder(v)


def unit_vector(n: int, i: int, field) -> tuple:
    return tuple(field.one if j == i else field.zero for j in range(n))
