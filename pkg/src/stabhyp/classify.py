"""Normal-form families of stable arrangements and their recognition.

A family is given by ``n``, the order ``m`` of the group of roots of unity
``Omega``, constants ``alphas`` and, for ``n == 2``, a subset
``omega_prime`` of ``Omega`` containing 1.  Its hyperplanes are

* ``x_i = w * alpha_j`` and ``x_i = 0`` (the axis part), and
* ``x_i = w * x_j`` for i < j, w in Omega (n >= 3), or
  ``x_1 = w * x_2`` for w in omega_prime (n == 2).

The ``"A-prime-only"`` variant (m = 1, n > 3) drops the axis part, which
leaves the braid arrangement.

Recognition works by construction: candidate parameters are read off the
input, the family is built, and the two are compared exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .convolve import is_axis_stable, is_stable
from .cyclo import CycScalar, root_of_unity_order
from .geom import Flat, Hyperplane, unit_vector
from .poset import Arrangement
from .structure import (
    CoordTransform,
    LinearChange,
    decompose,
    pullback_all,
    reassemble,
    reduce_fully,
)

FULL = "full"
A_PRIME_ONLY = "A-prime-only"


@dataclass(frozen=True)
class FamilyDescriptor:
    n: int
    m: int
    alphas: tuple = ()
    omega_prime: tuple | None = None
    variant: str = FULL

    @property
    def r(self) -> int:
        return len(self.alphas)

    def problems(self, field) -> str | None:
        """Why the descriptor is invalid over ``field``, or None."""
        if self.n < 2:
            return "n must be at least 2"
        if self.m < 1 or field.capacity % self.m:
            return f"Q(z_{field.M}) has no primitive {self.m}-th root of unity"
        if any(not a for a in self.alphas):
            return "alphas must be nonzero"
        if self.variant not in (FULL, A_PRIME_ONLY):
            return f"unknown variant {self.variant!r}"
        if self.n == 2:
            if self.variant != FULL:
                return "n = 2 families always carry the axis part"
            if self.r < 1:
                return "n = 2 requires r >= 1"
            if not self.omega_prime or field.one not in self.omega_prime:
                return "omega_prime must contain 1"
            if any(w ** self.m != 1 for w in self.omega_prime):
                return "omega_prime must lie in Omega"
        else:
            if self.omega_prime is not None:
                return "omega_prime is only used for n = 2"
            if self.variant == A_PRIME_ONLY and (self.m != 1 or self.n <= 3 or self.r):
                return "A-prime-only requires m = 1, r = 0 and n > 3"
        return None

    def to_data(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "r": self.r,
            "alphas": [str(a) for a in self.alphas],
            "omega_prime": None if self.omega_prime is None else [str(w) for w in self.omega_prime],
            "variant": self.variant,
        }

    def __str__(self):
        parts = [f"n={self.n}", f"m={self.m}", f"r={self.r}"]
        if self.alphas:
            parts.append("alphas=(" + ", ".join(str(a) for a in self.alphas) + ")")
        if self.omega_prime is not None:
            parts.append("omega'={" + ", ".join(str(w) for w in self.omega_prime) + "}")
        parts.append(self.variant)
        return "family(" + ", ".join(parts) + ")"


def _axis(n, i, c, f):
    # x_i = c
    return Hyperplane(unit_vector(n, i, f), -c)


def _slant(n, i, j, w, f):
    # x_i = w * x_j
    lin = [f.zero] * n
    lin[i] = f.one
    lin[j] = -w
    return Hyperplane(tuple(lin), f.zero)


def make_family(d: FamilyDescriptor, field) -> Arrangement:
    problem = d.problems(field)
    if problem:
        raise ValueError(problem)
    n = d.n
    omega = field.roots_of_unity(d.m)
    out = []
    if d.n == 2:
        out.extend(_slant(2, 0, 1, field(w), field) for w in d.omega_prime)
    else:
        out.extend(_slant(n, i, j, w, field) for i in range(n) for j in range(i + 1, n) for w in omega)
    if d.variant == FULL:
        for i in range(n):
            out.extend(_axis(n, i, w * a, field) for a in d.alphas for w in omega)
            out.append(_axis(n, i, field.zero, field))
    return Arrangement(n, field, out)


def _group_closure(gens, field) -> list[CycScalar]:
    group = [field.one]
    frontier = [field.one]
    seen = {field.one}
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                p = g * h
                if p not in seen:
                    seen.add(p)
                    group.append(p)
                    nxt.append(p)
        frontier = nxt
    return group


def omega_prime_saturation(omega_prime) -> list[CycScalar]:
    """The multiplicative closure of a set of roots of unity containing 1."""
    omega_prime = list(omega_prime)
    if not omega_prime:
        raise ValueError("empty set")
    field = omega_prime[0].field
    if field.one not in omega_prime:
        raise ValueError("set must contain 1")
    for w in omega_prime:
        if not w or root_of_unity_order(w) is None:
            raise ValueError(f"{w} is not a root of unity")
    return sorted(_group_closure(omega_prime, field), key=_root_key)


def _root_key(w):
    return (w != 1, w.sort_key())


def _const_key(c):
    # positive rationals first, then by coefficients
    pos = c.is_rational() and c.as_fraction() > 0
    return (not pos, c.sort_key())


# -- recognition ---------------------------------------------------------


def _centers(Z: Flat, constants, field):
    """Points p of Z with p_i among the axis constants of coordinate i."""
    n = Z.ambient
    found = {}

    def walk(F):
        if F.codim == n:
            p = F.point_coordinates()
            if all(p[i] in constants[i] for i in range(n)):
                found.setdefault(p, None)
            return
        i = next(c for c in range(n) if c not in F.pivots)
        for c in constants[i]:
            G = F.intersect(_axis(n, i, c, field))
            if G is not None:
                walk(G)

    walk(Z)
    # prefer the origin, then the point with the smallest coordinates
    return sorted(found, key=lambda p: (any(p), [c.sort_key() for c in p]))


def recognize_family(A: Arrangement):
    """Return ``(descriptor, transform)`` with transform.apply(family) == A,
    or a string saying why no candidate matched."""
    n, f = A.dim, A.field
    if n < 2:
        return "dimension below 2"
    constants = [[] for _ in range(n)]
    slanted = []
    for H in A:
        sup = H.support()
        if len(sup) == 1:
            constants[sup[0]].append(-H.constant)
        elif len(sup) == 2:
            slanted.append(H)
        else:
            return f"hyperplane {H} involves {len(sup)} coordinates"
    if not slanted:
        return "no hyperplane of the form x_i = c*x_j + d"
    Z = Flat.space(n)
    for H in slanted:
        Z = Z.intersect(H)
        if Z is None:
            return "the two-coordinate hyperplanes have no common point"
    has_axis = any(constants)
    if has_axis:
        missing = [i for i in range(n) if not constants[i]]
        if missing:
            return f"no hyperplane x{missing[0] + 1} = const"
        centers = _centers(Z, constants, f)
        if not centers:
            return "no common point of the two-coordinate hyperplanes sits on the axis constants"
    else:
        centers = [Z.some_point(f)]
    first = None
    for p in centers:
        res = _try_center(A, p, slanted, has_axis)
        if not isinstance(res, str):
            return res
        first = first or res
    return first


def _try_center(A, p, slanted, has_axis):
    n, f = A.dim, A.field
    ratios = {}
    for H in slanted:
        i, j = H.support()
        if i == 0:
            ratios.setdefault(j, []).append(-H.linear[j])
    scales = [f.one]
    for j in range(1, n):
        if j not in ratios:
            return f"no hyperplane relating x1 and x{j + 1}"
        lam = min(ratios[j], key=_root_key)
        scales.append(lam.inverse())
    t = CoordTransform(tuple(range(n)), tuple(scales), tuple(p))
    N = t.pull(A)
    # a common rescaling keeps every ratio; use it to make the first alpha 1
    consts = [-H.constant for H in N if len(H.support()) == 1 and H.constant]
    if consts:
        s = min(consts, key=_const_key)
        t = CoordTransform(t.perm, tuple(a * s for a in scales), t.shifts)
        N = t.pull(A)
    omegas = set()
    consts = set()
    for H in N:
        sup = H.support()
        if len(sup) == 2:
            omegas.add(-H.linear[sup[1]])
        elif H.constant:
            consts.add(-H.constant)
    for w in omegas:
        if root_of_unity_order(w) is None:
            return f"ratio {w} in a normalized hyperplane is not a root of unity"
    group = _group_closure(sorted(omegas, key=_root_key), f)
    m = len(group)
    alphas = []
    left = set(consts)
    for c in sorted(consts, key=_const_key):
        if c in left:
            alphas.append(c)
            left.difference_update(w * c for w in group)
    d = FamilyDescriptor(
        n=n,
        m=m,
        alphas=tuple(alphas),
        omega_prime=tuple(sorted(omegas, key=_root_key)) if n == 2 else None,
        variant=FULL if has_axis else A_PRIME_ONLY,
    )
    problem = d.problems(f)
    if problem:
        return f"candidate {d} invalid: {problem}"
    F = make_family(d, f)
    if F == N:
        return d, t
    extra = next((H for H in N if H not in F), None)
    if extra is not None:
        return f"candidate {d}: normalized hyperplane {extra} is not in the family"
    missing = next(H for H in F if H not in N)
    return f"candidate {d}: family hyperplane {missing} is missing"


# -- the classification pipeline ------------------------------------------

FAMILY = "family"
TRIVIAL = "trivial"
NOT_STABLE = "not-stable"
UNRECOGNIZED = "unrecognized"


@dataclass(frozen=True)
class FactorVerdict:
    block: tuple
    factor: Arrangement
    reductions: tuple
    reduced: Arrangement
    kind: str
    descriptor: FamilyDescriptor | None = None
    transform: CoordTransform | None = None
    diagnostic: str | None = None
    codim2_count: int = 0

    def rebuild(self) -> Arrangement:
        """The factor, rebuilt from the verdict alone (family or trivial)."""
        if self.kind == FAMILY:
            R = self.transform.apply(make_family(self.descriptor, self.reduced.field))
        elif self.kind == TRIVIAL:
            R = self.reduced
        else:
            raise ValueError(f"cannot rebuild a factor with verdict {self.kind}")
        return pullback_all(R, self.reductions)


@dataclass(frozen=True)
class ClassificationReport:
    source: Arrangement
    stable: bool
    coordinates: LinearChange | None  # None: the given axes already work
    factors: tuple  # FactorVerdict per block

    @property
    def blocks(self) -> tuple:
        return tuple(v.block for v in self.factors)

    def kinds(self) -> tuple:
        return tuple(v.kind for v in self.factors)

    def descriptors(self) -> list[FamilyDescriptor]:
        return [v.descriptor for v in self.factors if v.kind == FAMILY]

    def reconstruct(self) -> Arrangement:
        """Rebuild the source from the verdicts; equals the source when every
        factor is a recognized family or trivial."""
        parts = [v.rebuild() for v in self.factors]
        B = reassemble(self.source.dim, self.blocks, parts)
        return self.coordinates.push(B) if self.coordinates is not None else B


def classify(A: Arrangement) -> ClassificationReport:
    n = A.dim
    change = None
    if is_axis_stable(A):
        B = A
    else:
        st = is_stable(A)
        if not st:
            verdict = FactorVerdict(
                tuple(range(n)), A, (), A, NOT_STABLE, diagnostic="valid directions span less than C^n"
            )
            return ClassificationReport(A, False, None, (verdict,))
        change = LinearChange(st.basis)
        B = change.pull(A)
        if not is_axis_stable(B):
            raise AssertionError("witness basis does not make the arrangement axis-stable")
    dec = decompose(B)
    verdicts = []
    for block, F in zip(dec.blocks, dec.factors):
        R, steps = reduce_fully(F) if F.dim >= 2 else (F, [])
        k = len(R.codim2())
        if k <= 1:
            verdicts.append(FactorVerdict(block, F, tuple(steps), R, TRIVIAL, codim2_count=k))
            continue
        res = recognize_family(R)
        if isinstance(res, str):
            verdicts.append(
                FactorVerdict(block, F, tuple(steps), R, UNRECOGNIZED, diagnostic=res, codim2_count=k)
            )
        else:
            d, t = res
            verdicts.append(
                FactorVerdict(block, F, tuple(steps), R, FAMILY, descriptor=d, transform=t, codim2_count=k)
            )
    return ClassificationReport(A, True, change, tuple(verdicts))
