"""Logarithmic connections sum_H A_H dlog f_H and their integrability.

Integrability is checked through residues: for every codim-2 flat S and
every H through S, A_H must commute with the sum of the residues of all
hyperplanes through S.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geom import Flat
from .poset import Arrangement


def zero_matrix(N, field):
    return tuple(tuple(field.zero for _ in range(N)) for _ in range(N))


def identity_matrix(N, field):
    return tuple(tuple(field.one if i == j else field.zero for j in range(N)) for i in range(N))


def mat_add(X, Y):
    return tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(X, Y))


def mat_sub(X, Y):
    return tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(X, Y))


def mat_scale(c, X):
    return tuple(tuple(c * a for a in r) for r in X)


def mat_mul(X, Y):
    field = X[0][0].field
    cols = list(zip(*Y))
    out = []
    for r in X:
        row = []
        for col in cols:
            acc = field.zero
            for a, b in zip(r, col):
                if a and b:
                    acc = acc + a * b
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def commutator(X, Y):
    return mat_sub(mat_mul(X, Y), mat_mul(Y, X))


def is_zero(X) -> bool:
    return not any(a for r in X for a in r)


def mat_inverse(X):
    """Gauss-Jordan inverse; ValueError if singular."""
    N = len(X)
    field = X[0][0].field
    aug = [list(r) + list(e) for r, e in zip(X, identity_matrix(N, field))]
    for c in range(N):
        p = next((i for i in range(c, N) if aug[i][c]), None)
        if p is None:
            raise ValueError("singular matrix")
        aug[c], aug[p] = aug[p], aug[c]
        inv = aug[c][c].inverse()
        aug[c] = [a * inv for a in aug[c]]
        for i in range(N):
            if i != c and aug[i][c]:
                k = aug[i][c]
                aug[i] = [a - k * b for a, b in zip(aug[i], aug[c])]
    return tuple(tuple(r[N:]) for r in aug)


@dataclass(frozen=True)
class LogConnection:
    arrangement: Arrangement
    size: int
    residues: tuple  # residues[i] is the N x N matrix of hyperplane i

    def __post_init__(self):
        if len(self.residues) != len(self.arrangement):
            raise ValueError(f"{len(self.residues)} residues for {len(self.arrangement)} hyperplanes")
        for i, R in enumerate(self.residues):
            if len(R) != self.size or any(len(row) != self.size for row in R):
                raise ValueError(f"residue {i + 1} is not {self.size} x {self.size}")

    @classmethod
    def zero(cls, A: Arrangement, N: int) -> LogConnection:
        return cls(A, N, (zero_matrix(N, A.field),) * len(A))

    def conjugate(self, P) -> LogConnection:
        """Residues P^-1 A_H P."""
        Pi = mat_inverse(P)
        return LogConnection(self.arrangement, self.size, tuple(mat_mul(mat_mul(Pi, R), P) for R in self.residues))


@dataclass(frozen=True)
class Violation:
    flat: Flat
    through: tuple  # indices of all hyperplanes through the flat
    failing: tuple  # the H in A_S whose residue fails to commute with the sum


def check_integrability(C: LogConnection) -> list[Violation]:
    """One entry per codim-2 flat where some [A_H, sum_{A_S} A_H'] != 0."""
    out = []
    for S, through in C.arrangement.codim2().items():
        total = C.residues[through[0]]
        for i in through[1:]:
            total = mat_add(total, C.residues[i])
        bad = tuple(i for i in through if not is_zero(commutator(C.residues[i], total)))
        if bad:
            out.append(Violation(S, through, bad))
    return out


def apply_addition(C: LogConnection, lambdas) -> LogConnection:
    """Shift each residue by lambda_H times the identity.

    ``lambdas`` maps hyperplane index to scalar; missing indices mean 0.
    """
    if not isinstance(lambdas, dict):
        lambdas = dict(enumerate(lambdas))
    f = C.arrangement.field
    eye = identity_matrix(C.size, f)
    res = []
    for i, R in enumerate(C.residues):
        lam = lambdas.get(i)
        res.append(mat_add(R, mat_scale(f(lam), eye)) if lam else R)
    return LogConnection(C.arrangement, C.size, tuple(res))
