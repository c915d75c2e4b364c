"""Text formats: scalar literals, equations, arrangement and residue files.

Arrangement file::

    # comment
    field M=4
    dim n=3
    x1 = x2
    x1 + z*x2 = 1

Residue file (one N x N block per hyperplane, 1-based indices)::

    size 2
    residue 1
    1 0
    0 0
    residue 2
    0 1
    0 0
"""

from __future__ import annotations

import re
import warnings

from .cyclo import CycScalar, cyclotomic_field
from .expr import ParseError, parse_equation, parse_scalar, split_top_level
from .geom import Flat, Hyperplane
from .poset import Arrangement


class DuplicateHyperplaneWarning(UserWarning):
    pass


def format_scalar(c: CycScalar) -> str:
    return str(c)


def _format_linear(coeffs) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        var = f"x{i + 1}"
        if c == 1:
            t = var
        elif c == -1:
            t = "-" + var
        else:
            t = f"{c}*{var}"
        if parts and t.startswith("-"):
            parts.append(" - " + t[1:])
        elif parts:
            parts.append(" + " + t)
        else:
            parts.append(t)
    return "".join(parts) if parts else "0"


def format_hyperplane(H: Hyperplane) -> str:
    return f"{_format_linear(H.linear)} = {-H.constant}"


def format_row(row) -> str:
    return f"{_format_linear(row[:-1])} = {row[-1]}"


def format_flat(S: Flat) -> str:
    if S.codim == 0:
        return f"C^{S.ambient}"
    if S.codim == S.ambient:
        return "(" + ", ".join(str(c) for c in S.point_coordinates()) + ")"
    return "{" + ", ".join(format_row(r) for r in S.rows) + "}"


def format_vector(v) -> str:
    return ",".join(str(c) for c in v)


def format_arrangement(A: Arrangement) -> str:
    lines = [f"field M={A.field.M}", f"dim n={A.dim}"]
    lines.extend(format_hyperplane(H) for H in A)
    return "\n".join(lines) + "\n"


_FIELD = re.compile(r"field\s+M\s*=\s*(\d+)\s*$")
_DIM = re.compile(r"dim\s+n\s*=\s*(\d+)\s*$")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def parse_arrangement(text: str) -> Arrangement:
    """Parse an arrangement file; errors carry line and column."""
    M = n = None
    hyperplanes = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        m = _FIELD.match(body)
        if m:
            if M is not None or hyperplanes:
                raise ParseError("field header must come once, before equations", indent + 1, lineno)
            M = int(m.group(1))
            if M < 1:
                raise ParseError("field modulus must be positive", indent + 1, lineno)
            continue
        m = _DIM.match(body)
        if m:
            if n is not None:
                raise ParseError("repeated dim header", indent + 1, lineno)
            n = int(m.group(1))
            if n < 1:
                raise ParseError("dimension must be positive", indent + 1, lineno)
            continue
        if n is None:
            raise ParseError("equation before 'dim n=<int>' header", indent + 1, lineno)
        if M is None:
            M = 1
        field = cyclotomic_field(M)
        try:
            linear, const = parse_equation(body, field, n)
        except ParseError as e:
            col = None if e.column is None else e.column + indent
            raise ParseError(e.message, col, lineno) from None
        if not any(linear):
            raise ParseError("equation has no variable part", indent + 1, lineno)
        H = Hyperplane.from_coefficients(linear, const)
        if H in seen:
            warnings.warn(
                f"line {lineno}: duplicate hyperplane {H} ignored",
                DuplicateHyperplaneWarning,
                stacklevel=2,
            )
            continue
        seen.add(H)
        hyperplanes.append(H)
    if n is None:
        raise ParseError("missing 'dim n=<int>' header", None, 1)
    return Arrangement(n, cyclotomic_field(M or 1), hyperplanes)


def read_arrangement(path) -> Arrangement:
    with open(path, encoding="utf-8") as fh:
        return parse_arrangement(fh.read())


def parse_residues(text: str, field, count: int):
    """Parse a residue file for an arrangement with ``count`` hyperplanes.

    Returns ``(N, residues)`` with ``residues[i]`` an N x N tuple matrix.
    Hyperplanes without a block get the zero matrix.
    """
    lines = [(k, _strip_comment(l)) for k, l in enumerate(text.splitlines(), start=1)]
    lines = [(k, l.strip()) for k, l in lines if l.strip()]
    if not lines:
        raise ParseError("empty residue file", None, 1)
    k0, head = lines[0]
    m = re.match(r"size\s+(\d+)$", head)
    if not m:
        raise ParseError("expected 'size N' header", 1, k0)
    N = int(m.group(1))
    if N < 1:
        raise ParseError("size must be positive", 1, k0)
    residues = {}
    pos = 1
    while pos < len(lines):
        k, l = lines[pos]
        m = re.match(r"residue\s+(\d+)$", l)
        if not m:
            raise ParseError("expected 'residue <index>'", 1, k)
        idx = int(m.group(1))
        if not 1 <= idx <= count:
            raise ParseError(f"hyperplane index {idx} out of range 1..{count}", 1, k)
        if idx - 1 in residues:
            raise ParseError(f"repeated residue for hyperplane {idx}", 1, k)
        rows = []
        for r in range(N):
            pos += 1
            if pos >= len(lines):
                raise ParseError(f"residue {idx}: expected {N} rows", None, k)
            kr, lr = lines[pos]
            entries = split_top_level(lr, None)
            if len(entries) != N:
                raise ParseError(f"expected {N} entries, found {len(entries)}", 1, kr)
            row = []
            for e in entries:
                try:
                    row.append(parse_scalar(e, field))
                except ParseError as err:
                    col = lr.find(e) + 1 + (err.column - 1 if err.column else 0)
                    raise ParseError(err.message, col, kr) from None
            rows.append(tuple(row))
        residues[idx - 1] = tuple(rows)
        pos += 1
    zero = tuple(tuple(field.zero for _ in range(N)) for _ in range(N))
    return N, tuple(residues.get(i, zero) for i in range(count))


def format_residues(N: int, residues) -> str:
    out = [f"size {N}"]
    for i, mat in enumerate(residues):
        out.append(f"residue {i + 1}")
        out.extend(" ".join(str(c) for c in row) for row in mat)
    return "\n".join(out) + "\n"


# structured (JSON-ready) forms


def flat_to_data(S: Flat) -> dict:
    return {
        "codim": S.codim,
        "equations": [format_row(r) for r in S.rows],
        "text": format_flat(S),
    }


def arrangement_to_data(A: Arrangement) -> dict:
    return {
        "field": A.field.M,
        "dim": A.dim,
        "hyperplanes": [format_hyperplane(H) for H in A],
    }


def subspace_to_data(W: Flat, field) -> dict:
    basis = W.direction_basis(field)
    return {"dim": W.dim, "basis": [format_vector(v) for v in basis]}
