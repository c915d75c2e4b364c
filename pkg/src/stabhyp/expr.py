"""Parser for scalar literals and affine equations.

Grammar (whitespace ignored)::

    equation := expr '=' expr
    expr     := ['+' | '-'] term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := atom ['^' ['-'] INT]
    atom     := INT | 'z' | 'x' INT | '(' expr ')' | '-' factor

``z`` is the chosen primitive root of unity of the field and ``x<k>`` is the
k-th coordinate (1-based).  Products and quotients must keep the
expression affine.
"""

from __future__ import annotations

import re

from .cyclo import CycScalar, CyclotomicField


class ParseError(ValueError):
    """Raised for malformed input; ``column`` is 1-based when known."""

    def __init__(self, message: str, column: int | None = None, line: int | None = None):
        self.message = message
        self.column = column
        self.line = line
        super().__init__(self._render())

    def _render(self):
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.column is not None:
            where.append(f"column {self.column}")
        return f"{', '.join(where)}: {self.message}" if where else self.message

    def at_line(self, line: int) -> ParseError:
        return ParseError(self.message, self.column, line)


_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+)|(z)|([-+*/^()=,]))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[col - 1]!r}", col)
        col = m.start(m.lastindex) + 1
        if m.group(1):
            out.append(("int", int(m.group(1)), col))
        elif m.group(2):
            out.append(("var", int(m.group(2)[1:]), col))
        elif m.group(3):
            out.append(("z", None, col))
        else:
            out.append((m.group(4), None, col))
        pos = m.end()
    out.append(("end", None, len(text) + 1))
    return out


class _Affine:
    """sum(coef[k] * x_k) + const, with k 0-based."""

    __slots__ = ("coef", "const")

    def __init__(self, coef, const):
        self.coef = coef
        self.const = const

    def is_constant(self):
        return not any(self.coef.values())


class _Parser:
    def __init__(self, text: str, field: CyclotomicField, nvars: int | None):
        self.tokens = _tokenize(text)
        self.i = 0
        self.field = field
        self.nvars = nvars

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {self._describe(tok)}", tok[2])
        self.i += 1
        return tok

    @staticmethod
    def _describe(tok):
        if tok[0] == "end":
            return "end of input"
        if tok[0] == "int":
            return repr(str(tok[1]))
        if tok[0] == "var":
            return f"'x{tok[1]}'"
        return repr(tok[0])

    def const(self, value) -> _Affine:
        return _Affine({}, self.field(value) if not isinstance(value, CycScalar) else value)

    def expr(self) -> _Affine:
        tok = self.peek()
        sign = 1
        if tok[0] in "+-":
            self.take()
            sign = -1 if tok[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = _scale(acc, self.field(-1))
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            acc = _add(acc, rhs if op == "+" else _scale(rhs, self.field(-1)))
        return acc

    def term(self) -> _Affine:
        acc = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, col = self.take()
            rhs = self.factor()
            if op == "*":
                if acc.is_constant():
                    acc = _scale(rhs, acc.const)
                elif rhs.is_constant():
                    acc = _scale(acc, rhs.const)
                else:
                    raise ParseError("product of two variables is not affine", col)
            else:
                if not rhs.is_constant():
                    raise ParseError("division by a variable is not affine", col)
                if not rhs.const:
                    raise ParseError("division by zero", col)
                acc = _scale(acc, rhs.const.inverse())
        return acc

    def factor(self) -> _Affine:
        base = self.atom()
        if self.peek()[0] == "^":
            _, _, col = self.take()
            neg = False
            if self.peek()[0] == "-":
                self.take()
                neg = True
            k = self.take("int")[1]
            if not base.is_constant():
                raise ParseError("power of a variable is not affine", col)
            if neg and not base.const:
                raise ParseError("negative power of zero", col)
            return _Affine({}, base.const ** (-k if neg else k))
        return base

    def atom(self) -> _Affine:
        kind, val, col = self.peek()
        if kind == "int":
            self.take()
            return self.const(val)
        if kind == "z":
            self.take()
            return self.const(self.field.zeta)
        if kind == "var":
            self.take()
            if self.nvars is None:
                raise ParseError(f"variable x{val} not allowed in a scalar literal", col)
            if not 1 <= val <= self.nvars:
                raise ParseError(f"variable x{val} outside dimension {self.nvars}", col)
            return _Affine({val - 1: self.field.one}, self.field.zero)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "-":
            self.take()
            return _scale(self.factor(), self.field(-1))
        raise ParseError(f"unexpected {self._describe(self.peek())}", col)


def _scale(a: _Affine, c: CycScalar) -> _Affine:
    return _Affine({k: v * c for k, v in a.coef.items()}, a.const * c)


def _add(a: _Affine, b: _Affine) -> _Affine:
    coef = dict(a.coef)
    for k, v in b.coef.items():
        coef[k] = coef[k] + v if k in coef else v
    return _Affine(coef, a.const + b.const)


def parse_scalar(text: str, field: CyclotomicField) -> CycScalar:
    p = _Parser(text, field, None)
    value = p.expr()
    p.take("end")
    return value.const


def parse_equation(text: str, field: CyclotomicField, n: int):
    """Parse ``lhs = rhs``; returns (linear coefficients, constant) of lhs - rhs = 0."""
    p = _Parser(text, field, n)
    lhs = p.expr()
    p.take("=")
    rhs = p.expr()
    p.take("end")
    diff = _add(lhs, _scale(rhs, field(-1)))
    linear = tuple(diff.coef.get(k, field.zero) for k in range(n))
    return linear, diff.const


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside parentheses (``sep=None`` splits on whitespace)."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        is_sep = ch.isspace() if sep is None else ch == sep
        if is_sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    if sep is None:
        return [p for p in parts if p]
    return [p.strip() for p in parts]


def parse_vector(text: str, field: CyclotomicField) -> tuple[CycScalar, ...]:
    return tuple(parse_scalar(p, field) for p in split_top_level(text, ","))
