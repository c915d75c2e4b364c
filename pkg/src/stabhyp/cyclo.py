"""Exact arithmetic in the cyclotomic field Q(z), z = exp(2*pi*i/M).

An element is stored as an integer coefficient vector of length phi(M)
over a positive common denominator, fully reduced.  Two elements are
equal iff their stored representations agree, so elements hash and
compare structurally.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction


@functools.cache
def cyclotomic_polynomial(M: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the monic M-th cyclotomic polynomial."""
    if M < 1:
        raise ValueError("modulus must be a positive integer")
    poly = [-1] + [0] * (M - 1) + [1]
    for d in range(1, M):
        if M % d == 0:
            poly = _exact_divide(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _exact_divide(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic with integer coefficients
    num = list(num)
    dq = len(den) - 1
    quot = [0] * (len(num) - dq)
    for k in range(len(num) - 1, dq - 1, -1):
        c = num[k]
        if c:
            quot[k - dq] = c
            for t in range(dq + 1):
                num[k - dq + t] -= c * den[t]
    if any(num[:dq]):
        raise ArithmeticError("inexact polynomial division")
    return quot


def _poly_trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list, list]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b):
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for t, bt in enumerate(b):
            a[shift + t] -= c * bt
        _poly_trim(a)
    return q, a


def _poly_sub_mul(a: list, q: list, b: list) -> list:
    # a - q*b
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, qi in enumerate(q):
        if qi:
            for j, bj in enumerate(b):
                out[i + j] -= qi * bj
    return _poly_trim(out)


class CyclotomicField:
    """The field Q(z_M).  Use :func:`cyclotomic_field` to get the shared instance."""

    def __init__(self, M: int):
        if M < 1:
            raise ValueError("modulus must be a positive integer")
        self.M = M
        self.modulus = cyclotomic_polynomial(M)
        self.phi = len(self.modulus) - 1
        # every root of unity in Q(z_M) has order dividing this
        self.capacity = M if M % 2 == 0 else 2 * M
        # reduced images of x^k for phi <= k <= 2*phi - 2
        self._tail = {}
        vec = [0] * self.phi
        vec[-1] = 1  # x^(phi-1)
        for k in range(self.phi, 2 * self.phi - 1):
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for t in range(self.phi):
                    vec[t] -= top * self.modulus[t]
            self._tail[k] = tuple(vec)
        self.zero = CycScalar._raw(self, (0,) * self.phi, 1)
        self.one = self.rational(1)
        if self.phi == 1:
            # Q itself: z_1 = 1, z_2 = -1
            self.zeta = self.rational(self.modulus[0] * -1)
        else:
            self.zeta = CycScalar._raw(self, (0, 1) + (0,) * (self.phi - 2), 1)

    def __repr__(self):
        return f"CyclotomicField({self.M})"

    def __reduce__(self):
        return (cyclotomic_field, (self.M,))

    def rational(self, q) -> CycScalar:
        q = Fraction(q)
        return CycScalar._make(self, (q.numerator,) + (0,) * (self.phi - 1), q.denominator)

    def __call__(self, value) -> CycScalar:
        if isinstance(value, CycScalar):
            if value.field is not self:
                raise ValueError(f"scalar from Q(z_{value.field.M}) used in Q(z_{self.M})")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.rational(value)

    def from_coefficients(self, coeffs) -> CycScalar:
        """Element sum(coeffs[k] * z^k); any length, reduced modulo Phi_M."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [c.numerator * (den // c.denominator) for c in fr]
        return CycScalar._make(self, self._reduce(ints), den)

    def parse(self, text: str) -> CycScalar:
        from .expr import parse_scalar

        return parse_scalar(text, self)

    def _reduce(self, coeffs) -> tuple[int, ...]:
        phi = self.phi
        if len(coeffs) <= phi:
            return tuple(coeffs) + (0,) * (phi - len(coeffs))
        if len(coeffs) <= 2 * phi - 1:
            out = list(coeffs[:phi])
            for k in range(phi, len(coeffs)):
                c = coeffs[k]
                if c:
                    for t, v in enumerate(self._tail[k]):
                        if v:
                            out[t] += c * v
            return tuple(out)
        out = list(coeffs)
        mod = self.modulus
        for k in range(len(out) - 1, phi - 1, -1):
            c = out[k]
            if c:
                for t in range(phi + 1):
                    out[k - phi + t] -= c * mod[t]
        return tuple(out[:phi])

    def root_of_unity(self, m: int) -> CycScalar:
        """exp(2*pi*i/m) as an element of this field."""
        if m < 1 or self.capacity % m:
            raise ValueError(f"Q(z_{self.M}) has no primitive {m}-th root of unity")
        if self.M % m == 0:
            return self.zeta ** (self.M // m)
        # M odd: exp(pi*i/M) = -z^((M+1)/2)
        base = -(self.zeta ** ((self.M + 1) // 2))
        return base ** (2 * self.M // m)

    def roots_of_unity(self, m: int) -> list[CycScalar]:
        w = self.root_of_unity(m)
        out, p = [], self.one
        for _ in range(m):
            out.append(p)
            p = p * w
        return out


@functools.cache
def cyclotomic_field(M: int) -> CyclotomicField:
    return CyclotomicField(M)


class CycScalar:
    """Immutable element of Q(z_M)."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: CyclotomicField, num, den: int = 1):
        num = tuple(int(c) for c in num)
        if len(num) != field.phi:
            raise ValueError("coefficient vector length must equal phi(M)")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        _set_normalized(self, field, num, int(den))

    @classmethod
    def _raw(cls, field, num, den):
        obj = object.__new__(cls)
        obj.field = field
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def _make(cls, field, num, den):
        obj = object.__new__(cls)
        _set_normalized(obj, field, num, den)
        return obj

    # -- predicates ----------------------------------------------------
    def __bool__(self):
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def sort_key(self):
        return tuple(Fraction(c, self.den) for c in self.num)

    def __eq__(self, other):
        if isinstance(other, CycScalar):
            return self.field is other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            if self.is_rational():
                h = hash(Fraction(self.num[0], self.den))
            else:
                h = hash((self.field.M, self.num, self.den))
            self._hash = h
        return h

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, CycScalar):
            if other.field is not self.field:
                raise ValueError("scalars from different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not any(other.num):
            return self
        if not any(self.num):
            return other
        d1, d2 = self.den, other.den
        if d1 == d2:
            num = tuple(a + b for a, b in zip(self.num, other.num))
            return CycScalar._make(self.field, num, d1)
        num = tuple(a * d2 + b * d1 for a, b in zip(self.num, other.num))
        return CycScalar._make(self.field, num, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return CycScalar._raw(self.field, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.num, other.num
        if not any(a) or not any(b):
            return self.field.zero
        if not any(b[1:]):
            c = b[0]
            return CycScalar._make(self.field, tuple(x * c for x in a), self.den * other.den)
        if not any(a[1:]):
            c = a[0]
            return CycScalar._make(self.field, tuple(x * c for x in b), self.den * other.den)
        conv = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        return CycScalar._make(self.field, self.field._reduce(conv), self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> CycScalar:
        if not any(self.num):
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            c = self.num[0]
            sign = -1 if c < 0 else 1
            return CycScalar._make(self.field, (sign * self.den,) + self.num[1:], abs(c))
        # extended Euclid: s*a + t*Phi = g, g constant
        field = self.field
        r0 = [Fraction(c) for c in field.modulus]
        r1 = _poly_trim([Fraction(c, self.den) for c in self.num])
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub_mul(s0, q, s1)
        g = r1[0]
        return field.from_coefficients([c / g for c in s1])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base, k = self.inverse(), -k
        result = self.field.one
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- text ----------------------------------------------------------
    def __repr__(self):
        return f"CycScalar(M={self.field.M}, {self})"

    def __str__(self):
        body = _format_terms(self)
        if len([c for c in self.num if c]) > 1:
            return f"({body})"
        return body


def _set_normalized(obj, field, num, den):
    if den < 0:
        num = tuple(-c for c in num)
        den = -den
    g = math.gcd(den, *num)
    if g != 1:
        num = tuple(c // g for c in num)
        den //= g
    obj.field = field
    obj.num = num
    obj.den = den
    obj._hash = None


def _format_terms(a: CycScalar) -> str:
    parts = []
    for k in range(len(a.num) - 1, -1, -1):
        c = a.num[k]
        if not c:
            continue
        q = Fraction(abs(c), a.den)
        if k == 0:
            mag = str(q)
        else:
            mono = "z" if k == 1 else f"z^{k}"
            mag = mono if q == 1 else f"{q}*{mono}"
        if not parts:
            parts.append(mag if c > 0 else f"-{mag}")
        else:
            parts.append(f" + {mag}" if c > 0 else f" - {mag}")
    return "".join(parts) if parts else "0"


def root_of_unity_order(a: CycScalar) -> int | None:
    """Least k >= 1 with a**k == 1, or None when ``a`` is not a root of unity."""
    if not a:
        raise ValueError("zero is not a root of unity")
    K = a.field.capacity
    for k in range(1, K + 1):
        if K % k == 0 and a**k == 1:
            return k
    return None


def arith(op: str, a: CycScalar, b: CycScalar) -> CycScalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")
