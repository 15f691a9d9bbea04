"""Exact scalars: rationals and the quadratic extension Q(sqrt(r)).

Rationals are plain :class:`fractions.Fraction` values.  The only irrational
numbers this package ever produces are square roots of rationals coming out of
the filiform normalizer, represented by :class:`QuadraticScalar`.  Arithmetic
that cancels the irrational part collapses back to ``Fraction``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

from .errors import IncompatibleRadicands

_RATIONAL_RE = re.compile(r"^(-?)(\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``-?<int>[/<positive int>]`` exactly; raise ValueError otherwise."""
    m = _RATIONAL_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    sign, num, den = m.groups()
    den = int(den) if den is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    value = Fraction(int(num), den)
    return -value if sign else value


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def squarefree_decompose(m: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``m == s * f**2`` and ``s`` squarefree (sign kept in ``s``)."""
    if m == 0:
        return 0, 1
    sign = -1 if m < 0 else 1
    m = abs(m)
    s, f = 1, 1
    d = 2
    while d * d <= m:
        while m % (d * d) == 0:
            m //= d * d
            f *= d
        if m % d == 0:
            m //= d
            s *= d
        d += 1
    return sign * s * m, f


def sqrt_rational(q):
    """Exact square root of a rational: a Fraction if ``q`` is a square, else a QuadraticScalar.

    Negative ``q`` is allowed; the result then lives in Q(sqrt(-m)).
    """
    q = Fraction(q)
    if q == 0:
        return Fraction(0)
    # sqrt(n/d) = sqrt(n*d)/d
    s, f = squarefree_decompose(q.numerator * q.denominator)
    coeff = Fraction(f, q.denominator)
    if s == 1:
        return coeff
    return QuadraticScalar(0, coeff, s)


def is_rational_square(q) -> bool:
    q = Fraction(q)
    if q < 0:
        return False
    return math.isqrt(q.numerator) ** 2 == q.numerator and math.isqrt(q.denominator) ** 2 == q.denominator


class QuadraticScalar:
    """The number ``a + b*sqrt(r)`` with rational ``a, b`` and squarefree integer ``r`` (``r != 0, 1``).

    Two values combine only when they share ``r``; rationals combine with anything.
    """

    __slots__ = ("a", "b", "r")

    def __init__(self, a, b, r: int):
        r = int(r)
        s, f = squarefree_decompose(r)
        if s in (0, 1):
            raise ValueError(f"radicand {r} is a perfect square")
        self.a = Fraction(a)
        self.b = Fraction(b) * f
        self.r = s

    @staticmethod
    def _make(a, b, r):
        if b == 0:
            return Fraction(a)
        return QuadraticScalar(a, b, r)

    def _split(self, other):
        if isinstance(other, QuadraticScalar):
            if other.r != self.r:
                raise IncompatibleRadicands(f"sqrt({self.r}) vs sqrt({other.r})")
            return other.a, other.b
        if isinstance(other, (int, Rational)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        parts = self._split(other)
        if parts is None:
            return NotImplemented
        return self._make(self.a + parts[0], self.b + parts[1], self.r)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticScalar(-self.a, -self.b, self.r)

    def __pos__(self):
        return self

    def __sub__(self, other):
        parts = self._split(other)
        if parts is None:
            return NotImplemented
        return self._make(self.a - parts[0], self.b - parts[1], self.r)

    def __rsub__(self, other):
        parts = self._split(other)
        if parts is None:
            return NotImplemented
        return self._make(parts[0] - self.a, parts[1] - self.b, self.r)

    def __mul__(self, other):
        parts = self._split(other)
        if parts is None:
            return NotImplemented
        c, d = parts
        return self._make(self.a * c + self.b * d * self.r, self.a * d + self.b * c, self.r)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.r * self.b * self.b

    def conjugate(self):
        return QuadraticScalar(self.a, -self.b, self.r)

    def inverse(self):
        n = self.norm()
        # norm vanishes only at zero because r is not a square
        return self._make(self.a / n, -self.b / n, self.r)

    def __truediv__(self, other):
        if isinstance(other, QuadraticScalar):
            if other.r != self.r:
                raise IncompatibleRadicands(f"sqrt({self.r}) vs sqrt({other.r})")
            return self * other.inverse()
        if isinstance(other, (int, Rational)):
            return self._make(self.a / other, self.b / other, self.r)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Rational)):
            return Fraction(other) * self.inverse()
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = Fraction(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadraticScalar):
            return (self.a, self.b, self.r) == (other.a, other.b, other.r) or (
                self.b == 0 and other.b == 0 and self.a == other.a
            )
        if isinstance(other, (int, Rational)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.r))

    def __repr__(self):
        return f"QuadraticScalar({self.a!s}, {self.b!s}, {self.r})"

    def __str__(self):
        return format_scalar(self)


def is_rational(x) -> bool:
    return isinstance(x, (int, Rational)) or (isinstance(x, QuadraticScalar) and x.b == 0)


def to_scalar(x):
    """Coerce ``x`` to an exact scalar.  Floats are rejected on purpose."""
    if type(x) is Fraction:
        return x
    if isinstance(x, QuadraticScalar):
        return x._make(x.a, x.b, x.r)
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} {x!r} as an exact scalar")


def format_scalar(x) -> str:
    """Text form without spaces: ``p/q`` for rationals, ``a+b*sqrt(r)`` otherwise."""
    if isinstance(x, QuadraticScalar):
        if x.b == 0:
            return format_rational(x.a)
        root = f"sqrt({x.r})"
        b = "" if x.b == 1 else "-" if x.b == -1 else f"{format_rational(x.b)}*"
        if x.a == 0:
            return f"{b}{root}"
        if x.b < 0:
            mag = "" if x.b == -1 else f"{format_rational(-x.b)}*"
            return f"{format_rational(x.a)}-{mag}{root}"
        return f"{format_rational(x.a)}+{b}{root}"
    return format_rational(x)


def parse_scalar(text: str):
    """Inverse of :func:`format_scalar` for the forms it emits."""
    text = text.strip()
    m = re.match(
        r"^(?:(-?\d+(?:/\d+)?)\s*([+-])\s*)?(-)?(?:(\d+(?:/\d+)?)\*)?sqrt\((-?\d+)\)$", text
    )
    if not m:
        return parse_rational(text)
    a_txt, op, neg, b_txt, r_txt = m.groups()
    a = parse_rational(a_txt) if a_txt else Fraction(0)
    b = parse_rational(b_txt) if b_txt else Fraction(1)
    if neg:
        b = -b
    if op == "-":
        b = -b
    return QuadraticScalar(a, b, int(r_txt))
