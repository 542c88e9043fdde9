"""Exact scalars: rationals (gmpy2 ``mpq``) and elements of Q(sqrt(d)).

Rationals are plain ``mpq`` values.  A quadratic irrational is a :class:`Surd`
``a + b*sqrt(d)``; arithmetic that cancels the radical collapses back to
``mpq`` so code working over Q never sees a ``Surd``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from gmpy2 import mpq

__all__ = [
    "mpq",
    "QQ",
    "Surd",
    "FieldError",
    "qq",
    "surd",
    "is_rational",
    "sign",
    "to_float",
    "format_scalar",
    "parse_scalar",
    "is_squarefree",
    "field_d",
]

QQ = mpq
_RATIONAL_TYPES = (int, type(mpq(0)), Fraction)


class FieldError(ValueError):
    """Raised when scalars from incompatible fields are combined."""


def qq(x) -> mpq:
    """Coerce ``x`` (int, Fraction, str, mpq) to ``mpq``."""
    if isinstance(x, Surd):
        if x.b:
            raise FieldError(f"{x} is not rational")
        return x.a
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not exact scalars")
    return mpq(x)


def is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    f = 2
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 1
    return True


class Surd:
    """``a + b*sqrt(d)`` with rational ``a``, ``b`` and square-free ``d > 1``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        self.a = qq(a)
        self.b = qq(b)
        self.d = int(d)

    # construction helpers -------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Surd):
            if other.d != self.d:
                raise FieldError(f"mixing sqrt({self.d}) and sqrt({other.d})")
            return other.a, other.b
        if isinstance(other, _RATIONAL_TYPES):
            return mpq(other), mpq(0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return surd(self.a + o[0], self.b + o[1], self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return surd(self.a - o[0], self.b - o[1], self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return surd(o[0] - self.a, o[1] - self.b, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c, e = o
        return surd(self.a * c + self.b * e * self.d, self.a * e + self.b * c, self.d)

    __rmul__ = __mul__

    def norm(self) -> mpq:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> "Surd":
        return Surd(self.a, -self.b, self.d)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        return surd(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, Surd):
            if other.d != self.d:
                raise FieldError(f"mixing sqrt({self.d}) and sqrt({other.d})")
            return self * other.inverse()
        if isinstance(other, _RATIONAL_TYPES):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return surd(self.a / other, self.b / other, self.d)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            return self.inverse() * mpq(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = mpq(1)
        base = self
        while n:
            if n & 1:
                result = base * result
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return Surd(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, Surd):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, _RATIONAL_TYPES):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with d*b^2
        return sa if self.a * self.a > self.d * self.b * self.b else sb

    def __lt__(self, other):
        return sign(self - other) < 0

    def __le__(self, other):
        return sign(self - other) <= 0

    def __gt__(self, other):
        return sign(self - other) > 0

    def __ge__(self, other):
        return sign(self - other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"Surd({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return format_scalar(self)


def surd(a, b, d: int):
    """Build ``a + b*sqrt(d)``, collapsing to ``mpq`` when ``b == 0``."""
    a, b = qq(a), qq(b)
    if not b:
        return a
    return Surd(a, b, d)


def is_rational(x) -> bool:
    return isinstance(x, _RATIONAL_TYPES) or (isinstance(x, Surd) and not x.b)


def field_d(*values) -> int | None:
    """The radicand shared by ``values`` (None when all are rational)."""
    d = None
    for v in values:
        if isinstance(v, Surd):
            if d is not None and d != v.d:
                raise FieldError(f"mixing sqrt({d}) and sqrt({v.d})")
            d = v.d
    return d


def sign(x) -> int:
    if isinstance(x, _RATIONAL_TYPES):
        return (x > 0) - (x < 0)
    return x.sign()


def to_float(x) -> float:
    return float(x)


def _fmt_rat(q) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Render exactly: ``3/4``, ``sqrt(3)``, ``-1/2+1/2*sqrt(3)``."""
    if isinstance(x, _RATIONAL_TYPES):
        return _fmt_rat(x)
    if isinstance(x, Surd):
        if x.b == 1:
            rad = f"sqrt({x.d})"
        elif x.b == -1:
            rad = f"-sqrt({x.d})"
        else:
            rad = f"{_fmt_rat(x.b)}*sqrt({x.d})"
        if not x.a:
            return rad
        if not rad.startswith("-"):
            rad = "+" + rad
        return _fmt_rat(x.a) + rad
    return str(x)


_RAT = r"[+-]?\d+(?:/\d+)?"
_SURD_RE = re.compile(
    rf"^(?:(?P<a>{_RAT})(?=[+-]|$))?"
    rf"(?:(?P<b>[+-]?(?:\d+(?:/\d+)?)?)\*?sqrt\((?P<d>\d+)\)(?:/(?P<den>\d+))?)?$"
)


def parse_scalar(text: str, d: int | None = None):
    """Parse ``3/4``, ``-2``, ``sqrt(3)``, ``1/2*sqrt(3)``, ``-1/2+sqrt(3)/2``.

    ``d`` is the radicand declared by the enclosing context; a radical with a
    different radicand raises :class:`FieldError`.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    m = _SURD_RE.match(s)
    if not m or (m.group("a") is None and m.group("d") is None):
        raise ValueError(f"malformed scalar {text!r}")
    a = mpq(m.group("a").lstrip("+")) if m.group("a") is not None else mpq(0)
    if m.group("d") is None:
        return a
    rd = int(m.group("d"))
    if d is None:
        raise FieldError(f"sqrt({rd}) used but the field is rational")
    if rd != d:
        raise FieldError(f"sqrt({rd}) used but the field is Q(sqrt({d}))")
    bs = m.group("b")
    if bs in ("", "+", None):
        b = mpq(1)
    elif bs == "-":
        b = mpq(-1)
    else:
        b = mpq(bs.lstrip("+"))
    if m.group("den"):
        b /= int(m.group("den"))
    return surd(a, b, d)
