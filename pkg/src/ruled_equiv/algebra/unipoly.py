"""Dense univariate polynomials and rational functions.

Coefficients may live in any ring whose elements support ``+ - *`` and
truth testing (rationals, surds, number-field elements, even
:class:`~ruled_equiv.algebra.multipoly.MultiPoly`).  Division, gcd and the
rational-function type additionally need field coefficients.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import format_scalar, mpq

ZERO_DEGREE = -1  # degree of the zero polynomial

_LIFT = (int, Fraction)


def _lift(c):
    return mpq(c) if isinstance(c, _LIFT) else c


class UniPoly:
    """Polynomial ``c[0] + c[1] t + ... + c[d] t^d`` with trailing zeros stripped."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [_lift(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def const(cls, a):
        return cls((a,))

    @classmethod
    def monomial(cls, deg: int, coeff=1):
        return cls([0] * deg + [coeff])

    @classmethod
    def t(cls):
        return cls((0, 1))

    # basic queries --------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self):
        return self.c[-1] if self.c else mpq(0)

    def coeff(self, i: int):
        return self.c[i] if 0 <= i < len(self.c) else mpq(0)

    def is_zero(self) -> bool:
        return not self.c

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    def __bool__(self):
        return bool(self.c)

    def __len__(self):
        return len(self.c)

    def __iter__(self):
        return iter(self.c)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.c == other.c
        if isinstance(other, RatFunc):
            return other == self
        return len(self.c) <= 1 and self.coeff(0) == other

    def __hash__(self):
        return hash(self.c)

    # arithmetic -----------------------------------------------------------
    def _wrap(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, RatFunc):
            return None
        return UniPoly((other,))

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = out[i] + x
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-x for x in self.c])

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, a):
        if not a:
            return UniPoly()
        return UniPoly([a * x for x in self.c])

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        if not isinstance(other, UniPoly):
            return self.scale(other)
        a, b = self.c, other.c
        if not a or not b:
            return UniPoly()
        out = [None] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                v = x * y
                k = i + j
                out[k] = v if out[k] is None else out[k] + v
        return UniPoly([mpq(0) if v is None else v for v in out])

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly((mpq(1),))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a scalar, interval, or polynomial."""
        if not self.c:
            return mpq(0)
        acc = self.c[-1]
        for a in reversed(self.c[:-1]):
            acc = acc * x + a
        return acc

    def compose(self, other: "UniPoly") -> "UniPoly":
        acc = UniPoly()
        for a in reversed(self.c):
            acc = acc * other + a
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly([i * self.c[i] for i in range(1, len(self.c))])

    def map_coeffs(self, f) -> "UniPoly":
        return UniPoly([f(x) for x in self.c])

    # field operations -----------------------------------------------------
    def divmod(self, other: "UniPoly"):
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        db = other.degree
        inv = 1 / other.lc
        if len(rem) <= db:
            return UniPoly(), UniPoly(rem)
        quo = [mpq(0)] * (len(rem) - db)
        bc = other.c
        for i in range(len(rem) - 1, db - 1, -1):
            f = rem[i]
            if not f:
                continue
            f = f * inv
            quo[i - db] = f
            for j in range(db + 1):
                rem[i - db + j] = rem[i - db + j] - f * bc[j]
        return UniPoly(quo), UniPoly(rem[:db])

    def __floordiv__(self, other):
        return self.divmod(self._wrap(other))[0]

    def __mod__(self, other):
        return self.divmod(self._wrap(other))[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "UniPoly":
        if not self.c:
            return self
        lc = self.lc
        if lc == 1:
            return self
        inv = 1 / lc
        return UniPoly([x * inv for x in self.c])

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while b.c:
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def lcm(self, other: "UniPoly") -> "UniPoly":
        if not self.c or not other.c:
            return UniPoly()
        return (self * other).exact_div(self.gcd(other)).monic()

    def squarefree_part(self) -> "UniPoly":
        if self.degree <= 0:
            return self.monic()
        return self.exact_div(self.gcd(self.derivative())).monic()

    # formatting -----------------------------------------------------------
    def format(self, var: str = "t") -> str:
        return format_poly(self.c, var)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"UniPoly({self.format()})"


def _coeff_str(c) -> str:
    s = format_scalar(c)
    if any(ch in s[1:] for ch in "+-") or "*" in s:
        return f"({s})"
    return s


def format_poly(coeffs, var: str = "t") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        cs = _coeff_str(c)
        if mono:
            if cs == "1":
                body = mono
            elif cs == "-1":
                body = "-" + mono
            else:
                body = f"{cs}*{mono}"
        else:
            body = cs
        if terms and not body.startswith("-"):
            body = "+" + body
        terms.append(body)
    return "".join(terms) if terms else "0"


class RatFunc:
    """Reduced quotient ``num/den`` of field polynomials with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce: bool = True):
        if not isinstance(num, UniPoly):
            num = UniPoly((num,))
        if den is None:
            den = UniPoly((mpq(1),))
        elif not isinstance(den, UniPoly):
            den = UniPoly((den,))
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            if not num:
                den = UniPoly((mpq(1),))
            elif den.degree > 0:
                g = num.gcd(den)
                if g.degree > 0:
                    num, den = num.exact_div(g), den.exact_div(g)
            lc = den.lc
            if lc != 1:
                inv = 1 / lc
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: UniPoly) -> "RatFunc":
        return cls(p, UniPoly((mpq(1),)), reduce=False)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def _wrap(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, UniPoly):
            return RatFunc.from_poly(other)
        return RatFunc.from_poly(UniPoly((other,)))

    def __add__(self, other):
        o = self._wrap(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._wrap(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._wrap(other)
        if not o.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._wrap(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return RatFunc(self.den**-e, self.num**-e)
        return RatFunc(self.num**e, self.den**e, reduce=False)

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(x) / d

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, UniPoly):
            return self.den.degree == 0 and self.num == other
        return self.den.degree == 0 and self.num == other

    def __hash__(self):
        return hash((self.num, self.den))

    def format(self, var: str = "t") -> str:
        if self.den.degree == 0:
            return self.num.format(var)
        return f"({self.num.format(var)})/({self.den.format(var)})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RatFunc({self.format()})"


def common_denominator(fs) -> tuple[list[UniPoly], UniPoly]:
    """Write rational functions ``fs`` as ``P_i / D`` with one monic ``D``."""
    D = UniPoly((mpq(1),))
    for f in fs:
        D = D.lcm(f.den)
    return [f.num * D.exact_div(f.den) for f in fs], D
