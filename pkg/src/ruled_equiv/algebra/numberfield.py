"""Arithmetic in a real number field Q(theta).

``theta`` is a real root of an irreducible rational polynomial, fixed by an
isolating interval (:class:`AlgNum`).  Elements are residues modulo the
minimal polynomial, so zero testing and equality are exact; signs come from
interval evaluation with refinement of the generator's interval.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .realroots import AlgNum, Interval, eval_interval, sturm_isolate
from .scalars import FieldError, Surd, mpq
from .unipoly import UniPoly

_RAT = (int, type(mpq(0)), Fraction)


class NumberField:
    def __init__(self, theta: AlgNum):
        self.theta = theta
        self.modulus = theta.poly.monic()
        self.degree = self.modulus.degree
        if self.degree < 2:
            raise ValueError("a number field needs a generator of degree >= 2")

    def gen(self) -> "AlgElem":
        return AlgElem(self, UniPoly((0, 1)))

    def __call__(self, x) -> "AlgElem":
        return AlgElem(self, UniPoly((mpq(x),)))

    def same(self, other: "NumberField") -> bool:
        return self is other or (self.modulus == other.modulus and self.theta == other.theta)

    def __repr__(self):
        return f"Q({self.theta.format()})"


class AlgElem:
    __slots__ = ("field", "rep")

    def __init__(self, field: NumberField, rep: UniPoly):
        self.field = field
        if rep.degree >= field.degree:
            rep = rep % field.modulus
        self.rep = rep

    # coercion ---------------------------------------------------------------
    def _other_rep(self, other):
        if isinstance(other, AlgElem):
            if not self.field.same(other.field):
                raise FieldError("elements of different number fields")
            return other.rep
        if isinstance(other, _RAT):
            return UniPoly((mpq(other),))
        if isinstance(other, Surd):
            if not other.b:
                return UniPoly((other.a,))
            raise FieldError("nested extensions of Q(sqrt(d)) are not supported")
        return None

    def _new(self, rep):
        return AlgElem(self.field, rep)

    def __add__(self, other):
        o = self._other_rep(other)
        if o is None:
            return NotImplemented
        return self._new(self.rep + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other_rep(other)
        if o is None:
            return NotImplemented
        return self._new(self.rep - o)

    def __rsub__(self, other):
        o = self._other_rep(other)
        if o is None:
            return NotImplemented
        return self._new(o - self.rep)

    def __neg__(self):
        return self._new(-self.rep)

    def __mul__(self, other):
        o = self._other_rep(other)
        if o is None:
            return NotImplemented
        return self._new((self.rep * o) % self.field.modulus)

    __rmul__ = __mul__

    def inverse(self) -> "AlgElem":
        if not self.rep:
            raise ZeroDivisionError("division by zero in a number field")
        # extended Euclid: s*rep + t*m = 1
        r0, r1 = self.field.modulus, self.rep
        s0, s1 = UniPoly(), UniPoly((mpq(1),))
        while r1.degree > 0:
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        # r1 is a nonzero constant since the modulus is irreducible
        return self._new(s1.scale(1 / r1.lc))

    def __truediv__(self, other):
        o = self._other_rep(other)
        if o is None:
            return NotImplemented
        return self * self._new(o).inverse()

    def __rtruediv__(self, other):
        o = self._other_rep(other)
        if o is None:
            return NotImplemented
        return self._new(o) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self._new(UniPoly((mpq(1),)))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # predicates ---------------------------------------------------------------
    def __bool__(self):
        return bool(self.rep)

    def is_rational(self) -> bool:
        return self.rep.degree <= 0

    def as_rational(self):
        if not self.is_rational():
            raise ValueError("not a rational element")
        return self.rep.coeff(0)

    def __eq__(self, other):
        try:
            o = self._other_rep(other)
        except FieldError:
            return False
        if o is None:
            return NotImplemented
        return self.rep == o

    def __hash__(self):
        if self.is_rational():
            return hash(self.rep.coeff(0))
        return hash(self.rep)

    def enclosure(self) -> Interval:
        return eval_interval(self.rep, self.field.theta.interval)

    def sign(self) -> int:
        if not self.rep:
            return 0
        theta = self.field.theta
        while True:
            s = eval_interval(self.rep, theta.interval).sign()
            if s is not None and s != 0:
                return s
            theta.refine()

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        theta = self.field.theta
        iv = eval_interval(self.rep, theta.interval)
        while iv.width > mpq(1, 2**60) * (1 + abs(iv.lo)):
            theta.refine(4)
            iv = eval_interval(self.rep, theta.interval)
        return float(iv.mid)

    # conversion ---------------------------------------------------------------
    def minpoly(self) -> UniPoly:
        """Minimal polynomial over Q, found from the first linear relation among powers."""
        deg = self.field.degree
        powers = [UniPoly((mpq(1),))]
        x = UniPoly((mpq(1),))
        while True:
            x = (x * self.rep) % self.field.modulus
            cols = [[p.coeff(i) for i in range(deg)] for p in powers]
            M = linalg.transpose(cols)
            target = [x.coeff(i) for i in range(deg)]
            sol = linalg.solve(M, target)
            if sol is not None:
                coeffs = [-c for c in sol[0]] + [mpq(1)]
                return UniPoly(coeffs)
            powers.append(x)

    def to_algnum(self) -> AlgNum:
        """The same real number as an (irreducible minimal polynomial, interval) pair."""
        m = self.minpoly()
        if m.degree == 1:
            r = -m.coeff(0)
            return AlgNum(m, r, r)
        ivs = sturm_isolate(m)
        theta = self.field.theta
        while True:
            enc = self.enclosure()
            hits = [(a, b) for a, b in ivs if not (b < enc.lo or a > enc.hi)]
            if len(hits) == 1:
                a, b = hits[0]
                return AlgNum(m, a, b)
            theta.refine(4)
            ivs = [_shrink(m, a, b) for a, b in ivs]

    def format(self) -> str:
        if self.is_rational():
            from .scalars import format_scalar

            return format_scalar(self.as_rational())
        return self.to_algnum().format()

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"AlgElem({self.rep.format('theta')} in {self.field!r})"


def _shrink(p: UniPoly, a, b):
    num = AlgNum(p, a, b)
    num.refine(2)
    return num.lo, num.hi
