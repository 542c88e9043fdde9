"""Real root isolation by Sturm sequences, rational interval arithmetic, and
real algebraic numbers represented by (polynomial, isolating interval)."""

from __future__ import annotations

from .scalars import mpq
from .unipoly import UniPoly


class Interval:
    """Closed interval with rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = mpq(lo)
        hi = lo if hi is None else mpq(hi)
        if lo > hi:
            lo, hi = hi, lo
        self.lo, self.hi = lo, hi

    def _iv(self, other):
        return other if isinstance(other, Interval) else Interval(other)

    def __add__(self, other):
        o = self._iv(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._iv(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._iv(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def sign(self) -> int | None:
        """Sign if determined by the interval, else None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


def _rational_poly(p: UniPoly) -> UniPoly:
    return UniPoly([mpq(c) for c in p.c])


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if not r:
            break
        seq.append(-r)
    return seq


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_variations(seq, x) -> int:
    signs = [s for s in (_sign(q(x)) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def cauchy_bound(p: UniPoly):
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.c[:-1]), default=mpq(0))


def count_roots(seq, a, b) -> int:
    """Distinct real roots in ``(a, b]`` (``a``, ``b`` not roots)."""
    return sign_variations(seq, a) - sign_variations(seq, b)


def sturm_isolate(p: UniPoly, max_width=1) -> list[tuple[mpq, mpq]]:
    """Disjoint isolating intervals ``(lo, hi)`` for the distinct real roots of ``p``.

    Endpoints are never roots; each open interval holds exactly one root and
    is refined to width at most ``max_width``.  Sorted increasingly.
    """
    p = _rational_poly(p)
    if p.degree <= 0:
        return []
    p = p.squarefree_part()
    seq = sturm_sequence(p)
    B = mpq(int(cauchy_bound(p)) + 1)
    out = []
    stack = [(-B, B)]
    while stack:
        a, b = stack.pop()
        n = count_roots(seq, a, b)
        if n == 0:
            continue
        if n == 1 and b - a <= max_width:
            out.append((a, b))
            continue
        m = (a + b) / 2
        # nudge the split point off a root, keeping it strictly inside
        step = (b - a) / 4
        while not p(m):
            step /= 2
            m = m - step
        stack.append((a, m))
        stack.append((m, b))
    out.sort()
    return out


def eval_interval(p: UniPoly, iv: Interval) -> Interval:
    """Interval enclosure of ``p`` over ``iv`` by Horner's rule."""
    acc = Interval(p.lc) if p.c else Interval(0)
    for c in reversed(p.c[:-1]):
        acc = acc * iv + c
    return acc


class AlgNum:
    """A real algebraic number: root of ``poly`` isolated in ``[lo, hi]``.

    ``poly`` is squarefree with rational coefficients; either ``lo == hi`` is
    the root itself or ``poly`` changes sign strictly between the endpoints,
    which are not roots.
    """

    __slots__ = ("poly", "lo", "hi", "_seq")

    def __init__(self, poly: UniPoly, lo, hi):
        self.poly = _rational_poly(poly).squarefree_part()
        self.lo, self.hi = mpq(lo), mpq(hi)
        self._seq = None
        if self.lo > self.hi:
            raise ValueError("empty interval")
        if self.lo == self.hi:
            if self.poly(self.lo):
                raise ValueError("degenerate interval is not a root")
        else:
            seq = self.sturm()
            if self.poly(self.lo) == 0 or self.poly(self.hi) == 0:
                raise ValueError("interval endpoint is a root")
            if count_roots(seq, self.lo, self.hi) != 1:
                raise ValueError("interval does not isolate exactly one root")

    @classmethod
    def roots(cls, poly: UniPoly) -> list["AlgNum"]:
        return [cls(poly, a, b) for a, b in sturm_isolate(poly)]

    def sturm(self):
        if self._seq is None:
            self._seq = sturm_sequence(self.poly)
        return self._seq

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    def refine(self, times: int = 1) -> "AlgNum":
        """Bisect the isolating interval in place; the root is never lost."""
        p = self.poly
        for _ in range(times):
            if self.lo == self.hi:
                return self
            m = (self.lo + self.hi) / 2
            pm = p(m)
            if not pm:
                self.lo = self.hi = m
                return self
            if _sign(pm) == _sign(p(self.lo)):
                self.lo = m
            else:
                self.hi = m
        return self

    def refine_to(self, width) -> "AlgNum":
        width = mpq(width)
        while self.hi - self.lo > width:
            self.refine()
        return self

    def sign(self) -> int:
        if self.lo <= 0 <= self.hi and self.poly(0) == 0:
            return 0
        while self.lo <= 0 <= self.hi:
            self.refine()
        return 1 if self.lo > 0 else -1

    def __float__(self):
        self.refine_to(mpq(1, 2**60))
        return float((self.lo + self.hi) / 2)

    def _is_root_of(self, g: UniPoly) -> bool:
        if self.lo == self.hi:
            return g(self.lo) == 0
        return count_roots(sturm_sequence(g), self.lo, self.hi) == 1

    def __eq__(self, other):
        """Decided by the gcd of the polynomials plus interval overlap."""
        if not isinstance(other, AlgNum):
            return NotImplemented
        g = self.poly.gcd(other.poly)
        if g.degree <= 0 or not self._is_root_of(g) or not other._is_root_of(g):
            return False
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            return False
        if lo == hi:
            return g(lo) == 0
        # endpoints of the overlap are endpoints of an isolating interval, so not roots
        return count_roots(sturm_sequence(g), lo, hi) >= 1

    def __hash__(self):
        # equal numbers may carry different polynomials, so no finer hash is sound
        return 0

    def format(self) -> str:
        return f"root of {self.poly.format('x')} in [{self.lo}, {self.hi}] {float(self):.12g}~"

    def __repr__(self):
        return f"AlgNum({self.format()})"
