"""Ruled surfaces x(t, s) = p(t) + s q(t): normalization, direction profile, classification."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .algebra import linalg
from .algebra.scalars import Surd, field_d, mpq
from .algebra.unipoly import RatFunc, UniPoly, common_denominator
from .maps import AffineMap


class InvalidSurface(ValueError):
    pass


def _as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, UniPoly):
        return RatFunc.from_poly(x)
    if isinstance(x, (list, tuple)):
        return RatFunc.from_poly(UniPoly(x))
    return RatFunc.from_poly(UniPoly((x,)))


@dataclass(frozen=True)
class RuledSurface:
    """Standard-form parametrization; ``q`` holds polynomials once normalized."""

    p: tuple
    q: tuple
    name: str | None = field(default=None, compare=False)
    normalized: bool = field(default=False, compare=False)

    def __init__(self, p, q, name=None, normalized=False):
        if len(p) != 3 or len(q) != 3:
            raise InvalidSurface("p and q need three components")
        object.__setattr__(self, "p", tuple(_as_ratfunc(x) for x in p))
        qs = tuple(_as_ratfunc(x) for x in q)
        if all(f.is_polynomial() for f in qs):
            qs = tuple(f.num.scale(1 / f.den.lc) for f in qs)
        object.__setattr__(self, "q", qs)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "normalized", normalized)

    @property
    def n(self) -> int:
        """Direction degree: max degree of the q components."""
        return max(_poly(c).degree for c in self.q)

    def field_d(self) -> int | None:
        coeffs = []
        for f in self.p:
            coeffs += list(f.num.c) + list(f.den.c)
        for f in self.q:
            if isinstance(f, RatFunc):
                coeffs += list(f.num.c) + list(f.den.c)
            else:
                coeffs += list(f.c)
        return field_d(*coeffs)

    def point(self, t, s):
        return [f(t) + s * g(t) for f, g in zip(self.p, self.q)]

    def with_name(self, name):
        return RuledSurface(self.p, self.q, name, self.normalized)

    def __repr__(self):
        ps = ", ".join(f.format() for f in self.p)
        qs = ", ".join(_poly(g).format() if isinstance(g, UniPoly) else g.format() for g in self.q)
        label = f"{self.name}: " if self.name else ""
        return f"RuledSurface({label}p=({ps}), q=({qs}))"


def _poly(x) -> UniPoly:
    if isinstance(x, UniPoly):
        return x
    if isinstance(x, RatFunc):
        if not x.is_polynomial():
            raise InvalidSurface("direction is not polynomial; normalize first")
        return x.num.scale(1 / x.den.lc)
    raise TypeError(x)


def _rational_content(polys) -> mpq | None:
    """Positive content making the polynomials primitive with integer coefficients."""
    coeffs = [c for p in polys for c in p.c]
    if any(isinstance(c, Surd) or not hasattr(c, "numerator") for c in coeffs):
        return None
    num = 0
    den = 1
    for c in coeffs:
        c = mpq(c)
        num = gcd(num, int(c.numerator))
        den = den * int(c.denominator) // gcd(den, int(c.denominator))
    return mpq(num, den) if num else None


def normalize(surface: RuledSurface) -> RuledSurface:
    """Clear denominators of q, divide out the gcd of its components and the content."""
    qs = [_as_ratfunc(x) for x in surface.q]
    if all(f.is_zero() for f in qs):
        raise InvalidSurface("direction vector q is identically zero")
    num, _ = common_denominator(qs)
    g = UniPoly()
    for p in num:
        if p:
            g = g.gcd(p) if g else p.monic()
    polys = [p.exact_div(g) for p in num]
    content = _rational_content(polys)
    if content is not None:
        polys = [p.scale(1 / content) for p in polys]
    return RuledSurface(surface.p, polys, surface.name, normalized=True)


@dataclass(frozen=True)
class DirectionProfile:
    rows: tuple  # v_0 .. v_n, each a 3-vector
    rank: int


def direction_matrix(surface: RuledSurface):
    """Rows v_l = coefficient of t^l in q, for l = 0..n."""
    qs = [_poly(c) for c in surface.q]
    n = max(q.degree for q in qs)
    return [[q.coeff(l) for q in qs] for l in range(n + 1)]


def direction_profile(surface: RuledSurface) -> DirectionProfile:
    V = direction_matrix(surface)
    return DirectionProfile(tuple(tuple(r) for r in V), linalg.bareiss_rank(V))


@dataclass(frozen=True)
class SurfaceClass:
    tag: str  # "general", "planar-directions", "cylindrical", "conical"
    rank: int
    vertex: tuple | None = None

    def __str__(self):
        if self.tag == "conical":
            from .algebra.scalars import format_scalar

            v = ", ".join(format_scalar(x) for x in self.vertex)
            return f"conical (vertex ({v}), r={self.rank})"
        return f"{self.tag} (r={self.rank})"


def find_vertex(surface: RuledSurface):
    """Point p0 with (p(t) - p0) x q(t) == 0, if there is exactly one."""
    P, D = common_denominator(list(surface.p))
    qs = [_poly(c) for c in surface.q]
    # (P - D p0) x q: each coefficient of t is affine in p0
    rows, rhs = [], []
    cross_terms = [(1, 2), (2, 0), (0, 1)]
    for i, j in cross_terms:
        const = P[i] * qs[j] - P[j] * qs[i]
        # coefficient polynomials of p0_i and p0_j
        ci = -(D * qs[j])
        cj = D * qs[i]
        deg = max(const.degree, ci.degree, cj.degree)
        for l in range(deg + 1):
            row = [mpq(0)] * 3
            row[i] = ci.coeff(l)
            row[j] = cj.coeff(l)
            rows.append(row)
            rhs.append(-const.coeff(l))
    sol = linalg.solve(rows, rhs)
    if sol is None or sol[1]:
        return None
    return tuple(sol[0])


def classify(surface: RuledSurface) -> SurfaceClass:
    if not surface.normalized:
        surface = normalize(surface)
    r = direction_profile(surface).rank
    if r == 1:
        return SurfaceClass("cylindrical", r)
    v = find_vertex(surface)
    if v is not None:
        return SurfaceClass("conical", r, v)
    return SurfaceClass("general" if r == 3 else "planar-directions", r)


def apply_affine(surface: RuledSurface, f: AffineMap) -> RuledSurface:
    """Parametrization (A p + b, A q), normalized."""
    if not f.det():
        raise ValueError("singular affine map")
    A = f.matrix
    p = [sum((A[i][j] * surface.p[j] for j in range(3)), RatFunc(UniPoly())) + f.b[i] for i in range(3)]
    q = [sum((_as_ratfunc(surface.q[j]) * A[i][j] for j in range(3)), RatFunc(UniPoly())) for i in range(3)]
    return normalize(RuledSurface(p, q, surface.name))


def translate(surface: RuledSurface, v) -> RuledSurface:
    return RuledSurface([f + c for f, c in zip(surface.p, v)], surface.q, surface.name, surface.normalized)
