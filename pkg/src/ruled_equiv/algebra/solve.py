"""Solving polynomial systems: Groebner bases, saturation, triangular back-substitution.

Pipeline for a system ``F`` with nonvanishing constraints ``g_i != 0``:

1. grevlex basis of ``F`` (cheap, and a good seed), dividing out powers of
   variables that a monomial constraint already forces to be nonzero;
2. one saturation variable per ``g_i``: basis of ``B + (u*g_i - 1)`` under an
   order eliminating ``u``, keeping the elements free of ``u``;
3. if zero-dimensional, FGLM to a lex basis and real points by
   back-substitution through it, factoring each univariate fiber polynomial;
   otherwise the grevlex basis and a maximal independent set describe the
   family.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import sympy

from .groebner import GroebnerBasis, buchberger, dimension, fglm, maximal_independent_set
from .multipoly import MultiPoly, sort_vars
from .numberfield import AlgElem, NumberField
from .realroots import AlgNum, sturm_isolate
from .scalars import Surd, mpq, surd
from .unipoly import UniPoly

SATURATION_VARS = ("u", "uk", "ul")
SEPARATING_VAR = "zsep"
# coefficients of the separating linear forms tried in turn
_SEPARATORS = ((1, 2, 3, 5, 7, 11, 13), (1, -3, 4, -7, 9, -13, 17), (2, 5, -3, 11, -8, 19, 23))


class SolverError(RuntimeError):
    """The system is outside what the solver handles (e.g. nested extensions)."""


class DimensionError(SolverError):
    def __init__(self, dim: int):
        super().__init__(f"solution set has dimension {dim}, expected 0")
        self.dim = dim


@dataclass
class SystemSolution:
    basis: GroebnerBasis
    dimension: int
    points: list[dict] | None = None
    free: tuple[str, ...] = field(default_factory=tuple)

    @property
    def consistent(self) -> bool:
        return self.dimension >= 0

    @property
    def finite(self) -> bool:
        return self.dimension == 0


# ---------------------------------------------------------------------------
# univariate real roots over Q, Q(sqrt d) and Q(theta)


def _to_sympy(c, d):
    if isinstance(c, Surd):
        return sympy.Rational(int(c.a.numerator), int(c.a.denominator)) + sympy.Rational(
            int(c.b.numerator), int(c.b.denominator)
        ) * sympy.sqrt(d)
    c = mpq(c)
    return sympy.Rational(int(c.numerator), int(c.denominator))


def _from_sympy(expr, d):
    expr = sympy.expand(expr)
    if d is None:
        r = sympy.Rational(expr)
        return mpq(int(r.p), int(r.q))
    b = sympy.Rational(expr.coeff(sympy.sqrt(d)))
    a = sympy.Rational(sympy.expand(expr - b * sympy.sqrt(d)))
    return surd(mpq(int(a.p), int(a.q)), mpq(int(b.p), int(b.q)), d)


def factor_over_field(h: UniPoly, d: int | None = None) -> list[UniPoly]:
    """Irreducible monic factors of ``h`` over Q or Q(sqrt(d)) (multiplicities dropped)."""
    x = sympy.Symbol("x")
    expr = sum(_to_sympy(c, d) * x**i for i, c in enumerate(h.c))
    if d is None:
        _, facs = sympy.factor_list(expr, x)
    else:
        _, facs = sympy.factor_list(expr, x, extension=sympy.sqrt(d))
    out = []
    for f, _ in facs:
        coeffs = sympy.Poly(f, x).all_coeffs()[::-1]
        out.append(UniPoly([_from_sympy(c, d) for c in coeffs]).monic())
    return out


def _sort_key(v):
    return float(v)


def real_roots(h: UniPoly, d: int | None = None) -> list:
    """Distinct real roots of a nonzero polynomial with coefficients in one exact field.

    Roots in the coefficient field (Q, or Q(sqrt(d)) when ``d`` is given or
    implied by the coefficients) are returned as field elements; a root of an
    irreducible rational factor of degree >= 2 becomes the generator of a new
    :class:`NumberField`.
    """
    if not h:
        raise ValueError("zero polynomial has every value as a root")
    h = h.squarefree_part()
    if h.degree <= 0:
        return []
    if h.degree == 1:
        return [-h.coeff(0) / h.coeff(1)]
    alg = [c for c in h.c if isinstance(c, AlgElem) and not c.is_rational()]
    if alg:
        raise SolverError("polynomial over a number field with no root in it (nested extension)")
    coeffs = [c.as_rational() if isinstance(c, AlgElem) else c for c in h.c]
    surds = [c for c in coeffs if isinstance(c, Surd)]
    roots = []
    if surds:
        d = surds[0].d
    if d is not None:
        for f in factor_over_field(UniPoly(coeffs), d):
            if f.degree == 1:
                roots.append(-f.coeff(0))
                continue
            conj = f.map_coeffs(lambda c: c.conjugate() if isinstance(c, Surd) else c)
            norm = UniPoly([mpq(c) if not isinstance(c, Surd) else c.a for c in (f * conj).c])
            if sturm_isolate(norm):
                raise SolverError(
                    f"irreducible factor {f} over Q(sqrt({d})) has real roots (nested extension)"
                )
        return sorted(roots, key=_sort_key)
    for f in factor_over_field(UniPoly(coeffs)):
        if f.degree == 1:
            roots.append(-f.coeff(0))
        else:
            for theta in AlgNum.roots(f):
                roots.append(NumberField(theta).gen())
    return sorted(roots, key=_sort_key)


# ---------------------------------------------------------------------------


def _specialize(p: MultiPoly, var: str, point: dict) -> UniPoly:
    """Substitute ``point`` into ``p`` and view the result as a polynomial in ``var``."""
    i = p.vars.index(var)
    coeffs: dict[int, object] = {}
    cache: dict = {}
    for e, c in p.terms.items():
        v = c
        for j, x in enumerate(e):
            if x and j != i:
                key = (j, x)
                pw = cache.get(key)
                if pw is None:
                    pw = cache[key] = point[p.vars[j]] ** x
                v = v * pw
        if v:
            old = coeffs.get(e[i])
            coeffs[e[i]] = v if old is None else old + v
    deg = max(coeffs, default=-1)
    return UniPoly([coeffs.get(k, mpq(0)) for k in range(deg + 1)])


def solve_zero_dim(gb: GroebnerBasis, d: int | None = None) -> list[dict]:
    """All real points of a zero-dimensional lex basis, each exactly once.

    ``d`` names the ambient field Q(sqrt(d)); roots inside it stay surds.
    """
    if gb.order != "lex":
        raise ValueError("solve_zero_dim needs a lex basis")
    if gb.is_unit():
        return []
    dim = dimension(gb)
    if dim != 0:
        raise DimensionError(dim)
    vars = gb.vars
    by_var: dict[str, list[MultiPoly]] = {v: [] for v in vars}
    for p in gb.polys:
        # leading variable: the highest-ranked one occurring in p
        lead = None
        for j, v in enumerate(vars):
            if any(e[j] for e in p.terms):
                lead = v
                break
        if lead is not None:
            by_var[lead].append(p)
    points = [{}]
    for var in reversed(vars):
        new_points = []
        for pt in points:
            g = None
            for p in by_var[var]:
                h = _specialize(p, var, pt)
                if not h:
                    continue
                g = h if g is None else g.gcd(h)
                if g.degree == 0:
                    break
            if g is None:
                raise DimensionError(1)
            if g.degree <= 0:
                continue
            for r in real_roots(g, d):
                q = dict(pt)
                q[var] = r
                new_points.append(q)
        points = new_points
        if not points:
            break
    return points


def _nonzero_vars(nonzero) -> set[str]:
    """Variables forced nonzero because some constraint is a single monomial."""
    out = set()
    for g in nonzero:
        g = MultiPoly.lift(g)
        if len(g.terms) == 1:
            out.update(g.used_vars())
    return out


def _strip_monomial_content(p: MultiPoly, vars: tuple, keep: set[str]) -> MultiPoly:
    """Divide out the largest power of each variable in ``keep`` that divides ``p``."""
    idx = [i for i, v in enumerate(vars) if v in keep]
    if not idx or not p.terms:
        return p
    low = {i: min(e[i] for e in p.terms) for i in idx}
    if not any(low.values()):
        return p
    out = {}
    for e, c in p.terms.items():
        ne = list(e)
        for i, x in low.items():
            ne[i] -= x
        out[tuple(ne)] = c
    return MultiPoly(vars, out, _trusted=True)


def _grevlex_presolve(polys, vars, keep, budget):
    """grevlex basis, re-run while dividing out known-nonzero variables changes it."""
    polys = [_strip_monomial_content(p.with_vars(vars), vars, keep) for p in polys]
    while True:
        G = buchberger(polys, "grevlex", vars, budget)
        if G.is_unit() or not keep:
            return G
        stripped = [_strip_monomial_content(p, vars, keep) for p in G.polys]
        if all(a.terms == b.terms for a, b in zip(stripped, G.polys)):
            return G
        polys = stripped


def solve_system(polys, vars=None, nonzero=(), budget: int | None = None,
                 d: int | None = None) -> SystemSolution:
    """Solve ``polys = 0`` subject to ``g != 0`` for each ``g`` in ``nonzero``."""
    polys = [MultiPoly.lift(p) for p in polys]
    polys = [p for p in polys if p]
    if vars is None:
        names = set()
        for p in polys + [MultiPoly.lift(g) for g in nonzero]:
            names.update(p.used_vars())
        vars = sort_vars(names)
    vars = tuple(vars)
    keep = _nonzero_vars(nonzero) & set(vars)
    if any(v in SATURATION_VARS or v == SEPARATING_VAR for v in vars):
        raise ValueError("saturation variable names are reserved")
    if not vars:
        bad = any(p for p in polys) or any(not g for g in nonzero)
        unit = GroebnerBasis([MultiPoly.const(mpq(1))], (), "lex")
        if bad:
            return SystemSolution(unit, -1, [])
        return SystemSolution(GroebnerBasis([], (), "lex"), 0, [{}])
    if polys:
        G = _grevlex_presolve(polys, vars, keep, budget)
        if G.is_unit():
            return SystemSolution(G, -1, [])
    else:
        G = GroebnerBasis([], vars, "grevlex")
    gs = [MultiPoly.lift(g) for g in nonzero]
    gs = [g for g in gs if not g.is_constant() or not g]
    if len(gs) > len(SATURATION_VARS):
        raise ValueError("too many nonvanishing constraints")
    for sv, g in zip(SATURATION_VARS, gs):
        if not g:
            return SystemSolution(GroebnerBasis([MultiPoly.const(mpq(1), vars)], vars, "lex"), -1, [])
        G = saturate(G, g, sv, budget)
        if G.is_unit():
            return SystemSolution(G, -1, [])
    dim = dimension(G)
    if dim == 0:
        L = fglm(G, "lex", budget)
        try:
            return SystemSolution(L, 0, solve_zero_dim(L, d))
        except SolverError:
            if len(vars) < 2:
                raise
        return SystemSolution(L, 0, _shape_points(G, d, budget))
    return SystemSolution(G, dim, None, maximal_independent_set(G))


def _shape_points(G: GroebnerBasis, d, budget) -> list[dict]:
    """Points of a zero-dimensional ideal after a linear change of coordinates.

    The last variable is replaced by z = sum c_i x_i.  When z separates the
    points the lex basis has shape form, so every coordinate lives in the
    field generated by one root of a univariate polynomial in z.
    """
    vars = G.vars
    last = vars[-1]
    new_vars = vars[:-1] + (SEPARATING_VAR,)
    err = None
    for cs in _SEPARATORS:
        cs = cs[:len(vars)]
        # last = (z - sum_{i<last} c_i x_i) / c_last
        expr = MultiPoly.gen(SEPARATING_VAR)
        for c, v in zip(cs, vars[:-1]):
            expr = expr - MultiPoly.gen(v) * c
        expr = expr * (mpq(1) / cs[-1])
        polys = [p.subs({last: expr}).with_vars(new_vars) for p in G.polys]
        H = buchberger(polys, "grevlex", new_vars, budget)
        try:
            pts = solve_zero_dim(fglm(H, "lex", budget), d)
        except SolverError as e:
            err = e
            continue
        out = []
        for pt in pts:
            z = pt.pop(SEPARATING_VAR)
            val = z
            for c, v in zip(cs, vars[:-1]):
                val = val - pt[v] * c
            pt[last] = val / cs[-1]
            out.append(pt)
        return out
    raise err


def saturate(G: GroebnerBasis, g: MultiPoly, name: str = "u", budget: int | None = None) -> GroebnerBasis:
    """grevlex basis of the saturation I : g^oo, eliminating ``name`` from I + (name*g - 1)."""
    vars = G.vars
    ext = (name,) + vars
    u = MultiPoly.gen(name)
    E = buchberger(list(G.polys) + [u * g - 1], "elim1", ext, budget)
    kept = [p.with_vars(ext) for p in E.polys]
    kept = [MultiPoly(vars, {e[1:]: c for e, c in p.terms.items()}, _trusted=True)
            for p in kept if not any(e[0] for e in p.terms)]
    # already a Groebner basis for grevlex on vars, and reduced
    return GroebnerBasis(kept, vars, "grevlex")
