"""Buchberger's algorithm with the Gebauer-Moeller criteria.

Internally a polynomial is a plain dict ``{exponent tuple: coefficient}`` over
a fixed variable tuple; basis elements are kept monic so reduction never
divides.  A step budget (number of reduction steps per call) guards against
runaway computations; it defaults to ``RULED_EQUIV_BUDGET`` or 10**7.
"""

from __future__ import annotations

import heapq
import os
from itertools import combinations

from .multipoly import MultiPoly, sort_vars
from .scalars import mpq

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """The Groebner step budget ran out."""


def default_budget() -> int:
    raw = os.environ.get("RULED_EQUIV_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"RULED_EQUIV_BUDGET must be an integer, got {raw!r}")
    return DEFAULT_BUDGET


ORDERS = ("lex", "grevlex", "elim1")


def order_key(order: str, nvars: int = 0):
    """Ascending sort key for exponent tuples under ``order``.

    ``elim1`` eliminates the first variable: it compares its exponent first
    and breaks ties with grevlex on the remaining variables.
    """
    if order == "lex":
        return lambda e: e
    if order == "grevlex":
        return lambda e: (sum(e), tuple(-x for x in reversed(e)))
    if order == "elim1":
        return lambda e: (e[0], sum(e) - e[0], tuple(-x for x in reversed(e[1:])))
    raise ValueError(f"unknown monomial order {order!r}")


def _heap_key(order: str):
    # min-heap key whose smallest element is the largest monomial
    if order == "lex":
        return lambda e: tuple(-x for x in e)
    if order == "elim1":
        return lambda e: (-e[0], e[0] - sum(e), tuple(reversed(e[1:])))
    return lambda e: (-sum(e), tuple(reversed(e)))


def _lm(p: dict, key):
    return max(p, key=key)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _monic(p: dict, lm):
    lc = p[lm]
    if lc == 1:
        return p
    inv = 1 / lc
    return {e: c * inv for e, c in p.items()}


class _Reducer:
    """Full reduction of a polynomial modulo a list of monic polynomials."""

    def __init__(self, order: str, budget: int):
        self.key = order_key(order, 0)
        self.hkey = _heap_key(order)
        self.budget = budget
        self.steps = 0

    def reduce(self, p: dict, basis, top: bool = False) -> dict:
        """``basis`` is a list of ``(lm, tail)`` where tail excludes the leading term.

        With ``top`` only the leading term is reduced: the result is zero or
        has a leading monomial outside the basis staircase.
        """
        if not p:
            return p
        p = dict(p)
        hkey = self.hkey
        heap = [(hkey(e), e) for e in p]
        heapq.heapify(heap)
        rem = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = p.pop(m, None)
            if c is None:
                continue
            for lm, tail in basis:
                if _divides(lm, m):
                    break
            else:
                rem[m] = c
                if top:
                    rem.update(p)
                    return rem
                continue
            self.steps += 1
            if self.steps > self.budget:
                raise BudgetExceeded(f"Groebner budget of {self.budget} reduction steps exceeded")
            shift = tuple(x - y for x, y in zip(m, lm))
            for e, cg in tail:
                ne = tuple(x + y for x, y in zip(e, shift))
                old = p.get(ne)
                if old is None:
                    p[ne] = -c * cg
                    heapq.heappush(heap, (hkey(ne), ne))
                else:
                    v = old - c * cg
                    if v:
                        p[ne] = v
                    else:
                        del p[ne]
        return rem


def _spoly(f: dict, lf, g: dict, lg):
    L = _lcm(lf, lg)
    sf = tuple(x - y for x, y in zip(L, lf))
    sg = tuple(x - y for x, y in zip(L, lg))
    out = {}
    for e, c in f.items():
        out[tuple(x + y for x, y in zip(e, sf))] = c
    for e, c in g.items():
        ne = tuple(x + y for x, y in zip(e, sg))
        v = out.get(ne)
        if v is None:
            out[ne] = -c
        else:
            v = v - c
            if v:
                out[ne] = v
            else:
                del out[ne]
    return out


def buchberger_raw(polys, order: str, budget: int | None = None, selection: str = "normal"):
    """Reduced Groebner basis of raw dict polynomials (all over one variable tuple).

    ``selection`` picks the critical pair with the smallest lcm (``normal``)
    or the smallest sugar degree (``sugar``).
    """
    if budget is None:
        budget = default_budget()
    key = order_key(order, 0)
    red = _Reducer(order, budget)
    f: list[dict] = []
    lms: list[tuple] = []
    sugar: list[int] = []

    def tail_of(i):
        lm = lms[i]
        return [(e, c) for e, c in f[i].items() if e != lm]

    tails: dict[int, list] = {}

    def basis_list(G):
        ordered = sorted(G, key=lambda i: key(lms[i]))
        out = []
        for i in ordered:
            if i not in tails:
                tails[i] = tail_of(i)
            out.append((lms[i], tails[i]))
        return out

    def add(p: dict, s: int) -> int:
        lm = _lm(p, key)
        p = _monic(p, lm)
        f.append(p)
        lms.append(lm)
        sugar.append(s)
        return len(f) - 1

    def update(G: set, B: set, ih: int):
        mh = lms[ih]
        C = list(G)
        D = []
        while C:
            ig = C.pop()
            mg = lms[ig]
            L = _lcm(mh, mg)
            disjoint = all(x == 0 or y == 0 for x, y in zip(mh, mg))
            if disjoint:
                D.append(ig)
                continue
            redundant = False
            for ix in C:
                if _divides(_lcm(mh, lms[ix]), L):
                    redundant = True
                    break
            if not redundant:
                for ix in D:
                    if _divides(_lcm(mh, lms[ix]), L):
                        redundant = True
                        break
            if not redundant:
                D.append(ig)
        E = set()
        for ig in D:
            mg = lms[ig]
            if not all(x == 0 or y == 0 for x, y in zip(mh, mg)):
                E.add((ih, ig))
        B_new = set()
        for pair in B:
            i1, i2 = pair
            L12 = _lcm(lms[i1], lms[i2])
            if (
                not _divides(mh, L12)
                or _lcm(lms[i1], mh) == L12
                or _lcm(lms[i2], mh) == L12
            ):
                B_new.add(pair)
        B_new |= E
        G_new = {ig for ig in G if not _divides(mh, lms[ig])}
        G_new.add(ih)
        return G_new, B_new

    inputs = [p for p in polys if p]
    if not inputs:
        return []
    nv = len(next(iter(inputs[0])))
    # pre-reduce inputs a little: sort by leading monomial
    inputs.sort(key=lambda p: key(_lm(p, key)))
    G: set = set()
    B: set = set()
    for p in inputs:
        if all(sum(e) == 0 for e in p):
            return [{(0,) * nv: mpq(1)}]
        ih = add(p, max(sum(e) for e in p))
        G, B = update(G, B, ih)

    def pair_key(pair):
        i, j = pair
        L = _lcm(lms[i], lms[j])
        s = max(
            sugar[i] + sum(L) - sum(lms[i]),
            sugar[j] + sum(L) - sum(lms[j]),
        )
        if selection == "normal":
            return (key(L), s, i, j)
        return (s, key(L), i, j)

    while B:
        pair = min(B, key=pair_key)
        B.remove(pair)
        i, j = pair
        s = pair_key(pair)[1 if selection == "normal" else 0]
        h = _spoly(f[i], lms[i], f[j], lms[j])
        h = red.reduce(h, basis_list(G), top=True)
        if h:
            if all(sum(e) == 0 for e in h):
                return [{(0,) * nv: mpq(1)}]
            ih = add(h, s)
            G, B = update(G, B, ih)

    # minimal basis, then inter-reduce tails
    Gl = sorted(G, key=lambda i: key(lms[i]))
    minimal = []
    for i in Gl:
        if not any(_divides(lms[j], lms[i]) and j != i and lms[j] != lms[i] for j in Gl):
            if not any(lms[j] == lms[i] for j in minimal):
                minimal.append(i)
    out = []
    for i in minimal:
        others = [(lms[j], tails.get(j) or tail_of(j)) for j in minimal if j != i]
        lm = lms[i]
        tail = {e: c for e, c in f[i].items() if e != lm}
        tail = red.reduce(tail, others)
        tail[lm] = mpq(1)
        out.append(tail)
    out.sort(key=lambda p: key(_lm(p, key)), reverse=True)
    return out


class GroebnerBasis:
    """A reduced Groebner basis together with its variable context and order."""

    def __init__(self, polys: list[MultiPoly], vars, order: str):
        self.polys = list(polys)
        self.vars = tuple(vars)
        self.order = order

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant() and bool(self.polys[0])

    def leading_monomials(self):
        key = order_key(self.order, len(self.vars))
        return [max(p.terms, key=key) for p in self.polys]

    def reduce(self, p: MultiPoly) -> MultiPoly:
        """Normal form of ``p`` modulo the basis."""
        p = MultiPoly.lift(p).with_vars(self.vars)
        key = order_key(self.order, len(self.vars))
        basis = []
        for g in self.polys:
            lm = max(g.terms, key=key)
            basis.append((lm, [(e, c) for e, c in g.terms.items() if e != lm]))
        red = _Reducer(self.order, default_budget())
        return MultiPoly(self.vars, red.reduce(p.terms, basis), _trusted=True)

    def contains(self, p) -> bool:
        return not self.reduce(p)

    def dimension(self) -> int:
        return dimension(self)

    def independent_set(self) -> tuple[str, ...]:
        return maximal_independent_set(self)

    def __repr__(self):
        return f"GroebnerBasis({self.order}, [{', '.join(map(str, self.polys))}])"


def buchberger(system, order: str = "lex", vars=None, budget: int | None = None,
               selection: str = "normal") -> GroebnerBasis:
    """Reduced Groebner basis of ``system`` (iterable of MultiPoly)."""
    polys = [MultiPoly.lift(p) for p in system]
    if vars is None:
        names = set()
        for p in polys:
            names.update(p.used_vars())
        vars = sort_vars(names)
    vars = tuple(vars)
    raw = [p.with_vars(vars).terms for p in polys if p]
    if not vars:
        nonzero = [p for p in raw if p]
        basis = [MultiPoly((), {(): mpq(1)}, _trusted=True)] if nonzero else []
        return GroebnerBasis(basis, vars, order)
    out = buchberger_raw(raw, order, budget, selection)
    return GroebnerBasis([MultiPoly(vars, p, _trusted=True) for p in out], vars, order)


def _axpy(v: dict, c, w: dict) -> dict:
    """v - c*w for sparse vectors."""
    out = dict(v)
    for e, x in w.items():
        y = out.get(e)
        z = -c * x if y is None else y - c * x
        if z:
            out[e] = z
        else:
            out.pop(e, None)
    return out


def fglm(gb: GroebnerBasis, order: str = "lex", budget: int | None = None) -> GroebnerBasis:
    """Change of ordering for a zero-dimensional ideal by linear algebra on normal forms."""
    if gb.order == order:
        return gb
    if gb.is_unit():
        return GroebnerBasis(gb.polys, gb.vars, order)
    if dimension(gb) != 0:
        raise ValueError("fglm needs a zero-dimensional ideal")
    vars = gb.vars
    nv = len(vars)
    skey = order_key(gb.order, nv)
    tkey = order_key(order, nv)
    basis = []
    for g in gb.polys:
        lm = max(g.terms, key=skey)
        basis.append((lm, [(e, c) for e, c in g.terms.items() if e != lm]))
    red = _Reducer(gb.order, default_budget() if budget is None else budget)
    echelon = []  # (pivot, normal-form vector, combination of monomials), pivots eliminated in order
    new_lms: list[tuple] = []
    out: list[dict] = []
    cand = {(0,) * nv}
    done = set()
    while cand:
        m = min(cand, key=tkey)
        cand.discard(m)
        if m in done or any(_divides(l, m) for l in new_lms):
            continue
        done.add(m)
        v = red.reduce({m: mpq(1)}, basis)
        combo = {m: mpq(1)}
        for piv, ev, ec in echelon:
            c = v.get(piv)
            if c:
                v = _axpy(v, c, ev)
                combo = _axpy(combo, c, ec)
        if not v:
            out.append(combo)
            new_lms.append(m)
            continue
        piv = max(v, key=skey)
        inv = 1 / v[piv]
        echelon.append((piv, {e: c * inv for e, c in v.items()}, {e: c * inv for e, c in combo.items()}))
        for i in range(nv):
            cand.add(m[:i] + (m[i] + 1,) + m[i + 1:])
    out.sort(key=lambda p: tkey(max(p, key=tkey)), reverse=True)
    return GroebnerBasis([MultiPoly(vars, p, _trusted=True) for p in out], vars, order)


def maximal_independent_set(gb: GroebnerBasis) -> tuple[str, ...]:
    """Largest set of variables no leading monomial lives in (prefers low-ranked names)."""
    if gb.is_unit():
        return ()
    lms = gb.leading_monomials()
    supports = [frozenset(i for i, x in enumerate(m) if x) for m in lms]
    n = len(gb.vars)
    idx = list(range(n))
    for size in range(n, -1, -1):
        for combo in combinations(reversed(idx), size):
            s = set(combo)
            if all(not sup <= s for sup in supports):
                return tuple(gb.vars[i] for i in sorted(combo))
    return ()


def dimension(gb: GroebnerBasis) -> int:
    """Krull dimension from the staircase; -1 for the unit ideal."""
    if gb.is_unit():
        return -1
    return len(maximal_independent_set(gb))
