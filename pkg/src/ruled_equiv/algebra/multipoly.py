"""Sparse multivariate polynomials over exact scalars.

A polynomial is a dict mapping exponent tuples to nonzero coefficients,
together with the tuple of variable names the exponents refer to.  Variable
tuples are always sorted by :func:`var_key`, which fixes the ranking used by
the lexicographic order: saturation variables first, then matrix entries,
translation, scaling, ``k`` and finally the Moebius coefficients.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import format_scalar, mpq
from .unipoly import RatFunc, UniPoly

RANKING = (
    "u", "uk", "ul",
    "A11", "A12", "A13", "A21", "A22", "A23", "A31", "A32", "A33",
    "b1", "b2", "b3",
    "lam", "k",
    "alpha", "beta", "gamma", "delta",
)
_RANK = {v: i for i, v in enumerate(RANKING)}

_LIFT = (int, Fraction)
_POLY_TYPES = (UniPoly, RatFunc)


def var_key(name: str):
    """Sort key: ranked names in ranking order, anything else after, by name."""
    r = _RANK.get(name)
    return (0, r, "") if r is not None else (1, 0, name)


def sort_vars(names) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=var_key))


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None, _trusted: bool = False):
        self.vars = tuple(vars)
        if _trusted:
            self.terms = terms
        else:
            self.terms = {}
            for e, c in (terms or {}).items():
                if isinstance(c, _LIFT):
                    c = mpq(c)
                if c:
                    self.terms[tuple(e)] = c

    # constructors -----------------------------------------------------------
    @classmethod
    def gen(cls, name: str) -> "MultiPoly":
        return cls((name,), {(1,): mpq(1)}, _trusted=True)

    @classmethod
    def gens(cls, *names: str):
        return [cls.gen(n) for n in names]

    @classmethod
    def const(cls, c, vars=()) -> "MultiPoly":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def lift(cls, x) -> "MultiPoly":
        return x if isinstance(x, MultiPoly) else cls.const(x)

    # variable bookkeeping --------------------------------------------------
    def with_vars(self, new_vars) -> "MultiPoly":
        """Re-express over ``new_vars`` (must contain every variable in use)."""
        new_vars = tuple(new_vars)
        if new_vars == self.vars:
            return self
        idx = {v: i for i, v in enumerate(new_vars)}
        used = self.used_vars()
        missing = [v for v in used if v not in idx]
        if missing:
            raise ValueError(f"variables {missing} not in target context")
        pos = [idx.get(v) for v in self.vars]
        m = len(new_vars)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * m
            for i, x in enumerate(e):
                if x:
                    ne[pos[i]] = x
            out[tuple(ne)] = c
        return MultiPoly(new_vars, out, _trusted=True)

    def used_vars(self) -> tuple[str, ...]:
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(self.vars[i])
        return sort_vars(used)

    def compact(self) -> "MultiPoly":
        return self.with_vars(self.used_vars())

    def _align(self, other: "MultiPoly"):
        if self.vars == other.vars:
            return self, other
        vs = sort_vars(self.vars + other.vars)
        return self.with_vars(vs), other.with_vars(vs)

    # queries ---------------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), mpq(0))

    def as_scalar(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.constant_term()

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: str) -> int:
        if var not in self.vars:
            return 0 if self.terms else -1
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self, vars=None) -> bool:
        """True if every term has the same total degree in ``vars``."""
        idx = [i for i, v in enumerate(self.vars) if vars is None or v in vars]
        degs = {sum(e[i] for i in idx) for e in self.terms}
        return len(degs) <= 1

    def coefficients_in(self, var: str) -> dict[int, "MultiPoly"]:
        """Split as ``sum_j c_j * var^j``; returns ``{j: c_j}``."""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(var)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            ne = e[:i] + (0,) + e[i + 1:]
            out.setdefault(e[i], {})[ne] = c
        return {j: MultiPoly(self.vars, d, _trusted=True) for j, d in out.items()}

    def divide_by_var(self, var: str) -> "MultiPoly":
        """Exact division by the variable ``var``."""
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                raise ArithmeticError(f"{self} is not divisible by {var}")
            out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c
        return MultiPoly(self.vars, out, _trusted=True)

    # arithmetic ------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, _POLY_TYPES):
            return None  # UniPoly and friends handle the mixed product
        return MultiPoly.const(other, self.vars)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._align(o)
        out = dict(a.terms)
        for e, c in b.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly(a.vars, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, _POLY_TYPES):
                return NotImplemented
            if isinstance(other, _LIFT):
                other = mpq(other)
            if not other:
                return MultiPoly(self.vars, {}, _trusted=True)
            return MultiPoly(self.vars, {e: c * other for e, c in self.terms.items()}, _trusted=True)
        a, b = self._align(other)
        out: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly(a.vars, {e: c for e, c in out.items() if c}, _trusted=True)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            other = other.as_scalar()
        inv = 1 / (mpq(other) if isinstance(other, _LIFT) else other)
        return self * inv

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(mpq(1), self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            if self.vars == other.vars:
                return self.terms == other.terms
            a, b = self._align(other)
            return a.terms == b.terms
        if isinstance(other, _POLY_TYPES):
            return NotImplemented
        if not self.terms:
            return not other
        return self.is_constant() and self.constant_term() == other

    def __hash__(self):
        p = self.compact()
        if p.is_constant():
            return hash(p.constant_term())
        return hash((p.vars, frozenset(p.terms.items())))

    # substitution ----------------------------------------------------------
    def subs(self, values: dict) -> "MultiPoly":
        """Substitute scalars or polynomials for some variables."""
        idx = [(i, values[v]) for i, v in enumerate(self.vars) if v in values]
        if not idx:
            return self
        keep = [i for i, v in enumerate(self.vars) if v not in values]
        keep_vars = tuple(self.vars[i] for i in keep)
        symbolic = any(isinstance(val, MultiPoly) for _, val in idx)
        if not symbolic:
            # pure scalar substitution: stay in dict form
            pw: dict = {}
            out: dict = {}
            for e, c in self.terms.items():
                v = c
                for i, val in idx:
                    if e[i]:
                        key = (i, e[i])
                        p = pw.get(key)
                        if p is None:
                            p = pw[key] = val ** e[i]
                        v = v * p
                if not v:
                    continue
                ne = tuple(e[i] for i in keep)
                w = out.get(ne)
                out[ne] = v if w is None else w + v
            return MultiPoly(keep_vars, {e: c for e, c in out.items() if c}, _trusted=True)
        acc = MultiPoly(keep_vars, {}, _trusted=True)
        pw = {}
        for e, c in self.terms.items():
            term = MultiPoly(keep_vars, {tuple(e[i] for i in keep): c}, _trusted=True)
            for i, val in idx:
                if e[i]:
                    key = (i, e[i])
                    p = pw.get(key)
                    if p is None:
                        p = pw[key] = val ** e[i]
                    term = term * p
            acc = acc + term
        return acc

    def evaluate(self, values: dict):
        """Full substitution; returns a scalar."""
        return self.subs(values).as_scalar()

    def linear_form(self, unknowns):
        """Coefficients ``[c_1..c_m], c_0`` when the polynomial is affine in ``unknowns``."""
        p = self.with_vars(sort_vars(self.vars + tuple(unknowns)))
        pos = [p.vars.index(u) for u in unknowns]
        coeffs = [mpq(0)] * len(unknowns)
        const = mpq(0)
        for e, c in p.terms.items():
            s = sum(e)
            if s == 0:
                const = c
            elif s == 1:
                i = e.index(1)
                if i not in pos:
                    raise ValueError(f"{self} involves {p.vars[i]} beyond {unknowns}")
                coeffs[pos.index(i)] = c
            else:
                raise ValueError(f"{self} is not affine in {unknowns}")
        return coeffs, const

    # formatting ------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        from .groebner import order_key

        key = order_key("grevlex", len(self.vars))
        parts = []
        for e in sorted(self.terms, key=key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (v if x == 1 else f"{v}^{x}") for v, x in zip(self.vars, e) if x
            )
            cs = format_scalar(c)
            if any(ch in cs[1:] for ch in "+-") or "*" in cs:
                cs = f"({cs})"
            if mono:
                body = mono if cs == "1" else ("-" + mono if cs == "-1" else f"{cs}*{mono}")
            else:
                body = cs
            if parts and not body.startswith("-"):
                body = "+" + body
            parts.append(body)
        return "".join(parts)

    def __repr__(self):
        return f"MultiPoly({self})"
