"""Polynomial kernel: univariate arithmetic, Groebner bases (sympy as oracle), roots, solving."""

import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ruled_equiv.algebra import (AlgNum, BudgetExceeded, MultiPoly, NumberField, SolverError,
                                 UniPoly, buchberger, dimension, mpq, solve_system, sturm_isolate)
from ruled_equiv.algebra.groebner import fglm
from ruled_equiv.algebra.scalars import Surd
from ruled_equiv.algebra.solve import real_roots

x, y, z = MultiPoly.gens("x", "y", "z")


def to_sympy(p: MultiPoly, gens):
    syms = sympy.symbols(gens)
    p = p.with_vars(gens)
    out = 0
    for e, c in p.terms.items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, k in zip(syms, e):
            term *= s**k
        out += term
    return sympy.expand(out)


# -- univariate ------------------------------------------------------------

def test_unipoly_divmod_and_gcd():
    f = UniPoly([-1, 0, 1])  # t^2 - 1
    g = UniPoly([1, 1])
    q, r = f.divmod(g)
    assert q == UniPoly([-1, 1]) and not r
    assert f.gcd(UniPoly([1, 2, 1])) == UniPoly([1, 1])


def test_unipoly_compose_and_derivative():
    f = UniPoly([0, 0, 1])
    assert f.compose(UniPoly([1, 1])) == UniPoly([1, 2, 1])
    assert UniPoly([5, 3, 0, 2]).derivative() == UniPoly([3, 0, 6])


def test_squarefree_part():
    f = UniPoly([1, 1]) ** 3 * UniPoly([-2, 0, 1])
    assert f.squarefree_part() == (UniPoly([1, 1]) * UniPoly([-2, 0, 1])).monic()


# -- Groebner --------------------------------------------------------------

def test_groebner_textbook_lex():
    # x^2 + y^2 + z^2 - 1, x - y, y - z  -> lex basis ending in 3 z^2 - 1
    G = buchberger([x**2 + y**2 + z**2 - 1, x - y, y - z], "lex", ("x", "y", "z"))
    assert [str(p) for p in G] == ["x-z", "y-z", "z^2-1/3"]


def test_groebner_unit_ideal():
    G = buchberger([x * y - 1, x], "grevlex", ("x", "y"))
    assert G.is_unit()
    assert dimension(G) == -1


def test_groebner_dimension():
    G = buchberger([x * y], "grevlex", ("x", "y"))
    assert dimension(G) == 1
    G = buchberger([x**2 - 2, y - x], "grevlex", ("x", "y"))
    assert dimension(G) == 0


def _random_system(rng, gens, npolys):
    polys = []
    for _ in range(npolys):
        p = MultiPoly.const(mpq(rng.randint(-3, 3)))
        for _ in range(rng.randint(2, 4)):
            mono = MultiPoly.const(mpq(rng.randint(-4, 4)))
            for g in gens:
                mono = mono * MultiPoly.gen(g) ** rng.randint(0, 2)
            p = p + mono
        if p:
            polys.append(p)
    return polys


@pytest.mark.parametrize("seed", range(12))
@pytest.mark.parametrize("order", ["grevlex", "lex"])
def test_groebner_matches_sympy(seed, order):
    rng = random.Random(seed)
    gens = ("x", "y", "z")
    polys = _random_system(rng, gens, rng.randint(2, 3))
    ours = buchberger(polys, order, gens)
    syms = sympy.symbols(gens)
    ref = sympy.groebner([to_sympy(p, gens) for p in polys], *syms, order=order)
    # sympy scales to integer content; compare monic forms
    monic = {sympy.expand(g / sympy.LC(g, *syms, order=order)) for g in ref.exprs}
    assert {to_sympy(p, gens) for p in ours} == monic


@pytest.mark.parametrize("seed", range(6))
def test_fglm_agrees_with_lex_buchberger(seed):
    rng = random.Random(100 + seed)
    gens = ("x", "y")
    while True:
        polys = _random_system(rng, gens, 2)
        G = buchberger(polys, "grevlex", gens)
        if dimension(G) == 0:
            break
    L = fglm(G, "lex")
    direct = buchberger(polys, "lex", gens)
    assert {str(p) for p in L} == {str(p) for p in direct}


def test_budget_exceeded():
    polys = [x**3 * y - z**2 + 1, y**3 * z - x + 2, z**3 * x - y**2 + 3]
    with pytest.raises(BudgetExceeded):
        buchberger(polys, "lex", ("x", "y", "z"), budget=5)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("RULED_EQUIV_BUDGET", "3")
    with pytest.raises(BudgetExceeded):
        buchberger([x**3 * y - z**2 + 1, y**3 * z - x + 2, z**3 * x - y**2 + 3], "lex",
                   ("x", "y", "z"))


def test_reduce_and_contains():
    G = buchberger([x**2 - 2, y**2 - 3], "grevlex", ("x", "y"))
    assert G.contains(x**4 - 4)
    assert not G.contains(x - y)


# -- real roots and number fields -----------------------------------------

def test_sturm_isolation_counts():
    f = UniPoly([-2, 0, 1]) * UniPoly([-1, 1]) * UniPoly([1, 0, 1])
    ivs = sturm_isolate(f)
    assert len(ivs) == 3
    for lo, hi in ivs:
        assert lo <= hi


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=5, unique=True))
@settings(max_examples=30, deadline=None)
def test_isolation_finds_integer_roots(roots):
    f = UniPoly([1])
    for r in roots:
        f = f * UniPoly([-r, 1])
    ivs = sturm_isolate(f)
    assert len(ivs) == len(roots)
    for r, (lo, hi) in zip(sorted(roots), ivs):
        assert lo <= r <= hi


def test_algnum_refine_and_sign():
    (neg, pos) = AlgNum.roots(UniPoly([-2, 0, 1]))
    assert neg.sign() == -1 and pos.sign() == 1
    assert abs(float(pos.refine_to(mpq(1, 10**12))) - 2**0.5) < 1e-9


def test_number_field_arithmetic():
    theta = [r for r in AlgNum.roots(UniPoly([-2, 0, 0, 1]))][0]  # cube root of 2
    K = NumberField(theta)
    a = K.gen()
    assert a**3 == 2
    assert (a + 1) * (a + 1).inverse() == 1
    assert (a**2).minpoly() == UniPoly([-4, 0, 0, 1])
    assert a > 1 and a < 2


def test_real_roots_fields():
    assert real_roots(UniPoly([-4, 0, 1])) == [-2, 2]
    r = real_roots(UniPoly([-3, 0, 1]), d=3)
    assert r == [Surd(0, -1, 3), Surd(0, 1, 3)]
    r = real_roots(UniPoly([-2, 0, 1]))
    assert [round(float(v), 9) for v in r] == [round(-2**0.5, 9), round(2**0.5, 9)]
    with pytest.raises(SolverError):
        real_roots(UniPoly([-2, 0, 0, 1]), d=3)


# -- systems ---------------------------------------------------------------

def test_solve_system_points():
    sol = solve_system([x**2 + y**2 - 5, x * y - 2], ("x", "y"))
    pts = {(p["x"], p["y"]) for p in sol.points}
    assert pts == {(1, 2), (2, 1), (-1, -2), (-2, -1)}


def test_solve_system_saturation():
    # x*(x-1) = 0 with x != 0 leaves x = 1 only
    sol = solve_system([x * (x - 1)], ("x",), nonzero=[x])
    assert [p["x"] for p in sol.points] == [1]


def test_solve_system_inconsistent_and_positive_dimensional():
    assert not solve_system([x - 1, x - 2], ("x",)).consistent
    sol = solve_system([x - y], ("x", "y"))
    assert sol.dimension == 1 and len(sol.free) == 1


def test_solve_needs_shape_position():
    # y^2 = x with x^2 = 2: y is a root of y^4 - 2, not expressible in Q(sqrt 2) alone
    sol = solve_system([x**2 - 2, y**2 - x], ("x", "y"))
    assert len(sol.points) == 2
    for p in sol.points:
        assert p["y"] ** 2 == p["x"]
        assert p["x"] ** 2 == 2
