import random

import pytest

from ruled_equiv import (AffineMap, MobiusMap, Reparam, affine_equivalences, apply_affine,
                         mobius_numerator, verify)
from ruled_equiv.algebra import MultiPoly, RatFunc, UniPoly, linalg, mpq
from ruled_equiv.engine import DegreeMismatch, assemble_L, reduce_L
from ruled_equiv.surface import RuledSurface, direction_profile
from strategies import random_affine, random_surface


def test_mobius_numerator_inversion():
    # q(1/t) * t^2 for q = t is t
    inv = MobiusMap(mpq(0), mpq(1), mpq(1), mpq(0))
    assert mobius_numerator(UniPoly([0, 1]), inv, 2) == UniPoly([0, 1])
    # q(t+1) for q = t^2
    shift = MobiusMap(mpq(1), mpq(1), mpq(0), mpq(1))
    assert mobius_numerator(UniPoly([0, 0, 1]), shift, 2) == UniPoly([1, 2, 1])


def test_mobius_numerator_symbolic():
    a, b, g, d = MultiPoly.gens("alpha", "beta", "gamma", "delta")
    out = mobius_numerator(UniPoly([1, 1]), MobiusMap(a, b, g, d), 1)
    # (alpha t + beta) + (gamma t + delta)
    assert out.coeff(1) == a + g and out.coeff(0) == b + d


@pytest.mark.parametrize("seed", range(10))
def test_reduce_L_counts(seed):
    rng = random.Random(seed)
    n = 2 + seed % 4
    r = 2 + seed % 2
    S = random_surface(rng, n, rank=r)
    L = assemble_L(S, S)
    assert linalg.rank(L.matrix) == 3 * r
    red = reduce_L(L)
    assert red.rank == r == direction_profile(S).rank
    assert len(red.conditions) == (3 * n - 6 if r == 3 else 3 * n - 3)


def test_degree_mismatch(surf):
    res = affine_equivalences(surf("example1_S1"), surf("table1_x3"))
    assert res.kind == "none" and "degrees differ" in res.reason
    with pytest.raises(DegreeMismatch):
        assemble_L(surf("example1_S1"), surf("table1_x3"))


def test_verify_identity_and_rejects_wrong(surf):
    S = surf("example1_S1")
    ident = Reparam(MobiusMap.identity(), mpq(1), RatFunc(UniPoly()), S.n)
    assert verify(AffineMap.identity(), ident, S, S)
    assert not verify(AffineMap([[2, 0, 0], [0, 1, 0], [0, 0, 1]]), ident, S, S)


def test_example1_maps_verify(surf):
    S1, S2 = surf("example1_S1"), surf("example1_S2")
    res = affine_equivalences(S1, S2)
    assert res.kind == "finite" and res.count == 2
    for m in res.members:
        assert verify(m.f, m.phi, S1, S2)


@pytest.mark.parametrize("seed", range(6))
def test_round_trip_small(seed):
    rng = random.Random(1000 + seed)
    S = random_surface(rng, 3 + seed % 3)
    f = random_affine(rng)
    res = affine_equivalences(S, apply_affine(S, f))
    assert any(m.f.A == f.A and m.f.b == f.b for m in res.members)


def test_no_equivalence(surf):
    res = affine_equivalences(surf("table1_x9"), surf("table1_y9"))
    assert res.kind == "none" and res.count == 0


def test_infinite_family_samples_verify(surf):
    S1, S2 = surf("table1_x2"), surf("table1_y2")
    res = affine_equivalences(S1, S2)
    assert res.kind == "infinite"
    for fam in res.families:
        assert fam.samples
        for m in fam.samples:
            assert verify(m.f, m.phi, S1, S2)


def test_rational_base_curve():
    t = UniPoly([0, 1])
    den = UniPoly([1, 0, 1])
    S = RuledSurface([RatFunc(t, den), RatFunc(t * t, den), t],
                     [UniPoly([1, 0, 1]), UniPoly([0, 1, 0, 1]), UniPoly([1, 1])])
    f = AffineMap([[1, 1, 0], [0, 2, 0], [1, 0, -1]], [1, 2, 3])
    res = affine_equivalences(S, apply_affine(S, f))
    assert any(m.f.A == f.A and m.f.b == f.b for m in res.members)


@pytest.mark.parametrize("seed", [1, 3, 5, 7])
def test_round_trip_planar_directions_rational(seed):
    # quadratic directions in a plane with a rational base curve
    rng = random.Random(seed)
    S = random_surface(rng, 2, rational_p=True, rank=2)
    f = random_affine(rng)
    T = apply_affine(S, f)
    res = affine_equivalences(S, T)
    assert any(m.f.A == f.A and m.f.b == f.b for m in res.members)
    for m in res.members:
        assert verify(m.f, m.phi, S, T)
