import random

import pytest

from ruled_equiv import (AffineMap, apply_affine, classify_isometry, involutions, isometries,
                         kind_tally, norm_conditions, similarities, symmetries, verify)
from ruled_equiv.algebra import MultiPoly, linalg, mpq
from ruled_equiv.algebra.scalars import Surd
from strategies import random_surface

SYM = ("alpha", "beta", "gamma", "delta")


def _check_norm_shape(conds, n):
    assert len(conds) == 2 * n + 1
    for c in conds:
        if not c:
            continue
        c = c.compact()
        parts = c.coefficients_in("k") if "k" in c.vars else {0: c}
        assert set(parts) <= {0, 2}
        assert parts.get(0, MultiPoly.const(0)).is_constant()
        if 2 in parts:
            quad = parts[2]
            assert set(quad.used_vars()) <= set(SYM)
            assert quad.is_homogeneous() and quad.total_degree() == 2 * n


@pytest.mark.parametrize("seed", range(6))
def test_norm_conditions_shape(seed):
    rng = random.Random(seed)
    n = 2 + seed % 4
    S = random_surface(rng, n)
    _check_norm_shape(norm_conditions(S, S), n)


def test_norm_conditions_example(surf):
    S = surf("example1_S1")
    conds = norm_conditions(S, S)
    assert len(conds) == 11
    _check_norm_shape(conds, 5)


ROT_Y = [[Surd(0, mpq(1, 2), 3), 0, mpq(1, 2)], [0, 1, 0], [mpq(-1, 2), 0, Surd(0, mpq(1, 2), 3)]]


@pytest.mark.parametrize("A,b,tag", [
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [0, 0, 0], "Identity"),
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [1, 0, 0], "Translation"),
    ([[-1, 0, 0], [0, -1, 0], [0, 0, 1]], [0, 0, 0], "AxialSymmetry"),
    ([[1, 0, 0], [0, 1, 0], [0, 0, -1]], [0, 0, 2], "Reflection"),
    ([[-1, 0, 0], [0, -1, 0], [0, 0, -1]], [2, 0, 0], "CentralSymmetry"),
    ([[0, -1, 0], [1, 0, 0], [0, 0, 1]], [0, 0, 0], "Rotation"),
    ([[0, -1, 0], [1, 0, 0], [0, 0, -1]], [0, 0, 0], "RotationReflection"),
    ([[1, 0, 0], [0, 1, 0], [0, 0, -1]], [1, 0, 0], "TranslationComposite"),
    (ROT_Y, [0, 0, 0], "Rotation"),
])
def test_classify_isometry(A, b, tag):
    assert classify_isometry(AffineMap(A, b)).tag == tag


def test_classify_rotation_axis_and_cos():
    k = classify_isometry(AffineMap(ROT_Y, [0, 0, 0]))
    assert k.axis == (0, 1, 0) and k.cos == Surd(0, mpq(1, 2), 3)
    k = classify_isometry(AffineMap([[1, 0, 0], [0, 1, 0], [0, 0, -1]], [0, 0, 2]))
    assert k.axis == (0, 0, 1) and k.point[2] == 1


def test_classify_rejects_non_isometry():
    with pytest.raises(ValueError):
        classify_isometry(AffineMap([[2, 0, 0], [0, 1, 0], [0, 0, 1]]))


def test_symmetries_are_orthogonal(surf):
    S = surf("table3_x5")
    res = symmetries(S)
    assert res.count == 16
    for m in res.members:
        assert m.f.is_orthogonal()
        assert verify(m.f, m.phi, S, S)


@pytest.mark.parametrize("name,count", [("table3_x1", 5), ("table3_x5", 11), ("table3_x7", 3),
                                        ("table3_x10", 5)])
def test_involutions(surf, name, count):
    res = involutions(surf(name))
    assert res.count == count
    for m in res.members:
        f = m.f
        ff = f.compose(f)
        assert ff.matrix == linalg.identity(3) and not any(ff.b)
        assert not f.is_identity()


def test_involutions_are_the_order_two_symmetries(surf):
    S = surf("table3_x1")
    from_sym = [m.f for m in symmetries(S, include_identity=False).members
                if m.f.compose(m.f).is_identity()]
    inv = [m.f for m in involutions(S).members]
    key = lambda f: (str(f.A), str(f.b))
    assert sorted(map(key, from_sym)) == sorted(map(key, inv))


def test_kind_tally(surf):
    tally = kind_tally(symmetries(surf("example1_S1")).members)
    assert dict(tally) == {"AxialSymmetry": 1}


def test_similarity_ratio(surf):
    S = surf("example1_S1")
    f = AffineMap([[0, -2, 0], [2, 0, 0], [0, 0, 2]], [1, 1, 1])
    res = similarities(S, apply_affine(S, f))
    assert res.count >= 1
    assert all(m.lam == 2 for m in res.members)
    assert any(m.f.A == f.A and m.f.b == f.b for m in res.members)
    assert isometries(S, apply_affine(S, f)).count == 0
