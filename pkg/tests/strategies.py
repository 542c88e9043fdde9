"""Random exact test data: surfaces in standard form and nonsingular affine maps."""

from __future__ import annotations

import random

from ruled_equiv.algebra import linalg
from ruled_equiv.algebra.scalars import mpq
from ruled_equiv.algebra.unipoly import RatFunc, UniPoly
from ruled_equiv.maps import AffineMap
from ruled_equiv.surface import RuledSurface, classify, normalize


def _poly(rng: random.Random, deg: int, lo: int = -3, hi: int = 3, monic_top: bool = True) -> UniPoly:
    c = [mpq(rng.randint(lo, hi)) for _ in range(deg + 1)]
    if monic_top:
        while not c[-1]:
            c[-1] = mpq(rng.randint(lo, hi))
    return UniPoly(c)


def random_surface(rng: random.Random, n: int, rational_p: bool = False,
                   rank: int = 3) -> RuledSurface:
    """A normalized, non-conical, non-cylindrical surface with direction degree n and the given rank."""
    while True:
        q = [_poly(rng, n) for _ in range(3)]
        # keep the top degree on one component only half the time
        for i in range(3):
            if rng.random() < 0.3:
                q[i] = _poly(rng, rng.randint(0, n))
        if rank == 2:
            # directions in a plane through the origin
            a, b = rng.randint(-2, 2), rng.randint(-2, 2)
            q[2] = q[0].scale(mpq(a)) + q[1].scale(mpq(b))
        if max(f.degree for f in q) != n:
            continue
        p = []
        for _ in range(3):
            num = _poly(rng, rng.randint(1, n + 2), monic_top=False)
            if rational_p and rng.random() < 0.4:
                den = UniPoly([mpq(rng.randint(1, 3)), mpq(0), mpq(1)])  # no real roots
                p.append(RatFunc(num, den))
            else:
                p.append(RatFunc.from_poly(num))
        try:
            S = normalize(RuledSurface(p, q))
        except Exception:
            continue
        if S.n != n:
            continue
        c = classify(S)
        if c.tag in ("general", "planar-directions") and c.rank == rank:
            return S


def random_affine(rng: random.Random, lo: int = -3, hi: int = 3) -> AffineMap:
    while True:
        A = [[mpq(rng.randint(lo, hi), rng.choice((1, 1, 2))) for _ in range(3)] for _ in range(3)]
        if linalg.det(A):
            b = [mpq(rng.randint(lo, hi)) for _ in range(3)]
            return AffineMap(A, b)
