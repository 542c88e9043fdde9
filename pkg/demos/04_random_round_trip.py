"""Apply a random affine map to a random surface and recover it exactly.

Run:  python demos/04_random_round_trip.py [seed] [degree]
"""

import random
import sys
import time

from ruled_equiv import AffineMap, RuledSurface, affine_equivalences, apply_affine, verify
from ruled_equiv.algebra import UniPoly, linalg
from ruled_equiv.algebra.scalars import format_scalar


def vec(v):
    return "(" + ", ".join(format_scalar(x) for x in v) + ")"


def mat(A):
    return "[" + "; ".join(" ".join(format_scalar(x) for x in row) for row in A) + "]"


seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
n = int(sys.argv[2]) if len(sys.argv) > 2 else 3
rng = random.Random(seed)


def poly(deg):
    return UniPoly([rng.randint(-3, 3) for _ in range(deg)] + [rng.choice([-2, -1, 1, 2])])


S = RuledSurface([poly(n) for _ in range(3)], [poly(n) for _ in range(3)])
while True:
    A = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
    if linalg.det(A):
        break
f = AffineMap(A, [rng.randint(-5, 5) for _ in range(3)])
T = apply_affine(S, f)

t0 = time.perf_counter()
res = affine_equivalences(S, T)
print(f"{res.count} equivalence(s) found in {time.perf_counter() - t0:.2f}s")
for m in res.members:
    hit = "  <- the injected map" if m.f == f else ""
    print("  A =", mat(m.f.A), "b =", vec(m.f.b), "verified:", verify(m.f, m.phi, S, T), hit)
