"""Walk through the symmetry and equivalence computation for a quintic ruled surface.

Run:  python demos/01_symmetry_walkthrough.py
"""

from ruled_equiv import affine_equivalences, classify, reparam_candidates, symmetries, verify
from ruled_equiv.cli import load_surface
from ruled_equiv.algebra.scalars import format_scalar


def vec(v):
    return "(" + ", ".join(format_scalar(x) for x in v) + ")"


def mat(A):
    return "[" + "; ".join(" ".join(format_scalar(x) for x in row) for row in A) + "]"


S1 = load_surface("example1_S1")
S2 = load_surface("example1_S2")

print("S1:", classify(S1))

# The first stage only looks for reparametrizations t -> psi(t) and a scale k on s.
# For a metric problem these candidates are already few.
print("\nreparametrization candidates for S1 -> S1 (isometry stage):")
for pt in reparam_candidates(S1, S1, metric=True):
    print("  psi =", vec(pt[v] for v in ("alpha", "beta", "gamma", "delta")), " k =", format_scalar(pt["k"]))

print("\nnon-trivial symmetries of S1:")
for m in symmetries(S1, include_identity=False).members:
    print("  A =", mat(m.f.A), " b =", vec(m.f.b))
    print("  phi: psi =", vec(m.phi.psi.as_tuple()), ", s ->", format_scalar(m.phi.k), "* s +", m.phi.c.format())

print("\naffine maps carrying S1 onto S2:")
res = affine_equivalences(S1, S2)
for m in res.members:
    print("  A =", mat(m.f.A), " b =", vec(m.f.b), " verified:", verify(m.f, m.phi, S1, S2))

# Composing one equivalence with the symmetry gives the other one.
sym = symmetries(S1, include_identity=False).members[0].f
f1, f2 = (m.f for m in res.members)
print("\nf1 o sym == f2:", f1.compose(sym) == f2 or f2.compose(sym) == f1)
