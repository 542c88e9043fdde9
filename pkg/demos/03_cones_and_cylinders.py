"""Surfaces whose rulings meet in a point or are all parallel.

Cones admit every scaling about the vertex, so their affine self-maps form a
continuum; only the isometries are a finite set.  Cylinders are reported as a
reduction to a plane curve instead of being solved.

Run:  python demos/03_cones_and_cylinders.py
"""

from ruled_equiv import affine_equivalences, classify, isometries, normalize
from ruled_equiv.cli import load_surface
from ruled_equiv.algebra.scalars import format_scalar
from ruled_equiv.special import section_parameter


def vec(v):
    return "(" + ", ".join(format_scalar(x) for x in v) + ")"


def mat(A):
    return "[" + "; ".join(" ".join(format_scalar(x) for x in row) for row in A) + "]"


cone = load_surface("cone_x5")
print("cone:", classify(cone))
print("  isometries onto itself:", isometries(cone, cone).count)
aff = affine_equivalences(cone, cone)
print("  affine self-maps:", aff.kind)
rep = aff.families[0].representative
print("  representative A =", mat(rep.f.A), "(any non-zero multiple also works)")

cyl = normalize(load_surface("cylinder"))
img = normalize(load_surface("cylinder_image"))
res = affine_equivalences(cyl, img)
print("\ncylinder:", res.kind)
for S, red in zip((cyl, img), res.reductions):
    s_of_t = section_parameter(S, red)
    print("  rulings along", vec(red.direction), "; cross-section at t = 1:", vec(red.point(1)),
          "reached at s =", format_scalar(s_of_t(1)))
