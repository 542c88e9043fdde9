"""Symmetry groups of a few surfaces, with each symmetry named geometrically.

Run:  python demos/02_isometry_classes.py
"""

from ruled_equiv import classify_isometry, involutions, kind_tally, symmetries
from ruled_equiv.cli import load_surface

for name in ("table3_x1", "table3_x5", "table3_x7"):
    S = load_surface(name)
    sym = symmetries(S)
    inv = involutions(S)
    print(f"{name}: {sym.count} symmetries, {inv.count} involutions")
    for m in sym.members:
        print("   ", classify_isometry(m.f).describe())
    print("    tally:", dict(kind_tally(sym.members)))
    print()
