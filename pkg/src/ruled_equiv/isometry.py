"""Isometries, similarities, symmetries and involutions, plus a classifier for rigid motions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .algebra import linalg
from .algebra.multipoly import MultiPoly
from .algebra.scalars import format_scalar, mpq
from .algebra.unipoly import UniPoly
from .engine import (SYMBOLIC_PSI, Chart, EquivalenceSet, equivalences, mobius_numerator,
                     mobius_powers)
from .maps import AffineMap, MobiusMap
from .surface import RuledSurface, normalize


def norm_conditions(S1: RuledSurface, S2: RuledSurface, psi: MobiusMap | None = None,
                    k=None) -> list[MultiPoly]:
    """The 2n+1 coefficients in t of |q1|^2 - k^2 |Q2|^2 (zeros kept)."""
    S1, S2 = normalize(S1), normalize(S2)
    n = S1.n
    psi = SYMBOLIC_PSI if psi is None else psi
    k = MultiPoly.gen("k") if k is None else k
    powers = mobius_powers(psi, n)
    Q = [mobius_numerator(q, psi, n, powers) for q in S2.q]
    diff = sum((q * q for q in S1.q), UniPoly()) - sum((x * x for x in Q), UniPoly()).scale(k * k)
    return [MultiPoly.lift(diff.coeff(l)) for l in range(2 * n + 1)]


def isometries(S1: RuledSurface, S2: RuledSurface, budget: int | None = None) -> EquivalenceSet:
    return equivalences(S1, S2, "isometry", budget=budget)


def similarities(S1: RuledSurface, S2: RuledSurface, budget: int | None = None) -> EquivalenceSet:
    """Maps A = lambda Q with Q orthogonal; each member carries lambda > 0."""
    return equivalences(S1, S2, "similarity", budget=budget)


def symmetries(S: RuledSurface, include_identity: bool = True,
               budget: int | None = None) -> EquivalenceSet:
    res = isometries(S, S, budget=budget)
    if not include_identity:
        res.members = [m for m in res.members if not m.f.is_identity()]
        if res.kind == "finite" and not res.members:
            res.kind = "none"
    return res


def involution_charts(n: int) -> list[Chart]:
    """Restricted Moebius charts: psi an involution, or psi the identity with k = -1."""
    one, zero = mpq(1), mpq(0)
    beta, delta, k = MultiPoly.gens("beta", "delta", "k")
    return [
        Chart("involution, gamma=1", ("beta", "delta"), {"alpha": -delta, "gamma": one},
              extra=(k * k * (beta + delta * delta) ** n - 1,)),
        Chart("involution, gamma=0", ("beta",), {"alpha": -one, "gamma": zero, "delta": one},
              extra=(k * k - 1,)),
        Chart("fixed rulings", (), {"alpha": one, "beta": zero, "gamma": zero, "delta": one},
              extra=(k + 1,)),
    ]


def is_involution(f: AffineMap) -> bool:
    A = f.matrix
    A2 = linalg.matmul(A, A)
    if A2 != linalg.identity(3):
        return False
    return all(not x for x in (y + bi for y, bi in zip(f.linear(f.b), f.b)))


def involutions(S: RuledSurface, budget: int | None = None) -> EquivalenceSet:
    """Nontrivial symmetries f with f o f = id."""
    S = normalize(S)
    res = equivalences(S, S, "isometry", charts=involution_charts(S.n), budget=budget)
    res.members = [m for m in res.members if is_involution(m.f) and not m.f.is_identity()]
    if res.kind == "finite" and not res.members:
        res.kind = "none"
    return res


# ---------------------------------------------------------------------------
# classification of rigid motions


@dataclass(frozen=True)
class IsometryKind:
    tag: str
    axis: tuple | None = None  # rotation axis direction, or normal of the mirror plane
    point: tuple | None = None  # a fixed point, when one exists
    cos: object = None  # cosine of the rotation angle
    part: "IsometryKind | None" = None  # linear part of a composite with a translation
    shift: tuple | None = None  # translation of a composite

    def describe(self) -> str:
        fmt = lambda v: "(" + ", ".join(format_scalar(x) for x in v) + ")"
        bits = [self.tag]
        if self.axis is not None:
            bits.append(("normal=" if self.tag == "Reflection" else "axis=") + fmt(self.axis))
        if self.cos is not None:
            bits.append(f"cos={format_scalar(self.cos)}")
        if self.point is not None:
            bits.append("fixed=" + fmt(self.point))
        if self.part is not None:
            bits.append(f"[{self.part.describe()}]")
        if self.shift is not None:
            bits.append("shift=" + fmt(self.shift))
        return " ".join(bits)


def _primitive(v):
    """Scale a direction so its first nonzero entry is 1."""
    lead = next(x for x in v if x)
    return tuple(x / lead for x in v)


def _sub_identity(A, s):
    return [[A[i][j] - (s if i == j else 0) for j in range(3)] for i in range(3)]


def classify_isometry(f: AffineMap) -> IsometryKind:
    if not f.is_orthogonal():
        raise ValueError("not an isometry: A^T A != I")
    A, b = f.matrix, list(f.b)
    d = f.det()
    tr = A[0][0] + A[1][1] + A[2][2]
    AmI = _sub_identity(A, 1)
    fixed = linalg.solve(AmI, [-x for x in b])
    point = tuple(fixed[0]) if fixed is not None else None
    I3 = linalg.identity(3)
    if d == 1:
        if A == I3:
            return IsometryKind("Identity") if not any(b) else IsometryKind("Translation", shift=tuple(b))
        axis = _primitive(linalg.nullspace(AmI)[0])
        cos = (tr - 1) / 2
        if point is not None:
            return IsometryKind("AxialSymmetry" if cos == -1 else "Rotation", axis, point, cos)
        rot = IsometryKind("AxialSymmetry" if cos == -1 else "Rotation", axis, None, cos)
        return IsometryKind("TranslationComposite", part=rot, shift=_along(b, axis))
    neg = [[-x for x in row] for row in I3]
    if A == neg:
        return IsometryKind("CentralSymmetry", point=point)
    if tr == 1:
        normal = _primitive(linalg.nullspace(_sub_identity(A, -1))[0])
        if point is not None:
            return IsometryKind("Reflection", normal, point)
        part = IsometryKind("Reflection", normal)
        # glide: the shift is the component of b inside the mirror plane
        return IsometryKind("TranslationComposite", part=part, shift=_in_plane(b, normal))
    axis = _primitive(linalg.nullspace(_sub_identity(A, -1))[0])
    return IsometryKind("RotationReflection", axis, point, (tr + 1) / 2)


def _along(b, axis):
    w = linalg.dot(list(axis), list(axis))
    s = linalg.dot(b, list(axis)) / w
    return tuple(s * x for x in axis)


def _in_plane(b, normal):
    a = _along(b, normal)
    return tuple(x - y for x, y in zip(b, a))


# Table labels used in reports
KIND_LABELS = {
    "AxialSymmetry": "axial",
    "Reflection": "reflection",
    "Rotation": "rotational",
    "RotationReflection": "rotational+reflection",
    "CentralSymmetry": "central",
    "Translation": "translation",
    "TranslationComposite": "composite",
    "Identity": "identity",
}


def kind_tally(members, include_identity: bool = False) -> Counter:
    tally = Counter()
    for m in members:
        tag = classify_isometry(m.f).tag
        if tag == "Identity" and not include_identity:
            continue
        tally[tag] += 1
    return tally
