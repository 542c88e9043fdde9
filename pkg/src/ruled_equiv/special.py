"""Conical and cylindrical surfaces."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import linalg
from .algebra.unipoly import RatFunc, UniPoly
from .surface import RuledSurface, classify, normalize


class NotConical(ValueError):
    pass


class NotCylindrical(ValueError):
    pass


def conical_equivalences(S1: RuledSurface, S2: RuledSurface, mode: str = "affine", charts=None,
                         budget: int | None = None):
    """Equivalences between cones; every one maps vertex to vertex.

    Only the direction equation is solved and b = v2 - A v1.  In affine mode
    A is determined up to a common scale with k, so the result is an infinite
    family whose representative has first nonzero entry of A equal to 1.
    """
    from .engine import Problem, solve_problem

    S1 = S1 if S1.normalized else normalize(S1)
    S2 = S2 if S2.normalized else normalize(S2)
    c1, c2 = classify(S1), classify(S2)
    if c1.tag != "conical" or c2.tag != "conical":
        raise NotConical("both surfaces must be conical")
    prob = Problem(S1, S2, mode, vertices=(c1.vertex, c2.vertex), budget=budget)
    result = solve_problem(prob, charts)
    if mode == "affine":
        for fam in result.families:
            fam.representative = _scale_representative(prob, fam.samples[0])
    return result


def _scale_representative(prob, member):
    A = member.f.matrix
    first = next(x for row in A for x in row if x)
    inv = 1 / first
    A2 = [[x * inv for x in row] for row in A]
    v1, v2 = prob.vertices
    b2 = [v2[i] - sum(A2[i][j] * v1[j] for j in range(3)) for i in range(3)]
    return prob.make_member(member.phi.psi, member.phi.k * inv, A2, b2)


@dataclass(frozen=True)
class CylindricalReduction:
    """Cross-section of a cylinder by the plane through the origin normal to the rulings."""

    direction: tuple
    section_curve: tuple  # three RatFunc in t

    @property
    def plane_normal(self):
        return self.direction

    def point(self, t):
        return [f(t) for f in self.section_curve]


def cylindrical_reduce(S: RuledSurface) -> CylindricalReduction:
    S = S if S.normalized else normalize(S)
    if classify(S).tag != "cylindrical":
        raise NotCylindrical("the rulings are not parallel")
    w = [q.coeff(0) for q in S.q]
    ww = linalg.dot(w, w)
    pw = sum((f * wi for f, wi in zip(S.p, w) if wi), RatFunc(UniPoly()))
    s_star = pw * (-1 / ww)
    curve = tuple(f + s_star * wi for f, wi in zip(S.p, w))
    return CylindricalReduction(tuple(w), curve)


def section_parameter(S: RuledSurface, red: CylindricalReduction) -> RatFunc:
    """s(t) with x(t, s(t)) on the section plane."""
    w = red.direction
    pw = sum((f * wi for f, wi in zip(S.p, w) if wi), RatFunc(UniPoly()))
    return pw * (-1 / linalg.dot(list(w), list(w)))


__all__ = ["CylindricalReduction", "NotConical", "NotCylindrical", "conical_equivalences",
           "cylindrical_reduce", "section_parameter"]
