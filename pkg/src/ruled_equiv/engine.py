"""Affine equivalences between ruled surfaces.

Pipeline for surfaces x1 = p1 + s q1 and x2 = p2 + s q2 of direction degree n:

1. The direction equation A q1 = k Q2 (Q2 the homogenized composition of q2
   with a Moebius map psi) is linear in the entries of A.  Gauss-Jordan on the
   coefficient rows gives A in terms of (k, psi) plus consistency conditions
   on psi alone.
2. The conditions are solved on two charts of the Moebius group
   (gamma = 1, and gamma = 0 with delta = 1).
3. For each finite psi the remaining unknowns (k, free entries of A, b) enter
   linearly once c(t) is eliminated by a cross product, so they come from an
   exact linear solve.  When the conditions leave psi undetermined, the full
   polynomial system in all unknowns is solved instead.
4. Every candidate is checked exactly against f(x1(t, s)) = x2(phi(t, s)).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .algebra import linalg
from .algebra.groebner import GroebnerBasis
from .algebra.multipoly import MultiPoly
from .algebra.numberfield import AlgElem
from .algebra.scalars import FieldError, Surd, format_scalar, mpq
from .algebra.solve import SolverError, real_roots, solve_system
from .algebra.unipoly import RatFunc, UniPoly, common_denominator
from .maps import AffineMap, MobiusMap, Reparam
from .surface import RuledSurface, classify, direction_matrix, normalize

MODES = ("affine", "isometry", "similarity")
B_VARS = ("b1", "b2", "b3")


class DegreeMismatch(ValueError):
    """The direction degrees differ, so no affine equivalence exists."""


class CylindricalCase(ValueError):
    """The direction vectors are all parallel; the linear reduction does not apply."""


# ---------------------------------------------------------------------------
# Moebius compositions


def mobius_powers(psi: MobiusMap, n: int) -> list[UniPoly]:
    """[(alpha t + beta)^j (gamma t + delta)^(n - j) for j = 0..n]."""
    num, den = psi.numerator(), psi.denominator()
    one = UniPoly((mpq(1),))
    npow, dpow = [one], [one]
    for _ in range(n):
        npow.append(npow[-1] * num)
        dpow.append(dpow[-1] * den)
    return [npow[j] * dpow[n - j] for j in range(n + 1)]


def mobius_numerator(q: UniPoly, psi: MobiusMap, n: int, powers=None) -> UniPoly:
    """(gamma t + delta)^n q(psi(t)) as a polynomial of degree <= n."""
    if q.degree > n:
        raise ValueError(f"degree {q.degree} exceeds {n}")
    if not psi.det:
        raise ValueError("singular Moebius transformation")
    if powers is None:
        powers = mobius_powers(psi, n)
    acc = UniPoly()
    for j, c in enumerate(q.c):
        if c:
            acc = acc + powers[j].scale(c)
    return acc


SYMBOLIC_PSI = MobiusMap(*MultiPoly.gens("alpha", "beta", "gamma", "delta"))


# ---------------------------------------------------------------------------
# the linear system on the entries of A


@dataclass
class LinearSystemL:
    matrix: list  # 3(n+1) x 9, block i acts on row i of A
    rhs: list  # 3(n+1) MultiPoly in k and the Moebius coefficients
    V: list  # coefficient rows of q1
    n: int
    psi: MobiusMap


@dataclass
class ReducedL:
    A: list  # 3x3 MultiPoly
    conditions: list  # one per (block, left null vector), k factored out
    free: tuple  # names of the entries of A left free
    rank: int


def assemble_L(S1: RuledSurface, S2: RuledSurface, psi: MobiusMap | None = None) -> LinearSystemL:
    n = S1.n
    if S2.n != n:
        raise DegreeMismatch(f"direction degrees {n} and {S2.n} differ")
    psi = SYMBOLIC_PSI if psi is None else psi
    V = direction_matrix(S1)
    powers = mobius_powers(psi, n)
    k = MultiPoly.gen("k")
    rhs, matrix = [], []
    for i in range(3):
        Q = mobius_numerator(S2.q[i], psi, n, powers)
        for l in range(n + 1):
            rhs.append(k * Q.coeff(l))
            row = [mpq(0)] * 9
            row[3 * i:3 * i + 3] = V[l]
            matrix.append(row)
    return LinearSystemL(matrix, rhs, V, n, psi)


def reduce_L(L: LinearSystemL, r: int | None = None) -> ReducedL:
    """Express A through the right-hand side and collect the solvability conditions."""
    V, n = L.V, L.n
    if r is None:
        r = linalg.rank(V)
    if r == 1:
        raise CylindricalCase("rank 1 direction matrix")
    _, rows = linalg.rref(linalg.transpose(V))
    R = rows[:r]
    VR = [V[l] for l in R]
    _, C = linalg.rref(VR)
    F = [j for j in range(3) if j not in C]
    inv = linalg.inverse([[VR[a][c] for c in C] for a in range(r)])
    W = linalg.left_nullspace(V)
    conditions = []
    A = [[None] * 3 for _ in range(3)]
    free_names = []
    for i in range(3):
        block = L.rhs[i * (n + 1):(i + 1) * (n + 1)]
        for w in W:
            cond = sum((w[l] * block[l] for l in range(n + 1) if w[l]), MultiPoly.const(mpq(0)))
            conditions.append(cond.divide_by_var("k") if cond else cond)
        free = {}
        for f in F:
            name = f"A{i + 1}{f + 1}"
            free[f] = MultiPoly.gen(name)
            free_names.append(name)
            A[i][f] = free[f]
        resid = [block[R[a]] - sum((VR[a][f] * free[f] for f in F), MultiPoly.const(mpq(0)))
                 for a in range(r)]
        for ci, c in enumerate(C):
            A[i][c] = sum((inv[ci][a] * resid[a] for a in range(r) if inv[ci][a]),
                          MultiPoly.const(mpq(0)))
    return ReducedL(A, conditions, tuple(free_names), r)


# ---------------------------------------------------------------------------
# result types


@dataclass
class Equivalence:
    f: AffineMap
    phi: Reparam
    lam: object = None  # similarity ratio, when requested

    def format(self) -> str:
        s = f"{self.f.format()} {self.phi.format()}"
        if self.lam is not None:
            s += f" lambda={format_scalar(self.lam)}"
        return s


@dataclass
class InfiniteFamily:
    """A positive-dimensional solution set, certified by verified samples."""

    basis: GroebnerBasis | None
    free: tuple
    samples: list
    parametrization: dict | None = None  # unknown -> MultiPoly in the free names
    representative: Equivalence | None = None


@dataclass
class EquivalenceSet:
    kind: str  # "none", "finite", "infinite", "not_supported"
    members: list = field(default_factory=list)
    families: list = field(default_factory=list)
    reductions: tuple = ()
    reason: str = ""

    @property
    def count(self):
        if self.kind == "infinite":
            return math.inf
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def family(self) -> InfiniteFamily | None:
        return self.families[0] if self.families else None

    @classmethod
    def none(cls, reason=""):
        return cls("none", reason=reason)

    @classmethod
    def from_parts(cls, members, families):
        if families:
            return cls("infinite", members, families)
        if members:
            return cls("finite", members)
        return cls("none", reason="no candidate passed verification")


# ---------------------------------------------------------------------------
# exact verification


def _compose_p(S: RuledSurface, psi: MobiusMap):
    """p(psi(t)) componentwise as rational functions."""
    P, D = common_denominator(list(S.p))
    m = max([f.degree for f in P] + [D.degree, 0])
    powers = mobius_powers(psi, m)
    Dt = mobius_numerator(D, psi, m, powers)
    return [RatFunc(mobius_numerator(f, psi, m, powers), Dt) for f in P]


def verify(f: AffineMap, phi: Reparam, S1: RuledSurface, S2: RuledSurface) -> bool:
    """Exact test of f(x1(t, s)) == x2(phi(t, s)) on normalized parametrizations."""
    if not S1.normalized:
        S1 = normalize(S1)
    if not S2.normalized:
        S2 = normalize(S2)
    psi, n = phi.psi, phi.n
    try:
        if not psi.det or not phi.k or not f.det():
            return False
        if S1.n != n or S2.n != n:
            return False
        powers = mobius_powers(psi, n)
        Q = [mobius_numerator(q, psi, n, powers) for q in S2.q]
        A = f.matrix
        for i in range(3):
            lhs = sum((S1.q[j].scale(A[i][j]) for j in range(3)), UniPoly())
            if lhs != Q[i].scale(phi.k):
                return False
        p2 = _compose_p(S2, psi)
        den_n = psi.denominator() ** n
        for i in range(3):
            lhs = sum((S1.p[j] * A[i][j] for j in range(3)), RatFunc(UniPoly())) + f.b[i]
            rhs = p2[i] + phi.c * RatFunc(Q[i], den_n)
            if lhs != rhs:
                return False
        return True
    except (ZeroDivisionError, FieldError):
        return False


# ---------------------------------------------------------------------------
# charts of the Moebius group


@dataclass
class Chart:
    """Normalization of psi: substitutions for alpha..delta in terms of ``vars``."""

    name: str
    vars: tuple
    subs: dict
    extra: tuple = ()  # further equations in vars and k

    def psi(self, point=None) -> MobiusMap:
        vals = []
        for v in ("alpha", "beta", "gamma", "delta"):
            x = self.subs.get(v, MultiPoly.gen(v))
            if isinstance(x, MultiPoly):
                x = x.subs(point).as_scalar() if point is not None else x
            vals.append(x)
        return MobiusMap(*vals)

    @property
    def det(self) -> MultiPoly:
        return MultiPoly.lift(self.psi().det)

    def apply(self, p: MultiPoly) -> MultiPoly:
        return p.subs(self.subs)


def standard_charts() -> list[Chart]:
    one, zero = mpq(1), mpq(0)
    return [
        Chart("gamma=1", ("alpha", "beta", "delta"), {"gamma": one}),
        Chart("gamma=0,delta=1", ("alpha", "beta"), {"gamma": zero, "delta": one}),
    ]


# ---------------------------------------------------------------------------
# per-problem data


class Problem:
    """Everything about a surface pair that does not depend on psi."""

    def __init__(self, S1: RuledSurface, S2: RuledSurface, mode: str = "affine",
                 vertices=None, budget: int | None = None):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        self.S1 = S1 if S1.normalized else normalize(S1)
        self.S2 = S2 if S2.normalized else normalize(S2)
        self.mode = mode
        self.budget = budget
        self.vertices = vertices
        self.n = self.S1.n
        self.L = assemble_L(self.S1, self.S2)
        self.red = reduce_L(self.L)
        self.r = self.red.rank
        self.P1, self.D1 = common_denominator(list(self.S1.p))
        self.P2, self.D2 = common_denominator(list(self.S2.p))
        self.m = max([f.degree for f in self.P2] + [self.D2.degree, 0])
        deg1 = max([f.degree for f in self.P1] + [self.D1.degree, 0])
        # degree bound of every cross-product component in t
        self.sample_bound = deg1 + self.m + self.n
        self.q1_norm = sum((q * q for q in self.S1.q), UniPoly())
        self.d = self.S1.field_d() or self.S2.field_d()

    # unknowns besides psi, in stage-2 order
    def linear_unknowns(self, k_known: bool) -> list[str]:
        out = [] if k_known else ["k"]
        out += list(self.red.free)
        if self.vertices is None:
            out += list(B_VARS)
        return out

    def translation(self, A):
        """b as expressions: unknowns in general, v2 - A v1 for cones."""
        if self.vertices is None:
            return MultiPoly.gens(*B_VARS)
        v1, v2 = self.vertices
        return [v2[i] - sum((A[i][j] * v1[j] for j in range(3)), MultiPoly.const(mpq(0)))
                for i in range(3)]

    def direction_images(self, psi: MobiusMap) -> list[UniPoly]:
        powers = mobius_powers(psi, self.n)
        return [mobius_numerator(q, psi, self.n, powers) for q in self.S2.q]

    def norm_equations(self, psi: MobiusMap, scale=None) -> list:
        """t-coefficients of scale^2 |q1|^2 - k^2 |Q2|^2 (scale defaults to 1)."""
        Q = self.direction_images(psi)
        k = MultiPoly.gen("k")
        qq = sum((x * x for x in Q), UniPoly())
        left = self.q1_norm if scale is None else self.q1_norm.scale(scale * scale)
        diff = left - qq.scale(k * k)
        return [MultiPoly.lift(c) for c in diff.c]

    # -- candidates ---------------------------------------------------------
    def make_member(self, psi: MobiusMap, k, A, b) -> Equivalence | None:
        try:
            if not psi.det or not k or not linalg.det(A):
                return None
            c = self.reparam_shift(psi, A, b)
        except (ZeroDivisionError, FieldError):
            return None
        f = AffineMap(A, b)
        phi = Reparam(psi, k, c, self.n)
        if not verify(f, phi, self.S1, self.S2):
            return None
        lam = None
        if self.mode == "isometry" and not f.is_orthogonal():
            return None
        if self.mode == "similarity":
            lam = similarity_ratio(A, self.d)
            if lam is None:
                return None
        return Equivalence(f, phi, lam)

    def reparam_shift(self, psi: MobiusMap, A, b) -> RatFunc:
        """c(t) from the first component where the composed direction is nonzero."""
        Q = self.direction_images(psi)
        i = next(i for i in range(3) if Q[i])
        p2 = _compose_p(self.S2, psi)
        w = sum((self.S1.p[j] * A[i][j] for j in range(3)), RatFunc(UniPoly())) + b[i] - p2[i]
        return w * RatFunc(psi.denominator() ** self.n, Q[i])


def similarity_ratio(A, d=None):
    """lambda > 0 with A^T A = lambda^2 I, or None."""
    P = linalg.matmul(linalg.transpose(A), A)
    lam2 = P[0][0]
    if not all(P[i][j] == (lam2 if i == j else 0) for i in range(3) for j in range(3)):
        return None
    if not lam2:
        return None
    try:
        roots = real_roots(UniPoly((-lam2, mpq(0), mpq(1))), d)
    except SolverError:
        return None
    pos = [x for x in roots if x > 0]
    return pos[0] if pos else None


# ---------------------------------------------------------------------------
# stage 1: the Moebius transformation


def _univariate(p: MultiPoly, var: str) -> UniPoly:
    p = p.compact()
    if var not in p.vars:
        return UniPoly((p.as_scalar(),))
    out = {}
    for j, c in p.coefficients_in(var).items():
        out[j] = c.as_scalar()
    return UniPoly([out.get(j, mpq(0)) for j in range(max(out) + 1)])


def _point_psi_values(chart: Chart, point: dict) -> dict:
    psi = chart.psi(point)
    return dict(zip(("alpha", "beta", "gamma", "delta"), psi.as_tuple()))


def moebius_candidates(prob: Problem, chart: Chart):
    """Finite list of stage-1 points (chart coordinates, plus k when the metric fixes it).

    Returns None when psi is not determined by the available conditions.
    """
    conds = [c for c in (chart.apply(c) for c in prob.red.conditions) if c]
    metric = prob.mode != "affine"
    try:
        sol = solve_system(conds, chart.vars, nonzero=[chart.det], budget=prob.budget, d=prob.d)
    except SolverError:
        # roots outside the supported fields; the norm equations may exclude them
        if not metric:
            raise
        sol = None
    if sol is not None:
        if not sol.consistent:
            return []
        if sol.finite:
            if prob.mode == "affine" or (prob.mode == "similarity" and not chart.extra):
                return sol.points
            out = []
            for pt in sol.points:
                for kv in _k_values(prob, chart, pt):
                    q = dict(pt)
                    q["k"] = kv
                    out.append(q)
            return out
        if not metric:
            return None
    k = MultiPoly.gen("k")
    eqs = conds + prob.norm_equations(chart.psi()) + [chart.apply(e) for e in chart.extra]
    sol = solve_system(eqs, chart.vars + ("k",), nonzero=[chart.det, k], budget=prob.budget, d=prob.d)
    if not sol.consistent:
        return []
    if not sol.finite:
        return None
    if prob.mode == "similarity":
        # k was a stand-in for k / lambda; only psi is kept
        seen, out = [], []
        for pt in sol.points:
            q = {v: pt[v] for v in chart.vars}
            if q not in seen:
                seen.append(q)
                out.append(q)
        return out
    return sol.points


def _k_values(prob: Problem, chart: Chart, point: dict) -> list:
    psi = chart.psi(point)
    g = None
    polys = [_univariate(e, "k") for e in prob.norm_equations(psi)]
    for e in chart.extra:
        polys.append(_univariate(chart.apply(e).subs(point), "k"))
    for h in polys:
        if h:
            g = h if g is None else g.gcd(h)
    if g is None or g.degree <= 0:
        return []
    return [x for x in real_roots(g, prob.d) if x]


# ---------------------------------------------------------------------------
# stage 2: the remaining unknowns are linear once psi (and maybe k) is fixed


def _cross_identities(prob: Problem, A, b, psi: MobiusMap):
    """Polynomial identities in t forcing A p1 + b - p2(psi) parallel to Q2.

    Each component of Wn x Q2 where Wn_i = (sum_j A_ij P1_j + b_i D1) D2~ - D1 P2~_i.
    Coefficients may be scalars or MultiPoly.
    """
    Q = prob.direction_images(psi)
    m = prob.m
    powers = mobius_powers(psi, m)
    Dt = mobius_numerator(prob.D2, psi, m, powers)
    Pt = [mobius_numerator(f, psi, m, powers) for f in prob.P2]
    Wn = []
    for i in range(3):
        acc = prob.D1.scale(b[i])
        for j in range(3):
            acc = acc + prob.P1[j].scale(A[i][j])
        Wn.append(acc * Dt - prob.D1 * Pt[i])
    return linalg.cross(Wn, Q)


def _linear_stage(prob: Problem, chart: Chart, point: dict):
    psi = chart.psi(point)
    vals = _point_psi_values(chart, point)
    k_known = "k" in point
    if k_known:
        vals["k"] = point["k"]
    vals.update({f: point[f] for f in prob.red.free if f in point})
    A = [[e.subs(vals) for e in row] for row in prob.red.A]
    b = prob.translation(A)
    unknowns = [u for u in prob.linear_unknowns(k_known) if u not in point]
    # evaluate the identities at bound+1 integer points: exact for polynomials
    Q = prob.direction_images(psi)
    m = prob.m
    powers = mobius_powers(psi, m)
    Dt = mobius_numerator(prob.D2, psi, m, powers)
    Pt = [mobius_numerator(f, psi, m, powers) for f in prob.P2]
    rows, rhs = [], []
    for t0 in range(prob.sample_bound + 1):
        t0 = mpq(t0)
        P1v = [f(t0) for f in prob.P1]
        D1v, Dtv = prob.D1(t0), Dt(t0)
        Qv = [q(t0) for q in Q]
        Wn = []
        for i in range(3):
            acc = MultiPoly.lift(b[i]) * (D1v * Dtv)
            for j in range(3):
                if P1v[j]:
                    acc = acc + A[i][j] * (P1v[j] * Dtv)
            Wn.append(acc - D1v * Pt[i](t0))
        for e in linalg.cross(Wn, Qv):
            coeffs, const = MultiPoly.lift(e).linear_form(unknowns)
            rows.append(coeffs)
            rhs.append(-const)
    sol = linalg.solve(rows, rhs) if unknowns else (([], []) if not any(rhs) else None)
    if sol is None:
        return [], []
    x, N = sol
    params = [f"f{i + 1}" for i in range(len(N))]
    expr = {}
    for idx, u in enumerate(unknowns):
        e = MultiPoly.const(x[idx])
        for j, vec in enumerate(N):
            if vec[idx]:
                e = e + MultiPoly.gen(params[j]) * vec[idx]
        expr[u] = e
    k_expr = MultiPoly.lift(point["k"]) if k_known else expr["k"]
    A_par = [[MultiPoly.lift(e).subs(expr) for e in row] for row in A]
    b_par = [MultiPoly.lift(e).subs(expr) for e in b]

    def build(pt):
        try:
            Av = [[e.evaluate(pt) for e in row] for row in A_par]
            bv = [e.evaluate(pt) for e in b_par]
            kv = k_expr.evaluate(pt)
        except ValueError:
            return None
        return prob.make_member(psi, kv, Av, bv)

    if not params:
        mem = build({})
        return ([mem] if mem else []), []
    eqs = _metric_equations(prob, A_par)
    nonzero = [det3(A_par)]
    if not k_known:
        nonzero.append(k_expr)
    nonzero = [g for g in nonzero if not MultiPoly.lift(g).is_constant()]
    members, fam = _solve_and_build(prob, eqs, tuple(params), nonzero, build)
    if fam is not None:
        fam.parametrization = {u: e for u, e in expr.items()}
    return members, ([fam] if fam else [])


def det3(M):
    """Determinant by cofactors; works for polynomial entries."""
    return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))


def _metric_equations(prob: Problem, A) -> list:
    if prob.mode == "affine":
        return []
    P = linalg.matmul(linalg.transpose(A), A)
    eqs = [P[i][j] for i in range(3) for j in range(i + 1, 3)]
    if prob.mode == "isometry":
        eqs += [P[i][i] - 1 for i in range(3)]
    else:
        eqs += [P[i][i] - P[0][0] for i in (1, 2)]
    return [MultiPoly.lift(e) for e in eqs if MultiPoly.lift(e)]


def _solve_and_build(prob: Problem, eqs, vars, nonzero, build, max_samples: int = 2):
    """Solve a system and turn its points into verified members.

    Returns ``(members, family)``; family is set when the solutions form a
    positive-dimensional set with at least one verified sample.
    """
    sol = solve_system(eqs, vars, nonzero=nonzero, budget=prob.budget, d=prob.d)
    if not sol.consistent:
        return [], None
    if sol.finite:
        return _build_all(sol.points, build), None
    samples = _sample_family(prob, sol, vars, nonzero, build, max_samples)
    if not samples:
        return [], None
    return [], InfiniteFamily(sol.basis, sol.free, samples)


def _build_all(points, build):
    out = []
    for pt in points:
        try:
            mem = build(pt)
        except FieldError:
            # coordinates in two unrelated number fields
            continue
        if mem is not None:
            out.append(mem)
    return out


def _sample_values(nfree: int, limit: int = 40):
    seen = 0
    for size in itertools.count(1):
        vals = list(range(-size, size + 1))
        for combo in itertools.product(vals, repeat=nfree):
            if max(abs(v) for v in combo) != size:
                continue
            yield combo
            seen += 1
            if seen >= limit:
                return


def _sample_family(prob, sol, vars, nonzero, build, max_samples):
    free = sol.free
    rest = tuple(v for v in vars if v not in free)
    samples = []
    for combo in _sample_values(len(free)):
        sub = {v: mpq(x) for v, x in zip(free, combo)}
        polys = [p.subs(sub) for p in sol.basis.polys]
        nz = [MultiPoly.lift(g).subs(sub) for g in nonzero]
        try:
            s2 = solve_system(polys, rest, nonzero=nz, budget=prob.budget, d=prob.d)
        except SolverError:
            continue
        if not s2.finite:
            continue
        for pt in s2.points:
            full = dict(pt)
            full.update(sub)
            try:
                mem = build(full)
            except FieldError:
                continue
            if mem is not None and not any(_same_map(mem, s) for s in samples):
                samples.append(mem)
        if len(samples) >= max_samples:
            break
    return samples


def recover_translation(prob: Problem, chart: Chart, point: dict):
    """b and c(t) (with k and free entries of A when not fixed) for one stage-1 point.

    Returns ``(members, families)``: verified equivalences, and infinite
    families when the linear system leaves parameters free.
    """
    return _linear_stage(prob, chart, point)


def _tangent_conditions(prob: Problem, chart: Chart) -> list:
    """Equations in the chart variables and k that do not involve b.

    A p1 + b - p2(psi) is a multiple c(t) Q of the composed direction, so its
    derivative lies in span(Q, Q'): det(V, Q, Q') = 0 where V is that
    derivative with denominators cleared.  Needs A = k * (matrix in psi).
    """
    psi = chart.psi()
    A = [[chart.apply(e) for e in row] for row in prob.red.A]
    Q = [UniPoly([chart.apply(MultiPoly.lift(c)) for c in q.c]) for q in prob.direction_images(psi)]
    X = linalg.cross(Q, [q.derivative() for q in Q])
    m = prob.m
    powers = mobius_powers(psi, m)
    Dt = mobius_numerator(prob.D2, psi, m, powers).map_coeffs(lambda c: chart.apply(MultiPoly.lift(c)))
    Pt = [mobius_numerator(f, psi, m, powers).map_coeffs(lambda c: chart.apply(MultiPoly.lift(c)))
          for f in prob.P2]
    D1 = prob.D1
    R = [f.derivative() * D1 - f * D1.derivative() for f in prob.P1]
    Dt2, D12 = Dt * Dt, D1 * D1
    total = UniPoly()
    for i in range(3):
        Vi = -(Pt[i].derivative() * Dt - Pt[i] * Dt.derivative()) * D12
        for j in range(3):
            if A[i][j] and R[j]:
                Vi = Vi + (R[j] * Dt2).map_coeffs(lambda c, a=A[i][j]: a * c)
        total = total + Vi * X[i]
    return [e for e in (MultiPoly.lift(c) for c in total.c) if e]


def _plane_normal(S: RuledSurface):
    V = direction_matrix(S)
    for i in range(len(V)):
        for j in range(i + 1, len(V)):
            w = linalg.cross(V[i], V[j])
            if any(w):
                return w
    raise ValueError("direction rank below 2")


def _height_conditions(prob: Problem, chart: Chart) -> list:
    """Rank 2: the height over the direction plane transforms affinely.

    A maps the plane of q1 onto the plane of q2, so N2^T A = mu N1^T and
    N2 . p2(psi(t)) = mu N1 . p1(t) + c0.  Unknowns: chart variables, mu, c0.
    """
    psi = chart.psi()
    N1, N2 = _plane_normal(prob.S1), _plane_normal(prob.S2)
    H1 = sum((f.scale(c) for f, c in zip(prob.P1, N1) if c), UniPoly())
    m = prob.m
    powers = mobius_powers(psi, m)
    lift = lambda c: chart.apply(MultiPoly.lift(c))
    H2 = sum((mobius_numerator(f, psi, m, powers).scale(c) for f, c in zip(prob.P2, N2) if c),
             UniPoly()).map_coeffs(lift)
    Dt = mobius_numerator(prob.D2, psi, m, powers).map_coeffs(lift)
    mu, c0 = MultiPoly.gens("mu", "c0")
    rhs = H1.map_coeffs(lambda c: mu * c) + prob.D1.map_coeffs(lambda c: c0 * c)
    diff = H2 * prob.D1.map_coeffs(MultiPoly.lift) - rhs * Dt
    return [e for e in (MultiPoly.lift(c) for c in diff.c) if e]


def _height_stage(prob: Problem, chart: Chart):
    eqs = [c for c in (chart.apply(c) for c in prob.red.conditions) if c]
    eqs += _height_conditions(prob, chart)
    sol = solve_system(eqs, chart.vars + ("mu", "c0"), nonzero=[chart.det, MultiPoly.gen("mu")],
                       budget=prob.budget, d=prob.d)
    if not sol.consistent:
        return []
    if not sol.finite:
        return None
    out = []
    for pt in sol.points:
        q = {v: pt[v] for v in chart.vars}
        if q not in out:
            out.append(q)
    return out


def _tangent_stage(prob: Problem, chart: Chart):
    """Stage-1 points (psi and k) from the b-free conditions, or None if they leave a continuum."""
    if prob.vertices is not None:
        return None
    if prob.r == 2 and prob.mode == "affine":
        pts = _height_stage(prob, chart)
        if pts is not None:
            return pts
    eqs = [c for c in (chart.apply(c) for c in prob.red.conditions) if c]
    eqs += _tangent_conditions(prob, chart)
    k = MultiPoly.gen("k")
    if prob.mode == "isometry":
        eqs += prob.norm_equations(chart.psi())
    eqs += [chart.apply(e) for e in chart.extra]
    sol = solve_system(eqs, chart.vars + ("k",) + prob.red.free, nonzero=[chart.det, k],
                       budget=prob.budget, d=prob.d)
    if not sol.consistent:
        return []
    if not sol.finite:
        return None
    return sol.points


# ---------------------------------------------------------------------------
# fallback: one polynomial system in every unknown


def assemble_S(prob: Problem, chart: Chart):
    """Equations, unknowns and nonvanishing constraints of the full system on one chart."""
    psi = chart.psi()
    A = [[chart.apply(e) for e in row] for row in prob.red.A]
    b = prob.translation(A)
    eqs = [c for c in (chart.apply(c) for c in prob.red.conditions) if c]
    if prob.vertices is None:
        for comp in _cross_identities(prob, A, b, psi):
            eqs += [MultiPoly.lift(c) for c in comp.c]
    k = MultiPoly.gen("k")
    nonzero = [chart.det, k]
    unknowns = chart.vars + ("k",) + prob.red.free + (B_VARS if prob.vertices is None else ())
    if prob.mode == "isometry":
        eqs += prob.norm_equations(psi)
    elif prob.mode == "similarity":
        lam = MultiPoly.gen("lam")
        eqs += prob.norm_equations(psi, scale=lam)
        unknowns = unknowns + ("lam",)
        nonzero.append(lam)
    eqs += [chart.apply(e) for e in chart.extra]
    eqs = [e for e in eqs if e]
    return eqs, unknowns, nonzero, A, b


def _full_stage(prob: Problem, chart: Chart):
    eqs, unknowns, nonzero, A, b = assemble_S(prob, chart)

    def build(pt):
        psi = chart.psi({v: pt[v] for v in chart.vars})
        Av = [[e.evaluate(pt) for e in row] for row in A]
        bv = [MultiPoly.lift(e).evaluate(pt) for e in b]
        return prob.make_member(psi, pt["k"], Av, bv)

    members, fam = _solve_and_build(prob, eqs, unknowns, nonzero, build)
    if fam is not None and prob.mode != "affine":
        # the norm equations alone left a continuum: add orthogonality of A
        members, fam = _solve_and_build(prob, eqs + _metric_equations(prob, A), unknowns,
                                        nonzero, build)
    return members, ([fam] if fam else [])


# ---------------------------------------------------------------------------
# driver


def _same_map(a: Equivalence, b: Equivalence) -> bool:
    return a.f.A == b.f.A and a.f.b == b.f.b


def solve_problem(prob: Problem, charts=None) -> EquivalenceSet:
    members, families = [], []
    for chart in charts or standard_charts():
        pts = moebius_candidates(prob, chart)
        if pts is None:
            pts = _tangent_stage(prob, chart)
        if pts is None:
            ms, fs = _full_stage(prob, chart)
            members += ms
            families += fs
            continue
        for pt in pts:
            try:
                ms, fs = _linear_stage(prob, chart, pt)
            except FieldError:
                continue
            members += ms
            families += fs
    unique = []
    for m in members:
        if not any(_same_map(m, u) for u in unique):
            unique.append(m)
    return EquivalenceSet.from_parts(unique, families)


def equivalences(S1: RuledSurface, S2: RuledSurface, mode: str = "affine", charts=None,
                 budget: int | None = None) -> EquivalenceSet:
    """Affine equivalences (or isometries, similarities) mapping S1 onto S2."""
    from .special import conical_equivalences, cylindrical_reduce

    S1 = S1 if S1.normalized else normalize(S1)
    S2 = S2 if S2.normalized else normalize(S2)
    if S1.n != S2.n:
        return EquivalenceSet.none(f"direction degrees differ ({S1.n} vs {S2.n})")
    c1, c2 = classify(S1), classify(S2)
    cyl = (c1.tag == "cylindrical", c2.tag == "cylindrical")
    if all(cyl):
        return EquivalenceSet(
            "not_supported",
            reductions=(cylindrical_reduce(S1), cylindrical_reduce(S2)),
            reason="cylindrical surfaces: equivalence reduces to the planar cross-sections",
        )
    if any(cyl):
        return EquivalenceSet.none("only one surface is cylindrical")
    if c1.rank != c2.rank:
        return EquivalenceSet.none("direction ranks differ")
    cone = (c1.tag == "conical", c2.tag == "conical")
    if any(cone) and not all(cone):
        return EquivalenceSet.none("only one surface is conical")
    if all(cone):
        return conical_equivalences(S1, S2, mode, charts=charts, budget=budget)
    return solve_problem(Problem(S1, S2, mode, budget=budget), charts)


def affine_equivalences(S1: RuledSurface, S2: RuledSurface, budget: int | None = None) -> EquivalenceSet:
    return equivalences(S1, S2, "affine", budget=budget)


def reparam_candidates(S1: RuledSurface, S2: RuledSurface, metric: bool = True,
                       budget: int | None = None) -> list[dict]:
    """Stage-1 solutions as dicts over alpha, beta, gamma, delta (and k when metric)."""
    prob = Problem(normalize(S1), normalize(S2), "isometry" if metric else "affine", budget=budget)
    out = []
    for chart in standard_charts():
        pts = moebius_candidates(prob, chart)
        if pts is None:
            raise SolverError("Moebius part is not determined by the stage-1 conditions")
        for pt in pts:
            d = _point_psi_values(chart, pt)
            if "k" in pt:
                d["k"] = pt["k"]
            out.append(d)
    return out


__all__ = [
    "AlgElem", "Surd",  # re-exported scalar types that may appear in results
    "Chart", "CylindricalCase", "DegreeMismatch", "Equivalence", "EquivalenceSet",
    "InfiniteFamily", "LinearSystemL", "Problem", "ReducedL", "SYMBOLIC_PSI",
    "affine_equivalences", "assemble_L", "assemble_S", "equivalences", "mobius_numerator",
    "mobius_powers", "recover_translation", "reduce_L", "reparam_candidates", "solve_problem", "standard_charts",
    "verify",
]
