"""Value types for maps: Moebius transformations of the parameter line, the
induced plane reparametrization, and affine maps of 3-space."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import linalg
from .algebra.scalars import format_scalar, mpq
from .algebra.unipoly import RatFunc, UniPoly


def _q(x):
    return mpq(x) if isinstance(x, int) else x


@dataclass(frozen=True)
class MobiusMap:
    """t -> (alpha t + beta) / (gamma t + delta).  Entries may be scalars or MultiPoly."""

    alpha: object
    beta: object
    gamma: object
    delta: object

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(mpq(1), mpq(0), mpq(0), mpq(1))

    @property
    def det(self):
        return self.alpha * self.delta - self.beta * self.gamma

    def numerator(self) -> UniPoly:
        return UniPoly((self.beta, self.alpha))

    def denominator(self) -> UniPoly:
        return UniPoly((self.delta, self.gamma))

    def __call__(self, t):
        return (self.alpha * t + self.beta) / (self.gamma * t + self.delta)

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """self o other."""
        a, b, c, d = self.alpha, self.beta, self.gamma, self.delta
        e, f, g, h = other.alpha, other.beta, other.gamma, other.delta
        return MobiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def normalized(self) -> "MobiusMap":
        """Scale so that gamma = 1, or delta = 1 when gamma = 0."""
        s = self.gamma if self.gamma else self.delta
        inv = 1 / s
        return MobiusMap(self.alpha * inv, self.beta * inv, self.gamma * inv, self.delta * inv)

    def is_identity(self) -> bool:
        return not self.beta and not self.gamma and self.alpha == self.delta

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma, self.delta)

    def format(self) -> str:
        return "(" + ", ".join(format_scalar(x) for x in self.as_tuple()) + ")"


@dataclass(frozen=True)
class Reparam:
    """phi(t, s) = (psi(t), k (gamma t + delta)^n s + c(t))."""

    psi: MobiusMap
    k: object
    c: RatFunc
    n: int

    @classmethod
    def identity(cls, n: int) -> "Reparam":
        return cls(MobiusMap.identity(), mpq(1), RatFunc(UniPoly()), n)

    def s_factor(self) -> UniPoly:
        return self.psi.denominator() ** self.n * self.k

    def format(self) -> str:
        return (
            f"psi=(alpha,beta,gamma,delta)={self.psi.format()} "
            f"k={format_scalar(self.k)} c(t)={self.c.format()}"
        )


@dataclass(frozen=True)
class AffineMap:
    """x -> A x + b."""

    A: tuple
    b: tuple

    def __init__(self, A, b=(0, 0, 0)):
        object.__setattr__(self, "A", tuple(tuple(_q(x) for x in row) for row in A))
        object.__setattr__(self, "b", tuple(_q(x) for x in b))

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(linalg.identity(3), (0, 0, 0))

    @classmethod
    def translation(cls, v) -> "AffineMap":
        return cls(linalg.identity(3), v)

    @property
    def matrix(self):
        return [list(r) for r in self.A]

    def det(self):
        return linalg.det(self.matrix)

    def apply(self, x):
        return [y + bi for y, bi in zip(linalg.matvec(self.matrix, list(x)), self.b)]

    def linear(self, x):
        return linalg.matvec(self.matrix, list(x))

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self o other."""
        A = linalg.matmul(self.matrix, other.matrix)
        b = [x + y for x, y in zip(linalg.matvec(self.matrix, list(other.b)), self.b)]
        return AffineMap(A, b)

    def inverse(self) -> "AffineMap":
        Ai = linalg.inverse(self.matrix)
        return AffineMap(Ai, [-x for x in linalg.matvec(Ai, list(self.b))])

    def scaled(self, lam) -> "AffineMap":
        return AffineMap([[lam * x for x in row] for row in self.A], [lam * x for x in self.b])

    def is_identity(self) -> bool:
        return self == AffineMap.identity()

    def is_orthogonal(self, lam2=1) -> bool:
        """A^T A == lam2 * I exactly."""
        M = self.matrix
        P = linalg.matmul(linalg.transpose(M), M)
        return all(P[i][j] == (lam2 if i == j else 0) for i in range(3) for j in range(3))

    def format(self) -> str:
        rows = "; ".join(" ".join(format_scalar(x) for x in row) for row in self.A)
        return f"A=[{rows}] b=({', '.join(format_scalar(x) for x in self.b)})"
