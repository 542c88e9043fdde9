"""Exact dense linear algebra over any field of exact scalars.

Matrices are lists of rows.  Rank uses fraction-free (Bareiss) elimination;
solving uses Gauss-Jordan with exact division.
"""

from __future__ import annotations

from .scalars import mpq


def zeros(m: int, n: int):
    return [[mpq(0)] * n for _ in range(m)]


def identity(n: int):
    return [[mpq(1) if i == j else mpq(0) for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(r) for r in zip(*M)] if M else []


def matmul(A, B):
    Bt = transpose(B)
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            acc = mpq(0)
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(A, v):
    out = []
    for row in A:
        acc = mpq(0)
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def bareiss_rank(M) -> int:
    """Rank by fraction-free elimination (exact division only)."""
    A = [list(r) for r in M]
    if not A:
        return 0
    m, n = len(A), len(A[0])
    rank = 0
    prev = mpq(1)
    for col in range(n):
        piv = next((r for r in range(rank, m) if A[r][col]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][col]
        for r in range(rank + 1, m):
            a = A[r][col]
            for c in range(col + 1, n):
                A[r][c] = (p * A[r][c] - a * A[rank][c]) / prev
            A[r][col] = mpq(0)
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def rref(M):
    """Reduced row echelon form; returns ``(R, pivot_columns)``."""
    A = [list(r) for r in M]
    if not A:
        return A, []
    m, n = len(A), len(A[0])
    pivots = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, m) if A[r][col]), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        inv = 1 / A[row][col]
        A[row] = [x * inv for x in A[row]]
        for r in range(m):
            if r != row and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    return A, pivots


def rank(M) -> int:
    return len(rref(M)[1])


def nullspace(M, ncols: int | None = None):
    """Basis of ``{x : M x = 0}``."""
    if not M:
        n = ncols or 0
        return identity(n)
    R, piv = rref(M)
    n = len(M[0])
    free = [j for j in range(n) if j not in piv]
    basis = []
    for f in free:
        v = [mpq(0)] * n
        v[f] = mpq(1)
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def left_nullspace(M):
    """Basis of ``{w : w^T M = 0}``."""
    return nullspace(transpose(M), ncols=len(M))


def solve(M, rhs):
    """Solve ``M x = rhs``: returns ``(particular, nullspace basis)`` or None."""
    n = len(M[0]) if M else 0
    aug = [list(r) + [b] for r, b in zip(M, rhs)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [mpq(0)] * n
    for i, p in enumerate(piv):
        x[p] = R[i][n]
    return x, nullspace(M, n)


def det(M):
    A = [list(r) for r in M]
    n = len(A)
    d = mpq(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            return mpq(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            d = -d
        p = A[col][col]
        d = d * p
        inv = 1 / p
        for r in range(col + 1, n):
            if A[r][col]:
                f = A[r][col] * inv
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return d


def inverse(M):
    n = len(M)
    aug = [list(r) + e for r, e in zip(M, identity(n))]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def cross(u, v):
    return [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]


def dot(u, v):
    acc = mpq(0)
    for x, y in zip(u, v):
        acc = acc + x * y
    return acc
