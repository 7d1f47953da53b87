"""Exact integer matrix reductions: Smith and Hermite normal forms.

Matrices are lists of row lists of Python ints.
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def vecmat(x: Sequence[int], a: Sequence[Sequence[int]]) -> list[int]:
    if not a:
        return []
    out = [0] * len(a[0])
    for xi, row in zip(x, a):
        if xi:
            for j, v in enumerate(row):
                out[j] += xi * v
    return out


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with g = s*a + t*b = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - k * s1
        t0, t1 = t1, t0 - k * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U @ A @ V == D`` and U, V unimodular.

    D is diagonal with non-negative entries, each dividing the next.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(r) != cols for r in a):
        raise ValueError("matrix rows must have equal length")
    D = [list(map(int, r)) for r in a]
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):
        for M in (D, U):
            M[dst] = [x + k * y for x, y in zip(M[dst], M[src])]

    def add_col(dst, src, k):
        for M in (D, V):
            for r in M:
                r[dst] += k * r[src]

    # Euclidean elimination: every unfinished pass strictly shrinks |pivot|
    for t in range(min(rows, cols)):
        while True:
            nz = [(abs(D[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if D[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = D[t][t]
            done = True
            for i in range(t + 1, rows):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    done = done and not D[i][t]
            for j in range(t + 1, cols):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    done = done and not D[t][j]
            if not done:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return U, D, V


def diagonal(D: Sequence[Sequence[int]]) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style HNF of the lattice spanned by ``rows`` (zero rows dropped).

    Upper triangular with positive pivots and the entries above each pivot
    reduced into ``[0, pivot)``.
    """
    H = [list(map(int, r)) for r in rows if any(r)]
    if not H:
        return []
    ncols = len(H[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(H)) if H[i][c]), None)
        if pivot is None:
            continue
        H[r], H[pivot] = H[pivot], H[r]
        for i in range(r + 1, len(H)):
            if H[i][c]:
                a_, b_ = H[r][c], H[i][c]
                g, s, t = _xgcd(a_, b_)
                row_r, row_i = H[r], H[i]
                H[r] = [s * x + t * y for x, y in zip(row_r, row_i)]
                H[i] = [(-b_ // g) * x + (a_ // g) * y for x, y in zip(row_r, row_i)]
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
        p = H[r][c]
        for i in range(r):
            k = H[i][c] // p
            if k:
                H[i] = [x - k * y for x, y in zip(H[i], H[r])]
        r += 1
        if r == len(H):
            break
    return H[:r]


def left_kernel(a: Sequence[Sequence[int]]) -> Matrix:
    """A basis of ``{y : y @ A = 0}`` over the integers."""
    U, D, _ = smith_normal_form(a)
    rank = sum(1 for d in diagonal(D) if d)
    return [U[i] for i in range(rank, len(U))]
