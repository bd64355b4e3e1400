"""Dense exact linear algebra over a FieldCtx.

Matrices are lists of rows of field codes.  Prime fields go through a vectorised
numpy elimination; extension fields use the scalar ops of the context.  Both paths
run the same pivoting rule (first nonzero entry at or below the current row), so
they return identical reduced forms.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .gfcore import FieldCtx

Matrix = list[list[int]]

# below this many entries the pure-Python path is faster than numpy dispatch
_NUMPY_MIN_ENTRIES = 64


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(a: Matrix, ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def matmul(ctx: FieldCtx, a: Matrix, b: Matrix, inner: int | None = None, ncols: int | None = None) -> Matrix:
    """a (m x k) times b (k x n); pass ``ncols`` when b may have no rows."""
    n = len(b[0]) if b else (ncols or 0)
    if ctx.is_prime and a and b and n:
        out = (np.array(a, dtype=np.int64) @ np.array(b, dtype=np.int64)) % ctx.p
        return out.tolist()
    out = zeros(len(a), n)
    for i, row in enumerate(a):
        for k, x in enumerate(row):
            if x:
                brow = b[k]
                orow = out[i]
                for j in range(n):
                    if brow[j]:
                        orow[j] = ctx.add(orow[j], ctx.mul(x, brow[j]))
    return out


def matvec(ctx: FieldCtx, a: Matrix, v: Sequence[int]) -> list[int]:
    out = []
    for row in a:
        acc = 0
        for x, y in zip(row, v):
            if x and y:
                acc = ctx.add(acc, ctx.mul(x, y))
        out.append(acc)
    return out


def _rref_numpy(a: Matrix, ncols: int, p: int) -> tuple[Matrix, list[int]]:
    arr = np.array(a, dtype=np.int64).reshape(len(a), ncols) % p
    m = arr.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.flatnonzero(arr[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            arr[[r, i]] = arr[[i, r]]
        inv = pow(int(arr[r, c]), -1, p)
        arr[r] = (arr[r] * inv) % p
        col = arr[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            arr[rows] = (arr[rows] - np.outer(col[rows], arr[r])) % p
        pivots.append(c)
        r += 1
    return arr[:r].tolist(), pivots


def _rref_python(ctx: FieldCtx, a: Matrix, ncols: int) -> tuple[Matrix, list[int]]:
    rows = [list(r) for r in a]
    m = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ctx.inv(rows[r][c])
        prow = [ctx.mul(inv, x) if x else 0 for x in rows[r]]
        rows[r] = prow
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                row = rows[i]
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] = ctx.sub(row[j], ctx.mul(f, prow[j]))
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(ctx: FieldCtx, a: Matrix, ncols: int | None = None, force_python: bool = False) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    if ncols is None:
        ncols = len(a[0]) if a else 0
    if not a or ncols == 0:
        return [], []
    if ctx.is_prime and not force_python and len(a) * ncols >= _NUMPY_MIN_ENTRIES:
        return _rref_numpy(a, ncols, ctx.p)
    return _rref_python(ctx, a, ncols)


def rank(ctx: FieldCtx, a: Matrix, ncols: int | None = None) -> int:
    return len(rref(ctx, a, ncols)[1])


def nullspace(ctx: FieldCtx, a: Matrix, ncols: int) -> Matrix:
    """Basis of {x : a x = 0} as a list of vectors of length ncols."""
    red, pivots = rref(ctx, a, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            if row[f]:
                v[pc] = ctx.neg(row[f])
        basis.append(v)
    return basis


def left_nullspace(ctx: FieldCtx, a: Matrix, nrows: int) -> Matrix:
    """Basis of {y : y a = 0}."""
    ncols = len(a[0]) if a else 0
    return nullspace(ctx, transpose(a, ncols), nrows) if ncols else [
        [1 if i == j else 0 for j in range(nrows)] for i in range(nrows)
    ]


def solve(ctx: FieldCtx, a: Matrix, b: Sequence[int], ncols: int) -> list[int] | None:
    """One solution of a x = b, or None when inconsistent."""
    if len(a) != len(b):
        raise ValueError("row count mismatch")
    if not a:
        return [0] * ncols
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(ctx, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [0] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


def solve_many(ctx: FieldCtx, a: Matrix, bs: Sequence[Sequence[int]], ncols: int) -> list[list[int] | None]:
    """Solve a x = b for several right-hand sides with one elimination."""
    k = len(bs)
    if not a:
        return [[0] * ncols if not any(b) else None for b in bs]
    aug = [list(row) + [b[i] for b in bs] for i, row in enumerate(a)]
    red, pivots = rref(ctx, aug, ncols + k)
    out: list[list[int] | None] = []
    bad = {pc - ncols for pc in pivots if pc >= ncols}
    for j in range(k):
        if j in bad:
            out.append(None)
            continue
        x = [0] * ncols
        for row, pc in zip(red, pivots):
            if pc < ncols:
                x[pc] = row[ncols + j]
        out.append(x)
    return out


def in_span(ctx: FieldCtx, basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """Coordinates of v in terms of the given vectors, or None."""
    if not basis:
        return [] if not any(v) else None
    cols = transpose([list(b) for b in basis])
    return solve(ctx, cols, list(v), len(basis))


def inverse(ctx: FieldCtx, a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(ctx, aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


def row_basis(ctx: FieldCtx, vectors: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Reduced basis of the span of the given vectors."""
    return rref(ctx, [list(v) for v in vectors], ncols)[0]


def mat_add(ctx: FieldCtx, a: Matrix, b: Matrix) -> Matrix:
    return [[ctx.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(ctx: FieldCtx, a: Matrix, b: Matrix) -> Matrix:
    return [[ctx.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def is_zero(a: Matrix) -> bool:
    return all(not x for row in a for x in row)
