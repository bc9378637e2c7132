"""Exact integer lattice linear algebra: Hermite and Smith normal forms.

Matrices are lists of rows of Python ints; lattices are spanned by rows.
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def _echelonize(a: Matrix, pivot_cols: int) -> int:
    """Row-reduce ``a`` in place to Hermite form on its first ``pivot_cols``
    columns using unimodular row operations. Returns the number of pivots.

    Columns past ``pivot_cols`` are carried along (used to track transforms).
    """
    m = len(a)
    r = 0
    for col in range(pivot_cols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][col] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][col]))
            a[r], a[p] = a[p], a[r]
            piv = a[r][col]
            clean = True
            for i in range(r + 1, m):
                x = a[i][col]
                if x:
                    q = x // piv
                    if q:
                        row_r = a[r]
                        a[i] = [u - q * v for u, v in zip(a[i], row_r)]
                    if a[i][col]:
                        clean = False
            if clean:
                break
        if r < m and a[r][col] != 0:
            if a[r][col] < 0:
                a[r] = [-v for v in a[r]]
            piv = a[r][col]
            for i in range(r):
                q = a[i][col] // piv
                if q:
                    a[i] = [u - q * v for u, v in zip(a[i], a[r])]
            r += 1
    return r


def hnf(rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Zero rows are dropped; pivots are positive and the entries above each
    pivot lie in ``[0, pivot)``, so the result is a canonical basis.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    a = [list(map(int, row)) for row in rows]
    for row in a:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    r = _echelonize(a, ncols)
    return a[:r]


def rank(rows: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    return len(hnf(rows, ncols))


def left_kernel(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis (in Hermite form) of ``{v in Z^m : v @ M == 0}``."""
    m = len(rows)
    if m == 0:
        return []
    aug = [list(map(int, row)) + [1 if j == i else 0 for j in range(m)]
           for i, row in enumerate(rows)]
    r = _echelonize(aug, ncols)
    basis = [row[ncols:] for row in aug[r:]]
    return hnf(basis, m)


def same_lattice(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], ncols: int) -> bool:
    return hnf(a, ncols) == hnf(b, ncols)


def smith_invariants(rows: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    a = [list(map(int, row)) for row in rows]
    m, n = len(a), ncols
    diag = []
    t = 0
    while t < min(m, n):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            piv = a[t][t]
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // piv
                    a[i] = [u - q * v for u, v in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // piv
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if not done:
                # move the smallest remaining entry of row/col t to the pivot
                cands = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
                cands += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
                _, pi, pj = min(cands)
                a[t], a[pi] = a[pi], a[t]
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
                continue
            # divisibility: pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % piv), None)
            if bad is None:
                break
            a[t] = [u + v for u, v in zip(a[t], a[bad[0]])]
        diag.append(abs(a[t][t]))
        t += 1
    return diag
