"""Dense exact linear algebra over GF(2^m): determinants, solving, rank.

Used directly by the classic PGZ decoder and as the independent oracle
against which the structured Hankel machinery is tested.
"""

from __future__ import annotations


class SingularMatrixError(ValueError):
    pass


def determinant(field, matrix) -> int:
    """Exact determinant by Gaussian elimination with column pivoting."""
    a = [row[:] for row in matrix]
    k = len(a)
    if any(len(row) != k for row in a):
        raise ValueError("determinant needs a square matrix")
    det = 1
    for col in range(k):
        pivot = next((r for r in range(col, k) if a[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            # row swap flips the sign; in characteristic 2 this is a no-op
        det = field.mul(det, a[col][col])
        inv_p = field.inv(a[col][col])
        for r in range(col + 1, k):
            if a[r][col] == 0:
                continue
            factor = field.mul(a[r][col], inv_p)
            for c in range(col, k):
                a[r][c] = field.add(a[r][c], field.mul(factor, a[col][c]))
    return det


def solve(field, matrix, rhs) -> list[int]:
    """Solve A x = b for square nonsingular A."""
    k = len(matrix)
    a = [matrix[r][:] + [rhs[r]] for r in range(k)]
    for col in range(k):
        pivot = next((r for r in range(col, k) if a[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("singular system")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
        inv_p = field.inv(a[col][col])
        for c in range(col, k + 1):
            a[col][c] = field.mul(a[col][c], inv_p)
        for r in range(k):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                for c in range(col, k + 1):
                    a[r][c] = field.add(a[r][c], field.mul(factor, a[col][c]))
    return [a[r][k] for r in range(k)]


def rank(field, matrix) -> int:
    """Rank by row reduction (works for rectangular matrices)."""
    a = [row[:] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rk = 0
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, rows) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        inv_p = field.inv(a[row][col])
        for c in range(col, cols):
            a[row][c] = field.mul(a[row][c], inv_p)
        for r in range(rows):
            if r != row and a[r][col] != 0:
                factor = a[r][col]
                for c in range(col, cols):
                    a[r][c] = field.add(a[r][c], field.mul(factor, a[row][c]))
        rk += 1
        row += 1
        if row == rows:
            break
    return rk


def kernel_vector(field, matrix) -> list[int]:
    """One nonzero kernel vector of an m x (m+1) matrix of rank m."""
    rows = len(matrix)
    cols = len(matrix[0])
    a = [row[:] for row in matrix]
    pivots = []          # (row, col) in RREF
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, rows) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        inv_p = field.inv(a[row][col])
        for c in range(col, cols):
            a[row][c] = field.mul(a[row][c], inv_p)
        for r in range(rows):
            if r != row and a[r][col] != 0:
                factor = a[r][col]
                for c in range(col, cols):
                    a[r][c] = field.add(a[r][c], field.mul(factor, a[row][c]))
        pivots.append((row, col))
        row += 1
        if row == rows:
            break
    pivot_cols = {c for _, c in pivots}
    free = [c for c in range(cols) if c not in pivot_cols]
    if not free:
        raise SingularMatrixError("matrix has trivial kernel")
    j0 = free[0]
    vec = [0] * cols
    vec[j0] = 1
    for r, c in pivots:
        vec[c] = field.neg(a[r][j0])
    return vec


def mat_vec(field, matrix, vec) -> list[int]:
    out = []
    for row in matrix:
        acc = 0
        for x, y in zip(row, vec):
            acc = field.add(acc, field.mul(x, y))
        out.append(acc)
    return out
