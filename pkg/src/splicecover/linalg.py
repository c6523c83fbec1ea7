"""Exact integer linear algebra on small dense square matrices.

Matrices are sequences of rows of Python ints.  Nothing here ever touches
floating point.
"""
from fractions import Fraction

from .errors import SingularMatrixError


def as_matrix(rows):
    """Copy ``rows`` into an immutable tuple-of-tuples, checking squareness."""
    m = tuple(tuple(int(x) for x in row) for row in rows)
    for row in m:
        if len(row) != len(m):
            raise ValueError("matrix must be square")
    return m


def determinant(a):
    """Determinant by fraction-free (Bareiss) elimination.

    The 0x0 matrix has determinant 1.
    """
    m = [list(row) for row in a]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def minor(a, i, j):
    return tuple(
        tuple(x for c, x in enumerate(row) if c != j)
        for r, row in enumerate(a) if r != i
    )


def inverse_entry(a, i, j):
    """Entry ``(i, j)`` of the inverse, as cofactor over determinant."""
    det = determinant(a)
    if det == 0:
        raise SingularMatrixError("matrix is singular")
    cofactor = (-1) ** (i + j) * determinant(minor(a, j, i))
    return Fraction(cofactor, det)


def smith_invariants(a):
    """Invariant factors ``d1 | d2 | ...`` of an integer matrix.

    Zero factors (free rank) come last.  Uses row and column operations
    with the entry of least absolute value as pivot.
    """
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        nonzero = [(abs(m[i][j]), i, j)
                   for i in range(t, rows) for j in range(t, cols) if m[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        m[t], m[pi] = m[pi], m[t]
        for row in m:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = m[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // p
                    for j in range(t, cols):
                        m[i][j] -= q * m[t][j]
                    dirty = dirty or m[i][t] != 0
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // p
                    for i in range(t, rows):
                        m[i][j] -= q * m[i][t]
                    dirty = dirty or m[t][j] != 0
            if dirty:
                # a remainder is smaller than the pivot: move it into place
                _, pi, pj = min((abs(m[i][j]), i, j)
                                for i in range(t, rows) for j in range(t, cols)
                                if m[i][j] and (i == t or j == t))
                m[t], m[pi] = m[pi], m[t]
                for row in m:
                    row[t], row[pj] = row[pj], row[t]
                continue
            # the pivot must also divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, rows)
                        for j in range(t + 1, cols) if m[i][j] % p), None)
            if bad is None:
                break
            for j in range(t, cols):
                m[t][j] += m[bad[0]][j]
        diag.append(abs(m[t][t]))
        t += 1
    diag.extend([0] * (min(rows, cols) - len(diag)))
    return diag
