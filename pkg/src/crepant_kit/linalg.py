"""Dense linear algebra over exact fields (Fraction, CycloNumber).

Plain Gauss-Jordan elimination on lists of lists; the matrices in this
package are at most 12x12, so nothing cleverer is warranted.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd


class SingularMatrixError(ArithmeticError):
    pass


def identity(n, one=1, zero=0):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            s = 0
            for k in range(m):
                if a[i][k] and b[k][j]:
                    s = s + a[i][k] * b[k][j]
            row.append(s)
        out.append(row)
    return out


def transpose(a):
    return [list(r) for r in zip(*a)]


def inverse(a):
    """Inverse of a square matrix over an exact field."""
    n = len(a)
    m = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is not invertible")
        m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        m[col] = [x / p if x != 0 else x for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y if y != 0 else x for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def solve(a, b):
    """Solve ``a x = b`` for a (possibly non-square) system with full column rank.

    Returns ``None`` if the system is inconsistent.  Raises
    ``SingularMatrixError`` when the columns are dependent.
    """
    rows, cols = len(a), len(a[0])
    m = [[Fraction(x) if isinstance(x, int) else x for x in row] + [b[i]] for i, row in enumerate(a)]
    r = 0
    for col in range(cols):
        pivot = next((k for k in range(r, rows) if m[k][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("columns are linearly dependent")
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][col]
        m[r] = [x / p for x in m[r]]
        for k in range(rows):
            if k != r and m[k][col] != 0:
                f = m[k][col]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        r += 1
    if any(m[k][cols] != 0 for k in range(r, rows)):
        return None
    return [m[k][cols] for k in range(cols)]


def det_int(a) -> int:
    """Determinant of a square integer matrix (Bareiss, fraction free)."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def maximal_minors_gcd(rows) -> int:
    """gcd of the k x k minors of a k x n integer matrix (k <= n)."""
    k = len(rows)
    n = len(rows[0])
    g = 0
    for cols in combinations(range(n), k):
        g = gcd(g, det_int([[row[c] for c in cols] for row in rows]))
        if g == 1:
            break
    return g
