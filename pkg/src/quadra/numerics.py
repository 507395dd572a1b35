"""Scalar and dense matrix arithmetic over exact rationals or binary64.

A scalar is either exact (``int`` / ``fractions.Fraction``) or a ``float``.
Python's numeric tower already implements the mode-propagation rule we rely
on: Fraction-with-Fraction arithmetic is exact, and any operation touching a
float yields a float.  A matrix is a list of rows (lists of scalars),
homogeneous in mode.

All certificate-grade decisions (singularity, positive definiteness) are made
exactly when the matrix is exact; floats are accepted with the tolerances in
:class:`Tolerances`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import NotSymmetricError, SingularMatrixError


@dataclass(frozen=True)
class Tolerances:
    """Float-mode thresholds; irrelevant in exact mode."""

    symmetry_rtol: float = 1e-12
    pivot_rtol: float = 1e-9
    eigenvalue_pd_slack: float = 1e-6


DEFAULT_TOLERANCES = Tolerances()


def is_exact(x) -> bool:
    """True for int/Fraction scalars, False for floats."""
    return isinstance(x, Rational)


def matrix_is_exact(a) -> bool:
    return all(is_exact(x) for row in a for x in row)


def as_fraction(x) -> Fraction:
    """Exact conversion; floats go through their decimal repr so that parsed
    inputs like 0.25 rationalize to 1/4 rather than the binary expansion."""
    if isinstance(x, Rational):
        return Fraction(x)
    return Fraction(str(x))


def identity_matrix(n: int, exact: bool = True):
    one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def mat_vec(a, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def _max_abs(a) -> float:
    return max((abs(float(x)) for row in a for x in row), default=0.0)


def solve_linear(a, b, tol: Tolerances = DEFAULT_TOLERANCES):
    """Solve A x = b by Gaussian elimination.

    Exact matrices use exact pivoting (any nonzero pivot); float matrices use
    scaled partial pivoting, with singularity declared when the best pivot
    falls below ``pivot_rtol`` relative to its own row's largest entry.
    """
    n = len(a)
    if any(len(row) != n for row in a) or len(b) != n:
        raise ValueError("dimension mismatch")
    if n == 0:
        return []
    exact = matrix_is_exact(a) and all(is_exact(x) for x in b)
    m = [list(row) + [b[i]] for i, row in enumerate(a)]
    # row scales equilibrate badly scaled systems (e.g. Vandermonde with one
    # far-flung node) so a structurally good pivot is not rejected merely for
    # being small in absolute terms
    scale = [max((abs(v) for v in row), default=0.0) or 1.0 for row in a]
    for col in range(n):
        if exact:
            piv = next((r for r in range(col, n) if m[r][col] != 0), None)
            if piv is None:
                raise SingularMatrixError(f"no pivot in column {col}")
        else:
            piv = max(range(col, n), key=lambda r: abs(m[r][col]) / scale[r])
            if abs(m[piv][col]) < tol.pivot_rtol * scale[piv]:
                raise SingularMatrixError(f"pivot below tolerance in column {col}")
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            scale[col], scale[piv] = scale[piv], scale[col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                factor = m[r][col] / m[col][col]
                for c in range(col, n + 1):
                    m[r][c] -= factor * m[col][c]
    x = [None] * n
    for i in range(n - 1, -1, -1):
        s = m[i][n] - sum(m[i][j] * x[j] for j in range(i + 1, n))
        x[i] = s / m[i][i]
    return x


def solve_consistent(a, b):
    """Some exact solution of A x = b for square A, allowing singular A as
    long as the system is consistent (free variables are set to zero).
    Raises SingularMatrixError when no solution exists."""
    n = len(a)
    if n == 0:
        return []
    m = [list(row) + [b[i]] for i, row in enumerate(a)]
    pivots = []  # (row, column)
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if m[r][col] != 0), None)
        if piv is None:
            continue
        if piv != row:
            m[row], m[piv] = m[piv], m[row]
        for r in range(n):
            if r != row and m[r][col] != 0:
                factor = m[r][col] / m[row][col]
                for c in range(col, n + 1):
                    m[r][c] -= factor * m[row][c]
        pivots.append((row, col))
        row += 1
    for r in range(row, n):
        if m[r][n] != 0:
            raise SingularMatrixError("inconsistent singular system")
    x = [Fraction(0)] * n
    for r, c in pivots:
        x[c] = m[r][n] / m[r][c]
    return x


def determinant(a, tol: Tolerances = DEFAULT_TOLERANCES):
    """Determinant by Gaussian elimination; the empty 0x0 matrix gives 1."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix not square")
    exact = matrix_is_exact(a)
    if n == 0:
        return Fraction(1) if exact else 1.0
    m = [list(row) for row in a]
    sign = 1
    det = Fraction(1) if exact else 1.0
    for col in range(n):
        if exact:
            piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        else:
            piv = max(range(col, n), key=lambda r: abs(m[r][col]))
            if m[piv][col] == 0:
                piv = None
        if piv is None:
            return Fraction(0) if exact else 0.0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        det *= m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                factor = m[r][col] / m[col][col]
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return sign * det


def is_symmetric(a, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    n = len(a)
    if any(len(row) != n for row in a):
        return False
    if matrix_is_exact(a):
        return all(a[i][j] == a[j][i] for i in range(n) for j in range(i))
    scale = max(_max_abs(a), 1.0)
    return all(abs(a[i][j] - a[j][i]) <= tol.symmetry_rtol * scale
               for i in range(n) for j in range(i))


@dataclass(frozen=True)
class PDResult:
    """Outcome of a positive-definiteness test; witness is the order of the
    first non-positive leading principal minor (1-based)."""

    positive_definite: bool
    witness_order: int | None = None

    def __bool__(self) -> bool:
        return self.positive_definite


def is_positive_definite(a, tol: Tolerances = DEFAULT_TOLERANCES) -> PDResult:
    """Exact mode: all leading principal minors strictly positive (no square
    roots needed).  Float mode: attempted Cholesky with a relative pivot
    floor.  The 0x0 matrix is trivially positive definite."""
    if not is_symmetric(a, tol):
        raise NotSymmetricError("matrix is not symmetric")
    n = len(a)
    if n == 0:
        return PDResult(True)
    if matrix_is_exact(a):
        # Symmetric elimination: the k-th leading minor is the product of the
        # first k pivots, so minor positivity reduces to pivot positivity.
        m = [list(row) for row in a]
        for k in range(n):
            if m[k][k] <= 0:
                return PDResult(False, k + 1)
            for r in range(k + 1, n):
                factor = m[r][k] / m[k][k]
                for c in range(k, n):
                    m[r][c] -= factor * m[k][c]
        return PDResult(True)
    floor = tol.pivot_rtol * max(max(abs(float(a[i][i])) for i in range(n)), 1.0)
    low = [[0.0] * n for _ in range(n)]
    for j in range(n):
        d = float(a[j][j]) - sum(low[j][k] ** 2 for k in range(j))
        if d <= floor:
            return PDResult(False, j + 1)
        low[j][j] = d ** 0.5
        for i in range(j + 1, n):
            low[i][j] = (float(a[i][j]) - sum(low[i][k] * low[j][k] for k in range(j))) / low[j][j]
    return PDResult(True)


def symmetric_eigenvalues(a, tol: Tolerances = DEFAULT_TOLERANCES) -> list[float]:
    """Float eigenvalues of a symmetric matrix, descending."""
    if not is_symmetric(a, tol):
        raise NotSymmetricError("matrix is not symmetric")
    if len(a) == 0:
        return []
    arr = np.array([[float(x) for x in row] for row in a], dtype=float)
    return sorted((float(v) for v in np.linalg.eigvalsh(arr)), reverse=True)
