"""Exact (rational) and floating linear algebra used across the package.

Exact paths run fraction-free: each row is scaled to integers and the forward
elimination uses Bareiss one-step division-free updates, so ranks and pivot
columns are computed without rounding.  Float paths delegate to numpy and use
relative pivot thresholds.

Pivot columns are always the *first* linearly independent columns in the given
column order; kernel bases carry the delta structure (unit coefficient on one
free column, support otherwise restricted to pivot columns).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .polycore import Scalar, all_exact


class SingularMatrixError(ValueError):
    """A linear solve met a (numerically) singular matrix."""


def matrix_is_exact(rows: Sequence[Sequence[Scalar]]) -> bool:
    return all(all_exact(row) for row in rows)


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def mat_vec(rows, vec):
    out = []
    for row in rows:
        total = Fraction(0)
        for a, x in zip(row, vec):
            total = total + a * x
        out.append(total)
    return out


def dot(u, v):
    total = Fraction(0)
    for a, b in zip(u, v):
        total = total + a * b
    return total


# ---------------------------------------------------------------------------
# row reduction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearReduction:
    """Result of row reduction: rank, pivot columns, RREF rows."""

    nrows: int
    ncols: int
    rank: int
    pivots: tuple  # pivot column indices, increasing
    rref: tuple    # rank rows, each of length ncols; pivot entries equal 1

    def kernel_basis(self) -> list:
        """Kernel vectors in delta form, one per free column, in column order."""
        pivot_set = set(self.pivots)
        free = [j for j in range(self.ncols) if j not in pivot_set]
        basis = []
        for f in free:
            vec = [Fraction(0)] * self.ncols
            vec[f] = Fraction(1)
            for i, p in enumerate(self.pivots):
                coeff = self.rref[i][f]
                if coeff != 0:
                    vec[p] = -coeff
            basis.append(vec)
        return basis


def row_reduce(rows: Sequence[Sequence[Scalar]],
               tol_rank: float = 1e-10) -> LinearReduction:
    """Reduce to RREF; exact when every entry is exact, else float with a
    relative pivot threshold ``tol_rank * max|entry|``."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    if nrows == 0 or ncols == 0:
        return LinearReduction(nrows, ncols, 0, (), ())
    if matrix_is_exact(rows):
        return _row_reduce_exact(rows, nrows, ncols)
    return _row_reduce_float(rows, nrows, ncols, tol_rank)


def _row_reduce_exact(rows, nrows, ncols) -> LinearReduction:
    # Clear denominators row by row (row scaling changes neither the row
    # space, the kernel, nor the pivot columns), then eliminate with the
    # Bareiss one-step formula over integers.
    work = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        lcm = 1
        for x in fracs:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        work.append([int(x * lcm) for x in fracs])

    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if work[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        piv = work[r][c]
        for i in range(r + 1, nrows):
            # Every row below must be rescaled at every step, even with a
            # zero head entry, or the next step's division stops being exact.
            head = work[i][c]
            row_i = work[i]
            row_r = work[r]
            for j in range(c, ncols):
                row_i[j] = (row_i[j] * piv - head * row_r[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break

    rank = len(pivots)
    # Back-substitute the integer echelon form into a rational RREF.
    rref = [[Fraction(x) for x in work[i]] for i in range(rank)]
    for i in range(rank - 1, -1, -1):
        piv = rref[i][pivots[i]]
        rref[i] = [x / piv for x in rref[i]]
        for k in range(i):
            factor = rref[k][pivots[i]]
            if factor != 0:
                rref[k] = [a - factor * b for a, b in zip(rref[k], rref[i])]
    return LinearReduction(nrows, ncols, rank,
                           tuple(pivots), tuple(tuple(r_) for r_ in rref))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _row_reduce_float(rows, nrows, ncols, tol_rank) -> LinearReduction:
    work = np.array([[float(x) for x in row] for row in rows], dtype=float)
    scale = float(np.max(np.abs(work))) if work.size else 0.0
    if scale == 0.0:
        return LinearReduction(nrows, ncols, 0, (), ())
    threshold = tol_rank * scale
    pivots = []
    r = 0
    for c in range(ncols):
        col = np.abs(work[r:, c])
        best = int(np.argmax(col))
        if col[best] <= threshold:
            continue
        best += r
        if best != r:
            work[[r, best]] = work[[best, r]]
        work[r] = work[r] / work[r, c]
        for i in range(nrows):
            if i != r and work[i, c] != 0.0:
                work[i] = work[i] - work[i, c] * work[r]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    rank = len(pivots)
    rref = tuple(tuple(float(x) for x in work[i]) for i in range(rank))
    return LinearReduction(nrows, ncols, rank, tuple(pivots), rref)


# ---------------------------------------------------------------------------
# solving / determinants
# ---------------------------------------------------------------------------

def solve_linear(rows, rhs):
    """Solve A x = b for square A; exact iff all inputs are exact."""
    if matrix_is_exact(rows) and all_exact(rhs):
        return solve_exact(rows, rhs)
    a = np.array([[float(x) for x in row] for row in rows], dtype=float)
    b = np.array([float(x) for x in rhs], dtype=float)
    try:
        x = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(str(exc)) from exc
    return [float(v) for v in x]


def solve_exact(rows, rhs):
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(rhs[i])]
           for i, row in enumerate(rows)]
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError("exact solve: singular matrix")
        aug[c], aug[pivot_row] = aug[pivot_row], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                factor = aug[i][c]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[c])]
    return [aug[i][n] for i in range(n)]


def determinant(rows):
    """Determinant; exact (Fraction) iff all entries are exact."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if matrix_is_exact(rows):
        work = [[Fraction(x) for x in row] for row in rows]
        det = Fraction(1)
        for c in range(n):
            pivot_row = next((i for i in range(c, n) if work[i][c] != 0), None)
            if pivot_row is None:
                return Fraction(0)
            if pivot_row != c:
                work[c], work[pivot_row] = work[pivot_row], work[c]
                det = -det
            piv = work[c][c]
            det *= piv
            inv = 1 / piv
            for i in range(c + 1, n):
                if work[i][c] != 0:
                    factor = work[i][c] * inv
                    work[i] = [a - factor * b for a, b in zip(work[i], work[c])]
        return det
    return float(np.linalg.det(
        np.array([[float(x) for x in row] for row in rows], dtype=float)))


# ---------------------------------------------------------------------------
# positive semidefiniteness
# ---------------------------------------------------------------------------

def psd_exact(rows):
    """Exact PSD decision for a symmetric rational matrix.

    Returns ``(True, None)`` or ``(False, witness)`` where the witness vector
    v satisfies v^T A v < 0.  Recursive pivoting on the largest diagonal
    entry; at a level where the largest diagonal is zero, any nonzero
    off-diagonal entry certifies failure.
    """
    matrix = [[Fraction(x) for x in row] for row in rows]

    def rec(m):
        size = len(m)
        if size == 0:
            return None
        k = max(range(size), key=lambda i: m[i][i])
        if m[k][k] < 0:
            w = [Fraction(0)] * size
            w[k] = Fraction(1)
            return w
        if m[k][k] == 0:
            # Largest diagonal is zero, so every diagonal entry is <= 0.
            for i in range(size):
                if m[i][i] < 0:
                    w = [Fraction(0)] * size
                    w[i] = Fraction(1)
                    return w
            for i in range(size):
                for j in range(i + 1, size):
                    if m[i][j] != 0:
                        w = [Fraction(0)] * size
                        w[i] = Fraction(1)
                        w[j] = Fraction(-1) if m[i][j] > 0 else Fraction(1)
                        return w
            return None
        a = m[k][k]
        rest = [i for i in range(size) if i != k]
        schur = [[m[i][j] - m[i][k] * m[k][j] / a for j in rest] for i in rest]
        u = rec(schur)
        if u is None:
            return None
        # Lift: with v_rest = u and v_k chosen to cancel the pivot block,
        # v^T m v equals u^T schur u < 0.
        v = [Fraction(0)] * size
        for pos, i in enumerate(rest):
            v[i] = u[pos]
        v[k] = -sum(m[k][i] * v[i] for i in rest) / a
        return v

    witness = rec(matrix)
    if witness is None:
        return True, None
    value = dot(witness, mat_vec(matrix, witness))
    assert value < 0
    return False, witness


def psd_float(rows, tol: float = 1e-10):
    """Float PSD decision via eigenvalues; returns (ok, witness_or_None)."""
    a = np.array([[float(x) for x in row] for row in rows], dtype=float)
    if a.size == 0:
        return True, None
    a = (a + a.T) / 2.0
    eigvals, eigvecs = np.linalg.eigh(a)
    scale = max(1.0, float(np.max(np.abs(a))))
    if eigvals[0] >= -tol * scale:
        return True, None
    return False, [float(x) for x in eigvecs[:, 0]]
