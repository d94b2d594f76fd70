"""Moment multisequences, the Riesz functional, and moment matrices.

A multisequence of degree 2n in d variables assigns a scalar to every
exponent tuple of total degree <= 2n.  The Riesz functional extends it
linearly to polynomials; the moment matrix M(n) is indexed by monomials of
degree <= n with entries beta[i + j], so that <M(n) p, q> equals the
functional applied to p*q (a Hankel-type structure asserted on build).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from . import _linalg
from .polycore import (
    InputError,
    MultiIndex,
    Polynomial,
    Scalar,
    all_exact,
    ensure_scalar,
    format_scalar,
    monomial_basis,
    parse_scalar,
    total_degree,
)

# ---------------------------------------------------------------------------
# tolerances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TolerancePolicy:
    """Float-mode thresholds; exact routes ignore them.

    rank: relative pivot threshold (times the largest matrix entry).
    residual: verification threshold for moment/annihilation residuals.
    root: target width for root refinement intervals.
    merge: distance under which two atoms are considered the same point.
    """

    rank: float = 1e-10
    residual: float = 1e-7
    root: float = 1e-12
    merge: float = 1e-8


DEFAULT_POLICY = TolerancePolicy()

#: Interval width for high-precision refinement of irrational variety points.
#: Wide enough margins survive Vandermonde solves with condition numbers near
#: 1e8 while keeping densities of order 1e-10 at the correct sign.
REFINE_WIDTH = Fraction(1, 10**40)


# ---------------------------------------------------------------------------
# multisequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Multisequence:
    """Complete moment data: every |idx| <= degree has a value."""

    d: int
    degree: int
    values: Mapping

    def __post_init__(self):
        if self.degree < 0 or self.degree % 2 != 0:
            raise InputError(f"degree must be even and >= 0, got {self.degree}")
        clean = {}
        for idx, value in self.values.items():
            idx = tuple(int(e) for e in idx)
            if len(idx) != self.d or any(e < 0 for e in idx):
                raise InputError(f"bad moment index {idx} for d={self.d}")
            if total_degree(idx) > self.degree:
                raise InputError(
                    f"moment index {idx} exceeds degree {self.degree}")
            clean[idx] = ensure_scalar(value)
        for idx in monomial_basis(self.d, self.degree):
            if idx not in clean:
                raise InputError(f"missing moment for index {idx}")
        object.__setattr__(self, "values", clean)

    @property
    def n(self) -> int:
        return self.degree // 2

    @property
    def is_exact(self) -> bool:
        return all_exact(self.values.values())

    def __getitem__(self, idx) -> Scalar:
        return self.values[tuple(idx)]

    def scale(self) -> float:
        """Magnitude reference for relative tolerances."""
        return max(1.0, max(abs(float(v)) for v in self.values.values()))


def multisequence_combine(parts: Sequence, coeffs: Sequence) -> Multisequence:
    """Scalar linear combination of multisequences of equal shape."""
    if not parts:
        raise ValueError("need at least one multisequence")
    d, degree = parts[0].d, parts[0].degree
    for p in parts:
        if (p.d, p.degree) != (d, degree):
            raise ValueError("multisequence shapes differ")
    values = {}
    for idx in monomial_basis(d, degree):
        total = Fraction(0)
        for part, c in zip(parts, coeffs):
            total = total + ensure_scalar(c) * part[idx]
        values[idx] = total
    return Multisequence(d, degree, values)


def riesz(beta: Multisequence, p: Polynomial) -> Scalar:
    """Apply the Riesz functional of *beta* to *p*."""
    if p.d != beta.d:
        raise ValueError(f"dimension mismatch: {p.d} vs {beta.d}")
    if p.degree > beta.degree:
        raise ValueError(
            f"polynomial degree {p.degree} exceeds data degree {beta.degree}")
    total: Scalar = Fraction(0)
    for idx, coeff in p.terms.items():
        total = total + coeff * beta[idx]
    return total


# ---------------------------------------------------------------------------
# moment matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MomentMatrix:
    """M(n): rows/columns indexed by monomials of degree <= n."""

    beta: Multisequence
    n: int
    basis: tuple  # MultiIndex labels, degree-lex
    rows: tuple   # square array of Scalars

    @property
    def d(self) -> int:
        return self.beta.d

    @property
    def size(self) -> int:
        return len(self.basis)

    @property
    def is_exact(self) -> bool:
        return all(all_exact(row) for row in self.rows)

    def entry(self, i: int, j: int) -> Scalar:
        return self.rows[i][j]

    def apply(self, p: Polynomial) -> list:
        """M(n) times the coefficient vector of *p* in the matrix basis."""
        vec = [p.coefficient(idx) for idx in self.basis]
        extra = {idx for idx in p.terms if idx not in set(self.basis)}
        if extra:
            raise ValueError(f"polynomial has monomials outside basis: {extra}")
        return _linalg.mat_vec(self.rows, vec)


def build_moment_matrix(beta: Multisequence, n: Optional[int] = None) -> MomentMatrix:
    """Assemble M(n) from *beta* (n defaults to degree/2)."""
    if n is None:
        n = beta.n
    if 2 * n > beta.degree:
        raise ValueError(f"need moments up to degree {2 * n}, have {beta.degree}")
    basis = tuple(monomial_basis(beta.d, n))
    rows = []
    for i in basis:
        row = []
        for j in basis:
            idx = tuple(a + b for a, b in zip(i, j))
            row.append(beta[idx])
        rows.append(tuple(row))
    matrix = MomentMatrix(beta, n, basis, tuple(rows))
    _assert_hankel(matrix)
    return matrix


def _assert_hankel(matrix: MomentMatrix) -> None:
    """Entries must depend on the row+column index sum only."""
    seen = {}
    for i, bi in enumerate(matrix.basis):
        for j, bj in enumerate(matrix.basis):
            key = tuple(a + b for a, b in zip(bi, bj))
            if key in seen:
                assert seen[key] == matrix.rows[i][j], \
                    f"Hankel violation at index sum {key}"
            else:
                seen[key] = matrix.rows[i][j]


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PsdVerdict:
    status: str  # "PSD" | "NotPSD"
    witness: Optional[Polynomial] = None  # Lambda(witness^2) < 0 when NotPSD
    value: Optional[Scalar] = None

    @property
    def ok(self) -> bool:
        return self.status == "PSD"


@dataclass(frozen=True)
class KernelReport:
    d: int
    n: int
    basis: tuple   # matrix column labels
    rank: int
    pivots: tuple  # pivot monomials (MultiIndex), the first independent columns
    kernel: tuple  # Polynomials in delta form: unit coefficient on a free monomial

    @property
    def nullity(self) -> int:
        return len(self.kernel)


@dataclass(frozen=True)
class RecursivenessVerdict:
    status: str  # "RecursivelyGenerated" | "Violation"
    violation: Optional[tuple] = None  # (p, multiplier, product)

    @property
    def ok(self) -> bool:
        return self.status == "RecursivelyGenerated"


@dataclass(frozen=True)
class FlatnessVerdict:
    flat: bool
    rank: int
    rank_previous: int


def psd_check(matrix: MomentMatrix,
              pol: TolerancePolicy = DEFAULT_POLICY) -> PsdVerdict:
    """Decide M(n) >= 0; NotPSD carries a polynomial witness with
    Lambda(witness^2) < 0 (exact witness in exact mode)."""
    if matrix.is_exact:
        ok, vec = _linalg.psd_exact(matrix.rows)
    else:
        ok, vec = _linalg.psd_float(matrix.rows, pol.rank)
    if ok:
        return PsdVerdict("PSD")
    witness = Polynomial(matrix.d, dict(zip(matrix.basis, vec)))
    value = _linalg.dot(vec, _linalg.mat_vec(matrix.rows, vec))
    return PsdVerdict("NotPSD", witness, value)


def rank_kernel(matrix: MomentMatrix,
                pol: TolerancePolicy = DEFAULT_POLICY) -> KernelReport:
    """Rank, pivot monomials (first independent columns in degree-lex), and a
    kernel basis in delta form."""
    reduction = _linalg.row_reduce(matrix.rows, pol.rank)
    pivots = tuple(matrix.basis[j] for j in reduction.pivots)
    kernel = []
    for vec in reduction.kernel_basis():
        kernel.append(Polynomial(matrix.d, dict(zip(matrix.basis, vec))))
    return KernelReport(matrix.d, matrix.n, matrix.basis,
                        reduction.rank, pivots, tuple(kernel))


def recursiveness_check(matrix: MomentMatrix, report: KernelReport,
                        pol: TolerancePolicy = DEFAULT_POLICY
                        ) -> RecursivenessVerdict:
    """Check that p in ker M(n) forces (u*p) in ker M(n) for every monomial u
    with deg(u*p) <= n."""
    scale = max(1.0, max(abs(float(matrix.entry(i, j)))
                         for i in range(matrix.size)
                         for j in range(matrix.size)))
    for p in report.kernel:
        room = matrix.n - int(p.degree)
        for u_idx in monomial_basis(matrix.d, room):
            if total_degree(u_idx) == 0:
                continue
            u = Polynomial.monomial(matrix.d, u_idx)
            product = u * p
            image = matrix.apply(product)
            if matrix.is_exact and product.is_exact:
                bad = any(x != 0 for x in image)
            else:
                bad = any(abs(float(x)) > pol.residual * scale for x in image)
            if bad:
                return RecursivenessVerdict("Violation", (p, u, product))
    return RecursivenessVerdict("RecursivelyGenerated")


def flatness_check(matrix: MomentMatrix,
                   pol: TolerancePolicy = DEFAULT_POLICY) -> FlatnessVerdict:
    """Compare rank M(n) with rank of the embedded M(n-1) block."""
    if matrix.n < 1:
        raise ValueError("flatness needs n >= 1")
    rank_n = rank_kernel(matrix, pol).rank
    prev_size = len(monomial_basis(matrix.d, matrix.n - 1))
    block = [row[:prev_size] for row in matrix.rows[:prev_size]]
    rank_prev = _linalg.row_reduce(block, pol.rank).rank
    return FlatnessVerdict(rank_n == rank_prev, rank_n, rank_prev)


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

def load_multisequence(path, mode: Optional[str] = None) -> Multisequence:
    """Read the moments file format: {"d", "degree", "moments": [{"idx", "value"}]}.

    Values parse as exact rationals ("p/q", integers) or floats (decimals);
    mode "exact"/"float" forces the scalar type.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read moments file {path}: {exc}") from exc
    for key in ("d", "degree", "moments"):
        if key not in data:
            raise InputError(f"moments file {path}: missing key {key!r}")
    values = {}
    for item in data["moments"]:
        if "idx" not in item or "value" not in item:
            raise InputError(f"moments file {path}: entry needs idx and value")
        idx = tuple(item["idx"])
        if idx in values:
            raise InputError(f"moments file {path}: duplicate index {idx}")
        values[idx] = parse_scalar(item["value"], mode) \
            if isinstance(item["value"], str) else ensure_scalar(item["value"])
    return Multisequence(int(data["d"]), int(data["degree"]), values)


def dump_multisequence(beta: Multisequence, path) -> None:
    moments = [
        {"idx": list(idx), "value": format_scalar(beta[idx])}
        for idx in monomial_basis(beta.d, beta.degree)
    ]
    payload = {"d": beta.d, "degree": beta.degree, "moments": moments}
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")
