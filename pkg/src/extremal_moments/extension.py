"""Rank-preserving and recursively generated extensions M(n) -> M(n+1).

Propagation treats every kernel element p as a column relation that must
persist: for each monomial u with deg(u*p) <= n+1 and each row monomial t of
degree <= n+1, the functional must annihilate t*u*p.  A worklist solves these
equations for the unknown degree 2n+1 and 2n+2 moments; a moment is
well defined only when *every* derivation path agrees, and a disagreement is
a certificate that no representing measure exists (a measure supported on
the kernel's variety would satisfy all paths).  The extended matrix is
rebuilt from the extended multisequence, which re-asserts the Hankel
property on every run.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import _linalg
from .moments import (
    DEFAULT_POLICY,
    FlatnessVerdict,
    KernelReport,
    MomentMatrix,
    Multisequence,
    PsdVerdict,
    TolerancePolicy,
    build_moment_matrix,
    flatness_check,
    psd_check,
    rank_kernel,
)
from .polycore import (
    MultiIndex,
    Polynomial,
    Scalar,
    all_exact,
    is_exact,
    monomial_basis,
    total_degree,
)
from .synth import Derivation, moments_of_atoms


@dataclass(frozen=True)
class ExtensionReport:
    source_n: int
    well_defined: bool
    conflicts: tuple      # (kernel poly, multiplier idx, row idx, value)
    undetermined: tuple   # moment indices left undetermined
    beta_ext: Optional[Multisequence] = None
    matrix: Optional[MomentMatrix] = None
    flat: Optional[FlatnessVerdict] = None
    psd: Optional[PsdVerdict] = None


@dataclass(frozen=True)
class FlatExtensionVerdict:
    compression_ok: bool
    flat: bool
    rank_n: int
    rank_n1: int


@dataclass(frozen=True)
class TightnessVerdict:
    status: str  # "Tight" | "NotTight" | "Inconclusive"
    dim_next: int   # dim of the degree <= n+1 kernel of M(n+1)
    bound: int      # rank of the monomial-multiple span of ker M(n)
    witness: Optional[Polynomial] = None
    value: Optional[Scalar] = None
    reason: Optional[str] = None


@dataclass(frozen=True)
class ExtensionSearchReport:
    steps: tuple
    status: str  # "FlatAt" | "IllDefined" | "Undetermined" | "NotPSD" | "Exhausted"
    flat_level: Optional[int] = None
    beta_final: Optional[Multisequence] = None


def extend_via_measure(measure, m: int) -> MomentMatrix:
    """M(m) of the moments of a finitely-atomic measure (PSD by
    construction when the densities are nonnegative)."""
    values = moments_of_atoms(measure.d, 2 * m, measure.atoms,
                              measure.densities)
    beta = Multisequence(measure.d, 2 * m, values)
    return build_moment_matrix(beta)


def propagate_recursive_extension(matrix: MomentMatrix,
                                  report: KernelReport,
                                  pol: TolerancePolicy = DEFAULT_POLICY
                                  ) -> ExtensionReport:
    """Determine the degree 2n+1 and 2n+2 moments forced by the column
    relations, checking that all derivation paths agree."""
    d, n = matrix.d, matrix.n
    beta = matrix.beta
    known = dict(beta.values)
    exact = beta.is_exact and all(p.is_exact for p in report.kernel)

    equations = []
    for p in report.kernel:
        dp = int(p.degree)
        for u_idx in monomial_basis(d, n + 1 - dp):
            relation = Polynomial.monomial(d, u_idx) * p
            for t_idx in monomial_basis(d, n + 1):
                product = Polynomial.monomial(d, t_idx) * relation
                equations.append((dict(product.terms), (p, u_idx, t_idx)))

    changed = True
    while changed:
        changed = False
        for coeffs, _source in equations:
            missing = [idx for idx in coeffs if idx not in known]
            if len(missing) != 1:
                continue
            target = missing[0]
            c0 = coeffs[target]
            if not is_exact(c0) and abs(float(c0)) <= pol.rank:
                continue
            rest: Scalar = Fraction(0)
            for idx, c in coeffs.items():
                if idx != target:
                    rest = rest + c * known[idx]
            known[target] = -rest / c0
            changed = True

    wanted = [idx for idx in monomial_basis(d, 2 * n + 2)
              if total_degree(idx) > 2 * n]
    undetermined = tuple(idx for idx in wanted if idx not in known)

    scale = max(1.0, max((abs(float(v)) for v in known.values()), default=1.0))
    conflicts = []
    for coeffs, source in equations:
        if any(idx not in known for idx in coeffs):
            continue
        value: Scalar = Fraction(0)
        for idx, c in coeffs.items():
            value = value + c * known[idx]
        if exact and is_exact(value):
            bad = value != 0
        else:
            bad = abs(float(value)) > pol.residual * scale
        if bad:
            conflicts.append((*source, value))

    well_defined = not conflicts and not undetermined
    beta_ext = None
    matrix_ext = None
    flat = None
    psd = None
    if not undetermined:
        beta_ext = Multisequence(d, 2 * n + 2, known)
        matrix_ext = build_moment_matrix(beta_ext)  # re-asserts Hankel
        flat = flatness_check(matrix_ext, pol)
        psd = psd_check(matrix_ext, pol)
    return ExtensionReport(n, well_defined, tuple(conflicts), undetermined,
                           beta_ext, matrix_ext, flat, psd)


def flat_extension_check(m_n: MomentMatrix, m_n1: MomentMatrix,
                         pol: TolerancePolicy = DEFAULT_POLICY
                         ) -> FlatExtensionVerdict:
    """Is M(n+1) a rank-preserving extension of M(n)?  Verifies both the
    compression (top-left block equals M(n)) and rank equality."""
    if m_n1.n != m_n.n + 1 or m_n1.d != m_n.d:
        raise ValueError("expected matrices at consecutive degrees")
    size = m_n.size
    compression_ok = True
    scale = max(1.0, max(abs(float(m_n.entry(i, j)))
                         for i in range(size) for j in range(size)))
    for i in range(size):
        for j in range(size):
            diff = m_n1.entry(i, j) - m_n.entry(i, j)
            if is_exact(diff):
                if diff != 0:
                    compression_ok = False
            elif abs(float(diff)) > pol.residual * scale:
                compression_ok = False
    rank_n = rank_kernel(m_n, pol).rank
    rank_n1 = rank_kernel(m_n1, pol).rank
    return FlatExtensionVerdict(compression_ok,
                                compression_ok and rank_n == rank_n1,
                                rank_n, rank_n1)


def tightness_check(m_n: MomentMatrix, m_n1: MomentMatrix,
                    pol: TolerancePolicy = DEFAULT_POLICY,
                    derivation: Optional[Derivation] = None
                    ) -> TightnessVerdict:
    """Compare the degree <= n+1 kernel of M(n+1) against the span of
    monomial multiples of ker M(n) (a lower bound for the degree-(n+1) part
    of the generated ideal).  Equality certifies tightness.  A supplied
    derivation that annihilates every kernel element of M(n) but not some
    kernel element of M(n+1) certifies the opposite."""
    k_n = rank_kernel(m_n, pol)
    k_n1 = rank_kernel(m_n1, pol)
    dim_next = k_n1.nullity
    basis_n1 = m_n1.basis
    span_rows = []
    for p in k_n.kernel:
        dp = int(p.degree)
        for u_idx in monomial_basis(m_n.d, m_n.n + 1 - dp):
            q = Polynomial.monomial(m_n.d, u_idx) * p
            span_rows.append([q.coefficient(idx) for idx in basis_n1])
    bound = _linalg.row_reduce(span_rows, pol.rank).rank if span_rows else 0

    witness = None
    value = None
    if derivation is not None:
        valid = True
        for p in k_n.kernel:
            at_point = p.evaluate(derivation.point)
            derived = derivation.apply(p)
            if abs(float(at_point)) > pol.residual \
                    or abs(float(derived)) > pol.residual:
                valid = False
                break
        if valid:
            for q in k_n1.kernel:
                derived = derivation.apply(q)
                if abs(float(derived)) > pol.residual:
                    witness = q
                    value = derived
                    break
        else:
            derivation = None  # unusable witness generator

    if witness is not None:
        # A tight extension cannot coexist with a derivation witness.
        assert bound < dim_next, \
            "derivation witness contradicts an exact tightness bound"
        return TightnessVerdict("NotTight", dim_next, bound, witness, value)
    if bound == dim_next:
        return TightnessVerdict("Tight", dim_next, bound)
    return TightnessVerdict(
        "Inconclusive", dim_next, bound,
        reason="monomial-multiple span is smaller than the kernel and no "
               "derivation witness was supplied" if derivation is None
        else "derivation annihilates every kernel element of M(n+1)")


def extension_search(beta: Multisequence, max_steps: int = 3,
                     pol: TolerancePolicy = DEFAULT_POLICY
                     ) -> ExtensionSearchReport:
    """Iterate recursive propagation until a flat extension, a certificate,
    or exhaustion of the step budget."""
    current = beta
    steps = []
    for _ in range(max_steps):
        matrix = build_moment_matrix(current)
        report = rank_kernel(matrix, pol)
        if report.nullity == 0:
            return ExtensionSearchReport(
                tuple(steps), "Undetermined", None, current)
        ext = propagate_recursive_extension(matrix, report, pol)
        steps.append(ext)
        if ext.conflicts:
            return ExtensionSearchReport(tuple(steps), "IllDefined",
                                         None, current)
        if ext.undetermined:
            return ExtensionSearchReport(tuple(steps), "Undetermined",
                                         None, current)
        if ext.psd is not None and not ext.psd.ok:
            return ExtensionSearchReport(tuple(steps), "NotPSD",
                                         None, ext.beta_ext)
        if ext.flat is not None and ext.flat.flat:
            return ExtensionSearchReport(tuple(steps), "FlatAt",
                                         matrix.n + 1, ext.beta_ext)
        current = ext.beta_ext
    return ExtensionSearchReport(tuple(steps), "Exhausted", None, current)
