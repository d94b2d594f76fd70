"""The extremal solver: rank M(n) = card variety, unique atomic candidate.

Pipeline: positivity of M(n), rank/kernel, variety of the kernel, the
extremal comparison r = v, then the Vandermonde system V_B rho = Lambda(B)
over the pivot basis.  The candidate measure is accepted only after its
moments interpolate the full data; by uniqueness in the extremal case a
verified candidate is *the* representing measure, and a failed interpolation
is converted into an inconsistency witness.

Exact moment data keeps the whole chain in rational arithmetic: irrational
variety coordinates enter as rational midpoints of isolating intervals
refined to width REFINE_WIDTH, so even densities near 1e-10 keep their sign.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import _linalg
from .consistency import consistency_check, reduced_consistency_test
from .moments import (
    DEFAULT_POLICY,
    KernelReport,
    Multisequence,
    PsdVerdict,
    REFINE_WIDTH,
    TolerancePolicy,
    build_moment_matrix,
    psd_check,
    rank_kernel,
    riesz,
)
from .polycore import (
    InputError,
    Point,
    Polynomial,
    Scalar,
    all_exact,
    ensure_scalar,
    format_scalar,
    is_exact,
    monomial_basis,
    parse_scalar,
)
from .synth import moments_of_atoms
from .variety import (
    VarietyReport,
    _residual_ok,
    compute_variety,
    injectivity_check,
    vandermonde_VB,
)



@dataclass(frozen=True)
class AtomicMeasure:
    d: int
    atoms: tuple
    densities: tuple

    def __post_init__(self):
        if len(self.atoms) != len(self.densities):
            raise ValueError("atoms and densities differ in length")
        object.__setattr__(self, "atoms",
                           tuple(tuple(ensure_scalar(x) for x in w)
                                 for w in self.atoms))
        object.__setattr__(self, "densities",
                           tuple(ensure_scalar(r) for r in self.densities))

    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def is_exact(self) -> bool:
        return all(all_exact(w) for w in self.atoms) \
            and all_exact(self.densities)


@dataclass(frozen=True)
class VerificationReport:
    residual: float
    ok: bool
    exact: bool  # residual is identically zero in rational arithmetic
    worst_index: Optional[tuple] = None


@dataclass(frozen=True)
class SolveReport:
    status: str  # "Measure" | "NoMeasure" | "NotExtremal" | "Unknown"
    rank: Optional[int] = None
    v: Optional[float] = None  # int, math.inf, or None
    measure: Optional[AtomicMeasure] = None
    residual: Optional[float] = None
    witness: Optional[Polynomial] = None
    value: Optional[Scalar] = None
    reason: Optional[str] = None
    variety: Optional[VarietyReport] = None
    kernel: Optional[KernelReport] = None
    psd: Optional[PsdVerdict] = None
    basis: tuple = ()


def verify_measure(beta: Multisequence, measure: AtomicMeasure,
               pol: TolerancePolicy = DEFAULT_POLICY) -> VerificationReport:
    """Compare the moments of the measure against beta on every index."""
    if measure.d != beta.d:
        raise ValueError("dimension mismatch between measure and data")
    predicted = moments_of_atoms(beta.d, beta.degree,
                                 measure.atoms, measure.densities)
    residual = 0.0
    worst = None
    exact = True
    for idx, value in predicted.items():
        diff = value - beta[idx]
        if not (is_exact(diff) and diff == 0):
            exact = False
        err = abs(float(diff))
        if err > residual:
            residual = err
            worst = idx
    ok = residual <= pol.residual * beta.scale()
    return VerificationReport(residual, ok, exact, worst)


def solve_extremal(beta: Multisequence,
                   pol: TolerancePolicy = DEFAULT_POLICY,
                   points: Optional[Sequence[Point]] = None,
                   basis: Optional[Sequence] = None) -> SolveReport:
    """Decide solvability in the extremal case and recover the measure."""
    matrix = build_moment_matrix(beta)
    psd = psd_check(matrix, pol)
    if not psd.ok:
        return SolveReport("NoMeasure", reason="NotPSD",
                           witness=psd.witness, value=psd.value, psd=psd)
    kernel_report = rank_kernel(matrix, pol)
    r = kernel_report.rank

    if points is not None:
        variety = _adopt_points(kernel_report, points, pol)
    elif kernel_report.nullity == 0:
        return SolveReport("NotExtremal", rank=r, v=math.inf,
                           reason="M(n) is invertible, so the variety is "
                                  "all of R^d",
                           kernel=kernel_report, psd=psd)
    elif beta.d <= 2:
        width = REFINE_WIDTH if all(p.is_exact for p in kernel_report.kernel) \
            else None
        variety = compute_variety(list(kernel_report.kernel), pol, width=width)
    else:
        return SolveReport("Unknown", rank=r,
                           reason="d >= 3 requires user-supplied variety "
                                  "points",
                           kernel=kernel_report, psd=psd)

    if variety.status == "Infinite":
        return SolveReport("NotExtremal", rank=r, v=math.inf,
                           reason="infinite variety",
                           witness=variety.witness,
                           variety=variety, kernel=kernel_report, psd=psd)
    if variety.status == "Unknown":
        return SolveReport("Unknown", rank=r, reason=variety.reason,
                           variety=variety, kernel=kernel_report, psd=psd)
    v = len(variety.points)
    if v != r:
        return SolveReport("NotExtremal", rank=r, v=v,
                           reason=f"rank {r} != variety cardinality {v}",
                           variety=variety, kernel=kernel_report, psd=psd)

    basis_elems = tuple(basis) if basis is not None else kernel_report.pivots
    if len(basis_elems) != r:
        raise ValueError(f"basis must have {r} elements, got {len(basis_elems)}")
    vb = vandermonde_VB(basis_elems, variety.points, pol)
    if not vb.invertible:
        inj = injectivity_check(kernel_report, variety.points, pol)
        return SolveReport("NoMeasure", rank=r, v=v, reason="SingularVB",
                           witness=inj.witness,
                           variety=variety, kernel=kernel_report, psd=psd)
    lam = [riesz(beta, b) for b in vb.basis]
    try:
        densities = _linalg.solve_linear(vb.rows, lam)
    except _linalg.SingularMatrixError:
        return SolveReport("NoMeasure", rank=r, v=v, reason="SingularVB",
                           variety=variety, kernel=kernel_report, psd=psd)
    measure = AtomicMeasure(beta.d, variety.points, tuple(densities))
    verification = verify_measure(beta, measure, pol)
    if not verification.ok:
        return _interpolation_failure(beta, variety, verification,
                                      r, v, kernel_report, psd, pol)
    if any(float(rho) <= 0 for rho in densities):
        return SolveReport("Unknown", rank=r, v=v,
                           residual=verification.residual,
                           reason="interpolation verified but a density is "
                                  "nonpositive; numerically inconclusive",
                           variety=variety, kernel=kernel_report, psd=psd)
    return SolveReport("Measure", rank=r, v=v, measure=measure,
                       residual=verification.residual,
                       variety=variety, kernel=kernel_report, psd=psd,
                       basis=tuple(vb.basis))


def _adopt_points(kernel_report: KernelReport, points, pol) -> VarietyReport:
    adopted = []
    mask = []
    for w in points:
        w = tuple(ensure_scalar(x) for x in w)
        point_exact = all_exact(w) \
            and all(p.is_exact for p in kernel_report.kernel)
        for p in kernel_report.kernel:
            if not _residual_ok(p, w, pol, point_exact):
                raise InputError(
                    f"supplied point {tuple(float(x) for x in w)} does not "
                    f"satisfy kernel relation {p}")
        adopted.append(w)
        mask.append(point_exact)
    return VarietyReport("Finite", tuple(adopted), tuple(mask))


def _interpolation_failure(beta, variety, verification, r, v,
                           kernel_report, psd, pol) -> SolveReport:
    reduced = reduced_consistency_test(beta, pol)
    if reduced.status == "NoMeasure":
        return SolveReport("NoMeasure", rank=r, v=v,
                           residual=verification.residual,
                           reason="Inconsistent",
                           witness=reduced.witness, value=reduced.value,
                           variety=variety, kernel=kernel_report, psd=psd)
    cons = consistency_check(beta, variety, pol)
    if cons.status == "Inconsistent":
        return SolveReport("NoMeasure", rank=r, v=v,
                           residual=verification.residual,
                           reason="Inconsistent",
                           witness=cons.witness, value=cons.value,
                           variety=variety, kernel=kernel_report, psd=psd)
    return SolveReport("Unknown", rank=r, v=v,
                       residual=verification.residual,
                       reason="interpolation failed without an "
                              "inconsistency witness",
                       variety=variety, kernel=kernel_report, psd=psd)


# ---------------------------------------------------------------------------
# measure file format
# ---------------------------------------------------------------------------

def load_measure(path, mode: Optional[str] = None) -> AtomicMeasure:
    """Read {"d": d, "atoms": [{"point": [...], "density": ...}]}."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read measure file {path}: {exc}") from exc
    if "d" not in data or "atoms" not in data:
        raise InputError(f"measure file {path}: missing 'd' or 'atoms'")
    d = int(data["d"])
    atoms = []
    densities = []
    for entry in data["atoms"]:
        if "point" not in entry or "density" not in entry:
            raise InputError(
                f"measure file {path}: atoms need point and density")
        point = entry["point"]
        if len(point) != d:
            raise InputError(f"measure file {path}: point {point} wrong arity")
        atoms.append(tuple(
            parse_scalar(x, mode) if isinstance(x, str) else ensure_scalar(x)
            for x in point))
        raw = entry["density"]
        densities.append(parse_scalar(raw, mode) if isinstance(raw, str)
                         else ensure_scalar(raw))
    return AtomicMeasure(d, tuple(atoms), tuple(densities))


def dump_measure(measure: AtomicMeasure, path) -> None:
    payload = {
        "d": measure.d,
        "atoms": [
            {
                "point": [_scalar_repr(x) for x in w],
                "density": _scalar_repr(rho),
            }
            for w, rho in zip(measure.atoms, measure.densities)
        ],
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")


def _scalar_repr(x: Scalar) -> str:
    # Refined approximants carry astronomically long exact denominators;
    # serialize those as shortest round-trip decimals instead.
    if is_exact(x) and x.denominator < 10**12:
        return format_scalar(x)
    return repr(float(x))
