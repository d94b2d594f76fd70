"""Synthesis of moment data: atomic combinations, signed functionals with a
first-order derivation term, and the complex unit-circle family with its
transform to real planar moments.

Complex moments gamma[(i, j)] carry the conjugate exponent first:
gamma[(i, j)] applies the underlying functional to conj(z)^i * z^j.  Values
are (real, imaginary) scalar pairs so that exact rational data stays exact
through the transform.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .moments import Multisequence
from .polycore import (
    InputError,
    Polynomial,
    Scalar,
    ensure_scalar,
    format_scalar,
    is_exact,
    monomial_basis,
    parse_scalar,
)


# ---------------------------------------------------------------------------
# atomic combinations and signed functionals
# ---------------------------------------------------------------------------

def moments_of_atoms(d: int, degree: int, atoms, densities) -> dict:
    """Raw moment dict of a finitely-atomic (possibly signed) combination."""
    values = {}
    for idx in monomial_basis(d, degree):
        total: Scalar = Fraction(0)
        for w, rho in zip(atoms, densities):
            term = ensure_scalar(rho)
            for x, e in zip(w, idx):
                if e:
                    term = term * ensure_scalar(x)**e
            total = total + term
        values[idx] = total
    return values


def beta_from_atoms(atoms: Sequence, densities: Sequence,
                    d: Optional[int] = None,
                    degree: int = 2) -> Multisequence:
    """Moments through the given degree of sum(densities[i] * delta at
    atoms[i]); negative weights are allowed (signed combinations)."""
    if not atoms:
        raise ValueError("need at least one atom")
    if len(atoms) != len(densities):
        raise ValueError("atoms and densities differ in length")
    if d is None:
        d = len(atoms[0])
    return Multisequence(d, degree, moments_of_atoms(d, degree, atoms, densities))


@dataclass(frozen=True)
class Derivation:
    """First-order term a0 * <direction, grad p>(point)."""

    point: tuple
    direction: tuple
    a0: Scalar = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "point",
                           tuple(ensure_scalar(x) for x in self.point))
        object.__setattr__(self, "direction",
                           tuple(ensure_scalar(x) for x in self.direction))
        object.__setattr__(self, "a0", ensure_scalar(self.a0))

    def apply(self, p: Polynomial) -> Scalar:
        total: Scalar = Fraction(0)
        for i, c in enumerate(self.direction):
            if c != 0:
                total = total + c * p.partial(i).evaluate(self.point)
        return self.a0 * total


@dataclass(frozen=True)
class SignedFunctional:
    """sum_i weights[i] * evaluation at atoms[i], plus an optional
    derivation term."""

    d: int
    atoms: tuple
    weights: tuple
    derivation: Optional[Derivation] = None

    def __post_init__(self):
        if len(self.atoms) != len(self.weights):
            raise ValueError("atoms and weights differ in length")
        object.__setattr__(self, "atoms",
                           tuple(tuple(ensure_scalar(x) for x in w)
                                 for w in self.atoms))
        object.__setattr__(self, "weights",
                           tuple(ensure_scalar(w) for w in self.weights))

    def apply(self, p: Polynomial) -> Scalar:
        total: Scalar = Fraction(0)
        for w, weight in zip(self.atoms, self.weights):
            total = total + weight * p.evaluate(w)
        if self.derivation is not None:
            total = total + self.derivation.apply(p)
        return total


def beta_from_functional(functional: SignedFunctional,
                         degree: int) -> Multisequence:
    """Moments of a signed functional through the given degree."""
    values = {}
    for idx in monomial_basis(functional.d, degree):
        values[idx] = functional.apply(
            Polynomial.monomial(functional.d, idx))
    return Multisequence(functional.d, degree, values)


# ---------------------------------------------------------------------------
# complex family on the unit circle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexMomentData:
    """Complex moments gamma[(i, j)] = functional of conj(z)^i z^j for
    i + j <= 2n, stored as (real, imag) scalar pairs; must be hermitian."""

    n: int
    values: Mapping

    def __post_init__(self):
        clean = {}
        for key, pair in self.values.items():
            i, j = int(key[0]), int(key[1])
            if i < 0 or j < 0 or i + j > 2 * self.n:
                raise InputError(f"bad complex moment index {(i, j)}")
            re, im = pair
            clean[(i, j)] = (ensure_scalar(re), ensure_scalar(im))
        for i in range(2 * self.n + 1):
            for j in range(2 * self.n + 1 - i):
                if (i, j) not in clean:
                    raise InputError(f"missing complex moment {(i, j)}")
                re, im = clean[(i, j)]
                re2, im2 = clean[(j, i)]
                if re != re2 or im != -im2:
                    raise InputError(
                        f"complex moments are not hermitian at {(i, j)}")
        object.__setattr__(self, "values", clean)

    def __getitem__(self, key):
        return self.values[tuple(key)]


def example14_gamma(n: int, a) -> ComplexMomentData:
    """The one-parameter circle family: gamma_ii = 1, the two conjugate
    extremes gamma_{0,2n-1} = gamma_{2n-1,0} = a and gamma_{0,2n} =
    gamma_{2n,0} = 1 - a^2, everything else zero."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a = ensure_scalar(a)
    zero = (Fraction(0), Fraction(0))
    values = {}
    for i in range(2 * n + 1):
        for j in range(2 * n + 1 - i):
            values[(i, j)] = zero
    for i in range(n + 1):
        values[(i, i)] = (Fraction(1), Fraction(0))
    values[(0, 2 * n - 1)] = (a, Fraction(0))
    values[(2 * n - 1, 0)] = (a, Fraction(0))
    values[(0, 2 * n)] = (1 - a * a, Fraction(0))
    values[(2 * n, 0)] = (1 - a * a, Fraction(0))
    return ComplexMomentData(n, values)


def _rotate_neg_i(pair, times: int):
    """Multiply the complex pair by (-i)^times."""
    re, im = pair
    for _ in range(times % 4):
        re, im = im, -re
    return re, im


def complex_to_real(gamma: ComplexMomentData) -> Multisequence:
    """Real moments of x = (z + conj z)/2, y = (z - conj z)/(2i).

    beta[(k, j)] = 2^-(k+j) * (-i)^j * sum_{s,t} C(k,s) C(j,t) (-1)^(j-t)
                   gamma[(k-s)+(j-t), s+t]; hermitian data makes every
    imaginary part vanish, which is asserted.
    """
    n = gamma.n
    values = {}
    for k, j in monomial_basis(2, 2 * n):
        re_acc, im_acc = Fraction(0), Fraction(0)
        for s in range(k + 1):
            for t in range(j + 1):
                c = math.comb(k, s) * math.comb(j, t) * (-1) ** (j - t)
                re, im = gamma[((k - s) + (j - t), s + t)]
                re_acc = re_acc + c * re
                im_acc = im_acc + c * im
        re_acc, im_acc = _rotate_neg_i((re_acc, im_acc), j)
        scale = Fraction(1, 2 ** (k + j))
        re_acc, im_acc = scale * re_acc, scale * im_acc
        if is_exact(im_acc):
            if im_acc != 0:
                raise InputError(
                    f"transform of non-hermitian data: residual imaginary "
                    f"part at beta[{(k, j)}]")
        elif abs(float(im_acc)) > 1e-9 * max(1.0, abs(float(re_acc))):
            raise InputError(
                f"transform of non-hermitian data: residual imaginary "
                f"part at beta[{(k, j)}]")
        values[(k, j)] = re_acc
    return Multisequence(2, 2 * n, values)


def complex_moment_matrix(gamma: ComplexMomentData):
    """Complex M(n): rows/columns labelled by (a, b) for z^a conj(z)^b with
    a + b <= n (degree-lex); entry[(a,b),(c,d)] = gamma[(a+d, b+c)].
    Returns (labels, rows of (re, im) pairs) for cross-checks."""
    labels = monomial_basis(2, gamma.n)
    rows = []
    for (a, b) in labels:
        row = []
        for (c, d) in labels:
            row.append(gamma[(a + d, b + c)])
        rows.append(tuple(row))
    return tuple(labels), tuple(rows)


# ---------------------------------------------------------------------------
# functional file format
# ---------------------------------------------------------------------------

def load_functional(path, mode: Optional[str] = None) -> SignedFunctional:
    """Read {"d", "atoms", "weights", "derivation"?: {"a0", "point",
    "direction"}} with scalar strings."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read functional file {path}: {exc}") from exc
    for key in ("d", "atoms", "weights"):
        if key not in data:
            raise InputError(f"functional file {path}: missing key {key!r}")
    d = int(data["d"])

    def scal(x):
        return parse_scalar(x, mode) if isinstance(x, str) else ensure_scalar(x)

    atoms = []
    for raw in data["atoms"]:
        if len(raw) != d:
            raise InputError(f"functional file {path}: atom {raw} wrong arity")
        atoms.append(tuple(scal(x) for x in raw))
    weights = tuple(scal(x) for x in data["weights"])
    derivation = None
    if data.get("derivation") is not None:
        block = data["derivation"]
        for key in ("a0", "point", "direction"):
            if key not in block:
                raise InputError(
                    f"functional file {path}: derivation needs {key!r}")
        derivation = Derivation(
            tuple(scal(x) for x in block["point"]),
            tuple(scal(x) for x in block["direction"]),
            scal(block["a0"]))
    return SignedFunctional(d, tuple(atoms), weights, derivation)


def dump_functional(functional: SignedFunctional, path) -> None:
    payload = {
        "d": functional.d,
        "atoms": [[format_scalar(x) if is_exact(x) else repr(float(x))
                   for x in w] for w in functional.atoms],
        "weights": [format_scalar(x) if is_exact(x) else repr(float(x))
                    for x in functional.weights],
    }
    if functional.derivation is not None:
        der = functional.derivation
        payload["derivation"] = {
            "a0": format_scalar(der.a0) if is_exact(der.a0)
            else repr(float(der.a0)),
            "point": [format_scalar(x) if is_exact(x) else repr(float(x))
                      for x in der.point],
            "direction": [format_scalar(x) if is_exact(x) else repr(float(x))
                          for x in der.direction],
        }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")
