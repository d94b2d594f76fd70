"""Scalars, multi-indices, and sparse multivariate polynomials.

Scalars are either exact rationals (``fractions.Fraction``) or IEEE doubles
(``float``).  Arithmetic between two exact scalars stays exact; any float
operand demotes the result to float, so exactness is a property one can read
off the values themselves (see :func:`is_exact`).

Monomials are represented by exponent tuples (``MultiIndex``); polynomials are
sparse maps from exponent tuples to scalar coefficients.  All orderings use
*degree-lex*: ascending total degree, and within a degree descending powers of
the first variable, then the second, and so on.  For two variables this lists
``1, X, Y, X^2, XY, Y^2, ...``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

Scalar = Union[Fraction, float]
MultiIndex = tuple  # tuple[int, ...]
Point = tuple  # tuple[Scalar, ...]

#: Degree of the zero polynomial.  A genuine minus infinity so that degree
#: comparisons (max, <=) behave; never confuse with a valid degree.
MINUS_INFINITY = float("-inf")


class InputError(ValueError):
    """Malformed user-supplied data (files, CLI arguments)."""


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

def ensure_scalar(value) -> Scalar:
    """Normalize *value* to a Scalar (ints become exact rationals)."""
    if isinstance(value, bool):
        raise InputError(f"not a scalar: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    raise InputError(f"not a scalar: {value!r}")


def is_exact(value: Scalar) -> bool:
    """True when *value* carries exact (rational) provenance."""
    return isinstance(value, (Fraction, int)) and not isinstance(value, bool)


def all_exact(values: Iterable[Scalar]) -> bool:
    return all(is_exact(v) for v in values)


def parse_scalar(text: str, mode: str | None = None) -> Scalar:
    """Parse a scalar from its file/CLI representation.

    ``"p/q"`` and integer strings are exact; strings with a decimal point or
    exponent are floats by default.  ``mode="exact"`` converts decimal strings
    to the exact rational they denote; ``mode="float"`` forces a double.
    """
    if not isinstance(text, str):
        return ensure_scalar(text)
    text = text.strip()
    if mode not in (None, "exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    try:
        if "/" in text:
            value: Scalar = Fraction(text)
        elif _is_integer_literal(text):
            value = Fraction(int(text))
        else:
            # decimal / scientific literal
            if mode == "exact":
                value = Fraction(Decimal(text))
            else:
                value = float(text)
                if not math.isfinite(value):
                    raise InputError(f"non-finite scalar: {text!r}")
    except (ValueError, ZeroDivisionError, InvalidOperation) as exc:
        raise InputError(f"cannot parse scalar {text!r}") from exc
    if mode == "float":
        return float(value)
    return value


def _is_integer_literal(text: str) -> bool:
    body = text[1:] if text[:1] in "+-" else text
    return body.isdigit()


def format_scalar(value: Scalar) -> str:
    """Deterministic file/CLI representation (round-trips via parse_scalar)."""
    value = ensure_scalar(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return repr(value)


def scalar_to_float(value: Scalar) -> float:
    return float(value)


# ---------------------------------------------------------------------------
# multi-indices
# ---------------------------------------------------------------------------

def total_degree(idx: MultiIndex) -> int:
    return sum(idx)


def _compositions(total: int, parts: int) -> Iterator[tuple]:
    """Exponent tuples of a given total degree, descending lexicographically."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def monomial_basis(d: int, k: int) -> list:
    """All exponent tuples with ``|idx| <= k`` in degree-lex order."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if k < 0:
        raise ValueError("k must be >= 0")
    basis = []
    for t in range(k + 1):
        basis.extend(_compositions(t, d))
    return basis


def basis_size(d: int, k: int) -> int:
    """Number of monomials in d variables of total degree <= k."""
    return math.comb(k + d, d)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial: exponent tuple -> nonzero scalar coefficient."""

    d: int
    terms: Mapping

    def __post_init__(self):
        clean = {}
        for idx, coeff in self.terms.items():
            idx = tuple(int(e) for e in idx)
            if len(idx) != self.d or any(e < 0 for e in idx):
                raise ValueError(f"bad exponent tuple {idx} for d={self.d}")
            coeff = ensure_scalar(coeff)
            if coeff != 0:
                clean[idx] = coeff
        object.__setattr__(self, "terms", clean)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(d: int) -> "Polynomial":
        return Polynomial(d, {})

    @staticmethod
    def constant(d: int, c) -> "Polynomial":
        return Polynomial(d, {(0,) * d: c})

    @staticmethod
    def monomial(d: int, idx: MultiIndex, c=1) -> "Polynomial":
        return Polynomial(d, {tuple(idx): c})

    @staticmethod
    def variable(d: int, i: int) -> "Polynomial":
        idx = [0] * d
        idx[i] = 1
        return Polynomial(d, {tuple(idx): 1})

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self):
        """Total degree; MINUS_INFINITY for the zero polynomial."""
        if not self.terms:
            return MINUS_INFINITY
        return max(total_degree(idx) for idx in self.terms)

    @property
    def is_exact(self) -> bool:
        return all_exact(self.terms.values())

    def coefficient(self, idx: MultiIndex) -> Scalar:
        return self.terms.get(tuple(idx), Fraction(0))

    def sorted_terms(self) -> list:
        """(idx, coeff) pairs in ascending degree-lex order."""
        return sorted(
            self.terms.items(),
            key=lambda item: (total_degree(item[0]), tuple(-e for e in item[0])),
        )

    def leading_form(self) -> "Polynomial":
        """Homogeneous part of highest total degree (zero poly for zero)."""
        if not self.terms:
            return self
        top = self.degree
        return Polynomial(
            self.d,
            {idx: c for idx, c in self.terms.items() if total_degree(idx) == top},
        )

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_dim(other)
        terms = dict(self.terms)
        for idx, c in other.terms.items():
            terms[idx] = terms.get(idx, 0) + c
        return Polynomial(self.d, terms)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.d, {idx: -c for idx, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check_dim(other)
            terms: dict = {}
            for i1, c1 in self.terms.items():
                for i2, c2 in other.terms.items():
                    idx = tuple(a + b for a, b in zip(i1, i2))
                    terms[idx] = terms.get(idx, 0) + c1 * c2
            return Polynomial(self.d, terms)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = ensure_scalar(c)
        return Polynomial(self.d, {idx: c * v for idx, v in self.terms.items()})

    def evaluate(self, point: Sequence) -> Scalar:
        if len(point) != self.d:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.d}")
        point = [ensure_scalar(x) for x in point]
        total: Scalar = Fraction(0)
        for idx, coeff in self.terms.items():
            value = coeff
            for x, e in zip(point, idx):
                if e:
                    value = value * x**e
            total = total + value
        return total

    def partial(self, i: int) -> "Polynomial":
        if not 0 <= i < self.d:
            raise ValueError(f"variable index {i} out of range for d={self.d}")
        terms: dict = {}
        for idx, coeff in self.terms.items():
            e = idx[i]
            if e == 0:
                continue
            new_idx = idx[:i] + (e - 1,) + idx[i + 1:]
            terms[new_idx] = terms.get(new_idx, 0) + e * coeff
        return Polynomial(self.d, terms)

    def _check_dim(self, other: "Polynomial") -> None:
        if self.d != other.d:
            raise ValueError(f"dimension mismatch: {self.d} vs {other.d}")

    def __str__(self) -> str:
        return poly_to_string(self)


# -- module-level operation aliases -----------------------------------------

def poly_eval(p: Polynomial, point: Sequence) -> Scalar:
    """Evaluate *p* at *point* (exact iff every operand is exact)."""
    return p.evaluate(point)


def poly_arith(op: str, p: Polynomial, other) -> Polynomial:
    """Ring operations: ``op`` is ``"add"``, ``"sub"``, ``"mul"`` or ``"scale"``."""
    if op == "add":
        return p + other
    if op == "sub":
        return p - other
    if op == "mul":
        return p * other
    if op == "scale":
        return p.scale(other)
    raise ValueError(f"unknown op {op!r}")


def poly_partial(p: Polynomial, i: int) -> Polynomial:
    """Partial derivative with respect to variable *i* (0-based)."""
    return p.partial(i)


# ---------------------------------------------------------------------------
# coefficient vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoefficientVector:
    """Dense coefficients of a polynomial in the degree-lex monomial basis."""

    d: int
    bound: int
    values: tuple

    def __post_init__(self):
        expected = basis_size(self.d, self.bound)
        if len(self.values) != expected:
            raise ValueError(
                f"coefficient vector has {len(self.values)} entries, "
                f"expected {expected} for d={self.d}, bound={self.bound}"
            )
        object.__setattr__(
            self, "values", tuple(ensure_scalar(v) for v in self.values)
        )


def poly_to_vector(p: Polynomial, bound: int) -> CoefficientVector:
    if p.degree > bound:
        raise ValueError(f"polynomial degree {p.degree} exceeds bound {bound}")
    basis = monomial_basis(p.d, bound)
    return CoefficientVector(
        p.d, bound, tuple(p.coefficient(idx) for idx in basis)
    )


def vector_to_poly(v: CoefficientVector) -> Polynomial:
    basis = monomial_basis(v.d, v.bound)
    return Polynomial(v.d, dict(zip(basis, v.values)))


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

_VAR_NAMES_2D = ("X", "Y")


def monomial_to_string(idx: MultiIndex) -> str:
    """Human-readable monomial: for d=2 the Y-power is written first,
    e.g. (1, 2) -> ``Y^2X``, matching the column labels of moment matrices."""
    idx = tuple(idx)
    if not any(idx):
        return "1"
    d = len(idx)
    if d == 1:
        names = ("X",)
        order = (0,)
    elif d == 2:
        names = _VAR_NAMES_2D
        order = (1, 0)  # Y before X
    else:
        names = tuple(f"X{i + 1}" for i in range(d))
        order = tuple(range(d))
    parts = []
    for i in order:
        e = idx[i]
        if e == 0:
            continue
        parts.append(names[i] if e == 1 else f"{names[i]}^{e}")
    return "".join(parts)


def poly_to_string(p: Polynomial) -> str:
    """Deterministic rendering, terms in ascending degree-lex order."""
    if p.is_zero:
        return "0"
    pieces = []
    for idx, coeff in p.sorted_terms():
        mono = monomial_to_string(idx)
        if isinstance(coeff, Fraction):
            negative = coeff < 0
            mag = -coeff if negative else coeff
            if mono == "1":
                body = format_scalar(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_scalar(mag)}{mono}" if mag.denominator == 1 \
                    else f"({format_scalar(mag)}){mono}"
        else:
            negative = coeff < 0
            mag = abs(coeff)
            body = format_scalar(mag) if mono == "1" else f"{format_scalar(mag)}{mono}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)
