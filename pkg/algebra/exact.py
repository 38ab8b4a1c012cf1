"""
Exact scalars, polynomials and restricted rational functions

This module is the arithmetic substrate of the engine. Everything is exact: scalars are
elements of sympy's rational field ``QQ`` and polynomials are elements of a sparse
sympy polynomial ring over ``QQ`` in the coroot coordinates h1, ..., hl.

The ring elements are wrapped in :class:`Poly` so that values are immutable, carry
their rank explicitly, print canonically (degree-lexicographic, h1 > h2 > ...) and
refuse to mix ranks silently.

:class:`LinearFraction` covers the only rational functions the Zhelobenko calculus
needs: a polynomial numerator over a product of univariate linear factors (hi + k).
Fractions are kept maximally cancelled, which makes the stored form canonical.

Indices of variables are 0-based in the API; the printed form uses h1..hl.

Example:
    >>> h1, h2 = Poly.variables(2)
    >>> str((h1 + 2) * (h1 - 1))
    'h1^2 + h1 - 2'
"""

import logging
import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ, sympify
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import CoercionFailed, ExactQuotientFailed
from sympy.polys.rings import ring

from utils.error_handler import DimensionMismatchError, UsageError

logger = logging.getLogger(__name__)

# Degree of the zero polynomial.
NEG_INFINITY = -math.inf

Monomial = Tuple[int, ...]


# =============================================================================
# Scalars
# =============================================================================

def to_scalar(value: Any):
    """
    Convert a value to an exact rational (an element of ``QQ``).

    Accepts ints, ``fractions.Fraction``, sympy rationals, ``QQ`` elements and
    strings of the form ``"p"`` or ``"p/q"``.

    Raises:
        UsageError: For floats, booleans or malformed literals
    """
    if isinstance(value, (bool, float)):
        raise UsageError(f"Inexact or non-numeric scalar rejected: {value!r}", "scalar", value)
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        try:
            parsed = Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise UsageError(f"Malformed rational literal: {value!r}", "scalar", value) from e
        return QQ(parsed.numerator, parsed.denominator)
    try:
        return QQ.convert(value)
    except CoercionFailed as e:
        raise UsageError(f"Cannot interpret {value!r} as a rational", "scalar", value) from e


def format_scalar(value: Any) -> str:
    """Render a rational as ``"p/q"``, or ``"p"`` when it is an integer."""
    q = to_scalar(value)
    numerator, denominator = int(q.numerator), int(q.denominator)
    if denominator == 1:
        return str(numerator)
    return f"{numerator}/{denominator}"


def parse_scalar(text: str):
    """Inverse of :func:`format_scalar`."""
    return to_scalar(str(text))


@lru_cache(maxsize=None)
def _poly_ring(rank: int):
    if rank < 1:
        raise UsageError(f"Polynomial rank must be positive, got {rank}", "rank", rank)
    names = ",".join(f"h{i + 1}" for i in range(rank))
    poly_ring, *_ = ring(names, QQ, grlex)
    return poly_ring


def _monomial_key(monomial: Monomial) -> Tuple[int, Monomial]:
    return (sum(monomial), monomial)


# =============================================================================
# Polynomials
# =============================================================================

class Poly:
    """
    Immutable polynomial in h1..hl with rational coefficients.

    Supports ``+``, ``-``, ``*`` (with polynomials of the same rank or scalars)
    and non-negative integer powers. Equality and hashing are by value.
    """

    __slots__ = ("_rank", "_element")

    def __init__(self, rank: int, element=None):
        poly_ring = _poly_ring(rank)
        self._rank = rank
        self._element = poly_ring.zero if element is None else element

    # ------------------------------------------------------------------ builders

    @classmethod
    def zero(cls, rank: int) -> "Poly":
        return cls(rank)

    @classmethod
    def one(cls, rank: int) -> "Poly":
        return cls.constant(rank, 1)

    @classmethod
    def constant(cls, rank: int, value: Any) -> "Poly":
        return cls(rank, _poly_ring(rank).ground_new(to_scalar(value)))

    @classmethod
    def variable(cls, rank: int, index: int) -> "Poly":
        """The coordinate h_{index+1}."""
        if not 0 <= index < rank:
            raise UsageError(f"Variable index {index} out of range for rank {rank}", "index", index)
        return cls(rank, _poly_ring(rank).gens[index])

    @classmethod
    def variables(cls, rank: int) -> List["Poly"]:
        return [cls.variable(rank, i) for i in range(rank)]

    @classmethod
    def from_terms(cls, rank: int, terms: Dict[Monomial, Any]) -> "Poly":
        """Build from a map exponent-vector -> coefficient; zero coefficients are dropped."""
        poly_ring = _poly_ring(rank)
        cleaned = {}
        for monomial, coeff in terms.items():
            monomial = tuple(int(e) for e in monomial)
            if len(monomial) != rank or any(e < 0 for e in monomial):
                raise DimensionMismatchError(
                    f"Exponent vector {monomial} does not fit rank {rank}", rank, len(monomial))
            value = to_scalar(coeff)
            if value:
                cleaned[monomial] = cleaned.get(monomial, QQ(0)) + value
        cleaned = {m: c for m, c in cleaned.items() if c}
        return cls(rank, poly_ring.from_dict(cleaned) if cleaned else poly_ring.zero)

    @classmethod
    def parse(cls, text: str, rank: int) -> "Poly":
        """Parse the canonical text form (``^`` or ``**`` for powers)."""
        poly_ring = _poly_ring(rank)
        try:
            expression = sympify(text.replace("^", "**"))
            return cls(rank, poly_ring.from_expr(expression))
        except Exception as e:
            raise UsageError(f"Cannot parse polynomial {text!r} in rank {rank}", "polynomial", text) from e

    # ------------------------------------------------------------------ access

    @property
    def rank(self) -> int:
        return self._rank

    def terms(self) -> Dict[Monomial, Any]:
        return dict(self._element.items())

    def sorted_terms(self) -> List[Tuple[Monomial, Any]]:
        """Terms in canonical (deglex, descending) order."""
        return sorted(self._element.items(), key=lambda item: _monomial_key(item[0]), reverse=True)

    def coefficient(self, monomial: Monomial):
        return self._element.get(tuple(monomial), QQ(0))

    @property
    def degree(self):
        """Total degree; ``NEG_INFINITY`` for the zero polynomial."""
        if self.is_zero:
            return NEG_INFINITY
        return max(sum(m) for m in self._element.keys())

    @property
    def is_zero(self) -> bool:
        return not self._element

    @property
    def is_constant(self) -> bool:
        return all(not any(m) for m in self._element.keys())

    def homogeneous_part(self, degree: int) -> "Poly":
        return Poly.from_terms(self._rank, {m: c for m, c in self._element.items() if sum(m) == degree})

    def top_part(self) -> "Poly":
        """Homogeneous component of top degree (zero stays zero)."""
        if self.is_zero:
            return self
        return self.homogeneous_part(self.degree)

    # ------------------------------------------------------------------ arithmetic

    def _coerce(self, other: Any):
        if isinstance(other, Poly):
            if other._rank != self._rank:
                raise DimensionMismatchError(
                    f"Rank mismatch: {self._rank} vs {other._rank}", self._rank, other._rank)
            return other._element
        try:
            return _poly_ring(self._rank).ground_new(to_scalar(other))
        except UsageError:
            return NotImplemented

    def __add__(self, other: Any) -> "Poly":
        element = self._coerce(other)
        if element is NotImplemented:
            return NotImplemented
        return Poly(self._rank, self._element + element)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "Poly":
        element = self._coerce(other)
        if element is NotImplemented:
            return NotImplemented
        return Poly(self._rank, self._element - element)

    def __rsub__(self, other: Any) -> "Poly":
        element = self._coerce(other)
        if element is NotImplemented:
            return NotImplemented
        return Poly(self._rank, element - self._element)

    def __mul__(self, other: Any) -> "Poly":
        element = self._coerce(other)
        if element is NotImplemented:
            return NotImplemented
        return Poly(self._rank, self._element * element)

    __rmul__ = __mul__

    def __neg__(self) -> "Poly":
        return Poly(self._rank, -self._element)

    def __pow__(self, exponent: int) -> "Poly":
        if not isinstance(exponent, int) or exponent < 0:
            raise UsageError(f"Polynomial powers must be non-negative integers, got {exponent!r}")
        return Poly(self._rank, self._element ** exponent)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, Poly):
            return self._rank == other._rank and self._element == other._element
        if isinstance(other, LinearFraction):
            return other == self
        try:
            return self._element == _poly_ring(self._rank).ground_new(to_scalar(other))
        except UsageError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self._rank, frozenset(self._element.items())))

    def divide_exact(self, divisor: "Poly") -> Optional["Poly"]:
        """
        Exact quotient ``self / divisor``.

        Returns:
            Optional[Poly]: The quotient, or ``None`` when the divisor does not divide
            exactly (the NotDivisible outcome, which is not an error).

        Raises:
            UsageError: If the divisor is zero
        """
        other = self._coerce(divisor)
        if not other:
            raise UsageError("Division by the zero polynomial")
        try:
            return Poly(self._rank, self._element.exquo(other))
        except ExactQuotientFailed:
            return None

    # ------------------------------------------------------------------ evaluation

    def evaluate(self, point: Sequence[Any]):
        """Value at the point with the given coroot coordinates."""
        if len(point) != self._rank:
            raise DimensionMismatchError(
                f"Point of length {len(point)} for rank {self._rank}", self._rank, len(point))
        values = [to_scalar(x) for x in point]
        total = QQ(0)
        for monomial, coeff in self._element.items():
            term = coeff
            for value, exponent in zip(values, monomial):
                if exponent:
                    term *= value ** exponent
            total += term
        return total

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Algebra homomorphism h_k -> images[k]; the result has the images' rank."""
        if len(images) != self._rank:
            raise DimensionMismatchError(
                f"{len(images)} images for rank {self._rank}", self._rank, len(images))
        target_rank = images[0].rank
        target_ring = _poly_ring(target_rank)
        powers: Dict[Tuple[int, int], Any] = {}

        def power(k: int, e: int):
            if (k, e) not in powers:
                powers[(k, e)] = images[k]._element ** e
            return powers[(k, e)]

        result = target_ring.zero
        for monomial, coeff in self._element.items():
            term = target_ring.ground_new(coeff)
            for k, exponent in enumerate(monomial):
                if exponent:
                    term = term * power(k, exponent)
            result = result + term
        return Poly(target_rank, result)

    # ------------------------------------------------------------------ text

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        pieces = []
        for position, (monomial, coeff) in enumerate(self.sorted_terms()):
            negative = coeff < 0
            magnitude = -coeff if negative else coeff
            factors = []
            for k, exponent in enumerate(monomial):
                if exponent == 1:
                    factors.append(f"h{k + 1}")
                elif exponent > 1:
                    factors.append(f"h{k + 1}^{exponent}")
            body = "*".join(factors)
            if not body:
                body = format_scalar(magnitude)
            elif magnitude != 1:
                body = f"{format_scalar(magnitude)}*{body}"
            if position == 0:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f" - {body}" if negative else f" + {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, rank={self._rank})"


# =============================================================================
# Restricted rational functions
# =============================================================================

Factor = Tuple[int, Any]


def _factor_poly(rank: int, factor: Factor) -> Poly:
    index, shift = factor
    return Poly.variable(rank, index) + shift


class LinearFraction:
    """
    A rational function ``numerator / prod (h_i + k)``.

    The stored form is maximally cancelled and the factor list sorted, so two
    equal fractions always have identical ``numerator`` and ``denominators``.
    """

    __slots__ = ("numerator", "denominators")

    def __init__(self, numerator: Poly, denominators: Iterable[Factor] = ()):
        factors = []
        for index, shift in denominators:
            if not 0 <= index < numerator.rank:
                raise UsageError(f"Denominator variable {index} out of range", "index", index)
            factors.append((int(index), to_scalar(shift)))
        factors.sort()

        remaining: List[Factor] = []
        current = numerator
        if current.is_zero:
            factors = []
        for factor in factors:
            quotient = current.divide_exact(_factor_poly(current.rank, factor))
            if quotient is None:
                remaining.append(factor)
            else:
                current = quotient
        self.numerator = current
        self.denominators: Tuple[Factor, ...] = tuple(remaining)

    @classmethod
    def from_poly(cls, poly: Poly) -> "LinearFraction":
        return cls(poly)

    @property
    def rank(self) -> int:
        return self.numerator.rank

    @property
    def is_polynomial(self) -> bool:
        return not self.denominators

    def as_poly(self) -> Poly:
        if self.denominators:
            raise UsageError(f"{self} is not a polynomial")
        return self.numerator

    def denominator(self) -> Poly:
        result = Poly.one(self.rank)
        for factor in self.denominators:
            result = result * _factor_poly(self.rank, factor)
        return result

    # ------------------------------------------------------------------ arithmetic

    @staticmethod
    def _lift(value: Any, rank: int) -> "LinearFraction":
        if isinstance(value, LinearFraction):
            return value
        if isinstance(value, Poly):
            return LinearFraction(value)
        return LinearFraction(Poly.constant(rank, value))

    def __add__(self, other: Any) -> "LinearFraction":
        other = self._lift(other, self.rank)
        mine, theirs = Counter(self.denominators), Counter(other.denominators)
        common = mine | theirs
        left = self.numerator
        for factor, count in (common - mine).items():
            left = left * _factor_poly(self.rank, factor) ** count
        right = other.numerator
        for factor, count in (common - theirs).items():
            right = right * _factor_poly(self.rank, factor) ** count
        return LinearFraction(left + right, common.elements())

    __radd__ = __add__

    def __neg__(self) -> "LinearFraction":
        return LinearFraction(-self.numerator, self.denominators)

    def __sub__(self, other: Any) -> "LinearFraction":
        return self + (-self._lift(other, self.rank))

    def __rsub__(self, other: Any) -> "LinearFraction":
        return self._lift(other, self.rank) - self

    def __mul__(self, other: Any) -> "LinearFraction":
        other = self._lift(other, self.rank)
        return LinearFraction(self.numerator * other.numerator,
                              self.denominators + other.denominators)

    __rmul__ = __mul__

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, (LinearFraction, Poly)):
            other = self._lift(other, self.rank)
            return self.numerator == other.numerator and self.denominators == other.denominators
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.numerator, self.denominators))

    def evaluate(self, point: Sequence[Any]):
        value = self.denominator().evaluate(point)
        if not value:
            raise UsageError(f"{self} has a pole at {list(point)}")
        return self.numerator.evaluate(point) / value

    def __str__(self) -> str:
        if not self.denominators:
            return str(self.numerator)
        factors = "*".join(f"({_factor_poly(self.rank, f)})" for f in self.denominators)
        return f"({self.numerator})/{factors}"

    def __repr__(self) -> str:
        return f"LinearFraction({str(self)!r}, rank={self.rank})"
