"""
Weyl group actions on polynomials in the coroot coordinates

Two actions of the simple reflections on S(h) are provided:

- the linear action, the algebra automorphism h_j -> h_j - alpha_i(h_j) h_i;
- the dot action, (s_i.p)(lambda) = p(s_i.lambda) with s_i.lambda the reflection
  translated by rho, i.e. h_j -> h_j - alpha_i(h_j) (h_i + 1).

The shift theta(p)(lambda) = p(lambda + rho) intertwines them:
s_i.theta(q) = theta(s_i q).
"""

import logging
from enum import Enum
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Any, Dict, List, Sequence, Tuple

from algebra.exact import Poly
from algebra.linear import nullspace_of_rows
from lie.root_system import RootSystem
from utils.error_handler import InternalConsistencyError, UsageError

logger = logging.getLogger(__name__)


class ActionKind(Enum):
    """Which action of the simple reflections to use."""
    LINEAR = "linear"
    DOT = "dot"


class Direction(Enum):
    FORWARD = "forward"
    INVERSE = "inverse"


def _kind(kind: Any) -> ActionKind:
    try:
        return kind if isinstance(kind, ActionKind) else ActionKind(str(kind).lower())
    except ValueError as e:
        raise UsageError(f"Unknown action kind {kind!r}", "kind", kind) from e


@lru_cache(maxsize=None)
def _reflection_images(rs: RootSystem, kind: ActionKind, i: int) -> Tuple[Poly, ...]:
    h = Poly.variables(rs.rank)
    shift = h[i] + 1 if kind == ActionKind.DOT else h[i]
    return tuple(h[j] - shift * rs.cartan[j][i] for j in range(rs.rank))


def _check(rs: RootSystem, i: int, p: Poly):
    if not isinstance(i, int) or not 0 <= i < rs.rank:
        raise UsageError(f"Simple index {i} out of range for {rs.lie_type}", "index", i)
    if p.rank != rs.rank:
        raise UsageError(f"Polynomial of rank {p.rank} for {rs.lie_type}", "rank", p.rank)


def act_simple(rs: RootSystem, kind: Any, i: int, p: Poly) -> Poly:
    """Apply the simple reflection s_i to ``p`` through the chosen action."""
    _check(rs, i, p)
    return p.substitute(_reflection_images(rs, _kind(kind), i))


def act_word(rs: RootSystem, kind: Any, word: Sequence[int], p: Poly) -> Poly:
    """Apply s_{w_1} ... s_{w_k} to ``p``, rightmost reflection first."""
    for i in reversed(list(word)):
        p = act_simple(rs, kind, i, p)
    return p


def theta(p: Poly, direction: Any = Direction.FORWARD) -> Poly:
    """theta: h_i -> h_i + 1 for every i; the inverse shifts by -1."""
    try:
        direction = direction if isinstance(direction, Direction) else Direction(str(direction).lower())
    except ValueError as e:
        raise UsageError(f"Unknown theta direction {direction!r}", "direction", direction) from e
    step = 1 if direction == Direction.FORWARD else -1
    return p.substitute([h + step for h in Poly.variables(p.rank)])


def theta_inverse(p: Poly) -> Poly:
    return theta(p, Direction.INVERSE)


def psi(rs: RootSystem, n: int, i: int) -> Poly:
    """psi_{n,i} = h_i (h_i - 1) ... (h_i - (n - 1)); psi_{0,i} = 1."""
    if not isinstance(n, int) or n < 0:
        raise UsageError(f"psi needs a non-negative integer, got {n!r}", "n", n)
    h = Poly.variable(rs.rank, i)
    result = Poly.one(rs.rank)
    for m in range(1, n + 1):
        result = result * (h - (m - 1))
    return result


def bgg(rs: RootSystem, i: int, f: Poly) -> Poly:
    """
    Divided difference A_i f = (f - s_i f) / h_i with the linear action.

    Raises:
        InternalConsistencyError: If h_i does not divide f - s_i f
    """
    numerator = f - act_simple(rs, ActionKind.LINEAR, i, f)
    quotient = numerator.divide_exact(Poly.variable(rs.rank, i))
    if quotient is None:
        raise InternalConsistencyError(f"h{i + 1} does not divide f - s_{i + 1} f for f = {f}", "bgg")
    return quotient


def eq2_check(rs: RootSystem, n: int, i: int, q: Poly) -> bool:
    """
    Decide whether q = (psi_{n,i} / s_i.psi_{n,i}) s_i.q as rational functions.

    Two routes are evaluated: the cross-multiplied identity
    q * s_i.psi = psi * s_i.q, and the criterion "psi divides q with a dot-invariant
    quotient". They must agree.

    Raises:
        InternalConsistencyError: If the routes disagree
    """
    factor = psi(rs, n, i)
    reflected = act_simple(rs, ActionKind.DOT, i, factor)
    cross = q * reflected == factor * act_simple(rs, ActionKind.DOT, i, q)

    quotient = q.divide_exact(factor)
    divisible = quotient is not None and act_simple(rs, ActionKind.DOT, i, quotient) == quotient

    if cross != divisible:
        raise InternalConsistencyError(
            f"psi-quotient routes disagree for n={n}, i={i + 1}, q={q}", "eq2",
            {"cross_multiplied": cross, "divisibility": divisible})
    return cross


# =============================================================================
# Invariant polynomials
# =============================================================================

def monomials_of_degree(rank: int, degree: int) -> List[Tuple[int, ...]]:
    """Exponent vectors of the given total degree, deglex descending."""
    result = []
    for combo in combinations_with_replacement(range(rank), degree):
        exponents = [0] * rank
        for k in combo:
            exponents[k] += 1
        result.append(tuple(exponents))
    return sorted(result, reverse=True)


def monomials_up_to(rank: int, degree: int) -> List[Tuple[int, ...]]:
    """All exponent vectors of total degree <= ``degree``, deglex descending."""
    result = []
    for d in range(degree, -1, -1):
        result.extend(monomials_of_degree(rank, d))
    return result


@lru_cache(maxsize=None)
def _linear_invariants(rs: RootSystem, degree: int) -> Tuple[Poly, ...]:
    monomials = monomials_of_degree(rs.rank, degree)
    rows: Dict[Tuple[int, Tuple[int, ...]], Dict[int, Any]] = {}
    for column, monomial in enumerate(monomials):
        p = Poly.from_terms(rs.rank, {monomial: 1})
        for i in range(rs.rank):
            difference = act_simple(rs, ActionKind.LINEAR, i, p) - p
            for term, coefficient in difference.terms().items():
                rows.setdefault((i, term), {})[column] = coefficient
    basis = nullspace_of_rows(rows.values(), len(monomials))
    return tuple(Poly.from_terms(rs.rank, dict(zip(monomials, vector))) for vector in basis)


def w_invariants(rs: RootSystem, degree: int, kind: Any = ActionKind.LINEAR) -> List[Poly]:
    """
    Basis of the W-invariant polynomials of a given degree.

    For the linear action these are homogeneous; the dot-invariants are their theta
    images (same degree, no longer homogeneous).
    """
    if degree < 0:
        return []
    basis = list(_linear_invariants(rs, degree))
    if _kind(kind) == ActionKind.DOT:
        return [theta(p) for p in basis]
    return basis


def invariant_dimension_series(rs: RootSystem, dmax: int) -> List[int]:
    """dim of the degree-d linear W-invariants for d = 0..dmax."""
    return [len(w_invariants(rs, d)) for d in range(dmax + 1)]


def count_weighted_monomials(weights: Sequence[int], degree: int) -> int:
    """Number of monomials in variables of the given positive weights with weighted degree exactly ``degree``."""
    if degree < 0:
        return 0
    counts = [1] + [0] * degree
    for weight in weights:
        for d in range(weight, degree + 1):
            counts[d] += counts[d - weight]
    return counts[degree]
