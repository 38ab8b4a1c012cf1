"""
Zhelobenko operators on the zero-weight part of the adjoint module

An element J = sum_i w_i (x) q_i of h (x) S(h) is stored by its coordinates q_i on the
fundamental weights w_i. The operator xi_i splits every v in h as
v = t alpha_i + v_perp with v_perp(h_i) = 0 and sends

    v (x) q  ->  v_perp (x) s_i.q  -  t alpha_i (x) h_i / (h_i + 2) s_i.q .

Common fixed points of the xi_i are the Harish-Chandra images of the adjoint
invariants. The invariance conditions are turned into a polynomial linear system on
the tuple P_i = theta^-1(q_i / h_i):

    (c + s_i(h_j)) A_i P_j - alpha_i(h_j) (P_i - P_j) = 0      for all i, j,

where c = -1 is the Kostant case, c = +1 its quantum analogue and c = 0 the
symmetric-algebra case. The solver returns the full graded solution space; the
generator extraction then reads off a basis of the free module over the invariants.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from sympy import QQ

from algebra.exact import LinearFraction, Poly, format_scalar, to_scalar
from algebra.linear import SparseRow, nullspace_of_rows, row_reduce
from invariants.weyl_calculus import (
    ActionKind, act_simple, bgg, count_weighted_monomials, monomials_up_to, theta, theta_inverse,
    w_invariants
)
from lie.filtration import exponents as type_exponents
from lie.root_system import RootSystem
from utils.error_handler import DimensionMismatchError, InternalConsistencyError, UsageError, VerificationFailure

logger = logging.getLogger(__name__)

Entry = Union[Poly, LinearFraction]


# =============================================================================
# Data types
# =============================================================================

@dataclass(frozen=True)
class ZeroWeightElement:
    """J = sum_i w_i (x) q_i; entries may be LinearFractions for operator outputs."""

    coords: Tuple[Entry, ...]

    @classmethod
    def from_polys(cls, polys: Sequence[Poly]) -> "ZeroWeightElement":
        if not polys:
            raise UsageError("An element needs at least one coordinate")
        rank = polys[0].rank
        if any(p.rank != rank for p in polys) or len(polys) != rank:
            raise DimensionMismatchError(f"{len(polys)} coordinates of mixed rank", rank, len(polys))
        return cls(tuple(polys))

    @classmethod
    def parse(cls, texts: Sequence[str], rank: int) -> "ZeroWeightElement":
        return cls.from_polys([Poly.parse(t, rank) for t in texts])

    @classmethod
    def coroot_element(cls, rank: int) -> "ZeroWeightElement":
        """sum_i w_i (x) h_i, the degree-one invariant."""
        return cls(tuple(Poly.variables(rank)))

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def is_polynomial(self) -> bool:
        return all(isinstance(q, Poly) or q.is_polynomial for q in self.coords)

    def polys(self) -> Tuple[Poly, ...]:
        return tuple(q if isinstance(q, Poly) else q.as_poly() for q in self.coords)

    @property
    def degree(self):
        return max(q.degree for q in self.polys())

    def __add__(self, other: "ZeroWeightElement") -> "ZeroWeightElement":
        return ZeroWeightElement(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, factor: Any) -> "ZeroWeightElement":
        return ZeroWeightElement(tuple(q * factor for q in self.coords))

    def to_strings(self) -> List[str]:
        return [str(q) for q in self.coords]


@dataclass(frozen=True)
class PTuple:
    """The transformed tuple (P_1, ..., P_l)."""

    entries: Tuple[Poly, ...]

    @classmethod
    def ones(cls, rank: int) -> "PTuple":
        return cls(tuple(Poly.one(rank) for _ in range(rank)))

    @classmethod
    def parse(cls, texts: Sequence[str], rank: int) -> "PTuple":
        return cls(tuple(Poly.parse(t, rank) for t in texts))

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def degree(self):
        return max(p.degree for p in self.entries)

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for p in self.entries)

    def top_part(self) -> "PTuple":
        """Homogeneous component of the tuple's top degree."""
        if self.is_zero:
            return self
        degree = self.degree
        return PTuple(tuple(p.homogeneous_part(degree) for p in self.entries))

    def scale_by(self, f: Poly) -> "PTuple":
        return PTuple(tuple(p * f for p in self.entries))

    def __add__(self, other: "PTuple") -> "PTuple":
        return PTuple(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "PTuple") -> "PTuple":
        return PTuple(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def to_strings(self) -> List[str]:
        return [str(p) for p in self.entries]


@dataclass(frozen=True)
class InvarianceConditions:
    """Truth of the three invariance conditions, with the first failure of each."""
    divisibility_sign: bool
    divisible_invariant_quotient: bool
    cross_relation: bool
    failures: Tuple[str, ...] = ()

    @property
    def all_hold(self) -> bool:
        return self.divisibility_sign and self.divisible_invariant_quotient and self.cross_relation

    def as_tuple(self) -> Tuple[bool, bool, bool]:
        return (self.divisibility_sign, self.divisible_invariant_quotient, self.cross_relation)


def _check_rank(rs: RootSystem, rank: int):
    if rank != rs.rank:
        raise DimensionMismatchError(f"Element of rank {rank} for {rs.lie_type}", rs.rank, rank)


# =============================================================================
# Operators and invariance
# =============================================================================

def xi(rs: RootSystem, i: int, element: ZeroWeightElement) -> ZeroWeightElement:
    """Zhelobenko operator xi_i; the result generally has fractional entries."""
    _check_rank(rs, element.rank)
    rank = rs.rank
    alpha = [QQ(rs.cartan[k][i]) for k in range(rank)]
    ratio = LinearFraction(Poly.variable(rank, i), [(i, 2)])
    result = [LinearFraction(Poly.zero(rank)) for _ in range(rank)]

    for k, q in enumerate(element.polys()):
        if q.is_zero:
            continue
        reflected = act_simple(rs, ActionKind.DOT, i, q)
        t = QQ(1, 2) if k == i else QQ(0)
        for m in range(rank):
            perp = (QQ(1) if m == k else QQ(0)) - t * alpha[m]
            if perp:
                result[m] = result[m] + reflected * perp
            if t * alpha[m]:
                result[m] = result[m] - ratio * reflected * (t * alpha[m])
    return ZeroWeightElement(tuple(result))


def _invariance_residual(rs: RootSystem, q: Sequence[Poly], i: int, k: int) -> Poly:
    """(h_i + 2)(q_k - s_i.q_k) + alpha_i(h_k)(h_i + 1) s_i.q_i; zero iff xi_i fixes coordinate k."""
    h_i = Poly.variable(rs.rank, i)
    return ((h_i + 2) * (q[k] - act_simple(rs, ActionKind.DOT, i, q[k]))
            + (h_i + 1) * act_simple(rs, ActionKind.DOT, i, q[i]) * rs.cartan[k][i])


def cross_relation_residual(rs: RootSystem, q: Sequence[Poly], i: int, j: int) -> Poly:
    """2 (q_j - s_i.q_j) - alpha_i(h_j)(q_i - s_i.q_i)."""
    return ((q[j] - act_simple(rs, ActionKind.DOT, i, q[j])) * 2
            - (q[i] - act_simple(rs, ActionKind.DOT, i, q[i])) * rs.cartan[j][i])


def check_prop33(rs: RootSystem, element: ZeroWeightElement) -> InvarianceConditions:
    """
    Evaluate the three invariance conditions as exact identities:

    (i)   h_i s_i.q_i = -(h_i + 2) q_i for all i;
    (ii)  h_i divides q_i and the quotient is s_i.-invariant;
    (iii) 2 (q_j - s_i.q_j) = alpha_i(h_j) (q_i - s_i.q_i) for all i != j.
    """
    _check_rank(rs, element.rank)
    q = element.polys()
    h = Poly.variables(rs.rank)
    failures = []
    first = second = third = True
    for i in range(rs.rank):
        if h[i] * act_simple(rs, ActionKind.DOT, i, q[i]) != -(h[i] + 2) * q[i]:
            if first:
                failures.append(f"(i) fails at i={i + 1}")
            first = False
        p = q[i].divide_exact(h[i])
        if p is None or act_simple(rs, ActionKind.DOT, i, p) != p:
            if second:
                failures.append(f"(ii) fails at i={i + 1}")
            second = False
        for j in range(rs.rank):
            if j != i and not cross_relation_residual(rs, q, i, j).is_zero:
                if third:
                    failures.append(f"(iii) fails at i={i + 1}, j={j + 1}")
                third = False
    return InvarianceConditions(first, second, third, tuple(failures))


def is_invariant(rs: RootSystem, element: ZeroWeightElement) -> bool:
    """
    True iff xi_i(J) = J for every i.

    Decided by the cross-multiplied identities and independently by the three invariance
    conditions; conditions (i) and (ii) are also required to agree.

    Raises:
        InternalConsistencyError: If any two routes disagree
    """
    _check_rank(rs, element.rank)
    q = element.polys()
    cross = all(_invariance_residual(rs, q, i, k).is_zero
                for i in range(rs.rank) for k in range(rs.rank))
    report = check_prop33(rs, element)
    if report.divisibility_sign != report.divisible_invariant_quotient:
        raise InternalConsistencyError("Conditions (i) and (ii) disagree", "invariance_conditions",
                                       {"element": element.to_strings()})
    by_conditions = report.divisibility_sign and report.cross_relation
    if cross != by_conditions:
        raise InternalConsistencyError("Invariance routes disagree", "is_invariant",
                                       {"element": element.to_strings(), "cross": cross})
    return cross


def multiply_by_invariant(rs: RootSystem, f: Poly, element: ZeroWeightElement) -> ZeroWeightElement:
    """f J; invariants stay invariant when f is dot-invariant."""
    _check_rank(rs, element.rank)
    return ZeroWeightElement(tuple(q * f for q in element.polys()))


# =============================================================================
# The q <-> P transform and the linear system
# =============================================================================

def q_to_P(rs: RootSystem, element: ZeroWeightElement) -> PTuple:
    """
    P_i = theta^-1(q_i / h_i).

    Raises:
        UsageError: If some q_i is not divisible by h_i (J is not invariant)
    """
    _check_rank(rs, element.rank)
    entries = []
    for i, q in enumerate(element.polys()):
        p = q.divide_exact(Poly.variable(rs.rank, i))
        if p is None:
            raise UsageError(f"q_{i + 1} = {q} is not divisible by h{i + 1}; the element is not invariant",
                             "element", element.to_strings())
        entries.append(theta_inverse(p))
    return PTuple(tuple(entries))


def P_to_q(rs: RootSystem, P: PTuple) -> ZeroWeightElement:
    """Inverse of :func:`q_to_P`: q_i = h_i theta(P_i)."""
    _check_rank(rs, P.rank)
    return ZeroWeightElement(tuple(Poly.variable(rs.rank, i) * theta(p) for i, p in enumerate(P.entries)))


def eq9_residual(rs: RootSystem, P: PTuple, c: Any, i: int, j: int) -> Poly:
    """(c + s_i(h_j)) A_i P_j - alpha_i(h_j)(P_i - P_j), linear action for s_i(h_j)."""
    _check_rank(rs, P.rank)
    c = to_scalar(c)
    h = Poly.variables(rs.rank)
    pairing = rs.cartan[j][i]
    reflected = h[j] - h[i] * pairing
    return (reflected + c) * bgg(rs, i, P.entries[j]) - (P.entries[i] - P.entries[j]) * pairing


def p_relation_residual(rs: RootSystem, p: Sequence[Poly], i: int, j: int) -> Poly:
    """h_j (p_j - s_i.p_j) - alpha_i(h_j)(h_i + 1)(p_i - s_i.p_j)."""
    h = Poly.variables(rs.rank)
    reflected = act_simple(rs, ActionKind.DOT, i, p[j])
    return h[j] * (p[j] - reflected) - (h[i] + 1) * (p[i] - reflected) * rs.cartan[j][i]


def shifted_relation_residual(rs: RootSystem, P: Sequence[Poly], i: int, j: int) -> Poly:
    """(h_j - 1)(P_j - s_i P_j) - alpha_i(h_j) h_i (P_i - s_i P_j)."""
    h = Poly.variables(rs.rank)
    reflected = act_simple(rs, ActionKind.LINEAR, i, P[j])
    return (h[j] - 1) * (P[j] - reflected) - h[i] * (P[i] - reflected) * rs.cartan[j][i]


# =============================================================================
# Solver
# =============================================================================

@dataclass(frozen=True)
class SolutionSpace:
    """
    Solutions of the P-system with all entries of degree <= dmax.

    ``rows`` is the reduced echelon basis over the columns ordered by degree
    (descending), then deglex (descending), then component, so the pivot of a row sits
    at its top-degree term.
    """

    rs: RootSystem
    c: Any
    dmax: int
    columns: Tuple[Tuple[Tuple[int, ...], int], ...]
    rows: Tuple[SparseRow, ...]
    pivots: Tuple[int, ...]

    def _column_index(self) -> Dict[Tuple[Tuple[int, ...], int], int]:
        return {column: k for k, column in enumerate(self.columns)}

    def row_degree(self, index: int) -> int:
        return sum(self.columns[self.pivots[index]][0])

    def decode(self, row: SparseRow) -> PTuple:
        terms: List[Dict[Tuple[int, ...], Any]] = [{} for _ in range(self.rs.rank)]
        for column, value in row.items():
            monomial, k = self.columns[column]
            terms[k][monomial] = value
        return PTuple(tuple(Poly.from_terms(self.rs.rank, t) for t in terms))

    def encode(self, P: PTuple) -> SparseRow:
        index = self._column_index()
        row = {}
        for k, entry in enumerate(P.entries):
            for monomial, value in entry.terms().items():
                if (monomial, k) not in index:
                    raise UsageError(f"Degree of {entry} exceeds the solved range {self.dmax}", "dmax", self.dmax)
                row[index[(monomial, k)]] = value
        return row

    def rows_up_to(self, p_degree: int) -> List[SparseRow]:
        return [row for k, row in enumerate(self.rows) if self.row_degree(k) <= p_degree]

    def basis_up_to(self, p_degree: int) -> List[PTuple]:
        """Echelon basis of the solutions with every entry of degree <= ``p_degree``."""
        return [self.decode(row) for row in self.rows_up_to(p_degree)]

    def dimension(self, p_degree: int) -> int:
        return len(self.rows_up_to(p_degree))

    def graded_dimensions(self) -> List[int]:
        return [self.dimension(d) for d in range(self.dmax + 1)]

    def invariants_up_to(self, q_degree: int) -> List[ZeroWeightElement]:
        """Invariants with deg q_i <= q_degree (the q-image of P-degree q_degree - 1)."""
        return [P_to_q(self.rs, P) for P in self.basis_up_to(q_degree - 1)]

    def contains(self, P: PTuple) -> bool:
        reduced, _ = row_reduce(list(self.rows) + [self.encode(P)])
        return len(reduced) == len(self.rows)


@lru_cache(maxsize=None)
def _solve(rs: RootSystem, c, dmax: int) -> SolutionSpace:
    rank = rs.rank
    monomials = monomials_up_to(rank, dmax)
    columns = tuple((m, k) for m in monomials for k in range(rank))
    equations: Dict[Tuple[int, int, Tuple[int, ...]], Dict[int, Any]] = {}

    for column, (monomial, k) in enumerate(columns):
        entries = [Poly.zero(rank)] * rank
        entries[k] = Poly.from_terms(rank, {monomial: 1})
        unit = PTuple(tuple(entries))
        for i in range(rank):
            for j in range(rank):
                if k not in (i, j):
                    continue
                for term, value in eq9_residual(rs, unit, c, i, j).terms().items():
                    equations.setdefault((i, j, term), {})[column] = value

    logger.debug(f"Solving {rs.lie_type} c={format_scalar(c)} dmax={dmax}: "
                 f"{len(equations)} equations in {len(columns)} unknowns")
    basis = nullspace_of_rows(equations.values(), len(columns))
    rows, pivots = row_reduce({k: v for k, v in enumerate(vector) if v} for vector in basis)
    space = SolutionSpace(rs, c, dmax, columns, tuple(rows), tuple(pivots))
    logger.debug(f"Graded dimensions for {rs.lie_type}: {space.graded_dimensions()}")
    return space


def solve_invariants(rs: RootSystem, c: Any = -1, dmax: int = 2) -> SolutionSpace:
    """
    Solve the P-system for all tuples of degree <= dmax.

    Args:
        rs: Root system
        c: The scalar in the denominator family (-1 for the Kostant case)
        dmax: Maximal degree of the P_i

    Returns:
        SolutionSpace: Exact graded echelon basis of the solutions
    """
    if not isinstance(dmax, int) or dmax < 0:
        raise UsageError(f"dmax must be a non-negative integer, got {dmax!r}", "dmax", dmax)
    return _solve(rs, to_scalar(c), dmax)


# =============================================================================
# Generators
# =============================================================================

@dataclass(frozen=True)
class Generator:
    """A free generator of the solution module; q_degree = P-degree + 1."""

    q_degree: int
    p_tuple: PTuple

    @property
    def p_degree(self) -> int:
        return self.q_degree - 1

    def invariant(self, rs: RootSystem) -> ZeroWeightElement:
        return P_to_q(rs, self.p_tuple)

    def to_dict(self) -> Dict[str, Any]:
        return {"q_degree": self.q_degree, "P": self.p_tuple.to_strings()}


def expected_solution_dimension(exponents: Sequence[int], q_degree: int) -> int:
    """
    Dimension of the invariants with deg q_i <= q_degree for a free module with
    generators in degrees m_i over a polynomial ring with generators in degrees m_i + 1.
    """
    weights = [m + 1 for m in exponents]
    total = 0
    for m in exponents:
        for e in range(q_degree - m + 1):
            total += count_weighted_monomials(weights, e)
    return total


def extract_generators(rs: RootSystem, c: Any = -1,
                       expected: Optional[Sequence[int]] = None) -> List[Generator]:
    """
    Free generators of the solution module, in increasing degree.

    In each degree the solutions already produced by lower generators times
    W-invariants are removed; the echelon rows whose pivots remain become new
    generators.

    Raises:
        VerificationFailure: If the generator degrees differ from the exponents
    """
    expected = tuple(sorted(expected if expected is not None else type_exponents(rs.lie_type)))
    dmax = max(expected) - 1
    space = solve_invariants(rs, c, dmax)
    generators: List[Generator] = []

    for d in range(dmax + 1):
        module_rows = []
        for generator in generators:
            for e in range(d - generator.p_degree + 1):
                for f in w_invariants(rs, e):
                    module_rows.append(space.encode(generator.p_tuple.scale_by(f)))
        _, module_pivots = row_reduce(module_rows)
        taken = set(module_pivots)
        for k, row in enumerate(space.rows):
            if space.row_degree(k) == d and space.pivots[k] not in taken:
                generators.append(Generator(d + 1, space.decode(row)))
                logger.debug(f"{rs.lie_type}: generator in q-degree {d + 1}")

    degrees = tuple(sorted(g.q_degree for g in generators))
    if degrees != expected:
        raise VerificationFailure(
            f"Generator degrees {list(degrees)} differ from exponents {list(expected)} for {rs.lie_type}",
            str(rs.lie_type), {"c": format_scalar(c), "degrees": list(degrees), "exponents": list(expected)})
    return generators
