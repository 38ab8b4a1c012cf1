"""
Root systems of the simple Lie algebras

Builds, for every simple type A-G, the Cartan matrix (Bourbaki numbering), the positive
roots by closing the simple roots under simple reflections, the invariant form with
long roots of squared length 2, and the change-of-basis matrices between the
fundamental-weight basis and the simple-root basis.

Conventions:
    - ``cartan[i][j] = alpha_j(h_i)``: row i pairs every simple root against the
      simple coroot h_i.
    - Roots are integer vectors in the simple-root basis.
    - Weights carry an explicit basis tag; coordinates in the fundamental-weight basis
      are the values on the simple coroots.
"""

import logging
import re
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, List, Sequence, Tuple

from sympy import QQ

from algebra.exact import format_scalar, to_scalar
from algebra.linear import ExactMatrix
from utils.error_handler import DimensionMismatchError, InternalConsistencyError, UsageError

logger = logging.getLogger(__name__)

Root = Tuple[int, ...]

TYPE_PATTERN = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*$")


# =============================================================================
# Lie types
# =============================================================================

def _rank_allowed(family: str, rank: int) -> bool:
    return {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[family]


@dataclass(frozen=True, order=True)
class LieType:
    """A simple Lie type such as A2 or G2."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in "ABCDEFG" or len(self.family) != 1:
            raise UsageError(f"Unknown Lie family {self.family!r}", "type", self.family)
        if not isinstance(self.rank, int) or not _rank_allowed(self.family, self.rank):
            raise UsageError(f"Illegal rank {self.rank} for family {self.family}", "type",
                             f"{self.family}{self.rank}")

    @classmethod
    def parse(cls, text: str) -> "LieType":
        """Parse strings like ``"A2"`` or ``"g2"``."""
        if isinstance(text, LieType):
            return text
        match = TYPE_PATTERN.match(str(text))
        if not match:
            raise UsageError(f"Malformed Lie type {text!r}", "type", text)
        return cls(match.group(1).upper(), int(match.group(2)))

    @property
    def is_simply_laced(self) -> bool:
        return self.family in "ADE"

    def dual(self) -> "LieType":
        swap = {"B": "C", "C": "B"}
        return LieType(swap.get(self.family, self.family), self.rank)

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def _connect(matrix: List[List[int]], i: int, j: int, long_to_short: int = 1):
    """Join nodes i (long side) and j; ``long_to_short`` is the bond multiplicity."""
    matrix[i][j] = -1
    matrix[j][i] = -long_to_short


def cartan_matrix(lie_type: LieType) -> Tuple[Tuple[int, ...], ...]:
    """Cartan matrix in Bourbaki numbering, ``C[i][j] = alpha_j(h_i)``."""
    family, n = lie_type.family, lie_type.rank
    matrix = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    if family in "ABC":
        for i in range(n - 2):
            _connect(matrix, i, i + 1)
        if n >= 2:
            _connect(matrix, n - 2, n - 1, 2 if family in "BC" else 1)
        if family == "C":
            matrix = [list(row) for row in zip(*matrix)]
    elif family == "D":
        for i in range(n - 2):
            _connect(matrix, i, i + 1)
        _connect(matrix, n - 3, n - 1)
    elif family == "E":
        for i, j in [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]:
            if j < n:
                _connect(matrix, i, j)
    elif family == "F":
        _connect(matrix, 0, 1)
        _connect(matrix, 1, 2, 2)
        _connect(matrix, 2, 3)
    elif family == "G":
        # alpha_1 short
        _connect(matrix, 1, 0, 3)

    return tuple(tuple(row) for row in matrix)


# =============================================================================
# Weights
# =============================================================================

class Basis(Enum):
    """Coordinate systems for elements of h*."""
    FUNDAMENTAL = "fundamental"
    ROOT = "root"
    COROOT = "coroot"


@dataclass(frozen=True)
class Weight:
    """An element of h* with exact coordinates in an explicitly named basis."""

    coords: Tuple[Any, ...]
    basis: Basis = Basis.FUNDAMENTAL

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(to_scalar(c) for c in self.coords))
        if not isinstance(self.basis, Basis):
            raise UsageError(f"Weight basis must be a Basis, got {self.basis!r}", "basis", self.basis)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def _check(self, other: "Weight"):
        if self.basis != other.basis or self.rank != other.rank:
            raise DimensionMismatchError(
                f"Cannot combine weights in {self.basis.value}/{other.basis.value} bases",
                (self.basis.value, self.rank), (other.basis.value, other.rank))

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)), self.basis)

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)), self.basis)

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords), self.basis)

    def scale(self, factor: Any) -> "Weight":
        factor = to_scalar(factor)
        return Weight(tuple(factor * a for a in self.coords), self.basis)

    def is_zero(self) -> bool:
        return not any(self.coords)


# =============================================================================
# Root systems
# =============================================================================

def _reflect_root(cartan: Sequence[Sequence[int]], i: int, root: Root) -> Root:
    pairing = sum(cartan[i][j] * root[j] for j in range(len(root)))
    return tuple(b - pairing if k == i else b for k, b in enumerate(root))


def _close_under_reflections(cartan: Sequence[Sequence[int]]) -> List[Root]:
    n = len(cartan)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        root = queue.popleft()
        for i in range(n):
            image = _reflect_root(cartan, i, root)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return sorted(seen)


def _symmetrizer(cartan: Sequence[Sequence[int]]) -> Tuple[Any, ...]:
    """d with (alpha_i, alpha_j) = d_i * C[i][j], normalized so max d_i = 1."""
    n = len(cartan)
    d: List[Any] = [None] * n
    d[0] = QQ(1)
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(n):
            if j != i and cartan[i][j] and d[j] is None:
                d[j] = d[i] * QQ(cartan[i][j], cartan[j][i])
                queue.append(j)
    if any(value is None for value in d):
        raise UsageError("Cartan matrix is not connected")
    top = max(d)
    return tuple(value / top for value in d)


class RootSystem:
    """
    Root datum of a simple Lie algebra.

    Attributes:
        lie_type: The Lie type (for a Langlands dual, the dual type)
        cartan: Integer matrix with ``cartan[i][j] = alpha_j(h_i)``
        positive_roots: Positive roots in the simple-root basis, by height then lex
        symmetrizer: d_i = (alpha_i, alpha_i) / 2
        form: Gram matrix of the invariant form on the simple roots
        root_to_weight: Simple-root coordinates -> fundamental-weight coordinates
        weight_to_root: The inverse change of basis
    """

    def __init__(self, lie_type: LieType, cartan: Sequence[Sequence[int]]):
        self.lie_type = lie_type
        self.cartan: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(x) for x in row) for row in cartan)
        self.rank = len(self.cartan)
        if self.rank != lie_type.rank:
            raise DimensionMismatchError(
                f"Cartan matrix of size {self.rank} for {lie_type}", lie_type.rank, self.rank)

        roots = _close_under_reflections(self.cartan)
        positive = [r for r in roots if all(x >= 0 for x in r)]
        self.positive_roots: Tuple[Root, ...] = tuple(sorted(positive, key=lambda r: (sum(r), r)))
        self.symmetrizer = _symmetrizer(self.cartan)
        self.form = ExactMatrix.from_rows(
            [[self.symmetrizer[i] * self.cartan[i][j] for j in range(self.rank)]
             for i in range(self.rank)])
        self.root_to_weight = ExactMatrix.from_rows(self.cartan)
        self.weight_to_root = self.root_to_weight.inverse()
        self._root_set = frozenset(self.positive_roots) | frozenset(
            tuple(-x for x in r) for r in self.positive_roots)
        self._validate()
        logger.debug(f"Built root system {lie_type}: {len(self.positive_roots)} positive roots")

    def _validate(self):
        n = self.rank
        for i in range(n):
            if self.cartan[i][i] != 2:
                raise InternalConsistencyError(f"Cartan diagonal entry {i} is not 2", "cartan")
            for j in range(n):
                if i != j and self.cartan[i][j] > 0:
                    raise InternalConsistencyError(f"Positive off-diagonal Cartan entry ({i},{j})", "cartan")
        if self.form != self.form.transpose():
            raise InternalConsistencyError("Invariant form is not symmetric", "form")
        expected = len(self._root_set) // 2
        if len(self.positive_roots) != expected:
            raise InternalConsistencyError("Root closure is not symmetric under negation", "roots")

    # ------------------------------------------------------------------ identity

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, RootSystem):
            return NotImplemented
        return self.lie_type == other.lie_type and self.cartan == other.cartan

    def __hash__(self) -> int:
        return hash((self.lie_type, self.cartan))

    def __repr__(self) -> str:
        return f"RootSystem({self.lie_type}, positive_roots={len(self.positive_roots)})"

    # ------------------------------------------------------------------ roots

    @property
    def roots(self) -> Tuple[Root, ...]:
        return self.positive_roots + tuple(tuple(-x for x in r) for r in self.positive_roots)

    def is_root(self, vector: Sequence[int]) -> bool:
        return tuple(vector) in self._root_set

    @staticmethod
    def height(root: Sequence[int]) -> int:
        return sum(root)

    @property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    def root_pairing(self, root: Sequence[int], i: int) -> int:
        """gamma(h_i) for gamma in simple-root coordinates."""
        return sum(self.cartan[i][j] * root[j] for j in range(self.rank))

    def reflect_root(self, i: int, root: Sequence[int]) -> Root:
        return _reflect_root(self.cartan, i, tuple(root))

    # ------------------------------------------------------------------ weights

    def _check_index(self, i: int):
        if not isinstance(i, int) or not 0 <= i < self.rank:
            raise UsageError(f"Simple index {i} out of range for {self.lie_type}", "index", i)

    def simple_root(self, i: int, basis: Basis = Basis.ROOT) -> Weight:
        self._check_index(i)
        return self.convert(Weight(tuple(1 if k == i else 0 for k in range(self.rank)), Basis.ROOT), basis)

    def fundamental_weight(self, i: int, basis: Basis = Basis.FUNDAMENTAL) -> Weight:
        self._check_index(i)
        return self.convert(
            Weight(tuple(1 if k == i else 0 for k in range(self.rank)), Basis.FUNDAMENTAL), basis)

    def convert(self, weight: Weight, basis: Basis) -> Weight:
        """Express ``weight`` in another basis; conversions are exact."""
        if weight.rank != self.rank:
            raise DimensionMismatchError(
                f"Weight of rank {weight.rank} for {self.lie_type}", self.rank, weight.rank)
        if weight.basis == basis:
            return weight
        root_coords = self._to_root(weight)
        if basis == Basis.ROOT:
            return Weight(root_coords, Basis.ROOT)
        if basis == Basis.FUNDAMENTAL:
            return Weight(self.root_to_weight.apply(root_coords), Basis.FUNDAMENTAL)
        return Weight(tuple(d * x for d, x in zip(self.symmetrizer, root_coords)), Basis.COROOT)

    def _to_root(self, weight: Weight) -> Tuple[Any, ...]:
        if weight.basis == Basis.ROOT:
            return weight.coords
        if weight.basis == Basis.FUNDAMENTAL:
            return self.weight_to_root.apply(weight.coords)
        # coroot coordinates: h_i corresponds to alpha_i / d_i
        return tuple(x / d for d, x in zip(self.symmetrizer, weight.coords))

    def pairing(self, weight: Weight, i: int):
        """lambda(h_i)."""
        self._check_index(i)
        return self.convert(weight, Basis.FUNDAMENTAL).coords[i]

    def inner_product(self, first: Weight, second: Weight):
        """Invariant form (long roots have squared length 2)."""
        a = self._to_root(self._in_rank(first))
        b = self._to_root(self._in_rank(second))
        return sum((x * y for x, y in zip(a, self.form.apply(b))), QQ(0))

    def _in_rank(self, weight: Weight) -> Weight:
        if weight.rank != self.rank:
            raise DimensionMismatchError(
                f"Weight of rank {weight.rank} for {self.lie_type}", self.rank, weight.rank)
        return weight

    def to_dict(self) -> Dict[str, Any]:
        return {
            "type": str(self.lie_type),
            "rank": self.rank,
            "cartan": [list(row) for row in self.cartan],
            "positive_roots": [list(r) for r in self.positive_roots],
            "form": [[format_scalar(x) for x in row] for row in self.form.to_lists()],
        }


# =============================================================================
# Operations
# =============================================================================

@lru_cache(maxsize=None)
def build_root_system(lie_type: Any) -> RootSystem:
    """
    Build the root system of a simple type.

    Args:
        lie_type: A LieType or a type string such as ``"B3"``

    Returns:
        RootSystem: Cached, immutable root datum

    Raises:
        UsageError: For illegal types
    """
    lie_type = LieType.parse(lie_type)
    return RootSystem(lie_type, cartan_matrix(lie_type))


def rho(rs: RootSystem) -> Weight:
    return Weight((1,) * rs.rank, Basis.FUNDAMENTAL)


def langlands_dual(rs: RootSystem) -> RootSystem:
    """Root system with transposed Cartan matrix (roots are the coroots of ``rs``)."""
    transposed = tuple(zip(*rs.cartan))
    return RootSystem(rs.lie_type.dual(), transposed)


def simple_reflection(rs: RootSystem, i: int, weight: Weight) -> Weight:
    """s_i(w) = w - w(h_i) alpha_i, in the caller's basis."""
    value = rs.pairing(weight, i)
    return weight - rs.simple_root(i, weight.basis).scale(value)


def coroot(rs: RootSystem, root: Sequence[int]) -> Tuple[Any, ...]:
    """gamma^vee = 2 gamma / (gamma, gamma) in the simple-coroot basis h_1..h_l."""
    root = tuple(root)
    if not rs.is_root(root):
        raise UsageError(f"{list(root)} is not a root of {rs.lie_type}", "root", root)
    weight = Weight(root, Basis.ROOT)
    length = rs.inner_product(weight, weight)
    return tuple(QQ(2) * rs.symmetrizer[i] * root[i] / length for i in range(rs.rank))


def weyl_orbit(rs: RootSystem, weight: Weight) -> List[Weight]:
    """Orbit of ``weight`` under W, enumerated through simple reflections, sorted."""
    start = rs.convert(weight, Basis.FUNDAMENTAL)
    seen = {start.coords}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for i in range(rs.rank):
            image = simple_reflection(rs, i, current)
            if image.coords not in seen:
                seen.add(image.coords)
                queue.append(image)
    return [rs.convert(Weight(c, Basis.FUNDAMENTAL), weight.basis) for c in sorted(seen)]


@lru_cache(maxsize=None)
def weyl_group_order(rs: RootSystem) -> int:
    """|W|, the size of the (free) orbit of rho."""
    return len(weyl_orbit(rs, rho(rs)))
