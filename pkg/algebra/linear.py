"""
Exact sparse linear algebra over the rationals

Row reduction is fraction-free: every row is scaled to a primitive integer vector and
rows are combined with integer multipliers (a*r - b*p with a, b coprime), so no
intermediate fractions appear. Only the final reduced echelon form is divided through
by its pivots. Columns are eliminated in increasing index order; callers that need a
particular pivot preference (for example "highest degree first") order their columns
accordingly.

Vectors are passed around as tuples of ``QQ`` elements (dense) or as dictionaries
column -> value (sparse rows).
"""

import logging
from functools import reduce
from math import gcd
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ

from algebra.exact import to_scalar
from utils.error_handler import DimensionMismatchError, InternalConsistencyError

logger = logging.getLogger(__name__)

SparseRow = Dict[int, Any]
Vector = Tuple[Any, ...]


# =============================================================================
# Fraction-free elimination kernel
# =============================================================================

def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    """Divide by the content and make the leading entry positive."""
    if not row:
        return row
    content = reduce(gcd, (abs(v) for v in row.values()))
    if row[min(row)] < 0:
        content = -content
    if content == 1:
        return row
    return {c: v // content for c, v in row.items()}


def _integer_row(row: SparseRow) -> Dict[int, int]:
    values = {c: to_scalar(v) for c, v in row.items() if v}
    if not values:
        return {}
    common = reduce(lambda a, b: a * b // gcd(a, b), (int(v.denominator) for v in values.values()), 1)
    scaled = {c: int(v.numerator) * (common // int(v.denominator)) for c, v in values.items()}
    return _primitive(scaled)


def _eliminate(target: Dict[int, int], pivot_row: Dict[int, int], column: int) -> Dict[int, int]:
    """Integer combination of ``target`` and ``pivot_row`` with a zero in ``column``."""
    a, b = pivot_row[column], target[column]
    g = gcd(a, b)
    a, b = a // g, b // g
    combined = {c: a * v for c, v in target.items()}
    for c, v in pivot_row.items():
        value = combined.get(c, 0) - b * v
        if value:
            combined[c] = value
        else:
            combined.pop(c, None)
    return _primitive(combined)


def row_reduce(rows: Iterable[SparseRow]) -> Tuple[List[SparseRow], List[int]]:
    """
    Reduced row echelon form of the span of ``rows``.

    Args:
        rows: Sparse rows (column -> rational)

    Returns:
        Tuple[List[SparseRow], List[int]]: The nonzero reduced rows (pivot entries equal
        to 1, ordered by pivot column) and the ascending pivot columns.
    """
    echelon: Dict[int, Dict[int, int]] = {}
    for raw in rows:
        row = _integer_row(raw)
        while row:
            lead = min(row)
            pivot_row = echelon.get(lead)
            if pivot_row is None:
                echelon[lead] = row
                break
            row = _eliminate(row, pivot_row, lead)

    pivots = sorted(echelon)
    for column in reversed(pivots):
        pivot_row = echelon[column]
        for other in pivots:
            if other >= column:
                break
            if column in echelon[other]:
                echelon[other] = _eliminate(echelon[other], pivot_row, column)

    reduced = []
    for column in pivots:
        row = echelon[column]
        lead = row[column]
        reduced.append({c: QQ(v, lead) for c, v in row.items()})
    return reduced, pivots


def nullspace_of_rows(rows: Iterable[SparseRow], cols: int) -> List[Vector]:
    """Basis of {v : r.v = 0 for every row r}, one vector per free column (ascending)."""
    reduced, pivots = row_reduce(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        vector = [QQ(0)] * cols
        vector[free] = QQ(1)
        for row, pivot in zip(reduced, pivots):
            value = row.get(free)
            if value:
                vector[pivot] = -value
        basis.append(tuple(vector))
    return basis


def to_sparse(vector: Sequence[Any]) -> SparseRow:
    return {i: v for i, v in enumerate(vector) if v}


def span_rank(vectors: Iterable[Sequence[Any]]) -> int:
    return len(row_reduce(to_sparse(v) for v in vectors)[1])


def echelon_basis(vectors: Iterable[Sequence[Any]], length: int) -> List[Vector]:
    """Canonical basis (reduced echelon rows) of the span of dense vectors."""
    reduced, _ = row_reduce(to_sparse(v) for v in vectors)
    return [tuple(row.get(c, QQ(0)) for c in range(length)) for row in reduced]


def same_span(first: Sequence[Sequence[Any]], second: Sequence[Sequence[Any]], length: int) -> bool:
    """True iff the two families span the same subspace."""
    return echelon_basis(first, length) == echelon_basis(second, length)


def combine(coefficients: Sequence[Any], vectors: Sequence[Sequence[Any]], length: int) -> Vector:
    total = [QQ(0)] * length
    for a, vector in zip(coefficients, vectors):
        if a:
            for k, v in enumerate(vector):
                if v:
                    total[k] += a * v
    return tuple(total)


# =============================================================================
# Matrices
# =============================================================================

class ExactMatrix:
    """
    Immutable sparse rational matrix.

    Entries are stored row-wise as dictionaries holding only nonzero values.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: Optional[Dict[int, SparseRow]] = None):
        if rows < 0 or cols < 0:
            raise DimensionMismatchError(f"Negative matrix shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self._data: Dict[int, SparseRow] = {}
        for i, row in (data or {}).items():
            if not 0 <= i < rows:
                raise DimensionMismatchError(f"Row index {i} outside {rows} rows", rows, i)
            cleaned = {}
            for j, value in row.items():
                if not 0 <= j < cols:
                    raise DimensionMismatchError(f"Column index {j} outside {cols} columns", cols, j)
                value = to_scalar(value)
                if value:
                    cleaned[j] = value
            if cleaned:
                self._data[i] = cleaned

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> "ExactMatrix":
        cols = len(rows[0]) if rows else 0
        if any(len(row) != cols for row in rows):
            raise DimensionMismatchError("Ragged rows")
        return cls(len(rows), cols, {i: to_sparse(row) for i, row in enumerate(rows)})

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[SparseRow], cols: int) -> "ExactMatrix":
        return cls(len(rows), cols, dict(enumerate(rows)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Any]]) -> "ExactMatrix":
        return cls.from_rows(columns).transpose() if columns else cls(0, 0)

    @classmethod
    def identity(cls, size: int) -> "ExactMatrix":
        return cls(size, size, {i: {i: 1} for i in range(size)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols)

    def __getitem__(self, key: Tuple[int, int]):
        i, j = key
        return self._data.get(i, {}).get(j, QQ(0))

    def row(self, i: int) -> SparseRow:
        return dict(self._data.get(i, {}))

    def sparse_rows(self) -> List[SparseRow]:
        return [self.row(i) for i in range(self.rows)]

    def to_lists(self) -> List[List[Any]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def column(self, j: int) -> Vector:
        return tuple(self[i, j] for i in range(self.rows))

    def transpose(self) -> "ExactMatrix":
        data: Dict[int, SparseRow] = {}
        for i, row in self._data.items():
            for j, value in row.items():
                data.setdefault(j, {})[i] = value
        return ExactMatrix(self.cols, self.rows, data)

    def apply(self, vector: Sequence[Any]) -> Vector:
        if len(vector) != self.cols:
            raise DimensionMismatchError(
                f"Vector of length {len(vector)} for {self.cols} columns", self.cols, len(vector))
        values = [to_scalar(v) for v in vector]
        result = []
        for i in range(self.rows):
            total = QQ(0)
            for j, a in self._data.get(i, {}).items():
                if values[j]:
                    total += a * values[j]
            result.append(total)
        return tuple(result)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}",
                self.cols, other.rows)
        data: Dict[int, SparseRow] = {}
        for i, row in self._data.items():
            out: Dict[int, Any] = {}
            for k, a in row.items():
                for j, b in other._data.get(k, {}).items():
                    out[j] = out.get(j, QQ(0)) + a * b
            data[i] = out
        return ExactMatrix(self.rows, other.cols, data)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("Shape mismatch in matrix sum")
        data = {i: dict(row) for i, row in self._data.items()}
        for i, row in other._data.items():
            target = data.setdefault(i, {})
            for j, value in row.items():
                target[j] = target.get(j, QQ(0)) + value
        return ExactMatrix(self.rows, self.cols, data)

    def scale(self, factor: Any) -> "ExactMatrix":
        factor = to_scalar(factor)
        return ExactMatrix(self.rows, self.cols,
                           {i: {j: factor * v for j, v in row.items()} for i, row in self._data.items()})

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + other.scale(-1)

    def __pow__(self, exponent: int) -> "ExactMatrix":
        if self.rows != self.cols:
            raise DimensionMismatchError("Only square matrices have powers")
        result = ExactMatrix.identity(self.rows)
        for _ in range(exponent):
            result = result @ self
        return result

    def is_zero(self) -> bool:
        return not self._data

    def trace(self):
        return sum((self[i, i] for i in range(min(self.rows, self.cols))), QQ(0))

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._data) == (other.rows, other.cols, other._data)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols,
                     frozenset((i, frozenset(r.items())) for i, r in self._data.items())))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols}, nonzeros={sum(len(r) for r in self._data.values())})"

    # ------------------------------------------------------------------ reductions

    def rref(self) -> Tuple[List[SparseRow], List[int]]:
        return row_reduce(self.sparse_rows())

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> List[Vector]:
        return nullspace(self)

    def inverse(self) -> "ExactMatrix":
        """Inverse via reduction of [A | I]."""
        n = self.rows
        if n != self.cols:
            raise DimensionMismatchError("Only square matrices are invertible")
        augmented = []
        for i in range(n):
            row = dict(self._data.get(i, {}))
            row[n + i] = QQ(1)
            augmented.append(row)
        reduced, pivots = row_reduce(augmented)
        if pivots != list(range(n)):
            raise InternalConsistencyError("Matrix is singular", "inverse", {"shape": (n, n)})
        return ExactMatrix(n, n, {i: {j - n: v for j, v in row.items() if j >= n}
                                  for i, row in enumerate(reduced)})

    def solve(self, rhs: Sequence[Any]) -> Vector:
        """Unique solution x of A x = rhs for a square nonsingular A."""
        return self.inverse().apply(rhs)


def nullspace(matrix: ExactMatrix) -> List[Vector]:
    """
    Exact basis of the right nullspace of ``matrix``.

    The basis is in reduced echelon form with respect to the free columns: vector k has a
    1 in the k-th free column and zeros in all other free columns, so it is canonical for
    the given column order.
    """
    return nullspace_of_rows(matrix.sparse_rows(), matrix.cols)


def rank(matrix: ExactMatrix) -> int:
    return matrix.rank()
