"""
Chevalley basis realization of a simple Lie algebra

The algebra is realized through its adjoint representation. The action of the
Chevalley generators e_i = x_{alpha_i} and f_i = x_{-alpha_i} on the basis is worked
out height by height from the Serre presentation; every other root vector is defined
as a normalized bracket

    x_gamma = [e_i, x_beta] / (p + 1),      gamma = beta + alpha_i,

with i the smallest index for which gamma - alpha_i is a root and p the largest integer
with beta - p alpha_i a root. Negative root vectors are fixed by the Chevalley
involution, x_{-gamma} = -omega(x_gamma). The resulting basis is a Chevalley basis with
a deterministic sign choice.

Basis order: positive root vectors (height, then lex), negative root vectors in the
same order, then h_1..h_l. Elements are dense tuples of ``QQ`` over this basis.
"""

import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import QQ

from algebra.exact import format_scalar, to_scalar
from algebra.linear import ExactMatrix, SparseRow
from lie.root_system import LieType, Root, RootSystem, build_root_system
from utils.error_handler import DimensionMismatchError, InternalConsistencyError, UsageError

logger = logging.getLogger(__name__)

Element = Tuple[Any, ...]


# =============================================================================
# Sparse vector helpers
# =============================================================================

def _axpy(target: SparseRow, factor: Any, source: SparseRow):
    for k, v in source.items():
        value = target.get(k, QQ(0)) + factor * v
        if value:
            target[k] = value
        else:
            target.pop(k, None)


def _scaled(source: SparseRow, factor: Any) -> SparseRow:
    return {k: factor * v for k, v in source.items() if factor * v}


def _commutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a @ b - b @ a


@dataclass(frozen=True)
class RootDefinition:
    """x_gamma = [e_index, x_beta] / (p + 1)."""
    index: int
    beta: Root
    p: int


@dataclass(frozen=True)
class SL2Triple:
    """Elements e, f, h with [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    e: Element
    f: Element
    h: Element
    coefficients: Tuple[Any, ...] = ()


# =============================================================================
# Lie algebra
# =============================================================================

class LieAlgebra:
    """
    Simple Lie algebra in a Chevalley basis.

    Attributes:
        rs: Root system the algebra is built from
        basis: Labels of the basis elements (``("x", gamma)`` or ``("h", i)``)
        dimension: Number of basis elements
    """

    def __init__(self, rs: RootSystem, validate: bool = True):
        self.rs = rs
        self.rank = rs.rank
        positives = list(rs.positive_roots)
        self._positives = positives
        self.basis: List[Tuple[str, Any]] = (
            [("x", gamma) for gamma in positives]
            + [("x", tuple(-c for c in gamma)) for gamma in positives]
            + [("h", i) for i in range(self.rank)]
        )
        self.dimension = len(self.basis)
        self._index: Dict[Tuple[str, Any], int] = {label: k for k, label in enumerate(self.basis)}
        self._npos = len(positives)
        self._definitions = self._root_definitions()

        e_action, f_action = self._simple_actions()
        self._ad_basis = self._adjoint_matrices(e_action, f_action)
        self._killing: Dict[Tuple[int, int], Any] = {}
        if validate:
            self.validate()
        logger.debug(f"Built Lie algebra {rs.lie_type} of dimension {self.dimension}")

    # ------------------------------------------------------------------ indexing

    def index_of_root(self, gamma: Sequence[int]) -> int:
        key = ("x", tuple(gamma))
        if key not in self._index:
            raise UsageError(f"{list(gamma)} is not a root of {self.rs.lie_type}", "root", gamma)
        return self._index[key]

    def index_of_cartan(self, i: int) -> int:
        if not 0 <= i < self.rank:
            raise UsageError(f"Cartan index {i} out of range", "index", i)
        return 2 * self._npos + i

    def _pos(self, gamma: Root) -> int:
        return self._index[("x", gamma)]

    def _neg(self, gamma: Root) -> int:
        return self._index[("x", tuple(-c for c in gamma))]

    def basis_vector(self, k: int) -> Element:
        return tuple(QQ(1) if j == k else QQ(0) for j in range(self.dimension))

    def root_vector(self, gamma: Sequence[int]) -> Element:
        return self.basis_vector(self.index_of_root(gamma))

    def cartan_vector(self, coefficients: Sequence[Any]) -> Element:
        if len(coefficients) != self.rank:
            raise DimensionMismatchError("Cartan coefficients of wrong length", self.rank, len(coefficients))
        vector = [QQ(0)] * self.dimension
        for i, c in enumerate(coefficients):
            vector[self.index_of_cartan(i)] = to_scalar(c)
        return tuple(vector)

    def label(self, k: int) -> str:
        kind, value = self.basis[k]
        if kind == "h":
            return f"h{value + 1}"
        return "x[" + ",".join(str(c) for c in value) + "]"

    # ------------------------------------------------------------------ construction

    def _root_definitions(self) -> Dict[Root, RootDefinition]:
        rs = self.rs
        definitions = {}
        for gamma in self._positives:
            if sum(gamma) == 1:
                continue
            for i in range(self.rank):
                beta = tuple(c - (1 if k == i else 0) for k, c in enumerate(gamma))
                if rs.is_root(beta) and all(c >= 0 for c in beta):
                    p = 0
                    while rs.is_root(tuple(c - (p + 1) * (1 if k == i else 0) for k, c in enumerate(beta))):
                        p += 1
                    definitions[gamma] = RootDefinition(i, beta, p)
                    break
        return definitions

    def _simple_actions(self):
        """[e_i, x_gamma] and [f_i, x_gamma] for positive gamma, as sparse vectors."""
        rs, n = self.rs, self.rank
        raise_action: Dict[Tuple[int, Root], SparseRow] = {}
        lower_action: Dict[Tuple[int, Root], SparseRow] = {}

        def ad_e(j: int, vector: SparseRow) -> SparseRow:
            # vector lives in the positive part plus the Cartan part
            out: SparseRow = {}
            for k, v in vector.items():
                kind, value = self.basis[k]
                if kind == "h":
                    # [e_j, h_value] = -alpha_j(h_value) e_j
                    _axpy(out, -v * rs.cartan[value][j], {self._pos(_unit(n, j)): QQ(1)})
                else:
                    _axpy(out, v, raise_action[(j, value)])
            return out

        by_height: Dict[int, List[Root]] = {}
        for gamma in self._positives:
            by_height.setdefault(sum(gamma), []).append(gamma)
        top = max(by_height)

        for height in range(1, top + 2):
            for gamma in by_height.get(height, []):
                for i in range(n):
                    if height == 1:
                        j = gamma.index(1)
                        lower_action[(i, gamma)] = {self.index_of_cartan(i): QQ(-1)} if i == j else {}
                        continue
                    d = self._definitions[gamma]
                    result: SparseRow = {}
                    if i == d.index:
                        _axpy(result, -rs.root_pairing(d.beta, i), {self._pos(d.beta): QQ(1)})
                    _axpy(result, QQ(1), ad_e(d.index, lower_action[(i, d.beta)]))
                    lower_action[(i, gamma)] = _scaled(result, QQ(1, d.p + 1))

            for gamma in by_height.get(height - 1, []):
                for i in range(n):
                    eta = tuple(c + (1 if k == i else 0) for k, c in enumerate(gamma))
                    if not rs.is_root(eta):
                        raise_action[(i, gamma)] = {}
                        continue
                    d = self._definitions[eta]
                    if d.index == i and d.beta == gamma:
                        raise_action[(i, gamma)] = {self._pos(eta): QQ(d.p + 1)}
                        continue
                    rhs: SparseRow = {self._pos(gamma): QQ(-rs.root_pairing(gamma, i))}
                    _axpy(rhs, QQ(1), ad_e(i, lower_action[(i, gamma)]))
                    target = self._pos(gamma)
                    denominator = lower_action[(i, eta)].get(target)
                    if not denominator:
                        raise InternalConsistencyError(
                            f"[f_{i + 1}, x_{list(eta)}] has no x_{list(gamma)} component",
                            "chevalley", {"root": list(eta)})
                    raise_action[(i, gamma)] = {self._pos(eta): rhs.get(target, QQ(0)) / denominator}

        return raise_action, lower_action

    def _omega(self, vector: SparseRow) -> SparseRow:
        """Chevalley involution: x_gamma -> -x_{-gamma}, h -> -h."""
        out = {}
        for k, v in vector.items():
            kind, value = self.basis[k]
            if kind == "h":
                out[k] = -v
            else:
                out[self._index[("x", tuple(-c for c in value))]] = -v
        return out

    def _adjoint_matrices(self, raise_action, lower_action) -> List[ExactMatrix]:
        rs, n, dim = self.rs, self.rank, self.dimension

        def simple_matrix(i: int, positive_action, negative_action, sign_root: Root, cartan_coeff) -> ExactMatrix:
            columns: Dict[int, SparseRow] = {}
            for gamma in self._positives:
                columns[self._pos(gamma)] = positive_action[(i, gamma)]
                columns[self._neg(gamma)] = self._omega(negative_action[(i, gamma)])
            for j in range(n):
                columns[self.index_of_cartan(j)] = {self._index[("x", sign_root)]: cartan_coeff(j)}
            data: Dict[int, SparseRow] = {}
            for col, vector in columns.items():
                for row, value in vector.items():
                    if value:
                        data.setdefault(row, {})[col] = value
            return ExactMatrix(dim, dim, data)

        ad: List[Optional[ExactMatrix]] = [None] * dim
        for i in range(n):
            alpha = _unit(n, i)
            minus_alpha = tuple(-c for c in alpha)
            # [e_i, h_j] = -alpha_i(h_j) e_i,  [f_i, h_j] = alpha_i(h_j) f_i
            ad[self._pos(alpha)] = simple_matrix(
                i, raise_action, lower_action, alpha, lambda j, i=i: QQ(-rs.cartan[j][i]))
            ad[self._neg(alpha)] = simple_matrix(
                i, lower_action, raise_action, minus_alpha, lambda j, i=i: QQ(rs.cartan[j][i]))

        for gamma in self._positives:
            if sum(gamma) == 1:
                continue
            d = self._definitions[gamma]
            alpha = _unit(n, d.index)
            scale = QQ(1, d.p + 1)
            ad[self._pos(gamma)] = _commutator(ad[self._pos(alpha)], ad[self._pos(d.beta)]).scale(scale)
            ad[self._neg(gamma)] = _commutator(ad[self._neg(alpha)], ad[self._neg(d.beta)]).scale(-scale)

        for i in range(n):
            diagonal = {}
            for gamma in self._positives:
                value = QQ(rs.root_pairing(gamma, i))
                if value:
                    diagonal[self._pos(gamma)] = {self._pos(gamma): value}
                    diagonal[self._neg(gamma)] = {self._neg(gamma): -value}
            ad[self.index_of_cartan(i)] = ExactMatrix(dim, dim, diagonal)
        return ad

    # ------------------------------------------------------------------ brackets

    def _check_element(self, a: Sequence[Any]):
        if len(a) != self.dimension:
            raise DimensionMismatchError(
                f"Element of length {len(a)} for dimension {self.dimension}", self.dimension, len(a))

    def ad_matrix(self, a: Sequence[Any]) -> ExactMatrix:
        """Matrix of x -> [a, x] over the basis."""
        self._check_element(a)
        result = ExactMatrix.zeros(self.dimension, self.dimension)
        for k, coefficient in enumerate(a):
            coefficient = to_scalar(coefficient)
            if coefficient:
                result = result + self._ad_basis[k].scale(coefficient)
        return result

    def ad_basis(self, k: int) -> ExactMatrix:
        return self._ad_basis[k]

    def bracket(self, a: Sequence[Any], b: Sequence[Any]) -> Element:
        self._check_element(b)
        total = [QQ(0)] * self.dimension
        for k, coefficient in enumerate(a):
            coefficient = to_scalar(coefficient)
            if coefficient:
                for j, value in enumerate(self._ad_basis[k].apply(b)):
                    if value:
                        total[j] += coefficient * value
        return tuple(total)

    def structure_constants(self) -> Dict[Tuple[int, int], SparseRow]:
        """Nonzero brackets of basis pairs, [b_a, b_b] as sparse vectors."""
        table = {}
        for a in range(self.dimension):
            columns = self._ad_basis[a].transpose()
            for b in range(self.dimension):
                column = columns.row(b)
                if column:
                    table[(a, b)] = column
        return table

    def bracket_table(self) -> Dict[str, str]:
        """Human-readable structure constants, keyed by ``"[a, b]"``."""
        table = {}
        for (a, b), column in sorted(self.structure_constants().items()):
            terms = " + ".join(f"{format_scalar(v)}*{self.label(r)}" for r, v in sorted(column.items()))
            table[f"[{self.label(a)}, {self.label(b)}]"] = terms
        return table

    # ------------------------------------------------------------------ Killing form

    def _killing_basis(self, a: int, b: int):
        key = (min(a, b), max(a, b))
        if key not in self._killing:
            self._killing[key] = (self._ad_basis[a] @ self._ad_basis[b]).trace()
        return self._killing[key]

    def killing(self, a: Sequence[Any], b: Sequence[Any]):
        """kappa(a, b) = trace(ad a ad b)."""
        self._check_element(a)
        self._check_element(b)
        total = QQ(0)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    total += to_scalar(x) * to_scalar(y) * self._killing_basis(i, j)
        return total

    def cartan_killing_matrix(self) -> ExactMatrix:
        """Killing form restricted to the Cartan subalgebra, in the basis h_1..h_l."""
        rows = []
        for i in range(self.rank):
            rows.append([self._killing_basis(self.index_of_cartan(i), self.index_of_cartan(j))
                         for j in range(self.rank)])
        return ExactMatrix.from_rows(rows)

    # ------------------------------------------------------------------ validation

    def validate(self):
        """
        Check antisymmetry and the Jacobi identity on all basis triples.

        Jacobi for (a, b, c) is equivalent to ad([a, b]) = [ad a, ad b] applied to c, so
        the check runs over pairs and names the first failing triple.

        Raises:
            InternalConsistencyError: Naming the offending triple
        """
        dim = self.dimension
        for a in range(dim):
            for b in range(a, dim):
                ab = self._ad_basis[a].column(b)
                ba = self._ad_basis[b].column(a)
                if any(x + y for x, y in zip(ab, ba)):
                    raise InternalConsistencyError(
                        f"Bracket not antisymmetric on ({self.label(a)}, {self.label(b)})",
                        "antisymmetry", {"pair": [self.label(a), self.label(b)]})
                lhs = self.ad_matrix(ab)
                rhs = _commutator(self._ad_basis[a], self._ad_basis[b])
                if lhs != rhs:
                    difference = lhs - rhs
                    c = next(j for j in range(dim) if any(difference.column(j)))
                    triple = [self.label(a), self.label(b), self.label(c)]
                    raise InternalConsistencyError(
                        f"Jacobi identity fails on {tuple(triple)}", "jacobi", {"triple": triple})
        logger.debug(f"Jacobi identity verified on {dim ** 3} triples for {self.rs.lie_type}")

    def random_element(self, rng: random.Random, spread: int = 3) -> Element:
        return tuple(QQ(rng.randint(-spread, spread)) for _ in range(self.dimension))


def _unit(n: int, i: int) -> Root:
    return tuple(1 if k == i else 0 for k in range(n))


# =============================================================================
# Operations
# =============================================================================

@lru_cache(maxsize=None)
def build_lie_algebra(rs: Any, validate: bool = True) -> LieAlgebra:
    """
    Chevalley-basis realization of the simple Lie algebra of ``rs``.

    Args:
        rs: A RootSystem, LieType or type string
        validate: Run the full Jacobi check before returning

    Raises:
        InternalConsistencyError: If the structure constants fail validation
    """
    if not isinstance(rs, RootSystem):
        rs = build_root_system(LieType.parse(rs))
    return LieAlgebra(rs, validate)


def ad_matrix(algebra: LieAlgebra, a: Sequence[Any]) -> ExactMatrix:
    return algebra.ad_matrix(a)


def principal_sl2(algebra: LieAlgebra) -> SL2Triple:
    """
    Principal sl2-triple of ``algebra``: e = sum x_{alpha_i}, f = sum d_i x_{-alpha_i}.

    The coefficients d solve C^T d = (2, ..., 2), so h = [e, f] = sum d_i h_i satisfies
    alpha_j(h) = 2 for every simple root.

    Raises:
        InternalConsistencyError: If the triple relations fail
    """
    rs, n = algebra.rs, algebra.rank
    transpose = ExactMatrix.from_rows(rs.cartan).transpose()
    coefficients = transpose.solve([2] * n)

    e = [QQ(0)] * algebra.dimension
    f = [QQ(0)] * algebra.dimension
    for i in range(n):
        alpha = _unit(n, i)
        e[algebra.index_of_root(alpha)] = QQ(1)
        f[algebra.index_of_root(tuple(-c for c in alpha))] = coefficients[i]
    e, f = tuple(e), tuple(f)
    h = algebra.bracket(e, f)

    if h != algebra.cartan_vector(coefficients):
        raise InternalConsistencyError("[e, f] is not the expected Cartan element", "principal_sl2")
    if algebra.bracket(h, e) != tuple(2 * x for x in e):
        raise InternalConsistencyError("[h, e] != 2e for the principal triple", "principal_sl2")
    if algebra.bracket(h, f) != tuple(-2 * x for x in f):
        raise InternalConsistencyError("[h, f] != -2f for the principal triple", "principal_sl2")
    return SL2Triple(e, f, h, tuple(coefficients))
