"""
Principal filtration of the Cartan subalgebra

For a simple type the filtration lives in the Langlands dual algebra: with e the
principal nilpotent of the dual,

    F^m = { h in the dual Cartan : (ad e)^(m+1) h = 0 }.

The dimensions jump exactly at the exponents. The orthogonal summands
F^m intersected with the Killing complement of F^(m-1) realize the zero-weight spaces
of the irreducible pieces of the dual algebra under the principal sl2.

Vectors are coordinates on the dual coroot basis. The identification of the dual
coroots with the simple roots of the original algebra turns them into simple-root
coordinates; the fundamental-weight image is then ``C v``.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Tuple

from sympy import QQ

from algebra.exact import format_scalar
from algebra.linear import ExactMatrix, Vector, echelon_basis, nullspace, span_rank
from lie.chevalley import build_lie_algebra, principal_sl2
from lie.root_system import LieType, build_root_system, langlands_dual
from utils.error_handler import InternalConsistencyError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiltrationFlag:
    """
    Increasing chain F^0 <= F^1 <= ... of the dual Cartan subalgebra.

    Attributes:
        lie_type: The type of the original algebra
        subspaces: Echelon bases of F^0 .. F^top in dual-coroot coordinates
        exponents: Jump degrees, with multiplicity, ascending
        eigenvalue_exponents: Exponents read off the ad(h)-spectrum of the dual algebra
        summands: Exponent value -> basis of the Killing-orthogonal summand
        primal_subspaces: The subspaces in fundamental-weight coordinates of h*
    """

    lie_type: LieType
    rank: int
    subspaces: Tuple[Tuple[Vector, ...], ...]
    exponents: Tuple[int, ...]
    eigenvalue_exponents: Tuple[int, ...]
    summands: Dict[int, Tuple[Vector, ...]] = field(default_factory=dict)
    primal_subspaces: Tuple[Tuple[Vector, ...], ...] = ()

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(len(basis) for basis in self.subspaces)

    @property
    def top(self) -> int:
        return len(self.subspaces) - 1

    def subspace(self, m: int) -> Tuple[Vector, ...]:
        """Basis of F^m; beyond the top this is the whole Cartan."""
        if m < 0:
            return ()
        return self.subspaces[min(m, self.top)]

    def primal_basis(self, m: int) -> Tuple[Vector, ...]:
        if m < 0:
            return ()
        return self.primal_subspaces[min(m, self.top)]

    def dim(self, m: int) -> int:
        return len(self.subspace(m))

    def to_dict(self) -> Dict[str, Any]:
        def render(vectors):
            return [[format_scalar(x) for x in v] for v in vectors]

        return {
            "type": str(self.lie_type),
            "exponents": list(self.exponents),
            "dims": list(self.dims),
            "summands": {str(m): render(basis) for m, basis in sorted(self.summands.items())},
            "primal_subspaces": [render(basis) for basis in self.primal_subspaces],
        }


def _eigenvalue_exponents(algebra, h) -> Tuple[int, ...]:
    """Exponents from the multiplicities of the even ad(h)-eigenvalues."""
    ad_h = algebra.ad_matrix(h)
    counts: Counter = Counter()
    for k in range(algebra.dimension):
        row = ad_h.row(k)
        if any(j != k for j in row):
            raise InternalConsistencyError("ad(h) is not diagonal on the Chevalley basis", "eigenvalues")
        value = row.get(k, QQ(0))
        if value.denominator != 1 or int(value.numerator) % 2:
            raise InternalConsistencyError(f"ad(h) eigenvalue {value} is not an even integer", "eigenvalues")
        counts[int(value.numerator) // 2] += 1

    exponents = []
    top = max(counts)
    for k in range(1, top + 1):
        exponents.extend([k] * (counts[k] - counts[k + 1]))
    return tuple(exponents)


def _orthogonal_summand(inner: ExactMatrix, big: Tuple[Vector, ...], small: Tuple[Vector, ...],
                        rank: int) -> Tuple[Vector, ...]:
    """Vectors of span(big) orthogonal to span(small) under ``inner``."""
    if not small:
        return tuple(echelon_basis(big, rank))
    rows = []
    for u in small:
        image = inner.apply(u)
        rows.append([sum((b[k] * image[k] for k in range(rank)), QQ(0)) for b in big])
    coefficients = nullspace(ExactMatrix.from_rows(rows))
    combos = []
    for c in coefficients:
        combos.append(tuple(sum((c[t] * big[t][k] for t in range(len(big))), QQ(0)) for k in range(rank)))
    return tuple(echelon_basis(combos, rank))


@lru_cache(maxsize=None)
def principal_filtration(lie_type: Any, scale: Any = 1) -> FiltrationFlag:
    """
    Compute the principal filtration of the Cartan for ``lie_type``.

    Args:
        lie_type: LieType or type string
        scale: Nonzero multiple applied to the principal nilpotent (the flag is
            independent of it)

    Returns:
        FiltrationFlag: Flag, exponents from both oracles and orthogonal summands

    Raises:
        InternalConsistencyError: Non-increasing dimensions, oracle disagreement or
            non-orthogonal summands
    """
    lie_type = LieType.parse(lie_type)
    rs = build_root_system(lie_type)
    dual_algebra = build_lie_algebra(langlands_dual(rs))
    triple = principal_sl2(dual_algebra)
    n = rs.rank

    ad_e = dual_algebra.ad_matrix(triple.e).scale(scale)
    cartan_columns = [dual_algebra.basis_vector(dual_algebra.index_of_cartan(j)) for j in range(n)]

    subspaces: List[Tuple[Vector, ...]] = []
    images = cartan_columns
    limit = 2 * rs.height(rs.highest_root) + 1
    m = 0
    while True:
        images = [ad_e.apply(v) for v in images]
        kernel = nullspace(ExactMatrix.from_columns(images))
        basis = tuple(echelon_basis(kernel, n))
        if subspaces and len(basis) < len(subspaces[-1]):
            raise InternalConsistencyError("Principal filtration is not increasing", "filtration",
                                           {"type": str(lie_type), "m": m})
        subspaces.append(basis)
        logger.debug(f"{lie_type}: dim F^{m} = {len(basis)}")
        if len(basis) == n:
            break
        m += 1
        if m > limit:
            raise InternalConsistencyError("Principal filtration does not exhaust the Cartan",
                                           "filtration", {"type": str(lie_type)})

    exponents: List[int] = []
    previous = 0
    for degree, basis in enumerate(subspaces):
        exponents.extend([degree] * (len(basis) - previous))
        previous = len(basis)

    eigen = _eigenvalue_exponents(dual_algebra, triple.h)
    if tuple(exponents) != eigen:
        raise InternalConsistencyError(
            f"Exponent oracles disagree for {lie_type}: {exponents} vs {list(eigen)}",
            "exponents", {"kernel": exponents, "eigenvalues": list(eigen)})
    if sum(2 * e + 1 for e in exponents) != dual_algebra.dimension:
        raise InternalConsistencyError(
            f"Exponents {exponents} do not account for dimension {dual_algebra.dimension} of {lie_type}",
            "exponents", {"type": str(lie_type), "dimension": dual_algebra.dimension})

    killing = dual_algebra.cartan_killing_matrix()
    summands: Dict[int, Tuple[Vector, ...]] = {}
    for degree in sorted(set(exponents)):
        previous_space = subspaces[degree - 1] if degree >= 1 else ()
        summands[degree] = _orthogonal_summand(killing, subspaces[degree], previous_space, n)
        if len(summands[degree]) != exponents.count(degree):
            raise InternalConsistencyError(
                f"Summand for exponent {degree} has the wrong dimension", "summands",
                {"type": str(lie_type), "m": degree})
    _check_summands(killing, summands, n, lie_type)

    primal = tuple(tuple(rs.root_to_weight.apply(v) for v in basis) for basis in subspaces)
    flag = FiltrationFlag(lie_type, n, tuple(subspaces), tuple(exponents), eigen, summands, primal)
    logger.info(f"Principal filtration of {lie_type}: exponents {list(exponents)}")
    return flag


def _check_summands(killing: ExactMatrix, summands: Dict[int, Tuple[Vector, ...]], rank: int, lie_type):
    degrees = sorted(summands)
    for a_index, a in enumerate(degrees):
        for b in degrees[a_index + 1:]:
            for u in summands[a]:
                image = killing.apply(u)
                for v in summands[b]:
                    if sum((x * y for x, y in zip(v, image)), QQ(0)):
                        raise InternalConsistencyError(
                            f"Summands for exponents {a} and {b} are not Killing-orthogonal",
                            "summands", {"type": str(lie_type)})
    everything = [v for basis in summands.values() for v in basis]
    if span_rank(everything) != rank:
        raise InternalConsistencyError("Summands do not span the Cartan", "summands", {"type": str(lie_type)})


def exponents(lie_type: Any) -> Tuple[int, ...]:
    """Exponents of ``lie_type`` (ascending, with multiplicity), confirmed by two oracles."""
    return principal_filtration(lie_type).exponents
