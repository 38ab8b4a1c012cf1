"""
Kostant conjecture verifier

For a simple type and a scalar s the Harish-Chandra images of the adjoint invariants
of degree <= m, evaluated at s * rho, are compared with the principal filtration F^m
of the Cartan. Both sides are subspaces of h* in fundamental-weight coordinates and
are compared by exact ranks.
"""

import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple


from algebra.exact import Poly, format_scalar, to_scalar
from algebra.linear import span_rank
from invariants.zhelobenko import PTuple, P_to_q, ZeroWeightElement, solve_invariants
from lie.filtration import principal_filtration
from lie.root_system import Basis, LieType, RootSystem, Weight, build_root_system
from utils.error_handler import UsageError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DegreeRecord:
    m: int
    dim_image: int
    dim_F: int
    equal: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"m": self.m, "dim_image": self.dim_image, "dim_F": self.dim_F, "equal": self.equal}


@dataclass(frozen=True)
class VerificationReport:
    """Per-degree comparison of the evaluated invariants with the principal filtration."""

    lie_type: LieType
    s: Any
    mmax: int
    records: Tuple[DegreeRecord, ...]
    timing_ms: int = 0

    @property
    def passed(self) -> bool:
        return all(record.equal for record in self.records)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    @property
    def failing_degrees(self) -> List[int]:
        return [record.m for record in self.records if not record.equal]

    def to_dict(self, deterministic: bool = False) -> Dict[str, Any]:
        data = {
            "kind": "verify",
            "type": str(self.lie_type),
            "s": format_scalar(self.s),
            "mmax": self.mmax,
            "records": [record.to_dict() for record in self.records],
            "verdict": self.verdict,
        }
        if not deterministic:
            data["timing_ms"] = self.timing_ms
        return data


@dataclass(frozen=True)
class ScanReport:
    """Verdicts of :func:`verify_kostant` over a list of scalars (ascending)."""

    lie_type: LieType
    mmax: int
    reports: Tuple[VerificationReport, ...] = field(default_factory=tuple)

    @property
    def verdicts(self) -> Dict[str, str]:
        return {format_scalar(r.s): r.verdict for r in self.reports}

    @property
    def failing(self) -> List[Any]:
        return [r.s for r in self.reports if not r.passed]

    @property
    def verdict(self) -> str:
        # bad scalars are findings, not failures, as long as no positive integer is bad
        bad_positive = [s for s in self.failing if s > 0 and s.denominator == 1]
        return "fail" if bad_positive else "pass"

    def to_dict(self, deterministic: bool = False) -> Dict[str, Any]:
        return {
            "kind": "scan",
            "type": str(self.lie_type),
            "mmax": self.mmax,
            "failing": [format_scalar(s) for s in self.failing],
            "results": [r.to_dict(deterministic) for r in self.reports],
            "verdict": self.verdict,
        }


def evaluate_invariant(rs: RootSystem, element: ZeroWeightElement, s: Any) -> Weight:
    """sum_i q_i(s rho) w_i; s rho has every coroot coordinate equal to s."""
    if element.rank != rs.rank:
        raise UsageError(f"Element of rank {element.rank} for {rs.lie_type}", "element", element.rank)
    s = to_scalar(s)
    point = [s] * rs.rank
    return Weight(tuple(q.evaluate(point) for q in element.polys()), Basis.FUNDAMENTAL)


def _recombine(basis: List[PTuple], rng: random.Random) -> List[PTuple]:
    """Another basis of the same span (unitriangular recombination)."""
    mixed = []
    for k, P in enumerate(basis):
        combined = P
        for other in basis[k + 1:]:
            factor = rng.randint(-3, 3)
            if factor:
                combined = combined + other.scale_by(Poly.constant(P.rank, factor))
        mixed.append(combined)
    rng.shuffle(mixed)
    return mixed


def resolve_mmax(lie_type: Any, mmax: int) -> int:
    """``mmax = 0`` means the top exponent of the type."""
    if not isinstance(mmax, int) or mmax < 0:
        raise UsageError(f"mmax must be a non-negative integer, got {mmax!r}", "mmax", mmax)
    return mmax or max(principal_filtration(lie_type).exponents)


def verify_kostant(lie_type: Any, s: Any = 1, mmax: int = 0,
                   shuffle_seed: Optional[int] = None) -> VerificationReport:
    """
    Compare the evaluated invariant images at s rho with F^m for m = 0..mmax.

    Args:
        lie_type: LieType or type string
        s: The scalar
        mmax: Highest degree to compare (0 for the top exponent)
        shuffle_seed: Recombine the solver basis randomly before evaluating

    Returns:
        VerificationReport: Per-degree dimensions and equality flags
    """
    started = time.perf_counter()
    lie_type = LieType.parse(lie_type)
    s = to_scalar(s)
    mmax = resolve_mmax(lie_type, mmax)
    rs = build_root_system(lie_type)
    flag = principal_filtration(lie_type)
    space = solve_invariants(rs, -1, max(mmax - 1, 0))
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None

    records = []
    for m in range(mmax + 1):
        basis = space.basis_up_to(m - 1) if m >= 1 else []
        if rng is not None:
            basis = _recombine(basis, rng)
        image = [evaluate_invariant(rs, P_to_q(rs, P), s).coords for P in basis]
        target = list(flag.primal_basis(m))
        dim_image = span_rank(image)
        dim_F = len(target)
        equal = dim_image == dim_F == span_rank(image + target)
        records.append(DegreeRecord(m, dim_image, dim_F, equal))
        logger.debug(f"{lie_type} s={format_scalar(s)} m={m}: image {dim_image}, F {dim_F}, equal={equal}")

    report = VerificationReport(lie_type, s, mmax, tuple(records),
                                int((time.perf_counter() - started) * 1000))
    logger.info(f"Kostant check {lie_type} at s={format_scalar(s)}: {report.verdict}")
    return report


def scan_scalars(lie_type: Any, candidates: Sequence[Any], mmax: int = 0,
                 max_workers: int = 1) -> ScanReport:
    """
    Run :func:`verify_kostant` for every candidate scalar.

    Jobs run on a thread pool; the report lists scalars in ascending order regardless of
    completion order.
    """
    lie_type = LieType.parse(lie_type)
    scalars = sorted({to_scalar(s) for s in candidates})
    mmax = resolve_mmax(lie_type, mmax)
    # warm the shared caches once before fanning out
    solve_invariants(build_root_system(lie_type), -1, max(mmax - 1, 0))

    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as executor:
        futures = [executor.submit(verify_kostant, lie_type, s, mmax) for s in scalars]
        reports = tuple(future.result() for future in futures)

    scan = ScanReport(lie_type, mmax, reports)
    logger.info(f"Scalar scan for {lie_type}: failing {[format_scalar(s) for s in scan.failing]}")
    return scan
