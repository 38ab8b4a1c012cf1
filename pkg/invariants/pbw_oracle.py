"""
Brute-force oracle in rank one

Works in the enveloping algebra of sl2 with PBW basis y^a h^b x^c, where
[x, y] = h, [h, x] = 2x and [h, y] = -2y. For the spin-n module V(n) it computes the
invariants of V(n) (x) F^m U exactly (F^m the degree filtration), applies the
Harish-Chandra projection and compares the result with

- psi_n times the dot-invariant polynomials of degree <= m - n, and
- for n = 1 (the adjoint module), the xi-invariants with deg q <= m.
"""

import logging
import time
from dataclasses import dataclass
from math import comb
from typing import Any, Dict, List, Optional, Tuple

from sympy import QQ

from algebra.exact import Poly
from algebra.linear import echelon_basis, nullspace_of_rows, same_span
from invariants.weyl_calculus import eq2_check, psi, w_invariants
from invariants.zhelobenko import is_invariant, solve_invariants
from lie.root_system import build_root_system
from utils.error_handler import UsageError, VerificationFailure

logger = logging.getLogger(__name__)

Monomial = Tuple[int, int, int]

MAX_DEGREE = 6
SPINS = (0, 1, 2)


# =============================================================================
# Enveloping algebra of sl2
# =============================================================================

class PBWElement:
    """Element of U(sl2) in the straightened basis y^a h^b x^c."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Monomial, Any]] = None):
        self.terms: Dict[Monomial, Any] = {m: QQ(c) if isinstance(c, int) else c
                                           for m, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, a: int, b: int, c: int, coefficient: Any = 1) -> "PBWElement":
        return cls({(a, b, c): coefficient})

    @classmethod
    def generator(cls, name: str) -> "PBWElement":
        try:
            return cls.monomial(*{"y": (1, 0, 0), "h": (0, 1, 0), "x": (0, 0, 1)}[name])
        except KeyError as e:
            raise UsageError(f"Unknown sl2 generator {name!r}", "generator", name) from e

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def __add__(self, other: "PBWElement") -> "PBWElement":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, QQ(0)) + c
        return PBWElement(terms)

    def __sub__(self, other: "PBWElement") -> "PBWElement":
        return self + other.scale(-1)

    def scale(self, factor: Any) -> "PBWElement":
        return PBWElement({m: c * factor for m, c in self.terms.items()})

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, PBWElement):
            return NotImplemented
        return self.terms == other.terms

    def __mul__(self, other: "PBWElement") -> "PBWElement":
        result = PBWElement()
        for (a, b, c), coefficient in self.terms.items():
            product = other
            for _ in range(c):
                product = _left_multiply("x", product)
            for _ in range(b):
                product = _left_multiply("h", product)
            for _ in range(a):
                product = _left_multiply("y", product)
            result = result + product.scale(coefficient)
        return result

    def harish_chandra(self) -> Poly:
        """Keep the y^0 h^b x^0 terms, as a polynomial in h."""
        return Poly.from_terms(1, {(b,): value for (a, b, c), value in self.terms.items() if a == 0 and c == 0})

    def __repr__(self) -> str:
        return f"PBWElement({self.terms!r})"


def _left_multiply(name: str, element: PBWElement) -> PBWElement:
    """generator * element, straightened."""
    terms: Dict[Monomial, Any] = {}

    def add(monomial: Monomial, value: Any):
        terms[monomial] = terms.get(monomial, QQ(0)) + value

    for (a, b, c), coefficient in element.terms.items():
        if name == "y":
            add((a + 1, b, c), coefficient)
        elif name == "h":
            # h y^a = y^a (h - 2a)
            add((a, b + 1, c), coefficient)
            if a:
                add((a, b, c), -2 * a * coefficient)
        else:
            # x y^a = y^a x + a y^(a-1) (h - a + 1),  x h^b = (h - 2)^b x
            for k in range(b + 1):
                add((a, k, c + 1), coefficient * comb(b, k) * (-2) ** (b - k))
            if a:
                add((a - 1, b + 1, c), a * coefficient)
                add((a - 1, b, c), a * (1 - a) * coefficient)
    return PBWElement(terms)


def ad(name: str, element: PBWElement) -> PBWElement:
    """[z, u] for a generator z."""
    z = PBWElement.generator(name)
    return z * element - element * z


# =============================================================================
# Spin modules
# =============================================================================

def spin_action(n: int, name: str, k: int) -> List[Tuple[int, Any]]:
    """Action of a generator on v_k in V(n): f v_k = v_(k+1), e v_k = k(2n-k+1) v_(k-1)."""
    if name == "y":
        return [(k + 1, QQ(1))] if k < 2 * n else []
    if name == "x":
        return [(k - 1, QQ(k * (2 * n - k + 1)))] if k > 0 else []
    return [(k, QQ(2 * n - 2 * k))]


def _monomials(m: int) -> List[Monomial]:
    return sorted((a, b, c) for a in range(m + 1) for b in range(m + 1 - a) for c in range(m + 1 - a - b))


def invariant_images(n: int, m: int) -> List[Poly]:
    """
    Harish-Chandra images of (V(n) (x) F^m U)^sl2, one per kernel vector.

    The sl2-action on V(n) (x) U is z (v (x) u) = z v (x) u + v (x) [z, u].
    """
    monomials = _monomials(m)
    columns = [(k, mono) for k in range(2 * n + 1) for mono in monomials]
    adjoint_cache: Dict[Tuple[str, Monomial], PBWElement] = {}
    equations: Dict[Tuple[str, int, Monomial], Dict[int, Any]] = {}

    for column, (k, mono) in enumerate(columns):
        for name in ("x", "y"):
            for target, value in spin_action(n, name, k):
                equations.setdefault((name, target, mono), {})
                row = equations[(name, target, mono)]
                row[column] = row.get(column, QQ(0)) + value
            key = (name, mono)
            if key not in adjoint_cache:
                adjoint_cache[key] = ad(name, PBWElement.monomial(*mono))
            for image_mono, value in adjoint_cache[key].terms.items():
                row = equations.setdefault((name, k, image_mono), {})
                row[column] = row.get(column, QQ(0)) + value

    kernel = nullspace_of_rows(equations.values(), len(columns))
    images = []
    for vector in kernel:
        component = {(b,): value for (k, (a, b, c)), value in zip(columns, vector)
                     if value and k == n and a == 0 and c == 0}
        images.append(Poly.from_terms(1, component))
    logger.debug(f"V({n}) (x) F^{m}U: {len(kernel)} invariants")
    return images


def _coefficients(polys: List[Poly], m: int) -> List[Tuple[Any, ...]]:
    return [tuple(p.coefficient((b,)) for b in range(m + 1)) for p in polys]


@dataclass(frozen=True)
class OracleRecord:
    n: int
    m: int
    dim_invariants: int
    dim_image: int
    dim_expected: int
    matches_psi: bool
    eq2_holds: bool
    matches_xi: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return self.matches_psi and self.eq2_holds and self.matches_xi is not False

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "n": self.n, "m": self.m, "dim_invariants": self.dim_invariants,
            "dim_image": self.dim_image, "dim_expected": self.dim_expected,
            "matches_psi": self.matches_psi, "eq2_holds": self.eq2_holds,
        }
        if self.matches_xi is not None:
            data["matches_xi"] = self.matches_xi
        return data


@dataclass(frozen=True)
class OracleReport:
    mmax: int
    records: Tuple[OracleRecord, ...]
    timing_ms: int = 0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self, deterministic: bool = False) -> Dict[str, Any]:
        data = {"kind": "oracle", "mmax": self.mmax,
                "records": [r.to_dict() for r in self.records], "verdict": self.verdict}
        if not deterministic:
            data["timing_ms"] = self.timing_ms
        return data


def sl2_pbw_oracle(mmax: int = 4, spins=SPINS, strict: bool = True) -> OracleReport:
    """
    Run the rank-one oracle for every spin and every m = 0..mmax.

    Raises:
        UsageError: If mmax is outside 0..6
        VerificationFailure: In strict mode, naming the first failing m
    """
    if not isinstance(mmax, int) or not 0 <= mmax <= MAX_DEGREE:
        raise UsageError(f"Oracle degree must lie in 0..{MAX_DEGREE}, got {mmax!r}", "mmax", mmax)
    started = time.perf_counter()
    rs = build_root_system("A1")
    xi_space = solve_invariants(rs, -1, max(mmax - 1, 0))
    records = []

    for n in spins:
        for m in range(mmax + 1):
            images = invariant_images(n, m)
            image_basis = echelon_basis(_coefficients(images, m), m + 1)
            expected = []
            for e in range(m - n + 1):
                expected.extend(psi(rs, n, 0) * f for f in w_invariants(rs, e, "dot"))
            matches_psi = same_span(_coefficients(images, m), _coefficients(expected, m), m + 1)
            eq2_holds = all(eq2_check(rs, n, 0, q) for q in images)

            matches_xi = None
            if n == 1:
                xi_polys = [J.polys()[0] for J in xi_space.invariants_up_to(m)]
                matches_xi = (same_span(_coefficients(images, m), _coefficients(xi_polys, m), m + 1)
                              and all(is_invariant(rs, J) for J in xi_space.invariants_up_to(m)))

            record = OracleRecord(n, m, len(images), len(image_basis),
                                  len(echelon_basis(_coefficients(expected, m), m + 1)),
                                  matches_psi, eq2_holds, matches_xi)
            records.append(record)
            if strict and not record.passed:
                raise VerificationFailure(f"Rank-one oracle mismatch for spin {n} at m={m}", "A1",
                                          record.to_dict())

    report = OracleReport(mmax, tuple(records), int((time.perf_counter() - started) * 1000))
    logger.info(f"Rank-one oracle up to m={mmax}: {report.verdict}")
    return report
