import os, sys
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
import pytest
from sympy import QQ

from lie.chevalley import build_lie_algebra, principal_sl2
from lie.root_system import coroot
from utils.error_handler import DimensionMismatchError, UsageError


@pytest.mark.parametrize("text, dimension", [("A1", 3), ("A2", 8), ("B2", 10), ("G2", 14), ("A3", 15)])
def test_dimension(text, dimension):
    assert build_lie_algebra(text).dimension == dimension


def test_random_brackets_antisymmetric_and_jacobi(rng):
    algebra = build_lie_algebra("B2")
    for _ in range(5):
        a, b, c = (algebra.random_element(rng) for _ in range(3))
        assert algebra.bracket(a, b) == tuple(-x for x in algebra.bracket(b, a))
        total = [QQ(0)] * algebra.dimension
        for u, v, w in ((a, b, c), (b, c, a), (c, a, b)):
            for k, value in enumerate(algebra.bracket(u, algebra.bracket(v, w))):
                total[k] += value
        assert not any(total)


def test_root_brackets_give_coroots():
    algebra = build_lie_algebra("G2")
    rs = algebra.rs
    for gamma in rs.positive_roots:
        negative = tuple(-c for c in gamma)
        h = algebra.bracket(algebra.root_vector(gamma), algebra.root_vector(negative))
        expected = algebra.cartan_vector(coroot(rs, gamma))
        assert h in (expected, tuple(-x for x in expected))


def test_killing_form():
    a1 = build_lie_algebra("A1")
    h = a1.cartan_vector([1])
    assert a1.killing(h, h) == 8
    assert build_lie_algebra("A2").cartan_killing_matrix().to_lists() == [[12, -6], [-6, 12]]


def test_bracket_table_labels():
    table = build_lie_algebra("A1").bracket_table()
    assert table["[x[1], x[-1]]"] == "1*h1"
    assert table["[h1, x[1]]"] == "2*x[1]"


@pytest.mark.parametrize("text, coefficients", [("A1", (1,)), ("A2", (2, 2)), ("B2", (4, 3)), ("G2", (6, 10))])
def test_principal_sl2(text, coefficients):
    algebra = build_lie_algebra(text)
    triple = principal_sl2(algebra)
    assert triple.coefficients == tuple(QQ(c) for c in coefficients)
    assert algebra.bracket(triple.e, triple.f) == triple.h


def test_bad_inputs():
    algebra = build_lie_algebra("A2")
    with pytest.raises(UsageError):
        algebra.index_of_root((2, 1))
    with pytest.raises(DimensionMismatchError):
        algebra.bracket(algebra.basis_vector(0), (1, 0))


@pytest.mark.parametrize("text", ["A2", "B2", "G2"])
def test_killing_form_is_invariant(rng, text):
    algebra = build_lie_algebra(text)
    for _ in range(10):
        a, b, c = (algebra.random_element(rng, spread=2) for _ in range(3))
        assert algebra.killing(algebra.bracket(a, b), c) == algebra.killing(a, algebra.bracket(b, c))
        assert algebra.killing(a, b) == algebra.killing(b, a)


@pytest.mark.parametrize("text", ["A1", "A3", "B3", "C3", "G2"])
def test_principal_grading_by_height(text):
    algebra = build_lie_algebra(text)
    rs = algebra.rs
    triple = principal_sl2(algebra)
    for gamma in rs.roots:
        x = algebra.root_vector(gamma)
        assert algebra.bracket(triple.h, x) == tuple(2 * rs.height(gamma) * v for v in x)
    top = rs.height(rs.highest_root)
    ad_e = algebra.ad_matrix(triple.e)
    assert (ad_e ** (2 * top + 1)).is_zero()
    assert not (ad_e ** (2 * top)).is_zero()
