import os, sys
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
import pytest
from sympy import QQ

from lie.chevalley import build_lie_algebra
from lie.filtration import exponents, principal_filtration


@pytest.mark.parametrize("text, expected", [
    ("A1", (1,)), ("A2", (1, 2)), ("A3", (1, 2, 3)), ("B2", (1, 3)), ("C3", (1, 3, 5)), ("B3", (1, 3, 5)),
    ("G2", (1, 5)),
])
def test_exponents(text, expected):
    flag = principal_filtration(text)
    assert exponents(text) == expected
    assert flag.eigenvalue_exponents == expected


@pytest.mark.parametrize("text", [
    "A1", "A2", "A3", "A4", "B2", "B3", "C3", "G2", pytest.param("D4", marks=pytest.mark.slow),
])
def test_exponents_account_for_dimension(text):
    assert sum(2 * m + 1 for m in exponents(text)) == build_lie_algebra(text).dimension


@pytest.mark.slow
def test_exponents_d4_repeated():
    flag = principal_filtration("D4")
    assert flag.exponents == (1, 3, 3, 5)
    assert len(flag.summands[3]) == 2


def test_dimensions_jump_at_exponents():
    assert principal_filtration("A2").dims == (0, 1, 2)
    assert principal_filtration("G2").dims == (0, 1, 1, 1, 1, 2)


def test_first_step_is_rho_line():
    for text in ("A2", "B2", "G2"):
        (vector,) = principal_filtration(text).primal_basis(1)
        assert vector[0] != 0
        assert all(x == vector[0] for x in vector)


def test_subspace_outside_range():
    flag = principal_filtration("A2")
    assert flag.subspace(-1) == ()
    assert flag.dim(10) == 2
    assert flag.primal_basis(0) == ()


def test_flag_independent_of_scale():
    assert principal_filtration("B2", QQ(3)).subspaces == principal_filtration("B2").subspaces


def test_to_dict():
    data = principal_filtration("B2").to_dict()
    assert data["exponents"] == [1, 3]
    assert data["dims"] == [0, 1, 1, 2]
    assert set(data["summands"]) == {"1", "3"}
