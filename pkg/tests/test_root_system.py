import os, sys
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
import pytest
from sympy import QQ

from lie.root_system import (Basis, LieType, Weight, build_root_system, cartan_matrix, coroot, langlands_dual,
                             rho, simple_reflection, weyl_group_order, weyl_orbit)
from utils.error_handler import UsageError


@pytest.mark.parametrize("text, positive, order", [
    ("A1", 1, 2), ("A2", 3, 6), ("B2", 4, 8), ("G2", 6, 12), ("A3", 6, 24), ("B3", 9, 48), ("C3", 9, 48),
    ("D4", 12, 192), ("F4", 24, 1152),
])
def test_root_counts_and_weyl_orders(text, positive, order):
    rs = build_root_system(text)
    assert len(rs.positive_roots) == positive
    assert weyl_group_order(rs) == order


@pytest.mark.parametrize("text", ["A0", "B1", "D2", "E5", "F3", "G3", "X3", "", "A-1"])
def test_illegal_types_rejected(text):
    with pytest.raises(UsageError):
        build_root_system(text)


def test_parse_is_case_insensitive():
    assert LieType.parse(" g2 ") == LieType("G", 2)
    assert str(LieType.parse("e8")) == "E8"


def test_cartan_conventions():
    # alpha_1 short in G2, alpha_2 short in B2
    assert cartan_matrix(LieType("G", 2)) == ((2, -3), (-1, 2))
    assert cartan_matrix(LieType("B", 2)) == ((2, -1), (-2, 2))
    assert cartan_matrix(LieType("C", 2)) == ((2, -2), (-1, 2))


def test_positive_roots_ordered_by_height():
    rs = build_root_system("G2")
    assert rs.positive_roots[:2] == ((0, 1), (1, 0))
    assert rs.highest_root == (3, 2)
    assert all(rs.height(a) <= rs.height(b) for a, b in zip(rs.positive_roots, rs.positive_roots[1:]))


def test_weight_bases_and_reflections():
    rs = build_root_system("A2")
    assert rs.simple_root(0, Basis.FUNDAMENTAL).coords == (QQ(2), QQ(-1))
    assert simple_reflection(rs, 0, rho(rs)).coords == (QQ(-1), QQ(2))
    assert rs.convert(rho(rs), Basis.ROOT).coords == (QQ(1), QQ(1))
    assert len(weyl_orbit(rs, rs.fundamental_weight(0))) == 3


def test_inner_product_normalization():
    rs = build_root_system("B2")
    long_root, short_root = Weight((1, 0), Basis.ROOT), Weight((0, 1), Basis.ROOT)
    assert rs.inner_product(long_root, long_root) == 2
    assert rs.inner_product(short_root, short_root) == 1


def test_coroots():
    assert coroot(build_root_system("A2"), (1, 1)) == (QQ(1), QQ(1))
    g2 = build_root_system("G2")
    assert coroot(g2, (1, 0)) == (QQ(1), QQ(0))
    assert coroot(g2, (3, 2)) == (QQ(1), QQ(2))
    with pytest.raises(UsageError):
        coroot(g2, (2, 2))


def test_langlands_dual_swaps_b_and_c():
    dual = langlands_dual(build_root_system("B3"))
    assert str(dual.lie_type) == "C3"
    assert dual.cartan == build_root_system("C3").cartan


@pytest.mark.parametrize("text", ["A3", "B3", "C3", "G2", "D4", "F4"])
def test_simple_reflection_permutes_other_positive_roots(text):
    rs = build_root_system(text)
    for i in range(rs.rank):
        simple = tuple(1 if k == i else 0 for k in range(rs.rank))
        others = set(rs.positive_roots) - {simple}
        assert {rs.reflect_root(i, root) for root in others} == others
        assert rs.reflect_root(i, simple) == tuple(-c for c in simple)


@pytest.mark.parametrize("basis", list(Basis))
def test_simple_reflections_square_to_identity(rng, basis):
    for text in ("A2", "B3", "G2"):
        rs = build_root_system(text)
        for _ in range(20):
            weight = Weight(tuple(QQ(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(rs.rank)), basis)
            for i in range(rs.rank):
                assert simple_reflection(rs, i, simple_reflection(rs, i, weight)) == weight


@pytest.mark.parametrize("text", ["A3", "B3", "C3", "D4", "G2", "F4"])
def test_basis_conversions_are_exact_inverses(rng, text):
    rs = build_root_system(text)
    identity = [[1 if i == j else 0 for j in range(rs.rank)] for i in range(rs.rank)]
    assert (rs.root_to_weight @ rs.weight_to_root).to_lists() == identity
    assert (rs.weight_to_root @ rs.root_to_weight).to_lists() == identity
    for _ in range(10):
        weight = Weight(tuple(QQ(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(rs.rank)))
        for basis in Basis:
            assert rs.convert(rs.convert(weight, basis), Basis.FUNDAMENTAL) == weight
