import os, sys
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
import pytest

from algebra.exact import Poly
from invariants.zhelobenko import (PTuple, P_to_q, ZeroWeightElement, check_prop33, cross_relation_residual,
                                   eq9_residual, expected_solution_dimension, extract_generators, is_invariant,
                                   multiply_by_invariant, p_relation_residual, q_to_P, shifted_relation_residual,
                                   solve_invariants, xi)
from invariants.weyl_calculus import act_simple, theta
from lie.root_system import build_root_system
from utils.error_handler import DimensionMismatchError, UsageError, VerificationFailure


def test_coroot_element_is_fixed_by_every_xi():
    rs = build_root_system("B2")
    element = ZeroWeightElement.coroot_element(2)
    assert is_invariant(rs, element)
    for i in range(2):
        image = xi(rs, i, element)
        assert image.is_polynomial
        assert image.polys() == element.polys()


def test_xi_moves_non_invariants():
    rs = build_root_system("A1")
    element = ZeroWeightElement.parse(["h1^2"], 1)
    image = xi(rs, 0, element)
    assert not image.is_polynomial or image.polys() != element.polys()
    assert not is_invariant(rs, element)


def test_invariance_conditions_report():
    rs = build_root_system("A2")
    assert check_prop33(rs, ZeroWeightElement.coroot_element(2)).all_hold
    report = check_prop33(rs, ZeroWeightElement.parse(["h1^2", "h2"], 2))
    assert not report.divisibility_sign
    assert report.failures[0] == "(i) fails at i=1"


def test_multiplying_by_dot_invariant_keeps_invariance():
    rs = build_root_system("A1")
    h = Poly.variable(1, 0)
    element = multiply_by_invariant(rs, (h + 1) ** 2, ZeroWeightElement.coroot_element(1))
    assert is_invariant(rs, element)
    assert not is_invariant(rs, multiply_by_invariant(rs, h ** 2, ZeroWeightElement.coroot_element(1)))


@pytest.mark.parametrize("c", [-1, 0, 1, "1/2"])
@pytest.mark.parametrize("text", ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4", "E6"])
def test_constant_tuple_solves_every_system(text, c):
    rs = build_root_system(text)
    ones = PTuple.ones(rs.rank)
    assert solve_invariants(rs, c, 0).contains(ones)
    for i in range(rs.rank):
        for j in range(rs.rank):
            assert eq9_residual(rs, ones, c, i, j).is_zero
    assert is_invariant(rs, P_to_q(rs, ones))


def test_constant_tuple_in_higher_degree_solution_space():
    rs = build_root_system("A2")
    for c in (-1, 0, 1):
        assert solve_invariants(rs, c, 1).contains(PTuple.ones(2))


def test_rank_one_dimensions():
    space = solve_invariants(build_root_system("A1"), -1, 4)
    assert space.graded_dimensions() == [1, 1, 2, 2, 3]


def test_solutions_match_free_module_count():
    rs = build_root_system("A2")
    space = solve_invariants(rs, -1, 2)
    for m in range(1, 4):
        assert space.dimension(m - 1) == expected_solution_dimension((1, 2), m)


def test_solutions_are_invariant_and_satisfy_all_relations():
    rs = build_root_system("A2")
    space = solve_invariants(rs, -1, 2)
    for P in space.basis_up_to(2):
        element = P_to_q(rs, P)
        assert is_invariant(rs, element)
        assert q_to_P(rs, element) == P
        p = [q.divide_exact(Poly.variable(2, i)) for i, q in enumerate(element.polys())]
        for i in range(2):
            for j in range(2):
                assert eq9_residual(rs, P, -1, i, j).is_zero
                assert p_relation_residual(rs, p, i, j).is_zero
                assert shifted_relation_residual(rs, P.entries, i, j).is_zero
                if i != j:
                    assert cross_relation_residual(rs, element.polys(), i, j).is_zero


def test_top_parts_solve_the_homogeneous_system():
    rs = build_root_system("A2")
    kostant = solve_invariants(rs, -1, 2)
    symmetric = solve_invariants(rs, 0, 2)
    assert kostant.graded_dimensions() == symmetric.graded_dimensions()
    for P in kostant.basis_up_to(2):
        assert symmetric.contains(P.top_part())


@pytest.mark.parametrize("text, degrees", [("A1", [1]), ("A2", [1, 2]), ("B2", [1, 3])])
def test_generator_degrees(text, degrees):
    rs = build_root_system(text)
    generators = extract_generators(rs)
    assert [g.q_degree for g in generators] == degrees
    assert all(is_invariant(rs, g.invariant(rs)) for g in generators)


@pytest.mark.parametrize("text, degrees", [("A3", [1, 2, 3])])
def test_generator_degrees_rank_three(text, degrees):
    rs = build_root_system(text)
    generators = extract_generators(rs)
    assert sorted(g.q_degree for g in generators) == degrees
    assert all(is_invariant(rs, g.invariant(rs)) for g in generators)


@pytest.mark.slow
@pytest.mark.parametrize("text, degrees", [
    ("G2", [1, 5]), ("A4", [1, 2, 3, 4]), ("B3", [1, 3, 5]), ("C3", [1, 3, 5]), ("D4", [1, 3, 3, 5]),
])
def test_generator_degrees_larger_types(text, degrees):
    rs = build_root_system(text)
    generators = extract_generators(rs)
    assert sorted(g.q_degree for g in generators) == degrees
    assert all(is_invariant(rs, g.invariant(rs)) for g in generators)


@pytest.mark.slow
def test_repeated_exponent_needs_two_generators():
    rs = build_root_system("D4")
    generators = extract_generators(rs)
    middle = [g for g in generators if g.q_degree == 3]
    assert len(middle) == 2
    assert middle[0].p_tuple != middle[1].p_tuple
    with pytest.raises(VerificationFailure):
        extract_generators(rs, expected=[1, 3, 5])


def test_wrong_expected_degrees_raise():
    with pytest.raises(VerificationFailure):
        extract_generators(build_root_system("A2"), expected=[1, 3])


def test_bad_inputs():
    rs = build_root_system("A2")
    with pytest.raises(UsageError):
        solve_invariants(rs, -1, -1)
    with pytest.raises(UsageError):
        q_to_P(rs, ZeroWeightElement.parse(["h2", "h1"], 2))
    with pytest.raises(DimensionMismatchError):
        is_invariant(rs, ZeroWeightElement.coroot_element(1))


@pytest.mark.parametrize("text", ["A1", "A2", "B2"])
def test_generator_top_parts_do_not_depend_on_c(text):
    rs = build_root_system(text)
    kostant = extract_generators(rs, -1)
    quantum = extract_generators(rs, 1)
    symmetric = solve_invariants(rs, 0, max(g.p_degree for g in kostant))
    for first, second in zip(kostant, quantum):
        assert first.q_degree == second.q_degree
        assert symmetric.contains(first.p_tuple.top_part())
        assert symmetric.contains(second.p_tuple.top_part())


def test_xi_is_twisted_multiplicative(random_poly):
    rs = build_root_system("A2")
    element = ZeroWeightElement.parse(["h1^2 + h2", "h1*h2 - 3"], 2)
    for _ in range(3):
        f = random_poly(2, 2)
        for i in range(2):
            left = xi(rs, i, multiply_by_invariant(rs, f, element))
            reflected = act_simple(rs, "dot", i, f)
            right = [entry * reflected for entry in xi(rs, i, element).coords]
            assert list(left.coords) == right


def _random_solution(space, rng, rank):
    combination = PTuple(tuple(Poly.zero(rank) for _ in range(rank)))
    for P in space.basis_up_to(space.dmax):
        combination = combination + P.scale_by(Poly.constant(rank, rng.randint(-3, 3)))
    return combination


def _all_relations_vanish(rs, P):
    return all(shifted_relation_residual(rs, P.entries, i, j).is_zero
               for i in range(rs.rank) for j in range(rs.rank))


@pytest.mark.parametrize("text", ["A1", "A2", "B2", "A3"])
def test_invariance_routes_on_random_elements(text, rng):
    rs = build_root_system(text)
    rank = rs.rank
    h = Poly.variables(rank)
    space = solve_invariants(rs, -1, 2)
    for _ in range(25):
        P = _random_solution(space, rng, rank)
        element = P_to_q(rs, P)
        assert is_invariant(rs, element)
        assert check_prop33(rs, element).all_hold
        for i in range(rank):
            assert list(xi(rs, i, element).coords) == list(element.polys())
            for j in range(rank):
                assert eq9_residual(rs, P, -1, i, j).is_zero

        # adding a non-invariant element breaks invariance on every route
        k = rng.randrange(rank)
        bump = [Poly.zero(rank)] * rank
        bump[k] = h[k] ** 2 if rng.random() < 0.5 else Poly.constant(rank, rng.randint(1, 4))
        broken = ZeroWeightElement(tuple(q + b for q, b in zip(element.polys(), bump)))
        assert not is_invariant(rs, broken)
        assert not check_prop33(rs, broken).all_hold
        assert any(list(xi(rs, i, broken).coords) != list(broken.polys()) for i in range(rank))


@pytest.mark.parametrize("text", ["A1", "A2", "B2", "A3"])
def test_relation_forms_agree_on_random_tuples(text, random_poly):
    rs = build_root_system(text)
    rank = rs.rank
    h = Poly.variables(rank)
    for _ in range(50):
        P = PTuple(tuple(random_poly(rank, 2) for _ in range(rank)))
        p = [theta(entry) for entry in P.entries]
        for i in range(rank):
            for j in range(rank):
                shifted = shifted_relation_residual(rs, P.entries, i, j)
                assert p_relation_residual(rs, p, i, j) == theta(shifted)
                assert h[i] * eq9_residual(rs, P, -1, i, j) == shifted
        assert is_invariant(rs, P_to_q(rs, P)) == _all_relations_vanish(rs, P)
