import os, sys
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
from fractions import Fraction

import pytest
from sympy import QQ

from algebra.exact import NEG_INFINITY, LinearFraction, Poly, format_scalar, parse_scalar, to_scalar
from utils.error_handler import DimensionMismatchError, UsageError


@pytest.mark.parametrize("value, expected", [
    (3, QQ(3)),
    ("3/4", QQ(3, 4)),
    (" -6/8 ", QQ(-3, 4)),
    (Fraction(5, 2), QQ(5, 2)),
    (QQ(1, 3), QQ(1, 3)),
])
def test_to_scalar_accepts_exact_values(value, expected):
    assert to_scalar(value) == expected


@pytest.mark.parametrize("value", [0.5, True, "1/0", "abc"])
def test_to_scalar_rejects_inexact_or_malformed(value):
    with pytest.raises(UsageError):
        to_scalar(value)


def test_format_and_parse_scalar():
    assert format_scalar(QQ(-3, 4)) == "-3/4"
    assert format_scalar(QQ(10, 5)) == "2"
    assert parse_scalar(format_scalar(QQ(7, 9))) == QQ(7, 9)


def test_canonical_text_form():
    p = Poly.parse("h1^2 + h1 - 2", 1)
    assert str(p) == "h1^2 + h1 - 2"
    q = Poly.parse("3 - h2**2 + 2*h1*h2", 2)
    assert str(q) == "2*h1*h2 - h2^2 + 3"
    assert str(Poly.zero(2)) == "0"
    assert str(Poly.from_terms(1, {(1,): QQ(1, 2)})) == "1/2*h1"


def test_parse_round_trip(random_poly):
    for _ in range(20):
        p = random_poly(3, 3)
        assert Poly.parse(str(p), 3) == p


def test_ring_axioms(random_poly):
    for _ in range(10):
        a, b, c = random_poly(2, 2), random_poly(2, 2), random_poly(2, 2)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a - a == Poly.zero(2)


def test_degree_and_parts():
    h1, h2 = Poly.variables(2)
    p = h1 ** 2 * h2 + h1 - 3
    assert p.degree == 3
    assert p.top_part() == h1 ** 2 * h2
    assert p.homogeneous_part(1) == h1
    assert Poly.zero(2).degree == NEG_INFINITY
    assert Poly.constant(2, 5).is_constant


def test_divide_exact():
    h1, h2 = Poly.variables(2)
    assert (h1 ** 2 - 1).divide_exact(h1 - 1) == h1 + 1
    assert (h1 * h2 + h2).divide_exact(h2) == h1 + 1
    assert (h1 ** 2 + 1).divide_exact(h1) is None
    with pytest.raises(UsageError):
        h1.divide_exact(Poly.zero(2))


def test_evaluate_and_substitute():
    h1, h2 = Poly.variables(2)
    p = h1 * h2 - h2 + 2
    assert p.evaluate([3, QQ(1, 2)]) == QQ(3, 1)
    assert p.substitute([h2, h1]) == h1 * h2 - h1 + 2
    with pytest.raises(DimensionMismatchError):
        p.evaluate([1])


def test_rank_mismatch_rejected():
    with pytest.raises(DimensionMismatchError):
        Poly.variable(1, 0) + Poly.variable(2, 0)


def test_linear_fraction_cancels_to_polynomial():
    h = Poly.variable(1, 0)
    fraction = LinearFraction(h * (h + 2), [(0, 2)])
    assert fraction.is_polynomial
    assert fraction == h
    assert fraction.as_poly() == h


def test_linear_fraction_arithmetic():
    h = Poly.variable(1, 0)
    third = LinearFraction(Poly.one(1), [(0, 2)])
    assert third + third == LinearFraction(Poly.constant(1, 2), [(0, 2)])
    assert (third * (h + 2)).is_polynomial
    mixed = third + LinearFraction(Poly.one(1), [(0, 1)])
    assert mixed.denominator() == (h + 1) * (h + 2)
    assert mixed.evaluate([0]) == QQ(3, 2)
    assert str(third) == "(1)/(h1 + 2)"


def test_linear_fraction_pole():
    fraction = LinearFraction(Poly.one(1), [(0, 2)])
    with pytest.raises(UsageError):
        fraction.evaluate([-2])
    with pytest.raises(UsageError):
        fraction.as_poly()


def test_divide_exact_recovers_factor(random_poly):
    for _ in range(100):
        p = random_poly(2, 3)
        d = random_poly(2, 2)
        if d.is_zero:
            continue
        assert (p * d).divide_exact(d) == p


def test_divide_exact_reports_non_divisible():
    h1, h2 = Poly.variables(2)
    assert (h1 * h2 + 1).divide_exact(h1) is None
    with pytest.raises(UsageError):
        h1.divide_exact(Poly.zero(2))


def test_evaluation_is_ring_homomorphism(rng, random_poly):
    for _ in range(100):
        a, b = random_poly(3, 3), random_poly(3, 3)
        point = [QQ(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(3)]
        assert (a + b).evaluate(point) == a.evaluate(point) + b.evaluate(point)
        assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)
        assert Poly.one(3).evaluate(point) == 1


def test_linear_fraction_canonical_under_factor_order(rng, random_poly):
    h1, h2 = Poly.variables(2)
    factors = [(0, 1), (1, -2), (0, 3), (0, 1), (1, QQ(1, 2))]
    for _ in range(20):
        numerator = random_poly(2, 2) * (h1 + 1) * (h2 - 2)
        shuffled = list(factors)
        rng.shuffle(shuffled)
        first = LinearFraction(numerator, factors)
        second = LinearFraction(numerator, shuffled)
        assert first == second
        assert first.numerator == second.numerator
        assert first.denominators == second.denominators
        assert hash(first) == hash(second)
