"""Tests for exact reals and the bracket functions."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from geodkit.config import PrecisionPolicy
from geodkit.errors import BracketError
from geodkit.numerics import (
    CertifiedDecimal,
    Order,
    QuadraticIrrational,
    Rational,
    ceil_of,
    compare,
    decimal,
    floor_of,
    floor_of_multiple,
    frac_of,
    from_literal,
    quadratic,
    rational,
    to_literal,
    varphi_of,
)

HALF_ROOT_TWO = quadratic(0, 1, 2, 2)


class TestConstruction:
    """Test canonical construction of exact reals."""

    def test_quadratic_is_reduced(self):
        """Test that square factors and common divisors are removed."""
        assert quadratic(0, 1, 8, 4) == HALF_ROOT_TWO
        assert quadratic(2, 2, 2, 4) == QuadraticIrrational(1, 1, 2, 2)

    def test_negative_denominator_is_normalized(self):
        """Test that the denominator is made positive."""
        assert quadratic(1, 1, 2, -2) == QuadraticIrrational(-1, -1, 2, 2)

    def test_perfect_square_collapses_to_rational(self):
        """Test that a perfect-square radicand gives a rational."""
        assert quadratic(1, 1, 4) == Rational(Fraction(3))
        assert quadratic(5, 0, 2, 3) == rational(5, 3)

    def test_invalid_arguments(self):
        """Test rejected constructor arguments."""
        with pytest.raises(ValueError):
            quadratic(0, 1, 2, 0)
        with pytest.raises(ValueError):
            quadratic(0, 1, -2)
        with pytest.raises(ValueError):
            rational(1, 0)
        with pytest.raises(ValueError):
            decimal("abc", 3)

    def test_rationality_flags(self):
        """Test is_rational for every representation."""
        assert rational(1, 3).is_rational is True
        assert HALF_ROOT_TWO.is_rational is False
        assert decimal("0.3183", 4).is_rational is None
        assert decimal("0.3183", 4, irrational=True).is_rational is False


class TestArithmetic:
    """Test sums and rational multiples."""

    def test_same_radical_stays_exact(self):
        """Test that sums over one radical stay quadratic."""
        assert HALF_ROOT_TWO + HALF_ROOT_TWO == quadratic(0, 1, 2)
        assert quadratic(0, 1, 2) - 1 == quadratic(-1, 1, 2)
        assert 2 * HALF_ROOT_TWO == quadratic(0, 1, 2)

    def test_negation(self):
        """Test negation of a quadratic irrational."""
        assert -HALF_ROOT_TWO == quadratic(0, -1, 2, 2)

    def test_mixed_radicals_promote_to_decimal(self):
        """Test that √2 + √3 becomes a refinable certified decimal."""
        total = quadratic(0, 1, 2) + quadratic(0, 1, 3)
        assert isinstance(total, CertifiedDecimal)
        assert total.refinable
        assert float(total) == pytest.approx(math.sqrt(2) + math.sqrt(3))

    def test_rational_multiple_of_decimal(self):
        """Test scaling a decimal by a fraction."""
        third = decimal("0.318309886", 9, expr="1/pi", irrational=True) * Fraction(1, 3)
        assert float(third) == pytest.approx(1 / (3 * math.pi))
        assert third.is_rational is False


class TestBrackets:
    """Test [a], φ(a), E(a) and {a}."""

    def test_floor_of_quadratic(self):
        """Test exact floors of quadratic irrationals."""
        assert floor_of(HALF_ROOT_TWO * 5) == 3
        assert floor_of(quadratic(0, -1, 2)) == -2
        assert floor_of_multiple(HALF_ROOT_TWO, 7) == 4

    def test_floor_of_rational(self):
        """Test floors of rationals, including negative ones."""
        assert floor_of(rational(7, 2)) == 3
        assert floor_of(rational(-7, 2)) == -4
        assert floor_of_multiple(rational(1, 3), 6) == 2

    def test_varphi_and_ceiling(self):
        """Test φ and E on integers and non-integers."""
        assert varphi_of(rational(3)) == 0
        assert varphi_of(rational(7, 2)) == 1
        assert varphi_of(HALF_ROOT_TWO) == 1
        assert ceil_of(rational(3)) == 3
        assert ceil_of(rational(7, 2)) == 4
        assert ceil_of(HALF_ROOT_TWO * 3) == 3

    def test_fractional_part(self):
        """Test that {√2} is √2 - 1."""
        assert frac_of(quadratic(0, 1, 2)) == quadratic(-1, 1, 2)
        assert frac_of(rational(7, 2)) == rational(1, 2)
        assert frac_of(HALF_ROOT_TWO) == HALF_ROOT_TWO

    def test_expression_decimal_is_refined(self):
        """Test that a transcendental angle is floored after refinement."""
        inverse_pi = decimal("0.318309886", 9, expr="1/pi", irrational=True)
        assert floor_of(inverse_pi * 3) == 0
        assert floor_of(inverse_pi * 22) == 7

    def test_fixed_decimal_straddling_integer(self):
        """Test undecidable floors of non-refinable decimals."""
        with pytest.raises(BracketError) as info:
            floor_of(decimal("1.0000", 4))
        assert info.value.kind == "undecidable-floor"

    def test_scaled_fixed_decimal_straddling_integer(self):
        """Test that 3 x 0.3333333333 (10 digits) has no certified floor."""
        third = decimal("0.3333333333", 10, irrational=True)
        for bracket in (lambda: floor_of_multiple(third, 3), lambda: ceil_of(third * 3),
                        lambda: frac_of(third * 3)):
            with pytest.raises(BracketError) as info:
                bracket()
            assert info.value.kind == "undecidable-floor"

    def test_scaled_fixed_decimal_keeps_its_width(self):
        """Test that a multiple of a fixed decimal claims only the digits it has."""
        doubled = decimal("0.3333333333", 10, irrational=True) * 2
        assert isinstance(doubled, CertifiedDecimal)
        assert not doubled.refinable
        assert doubled.expr is None
        assert (doubled.value, doubled.digits) == ("0.666666667", 9)
        assert doubled.enclosure(64) == (Fraction("0.6666666664"), Fraction("0.6666666668"))
        assert floor_of(doubled) == 0

    def test_sum_with_fixed_decimal_is_fixed(self):
        """Test that a fixed operand makes a sum non-refinable."""
        total = decimal("0.25", 2, irrational=True) + HALF_ROOT_TWO
        assert not total.refinable
        assert floor_of(total) == 0
        with pytest.raises(BracketError):
            floor_of(decimal("0.29", 2, irrational=True) + HALF_ROOT_TWO)

    def test_precision_exhausted(self):
        """Test that comparisons give up at the precision cap."""
        policy = PrecisionPolicy(start_digits=16, max_digits=64)
        with pytest.raises(BracketError) as info:
            compare(decimal("0.5", 3), rational(1, 2), policy=policy)
        assert info.value.kind == "precision-exhausted"


class TestCompare:
    """Test ordering of exact reals."""

    def test_exact_comparison(self):
        """Test comparisons decided by integer arithmetic."""
        assert compare(quadratic(0, 1, 2), rational(3, 2)) is Order.LESS
        assert compare(quadratic(0, 1, 2), rational(7, 5)) is Order.GREATER
        assert compare(HALF_ROOT_TWO, quadratic(0, 1, 8, 4)) is Order.EQUAL

    def test_mixed_radical_comparison(self):
        """Test comparisons decided by escalating enclosures."""
        assert compare(quadratic(0, 1, 2), quadratic(0, 1, 3)) is Order.LESS
        assert HALF_ROOT_TWO > rational(1, 2)
        assert HALF_ROOT_TWO <= 1


class TestLiterals:
    """Test angle literal parsing."""

    def test_parse_each_kind(self):
        """Test rational, quadratic and decimal literals."""
        assert from_literal({"kind": "rational", "p": 1, "q": 3}) == rational(1, 3)
        assert from_literal({"kind": "quadratic", "p": 0, "q": 1, "d": 2, "r": 2}) == (
            HALF_ROOT_TWO
        )
        value = from_literal({"kind": "decimal", "value": "0.25", "digits": 2})
        assert isinstance(value, CertifiedDecimal)
        assert value.digits == 2

    def test_radicand_default_denominator(self):
        """Test that r defaults to 1."""
        assert from_literal({"kind": "quadratic", "p": 0, "q": 1, "d": 2}) == quadratic(0, 1, 2)

    def test_invalid_literals(self):
        """Test rejected literals."""
        with pytest.raises(ValueError, match="unknown angle literal kind"):
            from_literal({"kind": "bogus"})
        with pytest.raises(ValueError, match="missing key"):
            from_literal({"kind": "quadratic", "p": 0})
        with pytest.raises(ValueError):
            from_literal(True)
        with pytest.raises(ValueError):
            from_literal({"kind": "decimal", "value": "0.5", "digits": 2, "irrational": "yes"})
        with pytest.raises(ValueError):
            from_literal({"kind": "decimal", "value": "0.5", "digits": 3, "expr": "__import__"})

    def test_literal_carries_decimal_metadata(self):
        """Test that expr and irrational survive to_literal."""
        literal = to_literal(decimal("0.318309886", 9, expr="1/pi", irrational=True))
        assert literal == {
            "kind": "decimal",
            "value": "0.318309886",
            "digits": 9,
            "expr": "1/pi",
            "irrational": True,
        }


@given(
    p=st.integers(-50, 50),
    q=st.integers(-20, 20).filter(lambda q: q != 0),
    d=st.integers(2, 60),
    r=st.integers(1, 30),
)
def test_floor_brackets_value(p, q, d, r):
    """Test [x] <= x < [x] + 1 against independent comparisons."""
    x = quadratic(p, q, d, r)
    k = floor_of(x)
    assert compare(x, rational(k)) is not Order.LESS
    assert compare(x, rational(k + 1)) is Order.LESS


@given(
    p=st.integers(-50, 50),
    q=st.integers(-20, 20).filter(lambda q: q != 0),
    d=st.integers(2, 60),
    r=st.integers(1, 30),
    m=st.integers(1, 200),
)
def test_floor_of_multiple_matches_scaled_floor(p, q, d, r, m):
    """Test [m·x] computed directly and through the scaled value."""
    x = quadratic(p, q, d, r)
    assert floor_of_multiple(x, m) == floor_of(x * m)


def decimal_image(x, digits=100, refinable=False):
    """The certified decimal of x to ``digits`` places, optionally refinable through expr."""
    lo, hi = x.enclosure(digits + 2)
    scaled = round((lo + hi) / 2 * 10**digits)
    whole, frac = divmod(abs(scaled), 10**digits)
    value = f"{'-' if scaled < 0 else ''}{whole}.{frac:0{digits}d}"
    return decimal(value, digits, expr=x.expression() if refinable else None, irrational=True)


@given(
    p=st.integers(-50, 50),
    q=st.integers(-20, 20).filter(lambda q: q != 0),
    d=st.integers(2, 60),
    r=st.integers(1, 30),
    m=st.integers(1, 200),
)
def test_floor_matches_decimal_image(p, q, d, r, m):
    """Test exact floors against 100-digit certified images, fixed and refinable."""
    x = quadratic(p, q, d, r)
    if not isinstance(x, QuadraticIrrational):
        return
    for image in (decimal_image(x), decimal_image(x, refinable=True)):
        assert floor_of(image) == floor_of(x)
        assert floor_of_multiple(image, m) == floor_of_multiple(x, m)


@given(
    p=st.integers(-50, 50),
    q=st.integers(1, 20),
    d=st.integers(2, 60),
    r=st.integers(1, 30),
)
def test_escalation_is_monotone(p, q, d, r):
    """Test that refined enclosures are nested and shrink along the schedule."""
    x = quadratic(p, q, d, r)
    if not isinstance(x, QuadraticIrrational):
        return
    image = decimal_image(x, digits=8, refinable=True) * 3
    schedule = PrecisionPolicy(start_digits=16, max_digits=128).schedule()
    enclosures = [image.enclosure(digits) for digits in schedule]
    for (lo, hi), (next_lo, next_hi) in zip(enclosures, enclosures[1:]):
        assert lo <= next_lo <= next_hi <= hi
        assert next_hi - next_lo < hi - lo
