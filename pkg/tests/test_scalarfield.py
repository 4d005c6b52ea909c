from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from skyburst.errors import DomainError
from skyburst.scalarfield import (
    Omega,
    as_omega,
    binomial,
    parse_rational,
    pochhammer,
    to_float,
)

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=40
)


class TestPochhammer:
    def test_empty_product(self):
        assert pochhammer(Fraction(7, 3), 0) == 1
        assert pochhammer(0.25, 0) == 1.0

    def test_negative_integer_base_vanishes(self):
        assert pochhammer(Fraction(-3), 5) == 0

    def test_half_cubed(self):
        # direct product oracle: (1/2)(3/2)(5/2)
        expected = Fraction(1, 2) * Fraction(3, 2) * Fraction(5, 2)
        assert expected == Fraction(15, 8)
        assert pochhammer(Fraction(1, 2), 3) == expected

    def test_exact_zeros_exhaustive(self):
        for k in range(31):
            for n in range(k):
                assert pochhammer(Fraction(-n), k) == 0

    @given(rationals, st.integers(0, 20), st.integers(0, 20))
    def test_additivity(self, x, j, k):
        assert pochhammer(x, j + k) == pochhammer(x, j) * pochhammer(x + j, k)

    def test_negative_order_rejected(self):
        with pytest.raises(DomainError):
            pochhammer(Fraction(1), -1)

    def test_float_mode_stays_float(self):
        assert isinstance(pochhammer(0.5, 3), float)


class TestBinomial:
    def test_edge(self):
        assert binomial(5, 0) == 1
        assert binomial(4, 2) == 6

    def test_pascal_oracle(self):
        # Pascal recurrence, independent of math.comb
        row = [1]
        for _ in range(9):
            row = [1] + [a + b for a, b in zip(row, row[1:])] + [1]
        assert row[4] == 126
        assert binomial(9, 4) == 126
        assert [binomial(9, k) for k in range(10)] == row

    def test_domain(self):
        with pytest.raises(DomainError):
            binomial(3, 4)
        with pytest.raises(DomainError):
            binomial(-1, 0)


class TestFieldAxioms:
    @given(rationals, rationals)
    def test_add_cancel(self, a, b):
        assert (a + b) - b == a

    @given(rationals, rationals.filter(lambda b: b != 0))
    def test_mul_cancel(self, a, b):
        assert (a * b) / b == a


class TestToFloat:
    def test_half(self):
        assert to_float(Fraction(1, 2)) == 0.5 + 0j

    def test_long_division(self):
        # long-division oracle for -16/35 to 20 digits: -0.45714285714285714285...
        digits = []
        rem = 16
        for _ in range(20):
            rem *= 10
            digits.append(rem // 35)
            rem %= 35
        assert "".join(map(str, digits)) == "45714285714285714285"
        assert abs(to_float(Fraction(-16, 35)).real - (-0.45714285714285713)) < 1e-16

    def test_identity_on_complex(self):
        assert to_float(3 + 4j) == 3 + 4j

    def test_overflow(self):
        with pytest.raises(OverflowError):
            to_float(Fraction(10) ** 400)


class TestParsing:
    def test_fraction_and_integer(self):
        assert parse_rational("3/4") == Fraction(3, 4)
        assert parse_rational("-3/4") == Fraction(-3, 4)
        assert parse_rational(" 17 ") == 17

    def test_rejects_decimals_and_garbage(self):
        for bad in ("0.5", "1/2/3", "x", "1/-2", ""):
            with pytest.raises(DomainError):
                parse_rational(bad)

    def test_rejects_zero_denominator(self):
        with pytest.raises(DomainError):
            parse_rational("1/0")


class TestOmega:
    def test_integer_detection_exact(self):
        assert Omega.exact(Fraction(4, 2)).is_integer
        assert not Omega.exact(Fraction(1, 2)).is_integer
        assert Omega.exact(0).is_zero

    def test_float_never_auto_integer(self):
        assert not Omega.inexact(2.0).is_integer
        assert Omega.inexact(2.0, integer=True).is_integer
        with pytest.raises(DomainError):
            Omega.inexact(2.5, integer=True)

    def test_as_omega(self):
        assert as_omega(Fraction(1, 3)).exact_mode
        assert not as_omega(0.25).exact_mode
        om = as_omega(Fraction(5, 4))
        assert as_omega(om) is om
