import math
from fractions import Fraction

import pytest

from skyburst.errors import DomainError, PoleError
from skyburst.skypoly import (
    Polynomial,
    construct,
    construct_series,
    construct_via_symmetry,
    derivative_at_minus_one,
    evaluate,
    reflect_negative_omega,
    star,
    taylor_about_minus_one,
    value_at_minus_one,
    value_at_zero,
)

GRID = (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(5, 4), Fraction(7, 3), Fraction(22, 7))

F = Fraction


def zpow(k):
    return Polynomial((0,) * k + (1,))


class TestPolynomial:
    def test_normalization_trims_trailing_zeros(self):
        p = Polynomial((F(1), F(2), F(0), F(0)))
        assert p.degree == 1
        assert Polynomial((0, 0, 0)).is_zero
        assert Polynomial(()).degree == -1

    def test_kind_mixing_rejected(self):
        with pytest.raises(TypeError):
            Polynomial((F(1, 2), 0.5))
        with pytest.raises(TypeError):
            Polynomial((F(1, 2), 1)) + Polynomial((0.5, 1.0))

    def test_int_coefficients_compatible_with_both(self):
        shared = Polynomial((1, 1))
        assert (shared * Polynomial((F(1, 2),))).coeffs == (F(1, 2), F(1, 2))
        assert (shared * Polynomial((0.5,))).coeffs == (0.5, 0.5)

    def test_horner_exact(self):
        p = Polynomial((F(-1, 15), F(2, 5), F(1)))
        assert p(F(2)) == F(-1, 15) + F(4, 5) + 4
        assert evaluate(p, F(0)) == F(-1, 15)

    def test_arithmetic(self):
        p = Polynomial((1, 2))
        q = Polynomial((0, 1))
        assert (p * q).coeffs == (0, 1, 2)
        assert (p - p).is_zero
        assert p.derivative().coeffs == (2,)
        assert p.shifted(2).coeffs == (0, 0, 1, 2)

    def test_eval_zero_poly(self):
        assert Polynomial()(F(3)) == 0


class TestConstruct:
    def test_degree_one_closed_form(self):
        for w in GRID:
            assert construct(1, w).coeffs == (w / (1 + w), F(1))

    def test_omega_zero_is_monomial(self):
        for n in range(6):
            assert construct(n, F(0)) == zpow(n)

    def test_degree_two_frozen(self):
        # cross-checked against the moment linear system in test_moments
        assert construct(2, F(1, 2)).coeffs == (F(-1, 15), F(2, 5), F(1))

    def test_monic_across_grid(self):
        for n in range(13):
            for w in GRID:
                assert construct(n, w).coeffs[-1] == 1

    def test_exact_kind(self):
        assert construct(4, F(1, 3)).scalar_kind == "rational"
        assert construct(4, 0.25).scalar_kind == "complex_float"

    def test_negative_integer_poles(self):
        for w in (-1, -2, -3):
            with pytest.raises(PoleError):
                construct_series(3, F(w))
        # beyond -n the denominators never vanish
        assert construct(2, F(-5)).coeffs == (F(5, 2), F(10, 3), F(1))

    def test_negative_degree(self):
        with pytest.raises(DomainError):
            construct(-1, F(1, 2))

    def test_eval_examples(self):
        assert construct(1, F(1, 2))(F(-1)) == F(-2, 3)
        assert construct(0, F(1, 2))(F(17)) == 1


class TestSpecialValues:
    def test_value_at_minus_one_examples(self):
        assert value_at_minus_one(0, F(1, 2)) == 1
        assert value_at_minus_one(3, F(1, 2)) == F(-16, 35)
        assert value_at_minus_one(2, F(1)) == F(1, 3)

    def test_value_at_minus_one_matches_eval(self):
        for n in range(11):
            for w in GRID:
                assert value_at_minus_one(n, w) == construct(n, w)(F(-1))

    def test_value_at_minus_one_pole(self):
        with pytest.raises(PoleError):
            value_at_minus_one(2, F(-2))

    def test_derivative_closed_form_matches_formal_derivative(self):
        for n in range(11):
            for w in GRID:
                p = construct(n, w)
                for m in range(n + 1):
                    assert derivative_at_minus_one(m, n, w) == p(F(-1))
                    p = p.derivative()

    def test_derivative_examples(self):
        assert derivative_at_minus_one(0, 4, F(1, 3)) == value_at_minus_one(4, F(1, 3))
        for n in range(7):
            assert derivative_at_minus_one(n, n, F(2, 3)) == math.factorial(n)
        assert derivative_at_minus_one(1, 2, F(1, 2)) == F(-8, 5)

    def test_derivative_domain(self):
        with pytest.raises(DomainError):
            derivative_at_minus_one(3, 2, F(1, 2))

    def test_value_at_zero(self):
        for w in GRID:
            assert value_at_zero(1, w) == w / (1 + w)
        assert value_at_zero(2, F(1, 2)) == F(-1, 15)
        for n in range(1, 9):
            for m in range(n):
                assert value_at_zero(n, F(m)) == 0
            assert value_at_zero(n, F(n)) != 0
            for w in GRID:
                assert value_at_zero(n, w) == construct(n, w)(F(0)) != 0


class TestStar:
    def test_monomial_collapses(self):
        assert star(zpow(5)) == Polynomial((1,))

    def test_reversal(self):
        assert star(construct(1, F(1, 2))).coeffs == (F(1), F(1, 3))

    def test_involution_with_nonzero_constant(self):
        for w in GRID:
            p = construct(3, w)
            assert star(star(p)) == p

    def test_conjugates_complex_coefficients(self):
        p = Polynomial((1 + 2j, 1 + 0j))
        assert star(p).coeffs == (1 - 0j, 1 - 2j)

    def test_family_does_not_satisfy_reversal_recurrence(self):
        # S_3 - z*S_2 is NOT proportional to star(S_2): the family replaces the
        # classical reversed-polynomial step by a parameter shift.
        w = F(1, 2)
        diff = construct(3, w) - construct(2, w).shifted(1)
        rev = star(construct(2, w))
        assert diff.degree == rev.degree == 2
        ratios = {diff.coeffs[j] / rev.coeffs[j] for j in range(3)}
        assert len(ratios) > 1


class TestSymmetryRoute:
    def test_monomial_case(self):
        for n in range(1, 6):
            assert construct_via_symmetry(n, 0) == zpow(n)

    def test_small_cases(self):
        assert construct_via_symmetry(2, 1).coeffs == (0, F(2, 3), F(1))
        assert construct_via_symmetry(3, 1).coeffs == (0, 0, F(3, 4), F(1))

    def test_matches_direct_series_limit(self):
        for n in range(1, 11):
            for m in range(n):
                assert construct_series(n, F(m)) == construct_via_symmetry(n, m)

    def test_construct_dispatches_integers(self):
        assert construct(5, F(2)) == construct_via_symmetry(5, 2)

    def test_domain(self):
        with pytest.raises(DomainError):
            construct_via_symmetry(3, 3)


class TestReflection:
    def test_degree_one(self):
        assert reflect_negative_omega(1, F(1, 2)) == construct(1, F(-1, 2))
        assert reflect_negative_omega(1, F(1, 2)).coeffs == (F(-1), F(1))

    def test_degree_zero(self):
        assert reflect_negative_omega(0, F(1, 2)) == Polynomial((F(1),))

    def test_matches_direct_negative_construction(self):
        for n in range(9):
            for w in (F(1, 3), F(1, 2), F(2, 3), n + F(1, 3), n + F(3, 2)):
                assert reflect_negative_omega(n, w) == construct(n, -w)

    def test_integer_blowup(self):
        for w in (1, 2, 3):
            with pytest.raises(PoleError):
                reflect_negative_omega(3, F(w))

    def test_requires_positive(self):
        with pytest.raises(DomainError):
            reflect_negative_omega(2, F(-1, 2))


class TestTaylorAboutMinusOne:
    def test_constant(self):
        assert taylor_about_minus_one(0, F(5, 4)) == (1,)

    def test_degree_one(self):
        assert taylor_about_minus_one(1, F(1, 2)) == (F(-2, 3), F(1))

    def test_round_trip(self):
        one_plus_z = Polynomial((1, 1))
        for n in range(11):
            for w in GRID:
                coeffs = taylor_about_minus_one(n, w)
                assert coeffs[-1] == 1  # monicity forces the leading factor
                acc = Polynomial()
                power = Polynomial((1,))
                for c in coeffs:
                    acc = acc + c * power
                    power = power * one_plus_z
                assert acc == construct(n, w)
