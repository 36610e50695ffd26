from fractions import Fraction

import pytest

from luecorr.hodge import (EPS, LAM, check_hodge, elsv_combination, genus0_lambda_expansion_check,
                           hodge_A_quadratic, hodge_genus0, hodge_rhs)


def test_rhs_one_part():
    s = hodge_rhs((1,), 1)
    assert s.coefficients == {-2: LAM * LAM * Fraction(1, 2), 0: LAM ** 0 * Fraction(-1, 8)}
    s = hodge_rhs((2,), 1)
    assert s.genus(0) == LAM ** 3 and s.genus(1) == LAM * Fraction(-1, 4)
    with pytest.raises(ValueError):
        s.genus(2)


def test_genus0_closed_form():
    for k in range(1, 9):
        assert genus0_lambda_expansion_check(k).ok
    assert hodge_genus0((3,)) == LAM ** 4 * Fraction(5, 2)


def test_quadratic_terms():
    assert hodge_A_quadratic((1,)) == (LAM - Fraction(1, 2))
    assert hodge_A_quadratic((1, 1)).constant() == 1
    with pytest.raises(ValueError):
        hodge_A_quadratic((1, 1, 1))


def test_elsv_genus_one_side():
    side, _ = elsv_combination((1,), 1)
    assert side == -1


def test_genus0_predictions():
    assert elsv_combination((2, 1), 0)[1] == 0
    assert elsv_combination((1, 1, 1), 0)[1] == 1
    assert elsv_combination((2, 1, 1), 0)[1] == 1


def test_evenness_and_routes():
    for mu in ((3,), (2, 1), (1, 1, 1), (2, 2)):
        assert check_hodge(mu, 2).ok
    assert EPS.degree("eps") == 1
