from fractions import Fraction

import pytest

from luecorr.resolvent import connected_correlator
from luecorr.topo import (LaurentT, check_integrality, check_parity, check_symmetry, check_weak_positivity,
                          expand_in_N, expand_strict, expand_weak, narayana, planar_two_point_check,
                          weak_genus0_closed)


def test_laurent_arithmetic():
    a = LaurentT({-1: 2, 0: 1})
    b = LaurentT({1: 3})
    assert a * b == LaurentT({0: 6, 1: 3})
    assert (a - a) == LaurentT()
    assert a.at_t(2) == 2
    assert not LaurentT({-1: Fraction(1, 2)}).is_integral()


def test_one_point_expansion():
    # <tr X> = N(N + alpha) = c N^2 with c = 1 + t
    exp = expand_in_N(connected_correlator((1,)), 0)
    assert exp == {2: LaurentT({0: 1, 1: 1})}


def test_strict_one_three():
    table = expand_strict((3, 1), 1)
    assert [table.value(0, s) for s in (1, 2, 3)] == [3, 9, 3]
    assert table.value(1, 1) == 3


def test_weak_one_three():
    table = expand_weak((3, 1), 0)
    assert [table.value(0, s) for s in (1, 2, 3, 4)] == [3, 18, 30, 15]


def test_narayana_and_weak_closed():
    for k in range(1, 7):
        t0 = expand_strict((k,), 0)
        w0 = expand_weak((k,), 0)
        for s in range(1, k + 1):
            assert t0.value(0, s) == narayana(k, s)
            assert w0.value(0, s) == weak_genus0_closed(k, s)
    with pytest.raises(ValueError):
        narayana(3, 4)


def test_structure_checks():
    assert check_symmetry((3, 2), 2).ok
    assert check_integrality((-2, 3)).ok
    assert check_parity((-1, 2, 2)).ok
    assert check_weak_positivity((2, 1), 1).ok


def test_planar_two_point():
    rep = planar_two_point_check(4)
    assert rep.ok and rep.checked > 0
