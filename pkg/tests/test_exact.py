from fractions import Fraction

import pytest

from luecorr.exact import (CorrelatorValue, InsufficientOrder, MultiPoly, TruncatedSeries, block_value,
                           format_poly, geometric_pair_expand, parse_poly, rat_str, series_mul)

N = MultiPoly.var("N")
A = MultiPoly.var("alpha")


def test_multipoly_ring_ops():
    p = (N + A) ** 2
    assert p == N * N + N * A * 2 + A * A
    assert (p - p).is_zero()
    assert p.subs("alpha", N) == N * N * 4
    assert p.evaluate(N=1, alpha=Fraction(1, 2)) == Fraction(9, 4)
    assert p.degree("N") == 2


def test_json_round_trip():
    p = parse_poly("3/2*N^2*alpha - alpha + 7")
    assert MultiPoly.from_json(p.to_json()) == p
    assert p.to_json()[0] == {"exps": {"N": 2, "alpha": 1}, "coef": "3/2"}


def test_rat_str():
    assert rat_str(Fraction(-3, 4)) == "-3/4"
    assert rat_str(Fraction(6, 3)) == "2"


def test_parse_blocks():
    v = parse_poly("N/(a0*a1^2)")
    assert isinstance(v, CorrelatorValue)
    assert dict(v.blocks) == {0: 1, 1: 2}


def test_correlator_value_cancels_blocks():
    # (alpha - 1) alpha (alpha + 1) / a_1 == 1
    v = CorrelatorValue.lift((A - 1) * A * (A + 1)) * CorrelatorValue.block(1)
    assert v.is_polynomial() and v.numerator == MultiPoly.const(1)


def test_pochhammer_zero_refused():
    v = parse_poly("N/a1")
    assert v.evaluate(N=2, alpha=3) == Fraction(2, 24)
    with pytest.raises(ZeroDivisionError):
        v.evaluate(N=2, alpha=-1)
    assert block_value(1, 2) == 6


def test_plain_format_example():
    p = parse_poly("2*alpha*(1+2*alpha^2)*N + 2*(1+11*alpha^2)*N^2 + 36*alpha*N^3 + 18*N^4")
    assert format_poly(p, "plain") == "2α(1+2α²)N + 2(1+11α²)N² + 36αN³ + 18N⁴"
    assert format_poly(N * A, "latex") == "\\alpha N"


def test_geometric_pair_windows():
    s = geometric_pair_expand(1, 2, 1, "a_large", 3)
    assert s[(-2, 1)] == 1
    with pytest.raises(InsufficientOrder):
        s[(-4, 3)]
    sq = series_mul(s, s)
    # 1/(x1-x2)^2 = sum (m+1) x2^m x1^(-m-2); only the first terms are guaranteed
    assert sq[(-3, 1)] == 2
    assert not sq.guaranteed((-5, 3))


def test_pair_expansion_regions_differ_by_sign():
    a = geometric_pair_expand(1, 2, 2, "a_large", 2)
    b = geometric_pair_expand(1, 2, 2, "b_large", 2)
    assert a[(-2, 0)] == 1 and b[(0, -2)] == 1


def test_bad_region():
    with pytest.raises(ValueError):
        geometric_pair_expand(1, 1, 1, "a_large", 2)
    with pytest.raises(ValueError):
        geometric_pair_expand(1, 2, 1, "sideways", 2)
    assert isinstance(TruncatedSeries(("x",), {0: 1}, {"x": (0, 0, "exact")}), TruncatedSeries)
