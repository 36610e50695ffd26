import pytest

from luecorr.exact import MultiPoly
from luecorr.resolvent import (as_key, connected_correlator, connected_from_moments, involution_defect,
                               moments_from_connected, one_point, projector_defect, trace_defect,
                               virasoro_residual)

N = MultiPoly.var("N")
A = MultiPoly.var("alpha")


def test_key_canonical_order():
    k = as_key((-2, 3, -1, 1))
    assert k.keys == (3, 1, -2, -1)
    assert (k.r, k.r_plus, k.r_minus) == (4, 2, 2)
    with pytest.raises(ValueError):
        as_key((1, 0))


def test_trace_cumulants():
    # tr X is Gamma distributed with shape N(N + alpha)
    shape = N * (N + A)
    assert one_point(1).numerator == shape
    assert connected_correlator((1, 1)).numerator == shape
    assert connected_correlator((1, 1, 1)).numerator == shape * 2


def test_inverse_trace():
    v = one_point(-1)
    assert v.numerator == N and dict(v.blocks) == {0: 1}


def test_interp_matches_symbolic():
    for key in ((2, -1), (-2, -1), (3, 1, -1)):
        a = connected_correlator(key, method="interp")
        b = connected_correlator(key, method="symbolic")
        assert a.same_function(b)


def test_moment_cumulant_round_trip():
    keys = (2, -1, 1)
    moment = moments_from_connected(keys)
    back = connected_from_moments(keys, moments_from_connected)
    assert back.same_function(connected_correlator(keys))
    assert not moment.same_function(connected_correlator(keys))


def test_projector_and_trace():
    for sign in ("+", "-"):
        assert projector_defect(sign, 5) == []
        assert trace_defect(sign, 5) == []


def test_involution_and_virasoro():
    assert involution_defect((3, 2)).is_zero()
    assert all(v.is_zero() for v in virasoro_residual(1, 3).values())
