from fractions import Fraction

import pytest

from luecorr.exact import MultiPoly
from luecorr.oracles import (GUARD_ENV, GuardrailError, Partition, gue_even_oracle, hurwitz_brute,
                             hurwitz_weighted, lue_eigenvalue_oracle, partitions_of)
from luecorr.resolvent import connected_correlator

N = MultiPoly.var("N")


def test_partition_basics():
    mu = Partition((1, 3, 1))
    assert mu.parts == (3, 1, 1) and mu.size == 5 and mu.length == 3
    assert mu.z == 3 * 2
    assert len(list(partitions_of(6))) == 11
    with pytest.raises(ValueError):
        Partition((2, 0))


def test_strict_weighted_one_three():
    assert [hurwitz_weighted((3, 1), s, 0, "strict") for s in (1, 2, 3)] == [3, 9, 3]
    assert hurwitz_weighted((3, 1), 1, 1, "strict") == 3


def test_weak_weighted_one_three():
    assert [hurwitz_weighted((3, 1), s, 0, "weak") for s in (1, 2, 3)] == [3, 18, 30]


def test_trivial_counts():
    # one transposition in S_2 takes the identity to a 2-cycle
    assert hurwitz_brute((1, 1), (2,), 0, "strict") == 1
    assert hurwitz_brute((2,), (1, 1), 0, "strict") == 1
    assert hurwitz_brute((2,), (1,), 0, "strict") == 0


def test_guardrail(monkeypatch):
    with pytest.raises(GuardrailError):
        hurwitz_brute((4, 3), (7,), 0, "strict")
    monkeypatch.setenv(GUARD_ENV, "gue_total=4")
    with pytest.raises(GuardrailError):
        gue_even_oracle((2, 4))


def test_gue_wick():
    assert gue_even_oracle((2,)) == N * N
    assert gue_even_oracle((4,)) == N ** 3 * 2 + N
    assert gue_even_oracle((2, 2)) == N * N * 2


def test_eigenvalue_oracle_one_by_one():
    # for N = 1 the density is x^alpha e^-x / Gamma(alpha + 1)
    rf = lue_eigenvalue_oracle((1,), 1)
    assert rf.equals(connected_correlator((1,)).subs("N", 1))
    rf = lue_eigenvalue_oracle((-1,), 1)
    v = connected_correlator((-1,)).subs("N", 1)
    assert rf.equals(v)
    assert v.evaluate(alpha=3) == Fraction(1, 3)


def test_eigenvalue_oracle_mixed():
    for key in ((2, -2), (1, -1, -1)):
        value = connected_correlator(key)
        for n in (1, 2, 3):
            assert lue_eigenvalue_oracle(key, n).equals(value.subs("N", n))
