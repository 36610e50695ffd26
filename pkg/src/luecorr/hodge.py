"""Hurwitz side of the Hodge-LUE correspondence.

Nothing here touches intersection theory; the functions return the
combinations of strict monotone Hurwitz numbers that the correspondence
equates with cubic Hodge integrals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .exact import MultiPoly
from .oracles import as_partition
from .topo import Report, expand_strict

LAM = MultiPoly.var("lambda")
EPS = MultiPoly.var("eps")

# External knowledge, not derived here: on the moduli space of genus-one
# curves with one point, psi_1, lambda_1 and kappa_1 all integrate to 1/24.
M11_INTERSECTION = Fraction(1, 24)


@dataclass
class HodgeSeries:
    mu: tuple
    g_max: int
    coefficients: dict  # power of eps -> MultiPoly in lambda

    def coefficient(self, power: int) -> MultiPoly:
        if power > 2 * self.g_max - 2:
            raise ValueError(f"eps^{power} needs genus above g_max={self.g_max}")
        return self.coefficients.get(power, MultiPoly())

    def genus(self, g: int) -> MultiPoly:
        return self.coefficient(2 * g - 2)

    def is_even(self) -> bool:
        return all(p % 2 == 0 for p in self.coefficients)


def _central(k):
    return comb(2 * k, k)


def hodge_rhs(mu, g_max: int, table=None) -> HodgeSeries:
    """2^l sum_gamma (2 eps)^(2 gamma - 2) sum_s (lam + eps/2)^a (lam - eps/2)^s H_gamma(mu; s).

    Only powers eps^(2g-2) with g <= g_max are complete and kept.
    """
    mu = as_partition(mu)
    ell, size = mu.length, mu.size
    table = table or expand_strict(mu, g_max)
    plus, minus = LAM + EPS * Fraction(1, 2), LAM - EPS * Fraction(1, 2)
    q = MultiPoly()  # eps^2 times the series
    for gamma in range(g_max + 1):
        inner = MultiPoly()
        for s in range(1, 2 - 2 * gamma + size - ell):
            h = table.value(gamma, s)
            if h:
                inner = inner + plus ** (2 - 2 * gamma + size - ell - s) * minus ** s * h
        q = q + inner * EPS ** (2 * gamma) * Fraction(2 ** ell * 4 ** gamma, 4)
    coeffs = {}
    for p, c in q.coefficients("eps").items():
        if p - 2 <= 2 * g_max - 2 and not c.is_zero():
            coeffs[p - 2] = c
    return HodgeSeries(mu.parts, g_max, coeffs)


def hodge_genus0(mu, table=None) -> MultiPoly:
    mu = as_partition(mu)
    ell, size = mu.length, mu.size
    table = table or expand_strict(mu, 0)
    total = sum(table.value(0, s) for s in range(1, size + 2 - ell))
    return LAM ** (size + 2 - ell) * Fraction(2 ** ell, 4) * total


def lambda_shift_coefficients(p: MultiPoly) -> dict:
    """Coefficients of p in powers of (lambda - 1)."""
    return {k: v.constant() for k, v in p.subs("lambda", LAM + 1).coefficients("lambda").items()}


def genus0_lambda_expansion_check(mu1: int) -> Report:
    if not 1 <= mu1 <= 10:
        raise ValueError("mu1 must lie in 1..10")
    rep = Report(f"genus-0 lambda expansion ({mu1})")
    h = hodge_genus0((mu1,))
    cb = _central(mu1)
    closed = LAM ** (mu1 + 1) * Fraction(comb(2 * mu1, mu1 - 1), 2 * mu1)
    rep.expect(h == closed, ("closed form", mu1))
    co = lambda_shift_coefficients(h)
    want = [Fraction(cb, 2 * (mu1 + 1)), Fraction(cb, 2), Fraction(mu1 * cb, 4)]
    for k, w in enumerate(want):
        rep.expect(co.get(k, 0) == w, ("lambda-1 coefficient", mu1, k, co.get(k, 0), w))
    return rep


def hodge_A_quadratic(mu) -> MultiPoly:
    mu = as_partition(mu)
    if mu.length == 1:
        (m,) = mu.parts
        return (LAM - Fraction(m, m + 1)) * Fraction(_central(m), 2)
    if mu.length == 2:
        a, b = mu.parts
        return MultiPoly.const(Fraction(a * b * _central(a) * _central(b), 2 * (a + b)))
    raise ValueError("defined for partitions of length 1 or 2")


def _prefactor(mu):
    out = 1
    for m in mu.parts:
        out *= m * _central(m)
    return out


def elsv_combination(mu, g: int, table=None):
    """(Hurwitz-side value, predicted moduli integral).

    For g >= 1 this is the signed double sum over lower genera, divided by
    2^(3g+1-l) and prod mu_a C(2mu_a, mu_a) for the prediction.  For g = 0 it
    is sum_s H_0(mu; s); the prediction removes the length-one and length-two
    correction terms and multiplies by 2^(l-1).
    """
    mu = as_partition(mu)
    ell, size = mu.length, mu.size
    table = table or expand_strict(mu, g)
    if g == 0:
        side = Fraction(sum(table.value(0, s) for s in range(1, size + 2 - ell)))
        corr = Fraction(0)
        if ell == 1:
            corr = Fraction(_central(mu.parts[0]), mu.parts[0] + 1)
        elif ell == 2:
            corr = hodge_A_quadratic(mu).constant()
        return side, (side - corr) * 2 ** (ell - 1) / _prefactor(mu)
    side = Fraction(0)
    for gamma in range(g + 1):
        for s in range(1, size + 2 - ell):
            h = table.value(gamma, s)
            if not h:
                continue
            top = 2 - 2 * gamma + size - ell - s
            bracket = sum((-1) ** p * comb(top, p) * comb(s, 2 * g - 2 * gamma - p)
                          for p in range(0, 2 * g - 2 * gamma + 1))
            side += 16 ** gamma * bracket * h
    return side, side / (2 ** (3 * g + 1 - ell) * _prefactor(mu))


def m11_prediction() -> Fraction:
    """Integral over the genus-one, one-point moduli space for mu = (1), from the anchor.

    Degree-one part of Lambda(-1)^2 Lambda(1/2) exp(-kappa_1) / (1 - psi) is
    psi - (3/2) lambda_1 - kappa_1.
    """
    return (1 - Fraction(3, 2) - 1) * M11_INTERSECTION


def check_hodge(mu, g_max: int) -> Report:
    """Evenness, genus-0 consistency and the route equality for each g <= g_max."""
    mu = as_partition(mu)
    rep = Report(f"hodge {mu}")
    table = expand_strict(mu, g_max)
    series = hodge_rhs(mu, g_max, table)
    rep.expect(series.is_even(), (mu.parts, "odd power of eps"))
    rep.expect(series.genus(0) == hodge_genus0(mu, table), (mu.parts, "genus 0"))
    for g in range(1, g_max + 1):
        side, _ = elsv_combination(mu, g, table)
        at1 = series.genus(g).evaluate(**{"lambda": 1}) if not series.genus(g).is_zero() else Fraction(0)
        rep.expect(side == at1 * Fraction(2) ** (2 * g + 2 - mu.length), (mu.parts, g, side, at1))
    return rep
