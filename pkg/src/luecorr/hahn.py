"""The coefficient families A_l(N, M), B_l(N, M) and their rescaled versions D, E, F."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exact import MultiPoly, rising

N = MultiPoly.var("N")
M = MultiPoly.var("M")
C = MultiPoly.var("c")

DEFAULT_LMAX = 12


@dataclass(frozen=True)
class CoeffFamily:
    kind: str
    entries: tuple

    def __getitem__(self, ell):
        return self.entries[ell]

    def __len__(self):
        return len(self.entries)


@lru_cache(maxsize=None)
def coeff_A_sum(ell: int) -> MultiPoly:
    """A_l as the alternating sum of products of rising factorials."""
    if ell < 0:
        raise ValueError("ell must be >= 0")
    if ell == 0:
        return N
    total = MultiPoly()
    for j in range(ell):
        term = rising(N - j, ell) * rising(M - j, ell)
        total = total + term * Fraction((-1) ** j, factorial(j) * factorial(ell - 1 - j))
    return total * Fraction(1, ell)


@lru_cache(maxsize=None)
def coeff_B_sum(ell: int) -> MultiPoly:
    if ell < 0:
        raise ValueError("ell must be >= 0")
    total = MultiPoly()
    for j in range(ell + 1):
        term = rising(N - j, ell) * rising(M - j, ell)
        total = total + term * Fraction((-1) ** j, factorial(j) * factorial(ell - j))
    return total


@lru_cache(maxsize=None)
def coeff_recursion(kind: str, ell_max: int = DEFAULT_LMAX) -> CoeffFamily:
    """Entries 0..ell_max from the three-term recursions."""
    d2 = (M - N) ** 2
    if kind == "A":
        out = [N, N * M]
        for ell in range(1, ell_max):
            nxt = (2 * ell + 1) * (N + M) * out[ell] + (ell - 1) * (ell * ell - d2) * out[ell - 1]
            out.append(nxt * Fraction(1, ell + 2))
    elif kind == "B":
        out = [MultiPoly.const(1), N + M - 1]
        for ell in range(1, ell_max):
            nxt = (2 * ell + 1) * (N + M - 1) * out[ell] + ell * (ell * ell - d2) * out[ell - 1]
            out.append(nxt * Fraction(1, ell + 1))
    else:
        raise ValueError(f"kind must be 'A' or 'B', got {kind!r}")
    return CoeffFamily(kind, tuple(out[: ell_max + 1]))


@lru_cache(maxsize=None)
def coeff_integer_form(kind: str, ell: int) -> MultiPoly:
    """Double-sum form whose coefficients are manifestly integers.

    The factorial weights are computed as rationals and the result is
    asserted integral.
    """
    if kind == "A":
        if ell == 0:
            return N
        total = MultiPoly()
        top = factorial(ell) * factorial(ell - 1)
        for a in range(ell):
            for b in range(ell - a):
                w = Fraction(top, factorial(a + 1) * factorial(b + 1) * factorial(a) * factorial(b)
                             * factorial(ell - 1 - a - b))
                total = total + rising(N - a, a + 1) * rising(M - b, b + 1) * w
    elif kind == "B":
        total = MultiPoly()
        top = factorial(ell) ** 2
        for a in range(ell + 1):
            for b in range(ell + 1 - a):
                w = Fraction(top, factorial(a) ** 2 * factorial(b) ** 2 * factorial(ell - a - b))
                total = total + rising(N - a, a) * rising(M - b, b) * w
    else:
        raise ValueError(f"kind must be 'A' or 'B', got {kind!r}")
    if not total.is_integral():
        raise ArithmeticError(f"integer form of {kind}_{ell} has non-integer coefficients")
    return total


def A(ell: int) -> MultiPoly:
    return coeff_recursion("A", max(ell, DEFAULT_LMAX))[ell]


def B(ell: int) -> MultiPoly:
    return coeff_recursion("B", max(ell, DEFAULT_LMAX))[ell]


def shifted(p: MultiPoly, dn=0, dm=0, m_value=None) -> MultiPoly:
    """p(N+dn, M+dm), or with M replaced by a polynomial first."""
    if m_value is not None:
        p = p.subs("M", m_value)
    if dm:
        p = p.subs("M", M + dm)
    if dn:
        p = p.subs("N", N + dn)
    return p


def coeff_values(n, m, ell_max: int):
    """Numeric A_l(n, m) and B_l(n, m) for l = 0..ell_max via the recursions.

    Integer inputs stay in integer arithmetic (divisions are exact).
    """
    exact_int = isinstance(n, int) and isinstance(m, int)
    d2 = (m - n) ** 2
    a = [n, n * m]
    b = [1, n + m - 1]
    for ell in range(1, ell_max):
        na = (2 * ell + 1) * (n + m) * a[ell] + (ell - 1) * (ell * ell - d2) * a[ell - 1]
        nb = (2 * ell + 1) * (n + m - 1) * b[ell] + ell * (ell * ell - d2) * b[ell - 1]
        if exact_int:
            qa, ra = divmod(na, ell + 2)
            qb, rb = divmod(nb, ell + 1)
            if ra or rb:
                raise ArithmeticError("non-integral recursion step")
            a.append(qa)
            b.append(qb)
        else:
            a.append(Fraction(na) / (ell + 2))
            b.append(Fraction(nb) / (ell + 1))
    return a[: ell_max + 1], b[: ell_max + 1]


# rescaled families; Laurent polynomials in N stored as {power: MultiPoly in c}

def _lp_add(p, q, scale=1):
    out = dict(p)
    for k, v in q.items():
        s = out.get(k, MultiPoly()) + v * scale
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s
    return out


def _lp_mul(p, poly: MultiPoly, shift=0):
    out = {}
    for k, v in p.items():
        w = v * poly
        if not w.is_zero():
            out[k + shift] = w
    return out


def _to_laurent(p: MultiPoly, shift: int):
    return {k + shift: v for k, v in p.coefficients("N").items() if not v.is_zero()}


@dataclass(frozen=True)
class ScaledCoeffs:
    """D and F carry an overall sqrt(c) that is not stored."""
    D: tuple
    E: tuple
    F: tuple


def scaled_from_definitions(ell_max: int) -> ScaledCoeffs:
    cn = C * N
    D, E, F = [], [], []
    for ell in range(ell_max + 1):
        b = B(ell)
        up = b.subs("N", N + 1).subs("M", cn + 1)
        down = shifted(b, m_value=cn)
        D.append(_to_laurent(up - down, -ell))
        E.append(_to_laurent(A(ell).subs("M", cn) * -2, -ell))
        F.append(_to_laurent(up + down, 1 - ell))
    return ScaledCoeffs(tuple(D), tuple(E), tuple(F))


def scaled_from_recursions(ell_max: int) -> ScaledCoeffs:
    one = MultiPoly.const(1)
    cp1, cm1sq = C + 1, (C - 1) ** 2
    E = [{1: one * -2}, {1: C * -2}]
    D = [{}, {-1: one * 2}]
    F = [{1: one * 2}, {1: cp1 * 2}]
    for ell in range(1, ell_max):
        # E: valid from ell = 1
        e = _lp_mul(E[ell], cp1 * (2 * ell + 1))
        e = _lp_add(e, _lp_mul(E[ell - 1], one * ((ell - 1) * ell * ell), -2))
        e = _lp_add(e, _lp_mul(E[ell - 1], cm1sq * -(ell - 1)))
        E.append(_lp_mul(e, one * Fraction(1, ell + 2)))
    for ell in range(1, ell_max):
        d = _lp_mul(D[ell], cp1 * (2 * ell + 1))
        d = _lp_add(d, _lp_mul(F[ell], one * (2 * ell + 1), -2))
        d = _lp_add(d, _lp_mul(D[ell - 1], one * (ell ** 3), -2))
        d = _lp_add(d, _lp_mul(D[ell - 1], cm1sq * -ell))
        f = _lp_mul(F[ell], cp1 * (2 * ell + 1))
        f = _lp_add(f, _lp_mul(D[ell], one * (2 * ell + 1)))
        f = _lp_add(f, _lp_mul(F[ell - 1], one * (ell ** 3), -2))
        f = _lp_add(f, _lp_mul(F[ell - 1], cm1sq * -ell))
        D.append(_lp_mul(d, one * Fraction(1, ell + 1)))
        F.append(_lp_mul(f, one * Fraction(1, ell + 1)))
    return ScaledCoeffs(tuple(D[: ell_max + 1]), tuple(E[: ell_max + 1]), tuple(F[: ell_max + 1]))


def scaled_DEF(ell_max: int = 10) -> ScaledCoeffs:
    """Both routes, checked against each other."""
    if ell_max < 1:
        raise ValueError("ell_max must be >= 1")
    a = scaled_from_definitions(ell_max)
    b = scaled_from_recursions(ell_max)
    for name in ("D", "E", "F"):
        for ell, (x, y) in enumerate(zip(getattr(a, name), getattr(b, name))):
            if x != y:
                raise ArithmeticError(f"{name}_{ell}: definition and recursion disagree")
    return a


def is_odd_laurent(p: dict) -> bool:
    return all(k % 2 for k in p)
