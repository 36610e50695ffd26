"""Large-N expansions at alpha = (c-1)N and extraction of weighted monotone Hurwitz numbers.

Coefficients are Laurent polynomials in t = c - 1; every expansion here is
exact up to the requested order because the Pochhammer reciprocals are
expanded in u = 1/(tN) to exactly the depth that can reach it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .exact import CorrelatorValue, MultiPoly, _factor_exponents
from .oracles import as_partition
from .resolvent import as_key, connected_correlator


class LaurentT:
    """Laurent polynomial in t = c - 1 with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def mono(cls, power, coef=1):
        return cls({power: coef})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LaurentT(out)

    def __neg__(self):
        return LaurentT({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentT({k: v * other for k, v in self.terms.items()})
        out = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LaurentT(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, LaurentT) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __getitem__(self, k):
        return self.terms.get(k, Fraction(0))

    def shift(self, k):
        return LaurentT({p + k: v for p, v in self.terms.items()})

    def min_power(self):
        return min(self.terms) if self.terms else 0

    def max_power(self):
        return max(self.terms) if self.terms else 0

    def is_integral(self):
        return all(v.denominator == 1 for v in self.terms.values())

    def at_t(self, t) -> Fraction:
        return sum((v * Fraction(t) ** k for k, v in self.terms.items()), Fraction(0))

    def to_c_poly(self) -> MultiPoly:
        """Rewrite as a polynomial in c; needs no negative powers of t."""
        if self.terms and self.min_power() < 0:
            raise ValueError("negative powers of (c-1) cannot be written as a polynomial in c")
        c1 = MultiPoly.var("c") - 1
        out = MultiPoly()
        for k, v in self.terms.items():
            out = out + c1 ** k * v
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{v}*t^{k}" for k, v in sorted(self.terms.items(), reverse=True))


def laurent_from_json(pairs) -> LaurentT:
    return LaurentT({int(k): int(v) for k, v in pairs})


# expansion engine

def _u_series(exps: dict, order: int):
    """prod (1 + m u)^(-e_m) up to u^order, integer coefficients."""
    series = [1] + [0] * order
    for m, e in exps.items():
        if not e or m == 0:
            continue
        factor = [comb(e + k - 1, k) * (-m) ** k for k in range(order + 1)]
        series = [sum(series[i] * factor[k - i] for i in range(k + 1)) for k in range(order + 1)]
    return series


def expand_in_N(value, n_min: int, shift: int = 0) -> dict:
    """{N power: LaurentT} for N^shift * value at alpha = tN, down to N^n_min inclusive."""
    value = CorrelatorValue.lift(value)
    terms = {}
    for e, coef in value.numerator.terms.items():
        i, j = e[0], e[2]
        if any(x for idx, x in enumerate(e) if idx not in (0, 2)):
            raise ValueError("correlator numerator should only involve N and alpha")
        terms.setdefault(i + j, LaurentT())
        terms[i + j] = terms[i + j] + LaurentT.mono(j, coef)
    exps = _factor_exponents(dict(value.blocks))
    d = sum(exps.values())
    top = max(terms) if terms else 0
    order = max(0, top - d + shift - n_min)
    g = _u_series(exps, order)
    out = {}
    for i, p in terms.items():
        for k in range(order + 1):
            if not g[k]:
                continue
            n = i - d - k + shift
            if n < n_min:
                break
            out[n] = out.get(n, LaurentT()) + p.shift(-d - k) * g[k]
    return {n: v for n, v in sorted(out.items(), reverse=True) if v}


@dataclass
class GenusExpansion:
    key: tuple
    shift: int  # the expansion is of N^shift times the correlator
    n_min: int
    terms: dict = field(default_factory=dict)  # N power -> LaurentT

    def coefficient(self, n: int) -> LaurentT:
        if n < self.n_min:
            raise ValueError(f"N^{n} lies below the computed order N^{self.n_min}")
        return self.terms.get(n, LaurentT())

    def genus(self, g: int) -> LaurentT:
        return self.coefficient(-2 * g)


def genus_expansion(key, shift: int, n_min: int, margin: int = 2) -> GenusExpansion:
    ck = as_key(key)
    value = connected_correlator(ck.keys, order_margin=margin)
    return GenusExpansion(ck.keys, shift, n_min, expand_in_N(value, n_min, shift))


# Hurwitz tables

@dataclass
class HurwitzTable:
    flavor: str
    mu: tuple
    entries: dict  # (g, s) -> int
    g_max: int
    s_max: int

    def value(self, g, s) -> int:
        return self.entries.get((g, s), 0)

    def rows(self):
        return [(g, s, self.value(g, s)) for g in range(self.g_max + 1)
                for s in range(1, self.s_max + 1)]


class ExpansionError(ArithmeticError):
    pass


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ExpansionError(f"{what} is not an integer: {x}")
    return int(x)


def expand_strict(mu, g_max: int, margin: int = 2) -> HurwitzTable:
    mu = as_partition(mu)
    ell, size = mu.length, mu.size
    shift = ell - size - 2
    value = connected_correlator(mu.parts, order_margin=margin)
    if not value.is_polynomial():
        raise ExpansionError("positive correlators must be polynomial")
    exp = expand_in_N(value, shift, shift)  # the whole polynomial
    entries = {}
    for n, coef in exp.items():
        if n > 0 or n % 2:
            raise ExpansionError(f"unexpected power N^{n} in strict expansion of {mu.parts}")
        g = -n // 2
        poly = coef.to_c_poly()
        if not poly.coeff("c", 0).is_zero():
            raise ExpansionError(f"nonzero constant term at genus {g}")
        if poly.degree("c") > 1 - 2 * g + size - ell:
            raise ExpansionError(f"degree bound violated at genus {g}")
        if g > g_max:
            continue
        for s, v in poly.coefficients("c").items():
            entries[(g, s)] = _as_int(v.constant(), f"H_{g}(mu;{s})")
    return HurwitzTable("strict", mu.parts, entries, g_max, size + 1 - ell)


def expand_weak(mu, g_max: int, s_max: int | None = None, margin: int = 2) -> HurwitzTable:
    """Weak numbers from the correlator at keys -mu.

    The order-bump re-check expands two extra orders in 1/N and confirms the
    requested coefficients do not move.
    """
    mu = as_partition(mu)
    ell, size = mu.length, mu.size
    if s_max is None:
        s_max = size
    if s_max < 1:
        raise ValueError("s_max must be >= 1")
    shift = ell + size - 2
    value = connected_correlator(tuple(-p for p in mu.parts), order_margin=margin)
    exp = expand_in_N(value, -2 * g_max, shift)
    check = expand_in_N(value, -2 * g_max - 2, shift)
    if any(check.get(n) != v for n, v in exp.items()):
        raise ExpansionError("weak expansion unstable under an order bump")
    entries = {}
    for n, coef in exp.items():
        if n > 0 or n % 2:
            raise ExpansionError(f"unexpected power N^{n} in weak expansion of {mu.parts}")
        g = -n // 2
        base = 2 * g - 2 + size + ell
        for p, v in coef.terms.items():
            s = -p - base
            if not 1 <= s <= size:
                raise ExpansionError(f"(c-1)^{p} outside the weak support at genus {g}")
            if s <= s_max:
                entries[(g, s)] = _as_int(v, f"H_{g}(mu;{s})")
    return HurwitzTable("weak", mu.parts, entries, g_max, s_max)


def hurwitz_table(flavor: str, mu, g_max: int, s_max: int | None = None, margin: int = 2):
    if flavor == "strict":
        return expand_strict(mu, g_max, margin)
    if flavor == "weak":
        return expand_weak(mu, g_max, s_max, margin)
    raise ValueError("flavor must be 'strict' or 'weak'")


# closed forms and checks

@dataclass
class Report:
    name: str
    ok: bool = True
    checked: int = 0
    failures: list = field(default_factory=list)

    def expect(self, cond, detail):
        self.checked += 1
        if not cond:
            self.ok = False
            self.failures.append(detail)
        return cond

    def merge(self, other: "Report"):
        self.checked += other.checked
        self.ok = self.ok and other.ok
        self.failures.extend(other.failures)
        return self


def narayana(k: int, s: int) -> int:
    if not 1 <= s <= k:
        raise ValueError("need 1 <= s <= k")
    return comb(k, s) * comb(k, s - 1) // k


def weak_genus0_closed(k: int, s: int) -> Fraction:
    if not 1 <= s <= k:
        raise ValueError("need 1 <= s <= k")
    rising = 1
    for i in range(k - 2):
        rising *= s + 1 + i
    if k == 1:
        rising = Fraction(1, s)  # (s+1)_{-1}
    return Fraction(comb(k - 1, k - s)) * rising / factorial(k - 1)


def check_symmetry(mu, g_max: int, table: HurwitzTable | None = None) -> Report:
    mu = as_partition(mu)
    table = table or expand_strict(mu, g_max)
    rep = Report(f"symmetry {mu}")
    for g in range(g_max + 1):
        top = 2 - 2 * g + mu.size - mu.length
        for s in range(1, mu.size + 2):
            a, b = table.value(g, s), table.value(g, top - s) if top - s >= 1 else 0
            rep.expect(a == b, (mu.parts, g, s, a, b))
    return rep


def check_integrality(key, j_max: int = 3) -> Report:
    """N^{-[l mod 2]-sum k} times the correlator is a series in N^-2 over Z[c, 1/(c-1)].

    For same-sign keys the stronger normalisation N^{l-2-sum k} is asserted too.
    """
    ck = as_key(key)
    rep = Report(f"integrality {ck.keys}")
    value = connected_correlator(ck.keys)
    total = sum(ck.keys)
    shifts = [-(ck.r % 2) - total]
    if ck.r_plus == 0 or ck.r_minus == 0:
        shifts.append(ck.r - 2 - total)
    for shift in shifts:
        exp = expand_in_N(value, -2 * j_max, shift)
        for n, coef in exp.items():
            rep.expect(n <= 0 and n % 2 == 0, (ck.keys, shift, "power", n))
            rep.expect(coef.is_integral(), (ck.keys, shift, "coefficient", n))
    return rep


def check_parity(key, depth: int = 8) -> Report:
    ck = as_key(key)
    rep = Report(f"parity {ck.keys}")
    exp = expand_in_N(connected_correlator(ck.keys), -depth, -(ck.r % 2) - sum(ck.keys))
    for n in exp:
        rep.expect(n % 2 == 0, (ck.keys, n))
    return rep


def check_weak_positivity(mu, g_max: int) -> Report:
    """At c = 2 every genus coefficient of the weak expansion is a nonnegative integer.

    Zero occurs when no factorisation exists at all, e.g. mu = (1) in genus 1.
    """
    mu = as_partition(mu)
    rep = Report(f"weak positivity {mu}")
    table = expand_weak(mu, g_max)
    for g in range(g_max + 1):
        vals = [table.value(g, s) for s in range(1, mu.size + 1)]
        rep.expect(all(v >= 0 for v in vals), (mu.parts, g, vals))
    shift = mu.length + mu.size - 2
    value = connected_correlator(tuple(-p for p in mu.parts))
    exp = expand_in_N(value, -2 * g_max, shift)
    for g in range(g_max + 1):
        at2 = exp.get(-2 * g, LaurentT()).at_t(1)
        rep.expect(at2 >= 0 and at2.denominator == 1, (mu.parts, g, at2))
    return rep


# planar two-point limits

def _series_sqrt(coeffs, order, lead_sign=1):
    """sqrt of sum coeffs[k] x^k with coeffs[0] = t^(2a); coefficients LaurentT."""
    c0 = coeffs[0]
    if len(c0.terms) != 1:
        raise ExpansionError("square root: constant term is not a monomial")
    (p, v), = c0.terms.items()
    if p % 2 or v != 1:
        raise ExpansionError("square root: constant term is not a square")
    root0 = LaurentT.mono(p // 2, lead_sign)
    inv2root0 = LaurentT.mono(-p // 2, Fraction(lead_sign, 2))
    out = [root0]
    for n in range(1, order + 1):
        acc = coeffs[n] if n < len(coeffs) else LaurentT()
        for i in range(1, n):
            acc = acc - out[i] * out[n - i]
        out.append(acc * inv2root0)
    return out


def _bimul(a, b, order):
    out = {}
    for (i, j), x in a.items():
        for (k, l), y in b.items():
            if i + k <= order and j + l <= order:
                key = (i + k, j + l)
                out[key] = out.get(key, LaurentT()) + x * y
    return {k: v for k, v in out.items() if v}


def _t(k=0, c=1):
    return LaurentT.mono(k, c)


def planar_two_point_check(order: int = 6) -> Report:
    """Closed forms for the planar two-point functions, checked by cross-multiplication.

    Variables: u = 1/x at infinity for positive powers, x itself at zero for
    negative powers.  phi(x,x) = t^2 - 2(t+2)x + x^2.
    """
    if order > 8:
        raise ValueError("order must be <= 8")
    rep = Report("planar two-point")
    T = order + 2
    one, c = _t(), _t(1) + _t()

    def leading(keys, power):
        exp = expand_in_N(connected_correlator(keys), power)
        return exp.get(power, LaurentT())

    # S(u) = sqrt(1 - 2(t+2)u + t^2 u^2) at infinity, leading +1
    S = _series_sqrt([one, _t(1, -2) + _t(0, -4), _t(2)], T, 1)
    # sqrt(phi(x,x)) near x = 0 with constant term +t; C02 cannot see the sign, C11 can
    R0 = _series_sqrt([_t(2), _t(1, -2) + _t(0, -4), one], T, 1)

    # C_{2,0}: 2 S1 S2 (u1-u2)^2 F = u1^2 u2^2 (psi - S1 S2)
    F = {}
    for k1 in range(1, order + 1):
        for k2 in range(1, order + 1):
            F[(k1 + 1, k2 + 1)] = leading((k1, k2), k1 + k2)
    S1 = {(i, 0): v for i, v in enumerate(S)}
    S2 = {(0, i): v for i, v in enumerate(S)}
    SS = _bimul(S1, S2, T)
    diff2 = {(2, 0): one, (1, 1): one * -2, (0, 2): one}
    lhs = _bimul(_bimul(SS, diff2, T), F, T)
    lhs = {k: v * 2 for k, v in lhs.items()}
    psi = {(1, 1): c * c - c * 2 + one, (1, 0): -c - one, (0, 1): -c - one, (0, 0): one}
    inner = dict(psi)
    for k, v in SS.items():
        inner[k] = inner.get(k, LaurentT()) - v
    rhs = _bimul({(2, 2): one}, inner, T)
    for a in range(T + 1):
        for b in range(T + 1):
            if a <= order + 1 and b <= order + 1:
                rep.expect(lhs.get((a, b), LaurentT()) == rhs.get((a, b), LaurentT()),
                           ("C20", a, b))

    # C_{0,2}: F = sum x1^{k1-1} x2^{k2-1} f0; 2 R1 R2 (x1-x2)^2 F = phi12 - R1 R2
    F = {}
    for k1 in range(1, order + 1):
        for k2 in range(1, order + 1):
            F[(k1 - 1, k2 - 1)] = leading((-k1, -k2), -k1 - k2)
    R1 = {(i, 0): v for i, v in enumerate(R0)}
    R2 = {(0, i): v for i, v in enumerate(R0)}
    RR = _bimul(R1, R2, T)
    lhs = _bimul(_bimul(RR, diff2, T), F, T)
    lhs = {k: v * 2 for k, v in lhs.items()}
    phi = {(0, 0): c * c - c * 2 + one, (1, 0): -c - one, (0, 1): -c - one, (1, 1): one}
    rhs = dict(phi)
    for k, v in RR.items():
        rhs[k] = rhs.get(k, LaurentT()) - v
    for a in range(order):
        for b in range(order):
            rep.expect(lhs.get((a, b), LaurentT()) == rhs.get((a, b), LaurentT()), ("C02", a, b))

    # C_{1,1}: u = 1/x1, y = x2.  2 S(u) R0(y) (1-uy)^2 F = -u^2 (u phi12 + S(u) R0(y)) after
    # clearing u^3; F = -sum u^{k1+1} y^{k2-1} f0
    F = {}
    for k1 in range(1, order + 1):
        for k2 in range(1, order + 1):
            F[(k1 + 1, k2 - 1)] = -leading((k1, -k2), k1 - k2)
    SR = _bimul(S1, R2, T)
    mix = {(0, 0): one, (1, 1): one * -2, (2, 2): one}
    lhs = _bimul(_bimul(SR, mix, T), F, T)
    lhs = {k: v * 2 for k, v in lhs.items()}
    # u * phi(1/u, y) = c^2 u - c(2u + 1 + u y) + (1 - u)(y - 1)
    uphi = {(1, 0): c * c - c * 2 + one, (0, 0): -c - one, (1, 1): -c - one, (0, 1): one}
    inner = dict(uphi)
    for k, v in SR.items():
        inner[k] = inner.get(k, LaurentT()) + v
    rhs = {k: -v for k, v in _bimul({(2, 0): one}, inner, T).items()}
    for a in range(order + 2):
        for b in range(order):
            rep.expect(lhs.get((a, b), LaurentT()) == rhs.get((a, b), LaurentT()), ("C11", a, b))
    return rep
