"""Resolvent series R+ / R- and connected LUE correlators.

The r-point generating function is a sum over r-cycles of
tr(R(x_1)...R(x_r)) / prod(x_i - x_{i+1}).  For a fixed cycle every edge
factor is a geometric series with one summation index m, and the exponent
of each x_i pins down which coefficient of R(x_i) contributes.  So the
coefficient we want is the trace of a product of 2x2 transfer matrices
summed over the edge indices, evaluated by a small dynamic programme.

Two evaluation modes share the same index skeleton:
  * symbolic: entries are MultiPoly in (N, alpha);
  * interpolation: entries are integers at sample points, the numerator is
    recovered by exact bivariate Newton interpolation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exact import (CorrelatorValue, InsufficientOrder, MultiPoly, TruncatedSeries,
                    block_value, pair_coefficient, pochhammer_expand, series_mul)
from .hahn import A, B, coeff_values

N = MultiPoly.var("N")
ALPHA = MultiPoly.var("alpha")
MM = N + ALPHA  # M eliminated as N + alpha

DEFAULT_MARGIN = 2


# keys

@dataclass(frozen=True)
class CorrelatorKey:
    keys: tuple

    def __post_init__(self):
        ks = tuple(int(k) for k in self.keys)
        if not ks or any(k == 0 for k in ks):
            raise ValueError("correlator keys must be nonzero integers")
        pos = sorted((k for k in ks if k > 0), reverse=True)
        neg = sorted((k for k in ks if k < 0))
        object.__setattr__(self, "keys", tuple(pos + neg))

    @property
    def r(self):
        return len(self.keys)

    @property
    def r_plus(self):
        return sum(1 for k in self.keys if k > 0)

    @property
    def r_minus(self):
        return self.r - self.r_plus

    @property
    def signs(self):
        return tuple(1 if k > 0 else -1 for k in self.keys)

    @property
    def weight(self):
        return sum(abs(k) for k in self.keys)

    def __iter__(self):
        return iter(self.keys)

    def __str__(self):
        return ",".join(map(str, self.keys))


def as_key(key) -> CorrelatorKey:
    if isinstance(key, CorrelatorKey):
        return key
    if isinstance(key, int):
        key = (key,)
    return CorrelatorKey(tuple(key))


# resolvent matrices

def plus_coefficient(ell: int):
    """Symbolic 2x2 coefficient of x^(-ell-1) in R+."""
    a, b = A(ell).subs("M", MM), B(ell).subs("M", MM)
    b1 = B(ell).subs("N", N + 1).subs("M", MM + 1)
    return (a * ell, b1, -(N * MM * b), a * -ell)


def minus_coefficient(ell: int):
    """Symbolic coefficient of x^ell in R-, as (entries, block index)."""
    a, b = A(ell).subs("M", MM), B(ell).subs("M", MM)
    b1 = B(ell).subs("N", N + 1).subs("M", MM + 1)
    return (a * (ell + 1), -b1, N * MM * b, a * -(ell + 1)), ell


@dataclass(frozen=True)
class ResolventSeries:
    sign: int
    order: int
    entries: tuple  # 2x2 tuple of TruncatedSeries in x

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


def build_resolvent(sign, ell_max: int) -> ResolventSeries:
    """R+ (sign=+1 / 'plus') or R- (sign=-1 / 'minus') truncated at ell_max."""
    sign = _sign(sign)
    if ell_max < 0:
        raise ValueError("ell_max must be >= 0")
    data = [[{}, {}], [{}, {}]]
    if sign > 0:
        for ell in range(ell_max + 1):
            m = plus_coefficient(ell)
            for idx, v in enumerate(m):
                data[idx // 2][idx % 2][(-ell - 1,)] = v
        data[0][0][(0,)] = MultiPoly.const(1)
        window = {"x": (-ell_max - 1, 0, "down")}
    else:
        for ell in range(ell_max + 1):
            m, j = minus_coefficient(ell)
            for idx, v in enumerate(m):
                data[idx // 2][idx % 2][(ell,)] = CorrelatorValue(v, ((j, 1),))
        data[0][0][(0,)] = data[0][0][(0,)] + 1
        window = {"x": (0, ell_max, "up")}
    entries = tuple(tuple(TruncatedSeries(("x",), data[i][j], window) for j in range(2)) for i in range(2))
    return ResolventSeries(sign, ell_max, entries)


def _sign(sign) -> int:
    if sign in (1, "+", "plus"):
        return 1
    if sign in (-1, "-", "minus"):
        return -1
    raise ValueError(f"sign must be plus or minus, got {sign!r}")


def matrix_series_mul(R1: ResolventSeries, R2: ResolventSeries):
    out = []
    for i in range(2):
        row = []
        for j in range(2):
            row.append(series_mul(R1[i, 0], R2[0, j]) + series_mul(R1[i, 1], R2[1, j]))
        out.append(tuple(row))
    return tuple(out)


def projector_defect(sign, ell_max: int):
    """Entries of R^2 - R that are guaranteed by the windows; should all vanish."""
    R = build_resolvent(sign, ell_max)
    R2 = matrix_series_mul(R, R)
    bad = []
    for i in range(2):
        for j in range(2):
            lo, hi, _ = R2[i][j].windows["x"]
            for e in range(lo, hi + 1):
                if not R2[i][j].guaranteed((e,)):
                    continue
                lhs = CorrelatorValue.lift(R2[i][j][(e,)])
                rhs = CorrelatorValue.lift(R[i, j][(e,)])
                if not (lhs - rhs).numerator.is_zero():
                    bad.append((i, j, e))
    return bad


def trace_defect(sign, ell_max: int):
    R = build_resolvent(sign, ell_max)
    bad = []
    lo, hi, _ = R[0, 0].windows["x"]
    for e in range(lo, hi + 1):
        t = CorrelatorValue.lift(R[0, 0][(e,)]) + CorrelatorValue.lift(R[1, 1][(e,)])
        expect = 1 if e == 0 else 0
        if not (t - expect).numerator.is_zero():
            bad.append(e)
    return bad


# one-point functions

def one_point(k: int) -> CorrelatorValue:
    if k == 0:
        raise ValueError("k must be nonzero")
    if k > 0:
        return CorrelatorValue(A(k).subs("M", MM), ())
    j = -k - 1
    return CorrelatorValue(A(j).subs("M", MM), ((j, 1),))


# index skeleton of the cycle sum

def _large(a: int, b: int, signs) -> bool:
    """Is x_a the large variable when expanding 1/(x_a - x_b)?"""
    sa, sb = signs[a], signs[b]
    if sa != sb:
        return sa > 0
    return a < b if sa > 0 else a > b


@dataclass(frozen=True)
class Skeleton:
    """Useful transitions for every cycle and closing index.

    paths[(cycle, m0)] is a list of layers; a layer is a list of
    (m_in, m_out, coeff_id, sign) with coeff_id one of
    ('E',), ('P', l), ('Q', l) or ('1',) for the constant subtracted at r=2.
    """
    key: CorrelatorKey
    ell_max: int
    m_bound: int
    traces: tuple  # ((layers, ...), ...)
    constants: tuple


def _targets(key: CorrelatorKey):
    # exponent of x_i in the generating function is -sigma_i k_i - 1
    return tuple(-k - 1 for k in key.keys)


def _cycles(r):
    for rest in itertools.permutations(range(1, r)):
        yield (0,) + rest


def _vertex_options(v, prev, nxt, key, ell_max, m_bound, constant):
    """Map (m_in, m_out) -> (coeff_id, overflow flag) for vertex v of a cycle."""
    signs = key.signs
    E = _targets(key)[v]
    # edge prev -> v expands 1/(x_prev - x_v)
    v_large_in = not _large(prev, v, signs)
    v_large_out = _large(v, nxt, signs)
    opts = {}
    for mi in range(m_bound + 1):
        ci = -mi - 1 if v_large_in else mi
        for mo in range(m_bound + 1):
            co = -mo - 1 if v_large_out else mo
            rho = E - ci - co
            if constant:
                if rho == 0:
                    opts[(mi, mo)] = (("1",), False)
                continue
            if signs[v] > 0:
                if rho == 0:
                    opts[(mi, mo)] = (("E",), False)
                elif rho < 0:
                    ell = -rho - 1
                    opts[(mi, mo)] = (("P", ell), ell > ell_max)
            elif rho >= 0:
                opts[(mi, mo)] = (("Q", rho), rho > ell_max)
    return opts


def _edge_sign(a, b, signs):
    return 1 if _large(a, b, signs) else -1


def _cycle_layers(cycle, key, ell_max, m_bound, constant):
    r = len(cycle)
    signs = key.signs
    vopts = []
    for j, v in enumerate(cycle):
        prev, nxt = cycle[j - 1], cycle[(j + 1) % r]
        vopts.append(_vertex_options(v, prev, nxt, key, ell_max, m_bound, constant))
    esign = [_edge_sign(cycle[j], cycle[(j + 1) % r], signs) for j in range(r)]
    out = []
    for m0 in range(m_bound + 1):
        # forward reachability, tracking the in-index of each layer
        reach = [{m0}]
        for j in range(r):
            nxt = set()
            for (mi, mo) in vopts[j]:
                if mi in reach[-1]:
                    nxt.add(mo)
            reach.append(nxt)
        if m0 not in reach[-1]:
            continue
        # backward co-reachability
        alive = [None] * (r + 1)
        alive[r] = {m0}
        for j in range(r - 1, -1, -1):
            alive[j] = {mi for (mi, mo) in vopts[j] if mo in alive[j + 1] and mi in reach[j]}
        layers = []
        for j in range(r):
            lay = []
            for (mi, mo), (cid, overflow) in vopts[j].items():
                if mi in alive[j] and mo in alive[j + 1]:
                    if overflow or mi == m_bound or mo == m_bound:
                        raise InsufficientOrder(
                            f"key {key}: truncation at l_max={ell_max}, m<={m_bound} is too small")
                    lay.append((mi, mo, cid, esign[j]))
            layers.append(tuple(lay))
        out.append(tuple(layers))
    return tuple(out)


@lru_cache(maxsize=256)
def skeleton(key: CorrelatorKey, margin: int = DEFAULT_MARGIN) -> Skeleton:
    if key.r < 2:
        raise ValueError("skeleton needs at least two keys")
    bound = key.weight + key.r + margin
    traces, consts = [], []
    for cyc in _cycles(key.r):
        traces.append(_cycle_layers(cyc, key, bound, bound, False))
        if key.r == 2:
            consts.append(_cycle_layers(cyc, key, bound, bound, True))
    return Skeleton(key, bound, bound, tuple(traces), tuple(consts))


def _run_chain(paths, mats, one, zero):
    """Sum over closed paths of trace(prod sign * matrix)."""
    total = zero
    for layers in paths:
        m0 = layers[0][0][0]
        cur = {m0: (one, zero, zero, one)}
        for lay in layers:
            nxt = {}
            for mi, mo, cid, s in lay:
                X = cur.get(mi)
                if X is None:
                    continue
                T = mats[cid]
                a = X[0] * T[0] + X[1] * T[2]
                b = X[0] * T[1] + X[1] * T[3]
                c = X[2] * T[0] + X[3] * T[2]
                d = X[2] * T[1] + X[3] * T[3]
                if s < 0:
                    a, b, c, d = -a, -b, -c, -d
                Y = nxt.get(mo)
                nxt[mo] = (a, b, c, d) if Y is None else (Y[0] + a, Y[1] + b, Y[2] + c, Y[3] + d)
            cur = nxt
        X = cur.get(m0)
        if X is not None:
            total = total + X[0] + X[3]
    return total


def _run_scalar(paths):
    total = 0
    for layers in paths:
        m0 = layers[0][0][0]
        cur = {m0: 1}
        for lay in layers:
            nxt = {}
            for mi, mo, _, s in lay:
                if mi in cur:
                    nxt[mo] = nxt.get(mo, 0) + s * cur[mi]
            cur = nxt
        total += cur.get(m0, 0)
    return total


def _coefficient_ids(sk: Skeleton):
    ids = set()
    for cyc in sk.traces:
        for layers in cyc:
            for lay in layers:
                ids.update(t[2] for t in lay)
    return ids


def _max_path(sk: Skeleton, weight):
    """Max over closed paths of the summed transition weights (or None)."""
    best = None
    for cyc in sk.traces:
        for layers in cyc:
            m0 = layers[0][0][0]
            cur = {m0: 0}
            for lay in layers:
                nxt = {}
                for mi, mo, cid, _ in lay:
                    if mi in cur:
                        v = cur[mi] + weight(cid)
                        if nxt.get(mo, v - 1) < v:
                            nxt[mo] = v
                cur = nxt
            if m0 in cur and (best is None or cur[m0] > best):
                best = cur[m0]
    return best


def denominator_exponents(sk: Skeleton) -> dict:
    """Exponents {m: e} of (alpha+m) in a common denominator of all path terms."""
    exps = {}
    if sk.key.r_minus == 0:
        return exps
    for t in range(sk.ell_max + 1):
        e = _max_path(sk, lambda cid, t=t: 1 if cid[0] == "Q" and cid[1] >= t else 0) or 0
        if e:
            exps[t] = e
            if t:
                exps[-t] = e
    return exps


def numerator_degree_bound(sk: Skeleton, den_degree: int) -> int:
    def w(cid):
        if cid[0] == "E":
            return 0
        if cid[0] == "P":
            return cid[1] + 2
        return 1 - cid[1]
    best = _max_path(sk, w)
    return max(0, den_degree + (best if best is not None else 0))


# numeric evaluation at a sample point

def _point_matrices(sk: Skeleton, n: int, alpha: int, big: int):
    """Integer matrices at (n, alpha); minus coefficients scaled by a_big/a_l."""
    L = sk.ell_max
    m = n + alpha
    a, b = coeff_values(n, m, L)
    _, b1 = coeff_values(n + 1, m + 1, L)
    mats = {("E",): (1, 0, 0, 0), ("1",): (1, 0, 0, 1)}
    ids = _coefficient_ids(sk)
    scale = None
    if any(c[0] == "Q" for c in ids):
        # suffix products prod_{l < |j| <= big} (alpha + j)
        scale = [1] * (big + 2)
        for ell in range(big - 1, -1, -1):
            j = ell + 1
            scale[ell] = scale[ell + 1] * (alpha + j) * (alpha - j)
    for cid in ids:
        if cid[0] == "P":
            ell = cid[1]
            mats[cid] = (ell * a[ell], b1[ell], -n * m * b[ell], -ell * a[ell])
        elif cid[0] == "Q":
            ell = cid[1]
            s = scale[ell]
            q = ((ell + 1) * a[ell] * s, -b1[ell] * s, n * m * b[ell] * s, -(ell + 1) * a[ell] * s)
            if ell == 0:
                full = block_value(big, alpha)
                q = (q[0] + int(full), q[1], q[2], q[3])
            mats[cid] = q
    return mats


def _value_at(sk: Skeleton, n: int, alpha: int, big: int):
    """Generating-function coefficient times a_big(alpha)^r_minus, as an integer."""
    mats = _point_matrices(sk, n, alpha, big)
    total = 0
    for cyc in sk.traces:
        total += _run_chain(cyc, mats, 1, 0)
    if sk.constants:
        const = sum(_run_scalar(c) for c in sk.constants)
        total -= const * int(block_value(big, alpha)) ** sk.key.r_minus
    return -total


# bivariate Newton interpolation on a triangular grid

def _interpolate(f, xs, ys, d):
    """Polynomial of total degree <= d through f(x_i, y_j), i + j <= d.

    Returns {(i, j): Fraction} monomial coefficients in (x, y).
    """
    # rows: fixed y_b, divided differences in x over x_0..x_{d-b}
    dcoef = {}  # dcoef[i][b] = sum_j c_ij psi_j(y_b)
    for bidx in range(d + 1):
        vals = [Fraction(f(xs[a], ys[bidx])) for a in range(d - bidx + 1)]
        n = len(vals)
        for lvl in range(1, n):
            for a in range(n - 1, lvl - 1, -1):
                vals[a] = (vals[a] - vals[a - 1]) / (xs[a] - xs[a - lvl])
        for i, v in enumerate(vals):
            dcoef.setdefault(i, []).append(v)
    # for each i, y-divided differences give c_ij
    newton = {}
    for i, vals in dcoef.items():
        vals = list(vals)
        n = len(vals)
        for lvl in range(1, n):
            for b in range(n - 1, lvl - 1, -1):
                vals[b] = (vals[b] - vals[b - 1]) / (ys[b] - ys[b - lvl])
        newton[i] = vals
    # q_i(y) = sum_j c_ij psi_j(y) to monomials, then Horner in x
    q = {}
    for i, cs in newton.items():
        poly = [Fraction(0)]
        for j in range(len(cs) - 1, -1, -1):
            # poly = poly * (y - y_j) + c_ij
            newp = [Fraction(0)] * (len(poly) + 1)
            for k, v in enumerate(poly):
                newp[k + 1] += v
                newp[k] -= v * ys[j]
            newp[0] += cs[j]
            poly = newp
        q[i] = poly
    result = {}  # dict (i, j) -> coefficient
    for i in range(d, -1, -1):
        # result = result * (x - x_i) + q_i(y)
        new = {}
        for (a, b), v in result.items():
            new[(a + 1, b)] = new.get((a + 1, b), 0) + v
            new[(a, b)] = new.get((a, b), 0) - v * xs[i]
        for b, v in enumerate(q.get(i, [])):
            if v:
                new[(0, b)] = new.get((0, b), 0) + v
        result = {k: v for k, v in new.items() if v}
    return result


def connected_correlator(key, order_margin: int = DEFAULT_MARGIN, method: str = "interp",
                         verify: bool = True) -> CorrelatorValue:
    """Connected correlator <prod tr X^k_i>_c as an exact rational function."""
    key = as_key(key)
    if key.r == 1:
        return one_point(key.keys[0])
    if method == "symbolic":
        return _connected_symbolic(key, order_margin)
    if method != "interp":
        raise ValueError(f"unknown method {method!r}")
    return _connected_interp(key, order_margin, verify)


@lru_cache(maxsize=512)
def _connected_interp(key: CorrelatorKey, margin: int, verify: bool) -> CorrelatorValue:
    sk = skeleton(key, margin)
    exps = denominator_exponents(sk)
    big = max((abs(m) for m in exps), default=0)
    big = max(big, sk.ell_max) if key.r_minus else 0
    rm = key.r_minus
    den_deg = sum(exps.values())
    d = numerator_degree_bound(sk, den_deg)
    xs = list(range(d + 1))
    y0 = big + 1 if rm else 0
    ys = list(range(y0, y0 + d + 1))

    def den_at(alpha):
        v = 1
        for m, e in exps.items():
            v *= (alpha + m) ** e
        return v

    def f(n, alpha):
        raw = _value_at(sk, n, alpha, big)
        if not rm:
            return raw
        full = int(block_value(big, alpha)) ** rm
        return Fraction(raw * den_at(alpha), full) * (-1) ** rm

    coeffs = _interpolate(f, xs, ys, d)
    num = MultiPoly({(i, 0, j, 0, 0, 0): v for (i, j), v in coeffs.items()})
    if verify:
        for n, alpha in ((d + 3, y0 + d + 5), (2 * d + 7, y0 + 2 * d + 1)):
            if num.evaluate(N=n, alpha=alpha) != f(n, alpha):
                raise ArithmeticError(f"interpolation check failed for key {key}")
    if not rm:
        return CorrelatorValue(num, ())
    return CorrelatorValue.from_linear_factors(num, exps)


def _connected_symbolic(key: CorrelatorKey, margin: int) -> CorrelatorValue:
    sk = skeleton(key, margin)
    big = sk.ell_max
    rm = key.r_minus
    full = pochhammer_expand(big) if rm else MultiPoly.const(1)
    one, zero = MultiPoly.const(1), MultiPoly()
    mats = {("E",): (one, zero, zero, zero)}
    for cid in _coefficient_ids(sk):
        if cid[0] == "P":
            mats[cid] = plus_coefficient(cid[1])
        elif cid[0] == "Q":
            entries, j = minus_coefficient(cid[1])
            s = MultiPoly.const(1)
            for m in range(j + 1, big + 1):
                s = s * (ALPHA + m) * (ALPHA - m)
            q = tuple(x * s for x in entries)
            if j == 0:
                q = (q[0] + full, q[1], q[2], q[3])
            mats[cid] = q
    total = zero
    for cyc in sk.traces:
        total = total + _run_chain(cyc, mats, one, zero)
    if sk.constants:
        const = sum(_run_scalar(c) for c in sk.constants)
        total = total - full ** rm * const
    total = -total * (-1) ** rm
    if not rm:
        return CorrelatorValue(total, ())
    return CorrelatorValue(total, ((big, rm),))


# moments and cumulants

def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def moments_from_connected(key, connected=connected_correlator) -> CorrelatorValue:
    """<prod tr X^k_i> as a sum over set partitions of products of cumulants."""
    key = as_key(key)
    total = CorrelatorValue.lift(0)
    for part in set_partitions(range(key.r)):
        term = CorrelatorValue.lift(1)
        for block in part:
            term = term * connected(tuple(key.keys[i] for i in block))
        total = total + term
    return total


def connected_from_moments(keys, moment) -> object:
    """Moebius inversion: cumulant from a moment function on sub-multisets."""
    keys = tuple(keys)
    total = 0
    for part in set_partitions(range(len(keys))):
        p = len(part)
        term = (-1) ** (p - 1) * factorial(p - 1)
        for block in part:
            term = term * moment(tuple(keys[i] for i in block))
        total = total + term
    return total


# Virasoro constraints for the LUE partition function at t_- = 0

def _weight(e):
    return sum((i + 1) * n for i, n in enumerate(e))


def _exponent_vectors(weight_max: int):
    """Exponent vectors (n_1..n_w) with sum k n_k <= weight_max."""
    def rec(k, left):
        if k > weight_max:
            yield ()
            return
        for n in range(left // k + 1):
            for rest in rec(k + 1, left - n * k):
                yield (n,) + rest
    return list(rec(1, weight_max))


def free_energy_coefficient(ks, e, margin: int = DEFAULT_MARGIN) -> MultiPoly:
    """Coefficient of t^e in d_{k_1}...d_{k_j} log Z (at t_- = 0)."""
    keys = tuple(ks) + tuple(i + 1 for i, n in enumerate(e) for _ in range(n))
    if not keys:
        raise ValueError("the constant term of log Z is not tracked")
    denom = 1
    for n in e:
        denom *= factorial(n)
    return connected_correlator(keys, margin).numerator * Fraction(1, denom)


def _minus(e, k):
    if k > len(e) or e[k - 1] == 0:
        return None
    e2 = list(e)
    e2[k - 1] -= 1
    return tuple(e2)


def _splits(e):
    for e1 in itertools.product(*(range(n + 1) for n in e)):
        yield e1, tuple(a - b for a, b in zip(e, e1))


def virasoro_residual(n: int, degree: int, margin: int = DEFAULT_MARGIN):
    """Taylor coefficients of (L_n Z)/Z in t_1, t_2, ... up to weighted degree.

    The weight of t_k is k.  Returns {exponent vector: MultiPoly}; every
    entry vanishes when the constraint holds.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    Fc = lambda ks, e: free_energy_coefficient(ks, e, margin)
    out = {}
    for e in _exponent_vectors(degree):
        total = MultiPoly()
        for k in range(1, len(e) + 1):
            e2 = _minus(e, k)
            if e2 is not None:
                total = total + Fc((k + n,), e2) * k
        total = total - Fc((1 + n,), e)
        if n == 0:
            if not any(e):
                total = total + N * MM
        else:
            for k in range(1, n):
                total = total + Fc((k, n - k), e)
                for e1, e2 in _splits(e):
                    total = total + Fc((k,), e1) * Fc((n - k,), e2)
            total = total + Fc((n,), e) * (2 * N + ALPHA)
        out[e] = total
    return out


# mGUE factorisation at the level of correlators

def mgue_factorization_residual(key, gue=None) -> MultiPoly:
    """GUE side at size 2N minus 2^{sum k} (LUE|alpha=-1/2 + LUE|alpha=+1/2)."""
    from .oracles import gue_even_oracle
    key = as_key(key)
    if key.r_minus:
        raise ValueError("factorisation check is for positive keys only")
    gue = gue or gue_even_oracle
    lhs = gue([2 * k for k in key.keys]).subs("N", 2 * N)
    lue = connected_correlator(key).numerator
    half = Fraction(1, 2)
    rhs = (lue.subs("alpha", -half) + lue.subs("alpha", half)) * 2 ** sum(key.keys)
    return lhs - rhs


def involution_defect(key) -> MultiPoly:
    """P(N, alpha) - P(N + alpha, -alpha) for a positive key."""
    key = as_key(key)
    p = connected_correlator(key).numerator
    img = p.subs("alpha", MultiPoly.var("c")).subs("N", N - MultiPoly.var("c")).subs("c", -ALPHA)
    return p - img
