"""Brute-force ground truth, independent of the resolvent machinery.

* monotone factorisation counts in S_d by depth-first search;
* small-N LUE correlators from the eigenvalue integral;
* even GUE correlators from Wick pairings.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exact import MultiPoly, rising

GUARD_ENV = "LUECORR_GUARDRAILS"


def _guard(name: str, default: int) -> int:
    """Guardrail caps; LUECORR_GUARDRAILS='off' disables, 'hurwitz_d=7,...' overrides."""
    raw = os.environ.get(GUARD_ENV, "")
    if raw.strip().lower() == "off":
        return 10 ** 9
    for item in raw.split(","):
        if "=" in item:
            k, v = item.split("=", 1)
            if k.strip() == name:
                return int(v)
    return default


class GuardrailError(ValueError):
    pass


# partitions

@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        ps = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if not ps or any(p <= 0 for p in ps):
            raise ValueError("a partition needs positive parts")
        object.__setattr__(self, "parts", ps)

    @property
    def size(self):
        return sum(self.parts)

    @property
    def length(self):
        return len(self.parts)

    @property
    def z(self):
        out = 1
        for i in set(self.parts):
            m = self.parts.count(i)
            out *= i ** m * factorial(m)
        return out

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return ",".join(map(str, self.parts))


def as_partition(mu) -> Partition:
    if isinstance(mu, Partition):
        return mu
    if isinstance(mu, int):
        mu = (mu,)
    return Partition(tuple(mu))


def partitions_of(d: int, length: int | None = None):
    def rec(n, cap):
        if n == 0:
            yield ()
            return
        for p in range(min(n, cap), 0, -1):
            for rest in rec(n - p, p):
                yield (p,) + rest
    for p in rec(d, d):
        if length is None or len(p) == length:
            yield Partition(p)


# permutations on {0..d-1} as tuples

def cycle_type(perm) -> tuple:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if not seen[i]:
            n = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                n += 1
            out.append(n)
    return tuple(sorted(out, reverse=True))


def perms_of_type(mu: Partition):
    d = mu.size
    for p in itertools.permutations(range(d)):
        if cycle_type(p) == mu.parts:
            yield p


def _same_cycle(perm, a, b) -> bool:
    j = perm[a]
    while j != a:
        if j == b:
            return True
        j = perm[j]
    return False


def _transitive(alpha, taus, d) -> bool:
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(d):
        parent[find(i)] = find(alpha[i])
    for a, b in taus:
        parent[find(a)] = find(b)
    root = find(0)
    return all(find(i) == root for i in range(d))


@lru_cache(maxsize=None)
def _factorisation_counts(mu: Partition, r: int, flavor: str):
    """{final cycle type: number of (alpha, taus)} over all alpha of type mu.

    Only transitive tuples are counted.  The product alpha tau_1 ... tau_r is
    built by right multiplication, so each step swaps two entries.
    """
    if flavor not in ("strict", "weak"):
        raise ValueError("flavor must be 'strict' or 'weak'")
    d = mu.size
    cap = _guard("hurwitz_d", 6)
    if d > cap:
        raise GuardrailError(f"hurwitz_brute limited to d <= {cap} (set {GUARD_ENV} to change)")
    strict = flavor == "strict"
    counts = {}
    for alpha in perms_of_type(mu):
        perm = list(alpha)
        taus = []

        def dfs(depth, bmin, ncyc):
            if depth == r:
                if _transitive(alpha, taus, d):
                    t = cycle_type(perm)
                    counts[t] = counts.get(t, 0) + 1
                return
            for b in range(bmin, d):
                for a in range(b):
                    split = _same_cycle(perm, a, b)
                    perm[a], perm[b] = perm[b], perm[a]
                    taus.append((a, b))
                    dfs(depth + 1, b + 1 if strict else b, ncyc + (1 if split else -1))
                    taus.pop()
                    perm[a], perm[b] = perm[b], perm[a]

        dfs(0, 1, mu.length)
    return counts


def hurwitz_brute(mu, nu, g: int, flavor: str) -> int:
    """Number of tuples (alpha, tau_1..tau_r, beta) of the given data."""
    mu, nu = as_partition(mu), as_partition(nu)
    if mu.size != nu.size:
        return 0
    r = mu.length + nu.length + 2 * g - 2
    if r < 0:
        return 0
    return _factorisation_counts(mu, r, flavor).get(nu.parts, 0)


def hurwitz_weighted(mu, s: int, g: int, flavor: str) -> Fraction:
    """(z_mu / |mu|!) times the count summed over all nu of length s."""
    mu = as_partition(mu)
    r = mu.length + s + 2 * g - 2
    if r < 0 or s < 1 or s > mu.size:
        return Fraction(0)
    counts = _factorisation_counts(mu, r, flavor)
    total = sum(v for t, v in counts.items() if len(t) == s)
    return Fraction(mu.z * total, factorial(mu.size))


# LUE eigenvalue integrals for N = 1, 2, 3

@dataclass(frozen=True)
class RationalFunction:
    num: MultiPoly
    den: MultiPoly

    def equals(self, value) -> bool:
        """Compare with a CorrelatorValue already specialised in N."""
        return self.num * value.denominator() == value.numerator * self.den


def _vandermonde_sq(n: int):
    poly = {(0,) * n: 1}
    for i in range(n):
        for j in range(i + 1, n):
            for _ in range(2):
                new = {}
                for e, c in poly.items():
                    for idx, sgn in ((i, 1), (j, -1)):
                        e2 = list(e)
                        e2[idx] += 1
                        e2 = tuple(e2)
                        new[e2] = new.get(e2, 0) + sgn * c
                poly = {e: c for e, c in new.items() if c}
    return poly


def _power_sum_product(n: int, keys):
    poly = {(0,) * n: 1}
    for k in keys:
        new = {}
        for e, c in poly.items():
            for j in range(n):
                e2 = list(e)
                e2[j] += k
                e2 = tuple(e2)
                new[e2] = new.get(e2, 0) + c
        poly = new
    return poly


def lue_eigenvalue_oracle(key, n: int) -> RationalFunction:
    """Connected correlator at N = n as a ratio of polynomials in alpha.

    Each monomial prod x_j^e_j integrates to prod Gamma(alpha+e_j+1); all
    Gammas are divided by Gamma(alpha+1-K) so only rising factorials appear.
    """
    if n not in (1, 2, 3):
        raise GuardrailError("the eigenvalue oracle supports N in {1, 2, 3}")
    keys = tuple(int(k) for k in key)
    if any(k == 0 for k in keys):
        raise ValueError("keys must be nonzero")
    shift = sum(-k for k in keys if k < 0)
    alpha = MultiPoly.var("alpha")
    vdm = _vandermonde_sq(n)
    base = alpha + (1 - shift)

    @lru_cache(maxsize=None)
    def gamma_ratio(e):
        # Gamma(alpha + e + 1) / Gamma(alpha + 1 - shift)
        return rising(base, e + shift)

    def integral(ks):
        total = MultiPoly()
        prod = _power_sum_product(n, ks)
        for e1, c1 in vdm.items():
            for e2, c2 in prod.items():
                term = MultiPoly.const(c1 * c2)
                for a, b in zip(e1, e2):
                    term = term * gamma_ratio(a + b)
                total = total + term
        return total

    Z = integral(())
    r = len(keys)
    num = MultiPoly()
    for part in _set_partitions(list(range(r))):
        p = len(part)
        term = MultiPoly.const((-1) ** (p - 1) * factorial(p - 1)) * Z ** (r - p)
        for blk in part:
            term = term * integral(tuple(keys[i] for i in blk))
        num = num + term
    return RationalFunction(num, Z ** r)


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


# GUE Wick pairings, weight exp(-tr X^2 / 2)

def _pairings(items):
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for p in _pairings(rest):
            yield [(a, items[i])] + p


def gue_even_oracle(powers) -> MultiPoly:
    """Connected <prod tr X^p_i>_c for the GUE, sum over connected Wick pairings."""
    powers = [int(p) for p in powers]
    if any(p <= 0 or p % 2 for p in powers):
        raise ValueError("powers must be positive even integers")
    cap = _guard("gue_total", 12)
    if sum(powers) > cap:
        raise GuardrailError(f"gue_even_oracle limited to total power <= {cap}")
    # half-edges; gamma sends each to its successor around its trace
    gamma, owner = [], []
    start = 0
    for t, p in enumerate(powers):
        for i in range(p):
            gamma.append(start + (i + 1) % p)
            owner.append(t)
        start += p
    h = len(gamma)
    counts = {}
    for pairing in _pairings(list(range(h))):
        inv = [0] * h
        parent = list(range(len(powers)))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for a, b in pairing:
            inv[a], inv[b] = b, a
            parent[find(owner[a])] = find(owner[b])
        if len({find(t) for t in range(len(powers))}) != 1:
            continue
        faces = cycle_count([gamma[inv[i]] for i in range(h)])
        counts[faces] = counts.get(faces, 0) + 1
    out = MultiPoly()
    for f, c in counts.items():
        out = out + MultiPoly.var("N", f) * c
    return out


def cycle_count(perm) -> int:
    return len(cycle_type(perm))
