"""Exact scalars, multivariate polynomials, Pochhammer denominators and truncated series."""

from __future__ import annotations

import ast
import re
from collections import namedtuple
from fractions import Fraction
from math import comb

VARS = ("N", "M", "alpha", "c", "lambda", "eps")
_INDEX = {v: i for i, v in enumerate(VARS)}
_ZERO_EXP = (0,) * len(VARS)


def rat(x) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def rat_str(x) -> str:
    x = rat(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def var_index(name: str) -> int:
    try:
        return _INDEX[name]
    except KeyError:
        raise ValueError(f"unknown variable {name!r}; expected one of {VARS}") from None


class MultiPoly:
    """Polynomial over Q in the fixed universe VARS.

    Terms are a dict exponent-tuple -> Fraction with no zero entries.  Treat
    instances as immutable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for e, c in terms.items():
                c = rat(c)
                if c:
                    self.terms[tuple(e)] = c

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def const(cls, c):
        c = rat(c)
        return cls._raw({_ZERO_EXP: c} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1):
        e = [0] * len(VARS)
        e[var_index(name)] = power
        return cls._raw({tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, coef, **exps):
        e = [0] * len(VARS)
        for k, v in exps.items():
            e[var_index(k)] = v
        return cls({tuple(e): coef})

    # arithmetic
    @staticmethod
    def _lift(x):
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return MultiPoly.const(x)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly()
            return MultiPoly._raw({e: c * other for e, c in self.terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out, base = MultiPoly.const(1), self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(e == _ZERO_EXP for e in self.terms)

    def constant(self) -> Fraction:
        return self.terms.get(_ZERO_EXP, Fraction(0))

    def variables(self):
        used = set()
        for e in self.terms:
            used.update(VARS[i] for i, k in enumerate(e) if k)
        return [v for v in VARS if v in used]

    def degree(self, name: str | None = None) -> int:
        """Degree in one variable, or total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        i = var_index(name)
        return max(e[i] for e in self.terms)

    def coeff(self, name: str, power: int) -> "MultiPoly":
        """Coefficient of name**power, as a polynomial in the remaining variables."""
        i = var_index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == power:
                out[e[:i] + (0,) + e[i + 1:]] = c
        return MultiPoly._raw(out)

    def coefficients(self, name: str) -> dict:
        i = var_index(name)
        out = {}
        for e, c in self.terms.items():
            out.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: MultiPoly._raw(v) for k, v in out.items()}

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def subs(self, name: str, value) -> "MultiPoly":
        """Substitute a polynomial or number for one variable."""
        i = var_index(name)
        value = self._lift(value)
        powers = [MultiPoly.const(1)]
        out = MultiPoly()
        by_power = {}
        for e, c in self.terms.items():
            by_power.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
        for k in sorted(by_power):
            while len(powers) <= k:
                powers.append(powers[-1] * value)
            out = out + MultiPoly._raw(by_power[k]) * powers[k]
        return out

    def evaluate(self, **values):
        """Evaluate with Fraction values; unassigned variables must not occur."""
        idx = [(var_index(k), rat(v)) for k, v in values.items()]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for i, v in idx:
                if e[i]:
                    t *= v ** e[i]
            rest = list(e)
            for i, _ in idx:
                rest[i] = 0
            if any(rest):
                raise ValueError("evaluate: free variables remain")
            total += t
        return total

    def partial_eval(self, **values) -> "MultiPoly":
        p = self
        for k, v in values.items():
            p = p.subs(k, rat(v))
        return p

    def sorted_terms(self, order=("N", "alpha")):
        """Terms sorted by the given variables with degrees descending, then the rest."""
        keyidx = [var_index(v) for v in order] + [i for i, v in enumerate(VARS) if v not in order]
        return sorted(self.terms.items(), key=lambda t: tuple(-t[0][i] for i in keyidx))

    def to_json(self):
        return [
            {"exps": {VARS[i]: k for i, k in enumerate(e) if k}, "coef": rat_str(c)}
            for e, c in self.sorted_terms(VARS)
        ]

    @classmethod
    def from_json(cls, data):
        out = {}
        for t in data:
            e = [0] * len(VARS)
            for k, v in t["exps"].items():
                e[var_index(k)] = int(v)
            out[tuple(e)] = rat(t["coef"])
        return cls(out)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)})"

    def __str__(self):
        return format_poly(self)


_SUPERSCRIPT = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")
_DISPLAY = {"alpha": "α", "lambda": "λ", "eps": "ε"}


def _mono(e, style, order):
    parts = []
    for v in order:
        k = e[var_index(v)]
        if not k:
            continue
        if style == "plain":
            name = _DISPLAY.get(v, v)
            parts.append(name + (str(k).translate(_SUPERSCRIPT) if k != 1 else ""))
        elif style == "latex":
            name = "\\" + v if v in ("alpha", "lambda") else ("\\epsilon" if v == "eps" else v)
            parts.append(name + (f"^{{{k}}}" if k != 1 else ""))
        else:
            parts.append(v + (f"^{k}" if k != 1 else ""))
    sep = {"plain": "", "latex": " "}.get(style, "*")
    return sep.join(parts)


def format_poly(p: MultiPoly, style: str = "ascii", order=("N", "alpha"), _nested=False) -> str:
    """Render with the listed variables first, grouped by powers of the leading one.

    The leading variable's coefficients are factored out as parenthesised
    polynomials in the others.  'ascii' and 'latex' list degrees descending;
    'plain' lists them ascending with compact brackets, as in 2α(1+2α²)N + 18N⁴.
    """
    if p.is_zero():
        return "0"
    order = list(order) + [v for v in VARS if v not in order]
    used = [v for v in order if p.degree(v) > 0]
    if not used:
        return rat_str(p.constant())
    lead = used[0]
    chunks = []
    ascending = style == "plain"
    for k, sub in sorted(p.coefficients(lead).items(), key=lambda t: t[0] if ascending else -t[0]):
        e = [0] * len(VARS)
        e[var_index(lead)] = k
        mono = _mono(tuple(e), style, order) if k else ""
        chunks.append(_join_coeff(sub, mono, style, order, _nested))
    return _join_signed(chunks, compact=_nested and style == "plain")


def _join_coeff(sub: MultiPoly, mono: str, style, order, nested=False):
    mul = {"ascii": "*", "latex": " "}.get(style, "")
    if len(sub.terms) == 1:
        (e, c), = sub.terms.items()
        inner = _mono(e, style, order)
        body = mul.join(x for x in (inner, mono) if x)
        if not body:
            return _fmt_rat(c, style)
        if c == 1:
            return body
        if c == -1:
            return "-" + body
        return _fmt_rat(c, style) + mul + body
    if not mono:
        return format_poly(sub, style, order, nested)
    # pull out the content and a common monomial so the bracket stays small
    content = _content(sub)
    common = tuple(min(e[i] for e in sub.terms) for i in range(len(VARS)))
    rest = MultiPoly._raw({tuple(a - b for a, b in zip(e, common)): c / content for e, c in sub.terms.items()})
    head = _mono(common, style, order)
    pieces = []
    if content != 1:
        pieces.append("-" if content == -1 else _fmt_rat(content, style))
    if head:
        pieces.append(head)
    prefix = "".join(pieces) if style != "ascii" else "*".join(x for x in pieces if x != "-")
    if style == "ascii" and content == -1:
        prefix = "-" + prefix if prefix else "-"
    open_, close = ("\\left(", "\\right)") if style == "latex" else ("(", ")")
    bracket = open_ + format_poly(rest, style, order, True) + close
    if prefix in ("", "-"):
        return prefix + bracket + mul + mono
    return prefix + mul + bracket + mul + mono


def _content(p: MultiPoly) -> Fraction:
    from math import gcd
    num = 0
    den = 1
    for c in p.terms.values():
        num = gcd(num, c.numerator)
        den = den * c.denominator // gcd(den, c.denominator)
    first = p.sorted_terms()[0][1]
    sign = -1 if first < 0 else 1
    return Fraction(sign * num, den)


def _fmt_rat(c: Fraction, style):
    if c.denominator == 1:
        return str(c.numerator)
    if style == "latex":
        sign = "-" if c < 0 else ""
        return f"{sign}\\frac{{{abs(c.numerator)}}}{{{c.denominator}}}"
    return f"({rat_str(c)})"


def _join_signed(chunks, compact=False):
    plus, minus = ("+", "-") if compact else (" + ", " - ")
    out = chunks[0]
    for ch in chunks[1:]:
        out += minus + ch[1:] if ch.startswith("-") else plus + ch
    return out


# expression parsing (used for transcribed fixtures and CLI bindings)

_NAMES = {"N": "N", "M": "M", "alpha": "alpha", "a": "alpha", "c": "c", "lam": "lambda",
          "lambda_": "lambda", "eps": "eps"}


class _Blocks(dict):
    """A product of Pochhammer blocks {j: multiplicity}, only usable as a divisor."""

    def __mul__(self, other):
        if not isinstance(other, _Blocks):
            raise ValueError("Pochhammer blocks may only be multiplied together")
        out = _Blocks(self)
        for j, m in other.items():
            out[j] = out.get(j, 0) + m
        return out

    def __pow__(self, n):
        return _Blocks({j: m * n for j, m in self.items()})


_BLOCK_NAME = re.compile(r"a(\d+)$")


def parse_poly(text: str, extra=None) -> "MultiPoly | CorrelatorValue":
    """Parse an arithmetic expression in N, alpha, c, ... into a MultiPoly.

    Accepts +, -, *, integer powers and division by rationals.  The names
    a0, a1, ... stand for the Pochhammer blocks; dividing by a product of
    them yields a CorrelatorValue.  ``extra`` maps further names to values.
    """
    extra = extra or {}
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return MultiPoly.const(node.value)
        if isinstance(node, ast.Name):
            if node.id in extra:
                return extra[node.id]
            if node.id in _NAMES:
                return MultiPoly.var(_NAMES[node.id])
            m = _BLOCK_NAME.match(node.id)
            if m:
                return _Blocks({int(m.group(1)): 1})
            raise ValueError(f"unknown symbol {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(right, MultiPoly) and right.is_const()):
                    raise ValueError("exponent must be an integer")
                k = right.constant()
                if k.denominator != 1 or k < 0:
                    raise ValueError("exponent must be a nonnegative integer")
                return left ** int(k)
            if isinstance(left, _Blocks) or (isinstance(right, _Blocks) and not isinstance(node.op, ast.Div)):
                if isinstance(node.op, ast.Mult) and isinstance(left, _Blocks) and isinstance(right, _Blocks):
                    return left * right
                raise ValueError("Pochhammer blocks may only appear in a denominator")
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if isinstance(right, MultiPoly) and right.is_const():
                    if right.is_zero():
                        _zerodiv()
                    return left * (1 / right.constant())
                if isinstance(right, _Blocks):
                    return CorrelatorValue.lift(left) * CorrelatorValue(MultiPoly.const(1), right.items())
                raise ValueError("division only by constants or Pochhammer blocks")
        raise ValueError(f"unsupported syntax in {text!r}")

    return ev(tree)


# Pochhammer blocks a_j = (alpha-j)_{2j+1}

PochhammerBlock = namedtuple("PochhammerBlock", "shift multiplicity")

_POCH_CACHE: dict = {}


def pochhammer_expand(block, multiplicity: int | None = None) -> MultiPoly:
    """Expand a_j^mult = prod_{m=-j..j} (alpha+m)^mult."""
    if isinstance(block, int):
        block = PochhammerBlock(block, 1 if multiplicity is None else multiplicity)
    j, mult = block
    if j < 0 or mult < 0:
        raise ValueError("Pochhammer block needs j >= 0 and multiplicity >= 0")
    if j not in _POCH_CACHE:
        alpha = MultiPoly.var("alpha")
        p = MultiPoly.const(1)
        for m in range(-j, j + 1):
            p = p * (alpha + m)
        _POCH_CACHE[j] = p
    return _POCH_CACHE[j] ** mult


def block_value(j: int, alpha) -> Fraction:
    v = Fraction(1)
    for m in range(-j, j + 1):
        v *= alpha + m
    return v


def rising(p, j: int):
    """Rising factorial (p)_j for a number or MultiPoly p."""
    out = 1 if not isinstance(p, MultiPoly) else MultiPoly.const(1)
    for i in range(j):
        out = out * (p + i)
    return out


def poly_substitute(p: MultiPoly, variable: str, replacement) -> MultiPoly:
    return p.subs(variable, replacement)


# univariate helpers in alpha, used for cancelling linear factors

def divide_linear(p: MultiPoly, name: str, root) -> MultiPoly | None:
    """Return p/(name - root) if the division is exact, else None."""
    root = rat(root)
    coeffs = p.coefficients(name)
    if not coeffs:
        return MultiPoly()
    deg = max(coeffs)
    q = {}
    carry = MultiPoly()
    for k in range(deg, 0, -1):
        carry = coeffs.get(k, MultiPoly()) + carry * root if k != deg else coeffs[deg]
        q[k - 1] = carry
    remainder = coeffs.get(0, MultiPoly()) + carry * root if deg > 0 else coeffs.get(0, MultiPoly())
    if not remainder.is_zero():
        return None
    x = MultiPoly.var(name)
    out = MultiPoly()
    for k, c in q.items():
        out = out + c * x ** k
    return out


class CorrelatorValue:
    """numerator(N, alpha) / prod of Pochhammer blocks a_j^mult in alpha.

    The constructor normalises: common linear factors (alpha+m) are cancelled
    and the remaining denominator is written as the smallest cover by blocks.
    """

    __slots__ = ("numerator", "blocks")

    def __init__(self, numerator: MultiPoly, blocks=(), normalize: bool = True):
        if isinstance(blocks, dict):
            blocks = blocks.items()
        mult = {}
        for j, m in blocks:
            if m:
                mult[j] = mult.get(j, 0) + m
        if normalize:
            numerator, mult = _normalize(numerator, _factor_exponents(mult))
        self.numerator = numerator
        self.blocks = tuple(sorted(mult.items(), reverse=True))

    @classmethod
    def lift(cls, x):
        if isinstance(x, CorrelatorValue):
            return x
        if isinstance(x, (int, Fraction)):
            x = MultiPoly.const(x)
        return cls(x, (), normalize=False)

    @classmethod
    def block(cls, j: int, mult: int = 1):
        return cls(MultiPoly.const(1), ((j, mult),), normalize=False)

    @classmethod
    def from_linear_factors(cls, numerator: MultiPoly, exps: dict):
        """Build from denominator exponents {m: e} of factors (alpha+m)."""
        num, mult = _normalize(numerator, dict(exps))
        v = cls.__new__(cls)
        v.numerator = num
        v.blocks = tuple(sorted(mult.items(), reverse=True))
        return v

    def denominator(self) -> MultiPoly:
        d = MultiPoly.const(1)
        for j, m in self.blocks:
            d = d * pochhammer_expand(j, m)
        return d

    def is_polynomial(self) -> bool:
        return not self.blocks

    def _exps(self):
        return _factor_exponents(dict(self.blocks))

    def __add__(self, other):
        other = CorrelatorValue.lift(other)
        e1, e2 = self._exps(), other._exps()
        common = {m: max(e1.get(m, 0), e2.get(m, 0)) for m in set(e1) | set(e2)}
        n1 = self.numerator * _linear_product({m: common[m] - e1.get(m, 0) for m in common})
        n2 = other.numerator * _linear_product({m: common[m] - e2.get(m, 0) for m in common})
        return CorrelatorValue.from_linear_factors(n1 + n2, common)

    __radd__ = __add__

    def __neg__(self):
        v = CorrelatorValue.__new__(CorrelatorValue)
        v.numerator, v.blocks = -self.numerator, self.blocks
        return v

    def __sub__(self, other):
        return self + (-CorrelatorValue.lift(other))

    def __rsub__(self, other):
        return CorrelatorValue.lift(other) - self

    def __mul__(self, other):
        other = CorrelatorValue.lift(other)
        e = self._exps()
        for m, k in other._exps().items():
            e[m] = e.get(m, 0) + k
        return CorrelatorValue.from_linear_factors(self.numerator * other.numerator, e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                _zerodiv()
            return self * (1 / Fraction(other))
        other = CorrelatorValue.lift(other)
        if not other.numerator.is_const():
            raise ValueError("can only divide by constants and Pochhammer blocks")
        c = other.numerator.constant()
        if not c:
            _zerodiv()
        e = self._exps()
        for m, k in other._exps().items():
            e[m] = e.get(m, 0) - k
        num = self.numerator * (1 / c)
        neg = {m: -k for m, k in e.items() if k < 0}
        num = num * _linear_product(neg)
        return CorrelatorValue.from_linear_factors(num, {m: k for m, k in e.items() if k > 0})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = CorrelatorValue.lift(other)
        if not isinstance(other, CorrelatorValue):
            return NotImplemented
        return self.numerator == other.numerator and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.numerator, self.blocks))

    def same_function(self, other) -> bool:
        """Equality as rational functions, by cross multiplication."""
        other = CorrelatorValue.lift(other)
        return self.numerator * other.denominator() == other.numerator * self.denominator()

    def subs(self, name: str, value) -> "CorrelatorValue":
        if name == "alpha":
            raise ValueError("substituting alpha inside a CorrelatorValue is not supported")
        return CorrelatorValue(self.numerator.subs(name, value), self.blocks, normalize=False)

    def evaluate(self, **values) -> Fraction:
        if "alpha" in values and self.blocks:
            a = rat(values["alpha"])
            jmax = max(j for j, _ in self.blocks)
            if a.denominator == 1 and -jmax <= a <= jmax:
                raise ZeroDivisionError(f"alpha={a} hits a Pochhammer zero of a_{jmax}")
        den = Fraction(1)
        for j, m in self.blocks:
            den *= block_value(j, rat(values.get("alpha", 0))) ** m if "alpha" in values else 1
        if self.blocks and "alpha" not in values:
            raise ValueError("alpha is required to evaluate a rational correlator")
        return self.numerator.evaluate(**values) / den

    def block_str(self, style="ascii"):
        parts = []
        for j, m in self.blocks:
            name = f"a_{j}" if style != "latex" else f"a_{{{j}}}"
            parts.append(name + (f"^{m}" if m > 1 and style != "latex" else (f"^{{{m}}}" if m > 1 else "")))
        return (" " if style == "latex" else "*").join(parts)

    def format(self, style="ascii"):
        num = format_poly(self.numerator, style)
        if not self.blocks:
            return num
        if style == "latex":
            return f"\\frac{{{num}}}{{{self.block_str('latex')}}}"
        return f"({num})/({self.block_str(style)})"

    def to_json(self):
        return {"numerator": self.numerator.to_json(),
                "denominator": [{"shift": j, "multiplicity": m} for j, m in self.blocks]}

    def __repr__(self):
        return f"CorrelatorValue({self.format()})"


def _zerodiv():
    raise ZeroDivisionError("division by zero")


def _factor_exponents(mult: dict) -> dict:
    e = {}
    for j, k in mult.items():
        for m in range(-j, j + 1):
            e[m] = e.get(m, 0) + k
    return e


def _linear_product(exps: dict) -> MultiPoly:
    alpha = MultiPoly.var("alpha")
    p = MultiPoly.const(1)
    for m, k in exps.items():
        if k:
            p = p * (alpha + m) ** k
    return p


def _normalize(num: MultiPoly, exps: dict):
    """Cancel (alpha+m) factors, then cover what is left by nested blocks."""
    exps = {m: k for m, k in exps.items() if k > 0}
    if num.is_zero():
        return num, {}
    for m in sorted(exps):
        while exps.get(m, 0) > 0:
            q = divide_linear(num, "alpha", -m)
            if q is None:
                break
            num = q
            exps[m] -= 1
    blocks = {}
    exps = {m: k for m, k in exps.items() if k > 0}
    while exps:
        j = max(abs(m) for m in exps)
        blocks[j] = blocks.get(j, 0) + 1
        pad = {}
        for m in range(-j, j + 1):
            k = exps.get(m, 0)
            if k == 0:
                pad[m] = 1
            elif k == 1:
                del exps[m]
            else:
                exps[m] = k - 1
        num = num * _linear_product(pad)
    return num, blocks


# truncated Laurent series with explicit windows

class InsufficientOrder(ArithmeticError):
    """Raised when a requested coefficient lies outside a guaranteed window."""


class TruncatedSeries:
    """Laurent series in named formal variables with per-variable windows.

    ``windows[v] = (lo, hi, kind)``: kind 'down' means exponents above hi
    vanish and coefficients are exact down to lo (expansion at infinity);
    'up' is the mirror image (expansion at zero); 'exact' means the stored
    support is the whole series and [lo, hi] just bounds it.
    Coefficients may be Fractions, MultiPolys or CorrelatorValues.
    """

    __slots__ = ("variables", "coeffs", "windows")

    def __init__(self, variables, coeffs, windows):
        self.variables = tuple(variables)
        self.windows = dict(windows)
        self.coeffs = {}
        for e, c in coeffs.items():
            e = tuple(e) if not isinstance(e, int) else (e,)
            if _nonzero(c) and self._inside(e):
                self.coeffs[e] = c

    def _inside(self, e):
        return all(self.windows[v][0] <= k <= self.windows[v][1] for v, k in zip(self.variables, e))

    def __getitem__(self, e):
        e = (e,) if isinstance(e, int) else tuple(e)
        for v, k in zip(self.variables, e):
            lo, hi, kind = self.windows[v]
            if (kind == "down" and k < lo) or (kind == "up" and k > hi):
                raise InsufficientOrder(f"exponent {k} of {v} outside guaranteed window [{lo},{hi}]")
        return self.coeffs.get(e, 0)

    def guaranteed(self, e) -> bool:
        try:
            self[e]
        except InsufficientOrder:
            return False
        return True

    def __add__(self, other):
        _same_vars(self, other)
        windows = {}
        for v in self.variables:
            windows[v] = _add_window(self.windows[v], other.windows[v])
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return TruncatedSeries(self.variables, out, windows)

    def scale(self, c):
        return TruncatedSeries(self.variables, {e: c * x for e, x in self.coeffs.items()}, self.windows)

    def __repr__(self):
        return f"TruncatedSeries({self.variables}, {len(self.coeffs)} terms, {self.windows})"


def _nonzero(c):
    if isinstance(c, (int, Fraction)):
        return c != 0
    if isinstance(c, MultiPoly):
        return not c.is_zero()
    if isinstance(c, CorrelatorValue):
        return not c.numerator.is_zero()
    return bool(c)


def _same_vars(a, b):
    if a.variables != b.variables:
        raise ValueError(f"incompatible variable lists {a.variables} vs {b.variables}")


def _add_window(w1, w2):
    lo1, hi1, k1 = w1
    lo2, hi2, k2 = w2
    if k1 == "exact" and k2 == "exact":
        return (min(lo1, lo2), max(hi1, hi2), "exact")
    kinds = {k for k in (k1, k2) if k != "exact"}
    if len(kinds) > 1:
        raise InsufficientOrder("cannot add series truncated in opposite directions")
    kind = kinds.pop()
    if kind == "down":
        return (max(lo1 if k1 != "exact" else lo2, lo2 if k2 != "exact" else lo1), max(hi1, hi2), "down")
    return (min(lo1, lo2), min(hi1 if k1 != "exact" else hi2, hi2 if k2 != "exact" else hi1), "up")


def _mul_window(w1, w2):
    lo1, hi1, k1 = w1
    lo2, hi2, k2 = w2
    if k1 == "exact" and k2 == "exact":
        return (lo1 + lo2, hi1 + hi2, "exact")
    kinds = {k for k in (k1, k2) if k != "exact"}
    if len(kinds) > 1:
        raise InsufficientOrder("product of series truncated in opposite directions")
    if kinds.pop() == "down":
        # exact for exponents >= both lo_i + hi_j
        return (max(lo1 + hi2, lo2 + hi1), hi1 + hi2, "down")
    return (lo1 + lo2, min(hi1 + lo2, hi2 + lo1), "up")


def series_mul(a: TruncatedSeries, b: TruncatedSeries, window=None) -> TruncatedSeries:
    """Product with pessimistic window bookkeeping.

    ``window`` optionally clips the result further: a dict var -> (lo, hi).
    """
    _same_vars(a, b)
    windows = {v: _mul_window(a.windows[v], b.windows[v]) for v in a.variables}
    if window:
        for v, (lo, hi) in window.items():
            wlo, whi, kind = windows[v]
            nlo, nhi = max(wlo, lo), min(whi, hi)
            if nhi < nlo:
                nhi = nlo if kind != "up" else nhi
                nlo = min(nlo, nhi)
            windows[v] = (nlo, nhi, kind)
    out = {}
    for e1, c1 in a.coeffs.items():
        for e2, c2 in b.coeffs.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            t = c1 * c2
            out[e] = out[e] + t if e in out else t
    return TruncatedSeries(a.variables, out, windows)


def pair_coefficient(power: int, m: int, b_large: bool) -> int:
    """Coefficient of the m-th term of 1/(x_a - x_b)^power in the given region."""
    c = comb(m + power - 1, power - 1)
    return (-1) ** power * c if b_large else c


def geometric_pair_expand(a_index: int, b_index: int, power: int, region: str, terms: int,
                          variables=None, sites=None) -> TruncatedSeries:
    """Expand 1/(x_a - x_b)^power, keeping ``terms`` terms.

    region 'a_large' gives sum_m C(m+p-1,p-1) x_b^m x_a^(-m-p); 'b_large'
    the mirror with sign (-1)^p.  ``sites`` maps indices to 'inf' / 'zero';
    a variable expanded at zero cannot be the large one against a variable
    at infinity.
    """
    if a_index == b_index:
        raise ValueError("a_index and b_index must differ")
    if power < 1:
        raise ValueError("power must be positive")
    if region not in ("a_large", "b_large", "a_small_b_large", "b_small_a_large"):
        raise ValueError(f"unknown region {region!r}")
    b_large = region in ("b_large", "a_small_b_large")
    if sites:
        big, small = (b_index, a_index) if b_large else (a_index, b_index)
        if sites.get(big) == "zero" and sites.get(small) == "inf":
            raise ValueError("region puts a variable at zero above one at infinity")
    if variables is None:
        variables = tuple(f"x{i}" for i in sorted({a_index, b_index}))
    names = {a_index: f"x{a_index}", b_index: f"x{b_index}"}
    large, small = (names[b_index], names[a_index]) if b_large else (names[a_index], names[b_index])
    coeffs = {}
    pos = {v: i for i, v in enumerate(variables)}
    for m in range(terms):
        e = [0] * len(variables)
        e[pos[large]] = -m - power
        e[pos[small]] = m
        coeffs[tuple(e)] = pair_coefficient(power, m, b_large)
    windows = {v: (0, 0, "exact") for v in variables}
    windows[large] = (-power - terms + 1, -power, "down")
    windows[small] = (0, terms - 1, "up")
    return TruncatedSeries(variables, coeffs, windows)
