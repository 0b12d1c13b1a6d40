"""Truncated power series in t with coefficients in Q[x, theta].

``x`` stands for the class of O(1) on a symmetric product C^d and ``theta``
for the pulled-back theta divisor. Everything is exact; coefficients are
``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import DomainError


def binomial(n: int, k: int) -> int:
    """Generalised binomial n(n-1)...(n-k+1)/k! for any integer n."""
    if k < 0:
        raise DomainError(f"binomial needs k >= 0, got k = {k}")
    num = 1
    for i in range(k):
        num *= n - i
    return num // factorial(k)


class BiPoly:
    """Polynomial in x and theta with rational coefficients.

    Stored as ``{(i, j): c}`` for c * x^i * theta^j with no zero entries.
    Instances are treated as immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[(int(key[0]), int(key[1]))] = c
        self._terms = clean

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "BiPoly":
        return cls({(i, j): c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def constant_term(self) -> Fraction:
        return self._terms.get((0, 0), Fraction(0))

    def degrees(self) -> set:
        return {i + j for i, j in self._terms}

    def is_homogeneous(self, m: int) -> bool:
        return self.degrees() <= {m}

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiPoly.const(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiPoly.const(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiPoly({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, BiPoly):
            return NotImplemented
        out = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __repr__(self):
        return f"BiPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in self.items():
            mono = []
            if i:
                mono.append("x" if i == 1 else f"x^{i}")
            if j:
                mono.append("th" if j == 1 else f"th^{j}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(mono))
            elif c == -1:
                parts.append("-" + "*".join(mono))
            else:
                parts.append(f"{c}*" + "*".join(mono))
        return " + ".join(parts).replace("+ -", "- ")


ZERO = BiPoly()
ONE = BiPoly.const(1)
X = BiPoly.monomial(1, 0)
THETA = BiPoly.monomial(0, 1)


class TruncatedSeries:
    """sum_{m=0}^{order} coeffs[m] t^m, coefficients in Q[x, theta]."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int | None = None):
        coeffs = [c if isinstance(c, BiPoly) else BiPoly.const(c) for c in coeffs]
        if order is None:
            order = max(len(coeffs) - 1, 0)
        if order < 0:
            raise DomainError("truncation order must be non-negative")
        coeffs = coeffs[:order + 1]
        coeffs += [ZERO] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([ONE], order)

    @classmethod
    def linear(cls, c: BiPoly, order: int) -> "TruncatedSeries":
        """The series t*c."""
        return cls([ZERO, c], order)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, order)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], n)

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, BiPoly)):
            return TruncatedSeries([c * other for c in self.coeffs], self.order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __repr__(self):
        return f"TruncatedSeries({self}, order={self.order})"

    def __str__(self):
        parts = []
        for m, c in enumerate(self.coeffs):
            if not c:
                continue
            parts.append(f"({c})" if m == 0 else f"({c})*t^{m}")
        return " + ".join(parts) or "0"

    def is_graded(self) -> bool:
        """Whether the t^m coefficient is homogeneous of degree m for every m."""
        return all(c.is_homogeneous(m) for m, c in enumerate(self.coeffs))


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated at the smaller of the two orders."""
    n = min(a.order, b.order)
    out = []
    for m in range(n + 1):
        acc = ZERO
        for k in range(m + 1):
            if a.coeffs[k] and b.coeffs[m - k]:
                acc = acc + a.coeffs[k] * b.coeffs[m - k]
        out.append(acc)
    return TruncatedSeries(out, n)


def _as_increment(c, order: int) -> TruncatedSeries:
    # BiPoly c means the series t*c
    if isinstance(c, BiPoly):
        return TruncatedSeries.linear(c, order)
    if c.coeffs[0]:
        raise DomainError("argument must have zero constant term")
    return c.truncate(min(order, c.order))


def _power_sum(inc: TruncatedSeries, weights) -> TruncatedSeries:
    """sum_k weights[k] * inc^k."""
    total = TruncatedSeries.one(inc.order) * weights[0]
    power = TruncatedSeries.one(inc.order)
    for w in weights[1:]:
        power = mul(power, inc)
        if w:
            total = total + power * w
    return total


def binom_pow(c, a: int, order: int) -> TruncatedSeries:
    """(1 + t*c)^a for any integer a, by the generalised binomial series.

    ``c`` may also be a series with zero constant term, giving (1 + c)^a.
    """
    inc = _as_increment(c, order)
    return _power_sum(inc, [binomial(a, k) for k in range(inc.order + 1)])


def exp_series(c, order: int) -> TruncatedSeries:
    """exp(t*c), or exp(c) for a series c with zero constant term."""
    inc = _as_increment(c, order)
    return _power_sum(inc, [Fraction(1, factorial(k)) for k in range(inc.order + 1)])


def compose(f: TruncatedSeries, u: TruncatedSeries) -> TruncatedSeries:
    """f(u) for a series u with zero constant term."""
    inc = _as_increment(u, min(f.order, u.order))
    return _power_sum(inc, list(f.coeffs[:inc.order + 1]))


def coeff_t(s: TruncatedSeries, m: int) -> BiPoly:
    if m < 0 or m > s.order:
        raise DomainError(f"t^{m} lies beyond truncation order {s.order}")
    return s.coeffs[m]


def eval_symmetric_product(p: BiPoly, d: int, g: int) -> Fraction:
    """Cap ``p`` with the fundamental class of C^d, C of genus g.

    Uses theta^j x^(d-j) . [C^d] = j! * binomial(g, j); monomials of total
    degree other than d integrate to zero.
    """
    total = Fraction(0)
    for (i, j), c in p.items():
        if i + j == d:
            total += c * factorial(j) * binomial(g, j)
    return total


def substitute_acgh(f: TruncatedSeries, a: int, b: int) -> tuple[BiPoly, BiPoly]:
    """Both sides of the substitution identity for formal series.

    lhs = [(1 + x t)^a f(-t / (1 + x t))]_{t^b}
    rhs = [(1 - x t)^(b - a - 1) f(-t)]_{t^b}
    """
    if b < 0:
        raise DomainError("coefficient index b must be non-negative")
    if f.order < b:
        raise DomainError(f"series truncated at {f.order} < b = {b}")
    f = f.truncate(b)
    shift = binom_pow(X, -1, b) * BiPoly.const(-1)
    u = mul(TruncatedSeries.linear(ONE, b), shift)  # -t/(1+xt)
    lhs = mul(binom_pow(X, a, b), compose(f, u))
    f_neg = TruncatedSeries([c * (-1) ** m for m, c in enumerate(f.coeffs)], b)
    rhs = mul(binom_pow(-X, b - a - 1, b), f_neg)
    return coeff_t(lhs, b), coeff_t(rhs, b)
