"""Kähler elliptic surfaces: canonical divisibility, Seiberg-Witten
multiplicities of vertical twisting bundles, the blow-up formula, and
recovery of two multiple-fibre multiplicities from smooth invariants.

Orientation: signs are normalised so that the multiplicity for
(chi, g, d) = (1, 0, 0) is +1. A different orientation of H^+ changes
outputs by a global sign only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .errors import DomainError, MalformedInput
from .series import (
    THETA,
    X,
    TruncatedSeries,
    binom_pow,
    binomial,
    coeff_t,
    eval_symmetric_product,
    exp_series,
    mul,
)


def _nonneg_int(name, value):
    if not isinstance(value, int) or isinstance(value, bool):
        raise MalformedInput(f"{name} must be an integer, got {value!r}")
    if value < 0:
        raise DomainError(f"{name} must be non-negative")


@dataclass(frozen=True)
class EllipticSurface:
    """Elliptic fibration X -> C with C of genus ``g`` and multiple fibres."""

    g: int
    chi: int
    fibers: tuple = ()

    def __post_init__(self):
        _nonneg_int("g", self.g)
        _nonneg_int("chi", self.chi)
        fibers = tuple(self.fibers)
        for p in fibers:
            if not isinstance(p, int) or isinstance(p, bool):
                raise MalformedInput(f"fiber multiplicity must be an integer, got {p!r}")
            if p < 2:
                raise DomainError(f"multiple fibre needs multiplicity >= 2, got {p}")
        object.__setattr__(self, "fibers", fibers)

    def to_dict(self) -> dict:
        return {"g": self.g, "chi": self.chi, "fibers": list(self.fibers)}

    @classmethod
    def from_dict(cls, data: dict) -> "EllipticSurface":
        if not isinstance(data, dict):
            raise MalformedInput("elliptic surface record must be a mapping")
        try:
            return cls(data["g"], data["chi"], tuple(data.get("fibers", ())))
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"bad elliptic surface record: {exc}") from None

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "EllipticSurface":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise MalformedInput(str(exc)) from None

    def multiplicity(self, bundle: "VerticalBundle") -> int:
        if len(bundle.fiber_coeffs) != len(self.fibers):
            raise DomainError("one fibre coefficient per multiple fibre required")
        for a, p in zip(bundle.fiber_coeffs, self.fibers):
            if not 0 <= a < p:
                raise DomainError(f"fibre coefficient {a} outside 0 <= a < {p}")
        return sw_mult_closed(self.chi, self.g, bundle.base_degree)


@dataclass(frozen=True)
class VerticalBundle:
    """O(pi^* D + sum a_i F_i) with deg D = base_degree."""

    base_degree: int
    fiber_coeffs: tuple = ()


@dataclass(frozen=True)
class RecoveryInput:
    p_g: int
    gcd_pq: int
    d: int
    d2: int | None = field(default=None)

    def __post_init__(self):
        _nonneg_int("p_g", self.p_g)
        if not isinstance(self.gcd_pq, int) or self.gcd_pq < 1:
            raise DomainError("gcd(p,q) must be a positive integer")
        if self.d2 is not None:
            _nonneg_int("d2", self.d2)
            if self.d2 >= self.d:
                raise DomainError("second divisibility d2 must be smaller than d")


# (p_g, gcd, d) -> (p, q) for the surfaces whose only basic classes are +-K_X
EXCEPTIONAL_TABLE = {
    (0, 2, 0): (2, 2),
    (0, 1, 1): (2, 3),
    (0, 2, 1): (2, 4),
    (0, 1, 3): (2, 5),
    (0, 3, 1): (3, 3),
    (0, 1, 5): (3, 4),
    (1, 1, 0): (1, 1),
    (1, 1, 1): (1, 2),
}


def divisibility(p: int, q: int, p_g: int) -> int:
    """Oriented divisibility ((p_g+1)pq - p - q)/gcd(p,q) of K_X for X_{pq} over P^1."""
    if p < 1 or q < 1:
        raise DomainError("fibre multiplicities must be >= 1")
    num = (p_g + 1) * p * q - p - q
    g = gcd(p, q)
    assert num % g == 0, "numerator not divisible by gcd(p,q)"
    return num // g


def general_divisibility(surf: EllipticSurface) -> int:
    """Divisibility of K_X in units of the primitive vertical class F/lcm(p_i).

    K_X is numerically (2g - 2 + chi) F + sum (p_i - 1) F_i with F = p_i F_i.
    """
    unit = lcm(*surf.fibers) if surf.fibers else 1
    k = Fraction(2 * surf.g - 2 + surf.chi) + sum(Fraction(p - 1, p) for p in surf.fibers)
    value = k * unit
    if value.denominator != 1:
        raise DomainError(f"canonical class is not an integral multiple of the primitive class: {value}")
    return value.numerator


def sw_mult_closed(chi: int, g: int, d: int) -> int:
    """Seiberg-Witten multiplicity of a vertical bundle of base degree d, closed form."""
    if d < 0:
        return 0
    if chi + g - 2 >= 0:
        return (-1) ** d * binomial(chi + 2 * g - 2, d)
    return sum(
        (-1) ** j * binomial(1 - g - chi + d - j, d - j) * binomial(g, j)
        for j in range(d + 1)
    )


def _total_class(chi: int, g: int, d: int) -> TruncatedSeries:
    # c(Ind)^{-1} c(T C^d) = (1+tx)^{d+1-g-chi} exp(-t theta/(1+tx)), through t^d
    arg = mul(TruncatedSeries.linear(-THETA, d), binom_pow(X, -1, d))
    return mul(binom_pow(X, d + 1 - g - chi, d), exp_series(arg, d))


def sw_mult_series(chi: int, g: int, d: int) -> int:
    """Same multiplicity, computed from Chern classes on the symmetric product C^d."""
    if d < 0:
        raise DomainError("series route needs base degree d >= 0")
    total = _total_class(chi, g, d)
    assert total.is_graded()
    value = eval_symmetric_product(coeff_t(total, d), d, g)
    assert value.denominator == 1
    return value.numerator


def sw_mult_blowup(chi: int, g: int, d: int, a: int) -> int:
    """Multiplicity of L(aE) on the blow-up of the elliptic surface in a point.

    The total class gains a factor (1 + tx)^{a(a-1)/2}; the real target
    dimension for vertical L is -a(a-1), so only a in {0, 1} survive.
    """
    if a < 0:
        raise DomainError("blow-up twist a must be non-negative")
    if d < 0:
        return 0
    shift = a * (a - 1) // 2
    target_real = -a * (a - 1)
    if target_real < 0:
        return 0
    total = mul(binom_pow(X, shift, d), _total_class(chi, g, d))
    value = eval_symmetric_product(coeff_t(total, d), d, g)
    assert value.denominator == 1
    return value.numerator


def expected_divisibilities(p: int, q: int, p_g: int) -> tuple[int, int | None]:
    """Divisibility of K_X and of the runner-up basic class -K_X + 2F_q.

    The runner-up exists (stays on the -K_X side of 0) iff d*gcd(p,q) >= 2p.
    """
    d = divisibility(p, q, p_g)
    g = gcd(p, q)
    if d < 0 or d * g < 2 * p:
        return d, None
    return d, d - 2 * p // g


def recover_multiplicities(data: RecoveryInput) -> tuple[int, int]:
    """Recover (p, q) with p <= q from p_g, |pi_1| and the divisibility data."""
    if data.d < 0:
        raise DomainError("d < 0: the surface is rational, multiplicities not determined")
    if data.d2 is None:
        try:
            return EXCEPTIONAL_TABLE[(data.p_g, data.gcd_pq, data.d)]
        except KeyError:
            raise DomainError(
                f"no surface with p_g={data.p_g}, gcd={data.gcd_pq}, d={data.d} "
                "has only +-K_X as basic classes"
            ) from None
    num = data.gcd_pq * (data.d - data.d2)
    if num % 2:
        raise DomainError("gcd*(d - d2) must be even")
    p = num // 2
    den = (data.p_g + 1) * p - 1
    if den <= 0 or (data.d * data.gcd_pq + p) % den:
        raise DomainError("q = (d*gcd + p)/((p_g+1)p - 1) is not an integer")
    q = (data.d * data.gcd_pq + p) // den
    if not 2 <= p <= q:
        raise DomainError(f"recovered ({p},{q}) violates 2 <= p <= q")
    if gcd(p, q) != data.gcd_pq:
        raise DomainError(f"gcd({p},{q}) != {data.gcd_pq}")
    if expected_divisibilities(p, q, data.p_g) != (data.d, data.d2):
        raise DomainError(f"({p},{q}) does not reproduce d={data.d}, d2={data.d2}")
    return p, q
