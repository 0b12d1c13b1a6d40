"""Numerical invariants of Kähler surfaces and the quantities derived from them."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import DomainError, MalformedInput
from .lattice import IntersectionLattice, pair, sub

_FIELDS = ("p_g", "q", "kmin_sq", "kmin_torsion_order", "n_exceptional")


@dataclass(frozen=True)
class SurfaceInvariants:
    p_g: int
    q: int
    kmin_sq: int
    kmin_torsion_order: int = 0
    n_exceptional: int = 0

    def __post_init__(self):
        for name in _FIELDS:
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise MalformedInput(f"{name} must be an integer, got {value!r}")
        for name in ("p_g", "q", "kmin_torsion_order", "n_exceptional"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be non-negative")
        if self.kmin_torsion_order > 0 and self.kmin_sq != 0:
            raise DomainError("torsion K_min forces K_min^2 = 0")

    @property
    def chi(self) -> int:
        return 1 - self.q + self.p_g

    @property
    def k_sq(self) -> int:
        return self.kmin_sq - self.n_exceptional

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "SurfaceInvariants":
        if not isinstance(data, dict):
            raise MalformedInput("surface record must be a mapping")
        unknown = set(data) - set(_FIELDS)
        if unknown:
            raise MalformedInput(f"unknown surface fields: {sorted(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise MalformedInput(str(exc)) from None

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "SurfaceInvariants":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise MalformedInput(str(exc)) from None


@dataclass(frozen=True)
class DerivedInvariants:
    chi: int
    k_sq: int
    e: int
    sigma: int
    b1: int
    b2: int
    b_plus: int
    b_minus: int


def derive(inv: SurfaceInvariants) -> DerivedInvariants:
    """Euler number, signature and Betti numbers from (p_g, q, K^2).

    Uses Noether (e = 12 chi - K^2), sign = (K^2 - 2e)/3, b_+ = 2 p_g + 1, and
    checks that the results agree with one another.
    """
    chi = inv.chi
    k_sq = inv.k_sq
    e = 12 * chi - k_sq
    if (k_sq - 2 * e) % 3:
        raise DomainError("signature (K^2 - 2e)/3 is not an integer")
    sigma = (k_sq - 2 * e) // 3
    b1 = 2 * inv.q
    b2 = e - 2 + 2 * b1
    b_plus = 2 * inv.p_g + 1
    b_minus = b2 - b_plus
    if b_minus < 0:
        raise DomainError(f"b_- = b_2 - b_+ = {b_minus} is negative")
    if sigma != b_plus - b_minus:
        raise DomainError(f"sign = {sigma} differs from b_+ - b_- = {b_plus - b_minus}")
    if 2 * e + 3 * sigma != k_sq:
        raise DomainError("2e + 3 sign != K^2")
    return DerivedInvariants(chi, k_sq, e, sigma, b1, b2, b_plus, b_minus)


def kodaira_dimension(inv: SurfaceInvariants) -> int:
    """Kodaira dimension of a surface with kappa >= 0, read off from K_min."""
    if inv.kmin_sq < 0:
        raise DomainError("K_min^2 < 0: not the minimal model of a surface with kappa >= 0")
    if inv.kmin_sq > 0:
        return 2
    return 0 if inv.kmin_torsion_order > 0 else 1


def plurigenus(inv: SurfaceInvariants, n: int) -> int:
    """P_n = n(n-1)/2 * K_min^2 + chi for surfaces of general type, n >= 2."""
    if n < 2:
        raise DomainError("plurigenus formula needs n >= 2")
    if kodaira_dimension(inv) != 2:
        raise DomainError("plurigenus formula only holds for general type (K_min^2 > 0)")
    return n * (n - 1) // 2 * inv.kmin_sq + inv.chi


def vdim_real(inv: SurfaceInvariants, l_sq) -> Fraction | int:
    """Real virtual dimension (L^2 - (2e + 3 sign))/4 of the monopole moduli space."""
    dv = derive(inv)
    value = Fraction(l_sq - (2 * dv.e + 3 * dv.sigma), 4)
    return value.numerator if value.denominator == 1 else value


def vdim_twisting(lat: IntersectionLattice, twist, canonical):
    """Virtual dimension L.(L - K) for the twisting class L."""
    return pair(lat, twist, sub(twist, canonical))
