"""Candidate basic classes of shape lambda*K_min + sum(+-E_i), the canonical
divisor splitting K = D_+ + D_-, and the (-1)-sphere equation.

The lists produced here are *candidates*: classes whose square equals K_X^2
and which have the shape forced by the degree inequality. For kappa = 1
which values of lambda really occur depends on fibre data not modelled here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .errors import DomainError
from .lattice import (
    IntersectionLattice,
    _require_hyperbolic,
    add,
    as_vector,
    is_characteristic,
    is_integral,
    pair,
    scale,
    sub,
)
from .surface import SurfaceInvariants, kodaira_dimension


@dataclass(frozen=True)
class BasicClassCandidate:
    lam: Fraction
    signs: tuple
    vector: tuple
    square: int
    characteristic: bool


def lattice_divisibility(v) -> int:
    """Largest n with v/n integral (0 for the zero vector)."""
    if not is_integral(v):
        raise DomainError("divisibility is defined for integral vectors")
    out = 0
    for c in v:
        out = gcd(out, int(c))
    return out


def _check_exceptionals(lat, kmin, exceptionals):
    for i, e in enumerate(exceptionals):
        if len(e) != lat.rank:
            raise DomainError(f"E{i + 1} has wrong length")
        if pair(lat, e, e) != -1:
            raise DomainError(f"E{i + 1} is not a (-1)-class")
        if pair(lat, e, kmin) != 0:
            raise DomainError(f"E{i + 1} is not orthogonal to K_min")
        for j in range(i):
            if pair(lat, e, exceptionals[j]) != 0:
                raise DomainError(f"E{j + 1} and E{i + 1} are not orthogonal")


def _lambdas(kappa, kmin):
    if kappa == 2:
        return [Fraction(-1), Fraction(1)]
    if kappa == 0:
        return [Fraction(0)]
    div = lattice_divisibility(kmin)
    return [Fraction(k, div) for k in range(-div, div + 1)]


def enumerate_candidates(
    inv: SurfaceInvariants,
    lat: IntersectionLattice,
    kmin,
    exceptionals,
) -> list[BasicClassCandidate]:
    """Characteristic classes lambda*K_min + sum(+-E_i) of square K_X^2.

    lambda = +-1 for general type, lambda = 0 for kappa = 0, and for
    kappa = 1 every k/div(K_min) with |k| <= div that gives a
    characteristic vector. Sorted by coordinates.
    """
    kappa = kodaira_dimension(inv)
    kmin = as_vector(kmin)
    exceptionals = [as_vector(e) for e in exceptionals]
    if len(kmin) != lat.rank:
        raise DomainError("K_min has wrong length")
    if len(exceptionals) != inv.n_exceptional:
        raise DomainError(
            f"expected {inv.n_exceptional} exceptional classes, got {len(exceptionals)}"
        )
    if pair(lat, kmin, kmin) != inv.kmin_sq:
        raise DomainError("K_min.K_min differs from kmin_sq")
    if kappa == 0 and any(kmin):
        raise DomainError("kappa = 0 needs K_min = 0 modulo torsion")
    _check_exceptionals(lat, kmin, exceptionals)

    target = inv.k_sq
    out = []
    for lam in _lambdas(kappa, kmin):
        base = scale(lam, kmin)
        for signs in product((1, -1), repeat=len(exceptionals)):
            v = base
            for s, e in zip(signs, exceptionals):
                v = add(v, scale(s, e))
            if not is_integral(v) or not is_characteristic(lat, v):
                continue
            sq = pair(lat, v, v)
            if sq != target:
                continue
            out.append(BasicClassCandidate(lam, signs, v, sq, True))
    out.sort(key=lambda c: c.vector)
    return out


def decompose_canonical(K, L) -> tuple[tuple, tuple]:
    """The unique D_+, D_- with D_+ + D_- = K and D_+ - D_- = L."""
    K, L = as_vector(K), as_vector(L)
    half = Fraction(1, 2)
    d_plus = scale(half, add(K, L))
    d_minus = scale(half, sub(K, L))
    assert add(d_plus, d_minus) == K and sub(d_plus, d_minus) == L
    return d_plus, d_minus


def connectedness_defect(lat: IntersectionLattice, K, L, phi):
    """D_+ . D_- for the splitting of K along L; equals (K^2 - L^2)/4."""
    _require_hyperbolic(lat)
    if pair(lat, phi, phi) <= 0:
        raise DomainError("reference class phi is not timelike")
    if pair(lat, K, K) < 0 or pair(lat, K, phi) < 0:
        raise DomainError("K is not nef (needs K^2 >= 0 and K.phi >= 0)")
    d_plus, d_minus = decompose_canonical(K, L)
    defect = pair(lat, d_plus, d_minus)
    assert 4 * defect == pair(lat, K, K) - pair(lat, L, L)
    return defect


def minus_one_sphere_solutions(kmin_sq: int, n_max: int, divisibility: int = 1):
    """Solutions (lambda, N) of e^2 = -1 for e = (1-lambda)/2 K_min + E_1 + ... + E_N.

    lambda runs over 1 - 2k/divisibility, 0 <= k <= divisibility, i.e. the
    values with |lambda| <= 1 making (1-lambda)/2 K_min integral.
    """
    if kmin_sq < 0:
        raise DomainError("K_min^2 must be non-negative")
    if divisibility < 1:
        raise DomainError("divisibility must be positive")
    out = []
    for k in range(divisibility + 1):
        lam = 1 - Fraction(2 * k, divisibility)
        n = Fraction(k, divisibility) ** 2 * kmin_sq + 1
        if n.denominator == 1 and 1 <= n <= n_max:
            out.append((lam, n.numerator))
    return out


def _reflection_consistent(lam, n, mu, m, kmin_zero):
    # R_{E_1} e = (1-lam)/2 K - E_1 + E_2 + ... + E_N must equal
    # +-((1-mu)/2 K + E_{i_1} + ... + E_{i_M}); compare coefficients.
    lhs_e = [-1] + [1] * (n - 1)
    for sign in (1, -1):
        # E-coefficients on the right are all `sign`, on M distinct curves
        if any(c != sign for c in lhs_e) or m != n:
            continue
        if kmin_zero or (1 - lam) == sign * (1 - mu):
            return True
    return False


def solve_minus_one_sphere(kmin_sq: int, n_max: int, divisibility: int = 1, kmin_zero=False):
    """(-1)-sphere solutions surviving the reflection in E_1.

    A (-1)-sphere e reflected in E_1 is again a (-1)-sphere, so it must have
    the same shape up to sign. Only lambda = 1, N = 1 (e = E_1) survives.
    Pass ``kmin_zero=True`` when K_min is torsion: then lambda multiplies
    the zero class, all values describe e = E_1, and they collapse to
    lambda = 1.
    """
    if kmin_zero and kmin_sq:
        raise DomainError("K_min = 0 forces K_min^2 = 0")
    raw = minus_one_sphere_solutions(kmin_sq, n_max, divisibility)
    survivors = []
    for lam, n in raw:
        if any(_reflection_consistent(lam, n, mu, m, kmin_zero) for mu, m in raw):
            survivors.append((Fraction(1) if kmin_zero else lam, n))
    return sorted(set(survivors))
