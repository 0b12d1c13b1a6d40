"""Exact arithmetic in the intersection lattice of a (blown-up) surface.

Vectors are plain tuples of ``int`` or ``Fraction`` coordinates with respect
to the lattice basis; the lattice itself only carries the Gram matrix.
Torsion is not represented.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .errors import DomainError, MalformedInput

Vector = tuple  # tuple of int | Fraction


def as_vector(v: Sequence) -> Vector:
    out = []
    for c in v:
        if isinstance(c, bool) or not isinstance(c, Rational):
            raise MalformedInput(f"non-rational coordinate {c!r}")
        c = Fraction(c)
        out.append(c.numerator if c.denominator == 1 else c)
    return tuple(out)


def is_integral(v: Sequence) -> bool:
    return all(Fraction(c).denominator == 1 for c in v)


@dataclass(frozen=True)
class IntersectionLattice:
    """Integral symmetric bilinear form on Z^rank.

    ``surface`` flags lattices that model H^2 of a Kähler surface; for those
    the constructor also checks b_+ >= 1.
    """

    gram: tuple
    labels: tuple = ()
    surface: bool = field(default=False, compare=False)

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(gram)
        if n == 0:
            raise DomainError("lattice rank must be positive")
        for row in gram:
            if len(row) != n:
                raise DomainError("gram matrix is not square")
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise DomainError(f"gram matrix not symmetric at ({i},{j})")
        labels = tuple(self.labels) or tuple(f"e{i + 1}" for i in range(n))
        if len(labels) != n:
            raise DomainError("number of labels differs from rank")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "labels", labels)
        if self.surface and signature(self)[0] < 1:
            raise DomainError("surface lattice needs b_+ >= 1")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @classmethod
    def diagonal(cls, entries, labels=(), surface=False):
        n = len(entries)
        gram = [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls(gram, labels, surface)

    def basis(self, i: int) -> Vector:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def zero(self) -> Vector:
        return (0,) * self.rank

    def square(self, v) -> Fraction | int:
        return pair(self, v, v)

    def direct_sum(self, other: "IntersectionLattice") -> "IntersectionLattice":
        n, m = self.rank, other.rank
        gram = [list(row) + [0] * m for row in self.gram]
        gram += [[0] * n + list(row) for row in other.gram]
        return IntersectionLattice(gram, self.labels + other.labels, self.surface)

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "gram": [x for row in self.gram for x in row],
            "labels": list(self.labels),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "IntersectionLattice":
        try:
            rank = data["rank"]
            flat = data["gram"]
            labels = data.get("labels", ())
        except (KeyError, TypeError, AttributeError) as exc:
            raise MalformedInput(f"lattice record missing field: {exc}") from None
        if not isinstance(rank, int) or isinstance(rank, bool) or rank <= 0:
            raise MalformedInput("lattice rank must be a positive integer")
        if not isinstance(flat, list) or len(flat) != rank * rank:
            raise MalformedInput("gram must be a row-major list of rank*rank integers")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in flat):
            raise MalformedInput("gram entries must be integers")
        gram = [flat[i * rank:(i + 1) * rank] for i in range(rank)]
        return cls(gram, tuple(labels))

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "IntersectionLattice":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInput(str(exc)) from None
        return cls.from_dict(data)


@dataclass(frozen=True)
class ChamberPoint:
    """A period point together with a perturbation class."""

    omega: Vector
    epsilon: Vector

    def __post_init__(self):
        object.__setattr__(self, "omega", as_vector(self.omega))
        object.__setattr__(self, "epsilon", as_vector(self.epsilon))


def _check_dim(lat, *vs):
    for v in vs:
        if len(v) != lat.rank:
            raise DomainError(
                f"dimension mismatch: vector of length {len(v)} in rank {lat.rank} lattice"
            )


def pair(lat: IntersectionLattice, u, v):
    """Return u^T G v exactly."""
    _check_dim(lat, u, v)
    total = 0
    for i, ui in enumerate(u):
        if not ui:
            continue
        row = lat.gram[i]
        total += ui * sum(row[j] * vj for j, vj in enumerate(v) if vj)
    return _normalize(total)


def _normalize(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def add(u, v) -> Vector:
    return tuple(_normalize(a + b) for a, b in zip(u, v, strict=True))


def sub(u, v) -> Vector:
    return tuple(_normalize(a - b) for a, b in zip(u, v, strict=True))


def scale(c, v) -> Vector:
    return tuple(_normalize(c * a) for a in v)


def reflect_sphere(lat: IntersectionLattice, v, s) -> Vector:
    """Reflect ``v`` in the hyperplane orthogonal to a (-1)- or (-2)-class ``s``.

    For s.s = -1 this is v + 2(v.s)s and for s.s = -2 it is v + (v.s)s, so
    integral vectors stay integral.
    """
    ss = pair(lat, s, s)
    if ss not in (-1, -2):
        raise DomainError(f"reflection needs s.s in {{-1,-2}}, got s.s = {ss}")
    coef = Fraction(-2 * pair(lat, v, s), ss)
    return add(v, scale(coef, s))


def is_characteristic(lat: IntersectionLattice, v) -> bool:
    """True iff v.x = x.x (mod 2) for every basis vector x."""
    _check_dim(lat, v)
    if not is_integral(v):
        raise DomainError("characteristic test needs an integral vector")
    for i in range(lat.rank):
        x = lat.basis(i)
        if (pair(lat, v, x) - lat.gram[i][i]) % 2:
            return False
    return True


def signature(lat: IntersectionLattice) -> tuple[int, int, int]:
    """(b_plus, b_minus, null) via exact congruence diagonalisation over Q."""
    a = [[Fraction(x) for x in row] for row in lat.gram]
    n = len(a)
    pos = neg = 0
    k = 0
    while k < n:
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                _swap(a, k, j)
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    # row k is zero: a null direction
                    k += 1
                    continue
                # e_k <- e_k + e_j makes the pivot 2 a_kj (a_jj = 0 here)
                for i in range(n):
                    a[k][i] += a[j][i]
                for i in range(n):
                    a[i][k] += a[i][j]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        # Schur complement
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
        for i in range(k + 1, n):
            a[i][k] = a[k][i] = Fraction(0)
        k += 1
    return pos, neg, n - pos - neg


def _swap(a, i, j):
    a[i], a[j] = a[j], a[i]
    for row in a:
        row[i], row[j] = row[j], row[i]


def discriminant(lat: IntersectionLattice, L, point: ChamberPoint):
    """(L - epsilon).omega; zero means the pair (omega, epsilon) is not admissible.

    The sign labels the chamber.
    """
    if pair(lat, point.omega, point.omega) <= 0:
        raise DomainError("period point must be timelike (omega.omega > 0)")
    return pair(lat, sub(L, point.epsilon), point.omega)


def chamber(lat: IntersectionLattice, L, point: ChamberPoint) -> int:
    """Sign of the discriminant: +1, -1, or 0 for a wall."""
    delta = discriminant(lat, L, point)
    return (delta > 0) - (delta < 0)


def _require_hyperbolic(lat):
    b_plus, _, null = signature(lat)
    if b_plus != 1 or null:
        raise DomainError("forward-cone test needs a nondegenerate lattice of signature (1,n)")


def same_forward_cone(lat: IntersectionLattice, u, v, phi) -> bool:
    """Whether timelike u and v lie in the same component of the positive cone.

    The component is told apart by the sign of the pairing with the timelike
    reference ``phi``. By the Hodge index theorem two classes in the same
    component pair positively; that is checked, not assumed.
    """
    _require_hyperbolic(lat)
    for name, w in (("u", u), ("v", v), ("phi", phi)):
        if pair(lat, w, w) <= 0:
            raise DomainError(f"{name} is not timelike")
    same = (pair(lat, u, phi) > 0) == (pair(lat, v, phi) > 0)
    if same:
        assert pair(lat, u, v) > 0, "Hodge index violated"
    return same
