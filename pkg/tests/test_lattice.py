from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swkahler import DomainError, MalformedInput
from swkahler.lattice import (
    ChamberPoint,
    IntersectionLattice,
    chamber,
    discriminant,
    is_characteristic,
    pair,
    reflect_sphere,
    same_forward_cone,
    signature,
    sub,
)

from _oracles import conjugate, random_unimodular, signature_numpy, make_rng

HYP = IntersectionLattice([[0, 1], [1, 0]])
D11 = IntersectionLattice.diagonal([-1, -1])


def test_pair_examples():
    assert pair(IntersectionLattice.diagonal([-1]), (1,), (1,)) == -1
    assert pair(D11, (1, 0), (0, 1)) == 0
    assert pair(IntersectionLattice([[2, 1], [1, -2]]), (1, 1), (1, 0)) == 3


def test_pair_dimension_mismatch():
    with pytest.raises(DomainError):
        pair(D11, (1,), (1, 0))


def test_lattice_validation():
    with pytest.raises(DomainError):
        IntersectionLattice([[1, 2], [0, 1]])
    with pytest.raises(DomainError):
        IntersectionLattice([[1, 0]])
    with pytest.raises(DomainError):
        IntersectionLattice.diagonal([-1, -1], surface=True)
    assert IntersectionLattice.diagonal([1, -1], surface=True).rank == 2


def test_reflect_examples():
    e = IntersectionLattice.diagonal([-1])
    assert reflect_sphere(e, (1,), (1,)) == (-1,)
    assert reflect_sphere(D11, (0, 1), (1, 0)) == (0, 1)
    # kappa + E1 with kappa^2 = 0
    lat = IntersectionLattice.diagonal([0, -1])
    assert reflect_sphere(lat, (1, 1), (0, 1)) == (1, -1)


def test_reflect_minus_two():
    a1 = IntersectionLattice.diagonal([-1, -1])
    tau = (1, -1)
    assert reflect_sphere(a1, (1, 0), tau) == (0, 1)
    assert reflect_sphere(a1, (1, 1), tau) == (1, 1)


def test_reflect_rejects_other_squares():
    with pytest.raises(DomainError):
        reflect_sphere(HYP, (1, 0), (1, 1))
    with pytest.raises(DomainError):
        reflect_sphere(IntersectionLattice.diagonal([-3]), (1,), (1,))


def test_is_characteristic_examples():
    assert is_characteristic(D11, (1, 1))
    assert not is_characteristic(D11, (0, 1))
    assert is_characteristic(IntersectionLattice.diagonal([-1, -1, -1]), (1, 1, -1))
    assert is_characteristic(HYP, (0, 0))
    assert not is_characteristic(HYP, (1, 0))
    with pytest.raises(DomainError):
        is_characteristic(D11, (Fraction(1, 2), 1))


@pytest.mark.parametrize(
    "gram, expected",
    [
        ([[-1, 0], [0, -1]], (0, 2, 0)),
        ([[1, 0], [0, -1]], (1, 1, 0)),
        ([[0, 1], [1, 0]], (1, 1, 0)),
        ([[0, 0], [0, 0]], (0, 0, 2)),
        ([[0, 0, 1], [0, 0, 0], [1, 0, 0]], (1, 1, 1)),
    ],
)
def test_signature_examples(gram, expected):
    assert signature(IntersectionLattice(gram)) == expected
    assert signature_numpy(gram) == expected


small_sym = st.integers(1, 5).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n
    ).map(lambda m: [[m[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)])
)


@settings(max_examples=200, deadline=None)
@given(small_sym)
def test_signature_matches_eigenvalues(gram):
    sig = signature(IntersectionLattice(gram))
    assert sum(sig) == len(gram)
    assert sig == signature_numpy(gram)


@settings(max_examples=100, deadline=None)
@given(small_sym, st.integers(0, 10_000))
def test_signature_unimodular_invariance(gram, seed):
    p, _ = random_unimodular(len(gram), make_rng(seed))
    assert signature(IntersectionLattice(gram)) == signature(IntersectionLattice(conjugate(gram, p)))


def test_discriminant_examples():
    lat = IntersectionLattice.diagonal([1, -1])
    assert discriminant(lat, (5, 0), ChamberPoint((1, 0), (0, 0))) == 5
    assert discriminant(lat, (2, 1), ChamberPoint((1, 0), (2, 1))) == 0
    point = ChamberPoint((1, 1), (0, 1))
    assert discriminant(HYP, (2, 0), point) == 1
    assert chamber(HYP, (2, 0), point) == 1
    assert chamber(HYP, (0, 1), point) == 0


def test_discriminant_needs_timelike_omega():
    with pytest.raises(DomainError):
        discriminant(HYP, (1, 0), ChamberPoint((1, 0), (0, 0)))


def test_same_forward_cone_examples():
    assert same_forward_cone(HYP, (2, 1), (2, 1), (2, 1))
    assert same_forward_cone(HYP, (2, 1), (1, 2), (1, 1))
    assert pair(HYP, (2, 1), (1, 2)) == 5
    assert not same_forward_cone(HYP, (2, 1), (-1, -2), (1, 1))


def test_same_forward_cone_errors():
    with pytest.raises(DomainError):
        same_forward_cone(D11, (1, 0), (1, 0), (1, 0))
    with pytest.raises(DomainError):
        same_forward_cone(HYP, (1, 0), (1, 1), (1, 1))


def test_serialization_round_trip():
    lat = IntersectionLattice([[2, 1, 0], [1, -2, 0], [0, 0, -1]], ("k", "a", "E1"))
    text = lat.dumps()
    assert IntersectionLattice.loads(text) == lat
    assert IntersectionLattice.loads(text).labels == ("k", "a", "E1")
    assert lat.to_dict() == {"rank": 3, "gram": [2, 1, 0, 1, -2, 0, 0, 0, -1], "labels": ["k", "a", "E1"]}


@pytest.mark.parametrize(
    "text",
    ['{"rank": 2, "gram": [1, 0, 0]}', '{"gram": [1]}', "not json", '{"rank": 1, "gram": [1.5]}'],
)
def test_serialization_malformed(text):
    with pytest.raises(MalformedInput):
        IntersectionLattice.loads(text)


vec3 = st.tuples(*[st.integers(-6, 6)] * 3)


@settings(max_examples=200, deadline=None)
@given(vec3, vec3, st.sampled_from([(0, 0, 1), (0, 1, -1), (1, 1, 1)]))
def test_reflection_involution_isometry(u, v, s):
    # <1> + <-1> + <-1>: (0,0,1)^2 = -1, (0,1,-1)^2 = -2, (1,1,1)^2 = -1
    lat = IntersectionLattice.diagonal([1, -1, -1])
    ru, rv = reflect_sphere(lat, u, s), reflect_sphere(lat, v, s)
    assert reflect_sphere(lat, ru, s) == u
    assert pair(lat, ru, rv) == pair(lat, u, v)
    if is_characteristic(lat, u):
        assert is_characteristic(lat, ru)
        if pair(lat, s, s) == -2:
            assert pair(lat, u, s) % 2 == 0
            assert all(c % 2 == 0 for c in sub(ru, u))
