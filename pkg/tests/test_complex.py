import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdmatch.complex import (
    ComplexError,
    ScalarFiltration,
    VectorFiltration,
    build_complex,
    precedes,
    simplex_value,
    sublevel,
)
from mdmatch.foliation import SUM_ONE, UNIT_NORM, reduce_function
from mdmatch.random_inputs import random_filtration, random_pair, small_complex


def test_build_closes_faces():
    K = build_complex([[0, 1, 2]])
    assert K.counts() == [3, 3, 1]
    assert (0, 2) in K and (1, 2) in K


def test_build_isolated_vertices():
    K = build_complex([[0], [1]])
    assert K.counts() == [2]
    assert K.vertices == (0, 1)


def test_build_deduplicates():
    K = build_complex([[1, 0], [0, 1], [0]])
    assert K.simplices == ((0,), (1,), (0, 1))


@pytest.mark.parametrize("bad", [[[0, 0, 1]], [], [[]], [[-1, 2]]])
def test_build_rejects(bad):
    with pytest.raises(ComplexError):
        build_complex(bad)


def test_build_warns_above_max_dimension(caplog):
    build_complex([[0, 1, 2, 3, 4]])
    assert "untested" in caplog.text


def test_simplex_value_examples():
    K = build_complex([[0, 1, 2]])
    phi = VectorFiltration(((0, 0), (1, 0), (0, 1)))
    assert simplex_value(K, phi, (0,)) == (0, 0)
    assert simplex_value(K, phi, (0, 1, 2)) == (1, 1)
    K2 = build_complex([[0, 1]])
    psi = VectorFiltration(((0, 5), (1, 2)))
    assert simplex_value(K2, psi, (1, 0)) == (1, 5)
    assert simplex_value(K2, VectorFiltration(((2, 3), (0, 0))), (0,)) == (2, 3)


def test_simplex_value_requires_membership():
    K = build_complex([[0, 1], [2]])
    phi = VectorFiltration(((0,), (0,), (0,)))
    with pytest.raises(ComplexError):
        simplex_value(K, phi, (0, 2))


def test_sublevel_examples():
    K = build_complex([[0, 1]])
    phi = VectorFiltration(((0, 0), (1, 0)))
    assert sublevel(K, phi, (Fraction(1, 2), Fraction(1, 2))).simplices == ((0,),)
    assert len(sublevel(K, phi, (-1, 5))) == 0
    assert sublevel(K, phi, (1, 0)).simplices == K.simplices


def test_filtration_validation():
    with pytest.raises(ComplexError):
        VectorFiltration(((0, 1), (2,)))
    with pytest.raises(ComplexError):
        VectorFiltration(((float("nan"),),))
    K = build_complex([[0, 1]])
    with pytest.raises(ComplexError):
        ScalarFiltration(K, (0, 2, 1))  # edge below a vertex


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_sublevel_monotone_and_full(seed):
    rng = random.Random(seed)
    K = small_complex(rng)
    phi = random_filtration(rng, K, 2)
    u = tuple(Fraction(rng.randint(0, 40), 4) for _ in range(2))
    v = tuple(x + Fraction(rng.randint(0, 20), 4) for x in u)
    Ku, Kv = set(sublevel(K, phi, u)), set(sublevel(K, phi, v))
    assert Ku <= Kv
    # full subcomplex on the vertices below u
    alive = {x for x in K.vertices if precedes(phi.values[x], u)}
    assert Ku == {s for s in K.simplices if set(s) <= alive}
    # every simplex in it has value below u
    assert all(precedes(simplex_value(K, phi, s), u) for s in Ku)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([SUM_ONE, UNIT_NORM]))
def test_sublevel_matches_reduced_filtration(seed, scheme):
    rng = random.Random(seed)
    K = small_complex(rng)
    phi = random_filtration(rng, K, rng.choice([2, 3]))
    pair = random_pair(rng, scheme, phi.n)
    F = reduce_function(K, phi, pair)
    for _ in range(5):
        s = Fraction(rng.randint(-80, 80), 4)
        vector_side = set(sublevel(K, phi, pair.point(s)))
        scalar_side = {x for x, val in zip(K.simplices, F.values) if val <= s}
        if scheme is SUM_ONE:
            assert vector_side == scalar_side
        else:
            # float leaves: compare away from ties with the threshold
            if all(abs(val - s) > 1e-9 for val in F.values):
                assert vector_side == scalar_side
