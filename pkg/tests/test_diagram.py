import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import (
    CURVE_HEIGHTS,
    critical_nodes,
    five_minima_curve,
    hollow_triangle,
    oracle_rank,
    two_vertex_edge,
)
from mdmatch.complex import ScalarFiltration, lower_star
from mdmatch.diagram import (
    INF,
    DiagramError,
    PersistenceDiagram,
    default_epsilon,
    diagram_from_csv,
    diagram_from_pairs,
    diagram_from_rank,
    diagram_to_csv,
    multiplicity_infinity,
    multiplicity_proper,
    rank_from_diagram,
)
from mdmatch.homology import PersistencePairs, persistence_pairs, scalar_rank_oracle
from mdmatch.random_inputs import increasing_pl, random_diagram, random_filtration, small_complex


def edge_rank(u, v):
    return scalar_rank_oracle(two_vertex_edge(), 0, u, v)


def test_from_pairs_examples():
    assert diagram_from_pairs(PersistencePairs(0, (), ())).size() == 0
    D = diagram_from_pairs(PersistencePairs(0, ((0, 1), (0, 1)), (0,)))
    assert D.proper == ((0, 1, 2),) and D.essential == ((0, 1),)
    D = diagram_from_pairs(persistence_pairs(two_vertex_edge(), 0))
    assert D.proper == ((0, 1, 1),) and D.essential == ((0, 1),)


def test_multiplicity_examples():
    eps = Fraction(1, 10)
    assert multiplicity_proper(edge_rank, (0, 1), eps) == 1
    assert multiplicity_proper(edge_rank, (Fraction(1, 2), 1), eps) == 0
    assert multiplicity_proper(edge_rank, (2, 3), eps) == 0
    assert multiplicity_infinity(edge_rank, 0, eps) == 1
    assert multiplicity_infinity(edge_rank, -1, eps) == 0
    T = hollow_triangle()
    F = ScalarFiltration(T, (0,) * len(T))
    assert multiplicity_infinity(lambda a, b: scalar_rank_oracle(F, 1, a, b), 0, eps) == 1


def test_multiplicity_rejects_bad_epsilon():
    with pytest.raises(DiagramError):
        multiplicity_proper(edge_rank, (0, 1), Fraction(1, 2))
    with pytest.raises(DiagramError):
        multiplicity_proper(edge_rank, (0, 1), Fraction(1, 4), critical_values=[0, Fraction(1, 8), 1])
    with pytest.raises(DiagramError):
        multiplicity_infinity(edge_rank, 0, Fraction(1, 2), critical_values=[0, 5])


def test_rank_from_diagram_examples():
    assert rank_from_diagram(PersistenceDiagram(0), 0, 1) == 0
    D = PersistenceDiagram.from_points(0, [(0, INF), (0, 1)])
    assert rank_from_diagram(D, 0, Fraction(1, 2)) == 2
    assert rank_from_diagram(D, 0, Fraction(3, 2)) == 1
    with pytest.raises(DiagramError):
        rank_from_diagram(D, 1, 1)


def test_diagram_validation():
    with pytest.raises(DiagramError):
        PersistenceDiagram(0, ((1, 1, 1),))
    with pytest.raises(DiagramError):
        PersistenceDiagram(0, ((0, 1, 0),))
    with pytest.raises(DiagramError):
        PersistenceDiagram(0, (), ((INF, 1),))


def test_default_epsilon_separates_values():
    eps = default_epsilon([0, 1, Fraction(3, 2)])
    assert eps == Fraction(1, 8)
    assert isinstance(eps, Fraction)
    assert 1 / default_epsilon([0, 100]) > 100
    assert default_epsilon([0.0, 0.5]) == pytest.approx(0.125)


def test_five_minima_curve_diagram():
    K, phi = five_minima_curve()
    D = diagram_from_pairs(persistence_pairs(lower_star(K, phi.component(0)), 0))
    assert D.essential == ((0, 1),)
    assert D.proper == ((1, 4, 1), (Fraction(3, 2), 6, 1), (2, 5, 1), (3, 7, 1))
    assert rank_from_diagram(D, Fraction(17, 10), Fraction(11, 2)) == 2


def _triple(F, k):
    pairs = persistence_pairs(F, k)
    D = diagram_from_pairs(pairs)

    def rank(a, b):
        return oracle_rank(F, k, a, b)

    assert diagram_from_rank(rank, F.critical_values(), k) == D
    nodes = critical_nodes(F.values)
    for i, u in enumerate(nodes):
        for v in nodes[i + 1:]:
            assert rank_from_diagram(D, u, v) == rank(u, v)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([0, 1]))
def test_representation_triple_agreement(seed, k):
    rng = random.Random(seed)
    K = small_complex(rng, max_simplices=25)
    F = lower_star(K, random_filtration(rng, K, 1).component(0))
    _triple(F, k)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_increasing_map_moves_cornerpoints(seed):
    rng = random.Random(seed)
    K = small_complex(rng, max_simplices=25)
    vals = random_filtration(rng, K, 1).component(0)
    f = increasing_pl(rng)
    F, G = lower_star(K, vals), lower_star(K, [f(x) for x in vals])
    for k in (0, 1):
        D = diagram_from_pairs(persistence_pairs(F, k))
        assert diagram_from_pairs(persistence_pairs(G, k)) == D.map(f)
        nodes = critical_nodes(F.values)
        for i, u in enumerate(nodes):
            for v in nodes[i + 1:]:
                assert scalar_rank_oracle(G, k, f(u), f(v)) == scalar_rank_oracle(F, k, u, v)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.booleans())
def test_csv_round_trip(seed, exact):
    D = random_diagram(random.Random(seed), exact=exact, degree=seed % 3)
    # an empty diagram has no rows to carry its degree
    back = diagram_from_csv(diagram_to_csv(D), exact=exact, degree=D.degree)
    assert back == D


def test_csv_examples():
    text = diagram_to_csv(diagram_from_pairs(persistence_pairs(two_vertex_edge(), 0)))
    assert text.splitlines() == ["u,v,multiplicity,degree,kind", "0,1,1,0,proper", "0,inf,1,0,essential"]
    assert diagram_from_csv("u,v\n0,1\n0,1\n1/2,inf\n").proper == ((0, 1, 2),)
    with pytest.raises(DiagramError):
        diagram_from_csv("a,b\n1,2\n")
    with pytest.raises(DiagramError):
        diagram_from_csv("u,v\n0,x\n")
    with pytest.raises(DiagramError):
        diagram_from_csv("u,v,degree\n0,1,0\n0,1,1\n")
    assert diagram_from_csv("u,v,degree\n0,1,0\n0,2,1\n", degree=1).proper == ((0, 2, 1),)


def test_curve_heights_have_five_minima():
    h = CURVE_HEIGHTS
    minima = [i for i in range(len(h))
              if (i == 0 or h[i - 1] > h[i]) and (i == len(h) - 1 or h[i + 1] > h[i])]
    assert len(minima) == 5
