import itertools
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohesion_lab.game import GroupStructure, Status, all_partitions, is_blocking, is_socially_cohesive
from cohesion_lab.graph import (
    Graph,
    GraphError,
    complete_graph,
    enumerate_connected_graphs,
    is_connected,
    star_graph,
)
from cohesion_lab.heuristics import (
    AP,
    LM,
    average_payoff,
    ap_heuristic,
    evaluate_batch,
    heuristic_cohesion_test,
    improved_nodes,
    louvain,
    modularity,
)

from conftest import example_g1

TWO_TRIANGLES = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
BRIDGED = TWO_TRIANGLES.add_edge(2, 3)


def q_oracle(g, coalitions):
    """Modularity straight from the definition with Fractions."""
    m = g.num_edges
    q = Fraction(0)
    for c in coalitions:
        inner = sum(1 for u, v in itertools.combinations(c, 2) if g.has_edge(u, v))
        q += Fraction(inner, m) - Fraction(sum(g.degree(u) for u in c), 2 * m) ** 2
    return q


@st.composite
def connected_graphs(draw, min_n=2, max_n=9):
    n = draw(st.integers(min_n, max_n))
    # random spanning tree plus extra edges keeps the graph connected
    edges = {(draw(st.integers(0, i - 1)), i) for i in range(1, n)}
    pairs = list(itertools.combinations(range(n), 2))
    extra = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs))) if pairs else []
    return Graph.from_edges(n, edges | set(extra))


# -- modularity --------------------------------------------------------------------

def test_modularity_examples():
    assert modularity(BRIDGED, GroupStructure.grand(6)) == pytest.approx(0)
    assert modularity(TWO_TRIANGLES, GroupStructure.of(6, [[0, 1, 2], [3, 4, 5]])) == pytest.approx(0.5)
    assert modularity(complete_graph(2), GroupStructure.singletons(2)) == pytest.approx(-0.5)
    with pytest.raises(GraphError):
        modularity(Graph.from_edges(3, []), GroupStructure.grand(3))


@settings(max_examples=50)
@given(connected_graphs())
def test_modularity_matches_networkx(g):
    w = louvain(g)
    ref = nx.community.modularity(g.to_networkx(), [set(c) for c in w.coalitions])
    assert modularity(g, w) == pytest.approx(ref)
    assert modularity(g, w) == pytest.approx(float(q_oracle(g, w.coalitions)))


# -- Louvain -----------------------------------------------------------------------

def test_louvain_bridged_triangles_is_the_modularity_optimum():
    best = max(all_partitions(range(6)), key=lambda p: q_oracle(BRIDGED, p))
    got = louvain(BRIDGED)
    assert got.canonical() == GroupStructure.of(6, best).canonical() == ((0, 1, 2), (3, 4, 5))


@pytest.mark.parametrize("n", range(2, 9))
def test_louvain_complete_graph_single_community(n):
    assert len(louvain(complete_graph(n))) == 1


def test_louvain_karate_four_communities():
    g = Graph.from_networkx(nx.karate_club_graph())
    assert len(louvain(g)) == 4


def test_louvain_deterministic():
    g = Graph.from_networkx(nx.karate_club_graph())
    assert louvain(g, seed=5).canonical() == louvain(g, seed=5).canonical()
    assert louvain(g).canonical() == louvain(g).canonical()


@settings(max_examples=80, deadline=None)
@given(connected_graphs(), st.one_of(st.none(), st.integers(0, 100)))
def test_louvain_properties(g, seed):
    w = louvain(g, seed)
    assert sorted(u for c in w.coalitions for u in c) == list(range(g.n))
    assert all(is_connected(g, c) for c in w.coalitions)
    if g.num_edges:
        q = modularity(g, w)
        assert q >= modularity(g, GroupStructure.grand(g.n)) - 1e-12
        assert q >= modularity(g, GroupStructure.singletons(g.n)) - 1e-12


# -- average payoff greedy ---------------------------------------------------------

def ap_reference(g):
    """The greedy rule spelled out with sets and Fractions."""
    left = set(range(g.n))
    out = []
    while left:
        best = None
        for w in sorted(left):
            s = ({w} | {v for v in range(g.n) if g.has_edge(w, v)}) & left
            nu = sum(Fraction(sum(1 for v in s if g.has_edge(u, v)), len(s)) for u in s) / len(s)
            if best is None or nu > best[0]:
                best = (nu, s)
        out.append(best[1])
        left -= best[1]
    return GroupStructure.of(g.n, out).canonical()


def test_average_payoff():
    assert average_payoff(complete_graph(4), 0b1111) == Fraction(3, 4)
    assert average_payoff(star_graph(4), 0b11111) == Fraction(8, 25)


def test_ap_examples():
    assert ap_heuristic(complete_graph(5)).canonical() == (tuple(range(5)),)
    assert ap_heuristic(Graph.from_edges(4, [])).canonical() == ((0,), (1,), (2,), (3,))
    # a centre-tail pair (nu = 1/2) beats the whole star (nu = 8/25)
    assert ap_heuristic(star_graph(4)).canonical() == ((0, 1), (2,), (3,), (4,))


@settings(max_examples=120)
@given(connected_graphs(min_n=1))
def test_ap_matches_reference(g):
    w = ap_heuristic(g)
    assert w.canonical() == ap_reference(g)
    assert len(w) <= g.n


# -- heuristic cohesion test -------------------------------------------------------

def test_heuristic_test_examples():
    g1 = example_g1()
    v = heuristic_cohesion_test(g1, LM)
    assert v.status is Status.NOT_COHESIVE
    assert v.certificate.blocking_set in ({0, 1, 2}, {3, 4, 5})
    assert v.certificate.verify(g1, GroupStructure.grand(6))
    for m in (LM, AP):
        assert heuristic_cohesion_test(complete_graph(5), m).status is Status.INCONCLUSIVE
    v = heuristic_cohesion_test(BRIDGED, AP)
    assert v.status is Status.NOT_COHESIVE and is_blocking(BRIDGED, v.certificate.blocking_set,
                                                           GroupStructure.grand(6))


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
@pytest.mark.parametrize("method", [LM, AP])
def test_heuristic_sound(n, method):
    for g in enumerate_connected_graphs(n):
        v = heuristic_cohesion_test(g, method)
        if v.status is Status.NOT_COHESIVE:
            assert v.certificate.verify(g, GroupStructure.grand(n))
            assert not is_socially_cohesive(g).cohesive


def test_improved_nodes():
    g1 = example_g1()
    assert improved_nodes(g1, GroupStructure.of(6, [[0, 1, 2], [3, 4, 5]])) == 6
    assert improved_nodes(g1, GroupStructure.grand(6)) == 0


def test_evaluate_batch_on_complete_graphs():
    stats = evaluate_batch([complete_graph(n) for n in range(2, 7)], [LM, AP])
    for st_ in stats.values():
        assert (st_.s, st_.b, st_.c) == (5, 0, 5)
        assert st_.accuracy == 1.0 and st_.core_stable_rate == 1.0


def test_evaluate_batch_counts_match_direct_computation():
    graphs = enumerate_connected_graphs(5)
    stats = evaluate_batch(graphs, [LM, AP])
    c = sum(is_socially_cohesive(g).cohesive for g in graphs)
    for m in (LM, AP):
        b = sum(heuristic_cohesion_test(g, m).status is Status.NOT_COHESIVE for g in graphs)
        assert (stats[m].s, stats[m].b, stats[m].c) == (21, b, c)
        assert stats[m].accuracy * 21 == pytest.approx(b + c)
