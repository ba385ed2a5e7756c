import itertools
import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohesion_lab.graph import (
    EdgeListParseError,
    Graph,
    GraphError,
    brute_force_canonical_code,
    canonical_code,
    clique_number,
    complete_bipartite,
    complete_graph,
    components,
    connected_subsets,
    cut_profile,
    cycle_graph,
    diameter,
    eccentricity,
    enumerate_connected_graphs,
    format_edge_list,
    from_mask,
    induced_degree,
    is_connected,
    largest_component,
    minimum_separators,
    parse_edge_list,
    path_graph,
    sample_random_graph,
    star_graph,
    to_mask,
)

from conftest import all_labelled_graphs


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, b in zip(pairs, bits) if b])


# -- representation and parsing ----------------------------------------------------

def test_graph_rejects_self_loop_and_range():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0b00))


def test_parse_path():
    g = parse_edge_list("0 1\n1 2")
    assert (g.n, g.num_edges) == (3, 2)
    assert g == path_graph(3)


def test_parse_duplicates_comments_labels():
    g = parse_edge_list("# header\n\na b\nb a\na b\n")
    assert (g.n, g.num_edges) == (2, 1)
    assert [g.label(0), g.label(1)] == ["a", "b"]


def test_parse_errors_carry_line_number():
    with pytest.raises(EdgeListParseError) as exc:
        parse_edge_list("0 1\n1 2 3\n")
    assert exc.value.lineno == 2
    with pytest.raises(EdgeListParseError):
        parse_edge_list("0 1\nx x\n")


def test_edge_list_round_trip(g1):
    again = parse_edge_list(format_edge_list(g1))
    def named(g):
        return {frozenset((g.label(u), g.label(v))) for u, v in g.edges()}
    assert named(again) == named(g1)


def test_karate_size_from_networkx():
    g = Graph.from_networkx(nx.karate_club_graph())
    assert (g.n, g.num_edges) == (34, 78)


# -- degrees and connectivity ------------------------------------------------------

def test_induced_degree_examples(g1):
    assert induced_degree(complete_graph(4), 0, range(4)) == 3
    assert induced_degree(complete_graph(4), 0, {0}) == 0
    assert induced_degree(g1, 0, {0, 1, 2}) == 2


def test_induced_degree_requires_membership():
    with pytest.raises(GraphError):
        induced_degree(path_graph(3), 0, {1, 2})


def test_example_graph_degrees_match_reference_popularity(g1):
    # p_V values 1/2, 1/3, 1/2, 1/2, 1/2, 1/3 for a..f
    assert [g1.degree(u) for u in range(6)] == [3, 2, 3, 3, 3, 2]


@given(graphs())
def test_induced_degree_bound(g):
    for u in range(g.n):
        for s in (set(range(g.n)), {u}, {v for v in range(g.n) if v <= u}):
            assert induced_degree(g, u, s) <= min(len(s) - 1, g.degree(u))


def test_is_connected_examples():
    p = path_graph(3)
    assert not is_connected(p, {0, 2})
    assert is_connected(p, {0, 1, 2})
    k33 = complete_bipartite(3, 3)
    for s in itertools.product(range(3), range(3, 6)):
        assert is_connected(k33, set(s))
    with pytest.raises(GraphError):
        is_connected(p, set())


def test_connected_subsets_examples(g1):
    tri = complete_graph(3)
    assert list(connected_subsets(tri, 2, 3)) == [{0, 1}, {0, 2}, {1, 2}, {0, 1, 2}]
    assert list(connected_subsets(path_graph(3), 2, 2)) == [{0, 1}, {1, 2}]
    oracle = [set(s) for s in itertools.combinations(range(6), 3)
              if nx.is_connected(g1.to_networkx().subgraph(s))]
    assert sorted(map(sorted, connected_subsets(g1, 3, 3))) == sorted(map(sorted, oracle))


@pytest.mark.parametrize("n", [4, 5])
def test_connected_subsets_match_brute_force_on_all_labelled_graphs(n):
    for g in all_labelled_graphs(n):
        h = g.to_networkx()
        oracle = {frozenset(s) for k in range(1, n + 1) for s in itertools.combinations(range(n), k)
                  if nx.is_connected(h.subgraph(s))}
        got = list(connected_subsets(g, 1, n))
        assert len(got) == len(set(got))
        assert set(got) == oracle


def test_connected_subsets_order_deterministic(g1):
    assert list(connected_subsets(g1, 1, 6)) == list(connected_subsets(g1, 1, 6))


def test_components_and_largest():
    g = Graph.from_edges(6, [(0, 1), (2, 3), (3, 4)])
    assert sorted(map(sorted, map(from_mask, components(g)))) == [[0, 1], [2, 3, 4], [5]]
    lc = largest_component(g)
    assert (lc.n, lc.num_edges) == (3, 2)


# -- distances and cliques ---------------------------------------------------------

def test_eccentricity_examples():
    k5 = complete_graph(5)
    assert eccentricity(k5, 0) == 1 and diameter(k5) == 1
    p = path_graph(3)
    assert eccentricity(p, 1) == 1 and diameter(p) == 2
    s = star_graph(4)
    assert eccentricity(s, 0) == 1 and eccentricity(s, 1) == 2
    with pytest.raises(GraphError):
        eccentricity(Graph.from_edges(3, [(0, 1)]), 0)


@given(graphs(min_n=2))
def test_diameter_one_iff_complete(g):
    if not is_connected(g):
        return
    assert (diameter(g) == 1) == g.is_complete()
    assert diameter(g) == nx.diameter(g.to_networkx())


def test_clique_number_examples():
    assert clique_number(complete_graph(5)) == 5
    assert clique_number(cycle_graph(5)) == 2
    assert clique_number(Graph.from_edges(3, [])) == 1


@settings(max_examples=150)
@given(graphs())
def test_clique_number_matches_networkx(g):
    h = g.to_networkx()
    assert clique_number(g) == max(len(c) for c in nx.find_cliques(h))


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_turan_consistency(n):
    for g in enumerate_connected_graphs(n):
        w = clique_number(g)
        for p in range(2, n + 1):
            if g.num_edges > (p - 2) / (2 * (p - 1)) * n * n:
                assert w >= p


# -- cut profile -------------------------------------------------------------------

def brute_profile(g):
    """κ, χ, μ by trying every node subset."""
    h = g.to_networkx()
    for k in range(1, g.n - 1):
        seps = [s for s in itertools.combinations(range(g.n), k)
                if not nx.is_connected(h.subgraph(set(range(g.n)) - set(s)))]
        if seps:
            comps = [[len(c) for c in nx.connected_components(h.subgraph(set(range(g.n)) - set(s)))]
                     for s in seps]
            return k, min(min(c) for c in comps), max(len(c) for c in comps)
    raise AssertionError("no separator")


def test_cut_profile_examples():
    assert tuple(vars(cut_profile(path_graph(3))).values()) == (1, 1, 2)
    bowtie = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    p = cut_profile(bowtie)
    assert (p.kappa, p.chi, p.mu) == (1, 2, 2)
    p = cut_profile(complete_bipartite(2, 3))
    assert (p.kappa, p.chi, p.mu) == (2, 1, 3)


def test_cut_profile_errors():
    with pytest.raises(GraphError):
        cut_profile(complete_graph(4))
    with pytest.raises(GraphError):
        cut_profile(Graph.from_edges(4, [(0, 1), (2, 3)]))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_cut_profile_matches_brute_force(n):
    for g in enumerate_connected_graphs(n):
        if g.is_complete():
            continue
        p = cut_profile(g)
        assert (p.kappa, p.chi, p.mu) == brute_profile(g)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=4, max_n=10))
def test_minimum_cuts_separate_and_smaller_sets_do_not(g):
    if not is_connected(g) or g.is_complete():
        return
    p = cut_profile(g)
    full = g.all_nodes
    for sep in minimum_separators(g, p.kappa):
        assert len(components(g, full & ~sep)) >= 2
    for s in itertools.combinations(range(g.n), p.kappa - 1):
        assert is_connected(g, full & ~to_mask(s))


# -- enumeration and sampling ------------------------------------------------------

def brute_classes(n):
    return {brute_force_canonical_code(g) for g in all_labelled_graphs(n) if is_connected(g)}


@pytest.mark.parametrize("n,count", [(3, 2), (4, 6), (5, 21), (6, 112)])
def test_enumeration_counts(n, count):
    gs = enumerate_connected_graphs(n)
    assert len(gs) == count
    assert all(is_connected(g) and g.n == n for g in gs)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_enumeration_matches_brute_force_classes(n):
    assert {brute_force_canonical_code(g) for g in enumerate_connected_graphs(n)} == brute_classes(n)


def test_enumeration_n7_count():
    # connected graphs on 7 nodes, cross-checked against networkx's atlas
    atlas = [g for g in nx.graph_atlas_g() if g.number_of_nodes() == 7 and nx.is_connected(g)]
    assert len(enumerate_connected_graphs(7)) == len(atlas) == 853


def test_enumeration_range():
    for n in (2, 9):
        with pytest.raises(GraphError):
            enumerate_connected_graphs(n)


@settings(max_examples=80)
@given(graphs(max_n=6), st.randoms(use_true_random=False))
def test_canonical_code_is_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
    assert canonical_code(g) == canonical_code(h)
    assert brute_force_canonical_code(g) == brute_force_canonical_code(h)


def test_sample_examples():
    g = sample_random_graph(1, 7)
    assert (g.n, g.num_edges) == (1, 0)
    assert sample_random_graph(9, 42) == sample_random_graph(9, 42)


def test_sample_edge_density():
    counts = np.array([sample_random_graph(10, [1, i]).num_edges for i in range(10_000)])
    sigma = math.sqrt(45 * 0.25 / len(counts))
    assert abs(counts.mean() - 22.5) < 3 * sigma
