import itertools
from fractions import Fraction

import pytest

from cohesion_lab.graph import Graph, is_connected


EXAMPLE_LABELS = "abcdef"


def example_g1() -> Graph:
    """The six-node network of the first worked example, nodes a..f -> 0..5."""
    ix = {c: i for i, c in enumerate(EXAMPLE_LABELS)}
    edges = [(ix[x], ix[y]) for x, y in "ab ac bc de df ef ae cd".split()]
    return Graph.from_edges(6, edges, labels=list(EXAMPLE_LABELS))


def example_g2() -> Graph:
    """Star with centre a and tails b..e."""
    return Graph.from_edges(5, [(0, i) for i in range(1, 5)], labels=list("abcde"))


@pytest.fixture
def g1():
    return example_g1()


@pytest.fixture
def g2():
    return example_g2()


# -- independent oracles (plain Fractions, no bitmask search) ----------------------

def frac_pop(g: Graph, u: int, s) -> Fraction:
    s = set(s)
    return Fraction(sum(1 for v in s if v != u and g.has_edge(u, v)), len(s))


def brute_blocks(g: Graph, s, coalition_of) -> bool:
    s = set(s)
    return bool(s) and all(frac_pop(g, u, s) > frac_pop(g, u, coalition_of(u)) for u in s)


def brute_blocking_sets(g: Graph, coalition_of):
    nodes = range(g.n)
    for k in range(1, g.n + 1):
        for s in itertools.combinations(nodes, k):
            if brute_blocks(g, s, coalition_of):
                yield frozenset(s)


def brute_cohesive(g: Graph) -> bool:
    everyone = set(range(g.n))
    return next(brute_blocking_sets(g, lambda u: everyone), None) is None


def brute_stable(g: Graph, coalitions) -> bool:
    owner = {u: set(c) for c in coalitions for u in c}
    return next(brute_blocking_sets(g, owner.__getitem__), None) is None


def all_labelled_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if code >> i & 1])


def all_labelled_connected(n: int):
    return [g for g in all_labelled_graphs(n) if is_connected(g)]


def ndu2_graphs(n: int):
    """Every graph on ``n`` nodes (up to isomorphism) that is connected, has
    diameter two and a universal node but is not complete.

    Such a graph is a clique of ``n1`` universal nodes joined to a graph on
    the remaining ``n2`` nodes in which no node is adjacent to all others.
    """
    from cohesion_lab.graph import enumerate_all_graphs

    out = []
    for n2 in range(2, n):
        for h in enumerate_all_graphs(n2):
            if any(h.degree(u) == n2 - 1 for u in range(n2)):
                continue
            edges = list(h.edges())
            edges += [(a, b) for a in range(n2, n) for b in range(a + 1, n)]
            edges += [(a, b) for a in range(n2) for b in range(n2, n)]
            out.append(Graph.from_edges(n, edges))
    return out
