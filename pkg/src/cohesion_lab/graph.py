"""Simple undirected graphs over dense integer node ids.

Node sets are handled internally as Python int bitmasks (bit ``u`` set iff
node ``u`` is a member); Python ints grow as needed, so the same code covers
graphs with more than 64 nodes.  Public functions accept any iterable of node
ids and return frozensets.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graphs or operations outside their domain."""


class EdgeListParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def to_mask(nodes: Iterable[int] | int) -> int:
    if isinstance(nodes, (int, np.integer)):
        return int(nodes)
    mask = 0
    for u in nodes:
        mask |= 1 << int(u)
    return mask


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return int(mask).bit_count()


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on nodes ``0..n-1``.

    ``adj[u]`` is the neighbourhood of ``u`` as a bitmask.  ``labels`` holds
    the external node names when the graph was read from a file.
    """

    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for u, nb in enumerate(self.adj):
            if nb >> u & 1:
                raise GraphError(f"self-loop at node {u}")
            if nb & ~full:
                raise GraphError(f"node {u} has a neighbour outside 0..{self.n - 1}")
            for v in iter_bits(nb):
                if not self.adj[v] >> u & 1:
                    raise GraphError(f"edge ({u}, {v}) is not symmetric")
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("labels length does not match n")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), tuple(labels) if labels is not None else None)

    @classmethod
    def from_networkx(cls, g) -> "Graph":
        nodes = list(g.nodes())
        index = {x: i for i, x in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[a], index[b]) for a, b in g.edges()),
                              labels=[str(x) for x in nodes])

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    @property
    def all_nodes(self) -> int:
        return (1 << self.n) - 1

    @property
    def num_edges(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u]) if u < v]

    def degree(self, u: int) -> int:
        return popcount(self.adj[u])

    def degrees(self) -> list[int]:
        return [popcount(a) for a in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, u: int) -> frozenset[int]:
        return from_mask(self.adj[u])

    def label(self, u: int) -> str:
        return self.labels[u] if self.labels is not None else str(u)

    def add_edge(self, u: int, v: int) -> "Graph":
        return Graph.from_edges(self.n, self.edges() + [(u, v)], self.labels)

    def induced(self, nodes: Iterable[int] | int) -> "Graph":
        """Subgraph induced on ``nodes``, relabelled densely in increasing id order."""
        keep = list(iter_bits(to_mask(nodes)))
        index = {u: i for i, u in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        labels = [self.label(u) for u in keep] if self.labels is not None else None
        return Graph.from_edges(len(keep), edges, labels)

    def is_complete(self) -> bool:
        return all(popcount(a) == self.n - 1 for a in self.adj)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


# -- construction helpers ----------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(m: int) -> Graph:
    """Star with centre 0 and tails ``1..m``."""
    return Graph.from_edges(m + 1, ((0, i) for i in range(1, m + 1)))


def complete_bipartite(m: int, n: int) -> Graph:
    """K_{m,n}; the first side is ``0..m-1``, the second ``m..m+n-1``."""
    return Graph.from_edges(m + n, ((i, m + j) for i in range(m) for j in range(n)))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def parse_edge_list(text: str | Iterable[str]) -> Graph:
    """Read a whitespace separated edge list.

    Node tokens get dense ids in first-seen order and are kept as labels.
    ``#`` lines and blank lines are skipped, duplicate edges collapse.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    index: dict[str, int] = {}
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListParseError(lineno, f"expected 2 tokens, got {len(tokens)}")
        a, b = tokens
        if a == b:
            raise EdgeListParseError(lineno, f"self-loop on {a!r}")
        ia = index.setdefault(a, len(index))
        ib = index.setdefault(b, len(index))
        edges.add((min(ia, ib), max(ia, ib)))
    return Graph.from_edges(len(index), sorted(edges), labels=list(index))


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.label(u)} {g.label(v)}" for u, v in g.edges()]
    # isolated nodes cannot be expressed in an edge list
    return "\n".join(lines) + ("\n" if lines else "")


# -- degrees and connectivity --------------------------------------------------

def induced_degree(g: Graph, u: int, nodes: Iterable[int] | int) -> int:
    s = to_mask(nodes)
    if not s >> u & 1:
        raise GraphError(f"node {u} is not in the given set")
    return popcount(g.adj[u] & s)


def component_of(g: Graph, start: int, within: int) -> int:
    """Bitmask of the component of ``start`` in the subgraph induced on ``within``."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= g.adj[u]
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def mask_is_connected(g: Graph, s: int) -> bool:
    if not s:
        raise GraphError("connectivity of the empty set is undefined")
    return component_of(g, (s & -s).bit_length() - 1, s) == s


def is_connected(g: Graph, nodes: Iterable[int] | int | None = None) -> bool:
    s = g.all_nodes if nodes is None else to_mask(nodes)
    return mask_is_connected(g, s)


def components(g: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``g`` restricted to ``within``, as bitmasks."""
    rest = g.all_nodes if within is None else within
    out = []
    while rest:
        c = component_of(g, (rest & -rest).bit_length() - 1, rest)
        out.append(c)
        rest &= ~c
    return out


def largest_component(g: Graph) -> Graph:
    """Induced subgraph on the largest component (ties: the one with the lowest node)."""
    comps = components(g)
    best = max(comps, key=lambda c: (popcount(c), -((c & -c).bit_length())))
    return g.induced(best)


def _next_same_popcount(x: int) -> int:
    # Gosper's hack
    c = x & -x
    r = x + c
    return (((r ^ x) >> 2) // c) | r


def masks_of_size(n: int, k: int) -> Iterator[int]:
    """All ``k``-subsets of ``0..n-1`` as masks, in increasing integer order."""
    if k == 0:
        yield 0
        return
    x = (1 << k) - 1
    limit = 1 << n
    while x < limit:
        yield x
        x = _next_same_popcount(x)


def connected_subset_masks(g: Graph, min_size: int = 1, max_size: int | None = None) -> Iterator[int]:
    """Masks of connected induced subgraphs, by size then increasing mask value."""
    if max_size is None:
        max_size = g.n
    if not 1 <= min_size <= max_size <= g.n:
        raise GraphError(f"need 1 <= min_size <= max_size <= n, got {min_size}, {max_size}, n={g.n}")
    for k in range(min_size, max_size + 1):
        for s in masks_of_size(g.n, k):
            if mask_is_connected(g, s):
                yield s


def connected_subsets(g: Graph, min_size: int = 1, max_size: int | None = None) -> Iterator[frozenset[int]]:
    for s in connected_subset_masks(g, min_size, max_size):
        yield from_mask(s)


# -- distances -----------------------------------------------------------------

def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in iter_bits(g.adj[u]):
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def eccentricity(g: Graph, u: int) -> int:
    dist = bfs_distances(g, u)
    if min(dist) < 0:
        raise GraphError("graph is disconnected; eccentricity is infinite")
    return max(dist)


def eccentricities(g: Graph) -> list[int]:
    return [eccentricity(g, u) for u in range(g.n)]


def diameter(g: Graph) -> int:
    return max(eccentricities(g))


# -- cliques -------------------------------------------------------------------

def clique_number(g: Graph, within: Iterable[int] | int | None = None) -> int:
    """Exact clique number by branch and bound with a greedy-colouring bound.

    ``within`` restricts the search to an induced subgraph.
    """
    cand = g.all_nodes if within is None else to_mask(within)
    if not cand:
        return 0
    best = 0

    def colour_bound(p: int) -> list[tuple[int, int]]:
        # greedy colouring; returns (vertex, colour) in non-decreasing colour order
        order = []
        colour = 0
        rest = p
        while rest:
            colour += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~(1 << v) & ~g.adj[v]
                rest &= ~(1 << v)
                order.append((v, colour))
        return order

    def expand(size: int, p: int):
        nonlocal best
        order = colour_bound(p)
        for v, colour in reversed(order):
            if size + colour <= best:
                return
            np_ = p & g.adj[v]
            if np_:
                expand(size + 1, np_)
            elif size + 1 > best:
                best = size + 1
            p &= ~(1 << v)

    expand(0, cand)
    return best


# -- vertex cuts -----------------------------------------------------------------

@dataclass(frozen=True)
class CutProfile:
    """Minimum vertex cut size ``kappa``; ``chi`` smallest component size and
    ``mu`` largest component count over all minimum cuts (optimised separately)."""

    kappa: int
    chi: int
    mu: int


def vertex_connectivity(g: Graph) -> int:
    """Vertex connectivity via max-flow (networkx)."""
    import networkx as nx

    if g.n == 0:
        return 0
    if not is_connected(g):
        return 0
    if g.is_complete():
        return g.n - 1
    return nx.node_connectivity(g.to_networkx())


def minimum_separators(g: Graph, kappa: int | None = None) -> list[int]:
    """Every vertex set of size ``kappa`` whose removal disconnects ``g``."""
    if kappa is None:
        kappa = vertex_connectivity(g)
    full = g.all_nodes
    return [s for s in masks_of_size(g.n, kappa)
            if len(components(g, full & ~s)) >= 2]


def cut_profile(g: Graph) -> CutProfile:
    if g.n < 3 or not is_connected(g):
        raise GraphError("cut profile needs a connected graph on at least 3 nodes")
    if g.is_complete():
        raise GraphError("a complete graph has no vertex cut")
    kappa = vertex_connectivity(g)
    chi = g.n
    mu = 0
    full = g.all_nodes
    for sep in minimum_separators(g, kappa):
        comps = components(g, full & ~sep)
        chi = min(chi, min(popcount(c) for c in comps))
        mu = max(mu, len(comps))
    return CutProfile(kappa, chi, mu)


# -- generation ------------------------------------------------------------------

def _refine(g: Graph) -> list[int]:
    """Isomorphism-invariant colour refinement; returns a colour per node."""
    colours = [0] * g.n
    n_colours = 1
    while True:
        sigs = [(colours[u], tuple(sorted(colours[v] for v in iter_bits(g.adj[u]))))
                for u in range(g.n)]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colours = [palette[s] for s in sigs]
        if len(palette) == n_colours:
            return colours
        n_colours = len(palette)


def _code(g: Graph, order: Sequence[int]) -> int:
    """Upper-triangle adjacency bits of ``g`` listed in ``order``, as an int."""
    code = 0
    for i in range(1, len(order)):
        row = g.adj[order[i]]
        for j in range(i):
            code = code << 1 | (row >> order[j] & 1)
    return code


def canonical_code(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Canonical form: the maximum adjacency code over orderings compatible with
    the refined colour classes.  Returns ``(code, colour class sizes)``."""
    colours = _refine(g)
    cells: dict[int, list[int]] = {}
    for u, c in enumerate(colours):
        cells.setdefault(c, []).append(u)
    ordered = [cells[c] for c in sorted(cells)]
    best = -1
    for parts in itertools.product(*(itertools.permutations(cell) for cell in ordered)):
        order = [u for part in parts for u in part]
        best = max(best, _code(g, order))
    return best, tuple(len(c) for c in ordered)


def brute_force_canonical_code(g: Graph) -> int:
    """Maximum adjacency code over all ``n!`` orderings."""
    return max(_code(g, p) for p in itertools.permutations(range(g.n)))


def _graph_from_code(n: int, code: int) -> Graph:
    edges = []
    bits = n * (n - 1) // 2
    pos = bits - 1
    for i in range(1, n):
        for j in range(i):
            if code >> pos & 1:
                edges.append((j, i))
            pos -= 1
    return Graph.from_edges(n, edges)


def enumerate_all_graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class of graphs on ``n`` nodes.

    Grown one vertex at a time: every graph on ``n`` nodes is a graph on
    ``n - 1`` nodes plus a vertex attached to some subset.
    """
    if n < 1:
        raise GraphError("n must be positive")
    level = {canonical_code(empty_graph(1)): empty_graph(1)}
    for k in range(2, n + 1):
        nxt: dict = {}
        for h in level.values():
            base = h.edges()
            for nb in range(1 << (k - 1)):
                g = Graph.from_edges(k, base + [(v, k - 1) for v in iter_bits(nb)])
                key = canonical_code(g)
                if key not in nxt:
                    nxt[key] = _graph_from_code(k, key[0])
        level = nxt
    return [level[k] for k in sorted(level)]


_MAX_ENUM_N = 8


def enumerate_connected_graphs(n: int) -> list[Graph]:
    """Connected graphs on ``n`` nodes up to isomorphism (3 <= n <= 8)."""
    if not 3 <= n <= _MAX_ENUM_N:
        raise GraphError(f"exhaustive enumeration supports 3 <= n <= {_MAX_ENUM_N}, got {n}")
    return [g for g in _cached_all_graphs(n) if is_connected(g)]


_graph_cache: dict[int, list[Graph]] = {}


def _cached_all_graphs(n: int) -> list[Graph]:
    if n not in _graph_cache:
        _graph_cache[n] = enumerate_all_graphs(n)
    return _graph_cache[n]


def sample_random_graph(n: int, seed) -> Graph:
    """Uniform labelled graph on ``n`` nodes: each edge present with probability 1/2.

    ``seed`` is anything ``numpy.random.default_rng`` accepts.
    """
    if n < 1:
        raise GraphError("n must be positive")
    rng = np.random.default_rng(seed)
    coins = rng.integers(0, 2, size=n * (n - 1) // 2)
    pairs = itertools.combinations(range(n), 2)
    return Graph.from_edges(n, (p for p, bit in zip(pairs, coins) if bit))
