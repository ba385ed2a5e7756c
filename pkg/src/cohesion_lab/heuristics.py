"""Group-structure heuristics (Louvain modularity, greedy average payoff) and
their evaluation against exact cohesion decisions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .game import (
    DEFAULT_EXACT_CAP,
    BlockingCertificate,
    CohesionVerdict,
    GroupStructure,
    Method,
    Status,
    blocks_grand,
    is_core_stable,
    is_socially_cohesive,
    make_certificate,
    payoffs,
)
from .graph import Graph, GraphError, iter_bits, popcount, to_mask

LM = "lm"
AP = "ap"
METHODS = (LM, AP)


def modularity(g: Graph, w: GroupStructure) -> float:
    """Newman modularity (resolution 1) of ``w``."""
    m = g.num_edges
    if m == 0:
        raise GraphError("modularity is undefined for a graph without edges")
    deg = g.degrees()
    q = Fraction(0)
    for c in w.coalitions:
        s = to_mask(c)
        inner = sum(popcount(g.adj[u] & s) for u in c) // 2
        tot = sum(deg[u] for u in c)
        q += Fraction(inner, m) - Fraction(tot, 2 * m) ** 2
    return float(q)


def _one_level(nbrs: list[dict[int, int]], loops: list[int], order: list[int]) -> tuple[list[int], bool]:
    """Local moving phase on a weighted graph.

    ``nbrs[i]`` maps neighbour -> edge weight (no self entries), ``loops[i]``
    is the self-loop weight.  Returns the community of each node and whether
    anything moved.  Gains are compared as integers scaled by ``2m``.
    """
    size = len(nbrs)
    k = [2 * loops[i] + sum(nbrs[i].values()) for i in range(size)]
    two_m = sum(k)
    comm = list(range(size))
    tot = k[:]
    moved_any = False
    improved = True
    while improved:
        improved = False
        for i in order:
            old = comm[i]
            links: dict[int, int] = {}
            for j, wgt in nbrs[i].items():
                links[comm[j]] = links.get(comm[j], 0) + wgt
            tot[old] -= k[i]
            # gain of joining c, times 2m: 2m * k_i,c - tot_c * k_i
            best = old
            best_gain = two_m * links.get(old, 0) - tot[old] * k[i]
            for c in sorted(links):
                gain = two_m * links[c] - tot[c] * k[i]
                if gain > best_gain:
                    best, best_gain = c, gain
            tot[best] += k[i]
            if best != old:
                comm[i] = best
                improved = True
                moved_any = True
    return comm, moved_any


def louvain(g: Graph, seed: int | None = None) -> GroupStructure:
    """Two-phase Louvain modularity optimisation.

    Nodes are visited in id order (or in an order shuffled by ``seed``); a node
    moves only for a strictly positive modularity gain, ties going to the
    lowest community id.  Communities are aggregated until a pass moves nothing.
    """
    n = g.n
    if g.num_edges == 0:
        return GroupStructure.singletons(n)
    nbrs = [{v: 1 for v in iter_bits(g.adj[u])} for u in range(n)]
    loops = [0] * n
    members = [[u] for u in range(n)]
    rng = np.random.default_rng(seed) if seed is not None else None
    while True:
        order = list(range(len(nbrs)))
        if rng is not None:
            order = [int(x) for x in rng.permutation(len(nbrs))]
        comm, moved = _one_level(nbrs, loops, order)
        if not moved:
            break
        relabel: dict[int, int] = {}
        for c in comm:
            relabel.setdefault(c, len(relabel))
        comm = [relabel[c] for c in comm]
        size = len(relabel)
        new_nbrs: list[dict[int, int]] = [dict() for _ in range(size)]
        new_loops = [0] * size
        new_members: list[list[int]] = [[] for _ in range(size)]
        for i in range(len(nbrs)):
            ci = comm[i]
            new_loops[ci] += loops[i]
            new_members[ci].extend(members[i])
            for j, wgt in nbrs[i].items():
                cj = comm[j]
                if ci == cj:
                    if i < j:
                        new_loops[ci] += wgt
                else:
                    new_nbrs[ci][cj] = new_nbrs[ci].get(cj, 0) + wgt
        nbrs, loops, members = new_nbrs, new_loops, new_members
    return GroupStructure.of(n, members)


def average_payoff(g: Graph, s: int) -> Fraction:
    """Mean popularity inside ``s``: ``2 |E[s]| / |s|^2``."""
    size = popcount(s)
    inner = sum(popcount(g.adj[u] & s) for u in iter_bits(s))
    return Fraction(inner, size * size)


def ap_heuristic(g: Graph) -> GroupStructure:
    """Greedy: repeatedly take the remaining closed neighbourhood with the
    highest average payoff (ties: lowest node id) as a coalition."""
    remaining = g.all_nodes
    out = []
    while remaining:
        best_nu = None
        best_set = 0
        for w in iter_bits(remaining):
            s = (g.adj[w] | 1 << w) & remaining
            nu = average_payoff(g, s)
            if best_nu is None or nu > best_nu:
                best_nu, best_set = nu, s
        out.append(best_set)
        remaining &= ~best_set
    return GroupStructure.from_masks(g.n, out)


def group_structure(g: Graph, method: str, seed: int | None = None) -> GroupStructure:
    if method == LM:
        return louvain(g, seed)
    if method == AP:
        return ap_heuristic(g)
    raise ValueError(f"unknown method {method!r}")


@dataclass
class HeuristicOutcome:
    structure: GroupStructure
    blocking_found: BlockingCertificate | None = None
    core_stable_exact: bool | None = None


def run_heuristic(g: Graph, method: str, seed: int | None = None, check_stability: bool = False) -> HeuristicOutcome:
    w = group_structure(g, method, seed)
    grand = GroupStructure.grand(g.n)
    cert = None
    for c in w.coalitions:
        if blocks_grand(g, c):
            cert = make_certificate(g, c, grand)
            break
    stable = is_core_stable(g, w).cohesive if check_stability else None
    return HeuristicOutcome(w, cert, stable)


def heuristic_cohesion_test(g: Graph, method: str, seed: int | None = None) -> CohesionVerdict:
    out = run_heuristic(g, method, seed)
    if out.blocking_found is not None:
        return CohesionVerdict(Status.NOT_COHESIVE, Method.HEURISTIC, out.blocking_found, method)
    return CohesionVerdict(Status.INCONCLUSIVE, Method.HEURISTIC, note=method)


def improved_nodes(g: Graph, w: GroupStructure) -> int:
    """Nodes whose payoff under ``w`` beats their grand-coalition payoff."""
    if g.n == 0:
        return 0
    grand = payoffs(g, GroupStructure.grand(g.n))
    mine = payoffs(g, w)
    return sum(1 for a, b in zip(mine, grand) if a > b)


@dataclass
class BatchStats:
    """Counts for one batch: ``s`` graphs, ``b`` with a blocking set found by
    the heuristic, ``c`` cohesive (exact)."""

    method: str
    s: int = 0
    b: int = 0
    c: int = 0
    core_stable: int = 0
    stability_checked: int = 0
    improved: int = 0
    nodes: int = 0
    connected: int = 0
    payoff_samples: list[Fraction] = field(default_factory=list, repr=False)

    @property
    def accuracy(self) -> float:
        return (self.b + self.c) / self.s if self.s else float("nan")

    @property
    def core_stable_rate(self) -> float:
        return self.core_stable / self.stability_checked if self.stability_checked else float("nan")

    @property
    def improved_node_rate(self) -> float:
        return self.improved / self.nodes if self.nodes else float("nan")

    def merge(self, other: "BatchStats") -> "BatchStats":
        if other.method != self.method:
            raise ValueError("cannot merge stats of different methods")
        return BatchStats(
            self.method,
            self.s + other.s,
            self.b + other.b,
            self.c + other.c,
            self.core_stable + other.core_stable,
            self.stability_checked + other.stability_checked,
            self.improved + other.improved,
            self.nodes + other.nodes,
            self.connected + other.connected,
            self.payoff_samples + other.payoff_samples,
        )


def evaluate_graph(g: Graph, methods: Iterable[str], exact_cap: int | None = DEFAULT_EXACT_CAP,
                   check_stability: bool = True, keep_payoffs: bool = False,
                   seed: int | None = None) -> dict[str, BatchStats]:
    """Run each heuristic on ``g`` and score it against the exact verdict."""
    from .graph import is_connected

    verdict = is_socially_cohesive(g, exact_cap=exact_cap)
    cohesive = verdict.cohesive
    connected = int(g.n > 0 and is_connected(g))
    out = {}
    for method in methods:
        res = run_heuristic(g, method, seed, check_stability=check_stability)
        if res.blocking_found is not None and cohesive:
            raise AssertionError("heuristic found a blocking set in a cohesive graph")
        st = BatchStats(method, s=1, b=int(res.blocking_found is not None), c=int(cohesive),
                        connected=connected, improved=improved_nodes(g, res.structure), nodes=g.n)
        if check_stability:
            st.stability_checked = 1
            st.core_stable = int(bool(res.core_stable_exact))
        if keep_payoffs:
            st.payoff_samples = [p.as_fraction() for p in payoffs(g, res.structure)]
        out[method] = st
    return out


def evaluate_batch(graphs: Iterable[Graph], method: str | Iterable[str] = METHODS,
                   exact_cap: int | None = DEFAULT_EXACT_CAP, check_stability: bool = True,
                   seed: int | None = None) -> dict[str, BatchStats]:
    methods = [method] if isinstance(method, str) else list(method)
    totals = {m: BatchStats(m) for m in methods}
    for g in graphs:
        for m, st in evaluate_graph(g, methods, exact_cap, check_stability, seed=seed).items():
            totals[m] = totals[m].merge(st)
    return totals
