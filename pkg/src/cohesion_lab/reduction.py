"""Clique to non-cohesion reduction.

From a graph ``G`` and ``k > 2`` build ``H``: ``G`` padded with
``k(k-1) + d`` isolated nodes (``d = k * maxdeg(G)``) forms ``V2``, and a
clique ``V1`` of ``(k-1)(|V2|-k) - d`` universal nodes is joined to all of it.
``G`` has a ``k``-clique iff ``H`` is not socially cohesive.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .characterizations import EccentricityPartition, ndu2_cohesive
from .game import Status
from .graph import Graph, GraphError, clique_number


class DegenerateInstance(GraphError):
    pass


@dataclass(frozen=True)
class HardnessInstance:
    h: Graph
    v1: frozenset[int]
    v2: frozenset[int]
    d: int
    source_n: int
    k: int

    @property
    def partition(self) -> EccentricityPartition:
        return EccentricityPartition(self.v1, self.v2)

    def sidecar(self) -> dict:
        return {
            "v1": sorted(self.v1),
            "v2": sorted(self.v2),
            "d": self.d,
            "k": self.k,
            "source_n": self.source_n,
        }

    def sidecar_json(self) -> str:
        return json.dumps(self.sidecar())


def instance_sizes(g: Graph, k: int) -> tuple[int, int, int]:
    """``(d, |V2|, |V1|)`` for the instance built from ``(g, k)``."""
    d = k * g.max_degree()
    n2 = g.n + k * (k - 1) + d
    n1 = (k - 1) * (n2 - k) - d
    return d, n2, n1


def build_instance(g: Graph, k: int) -> HardnessInstance:
    """Node ids: source nodes, then padding isolates (together ``V2``), then ``V1``."""
    if k <= 2:
        raise GraphError("k must be larger than 2")
    if g.n < 1:
        raise GraphError("source graph needs at least one node")
    d, n2, n1 = instance_sizes(g, k)
    if n1 < 1:
        raise DegenerateInstance(f"(k-1)(|V2|-k) = {(k - 1) * (n2 - k)} does not exceed d = {d}")
    edges = list(g.edges())
    v1 = range(n2, n2 + n1)
    edges += [(a, b) for a in v1 for b in v1 if a < b]
    edges += [(a, b) for b in v1 for a in range(n2)]
    h = Graph.from_edges(n2 + n1, edges)
    return HardnessInstance(h, frozenset(v1), frozenset(range(n2)), d, g.n, k)


def verify_reduction(g: Graph, k: int) -> bool:
    """Check ``(omega(G) >= k) == (H is not cohesive)`` by exact computation."""
    inst = build_instance(g, k)
    verdict = ndu2_cohesive(inst.h, inst.partition)
    return (clique_number(g) >= k) == (verdict.status is Status.NOT_COHESIVE)
