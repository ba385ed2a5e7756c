"""Closed-form stability rules for special graph classes, the structural
cohesion semi-test, and exact/sufficient cohesion tests for graphs of
diameter two with universal nodes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .game import (
    CohesionVerdict,
    GroupStructure,
    Method,
    Status,
    make_certificate,
    search_blocking,
    tie_counts,
)
from .graph import (
    CutProfile,
    Graph,
    GraphError,
    clique_number,
    components,
    cut_profile,
    is_connected,
    iter_bits,
    masks_of_size,
    popcount,
    to_mask,
    vertex_connectivity,
)


# -- stars and complete bipartite graphs -----------------------------------------

def star_stable(m: int, w: GroupStructure) -> bool:
    """Core stability of a group structure of the star with centre 0 and tails 1..m.

    Stable iff the centre's coalition holds at least half of the tails and
    every other coalition is a singleton.
    """
    if m < 2 or w.n != m + 1:
        raise GraphError("expected a structure of a star with m > 1 tails")
    clan = w.coalition_of(0)
    if any(len(c) != 1 for c in w.coalitions if c is not clan):
        # tails are pairwise non-adjacent: such a coalition is not a social group
        raise GraphError("not a group structure of a star")
    tails = len(clan) - 1
    return 2 * tails >= m


@dataclass(frozen=True)
class BipartiteCoalitionStats:
    ell: int
    r: int


def bipartite_stats(coalition: Iterable[int], left: Iterable[int]) -> BipartiteCoalitionStats:
    left = set(left)
    c = list(coalition)
    ell = sum(1 for u in c if u in left)
    return BipartiteCoalitionStats(ell, len(c) - ell)


def knn_stable(n: int, w: GroupStructure) -> bool:
    """Core stability on K_{n,n} (sides ``0..n-1`` and ``n..2n-1``): every
    coalition has equally many nodes from each side."""
    if w.n != 2 * n:
        raise GraphError("structure does not match K_{n,n}")
    left = range(n)
    for c in w.coalitions:
        st = bipartite_stats(c, left)
        if st.ell != st.r:
            return False
    return True


@dataclass(frozen=True)
class ClanStructure:
    """At most one non-singleton coalition (the clan); the rest are exiles."""

    n: int
    clan: frozenset[int] | None
    exiles: frozenset[int]

    @property
    def iota(self) -> int:
        return len(self.exiles)

    @classmethod
    def from_structure(cls, w: GroupStructure) -> "ClanStructure":
        big = [c for c in w.coalitions if len(c) > 1]
        if len(big) > 1:
            raise GraphError("more than one non-singleton coalition")
        clan = big[0] if big else None
        exiles = frozenset(u for c in w.coalitions if len(c) == 1 for u in c)
        return cls(w.n, clan, exiles)

    def to_structure(self) -> GroupStructure:
        coalitions = ([self.clan] if self.clan else []) + [frozenset([u]) for u in sorted(self.exiles)]
        return GroupStructure(self.n, tuple(coalitions))


def kmn_clan_stable(m: int, n: int, w: ClanStructure | GroupStructure) -> bool:
    """Clan structures of K_{m,n}, ``m >= n > 0``; the m-side is ``0..m-1``.

    Stable iff the clan holds the whole n-side and at least
    ``max(n, iota * n)`` nodes of the m-side.
    """
    if not m >= n > 0:
        raise GraphError("need m >= n > 0")
    if isinstance(w, GroupStructure):
        w = ClanStructure.from_structure(w)
    if w.n != m + n:
        raise GraphError("structure does not match K_{m,n}")
    if w.clan is None:
        return False
    if not set(range(m, m + n)) <= w.clan:
        return False
    ell = sum(1 for u in w.clan if u < m)
    return ell >= max(n, w.iota * n)


# -- structural cohesion -----------------------------------------------------------

def structural_semi_test(g: Graph, profile: CutProfile | None = None) -> Status:
    """``NOT_COHESIVE`` when the cut profile forces a blocking set, else ``INCONCLUSIVE``.

    kappa = 1 and chi >= 2, or kappa > 1, mu > 2 and chi >= kappa / (mu - 2).
    The second branch also needs chi >= 2: the blocking set is an edge inside
    the smallest component, and K_{2,4} (chi = 1) is cohesive.
    """
    if profile is None:
        profile = cut_profile(g)
    k, chi, mu = profile.kappa, profile.chi, profile.mu
    if k == 1 and chi >= 2:
        return Status.NOT_COHESIVE
    if k > 1 and mu > 2 and chi >= 2 and chi * (mu - 2) >= k:
        return Status.NOT_COHESIVE
    return Status.INCONCLUSIVE


_SEPARATOR_BUDGET = 20_000


def structural_certificate(g: Graph, budget: int = _SEPARATOR_BUDGET) -> int | None:
    """Blocking set of the grand coalition implied by the cut profile, as a mask.

    Skipped (``None``) for disconnected or complete graphs and when there are
    more than ``budget`` candidate separators to enumerate.
    """
    from math import comb

    if g.n < 3 or g.is_complete() or not is_connected(g):
        return None
    kappa = vertex_connectivity(g)
    if comb(g.n, kappa) > budget:
        return None
    full = g.all_nodes
    seps = [s for s in masks_of_size(g.n, kappa) if len(components(g, full & ~s)) >= 2]
    chi_comp = None
    mu = 0
    for s in seps:
        comps = components(g, full & ~s)
        mu = max(mu, len(comps))
        small = min(comps, key=lambda c: (popcount(c), c))
        if chi_comp is None or (popcount(small), small) < (popcount(chi_comp), chi_comp):
            chi_comp = small
    profile = CutProfile(kappa, popcount(chi_comp), mu)
    if structural_semi_test(g, profile) is not Status.NOT_COHESIVE:
        return None
    if kappa == 1:
        return chi_comp
    # every node of the smallest component has popularity below 1/2
    for u in iter_bits(chi_comp):
        nb = g.adj[u] & chi_comp
        if nb:
            return 1 << u | (nb & -nb)
    return None


# -- diameter-two graphs with universal nodes --------------------------------------

@dataclass(frozen=True)
class EccentricityPartition:
    """``v1``: nodes adjacent to all others; ``v2``: the rest."""

    v1: frozenset[int]
    v2: frozenset[int]


def eccentricity_partition(g: Graph) -> EccentricityPartition | None:
    """Partition into universal / non-universal nodes when ``g`` is connected,
    has diameter two and not all eccentricities are equal; else ``None``."""
    if g.n < 2 or not is_connected(g):
        return None
    universal = [u for u in range(g.n) if popcount(g.adj[u]) == g.n - 1]
    if not universal or len(universal) == g.n:
        return None
    v1 = frozenset(universal)
    return EccentricityPartition(v1, frozenset(range(g.n)) - v1)


def lambda_value(g: Graph, part: EccentricityPartition, u: int, nodes: Iterable[int] | int) -> Fraction:
    """``fin * eout / ein - fout`` with ties counted inside ``G[V2]``."""
    s = to_mask(nodes)
    v2 = to_mask(part.v2)
    if not s >> u & 1:
        raise GraphError(f"node {u} is not in the given set")
    if s & ~v2:
        raise GraphError("the set is not contained in V2")
    t = tie_counts(g, u, s, ambient=v2)
    return Fraction(t.fin * t.eout, t.ein) - t.fout


def lambda_condition(g: Graph, part: EccentricityPartition):
    """Search condition ``|V1| < lambda(u, S)`` in integer form."""
    v2 = to_mask(part.v2)
    n1 = len(part.v1)
    n2 = len(part.v2)
    deg2 = {u: popcount(g.adj[u] & v2) for u in part.v2}

    def cond(u, fin, size):
        fout = deg2[u] - fin
        ein = size - fin
        eout = n2 - size - fout
        # ein >= 1 always since u is counted as its own absent tie
        return n1 * ein < fin * eout - fout * ein

    return cond


def ndu2_cohesive(g: Graph, part: EccentricityPartition | None = None) -> CohesionVerdict:
    """Exact cohesion decision searching subsets of V2 only.

    Nodes isolated inside ``G[V2]`` are dropped up front: with no tie inside
    any subset their lambda is ``-fout <= 0``.
    """
    if part is None:
        part = eccentricity_partition(g)
    if part is None:
        raise GraphError("graph is not connected with diameter 2 and a universal node")
    v2 = to_mask(part.v2)
    live = 0
    for u in part.v2:
        if g.adj[u] & v2:
            live |= 1 << u
    hit = search_blocking(g, lambda_condition(g, part), candidates=live)
    if hit is None:
        return CohesionVerdict(Status.COHESIVE, Method.EXACT)
    return CohesionVerdict(Status.NOT_COHESIVE, Method.EXACT,
                           make_certificate(g, hit, GroupStructure.grand(g.n)))


def lambda_blocks(g: Graph, part: EccentricityPartition, nodes: Iterable[int] | int) -> bool:
    s = to_mask(nodes)
    n1 = len(part.v1)
    return bool(s) and all(n1 < lambda_value(g, part, u, s) for u in iter_bits(s))


def turan_sufficient(g: Graph, part: EccentricityPartition | None = None) -> Status:
    """``COHESIVE`` when ``|V2| > c(c-1)`` and ``|V1| >= (c-1)(|V2|-c)`` with
    ``c`` the clique number of ``G[V2]``; otherwise ``INCONCLUSIVE``."""
    if part is None:
        part = eccentricity_partition(g)
    if part is None:
        raise GraphError("graph is not connected with diameter 2 and a universal node")
    c = clique_number(g, part.v2)
    n1, n2 = len(part.v1), len(part.v2)
    if n2 > c * (c - 1) and n1 >= (c - 1) * (n2 - c):
        return Status.COHESIVE
    return Status.INCONCLUSIVE


def degree_ratio_witness(g: Graph, nodes: Iterable[int] | int) -> int | None:
    """A member ``u`` with ``fin / ein <= omega(G[S]) - 1`` (always exists for a
    social group), or ``None``."""
    s = to_mask(nodes)
    omega = clique_number(g, s)
    size = popcount(s)
    for u in iter_bits(s):
        fin = popcount(g.adj[u] & s)
        if fin <= (omega - 1) * (size - fin):
            return u
    return None

