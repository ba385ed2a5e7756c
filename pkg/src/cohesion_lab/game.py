"""Popularity games: payoffs, blocking sets and exact core-stability checks.

Payoffs are rationals ``deg_S(u) / |S|`` with denominator at most ``n``; every
comparison is done by integer cross-multiplication.
"""

from __future__ import annotations

import enum
import functools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .graph import (
    Graph,
    GraphError,
    components,
    from_mask,
    iter_bits,
    popcount,
    to_mask,
)

DEFAULT_EXACT_CAP = 25


@functools.total_ordering
@dataclass(frozen=True)
class Popularity:
    """Unreduced rational ``numerator / denominator`` (``deg_S(u) / |S|``)."""

    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator <= 0 or not 0 <= self.numerator < self.denominator:
            raise ValueError(f"invalid popularity {self.numerator}/{self.denominator}")

    def __eq__(self, other):
        if not isinstance(other, Popularity):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __lt__(self, other):
        if not isinstance(other, Popularity):
            return NotImplemented
        return self.numerator * other.denominator < other.numerator * self.denominator

    def __hash__(self):
        return hash(self.as_fraction())

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __float__(self):
        return self.numerator / self.denominator

    def __str__(self):
        return f"{self.numerator}/{self.denominator}"


class Status(str, enum.Enum):
    COHESIVE = "Cohesive"
    NOT_COHESIVE = "NotCohesive"
    INCONCLUSIVE = "Inconclusive"


class Method(str, enum.Enum):
    EXACT = "Exact"
    QUICK_TEST = "QuickTest"
    HEURISTIC = "Heuristic"


class ExactCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class GroupStructure:
    """A partition of ``0..n-1`` into non-empty coalitions."""

    n: int
    coalitions: tuple[frozenset[int], ...]
    _index: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index = [-1] * self.n
        for i, c in enumerate(self.coalitions):
            if not c:
                raise ValueError("empty coalition")
            for u in c:
                if not 0 <= u < self.n:
                    raise ValueError(f"node {u} out of range for n={self.n}")
                if index[u] >= 0:
                    raise ValueError(f"node {u} appears in two coalitions")
                index[u] = i
        missing = [u for u, i in enumerate(index) if i < 0]
        if missing:
            raise ValueError(f"nodes {missing} are not covered")
        object.__setattr__(self, "_index", tuple(index))

    @classmethod
    def of(cls, n: int, coalitions: Iterable[Iterable[int]]) -> "GroupStructure":
        return cls(n, tuple(frozenset(int(u) for u in c) for c in coalitions))

    @classmethod
    def grand(cls, n: int) -> "GroupStructure":
        return cls(n, (frozenset(range(n)),)) if n else cls(0, ())

    @classmethod
    def singletons(cls, n: int) -> "GroupStructure":
        return cls(n, tuple(frozenset([u]) for u in range(n)))

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "GroupStructure":
        return cls(n, tuple(from_mask(m) for m in masks))

    def coalition_of(self, u: int) -> frozenset[int]:
        return self.coalitions[self._index[u]]

    def masks(self) -> list[int]:
        return [to_mask(c) for c in self.coalitions]

    def canonical(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(tuple(sorted(c)) for c in self.coalitions))

    def to_json(self, g: Graph | None = None) -> str:
        label = g.label if g is not None else str
        return json.dumps([[label(u) for u in sorted(c)] for c in self.coalitions])

    @classmethod
    def from_json(cls, text: str, g: Graph) -> "GroupStructure":
        index = {g.label(u): u for u in range(g.n)}
        return cls.of(g.n, ([index[str(x)] for x in c] for c in json.loads(text)))

    def __len__(self):
        return len(self.coalitions)


def popularity(g: Graph, u: int, nodes: Iterable[int] | int) -> Popularity:
    s = to_mask(nodes)
    if not s >> u & 1:
        raise GraphError(f"node {u} is not in the given set")
    return Popularity(popcount(g.adj[u] & s), popcount(s))


def payoff_under(g: Graph, w: GroupStructure, u: int) -> Popularity:
    return popularity(g, u, w.coalition_of(u))


def payoffs(g: Graph, w: GroupStructure) -> list[Popularity]:
    out: list[Popularity | None] = [None] * g.n
    for c in w.coalitions:
        s = to_mask(c)
        size = len(c)
        for u in c:
            out[u] = Popularity(popcount(g.adj[u] & s), size)
    return out  # type: ignore[return-value]


def total_popularity(g: Graph, nodes: Iterable[int] | int) -> Fraction:
    s = to_mask(nodes)
    return sum((popularity(g, u, s).as_fraction() for u in iter_bits(s)), Fraction(0))


@dataclass(frozen=True)
class BlockingCertificate:
    """A blocking set with each member's payoff inside it and under the
    challenged structure."""

    blocking_set: frozenset[int]
    member_payoffs: Mapping[int, tuple[Popularity, Popularity]]

    def verify(self, g: Graph, w: GroupStructure) -> bool:
        return is_blocking(g, self.blocking_set, w)

    def to_dict(self, g: Graph | None = None) -> dict:
        label = g.label if g is not None else str
        return {
            "blocking_set": [label(u) for u in sorted(self.blocking_set)],
            "member_payoffs": {
                label(u): {"in_set": str(a), "current": str(b)}
                for u, (a, b) in sorted(self.member_payoffs.items())
            },
        }


def make_certificate(g: Graph, nodes: Iterable[int] | int, w: GroupStructure) -> BlockingCertificate:
    s = to_mask(nodes)
    return BlockingCertificate(
        from_mask(s),
        {u: (popularity(g, u, s), payoff_under(g, w, u)) for u in iter_bits(s)},
    )


def is_blocking(g: Graph, nodes: Iterable[int] | int, w: GroupStructure) -> bool:
    s = to_mask(nodes)
    if not s:
        return False
    return all(popularity(g, u, s) > payoff_under(g, w, u) for u in iter_bits(s))


def blocking_certificate(g: Graph, nodes: Iterable[int] | int, w: GroupStructure) -> BlockingCertificate | None:
    """Certificate if ``nodes`` blocks ``w``, else ``None``."""
    return make_certificate(g, nodes, w) if is_blocking(g, nodes, w) else None


@dataclass(frozen=True)
class CohesionVerdict:
    status: Status
    method: Method
    certificate: BlockingCertificate | None = None
    note: str = ""

    def __post_init__(self):
        if self.status is Status.NOT_COHESIVE and self.certificate is None:
            raise ValueError("a NotCohesive verdict needs a certificate")

    @property
    def cohesive(self) -> bool:
        return self.status is Status.COHESIVE

    def to_dict(self, g: Graph | None = None) -> dict:
        out = {"status": self.status.value, "method": self.method.value}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict(g)
        if self.note:
            out["note"] = self.note
        return out

    def to_json(self, g: Graph | None = None) -> str:
        return json.dumps(self.to_dict(g))


# -- tie counts ------------------------------------------------------------------

@dataclass(frozen=True)
class TieCounts:
    """Present/absent ties of ``u`` inside and outside ``S`` within an ambient set.

    ``ein`` counts ``u`` itself as an absent tie.
    """

    fin: int
    fout: int
    ein: int
    eout: int


def tie_counts(g: Graph, u: int, nodes: Iterable[int] | int, ambient: Iterable[int] | int | None = None) -> TieCounts:
    s = to_mask(nodes)
    amb = g.all_nodes if ambient is None else to_mask(ambient)
    if not s >> u & 1:
        raise GraphError(f"node {u} is not in the given set")
    if s & ~amb:
        raise GraphError("the set is not contained in the ambient set")
    outside = amb & ~s
    fin = popcount(g.adj[u] & s)
    fout = popcount(g.adj[u] & outside)
    ein = popcount(s) - fin
    eout = popcount(outside) - fout
    return TieCounts(fin, fout, ein, eout)


def gamma(g: Graph, u: int, nodes: Iterable[int] | int) -> int:
    t = tie_counts(g, u, nodes)
    return t.fin * t.eout - t.fout * t.ein


def blocks_grand(g: Graph, nodes: Iterable[int] | int) -> bool:
    """Whether ``nodes`` blocks the grand coalition, via the sign of gamma."""
    s = to_mask(nodes)
    return bool(s) and all(gamma(g, u, s) > 0 for u in iter_bits(s))


# -- exhaustive search -------------------------------------------------------------

# A condition gets (node, fin, size) as ints or equally shaped int64 arrays and
# says whether a member with ``fin`` neighbours in a set of ``size`` nodes is
# strictly better off there.  It must be monotone non-decreasing in ``fin``.
Condition = Callable[[int, object, object], object]

_CHUNK_BITS = 20


def _peel(g: Graph, cand: int, size: int, cond: Condition) -> int:
    """Drop nodes that cannot be in any blocking set of ``size`` inside ``cand``."""
    changed = True
    while changed and popcount(cand) >= size:
        changed = False
        for u in iter_bits(cand):
            if not cond(u, min(popcount(g.adj[u] & cand), size - 1), size):
                cand &= ~(1 << u)
                changed = True
    return cand if popcount(cand) >= size else 0


_SUBSET_TABLE_BITS = 20


@functools.lru_cache(maxsize=None)
def _subsets_by_size(k: int) -> tuple[np.ndarray, ...]:
    """Integers below ``2**k`` grouped by popcount, each group ascending."""
    idx = np.arange(1 << k, dtype=np.uint32)
    pc = np.bitwise_count(idx)
    order = np.argsort(pc, kind="stable")
    bounds = np.searchsorted(pc[order], np.arange(k + 2))
    return tuple(idx[order[bounds[h]:bounds[h + 1]]].astype(np.uint64) for h in range(k + 1))


def _deposit(idx: np.ndarray, bits: Sequence[int]) -> np.ndarray:
    """Map bit ``j`` of each index to bit ``bits[j]`` (order preserving)."""
    masks = np.zeros(idx.shape, dtype=np.uint64)
    for j, u in enumerate(bits):
        masks |= ((idx >> np.uint64(j)) & np.uint64(1)) << np.uint64(u)
    return masks


def _check(g: Graph, masks: np.ndarray, bits: Sequence[int], size, cond: Condition) -> np.ndarray:
    within = to_mask(bits)
    ok = np.ones(masks.shape, dtype=bool)
    for u in bits:
        member = ((masks >> np.uint64(u)) & np.uint64(1)).astype(bool)
        fin = np.bitwise_count(masks & np.uint64(g.adj[u] & within)).astype(np.int64)
        ok &= ~member | cond(u, fin, size)
    return ok


def search_blocking(g: Graph, cond: Condition, candidates: int | None = None,
                    max_size: int | None = None) -> int | None:
    """Exhaustive search for a set ``H`` with ``cond`` true for all members.

    Returns the first blocking mask in (size, mask value) order, or ``None``.
    The first such set is always connected: a component of a disconnected
    blocking set blocks too and is smaller.
    """
    cand = g.all_nodes if candidates is None else candidates
    top = popcount(cand) if max_size is None else min(max_size, popcount(cand))
    per_size = {h: _peel(g, cand, h, cond) for h in range(2, top + 1)}
    per_size = {h: c for h, c in per_size.items() if c}
    if not per_size:
        return None
    if max(c.bit_length() for c in per_size.values()) > 64:
        raise ExactCapExceeded(f"exhaustive search needs candidate node ids below 64, got n={g.n}")
    if max(popcount(c) for c in per_size.values()) <= _SUBSET_TABLE_BITS:
        for h, c in sorted(per_size.items()):
            bits = list(iter_bits(c))
            masks = _deposit(_subsets_by_size(len(bits))[h], bits)
            hits = masks[_check(g, masks, bits, h, cond)]
            if hits.size:
                return int(hits.min())
        return None
    union = 0
    for c in per_size.values():
        union |= c
    bits = list(iter_bits(union))
    k = len(bits)
    best: int | None = None
    best_size = top + 1
    chunk = 1 << min(k, _CHUNK_BITS)
    for lo in range(0, 1 << k, chunk):
        idx = np.arange(lo, lo + chunk, dtype=np.uint64)
        masks = _deposit(idx, bits)
        size = np.bitwise_count(idx).astype(np.int64)
        ok = (size >= 2) & (size <= top) & _check(g, masks, bits, size, cond)
        hits = np.flatnonzero(ok)
        if hits.size:
            hs = size[hits]
            m = int(hs.min())
            first = int(masks[hits[hs == m]].min())
            if m < best_size or (m == best_size and first < best):
                best_size, best = m, first
    return best


def structure_condition(g: Graph, w: GroupStructure) -> Condition:
    """Condition ``fin / size > rho_W(u)`` for a structure ``w``."""
    pay = payoffs(g, w)
    num = [p.numerator for p in pay]
    den = [p.denominator for p in pay]

    def cond(u, fin, size):
        return fin * den[u] > num[u] * size

    return cond


def grand_condition(g: Graph) -> Condition:
    """Condition ``gamma(u, S) > 0`` relative to the whole node set."""
    n = g.n
    deg = g.degrees()

    def cond(u, fin, size):
        fout = deg[u] - fin
        ein = size - fin
        eout = n - size - fout
        return fin * eout - fout * ein > 0

    return cond


def find_blocking_set(g: Graph, w: GroupStructure, size_cap: int | None = None) -> BlockingCertificate | None:
    """First blocking set of ``w`` in (size, mask) order, or ``None`` if none exists
    up to ``size_cap``."""
    hit = search_blocking(g, structure_condition(g, w), max_size=size_cap)
    return None if hit is None else make_certificate(g, hit, w)


def is_core_stable(g: Graph, w: GroupStructure) -> CohesionVerdict:
    cert = find_blocking_set(g, w)
    if cert is None:
        return CohesionVerdict(Status.COHESIVE, Method.EXACT)
    return CohesionVerdict(Status.NOT_COHESIVE, Method.EXACT, cert)


def find_grand_blocking_set(g: Graph, max_size: int | None = None) -> int | None:
    return search_blocking(g, grand_condition(g), max_size=max_size)


# -- cohesion ------------------------------------------------------------------------

def quick_rejection(g: Graph, structural: bool = True) -> CohesionVerdict | None:
    """Cheap sufficient tests for non-cohesion; ``None`` when none applies."""
    n = g.n
    grand = GroupStructure.grand(n)
    if n <= 1 or g.num_edges == 0:
        return None
    deg = g.degrees()
    # a component with edges blocks whenever it is not everything
    comps = components(g)
    if len(comps) > 1:
        for c in comps:
            if popcount(c) > 1:
                return CohesionVerdict(Status.NOT_COHESIVE, Method.QUICK_TEST,
                                       make_certificate(g, c, grand), "disconnected")
    if n > 2 * max(deg):
        u, v = g.edges()[0]
        return CohesionVerdict(Status.NOT_COHESIVE, Method.QUICK_TEST,
                               make_certificate(g, (u, v), grand), "size exceeds twice the maximum degree")
    for u, v in g.edges():
        if 2 * deg[u] < n and 2 * deg[v] < n:
            return CohesionVerdict(Status.NOT_COHESIVE, Method.QUICK_TEST,
                                   make_certificate(g, (u, v), grand), "edge of two low-popularity nodes")
    if structural and n >= 3 and not g.is_complete():
        from .characterizations import structural_certificate

        cert = structural_certificate(g)
        if cert is not None:
            return CohesionVerdict(Status.NOT_COHESIVE, Method.QUICK_TEST,
                                   make_certificate(g, cert, grand), "structural cohesion test")
    return None


def is_socially_cohesive(g: Graph, exact_cap: int | None = DEFAULT_EXACT_CAP,
                         quick: bool = True, structural: bool = True) -> CohesionVerdict:
    """Exact decision whether the grand coalition of ``g`` is core stable.

    Quick rejections run first; the exhaustive search refuses graphs larger
    than ``exact_cap`` (``None`` disables the cap).
    """
    if quick:
        verdict = quick_rejection(g, structural=structural)
        if verdict is not None:
            return verdict
    if exact_cap is not None and g.n > exact_cap:
        raise ExactCapExceeded(f"n={g.n} exceeds the exact cap {exact_cap}")
    hit = find_grand_blocking_set(g)
    if hit is None:
        return CohesionVerdict(Status.COHESIVE, Method.EXACT)
    return CohesionVerdict(Status.NOT_COHESIVE, Method.EXACT,
                           make_certificate(g, hit, GroupStructure.grand(g.n)))


def quick_cohesion(g: Graph) -> CohesionVerdict:
    """Quick tests only: ``NotCohesive`` or ``Inconclusive``."""
    verdict = quick_rejection(g)
    return verdict if verdict is not None else CohesionVerdict(Status.INCONCLUSIVE, Method.QUICK_TEST)


def all_partitions(items: Sequence[int]):
    """Every set partition of ``items`` (restricted growth order)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in all_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
