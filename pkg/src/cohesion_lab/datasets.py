"""Small real-world networks.

Zachary's karate club ships with networkx. The other datasets are not
redistributed; drop ``<name>.edges`` (whitespace edge list) or ``<name>.gml``
into the directory named by ``COHESION_LAB_DATA`` to enable them.
"""

from __future__ import annotations

import os
from pathlib import Path

import networkx as nx

from .graph import Graph, read_edge_list

DATA_ENV = "COHESION_LAB_DATA"

# (N, E) of the largest connected component
KNOWN_SIZES = {
    "karate": (34, 78),
    "dolphins": (62, 159),
    "football": (115, 613),
}

SOURCES = {
    "karate": "networkx.karate_club_graph()",
    "dolphins": "http://www-personal.umich.edu/~mejn/netdata/dolphins.zip",
    "football": "http://www-personal.umich.edu/~mejn/netdata/football.zip",
}


class DatasetUnavailable(FileNotFoundError):
    pass


def data_dir() -> Path | None:
    d = os.environ.get(DATA_ENV)
    return Path(d) if d else None


def _find(name: str) -> Path | None:
    d = data_dir()
    if d is None:
        return None
    for suffix in (".edges", ".txt", ".gml"):
        p = d / f"{name}{suffix}"
        if p.exists():
            return p
    return None


def available(name: str) -> bool:
    return name == "karate" or _find(name) is not None


def load(name: str) -> Graph:
    """Load a dataset by name; raises :class:`DatasetUnavailable` if the file is missing."""
    if name == "karate":
        return Graph.from_networkx(nx.karate_club_graph())
    path = _find(name)
    if path is None:
        raise DatasetUnavailable(f"{name}: set {DATA_ENV} to a directory holding {name}.edges or {name}.gml "
                                 f"(source: {SOURCES.get(name, 'unknown')})")
    if path.suffix == ".gml":
        return Graph.from_networkx(nx.read_gml(path, label=None))
    return read_edge_list(path)
