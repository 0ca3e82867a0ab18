"""Initial hex discovery, plus the planarity gate in front of it.

find_hex tries colour-split foot triples first: in a bipartite host a
segment is odd exactly when its ends differ in colour, so a hex whose
feet split three-and-three across the classes is born all-odd and the
improvement machinery has nothing left to do.  Mixed-feet patterns are
scanned afterwards for completeness.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Dict, Optional, Tuple

import networkx as nx

from .graph_core import BipartiteGraph, GraphError
from .hexes import Hex, hex_from_edges
from .routing import route_hex_segments


class PlanarInput(GraphError):
    """The graph is planar; carries a rotation-system embedding."""

    def __init__(self, embedding: Dict[int, Tuple[int, ...]]):
        super().__init__("input graph is planar")
        self.embedding = embedding


class SearchExhausted(GraphError):
    """No hex found although the graph is non-planar; with the stated
    preconditions this indicates a defect, not a property of the input."""


class SearchCancelled(GraphError):
    """The caller's cancellation token fired."""


def is_planar(g: BipartiteGraph) -> Optional[Dict[int, Tuple[int, ...]]]:
    """A rotation system (vertex -> clockwise neighbour tuple) when the
    graph is planar, else None.  Deterministic for a fixed graph."""
    gx = nx.Graph()
    gx.add_nodes_from(range(g.n))
    gx.add_edges_from(sorted(g.edges))
    ok, emb = nx.check_planarity(gx)
    if not ok:
        return None
    data = emb.get_data()
    return {v: tuple(data.get(v, ())) for v in range(g.n)}


def find_hex(g: BipartiteGraph,
             cancel: Optional[Callable[[], bool]] = None) -> Hex:
    """The lexicographically first hex of g.

    Raises PlanarInput (with embedding) on planar graphs, and
    SearchExhausted when no foot pattern routes -- which the supported
    preconditions (bipartite, 3-connected, non-planar) rule out.
    ``cancel`` is polled between foot choices.
    """
    emb = is_planar(g)
    if emb is not None:
        raise PlanarInput(emb)

    left = tuple(v for v in range(g.n) if g.color[v] == 0)
    right = tuple(v for v in range(g.n) if g.color[v] == 1)

    def attempt(t1, t2) -> Optional[Hex]:
        if cancel is not None and cancel():
            raise SearchCancelled("find_hex cancelled")
        segs = route_hex_segments(g, t1, t2)
        if segs is None:
            return None
        edges = set()
        for p in segs:
            edges.update((min(a, b), max(a, b)) for a, b in zip(p, p[1:]))
        return hex_from_edges(g, edges)

    split_pairs = set()
    for t1 in combinations(left, 3):
        for t2 in combinations(right, 3):
            a, b = (t1, t2) if min(t1) < min(t2) else (t2, t1)
            split_pairs.add((a, b))
            found = attempt(a, b)
            if found is not None:
                return found

    verts = range(g.n)
    for t1 in combinations(verts, 3):
        rest = [v for v in verts if v not in t1 and v > t1[0]]
        for t2 in combinations(rest, 3):
            if (t1, t2) in split_pairs:
                continue
            found = attempt(t1, t2)
            if found is not None:
                return found
    raise SearchExhausted("non-planar graph yielded no hex; "
                          "preconditions were likely violated")
