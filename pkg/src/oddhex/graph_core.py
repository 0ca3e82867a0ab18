"""Immutable bipartite graph representation, parsing, and path helpers.

Vertices are dense integers ``0 .. n-1``.  Every graph carries a certified
2-coloring; construction fails with :class:`NotBipartite` (including an
odd-cycle witness) if none exists.  The coloring is canonical: in each
connected component the lowest-numbered vertex is colored Left.
"""

from __future__ import annotations

import enum
import hashlib
from collections import deque
from typing import Iterable, Optional, Sequence, Tuple

LEFT = 0
RIGHT = 1

Path = Tuple[int, ...]


class GraphError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInput(GraphError):
    """The input text could not be parsed."""


class LoopOrMultiEdge(GraphError):
    """The edge list contains a loop or a repeated edge."""


class NotBipartite(GraphError):
    """The graph has no 2-coloring.  ``odd_cycle`` is a witness cycle."""

    def __init__(self, odd_cycle: Sequence[int]):
        super().__init__("graph is not bipartite; odd cycle %s" % (list(odd_cycle),))
        self.odd_cycle: Path = tuple(odd_cycle)


class InvalidHighlight(GraphError):
    """A hex passed to emit_dot does not fit the graph."""


class Parity(enum.Enum):
    EVEN = 0
    ODD = 1


class BipartiteGraph:
    """A finite simple bipartite graph with a canonical 2-coloring.

    Instances are immutable after construction and safe to share between
    threads.  ``adj[v]`` is a sorted tuple of neighbors; ``color[v]`` is
    LEFT or RIGHT.
    """

    __slots__ = ("n", "edges", "adj", "color", "_hash_cache")

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]]):
        seen = set()
        for u, v in edges:
            if not (isinstance(u, int) and isinstance(v, int)):
                raise MalformedInput("vertex ids must be integers")
            if u < 0 or v < 0 or u >= n or v >= n:
                raise MalformedInput(
                    "edge (%r, %r) out of range for n=%d" % (u, v, n)
                )
            if u == v:
                raise LoopOrMultiEdge("loop at vertex %d" % u)
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise LoopOrMultiEdge("repeated edge %r" % (key,))
            seen.add(key)
        self.n = n
        self.edges = frozenset(seen)
        adj = [[] for _ in range(n)]
        for u, v in sorted(seen):
            adj[u].append(v)
            adj[v].append(u)
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self.color = self._two_color()
        self._hash_cache: Optional[str] = None

    def _two_color(self) -> Tuple[int, ...]:
        color = [-1] * self.n
        parent = [-1] * self.n
        for root in range(self.n):
            if color[root] >= 0:
                continue
            color[root] = LEFT
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if color[w] < 0:
                        color[w] = color[u] ^ 1
                        parent[w] = u
                        queue.append(w)
                    elif color[w] == color[u]:
                        raise NotBipartite(_odd_cycle_witness(u, w, parent))
        return tuple(color)

    # -- queries ---------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adj[v]

    def left_vertices(self) -> Tuple[int, ...]:
        return tuple(v for v in range(self.n) if self.color[v] == LEFT)

    def right_vertices(self) -> Tuple[int, ...]:
        return tuple(v for v in range(self.n) if self.color[v] == RIGHT)

    def same_color(self, u: int, v: int) -> bool:
        return self.color[u] == self.color[v]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BipartiteGraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return "BipartiteGraph(n=%d, m=%d)" % (self.n, len(self.edges))


def _odd_cycle_witness(u: int, w: int, parent: Sequence[int]) -> Path:
    """Reconstruct an odd cycle from the BFS clash edge (u, w)."""
    anc_u = [u]
    while parent[anc_u[-1]] >= 0:
        anc_u.append(parent[anc_u[-1]])
    pos = {v: i for i, v in enumerate(anc_u)}
    walk_w = [w]
    while walk_w[-1] not in pos:
        walk_w.append(parent[walk_w[-1]])
    meet = walk_w[-1]
    cycle = anc_u[: pos[meet] + 1] + walk_w[-2::-1]
    return tuple(cycle)


# -- parsing and emission --------------------------------------------------


def parse_edge_list(text: str) -> BipartiteGraph:
    """Parse whitespace-separated "u v" lines into a bipartite graph.

    ``#`` starts a comment.  An optional leading "n m" header is
    recognized when its second number equals the count of the lines that
    follow and every following vertex id is below its first number; this
    keeps a bare edge like "0 3" unambiguous while letting emitters
    declare isolated vertices.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedInput(
                "line %d: expected two integers, got %r" % (lineno, raw)
            )
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise MalformedInput(
                "line %d: expected two integers, got %r" % (lineno, raw)
            ) from None
    if not rows:
        raise MalformedInput("no edges in input")

    header: Optional[Tuple[int, int]] = None
    first_n, first_m = rows[0]
    body = rows[1:]
    if first_m == len(body) and body and all(
        0 <= u < first_n and 0 <= v < first_n for u, v in body
    ):
        header = (first_n, first_m)
        rows = body

    if header is not None:
        return BipartiteGraph(header[0], rows)
    if any(u < 0 or v < 0 for u, v in rows):
        raise MalformedInput("negative vertex id")
    n = 1 + max(max(u, v) for u, v in rows)
    return BipartiteGraph(n, rows)


def emit_edge_list(g: BipartiteGraph) -> str:
    """Canonical edge-list text: "n m" header then sorted edges."""
    lines = ["%d %d" % (g.n, len(g.edges))]
    lines.extend("%d %d" % e for e in sorted(g.edges))
    return "\n".join(lines) + "\n"


def parse_graph6(text: str) -> BipartiteGraph:
    """Parse a graph6 string (optionally with the ">>graph6<<" prefix)."""
    import networkx as nx

    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    if not data:
        raise MalformedInput("empty graph6 input")
    try:
        nxg = nx.from_graph6_bytes(data.encode("ascii"))
    except (nx.NetworkXError, ValueError, UnicodeEncodeError) as exc:
        raise MalformedInput("bad graph6 data: %s" % exc) from None
    return BipartiteGraph(nxg.number_of_nodes(), list(nxg.edges()))


def emit_graph6(g: BipartiteGraph) -> str:
    import networkx as nx

    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(sorted(g.edges))
    return nx.to_graph6_bytes(nxg, header=False).decode("ascii").strip()


def graph_hash(g: BipartiteGraph) -> str:
    """sha256 of the canonical edge-list serialization."""
    if g._hash_cache is None:
        digest = hashlib.sha256(emit_edge_list(g).encode("ascii")).hexdigest()
        g._hash_cache = digest
    return g._hash_cache


def emit_dot(g: BipartiteGraph, highlight=None) -> str:
    """Render the graph as DOT text, optionally highlighting a hex.

    ``highlight`` is any object with ``feet`` (6 vertex ids) and
    ``segments`` (3x3 nested paths); feet are drawn double-circled and
    segment edges red.  Output is deterministic.
    """
    feet = ()
    hex_edges = set()
    if highlight is not None:
        feet = tuple(highlight.feet)
        if len(feet) != 6 or len(set(feet)) != 6:
            raise InvalidHighlight("highlight needs 6 distinct feet")
        for v in feet:
            if not (0 <= v < g.n):
                raise InvalidHighlight("foot %r not a vertex of the graph" % (v,))
        for row in highlight.segments:
            for seg in row:
                for u, w in zip(seg, seg[1:]):
                    if not g.has_edge(u, w):
                        raise InvalidHighlight(
                            "segment edge (%d, %d) not in graph" % (u, w)
                        )
                    hex_edges.add((u, w) if u < w else (w, u))
    lines = ["graph G {"]
    for v in range(g.n):
        attrs = ["label=\"%d\"" % v]
        attrs.append("shape=%s" % ("box" if g.color[v] == LEFT else "ellipse"))
        if v in feet:
            attrs.append("peripheries=2")
        lines.append("  %d [%s];" % (v, ", ".join(attrs)))
    for u, w in sorted(g.edges):
        if (u, w) in hex_edges:
            lines.append("  %d -- %d [color=red, penwidth=2];" % (u, w))
        else:
            lines.append("  %d -- %d;" % (u, w))
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- path helpers ----------------------------------------------------------


def is_path_in(g: BipartiteGraph, p: Sequence[int]) -> bool:
    """True iff p is a simple path whose edges all exist in g."""
    if len(p) == 0 or len(set(p)) != len(p):
        return False
    return all(g.has_edge(u, v) for u, v in zip(p, p[1:]))


def path_parity(p: Sequence[int]) -> Parity:
    """Parity of the edge count of a path."""
    if len(p) == 0:
        raise MalformedInput("empty path has no parity")
    return Parity.ODD if (len(p) - 1) % 2 == 1 else Parity.EVEN


def subpath(p: Sequence[int], x: int, y: int) -> Path:
    """The portion of p from x to y, oriented from x to y.

    Both endpoints must lie on p.  The result runs against p's stored
    direction when x appears after y.
    """
    try:
        i, j = p.index(x), p.index(y)
    except ValueError:
        raise ValueError("subpath endpoints %r, %r not on path %r" % (x, y, list(p)))
    if i <= j:
        return tuple(p[i : j + 1])
    return tuple(p[j : i + 1][::-1])


def splice(*pieces: Sequence[int]) -> Path:
    """Concatenate path pieces that overlap by one vertex at each joint.

    ``splice((a,b,c), (c,d))`` is ``(a,b,c,d)``.  Raises ValueError when a
    joint does not match or the result repeats a vertex.
    """
    out = []
    for piece in pieces:
        if not piece:
            raise ValueError("empty piece in splice")
        if not out:
            out.extend(piece)
            continue
        if out[-1] != piece[0]:
            raise ValueError(
                "splice joint mismatch: %r then %r" % (out[-1], piece[0])
            )
        out.extend(piece[1:])
    if len(set(out)) != len(out):
        raise ValueError("splice result repeats a vertex: %r" % (out,))
    return tuple(out)
