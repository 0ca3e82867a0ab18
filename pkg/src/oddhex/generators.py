"""Named instances and seeded random generation of admissible inputs.

The test corpus needs two kinds of graphs: small named graphs with known
properties (complete bipartite graphs, the 3-cube, the Heawood graph, grids,
subdivisions of K33) and reproducible random graphs that satisfy the search
preconditions (bipartite, internally 4-connected, non-planar).

Random generation is seeded rejection sampling: draw a balanced random
bipartite graph edge by edge, repair vertices of degree below three, and
accept the draw only if it passes the internal-4-connectivity check and
fails the planarity check.  The generator is deterministic for a fixed
``(n, seed)`` pair on any platform because it draws exclusively from
:class:`SplitMix64`, a fixed, documented 64-bit generator.
"""

from __future__ import annotations

from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .connectivity import is_internally_4_connected
from .graph_core import BipartiteGraph, GraphError, NotBipartite
from .seed import is_planar

__all__ = [
    "FAMILIES",
    "BadParameters",
    "GaveUp",
    "SplitMix64",
    "named",
    "random_instance",
]


class BadParameters(GraphError):
    """A named-family request with invalid or missing parameters."""


class GaveUp(GraphError):
    """Rejection sampling exhausted its attempt budget.

    The message reports how many attempts ran and why each was rejected,
    so callers can tell "unlucky" apart from "parameters cannot work".
    """


MASK64 = (1 << 64) - 1


class SplitMix64:
    """Deterministic 64-bit generator (SplitMix64).

    State advances by the additive constant 0x9E3779B97F4A7C15; each output
    mixes the state with xor-shift/multiply rounds using the constants
    0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.  The stream for a given seed
    is identical on every platform, which keeps generated corpora and their
    certificates reproducible.
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound), by rejection (no modulo bias)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        threshold = (MASK64 + 1) - ((MASK64 + 1) % bound)
        while True:
            draw = self.next_u64()
            if draw < threshold:
                return draw % bound

    def chance(self, numerator: int, denominator: int) -> bool:
        """True with probability numerator/denominator."""
        return self.below(denominator) < numerator


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------


def _complete_bipartite(a: int, b: int) -> BipartiteGraph:
    return BipartiteGraph(
        a + b, [(i, a + j) for i in range(a) for j in range(b)]
    )


def _k33() -> BipartiteGraph:
    return _complete_bipartite(3, 3)


def _k44() -> BipartiteGraph:
    return _complete_bipartite(4, 4)


def _k55m() -> BipartiteGraph:
    """K55 minus a perfect matching (the matching joins i to 5 + i)."""
    edges = [(i, 5 + j) for i in range(5) for j in range(5) if i != j]
    return BipartiteGraph(10, edges)


def _q3() -> BipartiteGraph:
    """The 3-cube: vertices are 3-bit strings, edges flip one bit."""
    edges = []
    for i in range(8):
        for bit in (1, 2, 4):
            j = i ^ bit
            if i < j:
                edges.append((i, j))
    return BipartiteGraph(8, edges)


def _heawood() -> BipartiteGraph:
    """14-cycle 0..13 plus the chords (i, i+5 mod 14) for even i."""
    edges = [(i, (i + 1) % 14) for i in range(14)]
    edges += [(i, (i + 5) % 14) for i in range(0, 14, 2)]
    return BipartiteGraph(14, edges)


def _grid(w: int, h: int) -> BipartiteGraph:
    if w < 1 or h < 1:
        raise BadParameters("grid needs w >= 1 and h >= 1, got %r x %r" % (w, h))
    if w * h < 2:
        raise BadParameters("grid needs at least two vertices")
    edges = []
    for y in range(h):
        for x in range(w):
            v = y * w + x
            if x + 1 < w:
                edges.append((v, v + 1))
            if y + 1 < h:
                edges.append((v, v + w))
    return BipartiteGraph(w * h, edges)


def _subdivided_k33(parities: Sequence[Sequence[int]]) -> BipartiteGraph:
    """K33 with edge (i, 3+j) replaced by a path with parities[i][j] interior
    vertices.

    Branch vertices keep labels 0..5 (0,1,2 on one side, 3,4,5 on the other);
    interior vertices are numbered consecutively from 6, edge by edge in
    (i, j) order.  The counts' parity pattern must admit a two-coloring:
    a segment with an even count keeps its endpoints in opposite classes,
    an odd count forces them into the same class, and the nine constraints
    must be simultaneously satisfiable.
    """
    rows = list(parities)
    if len(rows) != 3 or any(len(row) != 3 for row in rows):
        raise BadParameters("subdivided_k33 needs a 3x3 matrix of counts")
    counts = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            c = rows[i][j]
            if not isinstance(c, int) or c < 0:
                raise BadParameters(
                    "subdivision counts must be integers >= 0, got %r" % (c,)
                )
            counts[i][j] = c
    # Two-colorability of the subdivision depends only on count parities:
    # every 2x2 sub-pattern must have an even number of odd counts.
    for i in range(1, 3):
        for j in range(1, 3):
            fold = (
                counts[0][0] + counts[0][j] + counts[i][0] + counts[i][j]
            )
            if fold % 2:
                raise BadParameters(
                    "count parities admit no two-coloring "
                    "(inconsistent 2x2 pattern at rows {0,%d} x cols {0,%d})"
                    % (i, j)
                )
    edges: List[Tuple[int, int]] = []
    nxt = 6
    for i in range(3):
        for j in range(3):
            chain = [i] + list(range(nxt, nxt + counts[i][j])) + [3 + j]
            nxt += counts[i][j]
            edges.extend(zip(chain, chain[1:]))
    return BipartiteGraph(nxt, edges)


FAMILIES: Tuple[str, ...] = (
    "k33",
    "k44",
    "k55m",
    "q3",
    "heawood",
    "grid",
    "subdivided_k33",
)


def named(
    family: str,
    w: Optional[int] = None,
    h: Optional[int] = None,
    parities: Optional[Sequence[Sequence[int]]] = None,
) -> BipartiteGraph:
    """Build a named graph with canonical labeling.

    ``grid`` requires ``w`` and ``h``; ``subdivided_k33`` requires
    ``parities`` (a 3x3 matrix of subdivision counts).  The other families
    take no parameters.
    """
    if family == "grid":
        if w is None or h is None:
            raise BadParameters("grid requires w and h")
        return _grid(w, h)
    if family == "subdivided_k33":
        if parities is None:
            raise BadParameters("subdivided_k33 requires a 3x3 parities matrix")
        return _subdivided_k33(parities)
    if w is not None or h is not None or parities is not None:
        raise BadParameters("family %r takes no parameters" % (family,))
    simple = {
        "k33": _k33,
        "k44": _k44,
        "k55m": _k55m,
        "q3": _q3,
        "heawood": _heawood,
    }
    try:
        build = simple[family]
    except KeyError:
        raise BadParameters(
            "unknown family %r (choose from %s)"
            % (family, ", ".join(FAMILIES))
        ) from None
    return build()


# ---------------------------------------------------------------------------
# Seeded random instances
# ---------------------------------------------------------------------------


def _sample_candidate(n: int, rng: SplitMix64) -> BipartiteGraph:
    """One balanced random bipartite draw with min-degree-3 repair."""
    half = n // 2
    # Edge probability: aim for expected degree about four on small inputs
    # without saturating large ones.  Expressed as a fraction of 1000 so the
    # draw stays in integers (platform-independent).
    per_mille = min(1000, max(120, (4000 + half - 1) // half))
    edges = set()
    for i in range(half):
        for j in range(half, n):
            if rng.chance(per_mille, 1000):
                edges.add((i, j))
    adj: Dict[int, set] = {v: set() for v in range(n)}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    # Repair: every vertex must reach degree >= 3 (possible since half >= 3).
    for v in range(n):
        others = (
            list(range(half, n)) if v < half else list(range(half))
        )
        missing = [u for u in others if u not in adj[v]]
        while len(adj[v]) < 3 and missing:
            u = missing.pop(rng.below(len(missing)))
            adj[v].add(u)
            adj[u].add(v)
            edges.add((v, u) if v < u else (u, v))
    return BipartiteGraph(n, edges)


def random_instance(
    n: int, seed: int, attempts: int = 64
) -> BipartiteGraph:
    """Seeded random bipartite, internally 4-connected, non-planar graph.

    Rejection sampling: each attempt draws a balanced bipartite graph
    (parts 0..n/2-1 and n/2..n-1), repairs vertices below degree three,
    and accepts iff the graph is internally 4-connected and non-planar.
    Identical ``(n, seed)`` always produces the identical graph, regardless
    of how many attempts earlier draws consumed.

    Raises :class:`BadParameters` for odd or too-small ``n`` and
    :class:`GaveUp` (with acceptance statistics in the message) when no
    attempt is accepted.
    """
    if n < 6:
        raise BadParameters("need n >= 6, got %d" % n)
    if n % 2:
        raise BadParameters("n must be even, got %d" % n)
    if attempts < 1:
        raise BadParameters("attempts must be >= 1, got %d" % attempts)
    rng = SplitMix64(seed)
    rejected_planar = 0
    rejected_connectivity = 0
    for _ in range(attempts):
        g = _sample_candidate(n, rng)
        if is_internally_4_connected(g) is not True:
            rejected_connectivity += 1
            continue
        if is_planar(g) is not None:
            rejected_planar += 1
            continue
        return g
    raise GaveUp(
        "no acceptable graph in %d attempts for n=%d seed=%d "
        "(rejected: %d not internally 4-connected, %d planar)"
        % (attempts, n, seed, rejected_connectivity, rejected_planar)
    )
