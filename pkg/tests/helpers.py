"""Shared builders for the test suite.

Hosts used across files:

* the named families from ``oddhex.generators``;
* cubic circulants ``circulant(n, k)`` (an even cycle plus the chords
  (i, i+k mod n) for even i, with k odd) — bipartite, 3-regular,
  internally 4-connected and non-planar for the sizes used here, and the
  richest known source of low-odd-count hexes;
* bipartite generalized Petersen graphs ``gen_petersen(n, k)`` (n even,
  k odd) with the same virtues;
* ``glued_k33s()``, two K33's sharing three vertices — 3-connected but
  not internally 4-connected (the canonical Separation witness).

``sample_tripods`` draws valid three-path stars with escape sets from a
host, deterministically from a SplitMix64 stream.
"""

from __future__ import annotations

from typing import Iterator, List, Optional, Tuple

from oddhex.connectivity import NoFan, class_fan
from oddhex.extensions import TriPod
from oddhex.generators import SplitMix64, named
from oddhex.graph_core import BipartiteGraph
from oddhex.oracle import validate_tripod

_cache = {}


def host(name: str) -> BipartiteGraph:
    """Cached named graph."""
    if name not in _cache:
        _cache[name] = named(name)
    return _cache[name]


def circulant(n: int, k: int) -> BipartiteGraph:
    """Even cycle 0..n-1 plus chords (i, i+k mod n) for even i (k odd)."""
    assert n % 2 == 0 and k % 2 == 1
    edges = {(i, (i + 1) % n) for i in range(n)}
    edges |= {(i, (i + k) % n) for i in range(0, n, 2)}
    return BipartiteGraph(n, {(min(u, v), max(u, v)) for u, v in edges})


def gen_petersen(n: int, k: int) -> BipartiteGraph:
    """Generalized Petersen graph GP(n, k); bipartite iff n even, k odd.

    Outer cycle 0..n-1, inner vertices n..2n-1, spokes i -- n+i, inner
    edges n+i -- n+((i+k) mod n).
    """
    assert n % 2 == 0 and k % 2 == 1
    edges = {(i, (i + 1) % n) for i in range(n)}
    edges |= {(i, n + i) for i in range(n)}
    edges |= {(n + i, n + ((i + k) % n)) for i in range(n)}
    return BipartiteGraph(2 * n, {(min(u, v), max(u, v)) for u, v in edges})


def glued_k33s() -> BipartiteGraph:
    """Two K33's glued on the three vertices 3, 4, 5 (9 vertices total)."""
    edges = [(i, j) for i in (0, 1, 2) for j in (3, 4, 5)]
    edges += [(i, j) for i in (6, 7, 8) for j in (3, 4, 5)]
    return BipartiteGraph(9, edges)


def cubic_hosts(max_n: int = 24) -> List[Tuple[str, BipartiteGraph]]:
    """The cubic stress hosts with at most max_n vertices."""
    out = []
    for n, k in ((10, 3), (12, 5), (14, 5), (16, 5), (16, 7), (18, 5),
                 (18, 7), (20, 7), (22, 9), (24, 7)):
        if n <= max_n:
            out.append(("C%d(1,%d)" % (n, k), circulant(n, k)))
    for n, k in ((6, 3), (8, 3), (10, 3), (12, 5)):
        if 2 * n <= max_n:
            out.append(("GP(%d,%d)" % (n, k), gen_petersen(n, k)))
    return out


def sample_tripods(
    g: BipartiteGraph,
    seed: int,
    count: int,
    max_x: int = 4,
) -> Iterator[Tuple[TriPod, frozenset]]:
    """Up to ``count`` valid (tripod, escape set) pairs, deterministically.

    Anchors are drawn at random (a in the centre's class, b and c in the
    other), legs come from a disjoint-path fan, and the escape set is a
    random 2..max_x-vertex subset of what the star leaves free.  Draws
    that admit no fan or leave fewer than two free vertices are skipped.
    """
    rng = SplitMix64(seed)
    produced = 0
    budget = count * 60
    while produced < count and budget > 0:
        budget -= 1
        v = rng.below(g.n)
        same = [u for u in range(g.n) if g.color[u] == g.color[v] and u != v]
        other = [u for u in range(g.n) if g.color[u] != g.color[v]]
        if not same or len(other) < 2:
            continue
        a = same[rng.below(len(same))]
        b = other[rng.below(len(other))]
        c = other[rng.below(len(other))]
        if c == b:
            continue
        try:
            p1, p2, p3 = class_fan(g, v, [{a}, {b}, {c}])
        except NoFan:
            continue
        t = TriPod(v=v, a=a, b=b, c=c, p1=p1, p2=p2, p3=p3)
        free = sorted(set(range(g.n)) - t.vertices())
        if len(free) < 2:
            continue
        want = 2 + rng.below(max_x - 1)
        xs = set()
        while free and len(xs) < want:
            xs.add(free.pop(rng.below(len(free))))
        if len(xs) < 2:
            continue
        xs = frozenset(xs)
        if validate_tripod(g, t, xs):
            continue
        produced += 1
        yield t, xs
