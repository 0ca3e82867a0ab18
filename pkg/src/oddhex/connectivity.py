"""Vertex connectivity, disjoint-path fans, and H-path discovery.

All routing here is unit-capacity max flow over the standard vertex-split
network (each vertex v becomes in(v) -> out(v) with capacity 1), with BFS
augmentation over sorted adjacency so results are deterministic.  At desk
scale (n <= 64) nothing fancier is warranted.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .graph_core import BipartiteGraph, GraphError

Path = Tuple[int, ...]


class NoFan(GraphError):
    """The requested disjoint paths do not exist; ``cut`` is a witness."""

    def __init__(self, cut: Iterable[int]):
        cut = tuple(sorted(set(cut)))
        super().__init__("no fan; cut %s" % (cut,))
        self.cut = cut


class NoHPath(GraphError):
    """No H-path exists from the requested start vertices."""


@dataclass(frozen=True)
class Separation:
    """A partition (A, B, C) with |C| = 3, |A|, |B| >= 2, no A-B edge."""

    a: FrozenSet[int]
    b: FrozenSet[int]
    c: FrozenSet[int]


@dataclass(frozen=True)
class Fan:
    root: int
    paths: Tuple[Path, ...]


# -- the flow core ----------------------------------------------------------


class _SplitFlow:
    """Unit-capacity vertex-split flow from one root to per-class sinks.

    Node encoding: in(v) = 2v, out(v) = 2v + 1, then one collector node
    per target class.  The root has no in-node (paths may only share it);
    target vertices have no in->out arc (paths may not run through a
    target).  Arcs are kept in sorted order for deterministic BFS.
    """

    def __init__(self, g: BipartiteGraph, root: int,
                 classes: Sequence[Iterable[int]],
                 class_caps: Sequence[int],
                 forbidden: Iterable[int],
                 target_cap: int = 1):
        self.g = g
        self.root = root
        forbidden = set(forbidden)
        if root in forbidden:
            raise ValueError("root is forbidden")
        self.classes = [sorted(set(c) - forbidden) for c in classes]
        target_of: Dict[int, int] = {}
        for ci, members in enumerate(self.classes):
            for t in members:
                # a vertex in two classes would make endpoints ambiguous
                if t in target_of:
                    raise ValueError("vertex %d in two target classes" % t)
                target_of[t] = ci
        if root in target_of:
            raise ValueError("root cannot be a target")
        self.target_of = target_of
        self.forbidden = forbidden
        base = 2 * g.n
        self.collector = [base + ci for ci in range(len(classes))]
        self.src = base + len(classes)
        self.n_nodes = base + len(classes) + 1
        # residual capacity as dict-of-dict; unit caps throughout except
        # the source arc and collector arcs
        self.cap: List[Dict[int, int]] = [dict() for _ in range(self.n_nodes)]
        # edge arcs are effectively unbounded so that minimum cuts fall on
        # the unit in->out vertex arcs (else cut_witness could not read a
        # vertex cut off the reachable set)
        self.inf = g.n + 2
        for v in range(g.n):
            if v in forbidden:
                continue
            if v != root and v not in target_of:
                self._arc(2 * v, 2 * v + 1, 1)
        for u in range(g.n):
            if u in forbidden:
                continue
            for w in g.adj[u]:
                if w in forbidden:
                    continue
                # arc out(u) -> in(w); root contributes from its out node,
                # targets absorb at their in node
                uu = 2 * u + 1
                ww = 2 * w
                if u in target_of:
                    continue  # nothing leaves a target
                self._arc(uu, ww, self.inf)
        # a fan wants each target to finish at most one path; an s-t
        # connectivity probe wants its single sink to absorb everything
        for t, ci in sorted(target_of.items()):
            self._arc(2 * t, self.collector[ci], target_cap)
        self.class_caps = list(class_caps)
        self.sink_flow = [0] * len(classes)
        self._arc(self.src, 2 * root + 1, sum(class_caps))

    def _arc(self, a: int, b: int, c: int):
        self.cap[a][b] = self.cap[a].get(b, 0) + c
        self.cap[b].setdefault(a, 0)

    def _augment_once(self) -> bool:
        """One BFS augmentation from src to any collector with spare cap."""
        parent: Dict[int, int] = {self.src: self.src}
        queue = deque([self.src])
        goal = -1
        while queue and goal < 0:
            x = queue.popleft()
            for y in sorted(self.cap[x]):
                if y in parent or self.cap[x][y] <= 0:
                    continue
                parent[y] = x
                ci = self._collector_index(y)
                if ci is not None and self.sink_flow[ci] < self.class_caps[ci]:
                    goal = y
                    break
                queue.append(y)
        if goal < 0:
            return False
        self.sink_flow[self._collector_index(goal)] += 1
        y = goal
        while y != self.src:
            x = parent[y]
            self.cap[x][y] -= 1
            self.cap[y][x] += 1
            y = x
        return True

    def _collector_index(self, node: int) -> Optional[int]:
        if node >= 2 * self.g.n and node != self.src:
            return node - 2 * self.g.n
        return None

    def run(self, limit: Optional[int] = None) -> int:
        total = sum(self.class_caps)
        if limit is not None:
            total = min(total, limit)
        flow = 0
        while flow < total and self._augment_once():
            flow += 1
        return flow

    def cut_witness(self) -> Tuple[int, ...]:
        """Vertices whose unit capacity is saturated on the src side."""
        reach = {self.src}
        queue = deque([self.src])
        while queue:
            x = queue.popleft()
            for y, c in self.cap[x].items():
                if c > 0 and y not in reach:
                    reach.add(y)
                    queue.append(y)
        cut = set()
        for v in range(self.g.n):
            if v == self.root or v in self.forbidden:
                continue
            if v in self.target_of:
                if 2 * v in reach:
                    cut.add(v)
            elif 2 * v in reach and (2 * v + 1) not in reach:
                cut.add(v)
        return tuple(sorted(cut))

    def extract_paths(self) -> List[Path]:
        """Decompose the flow into root->target paths, smallest-next-hop
        first so the decomposition is deterministic."""
        # flow on arc out(u)->in(w) shows as residual on the reverse arc
        succ: Dict[int, List[int]] = {}
        for u in range(self.g.n):
            if u in self.forbidden or u in self.target_of:
                continue
            uu = 2 * u + 1
            outs = []
            for w in self.g.adj[u]:
                if w in self.forbidden:
                    continue
                ww = 2 * w
                if self.cap[ww].get(uu, 0) > 0:  # net flow on out(u)->in(w)
                    outs.append(w)
            succ[u] = sorted(outs)
        paths = []
        for _ in range(sum(self.sink_flow)):
            path = [self.root]
            u = self.root
            while u not in self.target_of:
                w = succ[u].pop(0)
                path.append(w)
                u = w
            paths.append(tuple(path))
        return sorted(paths)


def class_fan(g: BipartiteGraph, root: int,
              classes: Sequence[Iterable[int]],
              forbidden: Iterable[int] = ()) -> Tuple[Path, ...]:
    """One path from root into each class, pairwise disjoint except at
    root, interiors avoiding every class and ``forbidden``.

    Returns the paths ordered by class.  Raises NoFan with a cut witness
    when no such system exists.
    """
    flow = _SplitFlow(g, root, classes, [1] * len(classes), forbidden)
    got = flow.run()
    if got < len(classes):
        raise NoFan(flow.cut_witness())
    paths = flow.extract_paths()
    by_class: Dict[int, Path] = {}
    for p in paths:
        by_class[flow.target_of[p[-1]]] = p
    return tuple(by_class[i] for i in range(len(classes)))


def menger_fan(g: BipartiteGraph, root: int, targets: Iterable[int],
               k: int, forbidden: Iterable[int] = ()) -> Fan:
    """k vertex-disjoint (except root) paths from root into ``targets``,
    interiors avoiding targets and ``forbidden``; NoFan carries a cut."""
    targets = set(targets)
    if root in targets:
        raise ValueError("root cannot be a target")
    flow = _SplitFlow(g, root, [targets], [k], forbidden)
    got = flow.run()
    if got < k:
        raise NoFan(flow.cut_witness())
    return Fan(root=root, paths=tuple(flow.extract_paths()))


# -- connectivity tests ------------------------------------------------------


def local_cut(g: BipartiteGraph, s: int, t: int,
              below: Optional[int] = None) -> Optional[Tuple[int, ...]]:
    """A minimum s-t vertex cut, or None when s, t are adjacent.

    When ``below`` is given, only cuts smaller than it are of interest:
    flow is capped there and None is returned once it is reached.
    """
    if g.has_edge(s, t):
        return None
    flow = _SplitFlow(g, s, [[t]], [g.n], (), target_cap=g.n)
    got = flow.run(limit=below)
    if below is not None and got >= below:
        return None
    return flow.cut_witness()


def is_k_connected(g: BipartiteGraph, k: int):
    """True iff n > k and no vertex cut smaller than k exists.

    On failure returns a witness: a minimum cut over all non-adjacent
    pairs (first found among equals, scanning pairs lexicographically),
    or, for graphs with at most k vertices and no cut at all, the vertex
    list beyond the first two.
    """
    if k not in (1, 2, 3, 4):
        raise ValueError("k must be in 1..4")
    best: Optional[Tuple[int, ...]] = None
    bound = k if g.n > k else g.n  # for tiny graphs report the true min cut
    for s, t in combinations(range(g.n), 2):
        cut = local_cut(g, s, t, below=bound)
        if cut is not None and (best is None or len(cut) < len(best)):
            best = cut
            bound = len(cut)
            if bound == 0:
                break
    if g.n <= k:
        return best if best is not None else tuple(range(g.n))[2:]
    return True if best is None else best


def _split_components(sizes_ok_comps: List[List[int]]) -> Optional[Tuple[set, set]]:
    """Group components into two sides of size >= 2 each, if possible."""
    comps = sizes_ok_comps
    if len(comps) < 2:
        return None
    comps = sorted(comps, key=lambda c: (-len(c), c))
    big, rest = comps[0], comps[1:]
    rest_total = sum(len(c) for c in rest)
    if len(big) >= 2 and rest_total >= 2:
        a = set(big)
        b = set().union(*rest)
        return a, b
    if len(big) == 1 and len(comps) >= 4:
        a = set(comps[0]) | set(comps[1])
        b = set().union(*comps[2:])
        return a, b
    return None


def is_internally_4_connected(g: BipartiteGraph):
    """True, or a witness: a Separation (the 3-cut partition), a smaller
    cut tuple, or the string reason for tiny graphs.

    Checks 3-connectivity plus the absence of any partition (A, B, C)
    with |C| = 3, |A|, |B| >= 2 and no A-B edge, by enumerating all
    3-subsets C in lexicographic order.  Small and self-evidently
    correct; doubles as its own oracle.
    """
    if g.n < 5:
        return tuple(range(max(0, g.n - 2)))
    three = is_k_connected(g, 3)
    if three is not True:
        return three
    for c in combinations(range(g.n), 3):
        cset = set(c)
        seen = set(c)
        comps: List[List[int]] = []
        for v in range(g.n):
            if v in seen:
                continue
            comp = [v]
            seen.add(v)
            queue = deque([v])
            while queue:
                x = queue.popleft()
                for y in g.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        split = _split_components(comps)
        if split is not None:
            a, b = split
            return Separation(a=frozenset(a), b=frozenset(b), c=frozenset(c))
    return True


# -- H-paths -----------------------------------------------------------------


def find_h_path(g: BipartiteGraph, h_vertices: Iterable[int],
                h_edges: Iterable[Tuple[int, int]],
                start_candidates: Iterable[int]) -> Path:
    """Shortest path with >= 1 edge, first vertex in start_candidates,
    last vertex in h_vertices, and no other vertex or edge in H.

    Ties are broken toward the lexicographically smallest path.  Raises
    NoHPath when none exists.
    """
    hv = set(h_vertices)
    he = {(min(u, v), max(u, v)) for u, v in h_edges}
    starts = sorted(set(start_candidates))
    if not set(starts) <= hv:
        raise ValueError("start candidates must lie on H")

    best: Optional[Path] = None
    # length-1 H-paths: edges between H vertices that are not H edges
    for s in starts:
        for w in g.adj[s]:
            if w in hv and (min(s, w), max(s, w)) not in he:
                cand = (s, w)
                if best is None or cand < best:
                    best = cand
    if best is not None:
        return best

    # Longer paths: one BFS per start.  A combined multi-source search
    # with one claim per outside vertex misses H-paths whose interior
    # crosses between two search trees, so each start explores on its
    # own; per start the claims keep the lexicographically smallest
    # parent chain, which makes the per-level finish minimum the
    # lex-smallest shortest H-path from that start.
    for s in starts:
        cand = _h_path_from(g, hv, s)
        if cand is not None and (
            best is None or (len(cand), cand) < (len(best), best)
        ):
            best = cand
    if best is not None:
        return best
    raise NoHPath("no H-path from %s" % (starts,))


def _h_path_from(g: BipartiteGraph, hv: Set[int], s: int) -> Optional[Path]:
    """Shortest (then lex-smallest) H-path of length >= 2 starting at s."""
    parent: Set[int] = set()
    frontier: List[Tuple[Tuple[int, ...], int]] = []
    for w in sorted(g.adj[s]):
        if w not in hv:
            parent.add(w)
            frontier.append(((s, w), w))
    while frontier:
        finishes = []
        next_frontier = []
        claimed = set()
        for prefix, x in sorted(frontier):
            for w in sorted(g.adj[x]):
                if w in hv:
                    if w != s:  # returning to the start is a cycle
                        finishes.append(prefix + (w,))
                elif w not in parent and w not in claimed:
                    claimed.add(w)
                    next_frontier.append((prefix + (w,), w))
        if finishes:
            return min(finishes)
        for _, w in next_frontier:
            parent.add(w)
        frontier = next_frontier
    return None


def bfs_path(g: BipartiteGraph, sources: Iterable[int], targets: Iterable[int],
             avoid: Iterable[int] = ()) -> Optional[Path]:
    """Shortest source->target path whose interior avoids ``avoid`` and
    both end sets; lexicographically smallest among shortest.  Sources
    and targets must be disjoint; returns None when unreachable."""
    src = sorted(set(sources))
    tgt = set(targets)
    blocked = set(avoid) | set(src)
    parent: Dict[int, int] = {s: -1 for s in src}
    queue = deque(src)
    while queue:
        x = queue.popleft()
        for w in g.adj[x]:
            if w in tgt:
                path = [w, x]
                while parent[path[-1]] != -1:
                    path.append(parent[path[-1]])
                return tuple(reversed(path))
            if w in blocked or w in parent or w in tgt:
                continue
            parent[w] = x
            queue.append(w)
    return None
