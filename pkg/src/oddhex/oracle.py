"""Brute-force reference searches and first-principles validators.

Everything in this module is written directly against the definitions:
hexes are enumerated by routing nine internally disjoint segments between
every choice of foot triples, extensions and ladder sequences are checked
clause by clause.  Nothing here shares algorithms with the production
search code; only the plain data containers are reused.  That makes this
module the referee for the rest of the package, so keep it dumb.

Sizes: the enumerators are meant for hosts with at most ~14 vertices.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .extensions import (AugmentingSequence, Extension1, Extension2,
                         ExtensionA, ExtensionB, ExtensionC, ExtensionD,
                         TriPod, extension_kind)
from .graph_core import BipartiteGraph, Path, is_path_in
from .hexes import Hex

Edge = Tuple[int, int]


def _norm_edges(path: Sequence[int]) -> FrozenSet[Edge]:
    return frozenset((min(a, b), max(a, b)) for a, b in zip(path, path[1:]))


# ---------------------------------------------------------------------------
# hex enumeration
# ---------------------------------------------------------------------------


def enumerate_hexes(g: BipartiteGraph, limit: Optional[int] = None) -> List[Hex]:
    """Every hex of g (each exactly once, keyed by its edge set), in a
    deterministic order: foot triples lexicographic, then segment routes
    lexicographic.  ``limit`` caps the number returned."""
    out: List[Hex] = []
    seen: Set[FrozenSet[Edge]] = set()
    n = g.n
    verts = range(n)
    for t1 in combinations(verts, 3):
        if limit is not None and len(out) >= limit:
            break
        remaining = [v for v in verts if v not in t1 and v > t1[0]]
        for t2 in combinations(remaining, 3):
            if limit is not None and len(out) >= limit:
                break
            _route_all(g, t1, t2, limit, out, seen)
    return out


def _route_all(g, t1, t2, limit, out, seen):
    feet = set(t1) | set(t2)
    pairs = [(i, j) for i in range(3) for j in range(3)]

    def extend(k: int, used: Set[int], segs: List[Path]):
        if limit is not None and len(out) >= limit:
            return
        if k == 9:
            edges = frozenset(e for s in segs for e in _norm_edges(s))
            if edges in seen:
                return
            seen.add(edges)
            out.append(Hex(feet=tuple(t1) + tuple(t2),
                           segments=(tuple(segs[0:3]), tuple(segs[3:6]),
                                     tuple(segs[6:9]))))
            return
        i, j = pairs[k]
        start, goal = t1[i], t2[j]
        for route in _all_simple(g, start, goal, feet | used):
            extend(k + 1, used | set(route[1:-1]), segs + [route])

    extend(0, set(), [])


def _all_simple(g: BipartiteGraph, start: int, goal: int,
                blocked: Set[int]) -> List[Path]:
    """All simple start->goal paths with interiors outside ``blocked``
    (which includes all feet), lexicographically ordered."""
    found: List[Path] = []

    def walk(path: Tuple[int, ...]):
        x = path[-1]
        for w in g.adj[x]:
            if w == goal:
                found.append(path + (w,))
            elif w not in blocked and w not in path:
                walk(path + (w,))

    walk((start,))
    return found


def odd_hex_exists_bruteforce(g: BipartiteGraph) -> Optional[Hex]:
    """First hex whose feet split three-and-three across the colour
    classes, or None.  In a bipartite host a segment has odd length
    exactly when its ends have different colours, so such a hex is
    all-odd and conversely."""
    left = [v for v in range(g.n) if g.color[v] == 0]
    right = [v for v in range(g.n) if g.color[v] == 1]
    for t1 in combinations(sorted(left), 3):
        for t2 in combinations(sorted(right), 3):
            a, b = (t1, t2) if min(t1) < min(t2) else (t2, t1)
            got: List[Hex] = []
            _route_all(g, a, b, 1, got, set())
            if got:
                return got[0]
    return None


# ---------------------------------------------------------------------------
# planarity by forbidden subdivisions (small hosts)
# ---------------------------------------------------------------------------


def has_hex_bruteforce(g: BipartiteGraph) -> bool:
    return bool(enumerate_hexes(g, limit=1))


def _has_k5_subdivision(g: BipartiteGraph) -> bool:
    for branch in combinations(range(g.n), 5):
        feet = set(branch)
        pairs = list(combinations(range(5), 2))

        def extend(k: int, used: Set[int]) -> bool:
            if k == 10:
                return True
            i, j = pairs[k]
            for route in _all_simple(g, branch[i], branch[j], feet | used):
                if extend(k + 1, used | set(route[1:-1])):
                    return True
            return False

        if extend(0, set()):
            return True
    return False


def is_planar_bruteforce(g: BipartiteGraph) -> bool:
    """Planarity for n <= ~10 straight from Kuratowski's theorem."""
    return not (has_hex_bruteforce(g) or _has_k5_subdivision(g))


# ---------------------------------------------------------------------------
# tripods, extensions, ladders: clause-level validation
# ---------------------------------------------------------------------------


def validate_tripod(g: BipartiteGraph, t: TriPod,
                    x_set: Iterable[int]) -> List[str]:
    """Structural checks for a three-path star plus its escape set."""
    bad: List[str] = []
    for name, p in (("p1", t.p1), ("p2", t.p2), ("p3", t.p3)):
        if len(p) < 2:
            bad.append("%s has no edge" % name)
        elif not is_path_in(g, p):
            bad.append("%s is not a path of the host" % name)
    if not (t.p1[0] == t.p2[0] == t.p3[0] == t.v):
        bad.append("paths do not start at the centre")
    for name, p, end in (("p1", t.p1, t.a), ("p2", t.p2, t.b), ("p3", t.p3, t.c)):
        if p[-1] != end:
            bad.append("%s does not end at its anchor" % name)
    if bad:
        return bad
    alpha = g.color[t.v]
    if g.color[t.a] != alpha:
        bad.append("a must have the centre's colour")
    if g.color[t.b] == alpha or g.color[t.c] == alpha:
        bad.append("b and c must have the opposite colour")
    for (n1, p1), (n2, p2) in combinations(
            (("p1", t.p1), ("p2", t.p2), ("p3", t.p3)), 2):
        if set(p1) & set(p2) != {t.v}:
            bad.append("%s and %s meet outside the centre" % (n1, n2))
    xs = set(x_set)
    if len(xs) < 2:
        bad.append("escape set smaller than two")
    if xs & t.vertices():
        bad.append("escape set touches the paths")
    return bad


def _pos(path: Sequence[int], v: int) -> int:
    return path.index(v)


def _check_common(bad, name_pairs, expected: Dict[Tuple[str, str], Set[int]]):
    for (n1, p1), (n2, p2) in combinations(name_pairs, 2):
        want = expected.get((n1, n2), expected.get((n2, n1), set()))
        got = set(p1) & set(p2)
        if got != want:
            bad.append("%s and %s share %s, expected %s" %
                       (n1, n2, sorted(got), sorted(want)))


def validate_extension(g: BipartiteGraph, t: TriPod, x_set: Iterable[int],
                       e) -> List[str]:
    """Clause-by-clause check of an extension against its defining shape.

    The replacement star (p1, p2, p3 of ``e``) must anchor at the same
    a, b, c as ``t``; for the two-landing shapes (kinds "2" and "C") the
    path written as p2 is whichever of the two replacement paths carries
    t and s, since the b and c anchors play symmetric roles there.
    """
    bad: List[str] = []
    xs = set(x_set)
    alpha = g.color[t.v]
    kind = extension_kind(e)

    def col(v: int) -> int:
        return g.color[v]

    def path_ok(name: str, p: Sequence[int]):
        if len(p) < 2:
            bad.append("%s has no edge" % name)
        elif not is_path_in(g, p):
            bad.append("%s is not a path of the host" % name)

    # replacement star
    for name, p in (("p1", e.p1), ("p2", e.p2), ("p3", e.p3)):
        path_ok(name, p)
    if bad:
        return bad
    if not (e.p1[0] == e.p2[0] == e.p3[0] == e.v):
        bad.append("replacement paths do not share the new centre")
    if col(e.v) != alpha:
        bad.append("new centre has the wrong colour")
    if e.p1[-1] != t.a:
        bad.append("p1 does not end at a")
    if kind in ("2", "C"):
        if {e.p2[-1], e.p3[-1]} != {t.b, t.c}:
            bad.append("p2, p3 do not end at b and c")
    else:
        if e.p2[-1] != t.b or e.p3[-1] != t.c:
            bad.append("p2, p3 do not end at b and c")
    star = (("p1", e.p1), ("p2", e.p2), ("p3", e.p3))
    for (n1, p1), (n2, p2) in combinations(star, 2):
        if set(p1) & set(p2) != {e.v}:
            bad.append("%s and %s meet outside the new centre" % (n1, n2))
    for name, p in star:
        extra = set(p) & xs
        if extra:
            bad.append("%s touches the escape set at %s" % (name, sorted(extra)))
    if bad:
        return bad

    if kind in ("1", "A"):
        path_ok("p4", e.p4)
        if bad:
            return bad
        if col(e.u) == alpha:
            bad.append("u has the wrong colour")
        if e.u not in e.p1:
            bad.append("u is not on p1")
        if e.x not in xs:
            bad.append("x is not in the escape set")
        if kind == "A" and col(e.x) != alpha:
            bad.append("x must share the centre's colour")
        if e.p4[0] != e.u or e.p4[-1] != e.x:
            bad.append("p4 must join u to x")
        _check_common(bad, star + (("p4", e.p4),), {
            ("p1", "p2"): {e.v}, ("p1", "p3"): {e.v}, ("p2", "p3"): {e.v},
            ("p1", "p4"): {e.u}, ("p2", "p4"): set(), ("p3", "p4"): set()})
        if set(e.p4) & xs != {e.x}:
            bad.append("p4 must meet the escape set exactly at x")
        return bad

    if kind in ("2", "C"):
        path_ok("p4", e.p4)
        path_ok("p5", e.p5)
        if bad:
            return bad
        if col(e.u) == alpha or col(e.t) == alpha:
            bad.append("u, t must have the opposite colour")
        if col(e.s) != alpha:
            bad.append("s must share the centre's colour")
        if e.x not in xs:
            bad.append("x is not in the escape set")
        if e.u not in e.p1:
            bad.append("u is not on p1")
        if e.t not in e.p2 or e.s not in e.p2:
            bad.append("t and s must lie on p2")
        elif not _pos(e.p2, e.t) < _pos(e.p2, e.s):
            bad.append("p2 must pass t before s")
        if e.p4[0] != e.u or e.p4[-1] != e.s:
            bad.append("p4 must join u to s")
        if e.p5[0] != e.t or e.p5[-1] != e.x:
            bad.append("p5 must join t to x")
        _check_common(bad, star + (("p4", e.p4), ("p5", e.p5)), {
            ("p1", "p2"): {e.v}, ("p1", "p3"): {e.v}, ("p2", "p3"): {e.v},
            ("p1", "p4"): {e.u}, ("p2", "p4"): {e.s}, ("p3", "p4"): set(),
            ("p1", "p5"): set(), ("p2", "p5"): {e.t}, ("p3", "p5"): set(),
            ("p4", "p5"): set()})
        if set(e.p4) & xs:
            bad.append("p4 must avoid the escape set")
        if set(e.p5) & xs != {e.x}:
            bad.append("p5 must meet the escape set exactly at x")
        return bad

    if kind == "B":
        path_ok("p4", e.p4)
        path_ok("p5", e.p5)
        if bad:
            return bad
        if col(e.u) == alpha or col(e.t) == alpha:
            bad.append("u, t must have the opposite colour")
        if col(e.s) != alpha:
            bad.append("s must share the centre's colour")
        if e.x not in xs or col(e.x) == alpha:
            bad.append("x must be an opposite-colour escape vertex")
        if e.u not in e.p1:
            bad.append("u is not on p1")
        if e.p4[0] != e.u or e.p4[-1] != e.x:
            bad.append("p4 must join u to x")
        if e.s not in e.p4[1:-1]:
            bad.append("s must be interior to p4")
        if e.p5[0] != e.s or e.p5[-1] != e.t:
            bad.append("p5 must join s to t")
        if e.t not in xs and e.t not in e.p2 and e.t not in e.p3:
            bad.append("t must land on the escape set, p2 or p3")
        _check_common(bad, star + (("p4", e.p4),), {
            ("p1", "p2"): {e.v}, ("p1", "p3"): {e.v}, ("p2", "p3"): {e.v},
            ("p1", "p4"): {e.u}, ("p2", "p4"): set(), ("p3", "p4"): set()})
        if set(e.p4) & xs != {e.x}:
            bad.append("p4 must meet the escape set exactly at x")
        # p5 floats off p4 at s and may only touch the world again at t;
        # the degenerate t == x (p5 rejoining p4 at its far end) is taken
        # as within the shape -- callers can see it on the object itself
        hull = set(e.p1) | set(e.p2) | set(e.p3) | set(e.p4) | xs
        mid = set(e.p5) - {e.s, e.t}
        allowed45 = {e.s, e.t} if e.t == e.x else {e.s}
        if set(e.p5) & set(e.p4) != allowed45:
            bad.append("p5 and p4 must share exactly s (and t when t = x)")
        if mid & hull:
            bad.append("p5 interior strays onto the configuration")
        if e.t in set(e.p1):
            bad.append("t may not land on p1")
        return bad

    if kind == "D":
        for name, p in (("p4", e.p4), ("p5", e.p5), ("p6", e.p6)):
            path_ok(name, p)
        if bad:
            return bad
        if col(e.u) == alpha or col(e.t) == alpha:
            bad.append("u, t must have the opposite colour")
        if col(e.w) != alpha or col(e.s) != alpha:
            bad.append("w, s must share the centre's colour")
        for z, zn in ((e.x, "x"), (e.y, "y")):
            if z not in xs or col(z) == alpha:
                bad.append("%s must be an opposite-colour escape vertex" % zn)
        for z, zn in ((e.u, "u"), (e.w, "w"), (e.t, "t")):
            if z not in e.p1:
                bad.append("%s is not on p1" % zn)
        if not bad:
            iu, iw, it = _pos(e.p1, e.u), _pos(e.p1, e.w), _pos(e.p1, e.t)
            if not (0 < iu < iw < it < len(e.p1) - 1):
                bad.append("p1 must pass u, w, t in that order")
        if e.p4[0] != e.u or e.p4[-1] != e.x:
            bad.append("p4 must join u to x")
        if e.s not in e.p4[1:-1]:
            bad.append("s must be interior to p4")
        if e.p5[0] != e.s or e.p5[-1] != e.t:
            bad.append("p5 must join s to t")
        if e.p6[0] != e.w or e.p6[-1] != e.y:
            bad.append("p6 must join w to y")
        _check_common(bad, star + (("p4", e.p4),), {
            ("p1", "p2"): {e.v}, ("p1", "p3"): {e.v}, ("p2", "p3"): {e.v},
            ("p1", "p4"): {e.u}, ("p2", "p4"): set(), ("p3", "p4"): set()})
        if set(e.p4) & xs != {e.x}:
            bad.append("p4 must meet the escape set exactly at x")
        if set(e.p5) & set(e.p4) != {e.s}:
            bad.append("p5 and p4 must share exactly s")
        if set(e.p5) & set(e.p1) != {e.t}:
            bad.append("p5 and p1 must share exactly t")
        if set(e.p5) & (set(e.p2) | set(e.p3) | xs):
            bad.append("p5 strays onto p2, p3 or the escape set")
        if set(e.p6) & set(e.p1) != {e.w}:
            bad.append("p6 and p1 must share exactly w")
        if set(e.p6) & xs != {e.y}:
            bad.append("p6 must meet the escape set exactly at y")
        allowed46 = {e.x} if e.x == e.y else set()
        if set(e.p6) & set(e.p4) != allowed46:
            bad.append("p6 and p4 overlap")
        if set(e.p6) & set(e.p5):
            bad.append("p6 and p5 overlap")
        if set(e.p6) & (set(e.p2) | set(e.p3)):
            bad.append("p6 strays onto p2 or p3")
        return bad

    raise TypeError("unknown extension object %r" % (e,))


# -- ladders -----------------------------------------------------------------


def validate_augmenting_sequence(g: BipartiteGraph, t: TriPod,
                                 x_set: Iterable[int],
                                 seq: AugmentingSequence) -> List[str]:
    """Check every defining clause of a ladder sequence."""
    bad: List[str] = []
    xs = set(x_set)
    paths = seq.paths
    if not paths:
        return ["empty sequence"]
    k = len(paths)
    ends = seq.endpoints  # v_1 .. v_2k
    tp = {"p1": t.p1, "p2": t.p2, "p3": t.p3}
    tripod_all = t.vertices()

    for i, q in enumerate(paths):
        name = "q%d" % (i + 1)
        if len(q) < 2:
            bad.append("%s has no edge" % name)
        elif not is_path_in(g, q):
            bad.append("%s is not a path of the host" % name)
    if bad:
        return bad

    def home(vtx: int) -> Optional[str]:
        for name in ("p1", "p2", "p3"):
            if vtx in tp[name] and vtx != t.v:
                return name
        return None

    if ends[0] not in t.p1 or ends[0] in (t.a, t.v):
        bad.append("v1 must lie on p1 away from its ends")
    if ends[-1] not in xs:
        bad.append("the last endpoint must be in the escape set")
    for i in range(2 * k - 1):  # all but the final endpoint
        if home(ends[i]) is None:
            bad.append("v%d is not on the star" % (i + 1))
    if bad:
        return bad

    # interiors keep off everything; distinct ladders may share ends only
    world = tripod_all | xs
    for i, q in enumerate(paths):
        mid = set(q[1:-1])
        if mid & world:
            bad.append("q%d interior touches the star or escape set" % (i + 1))
        for j in range(i + 1, k):
            shared = set(q) & set(paths[j])
            endsj = {paths[j][0], paths[j][-1]}
            endsi = {q[0], q[-1]}
            if shared - (endsi & endsj):
                bad.append("q%d and q%d overlap beyond shared ends"
                           % (i + 1, j + 1))

    # the climb rule: odd positions after the first sit below their
    # predecessor on the same leg
    for j in range(2, 2 * k - 1, 2):  # v_{j+1} with j+1 odd, 3-based
        lo, hi = ends[j], ends[j - 1]
        if lo == hi:
            bad.append("v%d equals v%d" % (j + 1, j))
            continue
        leg = home(lo)
        if leg is None or home(hi) != leg:
            bad.append("v%d and v%d must share a leg" % (j + 1, j))
            continue
        p = tp[leg]
        if not _pos(p, lo) < _pos(p, hi):
            bad.append("v%d must precede v%d on %s" % (j + 1, j, leg))

    # global ordering: far-apart endpoints on one leg never step back
    for i in range(2 * k - 1):
        for j in range(i + 2, 2 * k - 1):
            li, lj = home(ends[i]), home(ends[j])
            if li is not None and li == lj:
                p = tp[li]
                if _pos(p, ends[i]) > _pos(p, ends[j]):
                    bad.append("v%d and v%d are out of order on %s"
                               % (i + 1, j + 1, li))
    return bad


def sequence_index(g: BipartiteGraph, t: TriPod,
                   seq: AugmentingSequence) -> int:
    """Smallest i at which the colour run breaks, or 2k + 1."""
    alpha = g.color[t.v]
    ends = seq.endpoints
    for i, vtx in enumerate(ends, start=1):
        if i % 2 == 1 and g.color[vtx] == alpha:
            return i
        if i % 2 == 0 and g.color[vtx] != alpha:
            return i
    return 2 * len(seq.paths) + 1


def enumerate_augmenting_sequences(g: BipartiteGraph, t: TriPod,
                                   x_set: Iterable[int], max_length: int,
                                   cap: Optional[int] = None
                                   ) -> List[AugmentingSequence]:
    """Every valid ladder sequence up to ``max_length`` rungs.

    The generator walks free vertices and lands on the star or, to close
    a sequence, on the escape set; the clause validator then filters, so
    the output is exactly the set of valid sequences.  Exponential; keep
    hosts tiny."""
    xs = set(x_set)
    star = t.vertices()
    out: List[AugmentingSequence] = []

    def record(done: Tuple[Path, ...]):
        seq = AugmentingSequence(paths=done)
        if not validate_augmenting_sequence(g, t, xs, seq):
            out.append(seq)

    def next_starts(done: Tuple[Path, ...]) -> Tuple[int, ...]:
        prev = done[-1][-1]
        for p in (t.p1, t.p2, t.p3):
            if prev in p and prev != t.v:
                return p[1:_pos(p, prev)]
        return ()

    def grow(prefix: Tuple[int, ...], done: Tuple[Path, ...],
             used: FrozenSet[int]):
        if cap is not None and len(out) >= cap:
            return
        x = prefix[-1]
        for w in g.adj[x]:
            if w in prefix or w in used:
                continue
            if w in xs:
                if len(done) < max_length:
                    record(done + (prefix + (w,),))
            elif w in star:
                if w != t.v and len(done) + 1 < max_length:
                    nd = done + (prefix + (w,),)
                    for nxt in next_starts(nd):
                        grow((nxt,), nd, used)
            else:
                grow(prefix + (w,), done, used | {w})

    for v1 in sorted(v for v in t.p1 if v not in (t.a, t.v)):
        grow((v1,), (), frozenset())
    return out


def best_sequence_bruteforce(g: BipartiteGraph, t: TriPod,
                             x_set: Iterable[int], max_length: int
                             ) -> Optional[Tuple[int, int]]:
    """(length, index) of the optimal ladder: shortest, then largest
    index; None when no sequence of permitted length exists."""
    best: Optional[Tuple[int, int]] = None
    for seq in enumerate_augmenting_sequences(g, t, x_set, max_length):
        cand = (len(seq.paths), -sequence_index(g, t, seq))
        if best is None or cand < best:
            best = cand
    if best is None:
        return None
    return best[0], -best[1]


# ---------------------------------------------------------------------------
# direct outcome-shaped searches
# ---------------------------------------------------------------------------


def _avoid_bfs(g: BipartiteGraph, start: int, goals: Set[int],
               keep_off: Set[int]) -> Optional[Path]:
    """Shortest start->goal path, interior outside keep_off and goals,
    smallest-next-hop tie break."""
    from collections import deque
    if start in goals:
        raise ValueError("start in goals")
    parent = {start: -1}
    q = deque([start])
    while q:
        x = q.popleft()
        for w in g.adj[x]:
            if w in goals:
                path = [w, x]
                while parent[path[-1]] != -1:
                    path.append(parent[path[-1]])
                return tuple(reversed(path))
            if w in parent or w in keep_off:
                continue
            parent[w] = x
            q.append(w)
    return None


def _scan_star(g, t, star, xs, shape, deep):
    """Scan one fixed star for outcomes of ``shape``.

    ``deep`` switches path enumeration from first-BFS to all simple
    paths where a single shortest choice could block the rest of the
    configuration.  Returns the first extension that validates.
    """
    alpha = g.color[t.v]
    tripod = set(star.p1) | set(star.p2) | set(star.p3)

    def other(col: int) -> bool:
        return col != alpha

    def p4_candidates(u, goals):
        if not goals:
            return
        if deep:
            for x in sorted(goals):
                for p in _all_simple(g, u, x, (tripod | xs) - {u}):
                    yield p
        else:
            p = _avoid_bfs(g, u, goals, (tripod | xs) - {u})
            if p is not None:
                yield p

    if shape in ("1", "A"):
        goals = {x for x in xs if shape == "1" or g.color[x] == alpha}
        cls = Extension1 if shape == "1" else ExtensionA
        for u in sorted(v for v in star.p1 if other(g.color[v])):
            for p4 in p4_candidates(u, goals):
                e = cls(v=star.v, u=u, x=p4[-1],
                        p1=star.p1, p2=star.p2, p3=star.p3, p4=p4)
                if not validate_extension(g, t, xs, e):
                    return e
        return None

    if shape in ("2", "C"):
        cls = Extension2 if shape == "2" else ExtensionC
        for land, spare in ((star.p2, star.p3), (star.p3, star.p2)):
            for s in sorted(v for v in land[1:] if g.color[v] == alpha):
                for tt in sorted(v for v in land[1:_pos(land, s)]
                                 if other(g.color[v])):
                    for u in sorted(v for v in star.p1 if other(g.color[v])):
                        for p4 in p4_candidates(u, {s}):
                            keep5 = (tripod | xs | set(p4)) - {tt}
                            p5 = _avoid_bfs(g, tt, xs, keep5)
                            if p5 is None:
                                continue
                            e = cls(v=star.v, u=u, s=s, t=tt, x=p5[-1],
                                    p1=star.p1, p2=land, p3=spare,
                                    p4=p4, p5=p5)
                            if not validate_extension(g, t, xs, e):
                                return e
        return None

    if shape == "B":
        goals = {x for x in xs if other(g.color[x])}
        t_targets = (goals
                     | {v for v in star.p2 if other(g.color[v])}
                     | {v for v in star.p3 if other(g.color[v])})
        for u in sorted(v for v in star.p1 if other(g.color[v])):
            for p4 in p4_candidates(u, goals):
                for s in (v for v in p4[1:-1] if g.color[v] == alpha):
                    keep5 = (tripod | xs | set(p4)) - {s}
                    p5 = _avoid_bfs(g, s, t_targets - set(p4), keep5)
                    if p5 is None:
                        continue
                    e = ExtensionB(v=star.v, u=u, s=s, t=p5[-1], x=p4[-1],
                                   p1=star.p1, p2=star.p2, p3=star.p3,
                                   p4=p4, p5=p5)
                    if not validate_extension(g, t, xs, e):
                        return e
        return None

    if shape == "D":
        inner = star.p1[1:-1]
        goals = {x for x in xs if other(g.color[x])}
        for u in (v for v in inner if other(g.color[v])):
            for w in (v for v in inner
                      if g.color[v] == alpha and _pos(star.p1, v) > _pos(star.p1, u)):
                for tt in (v for v in inner
                           if other(g.color[v]) and _pos(star.p1, v) > _pos(star.p1, w)):
                    for p4 in p4_candidates(u, goals):
                        for s in (v for v in p4[1:-1] if g.color[v] == alpha):
                            if deep:
                                fives = _all_simple(
                                    g, s, tt, (tripod | xs | set(p4)) - {s})
                            else:
                                one = _avoid_bfs(
                                    g, s, {tt},
                                    (tripod | xs | set(p4)) - {s, tt})
                                fives = [one] if one is not None else []
                            for p5 in fives:
                                keep6 = (tripod | xs | set(p4) | set(p5)) - {w}
                                p6 = _avoid_bfs(g, w, goals, keep6)
                                if p6 is None:
                                    continue
                                e = ExtensionD(v=star.v, u=u, w=w, t=tt, s=s,
                                               x=p4[-1], y=p6[-1],
                                               p1=star.p1, p2=star.p2,
                                               p3=star.p3,
                                               p4=p4, p5=p5, p6=p6)
                                if not validate_extension(g, t, xs, e):
                                    return e
        return None

    raise ValueError("unknown shape %r" % shape)


def _all_stars(g: BipartiteGraph, t: TriPod, xs: Set[int]):
    """Every three-path star to the anchors a, b, c avoiding the escape
    set, new centres in ascending order.  For the moved-star pass."""
    alpha = g.color[t.v]
    anchors = {t.a, t.b, t.c}
    for vp in sorted(v for v in range(g.n)
                     if g.color[v] == alpha and v not in xs
                     and v not in anchors):
        for p1 in _all_simple(g, vp, t.a, xs | {t.b, t.c}):
            used1 = set(p1) - {vp}
            for p2 in _all_simple(g, vp, t.b, xs | used1 | {t.c}):
                used2 = used1 | (set(p2) - {vp})
                for p3 in _all_simple(g, vp, t.c, xs | used2):
                    yield TriPod(v=vp, a=t.a, b=t.b, c=t.c,
                                 p1=p1, p2=p2, p3=p3)


def search_extensions_bruteforce(g: BipartiteGraph, t: TriPod,
                                 x_set: Iterable[int],
                                 shapes: Sequence[str] = ("1", "2"),
                                 exhaustive: bool = False):
    """First extension found, or None.

    The quick pass keeps the star fixed and searches only the new paths,
    shortest first.  With ``exhaustive`` set, a failed quick pass is
    followed by a full scan over every replacement star and every simple
    routing, so on small hosts a None answer really means no outcome of
    the requested shapes exists."""
    xs = set(x_set)
    for shape in shapes:
        e = _scan_star(g, t, t, xs, shape, deep=False)
        if e is not None:
            return e
    if not exhaustive:
        return None
    for shape in shapes:
        e = _scan_star(g, t, t, xs, shape, deep=True)
        if e is not None:
            return e
        for star in _all_stars(g, t, xs):
            e = _scan_star(g, t, star, xs, shape, deep=True)
            if e is not None:
                return e
    return None
