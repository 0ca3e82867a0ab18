"""Odd-count improvement: from any hex to an all-odd hex.

In a bipartite host the number of odd segments of a hex is one of
0, 3, 4, 5, 6, 9, determined entirely by how the feet fall across the
two colour classes.  Each non-final count class admits a surgery — an
escape path (or a small bundle of them) grafted onto the hex, plus a
few segment pieces deleted — after which the count is strictly larger.
This module implements one dispatcher per class and a driver that
chains them; nine is reached within five steps.

Dispatchers share a common shape:

* normalize the hex so its foot colours match the pattern the class
  analysis assumes (``hexes.normalize``), then work positionally on a
  ``_Frame`` — feet numbered 1..6, segment (i, j) oriented from foot i
  to foot j;
* obtain an escape: classes 0/3 and 4 grow one from an off-colour
  interior vertex of segment (1, 4); classes 5 and 6 run the
  three-path extension engine on the star at foot 1;
* look up the landing in a case table and graft/delete accordingly.

Every candidate surgery is applied speculatively: the new edge set must
re-form a hex (``hex_from_edges``) with a strictly larger odd count, or
the candidate is recorded as failed and the next one is tried.  When a
table row cannot be realized the dispatcher falls back to a bounded
brute-force search over the union of the hex and the escape paths; only
if that too fails does it raise CaseExhausted, listing everything it
tried.  Recorded surgeries are edge-level diffs against the input hex,
so a verifier can replay ``(edges - removed) | added`` literally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, NoReturn, Optional, Sequence, Set, Tuple

from .augment import three_path_extend, three_path_extend_strong
from .connectivity import NoHPath, bfs_path, find_h_path, is_internally_4_connected
from .extensions import (
    Extension1,
    Extension2,
    ExtensionA,
    ExtensionB,
    ExtensionC,
    ExtensionD,
    TriPod,
)
from .graph_core import BipartiteGraph, GraphError, Path, splice, subpath
from .hexes import Hex, NotAHex, Surgery, hex_from_edges, normalize, odd_count, validate_hex
from .oracle import _route_all
from .seed import PlanarInput, SearchCancelled, find_hex, is_planar

MAX_STEPS = 5


class AlreadyOdd(GraphError):
    """The hex already has nine odd segments; there is nothing to do."""


class CaseExhausted(GraphError):
    """No case yielded a valid improvement.

    With the documented preconditions (internally 4-connected bipartite
    host, valid hex) the case analysis is exhaustive, so reaching this
    indicates a defect rather than a property of the input.  ``tried``
    lists the case tags that were attempted, in order.
    """

    def __init__(self, message: str, tried: Sequence[str] = ()):
        self.tried = tuple(tried)
        if self.tried:
            message = "%s (tried: %s)" % (message, ", ".join(self.tried))
        super().__init__(message)


class NotInternally4Connected(GraphError):
    """The host fails the connectivity precondition.

    ``witness`` is whatever ``is_internally_4_connected`` returned: a
    Separation for a 3-cut with two big sides, a smaller cut tuple, or
    a trivial witness for tiny graphs.
    """

    def __init__(self, witness):
        super().__init__("graph is not internally 4-connected: %r" % (witness,))
        self.witness = witness


@dataclass(frozen=True)
class ImprovementStep:
    """One audit-trail entry: which case fired and what it changed.

    ``surgery`` is a diff against the hex the step received: ``added``
    chains are new edges, ``removed`` chains are dropped ones, both
    decomposed into maximal simple paths and sorted.
    """

    lemma_tag: str
    case_tag: str
    surgery: Surgery
    before_count: int
    after_count: int


class _RetryShrink(Exception):
    """Internal: re-run the strong engine with ``vertex`` removed from X."""

    def __init__(self, vertex: int):
        self.vertex = vertex


def _ekey(u: int, v: int) -> Tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _path_edges(p: Sequence[int]) -> Set[Tuple[int, int]]:
    return {_ekey(a, b) for a, b in zip(p, p[1:])}


def _chains(edges: Iterable[Tuple[int, int]]) -> Tuple[Path, ...]:
    """Decompose an edge set into maximal simple chains, deterministically.

    Chains are grown from vertices whose degree in the set is not 2, so
    a path comes out in one piece; anything left over is a cycle and is
    emitted as a closed walk starting at its smallest vertex.
    """
    left = {_ekey(a, b) for a, b in edges}
    if not left:
        return ()
    adj: Dict[int, List[int]] = {}
    for a, b in left:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    for v in adj:
        adj[v].sort()
    deg = {v: len(nbrs) for v, nbrs in adj.items()}
    out: List[Path] = []

    def _walk(start: int, first: int) -> Path:
        walk = [start, first]
        left.discard(_ekey(start, first))
        while deg[walk[-1]] == 2:
            here = walk[-1]
            step = [w for w in adj[here] if _ekey(here, w) in left]
            if not step:
                break
            walk.append(step[0])
            left.discard(_ekey(here, step[0]))
        return tuple(walk)

    for s in sorted(v for v in adj if deg[v] != 2):
        for t in adj[s]:
            if _ekey(s, t) in left:
                out.append(_walk(s, t))
    while left:  # pure cycles
        s = min(min(e) for e in left)
        t = [w for w in adj[s] if _ekey(s, w) in left][0]
        out.append(_walk(s, t))
    return tuple(sorted(out))


class _Frame:
    """Positional view of a hex: feet 1..6, segment (i, j) runs foot i
    to foot j for i in {1,2,3}, j in {4,5,6}.  Immutable; the rewriting
    helpers return fresh frames."""

    __slots__ = ("feet", "seg")

    def __init__(self, feet: Dict[int, int], seg: Dict[Tuple[int, int], Path]):
        self.feet = feet
        self.seg = seg

    @classmethod
    def from_hex(cls, h: Hex) -> "_Frame":
        feet = {k + 1: h.feet[k] for k in range(6)}
        seg = {(i, j): h.segment(i, j) for i in (1, 2, 3) for j in (4, 5, 6)}
        return cls(feet, seg)

    def foot(self, i: int) -> int:
        return self.feet[i]

    def path(self, i: int, j: int) -> Path:
        return self.seg[(i, j)]

    def replaced(self, updates: Dict[Tuple[int, int], Sequence[int]],
                 apex: Optional[int] = None) -> "_Frame":
        feet = dict(self.feet)
        if apex is not None:
            feet[1] = apex
        seg = dict(self.seg)
        for key, p in updates.items():
            seg[key] = tuple(p)
        return _Frame(feet, seg)

    def swapped(self, a: int, b: int) -> "_Frame":
        """Exchange foot positions a and b (same triple)."""
        feet = dict(self.feet)
        feet[a], feet[b] = feet[b], feet[a]
        rename = {a: b, b: a}
        seg = {}
        for (i, j), p in self.seg.items():
            seg[(rename.get(i, i), rename.get(j, j))] = p
        return _Frame(feet, seg)

    def vertices(self) -> Set[int]:
        out: Set[int] = set()
        for p in self.seg.values():
            out.update(p)
        return out

    def edges(self) -> Set[Tuple[int, int]]:
        out: Set[Tuple[int, int]] = set()
        for p in self.seg.values():
            out |= _path_edges(p)
        return out

    def hull(self) -> Set[int]:
        """Vertices of the star at foot 1 (segments (1,4), (1,5), (1,6))."""
        return set(self.path(1, 4)) | set(self.path(1, 5)) | set(self.path(1, 6))


@dataclass
class _Ctx:
    """Per-call bookkeeping: the original hex, the count to beat, and
    the tags of every candidate that failed so far."""

    g: BipartiteGraph
    orig: FrozenSet[Tuple[int, int]]
    before: int
    lemma: str
    tried: List[str]

    def attempt(self, tag: str, fr: _Frame,
                added: Sequence[Sequence[int]],
                removed: Sequence[Sequence[int]]):
        """Try one table row; (hex, step) on success, None on failure."""
        try:
            edges = set(fr.edges())
            for p in added:
                if len(p) < 2:
                    raise NotAHex("degenerate escape path")
                edges |= _path_edges(p)
            for q in removed:
                if len(q) >= 2:  # single-vertex pieces delete nothing
                    edges -= _path_edges(q)
            h2 = hex_from_edges(self.g, edges)
            after = odd_count(self.g, h2)
            if after <= self.before:
                raise NotAHex("odd count did not increase")
        except (GraphError, ValueError):
            self.tried.append(tag)
            return None
        return self.finish(h2, after, tag)

    def first(self, fr: _Frame, rows):
        for tag, added, removed in rows:
            got = self.attempt(tag, fr, added, removed)
            if got is not None:
                return got
        return None

    def finish(self, h2: Hex, after: int, tag: str) -> Tuple[Hex, ImprovementStep]:
        final = set(h2.edges())
        surgery = Surgery(added=_chains(final - self.orig),
                          removed=_chains(self.orig - final))
        step = ImprovementStep(lemma_tag=self.lemma, case_tag=tag,
                               surgery=surgery, before_count=self.before,
                               after_count=after)
        return h2, step

    def union_rescue(self, fr: _Frame, extras: Sequence[Sequence[int]]):
        """Brute-force the union of the frame and the escape paths for
        any hex that beats the current count.  Deterministic; None when
        the union is too wide or holds no better hex."""
        base = set(fr.edges())
        for p in extras:
            base |= _path_edges(p)
        sub = BipartiteGraph(self.g.n, sorted(base))
        cands = sorted(v for v in range(self.g.n) if len(sub.adj[v]) >= 3)
        if len(cands) > 14:
            self.tried.append(self.lemma + ".union.too_wide")
            return None
        best = None
        seen: Set[FrozenSet[Tuple[int, int]]] = set()
        for t1 in itertools.combinations(cands, 3):
            rest = [v for v in cands if v not in t1 and v > t1[0]]
            for t2 in itertools.combinations(rest, 3):
                found: List[Hex] = []
                _route_all(sub, t1, t2, None, found, seen)
                for cand in found:
                    after = odd_count(self.g, cand)
                    if after <= self.before:
                        continue
                    key = (-after, cand.feet, cand.segments)
                    if best is None or key < best[0]:
                        best = (key, cand, after)
        if best is None:
            self.tried.append(self.lemma + ".union.no_gain")
            return None
        return self.finish(best[1], best[2], self.lemma + ".union")

    def exhausted(self) -> NoReturn:
        raise CaseExhausted("no %s case yielded a valid improvement" % self.lemma,
                            self.tried)


def _rescue_or_exhaust(ctx: _Ctx, fr: _Frame, extras: Sequence[Sequence[int]]):
    got = ctx.union_rescue(fr, extras)
    if got is not None:
        return got
    ctx.exhausted()


def _setup(g: BipartiteGraph, h: Hex, pattern: Sequence[int],
           lemma: str) -> Tuple[_Ctx, _Frame]:
    """Normalize the hex onto ``pattern`` and open a working context."""
    before = odd_count(g, h)
    h0, _ = normalize(g, h, pattern)
    cols = tuple(g.color[v] for v in h0.feet)
    flipped = tuple(1 - c for c in cols)
    assert tuple(pattern) in (cols, flipped), "normalization failed"
    ctx = _Ctx(g=g, orig=frozenset(h.edges()), before=before,
               lemma=lemma, tried=list())
    return ctx, _Frame.from_hex(h0)


# --------------------------------------------------------------------------
# escapes


_ESCAPE_ROUND_SLACK = 8


def _p14_escape(g: BipartiteGraph, fr: _Frame, ctx: _Ctx) -> Tuple[_Frame, Path]:
    """An escape from segment (1, 4) to the rest of the hex.

    Starts are the interior vertices of (1, 4) coloured opposite to
    foot 1.  While the only connections land back on (1, 4) itself, the
    segment is rerouted through the detour and the search repeats; the
    host's connectivity guarantees an off-segment landing eventually.
    """
    seen: Set[FrozenSet[int]] = set()
    for _ in range(4 * g.n + _ESCAPE_ROUND_SLACK):
        p14 = fr.path(1, 4)
        beta = 1 - g.color[fr.foot(1)]
        starts = [v for v in p14[1:-1] if g.color[v] == beta]
        if not starts:
            ctx.tried.append(ctx.lemma + ".setup.no_offcolour_interior")
            return _raise_setup(ctx, fr)
        hv = fr.vertices()
        q = bfs_path(g, starts, hv - set(p14), avoid=hv)
        if q is not None:
            return fr, q
        try:
            q2 = find_h_path(g, hv, fr.edges(), starts)
        except NoHPath:
            ctx.tried.append(ctx.lemma + ".setup.no_escape")
            return _raise_setup(ctx, fr)
        if q2[-1] not in set(p14):
            return fr, q2
        i0, i1 = p14.index(q2[0]), p14.index(q2[-1])
        if i0 > i1:
            q2 = q2[::-1]
            i0, i1 = i1, i0
        rerouted = p14[:i0] + q2 + p14[i1 + 1:]
        key = frozenset(rerouted)
        if key in seen:
            ctx.tried.append(ctx.lemma + ".setup.reroute_cycled")
            return _raise_setup(ctx, fr)
        seen.add(key)
        fr = fr.replaced({(1, 4): rerouted})
    ctx.tried.append(ctx.lemma + ".setup.reroute_budget")
    return _raise_setup(ctx, fr)


def _raise_setup(ctx: _Ctx, fr: _Frame) -> NoReturn:
    got = ctx.union_rescue(fr, ())
    if got is not None:
        # union_rescue found an improvement without any escape; callers
        # treat the (hex, step) pair like any other success.
        raise _SetupRescued(got)
    ctx.exhausted()


class _SetupRescued(Exception):
    """Internal: escape setup failed but the union search improved anyway."""

    def __init__(self, result):
        self.result = result


def _inner_extend(g: BipartiteGraph, fr: _Frame, u: int, q: Path, w: int,
                  xs: Set[int]):
    """Run the extension engine on the tripod at the escape's base: legs
    along the two halves of segment (1, 4) plus the escape itself."""
    f = fr.foot
    p14 = fr.path(1, 4)
    pod = TriPod(v=u, a=w, b=f(1), c=f(4), p1=q,
                 p2=subpath(p14, u, f(1)), p3=subpath(p14, u, f(4)))
    return three_path_extend(g, pod, xs)


def _merge_star(fr: _Frame, ext) -> _Frame:
    """Fold an outer extension's (possibly rerouted) legs back into the
    frame: p1/p2/p3 are matched to feet 4/5/6 by endpoint, and foot 1
    moves to the extension's apex."""
    f = fr.foot
    updates: Dict[Tuple[int, int], Path] = {}
    for leg in (ext.p1, ext.p2, ext.p3):
        for j in (4, 5, 6):
            if leg[-1] == f(j):
                updates[(1, j)] = leg
    assert len(updates) == 3, "extension legs lost a foot"
    return fr.replaced(updates, apex=ext.v)


def _merge_inner(fr: _Frame, ext) -> _Frame:
    """Fold an inner extension's legs into segment (1, 4): the two legs
    end at feet 1 and 4, and their concatenation through the apex is
    the new segment.  Feet do not move."""
    f = fr.foot
    leg1 = ext.p2 if ext.p2[-1] == f(1) else ext.p3
    leg4 = ext.p3 if leg1 is ext.p2 else ext.p2
    return fr.replaced({(1, 4): splice(leg1[::-1], leg4)})


# --------------------------------------------------------------------------
# counts 0 and 3


def improve_le3(g: BipartiteGraph, h: Hex) -> Tuple[Hex, ImprovementStep]:
    """One improvement of a hex with at most three odd segments (all six
    feet in one colour class, or five against one)."""
    before = odd_count(g, h)
    if before == 9:
        raise AlreadyOdd("hex is already all-odd")
    if before not in (0, 3):
        raise GraphError("improve_le3 expects an odd count of 0 or 3, got %d" % before)
    pattern = (0, 0, 0, 0, 0, 0) if before == 0 else (0, 0, 0, 0, 0, 1)
    ctx, fr = _setup(g, h, pattern, "L4")
    try:
        fr, q = _p14_escape(g, fr, ctx)
    except _SetupRescued as r:
        return r.result
    w = q[-1]
    f, p = fr.foot, fr.path

    if w == f(2):
        rows = [("L4.w_at_v2", (q,), (p(2, 4),))]
    elif w == f(3):
        rows = [("L4.w_at_v3", (q,), (p(3, 4),))]
    elif w == f(5):
        rows = [("L4.w_at_v5", (q,), (p(1, 5),))]
    elif w == f(6):
        rows = [("L4.w_at_v6", (q,), (p(1, 6),))]
    elif w in p(1, 5):
        rows = [("L4.w_in_P15", (q,), (subpath(p(1, 5), f(1), w),))]
    elif w in p(1, 6):
        rows = [("L4.w_in_P16", (q,), (subpath(p(1, 6), f(1), w),))]
    elif w in p(2, 4):
        rows = [("L4.w_in_P24", (q,), (subpath(p(2, 4), f(4), w),))]
    elif w in p(3, 4):
        rows = [("L4.w_in_P34", (q,), (subpath(p(3, 4), f(4), w),))]
    elif w in p(2, 5):
        rows = [("L4.w_in_P25", (q,), (p(2, 4),))]
    elif w in p(2, 6):
        rows = [("L4.w_in_P26", (q,), (p(2, 4),))]
    elif w in p(3, 5):
        rows = [("L4.w_in_P35", (q,), (p(3, 4),))]
    else:
        rows = [("L4.w_in_P36", (q,), (p(3, 4),))]
    got = ctx.first(fr, rows)
    if got is not None:
        return got
    return _rescue_or_exhaust(ctx, fr, (q,))


# --------------------------------------------------------------------------
# count 4


def improve_4(g: BipartiteGraph, h: Hex) -> Tuple[Hex, ImprovementStep]:
    """One improvement of a four-odd hex (after normalization feet 1, 2,
    4, 5 share a colour against feet 3 and 6)."""
    before = odd_count(g, h)
    if before == 9:
        raise AlreadyOdd("hex is already all-odd")
    if before != 4:
        raise GraphError("improve_4 expects an odd count of 4, got %d" % before)
    ctx, fr = _setup(g, h, (0, 0, 1, 0, 0, 1), "L5")
    try:
        fr, q = _p14_escape(g, fr, ctx)
    except _SetupRescued as r:
        return r.result
    return _l5_easy(g, fr, q, q[-1], ctx, from_hard=False)


def _l5_easy(g: BipartiteGraph, fr: _Frame, q: Path, w: int, ctx: _Ctx,
             from_hard: bool):
    """Landing table for count 4.  Every landing has a direct row except
    an off-colour interior of segment (2, 5), which needs the nested
    extension in _l5_hard."""
    f, p = fr.foot, fr.path
    alpha = g.color[f(1)]

    if w == f(2):
        rows = [("L5.w_at_v2", (q,), (p(2, 4),))]
    elif w == f(3):
        rows = [("L5.w_at_v3", (q,), (p(3, 4),))]
    elif w == f(5):
        rows = [("L5.w_at_v5", (q,), (p(1, 5),))]
    elif w == f(6):
        rows = [("L5.w_at_v6", (q,), (p(1, 6),))]
    elif w in p(1, 5):
        rows = [("L5.w_in_P15", (q,), (subpath(p(1, 5), f(1), w),))]
    elif w in p(1, 6):
        rows = [("L5.w_in_P16", (q,), (subpath(p(1, 6), f(1), w),))]
    elif w in p(2, 4):
        rows = [("L5.w_in_P24", (q,), (subpath(p(2, 4), f(4), w),))]
    elif w in p(3, 4):
        rows = [("L5.w_in_P34", (q,), (subpath(p(3, 4), f(4), w),))]
    elif w in p(3, 6):
        rows = [("L5.w_in_P36", (q,), (p(3, 4),)),
                ("L5.w_in_P36.alt", (q,), (p(2, 4),))]
    elif w in p(2, 6):
        if g.color[w] == alpha:
            rows = [("L5.w_in_A_P26", (q,), (p(2, 4),))]
        else:
            rows = [("L5.w_in_B_P26", (q,), (p(1, 6),))]
    elif w in p(3, 5):
        if g.color[w] == alpha:
            rows = [("L5.w_in_A_P35", (q,), (p(1, 5),))]
        else:
            rows = [("L5.w_in_B_P35", (q,), (p(3, 4),))]
    elif w in p(2, 5):
        if g.color[w] == alpha:
            rows = [("L5.w_in_A_P25", (q,), (p(2, 4),))]
        elif from_hard:
            ctx.tried.append("L5.redispatch_hit_B_P25")
            return _rescue_or_exhaust(ctx, fr, (q,))
        else:
            return _l5_hard(g, fr, q, w, ctx)
    else:
        ctx.tried.append("L5.unplaced_landing")
        return _rescue_or_exhaust(ctx, fr, (q,))
    got = ctx.first(fr, rows)
    if got is not None:
        return got
    return _rescue_or_exhaust(ctx, fr, (q,))


def _l5_hard(g: BipartiteGraph, fr: _Frame, q: Path, w: int, ctx: _Ctx):
    """Count 4, escape landing off-colour inside segment (2, 5): run the
    extension engine on the tripod at the escape's base, with X all of
    the hex except segment (1, 4) and the landing itself."""
    u = q[0]
    xs = (fr.vertices() - set(fr.path(1, 4))) - {w}
    try:
        ext = _inner_extend(g, fr, u, q, w, xs)
    except GraphError:
        ctx.tried.append("L5.hard.no_extension")
        return _rescue_or_exhaust(ctx, fr, (q,))
    if isinstance(ext, Extension1):
        return _l5_inner1(g, _merge_inner(fr, ext), ext, w, ctx)
    return _l5_inner2(g, fr, ext, w, ctx)


def _l5_inner1(g: BipartiteGraph, fr: _Frame, ext: Extension1, w: int, ctx: _Ctx):
    q2 = ext.p1                       # apex -> w, possibly rerouted
    u2, y, r, z = ext.v, ext.u, ext.p4, ext.x
    alpha = g.color[fr.foot(1)]
    p25 = fr.path(2, 5)
    if z in p25 and g.color[z] != alpha:
        got = ctx.attempt("L5.hard.out1.z_in_B_P25", fr, (q2, r),
                          (subpath(p25, w, z), fr.path(2, 4)))
        if got is not None:
            return got
        return _rescue_or_exhaust(ctx, fr, (q2, r))
    q3 = splice(subpath(q2, u2, y), r)
    return _l5_easy(g, fr, q3, z, ctx, from_hard=True)


def _l5_inner2(g: BipartiteGraph, fr: _Frame, ext: Extension2, w: int, ctx: _Ctx):
    f = fr.foot
    u2, q2 = ext.v, ext.p1
    a, b, c, d = ext.u, ext.s, ext.t, ext.x
    rr, ss = ext.p4, ext.p5
    carrier, spare = ext.p2, ext.p3
    v1_side = carrier[-1] == f(1)
    fr2 = _merge_inner(fr, ext)
    p25 = fr2.path(2, 5)
    alpha = g.color[f(1)]
    if d in p25 and g.color[d] != alpha:
        added = (q2, rr, ss)
        if p25.index(d) > p25.index(w):
            tag = "L5.hard.out2.d_in_wP25v5"
            removed = (fr2.path(1, 5), subpath(p25, f(5), d), fr2.path(3, 4),
                       fr2.path(3, 5), fr2.path(3, 6))
        else:
            tag = "L5.hard.out2.d_in_v2P25w"
            removed = (fr2.path(1, 5), fr2.path(3, 4), fr2.path(3, 5),
                       fr2.path(3, 6), subpath(p25, f(5), w))
        got = ctx.attempt(tag, fr2, added, removed)
        if got is not None:
            return got
        return _rescue_or_exhaust(ctx, fr2, added)
    # Route segment (1, 4) through the escape and the connector, freeing
    # the carrier's middle stretch; the second connector then escapes
    # from the new segment and the landing table applies again.
    if v1_side:
        p14_3 = splice(subpath(carrier, f(1), b), rr[::-1],
                       subpath(q2, a, u2), spare)
    else:
        p14_3 = splice(spare[::-1], subpath(q2, u2, a), rr,
                       subpath(carrier, b, f(4)))
    q3 = splice(subpath(carrier, u2, c), ss)
    fr3 = fr.replaced({(1, 4): p14_3})
    return _l5_easy(g, fr3, q3, d, ctx, from_hard=True)


# --------------------------------------------------------------------------
# count 5


def improve_5(g: BipartiteGraph, h: Hex) -> Tuple[Hex, ImprovementStep]:
    """One improvement of a five-odd hex (after normalization feet 1, 2,
    4 share a colour against 3, 5, 6).  The escape is produced by the
    extension engine on the star at foot 1."""
    before = odd_count(g, h)
    if before == 9:
        raise AlreadyOdd("hex is already all-odd")
    if before != 5:
        raise GraphError("improve_5 expects an odd count of 5, got %d" % before)
    ctx, fr = _setup(g, h, (0, 0, 1, 0, 1, 1), "L6")
    f = fr.foot
    pod = TriPod(v=f(1), a=f(4), b=f(5), c=f(6),
                 p1=fr.path(1, 4), p2=fr.path(1, 5), p3=fr.path(1, 6))
    xs = fr.vertices() - fr.hull()
    try:
        ext = three_path_extend(g, pod, xs)
    except GraphError:
        ctx.tried.append("L6.no_extension")
        return _rescue_or_exhaust(ctx, fr, ())
    fr = _merge_star(fr, ext)
    if isinstance(ext, Extension2):
        return _l6_out2(g, fr, (ext.p4, ext.p5), ext.x, ctx)
    return _l6_out1(g, fr, ext.p4, ext.x, ctx, from_hard=False)


def _l6_out2(g: BipartiteGraph, fr: _Frame, added, z: int, ctx: _Ctx):
    """Count 5, two connectors: the second lands at z somewhere off the
    star; which pieces to delete depends only on z's segment."""
    f, p = fr.foot, fr.path
    if z == f(2):
        rows = [("L6.out2.z_at_v2", added, (p(2, 5), p(2, 6)))]
    elif z == f(3):
        rows = [("L6.out2.z_at_v3", added, (p(3, 6), p(3, 5)))]
    elif z in p(2, 4):
        rows = [("L6.out2.z_in_P24", added,
                 (subpath(p(2, 4), f(2), z), p(2, 5), p(2, 6)))]
    elif z in p(2, 5):
        rows = [("L6.out2.z_in_P25", added, (subpath(p(2, 5), f(5), z), p(2, 6)))]
    elif z in p(2, 6):
        rows = [("L6.out2.z_in_P26", added, (subpath(p(2, 6), f(6), z), p(2, 5)))]
    elif z in p(3, 4):
        rows = [("L6.out2.z_in_P34", added, (p(2, 5), subpath(p(3, 4), f(3), z)))]
    elif z in p(3, 5):
        rows = [("L6.out2.z_in_P35", added, (p(3, 6), subpath(p(3, 5), f(5), z)))]
    elif z in p(3, 6):
        rows = [("L6.out2.z_in_P36", added, (p(3, 5), subpath(p(3, 6), f(6), z)))]
    else:
        ctx.tried.append("L6.out2.unplaced_landing")
        return _rescue_or_exhaust(ctx, fr, added)
    got = ctx.first(fr, rows)
    if got is not None:
        return got
    return _rescue_or_exhaust(ctx, fr, added)


def _l6_out1(g: BipartiteGraph, fr: _Frame, q: Path, w: int, ctx: _Ctx,
             from_hard: bool):
    """Count 5, single connector landing at w.  Off-colour landings in
    segments (2, 5) and (2, 6) take the nested extension; (2, 6) first
    trades places with (2, 5), which the foot colours allow."""
    f, p = fr.foot, fr.path
    alpha = g.color[f(1)]

    if w == f(2):
        rows = [("L6.out1.w_at_v2", (q,), (p(2, 4),))]
    elif w == f(3):
        rows = [("L6.out1.w_at_v3", (q,), (p(3, 4),))]
    elif w in p(2, 4):
        rows = [("L6.out1.w_in_P24", (q,), (subpath(p(2, 4), f(4), w),))]
    elif w in p(3, 4):
        rows = [("L6.out1.w_in_P34", (q,), (subpath(p(3, 4), f(4), w),)),
                ("L6.out1.w_in_P34.alt", (q,), (p(3, 6),))]
    elif w in p(3, 5):
        rows = [("L6.out1.w_in_P35", (q,), (p(3, 4),))]
    elif w in p(3, 6):
        rows = [("L6.out1.w_in_P36", (q,), (p(3, 4),))]
    elif w in p(2, 5):
        if g.color[w] == alpha:
            rows = [("L6.out1.w_in_A_P25", (q,), (p(2, 4),)),
                    ("L6.out1.w_in_A_P25.alt", (q,), (p(3, 4),))]
        elif from_hard:
            ctx.tried.append("L6.redispatch_hit_B_P25")
            return _rescue_or_exhaust(ctx, fr, (q,))
        else:
            return _l6_hard(g, fr, q, w, ctx)
    elif w in p(2, 6):
        if g.color[w] == alpha:
            rows = [("L6.out1.w_in_A_P26", (q,), (p(2, 4),)),
                    ("L6.out1.w_in_A_P26.alt", (q,), (p(3, 4),))]
        elif from_hard:
            ctx.tried.append("L6.redispatch_hit_B_P26")
            return _rescue_or_exhaust(ctx, fr, (q,))
        else:
            # positions 5 and 6 share a colour here, so the frame may be
            # relabelled to put the landing into segment (2, 5)
            return _l6_hard(g, fr.swapped(5, 6), q, w, ctx)
    else:
        ctx.tried.append("L6.out1.unplaced_landing")
        return _rescue_or_exhaust(ctx, fr, (q,))
    got = ctx.first(fr, rows)
    if got is not None:
        return got
    return _rescue_or_exhaust(ctx, fr, (q,))


def _l6_hard(g: BipartiteGraph, fr: _Frame, q: Path, w: int, ctx: _Ctx):
    """Count 5, connector landing off-colour inside segment (2, 5).

    The count-5 tables can place any landing except the interiors of
    segments (1, 5) and (1, 6); legs rerouted through those interiors
    would tear segments the surgery keeps.  No escape set expresses
    both constraints at once (a vertex in X is banned from legs but
    offered as a landing), so the engine runs on the host with those
    interiors deleted.  Every extension it can return is dispatchable,
    and a dispatchable extension in the full host is an extension of
    the pruned one, so Unsatisfiable here is a true negative and the
    flow moves to the union search.
    """
    u = q[0]
    p14 = fr.path(1, 4)
    outside = (fr.vertices() - set(p14)) - {w}
    banned = ((set(fr.path(1, 5)) | set(fr.path(1, 6)))
              - set(p14) - {fr.foot(5), fr.foot(6)})
    xs = outside - banned
    if len(xs) < 2:
        ctx.tried.append("L6.hard.x_too_small")
        return _rescue_or_exhaust(ctx, fr, (q,))
    pruned = BipartiteGraph(
        g.n, [e for e in g.edges if not (e[0] in banned or e[1] in banned)])
    try:
        ext = _inner_extend(pruned, fr, u, q, w, xs)
    except GraphError:
        ctx.tried.append("L6.hard.no_extension")
        return _rescue_or_exhaust(ctx, fr, (q,))
    touched = set(ext.p1) | set(ext.p2) | set(ext.p3) | set(ext.p4)
    if isinstance(ext, Extension2):
        touched |= set(ext.p5)
    if (touched & outside) - {ext.x}:
        ctx.tried.append("L6.hard.star_strays")
        return _rescue_or_exhaust(ctx, fr, (q,))
    if isinstance(ext, Extension1):
        return _l6_inner1(g, _merge_inner(fr, ext), ext, w, ctx)
    return _l6_inner2(g, fr, ext, w, ctx)


def _l6_inner1(g: BipartiteGraph, fr: _Frame, ext: Extension1, w: int, ctx: _Ctx):
    q2 = ext.p1
    u2, y, r, z = ext.v, ext.u, ext.p4, ext.x
    alpha = g.color[fr.foot(1)]
    f = fr.foot
    p25, p26 = fr.path(2, 5), fr.path(2, 6)
    if z in p25 and g.color[z] != alpha:
        got = ctx.attempt("L6.hard.out1.z_in_B_P25", fr, (q2, r),
                          (subpath(p25, w, z), fr.path(2, 4)))
        if got is not None:
            return got
        return _rescue_or_exhaust(ctx, fr, (q2, r))
    if z in p26 and g.color[z] != alpha:
        rows = [("L6.hard.out1.z_in_B_P26", (q2, r),
                 (fr.path(3, 4), fr.path(3, 5), fr.path(3, 6))),
                ("L6.hard.out1.z_in_B_P26.alt", (q2, r),
                 (subpath(p25, f(5), w), subpath(p26, f(2), z), fr.path(3, 5)))]
        got = ctx.first(fr, rows)
        if got is not None:
            return got
        return _rescue_or_exhaust(ctx, fr, (q2, r))
    q3 = splice(subpath(q2, u2, y), r)
    return _l6_out1(g, fr, q3, z, ctx, from_hard=True)


def _l6_inner2(g: BipartiteGraph, fr: _Frame, ext: Extension2, w: int, ctx: _Ctx):
    f = fr.foot
    u2, q2 = ext.v, ext.p1
    a, b, c, d = ext.u, ext.s, ext.t, ext.x
    rr, ss = ext.p4, ext.p5
    carrier, spare = ext.p2, ext.p3
    v1_side = carrier[-1] == f(1)
    fr2 = _merge_inner(fr, ext)
    p25, p26 = fr2.path(2, 5), fr2.path(2, 6)
    alpha = g.color[f(1)]
    added = (q2, rr, ss)
    if d in p25 and g.color[d] != alpha:
        if p25.index(d) > p25.index(w):
            tag = "L6.hard.out2.d_in_wP25v5"
            removed = (fr2.path(3, 5), p26, subpath(p25, f(5), d), fr2.path(1, 5))
        else:
            tag = "L6.hard.out2.d_in_v2P25w"
            removed = (fr2.path(1, 5), fr2.path(2, 4), p26, subpath(p25, f(2), d))
        got = ctx.attempt(tag, fr2, added, removed)
        if got is not None:
            return got
        return _rescue_or_exhaust(ctx, fr2, added)
    if d in p26 and g.color[d] != alpha:
        got = ctx.attempt("L6.hard.out2.d_in_B_P26", fr2, added,
                          (fr2.path(2, 4), fr2.path(3, 5), subpath(p26, f(6), d)))
        if got is not None:
            return got
        return _rescue_or_exhaust(ctx, fr2, added)
    if v1_side:
        p14_3 = splice(subpath(carrier, f(1), b), rr[::-1],
                       subpath(q2, a, u2), spare)
    else:
        p14_3 = splice(spare[::-1], subpath(q2, u2, a), rr,
                       subpath(carrier, b, f(4)))
    q3 = splice(subpath(carrier, u2, c), ss)
    fr3 = fr.replaced({(1, 4): p14_3})
    return _l6_out1(g, fr3, q3, d, ctx, from_hard=True)


# --------------------------------------------------------------------------
# count 6


def improve_6(g: BipartiteGraph, h: Hex) -> Tuple[Hex, ImprovementStep]:
    """One improvement of a six-odd hex (feet of one triple all in one
    class except that positions 5 and 6 sit opposite 1..4)."""
    before = odd_count(g, h)
    if before == 9:
        raise AlreadyOdd("hex is already all-odd")
    if before != 6:
        raise GraphError("improve_6 expects an odd count of 6, got %d" % before)
    ctx, fr = _setup(g, h, (0, 0, 0, 0, 1, 1), "L7")
    f = fr.foot
    pod = TriPod(v=f(1), a=f(4), b=f(5), c=f(6),
                 p1=fr.path(1, 4), p2=fr.path(1, 5), p3=fr.path(1, 6))
    xs = fr.vertices() - fr.hull()
    try:
        ext = three_path_extend(g, pod, xs)
    except GraphError:
        ctx.tried.append("L7.no_extension")
        return _rescue_or_exhaust(ctx, fr, ())
    fr = _merge_star(fr, ext)
    if isinstance(ext, Extension2):
        return _l7_out2(g, fr, (ext.p4, ext.p5), ext.x, ctx)
    return _l7_out1(g, fr, ext.p4, ext.x, ctx, allow_hard=True)


def _l7_out2(g: BipartiteGraph, fr: _Frame, added, z: int, ctx: _Ctx):
    f, p = fr.foot, fr.path
    if z == f(2):
        rows = [("L7.out2.z_at_v2", added, (p(3, 4), p(2, 5)))]
    elif z == f(3):
        rows = [("L7.out2.z_at_v3", added, (p(2, 4), p(3, 5)))]
    elif z in p(2, 4):
        rows = [("L7.out2.z_in_P24", added, (p(3, 5), subpath(p(2, 4), f(2), z)))]
    elif z in p(2, 5):
        rows = [("L7.out2.z_in_P25", added, (p(3, 4), subpath(p(2, 5), f(5), z)))]
    elif z in p(2, 6):
        rows = [("L7.out2.z_in_P26", added, (p(3, 4), subpath(p(2, 6), f(6), z)))]
    elif z in p(3, 4):
        rows = [("L7.out2.z_in_P34", added, (p(2, 5), subpath(p(3, 4), f(3), z)))]
    elif z in p(3, 5):
        rows = [("L7.out2.z_in_P35", added, (p(2, 4), subpath(p(3, 5), f(5), z)))]
    elif z in p(3, 6):
        rows = [("L7.out2.z_in_P36", added, (p(2, 4), subpath(p(3, 6), f(6), z)))]
    else:
        ctx.tried.append("L7.out2.unplaced_landing")
        return _rescue_or_exhaust(ctx, fr, added)
    got = ctx.first(fr, rows)
    if got is not None:
        return got
    return _rescue_or_exhaust(ctx, fr, added)


def _l7_out1(g: BipartiteGraph, fr: _Frame, q: Path, w: int, ctx: _Ctx,
             allow_hard: bool):
    f, p = fr.foot, fr.path
    alpha = g.color[f(1)]

    if w == f(2):
        rows = [("L7.out1.w_at_v2", (q,), (p(2, 4),))]
    elif w == f(3):
        rows = [("L7.out1.w_at_v3", (q,), (p(3, 4),))]
    elif w in p(2, 4):
        rows = [("L7.out1.w_in_P24", (q,), (subpath(p(2, 4), f(4), w),))]
    elif w in p(3, 4):
        rows = [("L7.out1.w_in_P34", (q,), (subpath(p(3, 4), f(4), w),))]
    elif w in p(2, 5) and g.color[w] == alpha:
        rows = [("L7.out1.w_in_A_P25", (q,), (p(2, 4),))]
    elif w in p(2, 6) and g.color[w] == alpha:
        rows = [("L7.out1.w_in_A_P26", (q,), (p(2, 4),))]
    elif w in p(3, 5) and g.color[w] == alpha:
        rows = [("L7.out1.w_in_A_P35", (q,), (p(3, 4),))]
    elif w in p(3, 6) and g.color[w] == alpha:
        rows = [("L7.out1.w_in_A_P36", (q,), (p(3, 4),))]
    elif allow_hard:
        # connector landing off-colour mid-segment: discard it and run
        # the strong engine on the star instead
        return _l7_hard(g, fr, ctx)
    else:
        ctx.tried.append("L7.redispatch_hit_offcolour")
        return _rescue_or_exhaust(ctx, fr, (q,))
    got = ctx.first(fr, rows)
    if got is not None:
        return got
    return _rescue_or_exhaust(ctx, fr, (q,))


def _l7_hard(g: BipartiteGraph, fr0: _Frame, ctx: _Ctx):
    """Count 6 with no easy landing anywhere: the strong extension
    engine guarantees one of four richer outcomes on the same star.
    Outcome D can land its second connector where no deletion pattern
    exists; banning that landing and re-running the engine is sound
    because the engine never needs the banned vertex elsewhere."""
    f = fr0.foot
    pod = TriPod(v=f(1), a=f(4), b=f(5), c=f(6),
                 p1=fr0.path(1, 4), p2=fr0.path(1, 5), p3=fr0.path(1, 6))
    xs_full = fr0.vertices() - fr0.hull()
    banned: Set[int] = set()
    for _ in range(5):
        xs = xs_full - banned
        if len(xs) < 2:
            ctx.tried.append("L7.hard.x_too_small")
            break
        try:
            ext = three_path_extend_strong(g, pod, xs)
        except GraphError:
            ctx.tried.append("L7.hard.no_strong_extension")
            break
        fr = _merge_star(fr0, ext)
        try:
            if isinstance(ext, ExtensionA):
                return _l7_out1(g, fr, ext.p4, ext.x, ctx, allow_hard=False)
            if isinstance(ext, ExtensionC):
                return _l7_out2(g, fr, (ext.p4, ext.p5), ext.x, ctx)
            if isinstance(ext, ExtensionB):
                return _l7_case_b(g, fr, ext, ctx)
            return _l7_case_d(g, fr, ext, ctx)
        except _RetryShrink as retry:
            banned.add(retry.vertex)
            continue
    return _rescue_or_exhaust(ctx, fr0, ())


def _normalize_landing(fr: _Frame, x: int) -> _Frame:
    """Relabel so that x lies in segment (2, 5); valid here because both
    2/3 and 5/6 are same-coloured foot pairs.  x must not be on the
    (2, 4) / (3, 4) row."""
    if x in fr.path(2, 6) or x in fr.path(3, 6):
        fr = fr.swapped(5, 6)
    if x in fr.path(3, 5):
        fr = fr.swapped(2, 3)
    return fr


def _l7_case_b(g: BipartiteGraph, fr: _Frame, ext: ExtensionB, ctx: _Ctx):
    """Strong outcome B: connector chain u -> x with a spur to t.  The
    chain alone improves main-row landings; otherwise the spur's end
    picks the deletion pattern."""
    w = ext.x
    if w in fr.path(2, 4) or w in fr.path(3, 4):
        return _l7_out1(g, fr, ext.p4, w, ctx, allow_hard=False)
    fr = _normalize_landing(fr, w)
    f, p = fr.foot, fr.path
    p25 = p(2, 5)
    if w not in p25:
        ctx.tried.append("L7.B.unplaced_landing")
        return _rescue_or_exhaust(ctx, fr, (ext.p4, ext.p5))
    s = ext.t
    added = (ext.p4, ext.p5)
    if s in p(2, 4) or s in p(3, 4):
        q2 = splice(subpath(ext.p4, ext.u, ext.s), ext.p5)
        return _l7_out1(g, fr, q2, s, ctx, allow_hard=False)
    if s == w:
        got = ctx.union_rescue(fr, added)
        if got is not None:
            return got
        ctx.tried.append("L7.B.spur_returns_to_landing")
        raise _RetryShrink(w)
    if s == f(5) or s in p(1, 5) or s in p(3, 5):
        rows = [("L7.B.s_on_v5_side", added, (p(2, 4), subpath(p25, w, f(5))))]
    elif s in p25:
        rows = [("L7.B.s_in_P25", added, (p(2, 4), subpath(p25, w, s)))]
    elif s == f(6) or s in p(1, 6) or s in p(2, 6):
        rows = [("L7.B.s_on_v6_side", added, (p(3, 4), p(3, 5), p(3, 6)))]
    elif s in p(3, 6):
        rows = [("L7.B.s_in_P36", added,
                 (p(3, 4), p(3, 5), subpath(p(3, 6), f(3), s)))]
    else:
        ctx.tried.append("L7.B.unplaced_spur")
        return _rescue_or_exhaust(ctx, fr, added)
    got = ctx.first(fr, rows)
    if got is not None:
        return got
    return _rescue_or_exhaust(ctx, fr, added)


def _l7_case_d(g: BipartiteGraph, fr: _Frame, ext: ExtensionD, ctx: _Ctx):
    """Strong outcome D: two connectors x and y off a shared stretch of
    segment (1, 4).  Deletion is keyed on y relative to x."""
    x, y = ext.x, ext.y
    if x in fr.path(2, 4) or x in fr.path(3, 4):
        return _l7_out1(g, fr, ext.p4, x, ctx, allow_hard=False)
    fr = _normalize_landing(fr, x)
    f, p = fr.foot, fr.path
    p25 = p(2, 5)
    added = (ext.p4, ext.p5, ext.p6)
    if x not in p25:
        ctx.tried.append("L7.D.unplaced_landing")
        return _rescue_or_exhaust(ctx, fr, added)
    if y in p(2, 4) or y in p(3, 4):
        got = ctx.union_rescue(fr, added)
        if got is not None:
            return got
        ctx.tried.append("L7.D.y_on_main_row")
        raise _RetryShrink(y)
    if y == x or y in p25:
        cut = y if (y in p25 and p25.index(y) > p25.index(x)) else x
        rows = [("L7.D.y_in_P25", added,
                 (p(1, 5), p(3, 4), p(3, 5), p(3, 6), subpath(p25, cut, f(5))))]
    elif y in p(2, 6):
        rows = [("L7.D.y_in_P26", added,
                 (p(2, 4), subpath(p25, x, f(5)), p(3, 6)))]
    elif y in p(3, 5):
        rows = [("L7.D.y_in_P35", added,
                 (p(1, 5), subpath(p(3, 5), f(3), y), p(3, 4), p(3, 6)))]
    elif y in p(3, 6):
        rows = [("L7.D.y_in_P36", added,
                 (p(2, 4), subpath(p25, x, f(5)), subpath(p(3, 6), f(3), y)))]
    else:
        ctx.tried.append("L7.D.unplaced_second_landing")
        return _rescue_or_exhaust(ctx, fr, added)
    got = ctx.first(fr, rows)
    if got is not None:
        return got
    return _rescue_or_exhaust(ctx, fr, added)


# --------------------------------------------------------------------------
# driver


def improve_once(g: BipartiteGraph, h: Hex) -> Tuple[Hex, ImprovementStep]:
    """One improvement step, dispatched on the current odd count."""
    problems = validate_hex(g, h)
    if problems:
        raise NotAHex("improve_once: " + "; ".join(problems))
    count = odd_count(g, h)
    if count == 9:
        raise AlreadyOdd("hex is already all-odd")
    if count <= 3:
        return improve_le3(g, h)
    if count == 4:
        return improve_4(g, h)
    if count == 5:
        return improve_5(g, h)
    if count == 6:
        return improve_6(g, h)
    raise GraphError("impossible odd count %d" % count)


def find_odd_hex(g: BipartiteGraph, cancel=None) -> Tuple[Hex, List[ImprovementStep]]:
    """An all-odd hex of g with the improvement trail that produced it.

    The host must be bipartite (enforced by construction), non-planar
    (else PlanarInput, carrying an embedding) and internally
    4-connected (else NotInternally4Connected, carrying the witness).
    The trail never exceeds five steps, each strictly increasing the
    odd count.  ``cancel`` is polled between steps.
    """
    embedding = is_planar(g)
    if embedding is not None:
        raise PlanarInput(embedding)
    verdict = is_internally_4_connected(g)
    if verdict is not True:
        raise NotInternally4Connected(verdict)
    h = find_hex(g, cancel=cancel)
    steps: List[ImprovementStep] = []
    while odd_count(g, h) != 9:
        if cancel is not None and cancel():
            raise SearchCancelled("improvement cancelled")
        if len(steps) >= MAX_STEPS:
            raise CaseExhausted("odd count failed to reach 9 within %d steps" % MAX_STEPS,
                                [s.case_tag for s in steps])
        h, step = improve_once(g, h)
        steps.append(step)
    # final audit by raw edge counts, not the colour shortcut
    even = [seg for seg in h.all_segments() if (len(seg) - 1) % 2 == 0]
    if even:
        raise GraphError("final hex has an even segment despite the parity count")
    return h, steps
