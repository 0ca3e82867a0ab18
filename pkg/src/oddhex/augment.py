"""Tripod growth: optimal ladder search and the extension engine.

Given a three-path star (TriPod) and an escape set X, the engine
produces a validated extension object: the plain shapes "1"/"2" from
three_path_extend, or the colour-aware shapes "A"/"B"/"C"/"D" from
three_path_extend_strong.

find_augmenting_sequence is exact: it enumerates ladder sequences in
lexicographic order, shortest first, and among the shortest returns one
of maximal index.  The engine either closes the optimal ladder into an
outcome directly (short ladder, high index) or applies a case step that
rebuilds the star -- possibly moving its centre -- so that re-running
the finder yields a strictly better (length, -index) value.  Some cases
recurse on a derived star whose escape set is strictly larger, which
bounds the recursion depth.  Every constructed object is checked
clause-by-clause before use; when a construction does not apply or does
not validate, the engine falls back to a direct search over the outcome
shapes, so the result is always a validated extension or Unsatisfiable.
"""

from __future__ import annotations

from collections import deque
import networkx as nx
from typing import (Dict, FrozenSet, Iterable, List, Optional, Sequence,
                    Set, Tuple)

from .connectivity import NoFan, class_fan
from .extensions import (AugmentingSequence, Extension1, Extension2,
                         ExtensionA, ExtensionB, ExtensionC, ExtensionD,
                         TriPod)
from .graph_core import BipartiteGraph, GraphError, Path, splice, subpath
from .oracle import (search_extensions_bruteforce, validate_extension,
                     validate_tripod)


class NoSequence(GraphError):
    """No ladder sequence exists within the permitted length."""


class Unsatisfiable(GraphError):
    """No extension of the requested shape could be produced."""


# ---------------------------------------------------------------------------
# the exact ladder finder
# ---------------------------------------------------------------------------

_BUDGET = 3_000_000  # DFS step budget per candidate length


def find_augmenting_sequence(g: BipartiteGraph, t: TriPod,
                             x_set: Iterable[int],
                             max_length: Optional[int] = None,
                             prefer_cross: bool = False
                             ) -> AugmentingSequence:
    """The optimal ladder for the star: minimal length, then maximal
    index, ties broken by the lexicographically smallest flattened
    vertex sequence.

    With ``prefer_cross`` the tie-break instead favours ladders whose
    non-final landings sit on a different leg than the previous rung's
    start; the (length, index) value itself is unaffected.
    """
    xs = frozenset(x_set)
    alpha = g.color[t.v]
    legs = (t.p1, t.p2, t.p3)
    home: Dict[int, Tuple[int, int]] = {}
    for li, p in enumerate(legs):
        for pos in range(1, len(p)):
            home[p[pos]] = (li, pos)
    star = set(home) | {t.v}
    kmax = max_length if max_length is not None else g.n

    def index_of(ends: Sequence[int]) -> int:
        for i, vv in enumerate(ends, start=1):
            if i % 2 == 1 and g.color[vv] == alpha:
                return i
            if i % 2 == 0 and g.color[vv] != alpha:
                return i
        return len(ends) + 1

    def is_cross(ends: Sequence[int]) -> bool:
        for j in range(1, len(ends) - 1, 2):  # landings before the last rung
            if home[ends[j]][0] == home[ends[j - 1]][0]:
                return False
        return True

    for k in range(1, kmax + 1):
        best: Optional[Tuple[int, Tuple[Path, ...]]] = None
        best_cross: Optional[Tuple[int, Tuple[Path, ...]]] = None
        steps = 0
        ceiling = 2 * k + 1

        def record(rungs: Tuple[Path, ...]) -> bool:
            nonlocal best, best_cross
            ends = []
            for q in rungs:
                ends.append(q[0])
                ends.append(q[-1])
            idx = index_of(ends)
            if best is None or idx > best[0]:
                best = (idx, rungs)
            if prefer_cross and is_cross(ends):
                if best_cross is None or idx > best_cross[0]:
                    best_cross = (idx, rungs)
            if idx == ceiling:
                return not prefer_cross or (best_cross is not None
                                            and best_cross[0] == ceiling)
            return False

        def starts(ends: Tuple[int, ...]) -> List[int]:
            """Admissible first vertices for the next rung."""
            if not ends:
                return sorted(v for v in t.p1 if v not in (t.a, t.v))
            li, pos = home[ends[-1]]
            out = []
            for cand in legs[li][1:pos]:
                ok = True
                for m in range(len(ends) - 1):  # all but the last landing
                    hw = home.get(ends[m])
                    if hw is not None and hw[0] == li \
                            and hw[1] > home[cand][1]:
                        ok = False
                        break
                if ok:
                    out.append(cand)
            return sorted(out)

        def land_ok(w: int, ends: Tuple[int, ...]) -> bool:
            lw, pw = home[w]
            for m in range(len(ends) - 1):  # all but the rung's own start
                hw = home.get(ends[m])
                if hw is not None and hw[0] == lw and hw[1] > pw:
                    return False
            return True

        def walk(i: int, path: Tuple[int, ...], rungs: Tuple[Path, ...],
                 ends: Tuple[int, ...], used: FrozenSet[int]) -> bool:
            nonlocal steps
            steps += 1
            if steps > _BUDGET:
                return True
            for w in g.adj[path[-1]]:
                if w in path or w in used:
                    continue
                if i == k:
                    if w in xs:
                        if record(rungs + (path + (w,),)):
                            return True
                    elif w not in star:
                        if walk(i, path + (w,), rungs, ends, used):
                            return True
                else:
                    if w in xs:
                        continue
                    if w in star:
                        if w == t.v or not land_ok(w, ends + (path[0],)):
                            continue
                        nr = rungs + (path + (w,),)
                        ne = ends + (path[0], w)
                        nu = used | frozenset(path[1:])
                        for st in starts(ne):
                            if walk(i + 1, (st,), nr, ne, nu):
                                return True
                    else:
                        if walk(i, path + (w,), rungs, ends, used):
                            return True
            return False

        for v1 in starts(()):
            if walk(1, (v1,), (), (), frozenset()):
                break

        pick = best
        if prefer_cross and best_cross is not None and best is not None \
                and best_cross[0] == best[0]:
            pick = best_cross
        if pick is not None:
            return AugmentingSequence(paths=pick[1], index=pick[0])
    raise NoSequence("no ladder of length at most %d" % kmax)


# ---------------------------------------------------------------------------
# construction helpers
# ---------------------------------------------------------------------------


def _rev(p: Sequence[int]) -> Path:
    return tuple(reversed(p))


def _cat(*pieces) -> Optional[Path]:
    if any(p is None for p in pieces):
        return None
    try:
        return splice(*pieces)
    except ValueError:
        return None


def _leg_of(t: TriPod, vv: int) -> Optional[Path]:
    for p in (t.p1, t.p2, t.p3):
        if vv != t.v and vv in p:
            return p
    return None


def _by_end(v: int, paths, want: Set[int]) -> Optional[Dict[int, Path]]:
    out: Dict[int, Path] = {}
    for p in paths:
        if p is None or p[0] != v:
            return None
        out[p[-1]] = p
    if set(out) != want:
        return None
    return out


def _mk_tripod(g: BipartiteGraph, xs: FrozenSet[int], t: TriPod,
               v: int, paths) -> Optional[TriPod]:
    ends = _by_end(v, paths, {t.a, t.b, t.c})
    if ends is None:
        return None
    cand = TriPod(v=v, a=t.a, b=t.b, c=t.c,
                  p1=ends[t.a], p2=ends[t.b], p3=ends[t.c])
    return cand if not validate_tripod(g, cand, xs) else None


def _ext1(g, t, xs, v, paths, u, p4, cls=Extension1):
    ends = _by_end(v, paths, {t.a, t.b, t.c})
    if ends is None or p4 is None:
        return None
    e = cls(v=v, u=u, x=p4[-1], p1=ends[t.a], p2=ends[t.b], p3=ends[t.c],
            p4=p4)
    return e if not validate_extension(g, t, xs, e) else None


def _ext2(g, t, xs, v, p1, carrier, spare, u, s, tt, p4, p5,
          cls=Extension2):
    if any(p is None for p in (p1, carrier, spare, p4, p5)):
        return None
    if p1[0] != v or carrier[0] != v or spare[0] != v or p1[-1] != t.a:
        return None
    if {carrier[-1], spare[-1]} != {t.b, t.c}:
        return None
    e = cls(v=v, u=u, s=s, t=tt, x=p5[-1],
            p1=p1, p2=carrier, p3=spare, p4=p4, p5=p5)
    return e if not validate_extension(g, t, xs, e) else None


def _extB(g, t, xs, v, paths, u, s, tt, p4, p5):
    ends = _by_end(v, paths, {t.a, t.b, t.c})
    if ends is None or p4 is None or p5 is None:
        return None
    e = ExtensionB(v=v, u=u, s=s, t=tt, x=p4[-1], p1=ends[t.a],
                   p2=ends[t.b], p3=ends[t.c], p4=p4, p5=p5)
    return e if not validate_extension(g, t, xs, e) else None


def _extD(g, t, xs, v, paths, u, w, tt, s, p4, p5, p6):
    ends = _by_end(v, paths, {t.a, t.b, t.c})
    if ends is None or any(p is None for p in (p4, p5, p6)):
        return None
    e = ExtensionD(v=v, u=u, w=w, t=tt, s=s, x=p4[-1], y=p6[-1],
                   p1=ends[t.a], p2=ends[t.b], p3=ends[t.c],
                   p4=p4, p5=p5, p6=p6)
    return e if not validate_extension(g, t, xs, e) else None


def _inner_x(base: Set[int], t_in: TriPod) -> Optional[FrozenSet[int]]:
    xs_in = frozenset(base - t_in.vertices())
    return xs_in if len(xs_in) >= 2 else None


def _bfs_escape(g, start, goals, keep_off) -> Optional[Path]:
    """Shortest path from start into the goal set whose interior avoids
    keep_off; the landing itself may sit inside keep_off."""
    parent = {start: -1}
    q = deque([start])
    while q:
        x = q.popleft()
        for w in g.adj[x]:
            if w in goals and w != start:
                path = [w, x]
                while parent[path[-1]] != -1:
                    path.append(parent[path[-1]])
                return tuple(reversed(path))
            if w in parent or w in keep_off:
                continue
            parent[w] = x
            q.append(w)
    return None


# ---------------------------------------------------------------------------
# the descent engine for shapes "1" and "2"
# ---------------------------------------------------------------------------

_MAX_ROUNDS = 64


def _direct(g, t, xs, shapes):
    e = search_extensions_bruteforce(g, t, xs, shapes=shapes)
    if e is None and g.n <= 14:
        e = search_extensions_bruteforce(g, t, xs, shapes=shapes,
                                         exhaustive=True)
    if e is None:
        raise Unsatisfiable("no extension of shapes %s found" % (shapes,))
    return e


def _close_ext1(g, t, xs, seq):
    q = seq.paths[0]
    return _ext1(g, t, xs, t.v, (t.p1, t.p2, t.p3), q[0], q)


def _close_ext2(g, t, xs, seq):
    q1, q2 = seq.paths[0], seq.paths[1]
    carrier = _leg_of(t, q1[-1])
    if carrier is None or carrier is t.p1:
        return None
    spare = t.p3 if carrier is t.p2 else t.p2
    return _ext2(g, t, xs, t.v, t.p1, carrier, spare,
                 q1[0], q1[-1], q2[0], q1, q2)


def _case_len1_idx1(g, t, xs, seq, depth):
    """One rung whose foot shares the centre colour: recurse below the
    foot, with the upper leg stub and the rung pushed into the escape
    set, then stitch the inner outcome back together."""
    q1 = seq.paths[0]
    v1, v2 = q1[0], q1[-1]
    upper = subpath(t.p1, v1, t.a)
    t_in = TriPod(v=t.v, a=v1, b=t.b, c=t.c,
                  p1=subpath(t.p1, t.v, v1), p2=t.p2, p3=t.p3)
    xs_in = _inner_x(set(xs) | (set(upper) | set(q1)) - {v1}, t_in)
    if xs_in is None:
        return []
    try:
        e = _extend(g, t_in, xs_in, depth + 1)
    except Unsatisfiable:
        return []
    out = []
    if isinstance(e, Extension1):
        x_in = e.p4[-1]
        if x_in in xs:
            out.append(("ext", _ext1(g, t, xs, e.v,
                                     (_cat(e.p1, upper), e.p2, e.p3),
                                     e.u, e.p4)))
        elif x_in in q1:
            out.append(("ext", _ext1(g, t, xs, e.v,
                                     (_cat(e.p1, upper), e.p2, e.p3), e.u,
                                     _cat(e.p4, subpath(q1, x_in, v2)))))
        elif x_in in upper:
            out.append(("ext", _ext1(
                g, t, xs, e.v,
                (_cat(subpath(e.p1, e.v, e.u), e.p4,
                      subpath(t.p1, x_in, t.a)), e.p2, e.p3),
                e.u, _cat(subpath(e.p1, e.u, v1), q1))))
    else:
        fc, fs = e.p2, e.p3           # the carrier holds e.t then e.s
        x_in = e.p5[-1]
        if x_in in xs:
            out.append(("ext", _ext2(g, t, xs, e.v, _cat(e.p1, upper),
                                     fc, fs, e.u, e.s, e.t, e.p4, e.p5)))
        elif x_in in q1:
            out.append(("ext", _ext2(g, t, xs, e.v, _cat(e.p1, upper),
                                     fc, fs, e.u, e.s, e.t, e.p4,
                                     _cat(e.p5, subpath(q1, x_in, v2)))))
        elif x_in in upper:
            new_p1 = _cat(subpath(fc, e.v, e.t), e.p5,
                          subpath(t.p1, x_in, t.a))
            new_carrier = _cat(subpath(e.p1, e.v, e.u), e.p4,
                               subpath(fc, e.s, fc[-1]))
            out.append(("ext", _ext2(g, t, xs, e.v, new_p1, new_carrier,
                                     fs, e.t, e.s, e.u,
                                     subpath(fc, e.t, e.s),
                                     _cat(subpath(e.p1, e.u, v1), q1))))
    return [o for o in out if o[1] is not None]


def _case_idx1(g, t, xs, seq):
    """Two or more rungs, break at the first foot: escape sideways from
    just above it and reroute the first leg through the escape."""
    q1 = seq.paths[0]
    v1, v2 = q1[0], q1[-1]
    land = _leg_of(t, v2)
    if land is None or land is t.p1:
        return []
    other = t.p3 if land is t.p2 else t.p2
    i1 = t.p1.index(v1)
    u = t.p1[i1 + 1]  # opposite colour to both v1 and a, so never a
    lower = subpath(t.p1, t.v, v1)
    goals = (set(xs) | set(q1) | set(seq.paths[1]) | set(lower)
             | set(t.p2) | set(t.p3))
    r_path = _bfs_escape(g, u, goals, (set(t.p1[i1:]) - {u}) | goals)
    r1 = subpath(t.p1, u, t.a)
    r2 = subpath(t.p1, u, v1)
    if r_path is None:
        try:
            r1, r2, r_path = class_fan(g, u, [{t.a}, {v1},
                                              goals - {t.a, v1}])
        except (NoFan, ValueError):
            return []
        if r1[-1] != t.a or r2[-1] != v1:
            return []
    r = r_path[-1]
    base = _mk_tripod(g, xs, t, t.v,
                      (_cat(lower, _rev(r2), r1), t.p2, t.p3))
    cands = []
    if r in lower:
        cands.append(_mk_tripod(
            g, xs, t, t.v,
            (_cat(subpath(t.p1, t.v, r), _rev(r_path), r1), t.p2, t.p3)))
    elif r in land or r in other:
        v3 = seq.paths[1][0]
        high = r in land and land.index(r) >= land.index(v3)
        if not high:
            cands.append(_mk_tripod(
                g, xs, t, v1,
                (_cat(_rev(r2), r1),
                 _cat(q1, subpath(land, v2, land[-1])),
                 _cat(subpath(t.p1, v1, t.v), other))))
    cands.append(base)
    return [("tripod", c) for c in cands if c is not None]


def _case_idx2(g, t, xs, seq, depth):
    """Break at the first landing: recurse with the first rung as the
    new first leg and the far legs pushed into the escape set."""
    q1 = seq.paths[0]
    v1, v2 = q1[0], q1[-1]
    t_in = TriPod(v=v1, a=v2, b=t.a, c=t.v,
                  p1=q1, p2=subpath(t.p1, v1, t.a),
                  p3=subpath(t.p1, v1, t.v))
    pool = set(xs) | set(t.p2) | set(t.p3)
    for q in seq.paths[1:]:
        pool |= set(q)
    xs_in = _inner_x(pool - {t.v, v2}, t_in)
    if xs_in is None:
        return []
    try:
        e = _extend(g, t_in, xs_in, depth + 1)
    except Unsatisfiable:
        return []
    f1, vv = e.p1, e.v               # f1 runs from vv back to v2
    v2leg = _leg_of(t, v2)
    if v2leg is t.p1:
        v2leg = None
    out = []
    if isinstance(e, Extension1):
        merged = _cat(_rev(e.p3), e.p2)
        x_in = e.p4[-1]
        if x_in in xs:
            out.append(("ext", _ext1(g, t, xs, t.v,
                                     (merged, t.p2, t.p3), vv,
                                     _cat(subpath(f1, vv, e.u), e.p4))))
        elif x_in in t.p2 or x_in in t.p3:
            land = t.p2 if x_in in t.p2 else t.p3
            othr = t.p3 if land is t.p2 else t.p2
            if land is v2leg:
                if land.index(x_in) > land.index(v2):
                    leg = _cat(subpath(land, t.v, v2),
                               subpath(f1, v2, e.u), e.p4,
                               subpath(land, x_in, land[-1]))
                else:
                    leg = _cat(subpath(land, t.v, x_in), _rev(e.p4),
                               subpath(f1, e.u, v2),
                               subpath(land, v2, land[-1]))
                for first in (t.p1, merged):
                    out.append(("tripod", _mk_tripod(
                        g, xs, t, t.v, (first, leg, othr))))
            elif v2leg is not None:
                out.append(("tripod", _mk_tripod(
                    g, xs, t, e.u,
                    (_cat(subpath(f1, e.u, vv), e.p2),
                     _cat(subpath(f1, e.u, v2),
                          subpath(v2leg, v2, v2leg[-1])),
                     _cat(e.p4, subpath(land, x_in, land[-1]))))))
    else:
        carrier = e.p2               # passes e.t before e.s
        if carrier[-1] == t.v:
            aleg = e.p3
            merged = _cat(_rev(carrier), aleg)
            x_in = e.p5[-1]
            if x_in in xs:
                out.append(("ext", _ext1(
                    g, t, xs, t.v,
                    (_cat(subpath(carrier, t.v, e.s), _rev(e.p4),
                          subpath(f1, e.u, vv), aleg), t.p2, t.p3),
                    e.s, _cat(subpath(carrier, e.s, e.t), e.p5))))
            elif v2leg is not None and (x_in in t.p2 or x_in in t.p3):
                land = t.p2 if x_in in t.p2 else t.p3
                othr = t.p3 if land is t.p2 else t.p2
                if land is v2leg and land.index(x_in) > land.index(v2):
                    out.append(("tripod", _mk_tripod(
                        g, xs, t, e.t,
                        (_cat(subpath(carrier, e.t, vv), aleg),
                         _cat(e.p5, subpath(land, x_in, land[-1])),
                         _cat(subpath(carrier, e.t, t.v), othr)))))
                elif land is v2leg:
                    out.append(("tripod", _mk_tripod(
                        g, xs, t, e.u,
                        (_cat(subpath(f1, e.u, vv), aleg),
                         _cat(subpath(f1, e.u, v2),
                              subpath(land, v2, land[-1])),
                         _cat(e.p4, subpath(carrier, e.s, t.v), othr)))))
                else:
                    out.append(("tripod", _mk_tripod(
                        g, xs, t, e.t,
                        (_cat(subpath(carrier, e.t, vv), aleg),
                         _cat(subpath(carrier, e.t, e.s), _rev(e.p4),
                              subpath(f1, e.u, v2),
                              subpath(v2leg, v2, v2leg[-1])),
                         _cat(e.p5, subpath(land, x_in, land[-1]))))))
        else:
            vleg = e.p3
            merged = _cat(_rev(vleg), carrier)
            x_in = e.p5[-1]
            if x_in in xs:
                out.append(("ext", _ext1(
                    g, t, xs, t.v,
                    (_cat(_rev(vleg), subpath(f1, vv, e.u), e.p4,
                          subpath(carrier, e.s, t.a)), t.p2, t.p3),
                    e.s, _cat(subpath(carrier, e.s, e.t), e.p5))))
    out.append(("tripod", _mk_tripod(g, xs, t, t.v,
                                     (merged, t.p2, t.p3))))
    return [o for o in out if o[1] is not None]


def _case_idx3(g, t, xs, seq, depth):
    """Break at the second rung's start: recurse around the first
    landing, the first rung becoming one leg of the inner star."""
    q1 = seq.paths[0]
    v1, v2 = q1[0], q1[-1]
    land = _leg_of(t, v2)
    if land is None or land is t.p1:
        return []
    other = t.p3 if land is t.p2 else t.p2
    v3 = seq.paths[1][0]
    low = subpath(land, t.v, v3)
    t_in = TriPod(v=v2, a=v3, b=v1, c=land[-1],
                  p1=subpath(land, v2, v3), p2=_rev(q1),
                  p3=subpath(land, v2, land[-1]))
    pool = set(xs) | set(t.p1) | set(low) | set(other)
    for q in seq.paths[1:]:
        pool |= set(q)
    xs_in = _inner_x(pool - {v1, v3}, t_in)
    if xs_in is None:
        return []
    try:
        e = _extend(g, t_in, xs_in, depth + 1)
    except Unsatisfiable:
        return []
    r1, r2, r3 = e.p1, e.p2, e.p3   # to v3, to v1, up the landing leg
    vv = e.v
    merged = _cat(low, _rev(r1), r3)
    out = []
    if isinstance(e, Extension1):
        x_in = e.p4[-1]
        if x_in in xs:
            out.append(("ext", _ext2(g, t, xs, t.v, t.p1, merged, other,
                                     v1, vv, e.u, _rev(r2), e.p4)))
        elif x_in in low:
            out.append(("tripod", _mk_tripod(
                g, xs, t, t.v,
                (t.p1,
                 _cat(subpath(land, t.v, x_in), _rev(e.p4),
                      subpath(r1, e.u, vv), r3), other))))
        elif x_in in other:
            out.append(("tripod", _mk_tripod(
                g, xs, t, vv,
                (_cat(r2, subpath(t.p1, v1, t.a)), r3,
                 _cat(subpath(r1, vv, e.u), e.p4,
                      subpath(other, x_in, other[-1]))))))
        elif x_in in t.p1:
            if t.p1.index(x_in) > t.p1.index(v1):
                out.append(("tripod", _mk_tripod(
                    g, xs, t, vv,
                    (_cat(subpath(r1, vv, e.u), e.p4,
                          subpath(t.p1, x_in, t.a)), r3,
                     _cat(r2, subpath(t.p1, v1, t.v), other)))))
            elif g.color[x_in] == g.color[t.v]:
                out.append(("tripod", _mk_tripod(
                    g, xs, t, vv,
                    (_cat(r2, subpath(t.p1, v1, t.a)), r3,
                     _cat(subpath(r1, vv, e.u), e.p4,
                          subpath(t.p1, x_in, t.v), other)))))
            else:
                out.extend(_idx3_nested(g, t, xs, seq, depth,
                                        (land, other, r1, r2, r3, vv,
                                         e.u, e.p4, x_in)))
    else:
        carrier = e.p2               # passes e.t before e.s
        if carrier[-1] == v1:
            x_in = e.p5[-1]
            if x_in in xs:
                out.append(("ext", _ext1(
                    g, t, xs, t.v, (t.p1, merged, other), v1,
                    _cat(subpath(carrier, v1, e.t), e.p5))))
            else:
                above = (x_in in t.p1
                         and t.p1.index(x_in) > t.p1.index(v1))
                if x_in in low:
                    tail = _cat(subpath(land, x_in, t.v), other)
                elif x_in in other:
                    tail = subpath(other, x_in, other[-1])
                elif x_in in t.p1 and not above:
                    tail = _cat(subpath(t.p1, x_in, t.v), other)
                else:
                    tail = None
                if tail is not None:
                    out.append(("tripod", _mk_tripod(
                        g, xs, t, vv,
                        (_cat(subpath(r1, vv, e.u), e.p4,
                              subpath(carrier, e.s, v1),
                              subpath(t.p1, v1, t.a)),
                         r3,
                         _cat(subpath(carrier, vv, e.t), e.p5, tail)))))
                elif above:
                    out.append(("tripod", _mk_tripod(
                        g, xs, t, vv,
                        (_cat(subpath(carrier, vv, e.t), e.p5,
                              subpath(t.p1, x_in, t.a)),
                         r3,
                         _cat(subpath(r1, vv, e.u), e.p4,
                              subpath(carrier, e.s, v1),
                              subpath(t.p1, v1, t.v), other)))))
        else:
            merged = _cat(low, _rev(r1), carrier)
    out.append(("tripod", _mk_tripod(g, xs, t, t.v,
                                     (t.p1, merged, other))))
    return [o for o in out if o[1] is not None]


def _idx3_nested(g, t, xs, seq, depth, ctx):
    """The stubborn corner of the index-3 case: the inner escape lands
    low on the first leg with the off colour, so recurse once more
    around that landing."""
    land, other, r1, r2, r3, vv, u_i, p4, x_in = ctx
    q1 = seq.paths[0]
    v1, v2 = q1[0], q1[-1]
    v3 = seq.paths[1][0]
    t_in = TriPod(v=t.v, a=v3, b=x_in, c=other[-1],
                  p1=subpath(land, t.v, v3),
                  p2=subpath(t.p1, t.v, x_in), p3=other)
    pool = (set(xs) | set(subpath(t.p1, x_in, t.a))
            | set(subpath(land, v3, land[-1])) | set(p4))
    for q in seq.paths:
        pool |= set(q)
    xs_in = _inner_x(pool - {x_in, v3}, t_in)
    if xs_in is None:
        return []
    try:
        e2 = _extend(g, t_in, xs_in, depth + 1)
    except Unsatisfiable:
        return []
    w1, w2, w3 = e2.p1, e2.p2, e2.p3   # to v3, to x_in, along the far leg
    vv2 = e2.v
    out = []
    if isinstance(e2, Extension1):
        u2, p5 = e2.u, e2.p4
        x2 = p5[-1]
        if x2 in xs:
            out.append(("ext", _ext2(
                g, t, xs, vv2,
                _cat(w2, subpath(t.p1, x_in, t.a)),
                _cat(w1, _rev(r1), r3), w3,
                v1, vv, u2, _rev(r2), p5)))
        elif x2 in p4 and vv2 == t.v:
            out.append(("tripod", _mk_tripod(
                g, xs, t, t.v,
                (t.p1,
                 _cat(subpath(w1, t.v, u2), p5, _rev(subpath(p4, u_i, x2)),
                      subpath(r1, u_i, vv), r3), other))))
        elif x2 in q1 and vv2 == t.v:
            out.append(("tripod", _mk_tripod(
                g, xs, t, t.v,
                (t.p1,
                 _cat(subpath(w1, t.v, u2), p5, subpath(q1, x2, v2),
                      subpath(land, v2, land[-1])), other))))
        elif x2 in subpath(t.p1, x_in, v1):
            out.append(("tripod", _mk_tripod(
                g, xs, t, vv,
                (_cat(r2, subpath(t.p1, v1, t.a)), r3,
                 _cat(subpath(r1, vv, u_i), p4,
                      subpath(t.p1, x_in, t.v), other)))))
        elif x2 in subpath(land, v3, land[-1]) and vv2 == t.v:
            out.append(("tripod", _mk_tripod(
                g, xs, t, t.v,
                (t.p1,
                 _cat(subpath(w1, t.v, u2), p5,
                      subpath(land, x2, land[-1])), other))))
        if vv2 == t.v:
            out.append(("tripod", _mk_tripod(
                g, xs, t, t.v, (t.p1, _cat(w1, _rev(r1), r3), other))))
    else:
        carrier = e2.p2              # passes e2.t before e2.s
        if carrier[-1] == x_in:
            x2 = e2.p5[-1]
            if x2 in p4:
                out.append(("tripod", _mk_tripod(
                    g, xs, t, vv2,
                    (_cat(subpath(w1, vv2, e2.u), e2.p4,
                          subpath(carrier, e2.s, x_in),
                          subpath(t.p1, x_in, t.a)),
                     _cat(subpath(carrier, vv2, e2.t), e2.p5,
                          subpath(p4, x2, u_i), subpath(r1, u_i, vv), r3),
                     w3))))
            elif x2 in subpath(t.p1, x_in, v1):
                out.append(("tripod", _mk_tripod(
                    g, xs, t, e2.s,
                    (_cat(subpath(carrier, e2.s, e2.t), e2.p5,
                          subpath(t.p1, x2, t.a)),
                     _cat(subpath(carrier, e2.s, x_in), _rev(p4),
                          subpath(r1, u_i, vv), r3),
                     _cat(_rev(e2.p4), subpath(w1, e2.u, vv2), w3)))))
    return [o for o in out if o[1] is not None]


def _case_long(g, t, xs, seq):
    """Three or more rungs, index at least four: fold the first two
    rungs into a star centred on the first landing."""
    q1, q2 = seq.paths[0], seq.paths[1]
    v1, v2, v3, v4 = q1[0], q1[-1], q2[0], q2[-1]
    l2, l4 = _leg_of(t, v2), _leg_of(t, v4)
    if l2 is None or l4 is None or t.p1 in (l2, l4) or l2 is l4:
        return []
    cand = _mk_tripod(g, xs, t, v2,
                      (_cat(_rev(q1), subpath(t.p1, v1, t.a)),
                       subpath(l2, v2, l2[-1]),
                       _cat(subpath(l2, v2, v3), q2,
                            subpath(l4, v4, l4[-1]))))
    return [("tripod", cand)] if cand is not None else []


def _extend(g, t, xs, depth):
    if depth > g.n:
        return _direct(g, t, xs, ("1", "2"))
    cur = t
    cur_val = None
    for _ in range(_MAX_ROUNDS):
        try:
            seq = find_augmenting_sequence(g, cur, xs, prefer_cross=True)
        except NoSequence:
            break
        val = (seq.length, -seq.index)
        if cur_val is not None and not val < cur_val:
            break
        cur_val = val
        k, idx = seq.length, seq.index
        if k == 1 and idx >= 2:
            e = _close_ext1(g, cur, xs, seq)
            if e is not None:
                return e
            break
        if k == 2 and idx >= 4:
            e = _close_ext2(g, cur, xs, seq)
            if e is not None:
                return e
            break
        if k == 1:
            moves = _case_len1_idx1(g, cur, xs, seq, depth)
        elif idx == 1:
            moves = _case_idx1(g, cur, xs, seq)
        elif idx == 2:
            moves = _case_idx2(g, cur, xs, seq, depth)
        elif idx == 3:
            moves = _case_idx3(g, cur, xs, seq, depth)
        else:
            moves = _case_long(g, cur, xs, seq)
        nxt = None
        for kind, obj in moves:
            if kind == "ext":
                return obj
            try:
                s2 = find_augmenting_sequence(g, obj, xs,
                                              prefer_cross=True)
            except NoSequence:
                continue
            if (s2.length, -s2.index) < val:
                nxt = obj
                break
        if nxt is None:
            break
        cur = nxt
    return _direct(g, cur, xs, ("1", "2"))


def _min_disjoint_legs(g: BipartiteGraph, root: int, targets, banned):
    """A minimum-total-length triple of paths from ``root`` to the three
    ``targets``, vertex disjoint except at the root and avoiding
    ``banned``; None when no such triple exists.  Computed as unit
    min-cost flow on the node-split digraph, so the answer is both
    deterministic and as short as the graph allows."""
    sink = ("sink",)
    net = nx.DiGraph()
    allowed = [v for v in range(g.n) if v not in banned]
    tset = set(targets)
    for v in allowed:
        if v != root:
            net.add_edge(("i", v), ("o", v), capacity=1, weight=0)
    for v in allowed:
        for w in g.adj[v]:
            if w in banned or w == root:
                continue
            if v in tset:
                continue  # legs end at a target, never pass through one
            src = ("o", v) if v != root else ("r",)
            net.add_edge(src, ("i", w), capacity=1, weight=1)
    for tgt in targets:
        net.add_edge(("o", tgt), sink, capacity=1, weight=0)
    if ("r",) not in net or sink not in net:
        return None
    try:
        flow = nx.max_flow_min_cost(net, ("r",), sink)
    except nx.NetworkXUnfeasible:
        return None
    if sum(flow.get(("r",), {}).values()) < 3:
        return None
    by_end: Dict[int, Path] = {}
    for _ in range(3):
        path = [root]
        node = ("r",)
        while node != sink:
            step = min(w for w, f in flow[node].items() if f > 0)
            flow[node][step] -= 1
            if step != sink and step[0] == "i":
                path.append(step[1])
            node = step
        by_end[path[-1]] = tuple(path)
    if set(by_end) != tset:
        return None
    return tuple(by_end[tgt] for tgt in targets)


def _leg_variants(g: BipartiteGraph, t: TriPod, xs: FrozenSet[int]):
    """Tripods with the same leg ends as ``t`` but re-chosen apex and
    minimum-length disjoint legs.  Rerouting can free interior vertices
    the fixed legs occupy, which is sometimes the only way an escape
    can reach X; the original apex is tried first."""
    targets = (t.a, t.b, t.c)
    cands = [t.v] + [v for v in range(g.n)
                     if g.color[v] == g.color[t.v] and v != t.v
                     and v not in xs and v not in targets]
    for apex in cands:
        legs = _min_disjoint_legs(g, apex, targets, set(xs))
        if legs is None:
            continue
        pod = TriPod(v=apex, a=t.a, b=t.b, c=t.c,
                     p1=legs[0], p2=legs[1], p3=legs[2])
        if pod == t or validate_tripod(g, pod, xs):
            continue
        yield pod


def three_path_extend(g: BipartiteGraph, t: TriPod, x_set: Iterable[int]):
    """A validated outcome of shape "1" or "2" for the star and escape
    set, or Unsatisfiable."""
    xs = frozenset(x_set)
    bad = validate_tripod(g, t, xs)
    if bad:
        raise Unsatisfiable("bad tripod: " + "; ".join(bad))
    try:
        return _extend(g, t, xs, 0)
    except Unsatisfiable:
        pass
    for pod in _leg_variants(g, t, xs):
        try:
            return _extend(g, pod, xs, 0)
        except Unsatisfiable:
            continue
    raise Unsatisfiable("no extension of shapes ('1', '2') for any legs")


# ---------------------------------------------------------------------------
# the colour-aware engine for shapes "A" .. "D"
# ---------------------------------------------------------------------------


def _strong_from_A(g, t, xs, ctx, e_in):
    """Inner outcome (A): its landing and detour fold into shape B."""
    f1, f2, f3, u2, v2, p2c, p3c = ctx
    return _extB(g, t, xs, v2, (_cat(_rev(f3), f2), p2c, p3c),
                 u2, e_in.u, e_in.x, f1, e_in.p4)


def _strong_from_B(g, t, xs, ctx, e_in):
    """Inner outcome (B): the forked escape lands back on the star."""
    f1, f2, f3, u2, v2, p2c, p3c = ctx
    x = f1[-1]
    u_in, s_in = e_in.u, e_in.s
    p4i, p5i = e_in.p4, e_in.p5     # u_in .. s_in .. y  and  s_in .. w
    y, w = e_in.x, e_in.t
    p1eff = _cat(_rev(f3), f2)
    if y in xs:
        return _ext1(g, t, xs, v2, (p1eff, p2c, p3c), u2,
                     _cat(subpath(f1, u2, u_in), p4i), cls=ExtensionA)
    if w in xs:
        return _ext1(g, t, xs, v2, (p1eff, p2c, p3c), u2,
                     _cat(subpath(f1, u2, u_in),
                          subpath(p4i, u_in, s_in), p5i), cls=ExtensionA)
    if y in p2c:
        land, other = p2c, p3c
    elif y in p3c:
        land, other = p3c, p2c
    else:
        return None
    if w in land:
        if land.index(w) < land.index(y):  # swap the fork's two tails
            p4i = _cat(subpath(p4i, u_in, s_in), p5i)
            p5i = subpath(e_in.p4, s_in, y)
            if p4i is None:
                return None
            y, w = w, y
        return _extB(g, t, xs, v2,
                     (p1eff,
                      _cat(subpath(land, v2, y), subpath(p4i, y, s_in),
                           p5i, subpath(land, w, land[-1])), other),
                     u2, u_in, s_in, f1, subpath(p4i, u_in, s_in))
    if w in f3:
        return _extB(g, t, xs, w,
                     (_cat(subpath(f3, w, u2), f2),
                      _cat(_rev(p5i), subpath(p4i, s_in, y),
                           subpath(land, y, land[-1])),
                      _cat(subpath(f3, w, v2), other)),
                     u2, u_in, s_in, f1, subpath(p4i, u_in, s_in))
    if w in other:
        return _extB(g, t, xs, w,
                     (_cat(subpath(other, w, v2), _rev(f3), f2),
                      _cat(_rev(p5i), subpath(p4i, s_in, y),
                           subpath(land, y, land[-1])),
                      subpath(other, w, other[-1])),
                     u2, u_in, s_in, f1, subpath(p4i, u_in, s_in))
    if w not in f2:
        return None
    # w sits high on the rebuilt first leg: escape sideways below y
    pieces = (set(f1) | set(f2) | set(f3) | set(p2c) | set(p3c)
              | set(p4i) | set(p5i))
    low = subpath(land, v2, y)
    goals = (pieces | xs) - set(low)
    for r in low[1:-1]:
        if g.color[r] != g.color[x]:
            continue
        p7 = _bfs_escape(g, r, goals, pieces | xs)
        if p7 is None:
            continue
        got = _strong_escape(g, t, xs, ctx, e_in, (y, w, r, p7),
                             land, other)
        if got is not None:
            return got
    return None


def _strong_escape(g, t, xs, ctx, e_in, esc, land, other):
    f1, f2, f3, u2, v2, p2c, p3c = ctx
    x = f1[-1]
    u_in, s_in = e_in.u, e_in.s
    p4i, p5i = e_in.p4, e_in.p5
    y, w, r, p7 = esc
    z = p7[-1]
    p1eff = _cat(_rev(f3), f2)
    legA = _cat(subpath(p4i, y, s_in), p5i, subpath(f2, w, t.a))
    backA = _cat(subpath(p4i, s_in, u_in), subpath(f1, u_in, x))
    if z in xs:
        return _ext2(g, t, xs, v2, p1eff, land, other, u2, y, r,
                     _cat(subpath(f1, u2, u_in), subpath(p4i, u_in, y)),
                     p7, cls=ExtensionC)
    if z in f3:
        return _extB(g, t, xs, y,
                     (legA, subpath(land, y, land[-1]),
                      _cat(subpath(land, y, v2), other)),
                     s_in, u_in, r, backA,
                     _cat(subpath(f1, u_in, u2), subpath(f3, u2, z),
                          _rev(p7)))
    if z in other:
        return _extB(g, t, xs, y,
                     (legA, subpath(land, y, land[-1]),
                      _cat(subpath(land, y, r), p7,
                           subpath(other, z, other[-1]))),
                     s_in, u_in, r, backA,
                     _cat(subpath(f1, u_in, u2), f3,
                          subpath(land, v2, r)))
    if z in f2:
        if f2.index(z) < f2.index(w):
            return _extB(g, t, xs, y,
                         (legA, subpath(land, y, land[-1]),
                          _cat(subpath(land, y, r), p7,
                               subpath(f2, z, u2), f3, other)),
                         s_in, u_in, u2, backA, subpath(f1, u_in, u2))
        return _ext2(g, t, xs, y,
                     _cat(subpath(land, y, r), p7, subpath(f2, z, t.a)),
                     _cat(subpath(p4i, y, s_in), p5i,
                          subpath(f2, w, u2), f3, other),
                     subpath(land, y, land[-1]),
                     r, v2, u2, subpath(land, r, v2), f1,
                     cls=ExtensionC)
    if z in land:
        if land.index(z) > land.index(y):
            return _extB(g, t, xs, v2,
                         (p1eff,
                          _cat(subpath(land, v2, r), p7,
                               subpath(land, z, land[-1])), other),
                         u2, u_in, r, f1,
                         _cat(subpath(p4i, u_in, y),
                              subpath(land, y, r)))
        return None
    if z in f1:
        if f1.index(z) < f1.index(u_in):
            return _extB(g, t, xs, y,
                         (legA, subpath(land, y, land[-1]),
                          _cat(subpath(land, y, v2), other)),
                         s_in, u_in, r, backA,
                         _cat(subpath(f1, u_in, z), _rev(p7)))
        return _ext2(g, t, xs, v2, p1eff, land, other, u2, y, r,
                     _cat(subpath(f1, u2, u_in), subpath(p4i, u_in, y)),
                     _cat(p7, subpath(f1, z, x)), cls=ExtensionC)
    if z in p4i:
        return _extB(g, t, xs, v2, (p1eff, land, other),
                     u2, u_in, r, f1,
                     _cat(subpath(p4i, u_in, z), _rev(p7)))
    if z in p5i:
        return _extB(g, t, xs, v2, (p1eff, land, other),
                     u2, u_in, r, f1,
                     _cat(subpath(p4i, u_in, s_in),
                          subpath(p5i, s_in, z), _rev(p7)))
    return None


def _strong_from_C(g, t, xs, ctx, e_in):
    """Inner outcome (C): a double landing riding the rebuilt leg."""
    f1, f2, f3, u2, v2, p2c, p3c = ctx
    x = f1[-1]
    carrier, spare = e_in.p2, e_in.p3
    if carrier[-1] != t.a:
        return None
    # along the carrier from the fork: u2, then e_in.t, then e_in.s
    w, s_c, u_c = e_in.t, e_in.s, e_in.u
    p5, p6 = e_in.p4, e_in.p5       # u_c -> s_c  and  w -> y
    y = e_in.x
    p1eff = _cat(_rev(spare), carrier)
    if y in xs and g.color[y] != g.color[t.v]:
        return _extD(g, t, xs, v2, (p1eff, p2c, p3c),
                     u2, w, s_c, u_c, f1, p5, p6)
    if y in xs:
        return _ext1(g, t, xs, v2,
                     (_cat(_rev(spare), subpath(f1, u2, u_c), p5,
                           subpath(carrier, s_c, t.a)), p2c, p3c),
                     u2, _cat(subpath(carrier, u2, w), p6),
                     cls=ExtensionA)
    if y in p2c:
        land, other = p2c, p3c
    elif y in p3c:
        land, other = p3c, p2c
    else:
        return None
    return _extB(g, t, xs, w,
                 (subpath(carrier, w, t.a),
                  _cat(p6, subpath(land, y, land[-1])),
                  _cat(subpath(carrier, w, u2), spare, other)),
                 s_c, u_c, u2,
                 _cat(_rev(p5), subpath(f1, u_c, x)),
                 subpath(f1, u_c, u2))


def _strong_from_D(g, t, xs, ctx, e_in):
    """Inner outcome (D): two separate escapes out of the rebuilt leg."""
    f1, f2, f3, u2, v2, p2c, p3c = ctx
    p1eff = _cat(_rev(f3), f2)
    xd, yd = e_in.x, e_in.y
    if xd in xs:
        got = _ext1(g, t, xs, v2, (p1eff, p2c, p3c), u2,
                    _cat(subpath(f1, u2, e_in.u), e_in.p4),
                    cls=ExtensionA)
        if got is not None:
            return got
    if yd in xs:
        got = _ext1(g, t, xs, v2, (p1eff, p2c, p3c), u2,
                    _cat(subpath(f1, u2, e_in.w), e_in.p6),
                    cls=ExtensionA)
        if got is not None:
            return got
    for land, other in ((p2c, p3c), (p3c, p2c)):
        if xd in land and yd in land \
                and land.index(yd) < land.index(xd):
            return _ext2(g, t, xs, v2, p1eff,
                         _cat(subpath(land, v2, yd), _rev(e_in.p6),
                              subpath(f1, e_in.w, e_in.u), e_in.p4,
                              subpath(land, xd, land[-1])),
                         other, u2, e_in.u, e_in.w,
                         subpath(f1, u2, e_in.u),
                         subpath(f1, e_in.w, f1[-1]), cls=ExtensionC)
    return None


def _extend_strong(g, t, xs, depth):
    if depth > g.n:
        return _direct(g, t, xs, ("A", "C", "B", "D"))
    try:
        e = _extend(g, t, xs, depth)
    except Unsatisfiable:
        return _direct(g, t, xs, ("A", "C", "B", "D"))
    if isinstance(e, Extension2):
        c = ExtensionC(v=e.v, u=e.u, s=e.s, t=e.t, x=e.x,
                       p1=e.p1, p2=e.p2, p3=e.p3, p4=e.p4, p5=e.p5)
        if not validate_extension(g, t, xs, c):
            return c
        return _direct(g, t, xs, ("A", "C", "B", "D"))
    if g.color[e.x] == g.color[t.v]:
        a = ExtensionA(v=e.v, u=e.u, x=e.x,
                       p1=e.p1, p2=e.p2, p3=e.p3, p4=e.p4)
        if not validate_extension(g, t, xs, a):
            return a
        return _direct(g, t, xs, ("A", "C", "B", "D"))
    # off-colour landing: recurse below it with the far legs escaped
    t_in = TriPod(v=e.u, a=e.x, b=t.a, c=e.v,
                  p1=e.p4, p2=subpath(e.p1, e.u, t.a),
                  p3=subpath(e.p1, e.u, e.v))
    xs_in = _inner_x((set(xs) | set(e.p2) | set(e.p3)) - {e.x, e.v},
                     t_in)
    got = None
    if xs_in is not None and not validate_tripod(g, t_in, xs_in):
        try:
            e_in = _extend_strong(g, t_in, xs_in, depth + 1)
        except Unsatisfiable:
            e_in = None
        if e_in is not None:
            # e_in's legs run to e.x, to a, and back to the old centre
            ctx = (e_in.p1, e_in.p2, e_in.p3, e_in.v, e.v, e.p2, e.p3)
            if isinstance(e_in, ExtensionA):
                got = _strong_from_A(g, t, xs, ctx, e_in)
            elif isinstance(e_in, ExtensionB):
                got = _strong_from_B(g, t, xs, ctx, e_in)
            elif isinstance(e_in, ExtensionC):
                got = _strong_from_C(g, t, xs, ctx, e_in)
            elif isinstance(e_in, ExtensionD):
                got = _strong_from_D(g, t, xs, ctx, e_in)
    if got is not None:
        return got
    return _direct(g, t, xs, ("A", "C", "B", "D"))


def three_path_extend_strong(g: BipartiteGraph, t: TriPod,
                             x_set: Iterable[int]):
    """A validated outcome of shape "A", "B", "C" or "D"."""
    xs = frozenset(x_set)
    bad = validate_tripod(g, t, xs)
    if bad:
        raise Unsatisfiable("bad tripod: " + "; ".join(bad))
    try:
        return _extend_strong(g, t, xs, 0)
    except Unsatisfiable:
        pass
    for pod in _leg_variants(g, t, xs):
        try:
            return _extend_strong(g, pod, xs, 0)
        except Unsatisfiable:
            continue
    raise Unsatisfiable("no extension of shapes ('A', 'C', 'B', 'D') for any legs")
