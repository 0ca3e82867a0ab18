"""The hex certificate object: validation, parity accounting, surgery.

A *hex* is a subdivision of K3,3 inside a host graph: six feet (the
degree-3 branch vertices) and nine internally disjoint segments, one per
foot pair across the two triples.  In a bipartite host a segment is odd
exactly when its endpoints have different colors, so the number of odd
segments is a function of the foot coloring alone; everything downstream
leans on that.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .graph_core import (
    LEFT,
    BipartiteGraph,
    GraphError,
    Parity,
    graph_hash,
    path_parity,
)

Path = Tuple[int, ...]


class NotAHex(GraphError):
    """A surgery result is not a subdivision of K3,3."""


class InconsistentParity(GraphError):
    """Edge-count parity disagrees with endpoint colors: corrupt data."""


class PatternUnreachable(GraphError):
    """No hex symmetry maps the foot coloring onto the requested pattern."""


@dataclass(frozen=True)
class Hex:
    """Six feet and a 3x3 array of segments.

    ``feet`` is (v1, v2, v3, v4, v5, v6); ``segments[i][j]`` is the path
    from ``feet[i]`` to ``feet[3 + j]``, stored in that orientation.
    """

    feet: Tuple[int, int, int, int, int, int]
    segments: Tuple[Tuple[Path, Path, Path], ...]

    def segment(self, i: int, j: int) -> Path:
        """Segment between foot i in {1,2,3} and foot j in {4,5,6}."""
        return self.segments[i - 1][j - 4]

    def all_segments(self) -> List[Path]:
        return [self.segments[i][j] for i in range(3) for j in range(3)]

    def vertices(self) -> frozenset:
        out = set()
        for seg in self.all_segments():
            out.update(seg)
        return frozenset(out)

    def edges(self) -> frozenset:
        out = set()
        for seg in self.all_segments():
            for u, v in zip(seg, seg[1:]):
                out.add((u, v) if u < v else (v, u))
        return frozenset(out)


@dataclass(frozen=True)
class ParityProfile:
    matrix: Tuple[Tuple[Parity, Parity, Parity], ...]
    p: int
    r: int
    odd_count: int


@dataclass(frozen=True)
class Surgery:
    """Paths to graft onto the hex union and subpaths to delete from it.

    ``added`` paths are attached in order: each must be an H-path of the
    union built so far (both ends on it, interior off it).  ``removed``
    paths name edges of the final union to delete.  Together they spell
    the operation H + P - Q, with P allowed to chain (a later path may
    end on an earlier one, which the compound improvement cases need).
    """

    added: Tuple[Path, ...]
    removed: Tuple[Path, ...]


def validate_hex(g: BipartiteGraph, h: Hex) -> List[str]:
    """Check every hex invariant against g; return all violations."""
    out: List[str] = []
    feet = h.feet
    if len(feet) != 6 or len(set(feet)) != 6:
        out.append("feet are not 6 distinct vertices")
        return out
    for v in feet:
        if not (0 <= v < g.n):
            out.append("foot %d is not a vertex of the graph" % v)
            return out
    if len(h.segments) != 3 or any(len(row) != 3 for row in h.segments):
        out.append("segments is not a 3x3 array")
        return out
    occupancy: Dict[int, List[Tuple[int, int]]] = {}
    for i in range(3):
        for j in range(3):
            seg = h.segments[i][j]
            name = "segment (%d,%d)" % (i + 1, j + 4)
            if len(seg) < 2:
                out.append(name + " has no edge")
                continue
            if seg[0] != feet[i] or seg[-1] != feet[3 + j]:
                out.append(name + " does not join feet %d and %d"
                           % (feet[i], feet[3 + j]))
            if len(set(seg)) != len(seg):
                out.append(name + " repeats a vertex")
            for u, v in zip(seg, seg[1:]):
                if not g.has_edge(u, v):
                    out.append(name + " uses non-edge (%d,%d)" % (u, v))
            for v in seg:
                occupancy.setdefault(v, []).append((i, j))
    if out:
        return out
    for v, segs in occupancy.items():
        if v in feet:
            k = feet.index(v)
            expected = (
                [(k, j) for j in range(3)] if k < 3 else [(i, k - 3) for i in range(3)]
            )
            if sorted(segs) != sorted(expected):
                out.append("foot %d does not lie on exactly its 3 incident segments" % v)
        elif len(segs) > 1:
            out.append(
                "segments %s intersect off-feet at vertex %d"
                % (sorted((i + 1, j + 4) for i, j in segs), v)
            )
    return out


def parity_profile(g: BipartiteGraph, h: Hex) -> ParityProfile:
    """Per-segment parities plus the foot-color accounting.

    Raises InconsistentParity when the edge counts disagree with the
    bipartite color rule; in a valid host that can only mean the hex or
    the graph is corrupt.
    """
    matrix = []
    for i in range(3):
        row = []
        for j in range(3):
            seg = h.segments[i][j]
            par = path_parity(seg)
            colors_differ = g.color[h.feet[i]] != g.color[h.feet[3 + j]]
            if (par is Parity.ODD) != colors_differ:
                raise InconsistentParity(
                    "segment (%d,%d) has %s edge count but endpoint colors %s"
                    % (i + 1, j + 4, par.name.lower(),
                       "differ" if colors_differ else "agree")
                )
            row.append(par)
        matrix.append(tuple(row))
    p = sum(1 for v in h.feet[:3] if g.color[v] == LEFT)
    r = sum(1 for v in h.feet[3:] if g.color[v] == LEFT)
    odd = sum(1 for row in matrix for x in row if x is Parity.ODD)
    if odd != p * (3 - r) + (3 - p) * r or odd not in (0, 3, 4, 5, 6, 9):
        raise InconsistentParity(
            "odd count %d inconsistent with foot colors p=%d r=%d" % (odd, p, r)
        )
    return ParityProfile(matrix=tuple(matrix), p=p, r=r, odd_count=odd)


def odd_count(g: BipartiteGraph, h: Hex) -> int:
    return parity_profile(g, h).odd_count


# -- recomputing a hex from a bare edge set --------------------------------


def hex_from_edges(g: BipartiteGraph, edge_set) -> Hex:
    """Interpret an edge set as a subdivision of K3,3.

    Feet and segments are recomputed from scratch: the six degree-3
    vertices become the feet, maximal degree-2 chains become segments.
    Raises NotAHex if the edge set is not such a subdivision.  Feet order
    is canonical (the triple containing the smallest branch vertex comes
    first, both triples sorted ascending).
    """
    adj: Dict[int, List[int]] = {}
    for u, v in edge_set:
        if not g.has_edge(u, v):
            raise NotAHex("edge (%d,%d) not in host graph" % (u, v))
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    for v in adj:
        adj[v].sort()
    degrees = {v: len(a) for v, a in adj.items()}
    branch = sorted(v for v, d in degrees.items() if d == 3)
    bad = {v: d for v, d in degrees.items() if d not in (2, 3)}
    if bad:
        raise NotAHex("vertices with degree other than 2 or 3: %s" % (bad,))
    if len(branch) != 6:
        raise NotAHex("expected 6 degree-3 vertices, found %d" % len(branch))

    chains: List[Path] = []
    used = set()
    for b in branch:
        for first in adj[b]:
            key = (b, first) if b < first else (first, b)
            step = (b, first)
            if step in used:
                continue
            chain = [b, first]
            used.add(step)
            used.add((first, b))
            while degrees[chain[-1]] == 2:
                prev, cur = chain[-2], chain[-1]
                nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
                used.add((cur, nxt))
                used.add((nxt, cur))
                chain.append(nxt)
            if chain[-1] == b:
                raise NotAHex("chain from %d closes on itself" % b)
            if degrees[chain[-1]] != 3:
                raise NotAHex("chain from %d ends at a degree-2 vertex" % b)
            if len(set(chain)) != len(chain):
                raise NotAHex("chain from %d repeats a vertex" % b)
            chains.append(tuple(chain))
    # every edge must be covered (a stray cycle of degree-2 vertices
    # would be unreachable from any branch vertex)
    if len(used) != 2 * len(edge_set):
        raise NotAHex("edge set contains a component with no branch vertex")

    # dedup the two traversal directions
    seen = {}
    for c in chains:
        key = c if c[0] < c[-1] else c[::-1]
        seen[key] = c
    chains = sorted(seen.keys())
    if len(chains) != 9:
        raise NotAHex("expected 9 segments, found %d" % len(chains))

    partners: Dict[int, List[int]] = {b: [] for b in branch}
    by_pair: Dict[Tuple[int, int], Path] = {}
    for c in chains:
        x, y = c[0], c[-1]
        partners[x].append(y)
        partners[y].append(x)
        pair = (x, y) if x < y else (y, x)
        if pair in by_pair:
            raise NotAHex("two segments join %d and %d" % pair)
        by_pair[pair] = c
    for b in branch:
        if len(set(partners[b])) != 3:
            raise NotAHex("branch vertex %d has repeated partners" % b)

    b0 = branch[0]
    triple2 = sorted(partners[b0])
    triple1 = sorted(v for v in branch if v not in triple2)
    if b0 not in triple1 or len(triple1) != 3:
        raise NotAHex("branch adjacency is not K3,3")
    for x in triple1:
        if sorted(partners[x]) != triple2:
            raise NotAHex("branch adjacency is not K3,3")

    feet = tuple(triple1 + triple2)
    segments = []
    for i in range(3):
        row = []
        for j in range(3):
            x, y = feet[i], feet[3 + j]
            c = by_pair[(x, y) if x < y else (y, x)]
            row.append(c if c[0] == x else c[::-1])
        segments.append(tuple(row))
    h = Hex(feet=feet, segments=tuple(segments))
    problems = validate_hex(g, h)
    if problems:
        raise NotAHex("recomputed hex invalid: " + "; ".join(problems))
    return h


def apply_surgery(g: BipartiteGraph, h: Hex, s: Surgery) -> Hex:
    """H + P - Q: graft the added paths, delete the removed edges,
    drop isolated vertices, and recompute the hex."""
    union_edges = set(h.edges())
    union_vertices = set(h.vertices())
    for idx, p in enumerate(s.added):
        if len(p) < 2 or len(set(p)) != len(p):
            raise NotAHex("added path %d is not a simple path" % idx)
        for u, v in zip(p, p[1:]):
            if not g.has_edge(u, v):
                raise NotAHex("added path %d uses non-edge (%d,%d)" % (idx, u, v))
        if p[0] not in union_vertices or p[-1] not in union_vertices:
            raise NotAHex("added path %d must end on the current union" % idx)
        if any(v in union_vertices for v in p[1:-1]):
            raise NotAHex("added path %d passes through the current union" % idx)
        if len(p) == 2 and _ekey(p[0], p[1]) in union_edges:
            raise NotAHex("added path %d duplicates an existing edge" % idx)
        for u, v in zip(p, p[1:]):
            union_edges.add(_ekey(u, v))
        union_vertices.update(p)
    for idx, q in enumerate(s.removed):
        if len(q) < 2:
            raise NotAHex("removed piece %d has no edge" % idx)
        for u, v in zip(q, q[1:]):
            e = _ekey(u, v)
            if e not in union_edges:
                raise NotAHex(
                    "removed piece %d names edge (%d,%d) not in the union" % (idx, u, v)
                )
            union_edges.remove(e)
    return hex_from_edges(g, union_edges)


def _ekey(u: int, v: int) -> Tuple[int, int]:
    return (u, v) if u < v else (v, u)


# -- symmetry normalization -------------------------------------------------

_PERMS3 = tuple(itertools.permutations(range(3)))


def _relabel(h: Hex, swap: bool, sigma, tau) -> Hex:
    if swap:
        base_feet = h.feet[3:] + h.feet[:3]
        base_segs = tuple(
            tuple(h.segments[j][i][::-1] for j in range(3)) for i in range(3)
        )
    else:
        base_feet = h.feet
        base_segs = h.segments
    feet = tuple(base_feet[sigma[i]] for i in range(3)) + tuple(
        base_feet[3 + tau[j]] for j in range(3)
    )
    segs = tuple(
        tuple(base_segs[sigma[i]][tau[j]] for j in range(3)) for i in range(3)
    )
    return Hex(feet=feet, segments=segs)


def normalize(g: BipartiteGraph, h: Hex, pattern: Sequence[int]):
    """Relabel feet so their colors match ``pattern`` (a 6-tuple of
    colors for v1..v6, accepted up to a global color flip).

    The symmetry group is: permute the first triple, permute the second,
    optionally swap the triples — 72 relabelings, times the color flip.
    Returns (hex, info) where info records the group element used.
    Raises PatternUnreachable if no element matches; that means the
    caller dispatched a case whose precondition this hex cannot meet.
    """
    pattern = tuple(pattern)
    if len(pattern) != 6 or any(c not in (0, 1) for c in pattern):
        raise ValueError("pattern must be six colors")
    flipped = tuple(c ^ 1 for c in pattern)
    for swap in (False, True):
        for sigma in _PERMS3:
            for tau in _PERMS3:
                cand = _relabel(h, swap, sigma, tau)
                colors = tuple(g.color[v] for v in cand.feet)
                for flip, want in ((False, pattern), (True, flipped)):
                    if colors == want:
                        info = {
                            "swap": swap,
                            "first": tuple(sigma),
                            "second": tuple(tau),
                            "color_flipped": flip,
                        }
                        return cand, info
    raise PatternUnreachable(
        "no relabeling of feet %s matches pattern %s" % (h.feet, pattern)
    )


# -- certificates -----------------------------------------------------------

CERT_FORMAT = "oddhex-certificate-v1"


def certificate(g: BipartiteGraph, h: Hex, steps=()) -> dict:
    """The verifiable JSON payload for an odd hex plus its audit trail."""
    profile = parity_profile(g, h)
    return {
        "format": CERT_FORMAT,
        "graph_hash": graph_hash(g),
        "n": g.n,
        "feet": list(h.feet),
        "segments": [[list(p) for p in row] for row in h.segments],
        "odd_count": profile.odd_count,
        "steps": [_step_payload(s) for s in steps],
    }


def _step_payload(step) -> dict:
    return {
        "lemma_tag": step.lemma_tag,
        "case_tag": step.case_tag,
        "before_count": step.before_count,
        "after_count": step.after_count,
        "surgery": {
            "added": [list(p) for p in step.surgery.added],
            "removed": [list(p) for p in step.surgery.removed],
        },
    }


def certificate_json(cert: dict) -> str:
    return json.dumps(cert, sort_keys=True, separators=(",", ":")) + "\n"


def hex_from_certificate(cert: dict) -> Hex:
    feet = tuple(int(v) for v in cert["feet"])
    segments = tuple(
        tuple(tuple(int(v) for v in p) for p in row) for row in cert["segments"]
    )
    return Hex(feet=feet, segments=segments)


def verify_certificate(g: BipartiteGraph, cert: dict) -> List[str]:
    """Re-check a certificate from scratch; returns all violations.

    Validates structure, edge existence, disjointness, and that all nine
    segments are odd by direct edge count.  Does not re-run any search.
    """
    out: List[str] = []
    if cert.get("format") != CERT_FORMAT:
        return ["unknown certificate format %r" % cert.get("format")]
    if cert.get("graph_hash") != graph_hash(g):
        out.append("graph hash mismatch: certificate is for a different graph")
    if cert.get("n") != g.n:
        out.append("vertex count mismatch")
    try:
        h = hex_from_certificate(cert)
    except (KeyError, TypeError, ValueError) as exc:
        out.append("malformed certificate payload: %s" % exc)
        return out
    out.extend(validate_hex(g, h))
    if out:
        return out
    for i in range(3):
        for j in range(3):
            seg = h.segments[i][j]
            if (len(seg) - 1) % 2 == 0:
                out.append("segment (%d,%d) even" % (i + 1, j + 4))
    declared = cert.get("odd_count")
    if declared != 9:
        out.append("declared odd_count %r is not 9" % declared)
    return out
