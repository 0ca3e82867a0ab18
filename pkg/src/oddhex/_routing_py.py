"""Pure-Python segment router; reference semantics for the C twin.

The contract both backends honour: segments are routed in row-major
order (foot1[i] -> foot2[j]), neighbours are tried ascending, and the
first complete routing is returned.  Pruning must be sound (only cut
branches with no completion below them) so the first solution -- and
therefore the whole package's output -- is backend-independent.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

Path = Tuple[int, ...]

_ORDER = tuple((i, j) for i in range(3) for j in range(3))


def route_segments(adj: Sequence[Sequence[int]], t1: Sequence[int],
                   t2: Sequence[int],
                   allowed: Optional[Sequence[bool]] = None,
                   ) -> Optional[Tuple[Path, ...]]:
    """Nine internally disjoint paths foot1[i] -> foot2[j], or None.

    ``allowed`` masks the vertices interiors may use (feet are always
    usable as endpoints).  Interiors never touch feet or each other.
    """
    n = len(adj)
    feet = tuple(t1) + tuple(t2)
    if len(set(feet)) != 6:
        raise ValueError("feet must be six distinct vertices")
    free = [True] * n
    if allowed is not None:
        for v in range(n):
            free[v] = bool(allowed[v])
    for f in feet:
        free[f] = False

    segs: List[Optional[Path]] = [None] * 9

    def reachable(start: int, goal: int) -> bool:
        # plain BFS over currently free vertices; endpoints exempt
        if goal in adj[start]:
            return True
        seen = [False] * n
        seen[start] = True
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for w in adj[x]:
                    if w == goal:
                        return True
                    if free[w] and not seen[w]:
                        seen[w] = True
                        nxt.append(w)
            frontier = nxt
        return False

    def forward_check(k: int) -> bool:
        for i, j in _ORDER[k:]:
            if not reachable(t1[i], t2[j]):
                return False
        return True

    def extend(cur: int, goal: int, k: int, path: List[int]) -> bool:
        for w in adj[cur]:
            if w == goal:
                path.append(w)
                segs[k] = tuple(path)
                if solve(k + 1):
                    return True
                segs[k] = None
                path.pop()
            elif free[w]:
                free[w] = False
                path.append(w)
                if extend(w, goal, k, path):
                    return True
                path.pop()
                free[w] = True
        return False

    def solve(k: int) -> bool:
        if k == 9:
            return True
        if not forward_check(k):
            return False
        i, j = _ORDER[k]
        return extend(t1[i], t2[j], k, [t1[i]])

    if solve(0):
        return tuple(segs)  # type: ignore[arg-type]
    return None
