"""Backend selection for the segment router.

The compiled router is used when the extension built; otherwise the
pure-Python twin takes over.  Setting ODDHEX_PURE=1 in the environment
forces the pure router even when the extension is available.
ROUTING_BACKEND says which one is live.  Both implement the same
first-solution contract, so everything above this module is
backend-agnostic.
"""

from __future__ import annotations

import os
from typing import Optional, Sequence, Tuple

from .graph_core import BipartiteGraph
from ._routing_py import route_segments as _route_py

Path = Tuple[int, ...]

try:
    if os.environ.get("ODDHEX_PURE"):
        raise ImportError("pure backend forced by ODDHEX_PURE")
    from ._routing_c import route_segments_csr as _route_csr
    ROUTING_BACKEND = "c"
except ImportError:  # extension not built or disabled; pure fallback
    _route_csr = None
    ROUTING_BACKEND = "python"

_csr_cache: dict = {}


def _csr(g: BipartiteGraph):
    key = id(g)
    hit = _csr_cache.get(key)
    if hit is not None and hit[0] is g:
        return hit[1], hit[2]
    import array
    indptr = array.array("i", [0])
    indices = array.array("i")
    for v in range(g.n):
        indices.extend(g.adj[v])
        indptr.append(len(indices))
    _csr_cache.clear()  # one-entry cache; callers loop over one graph
    _csr_cache[key] = (g, indptr, indices)
    return indptr, indices


def route_hex_segments(g: BipartiteGraph, t1: Sequence[int], t2: Sequence[int],
                       allowed: Optional[Sequence[bool]] = None,
                       backend: Optional[str] = None,
                       ) -> Optional[Tuple[Path, ...]]:
    """Nine internally disjoint segments t1[i] -> t2[j] in row-major
    order, lexicographically first, or None.  ``allowed`` restricts the
    vertices interiors may use."""
    use = backend or ROUTING_BACKEND
    if use == "c" and _route_csr is not None:
        indptr, indices = _csr(g)
        return _route_csr(g.n, indptr, indices, tuple(t1), tuple(t2), allowed)
    if use in ("c", "python"):
        return _route_py(g.adj, tuple(t1), tuple(t2), allowed)
    raise ValueError("unknown routing backend %r" % use)
