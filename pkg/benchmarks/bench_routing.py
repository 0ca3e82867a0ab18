"""Benchmark: compiled segment router vs. the pure-Python twin.

Routes all nine hex segments for every color-split foot-triple pair of a
few hosts, with both backends, and reports wall time and speedup.  Both
backends must return identical routes on every call (the compiled router
is an optimization, never a behavior change); the script exits nonzero
on any disagreement.

Run:  python3 benchmarks/bench_routing.py [--repeat N]
"""

from __future__ import annotations

import argparse
import sys
import time
from itertools import combinations

from oddhex.generators import named, random_instance
from oddhex.routing import ROUTING_BACKEND, route_hex_segments


def _foot_pairs(g, cap):
    left = [v for v in range(g.n) if g.color[v] == 0]
    right = [v for v in range(g.n) if g.color[v] == 1]
    pairs = []
    for t1 in combinations(left, 3):
        for t2 in combinations(right, 3):
            pairs.append((t1, t2))
            if len(pairs) >= cap:
                return pairs
    return pairs


def bench_host(label, g, cap, repeat):
    pairs = _foot_pairs(g, cap)
    results = {}
    for backend in ("python", "c"):
        best = None
        routed = None
        for _ in range(repeat):
            t0 = time.perf_counter()
            routed = [
                route_hex_segments(g, t1, t2, backend=backend)
                for t1, t2 in pairs
            ]
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        results[backend] = (best, routed)
    t_py, routes_py = results["python"]
    t_c, routes_c = results["c"]
    agree = routes_py == routes_c
    hits = sum(1 for r in routes_py if r is not None)
    print(
        "%-28s %4d pairs (%3d routed)  python %8.3fs   compiled %8.3fs   "
        "x%.1f   %s"
        % (
            label,
            len(pairs),
            hits,
            t_py,
            t_c,
            t_py / t_c if t_c > 0 else float("inf"),
            "agree" if agree else "MISMATCH",
        )
    )
    return agree


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3, help="timing repetitions")
    args = ap.parse_args(argv)

    if ROUTING_BACKEND != "c":
        print(
            "warning: compiled router not built; 'c' calls fall back to "
            "python and the comparison is vacuous",
            file=sys.stderr,
        )

    hosts = [
        ("k44", named("k44"), 16),
        ("k55m", named("k55m"), 60),
        ("heawood", named("heawood"), 400),
        ("random n=16 seed=5", random_instance(16, 5), 200),
        ("random n=20 seed=11", random_instance(20, 11), 120),
    ]
    ok = True
    for label, g, cap in hosts:
        ok = bench_host(label, g, cap, args.repeat) and ok
    if not ok:
        print("backend disagreement detected", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
