"""The compiled router must be indistinguishable from the pure one."""

import os
import subprocess
import sys
from itertools import combinations

import pytest

from oddhex.generators import random_instance
from oddhex.routing import ROUTING_BACKEND, route_hex_segments

from helpers import circulant, gen_petersen, host


def _pairs(g, cap):
    left = [v for v in range(g.n) if g.color[v] == 0]
    right = [v for v in range(g.n) if g.color[v] == 1]
    out = []
    for t1 in combinations(left, 3):
        for t2 in combinations(right, 3):
            out.append((t1, t2))
            if len(out) >= cap:
                return out
    return out


compiled = pytest.mark.skipif(
    ROUTING_BACKEND != "c", reason="compiled extension not built"
)


@compiled
class TestBackendAgreement:
    @pytest.mark.parametrize(
        "g,cap",
        [
            (host("k44"), 16),
            (host("k55m"), 100),
            (host("heawood"), 300),
            (circulant(16, 5), 200),
            (gen_petersen(8, 3), 200),
            (random_instance(14, 9), 150),
        ],
        ids=["k44", "k55m", "heawood", "c16", "gp8", "rand14"],
    )
    def test_identical_routes(self, g, cap):
        for t1, t2 in _pairs(g, cap):
            a = route_hex_segments(g, t1, t2, backend="python")
            b = route_hex_segments(g, t1, t2, backend="c")
            assert a == b, "backends disagree on feet %s | %s" % (t1, t2)

    def test_allowed_mask_identical(self):
        g = host("k55m")
        for banned in range(g.n):
            allowed = [v != banned for v in range(g.n)]
            for t1, t2 in _pairs(g, 20):
                if banned in t1 or banned in t2:
                    continue
                a = route_hex_segments(g, t1, t2, allowed, backend="python")
                b = route_hex_segments(g, t1, t2, allowed, backend="c")
                assert a == b
                if a is not None:
                    assert all(banned not in seg for seg in a)


class TestBackendSelection:
    def test_backend_reported(self):
        assert ROUTING_BACKEND in ("c", "python")

    def test_unknown_backend_rejected(self):
        g = host("k33")
        with pytest.raises(ValueError):
            route_hex_segments(g, (0, 1, 2), (3, 4, 5), backend="fortran")

    def test_pure_env_forces_python(self):
        env = dict(os.environ, ODDHEX_PURE="1")
        out = subprocess.run(
            [sys.executable, "-c",
             "from oddhex.routing import ROUTING_BACKEND; print(ROUTING_BACKEND)"],
            capture_output=True,
            text=True,
            env=env,
            check=True,
        )
        assert out.stdout.strip() == "python"

    def test_routes_are_nine_disjoint_segments(self):
        g = host("k44")
        segs = route_hex_segments(g, (0, 1, 2), (4, 5, 6))
        assert segs is not None and len(segs) == 9
        feet = {0, 1, 2, 4, 5, 6}
        interiors = []
        for k, p in enumerate(segs):
            i, j = divmod(k, 3)
            assert p[0] == (0, 1, 2)[i] and p[-1] == (4, 5, 6)[j]
            assert all(g.has_edge(u, v) for u, v in zip(p, p[1:]))
            interiors.extend(v for v in p[1:-1] if v not in feet)
        assert len(interiors) == len(set(interiors))
