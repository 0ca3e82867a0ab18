"""Hex object, parity accounting, surgery, normalization, certificates."""

import json

import pytest

from oddhex.generators import named
from oddhex.graph_core import BipartiteGraph, Parity
from oddhex.hexes import (
    Hex,
    InconsistentParity,
    NotAHex,
    PatternUnreachable,
    Surgery,
    apply_surgery,
    certificate,
    certificate_json,
    hex_from_edges,
    normalize,
    odd_count,
    parity_profile,
    validate_hex,
    verify_certificate,
)
from oddhex.oracle import enumerate_hexes
from oddhex.seed import find_hex

from helpers import circulant, gen_petersen, host

# frozen: the exact certificate emitted for K33 (byte-for-byte)
K33_CERT_JSON = (
    '{"feet":[0,1,2,3,4,5],"format":"oddhex-certificate-v1",'
    '"graph_hash":"293f3e7299792f75e9faec61e70c42b0d3ab5b158899ab47'
    '126968184481baf6","n":6,"odd_count":9,"segments":'
    '[[[0,3],[0,4],[0,5]],[[1,3],[1,4],[1,5]],[[2,3],[2,4],[2,5]]],'
    '"steps":[]}\n'
)

# frozen: the foot-color pattern each odd count is normalized to before
# case dispatch (see improver); counts 1, 2, 7, 8 are impossible
PATTERNS = {
    0: (0, 0, 0, 0, 0, 0),
    3: (0, 0, 0, 0, 0, 1),
    4: (0, 0, 1, 0, 0, 1),
    5: (0, 0, 1, 0, 1, 1),
    6: (0, 0, 0, 0, 1, 1),
    9: (0, 0, 0, 1, 1, 1),
}


def k33_hex():
    return find_hex(host("k33"))


class TestValidateHex:
    def test_k33_valid(self):
        assert validate_hex(host("k33"), k33_hex()) == []

    def test_duplicate_feet(self):
        h = k33_hex()
        bad = Hex(feet=(0, 1, 2, 3, 4, 4), segments=h.segments)
        assert "feet are not 6 distinct vertices" in validate_hex(host("k33"), bad)[0]

    def test_nonedge_reported(self):
        h = k33_hex()
        segs = [list(row) for row in h.segments]
        segs[0][0] = (0, 1, 3)  # 0-1 joins two left vertices: not an edge
        bad = Hex(feet=h.feet, segments=tuple(tuple(r) for r in segs))
        problems = validate_hex(host("k33"), bad)
        assert any("non-edge" in p for p in problems)

    def test_segment_must_join_its_feet(self):
        h = k33_hex()
        segs = [list(row) for row in h.segments]
        segs[0][0] = (0, 4)  # should join feet 0 and 3
        bad = Hex(feet=h.feet, segments=tuple(tuple(r) for r in segs))
        problems = validate_hex(host("k33"), bad)
        assert any("does not join feet" in p for p in problems)

    def test_offfeet_intersection_reported(self):
        g = named("subdivided_k33", parities=[[2, 0, 0]] * 3)
        h = hex_from_edges(g, g.edges)
        segs = [list(row) for row in h.segments]
        # reroute segment (2,4) through segment (1,4)'s interior vertex
        inner = segs[0][0][1]
        segs[1][0] = (h.feet[1], inner, h.feet[3])
        bad = Hex(feet=h.feet, segments=tuple(tuple(r) for r in segs))
        problems = validate_hex(g, bad)
        assert problems  # either non-edge or intersection, depending on wiring


class TestParity:
    def test_k33_all_odd(self):
        g = host("k33")
        prof = parity_profile(g, k33_hex())
        assert prof.odd_count == 9
        assert {prof.p, prof.r} == {0, 3}
        assert all(x is Parity.ODD for row in prof.matrix for x in row)

    def test_algebra_on_enumerated_hexes(self):
        for g in (host("k44"), gen_petersen(6, 3)):
            for h in enumerate_hexes(g, limit=300):
                prof = parity_profile(g, h)
                assert prof.odd_count in (0, 3, 4, 5, 6, 9)
                assert prof.odd_count == prof.p * (3 - prof.r) + (3 - prof.p) * prof.r
                for i in range(3):
                    for j in range(3):
                        differs = g.color[h.feet[i]] != g.color[h.feet[3 + j]]
                        assert (prof.matrix[i][j] is Parity.ODD) == differs

    def test_inconsistent_parity_detected(self):
        # parity_profile audits lengths against colors without touching
        # edges, so a fabricated even-length walk between opposite-colour
        # feet must be flagged (real paths can never produce this)
        g = host("k33")
        h = k33_hex()
        segs = [list(row) for row in h.segments]
        segs[0][0] = (0, 4, 1, 5, 3)  # 4 edges between colors that differ
        bad = Hex(feet=h.feet, segments=tuple(tuple(r) for r in segs))
        with pytest.raises(InconsistentParity):
            parity_profile(g, bad)


class TestHexFromEdges:
    def test_round_trip(self):
        g = host("k44")
        h = find_hex(g)
        again = hex_from_edges(g, h.edges())
        assert again.edges() == h.edges()
        assert set(again.feet) == set(h.feet)
        assert validate_hex(g, again) == []

    def test_canonical_feet_order(self):
        g = host("k33")
        h = hex_from_edges(g, g.edges)
        assert h.feet == (0, 1, 2, 3, 4, 5)

    def test_rejects_broken_degree(self):
        g = host("k33")
        edges = set(k33_hex().edges())
        edges.discard((0, 3))
        with pytest.raises(NotAHex):
            hex_from_edges(g, edges)

    def test_rejects_nonedges(self):
        g = host("k33")
        with pytest.raises(NotAHex):
            hex_from_edges(g, {(0, 1)})

    def test_rejects_stray_cycle_component(self):
        k33 = [(i, j) for i in (0, 1, 2) for j in (3, 4, 5)]
        shifted = [(u + 6, v + 6) for u, v in k33]
        g = BipartiteGraph(12, k33 + shifted)
        edges = set(k33_hex().edges())
        edges |= {(6, 9), (9, 7), (7, 10), (10, 6)}  # 4-cycle, no branch vertex
        with pytest.raises(NotAHex) as err:
            hex_from_edges(g, edges)
        assert "no branch vertex" in str(err.value)


class TestApplySurgery:
    def test_reroute_one_segment(self):
        g = host("k44")
        h = find_hex(g)  # feet (0,1,2,4,5,6); vertices 3 and 7 are free
        s = Surgery(added=((0, 7, 3, 4),), removed=(((0, 4)),))
        h2 = apply_surgery(g, h, s)
        assert validate_hex(g, h2) == []
        assert odd_count(g, h2) == 9
        assert (0, 7) in h2.edges() and (0, 4) not in h2.edges()

    def test_added_must_attach(self):
        g = host("k44")
        h = find_hex(g)
        with pytest.raises(NotAHex):
            apply_surgery(g, h, Surgery(added=((3, 7),), removed=()))

    def test_added_may_chain(self):
        g = named("subdivided_k33", parities=[[2, 0, 0]] * 3)
        h = hex_from_edges(g, g.edges)
        # no-op chain: add nothing, remove nothing
        assert apply_surgery(g, h, Surgery(added=(), removed=())).edges() == h.edges()

    def test_removed_must_exist(self):
        g = host("k44")
        h = find_hex(g)
        with pytest.raises(NotAHex):
            apply_surgery(g, h, Surgery(added=(), removed=((3, 7),)))


class TestNormalize:
    def _hexes_by_count(self):
        buckets = {}
        for g in (host("heawood"), gen_petersen(8, 3), circulant(16, 5)):
            for h in enumerate_hexes(g, limit=2000):
                c = odd_count(g, h)
                buckets.setdefault(c, [])
                if len(buckets[c]) < 8:
                    buckets[c].append((g, h))
        return buckets

    def test_every_count_reaches_its_pattern(self):
        buckets = self._hexes_by_count()
        # these hosts are known to produce at least counts 3, 4, 5, 9
        assert {3, 4, 5, 9} <= set(buckets), sorted(buckets)
        for count, items in sorted(buckets.items()):
            want = PATTERNS[count]
            flipped = tuple(c ^ 1 for c in want)
            for g, h in items:
                h2, info = normalize(g, h, want)
                colors = tuple(g.color[v] for v in h2.feet)
                assert colors in (want, flipped)
                assert h2.edges() == h.edges()
                assert validate_hex(g, h2) == []
                assert odd_count(g, h2) == count

    def test_unreachable_pattern_raises(self):
        g = host("k33")
        with pytest.raises(PatternUnreachable):
            normalize(g, k33_hex(), PATTERNS[6])

    def test_info_reports_group_element(self):
        g = host("k33")
        h2, info = normalize(g, k33_hex(), PATTERNS[9])
        assert set(info) == {"swap", "first", "second", "color_flipped"}
        assert sorted(info["first"]) == [0, 1, 2]
        assert sorted(info["second"]) == [0, 1, 2]


class TestCertificates:
    def test_k33_bytes_frozen(self):
        g = host("k33")
        cert = certificate(g, k33_hex())
        assert certificate_json(cert) == K33_CERT_JSON
        assert len(certificate_json(cert).encode()) == 240

    def test_verify_accepts(self):
        g = host("k44")
        cert = certificate(g, find_hex(g))
        assert verify_certificate(g, cert) == []

    def test_verify_round_trips_through_json(self):
        g = host("heawood")
        cert = json.loads(certificate_json(certificate(g, find_hex(g))))
        assert verify_certificate(g, cert) == []

    def test_wrong_graph_rejected(self):
        cert = certificate(host("k33"), k33_hex())
        problems = verify_certificate(host("k44"), cert)
        assert any("hash mismatch" in p for p in problems)

    def test_unknown_format_rejected(self):
        cert = certificate(host("k33"), k33_hex())
        cert["format"] = "something-else"
        assert verify_certificate(host("k33"), cert) == [
            "unknown certificate format 'something-else'"
        ]

    def test_even_segment_rejected(self):
        # a genuine hex with even segments: subdivide one K33 edge twice
        # on a host where the detour keeps feet colors aligned
        g = named("subdivided_k33", parities=[[1, 1, 1], [0, 0, 0], [0, 0, 0]])
        h = hex_from_edges(g, g.edges)
        cert = certificate(g, h)
        problems = verify_certificate(g, cert)
        assert any("even" in p for p in problems)
        assert any("declared odd_count" in p for p in problems)

    def test_nonedge_segment_rejected(self):
        g = host("k33")
        cert = certificate(g, k33_hex())
        cert["segments"][0][0] = [0, 1, 3]  # 0-1 is a non-edge
        problems = verify_certificate(g, cert)
        assert any("non-edge" in p for p in problems)

    def test_malformed_payload_rejected(self):
        g = host("k33")
        cert = certificate(g, k33_hex())
        del cert["segments"]
        problems = verify_certificate(g, cert)
        assert any("malformed" in p for p in problems)

    def test_deterministic_bytes(self):
        g = circulant(16, 5)
        h = find_hex(g)
        a = certificate_json(certificate(g, h))
        b = certificate_json(certificate(g, find_hex(g)))
        assert a == b
