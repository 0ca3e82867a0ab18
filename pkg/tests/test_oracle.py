"""Brute-force reference layer: hex enumeration, odd-hex existence,
planarity via forbidden subdivisions, and the clause validators for
tripods, extensions, and ladder sequences."""

from itertools import combinations

import networkx as nx
import pytest

from helpers import gen_petersen, glued_k33s, host
from oddhex.extensions import AugmentingSequence, Extension1, TriPod
from oddhex.generators import SplitMix64, named
from oddhex.graph_core import BipartiteGraph
from oddhex.hexes import odd_count, validate_hex
from oddhex.oracle import (
    best_sequence_bruteforce,
    enumerate_augmenting_sequences,
    enumerate_hexes,
    has_hex_bruteforce,
    is_planar_bruteforce,
    odd_hex_exists_bruteforce,
    search_extensions_bruteforce,
    sequence_index,
    validate_augmenting_sequence,
    validate_extension,
    validate_tripod,
)


def subdivided_k5() -> BipartiteGraph:
    """K5, every edge subdivided once: bipartite and non-planar, but with
    only five vertices of degree three it cannot host a hex."""
    edges, nxt = [], 5
    for u, v in combinations(range(5), 2):
        edges += [(u, nxt), (nxt, v)]
        nxt += 1
    return BipartiteGraph(nxt, edges)


class TestEnumerateHexes:
    def test_k33_has_exactly_one(self):
        hexes = enumerate_hexes(host("k33"))
        assert len(hexes) == 1
        assert hexes[0].feet == (0, 1, 2, 3, 4, 5)

    def test_k44_count_frozen(self):
        assert len(enumerate_hexes(host("k44"))) == 160

    def test_k44_first_is_direct_k33(self):
        first = enumerate_hexes(host("k44"), limit=1)[0]
        assert first.feet == (0, 1, 2, 4, 5, 6)
        assert first.segments == (
            ((0, 4), (0, 5), (0, 6)),
            ((1, 4), (1, 5), (1, 6)),
            ((2, 4), (2, 5), (2, 6)),
        )

    def test_limit_is_a_prefix(self):
        g = host("k44")
        assert enumerate_hexes(g, limit=5) == enumerate_hexes(g)[:5]

    def test_gen_petersen_6_3_single_hex(self):
        g = gen_petersen(6, 3)
        hexes = enumerate_hexes(g)
        assert len(hexes) == 1
        assert hexes[0].feet == (0, 2, 4, 1, 3, 5)
        assert odd_count(g, hexes[0]) == 9

    def test_enumerated_hexes_are_valid_and_distinct(self):
        g = glued_k33s()
        hexes = enumerate_hexes(g)
        assert len(hexes) == 20
        keys = set()
        for h in hexes:
            assert validate_hex(g, h) == []
            edges = frozenset(
                (min(a, b), max(a, b))
                for side in h.segments
                for seg in side
                for a, b in zip(seg, seg[1:])
            )
            keys.add(edges)
        assert len(keys) == 20

    def test_planar_host_has_none(self):
        assert enumerate_hexes(named("grid", w=3, h=3)) == []

    def test_deterministic(self):
        g = host("k44")
        assert enumerate_hexes(g) == enumerate_hexes(g)


class TestOddHexExists:
    def test_k33(self):
        h = odd_hex_exists_bruteforce(host("k33"))
        assert h is not None
        assert odd_count(host("k33"), h) == 9

    def test_k44(self):
        g = host("k44")
        h = odd_hex_exists_bruteforce(g)
        assert h is not None
        assert h.feet == (0, 1, 2, 4, 5, 6)
        assert odd_count(g, h) == 9

    def test_feet_split_across_colors(self):
        g = host("heawood")
        h = odd_hex_exists_bruteforce(g)
        assert h is not None
        assert sorted(g.color[v] for v in h.feet) == [0, 0, 0, 1, 1, 1]
        assert validate_hex(g, h) == []

    def test_planar_host(self):
        assert odd_hex_exists_bruteforce(named("grid", w=3, h=3)) is None

    def test_nonplanar_host_without_hexes(self):
        assert odd_hex_exists_bruteforce(subdivided_k5()) is None


class TestPlanarityBruteforce:
    def test_subdivided_k5_is_hexfree_yet_nonplanar(self):
        g = subdivided_k5()
        assert not has_hex_bruteforce(g)
        assert not is_planar_bruteforce(g)

    def test_named_hosts(self):
        assert is_planar_bruteforce(named("grid", w=3, h=3))
        assert is_planar_bruteforce(host("q3"))
        assert not is_planar_bruteforce(host("k33"))
        assert not is_planar_bruteforce(host("k44"))

    def test_agrees_with_reference_library(self):
        # spanning cycle of K44 plus a random half of the chords, forty
        # times from a fixed stream: both routes must agree every time.
        rng = SplitMix64(2024)
        cyc = [(0, 4), (4, 1), (1, 5), (5, 2), (2, 6), (6, 3), (3, 7), (7, 0)]
        norm = {(min(a, b), max(a, b)) for a, b in cyc}
        chords = [(i, j) for i in range(4) for j in range(4, 8)
                  if (i, j) not in norm]
        seen_planar = seen_nonplanar = 0
        for _ in range(40):
            extra = [e for e in chords if rng.chance(1, 2)]
            g = BipartiteGraph(8, cyc + extra)
            mine = is_planar_bruteforce(g)
            assert mine == nx.check_planarity(nx.Graph(g.edges))[0]
            seen_planar += mine
            seen_nonplanar += not mine
        assert seen_planar and seen_nonplanar


class TestValidateTripod:
    def tripod(self):
        return TriPod(v=0, a=1, b=5, c=6, p1=(0, 4, 1), p2=(0, 5), p3=(0, 6))

    def test_clean(self):
        assert validate_tripod(host("k44"), self.tripod(), {2, 7}) == []

    def test_not_a_path(self):
        t = TriPod(v=0, a=1, b=5, c=6, p1=(0, 1), p2=(0, 5), p3=(0, 6))
        assert "p1 is not a path of the host" in validate_tripod(
            host("k44"), t, {2, 7})

    def test_wrong_start(self):
        t = TriPod(v=0, a=1, b=5, c=6, p1=(0, 4, 1), p2=(1, 5), p3=(0, 6))
        assert "paths do not start at the centre" in validate_tripod(
            host("k44"), t, {2, 7})

    def test_wrong_anchor(self):
        t = TriPod(v=0, a=3, b=5, c=6, p1=(0, 4, 1), p2=(0, 5), p3=(0, 6))
        assert "p1 does not end at its anchor" in validate_tripod(
            host("k44"), t, {2, 7})

    def test_anchor_colors(self):
        t = TriPod(v=0, a=1, b=5, c=3, p1=(0, 4, 1), p2=(0, 5), p3=(0, 7, 3))
        assert "b and c must have the opposite colour" in validate_tripod(
            host("k44"), t, {2, 6})

    def test_paths_must_meet_only_at_centre(self):
        t = TriPod(v=0, a=1, b=4, c=5, p1=(0, 4, 1), p2=(0, 4), p3=(0, 5))
        bad = validate_tripod(host("k44"), t, {2, 7})
        assert any("meet outside the centre" in m for m in bad)

    def test_escape_set_rules(self):
        t = self.tripod()
        assert "escape set smaller than two" in validate_tripod(
            host("k44"), t, {2})
        assert "escape set touches the paths" in validate_tripod(
            host("k44"), t, {4, 7})


class TestSearchExtensions:
    def test_k44_extension_found_and_frozen(self):
        g = host("k44")
        t = TriPod(v=0, a=1, b=5, c=6, p1=(0, 4, 1), p2=(0, 5), p3=(0, 6))
        e = search_extensions_bruteforce(g, t, {2, 7})
        assert isinstance(e, Extension1)
        assert (e.v, e.u, e.x) == (0, 4, 2)
        assert e.p4 == (4, 2)
        assert validate_extension(g, t, {2, 7}, e) == []

    def test_deterministic(self):
        g = host("k44")
        t = TriPod(v=0, a=1, b=5, c=6, p1=(0, 4, 1), p2=(0, 5), p3=(0, 6))
        assert (search_extensions_bruteforce(g, t, {2, 7})
                == search_extensions_bruteforce(g, t, {2, 7}))

    def test_shape_filter_can_exclude(self):
        g = host("k44")
        t = TriPod(v=0, a=1, b=5, c=6, p1=(0, 4, 1), p2=(0, 5), p3=(0, 6))
        assert search_extensions_bruteforce(g, t, {2, 7},
                                            shapes=("2",)) is None

    def test_validator_rejects_landing_outside_escape_set(self):
        g = host("k44")
        t = TriPod(v=0, a=1, b=5, c=6, p1=(0, 4, 1), p2=(0, 5), p3=(0, 6))
        broken = Extension1(v=0, u=4, x=3, p1=(0, 4, 1), p2=(0, 5),
                            p3=(0, 6), p4=(4, 3))
        bad = validate_extension(g, t, {2, 7}, broken)
        assert "x is not in the escape set" in bad


class TestLadders:
    def tripod(self):
        return TriPod(v=0, a=2, b=5, c=9,
                      p1=(0, 1, 2), p2=(0, 5), p3=(0, 13, 8, 9))

    def test_heawood_tripod_is_valid(self):
        assert validate_tripod(host("heawood"), self.tripod(),
                               {3, 4, 6, 7}) == []

    def test_enumeration_count_frozen(self):
        seqs = enumerate_augmenting_sequences(
            host("heawood"), self.tripod(), {3, 4, 6, 7}, 3)
        assert len(seqs) == 10

    def test_all_enumerated_are_valid(self):
        g = host("heawood")
        t = self.tripod()
        for seq in enumerate_augmenting_sequences(g, t, {3, 4, 6, 7}, 3):
            assert validate_augmenting_sequence(g, t, {3, 4, 6, 7}, seq) == []
            assert 1 <= len(seq.paths) <= 3

    def test_single_rung_ladders_frozen(self):
        seqs = enumerate_augmenting_sequences(
            host("heawood"), self.tripod(), {3, 4, 6, 7}, 3)
        ones = sorted(s.paths for s in seqs if len(s.paths) == 1)
        assert ones == [((1, 10, 11, 6),), ((1, 10, 11, 12, 3),)]

    def test_best_is_shortest_then_largest_index(self):
        g = host("heawood")
        t = self.tripod()
        assert best_sequence_bruteforce(g, t, {3, 4, 6, 7}, 3) == (1, 3)
        # the winning rung runs its colour pattern to the end: index 2k+1
        win = AugmentingSequence(paths=((1, 10, 11, 6),))
        lose = AugmentingSequence(paths=((1, 10, 11, 12, 3),))
        assert sequence_index(g, t, win) == 3
        assert sequence_index(g, t, lose) == 2

    def test_no_sequence_within_length(self):
        g = host("heawood")
        t = self.tripod()
        # zero rungs allowed: nothing qualifies
        assert best_sequence_bruteforce(g, t, {3, 4, 6, 7}, 0) is None

    def test_validator_rejects_empty_and_broken(self):
        g = host("heawood")
        t = self.tripod()
        assert validate_augmenting_sequence(
            g, t, {3, 4, 6, 7}, AugmentingSequence(paths=())) == [
                "empty sequence"]
        broken = AugmentingSequence(paths=((1, 6),))
        assert validate_augmenting_sequence(
            g, t, {3, 4, 6, 7}, broken) != []
