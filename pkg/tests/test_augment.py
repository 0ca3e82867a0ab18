"""The three-path extension engine and the ladder search, cross-checked
against the brute-force reference layer on hosts small enough to
enumerate."""

import pytest

from helpers import circulant, gen_petersen, host, sample_tripods
from oddhex.augment import (
    NoSequence,
    Unsatisfiable,
    find_augmenting_sequence,
    three_path_extend,
    three_path_extend_strong,
)
from oddhex.extensions import TriPod, extension_kind
from oddhex.oracle import (
    best_sequence_bruteforce,
    search_extensions_bruteforce,
    sequence_index,
    validate_augmenting_sequence,
    validate_extension,
)

SMALL_HOSTS = [
    ("k44", lambda: host("k44")),
    ("C10(1,3)", lambda: circulant(10, 3)),
    ("C12(1,5)", lambda: circulant(12, 5)),
    ("GP(6,3)", lambda: gen_petersen(6, 3)),
]

BIG_HOSTS = [
    ("C16(1,5)", lambda: circulant(16, 5)),
    ("GP(8,3)", lambda: gen_petersen(8, 3)),
]


def heawood_tripod():
    return (TriPod(v=0, a=2, b=5, c=9,
                   p1=(0, 1, 2), p2=(0, 5), p3=(0, 13, 8, 9)),
            frozenset({3, 4, 6, 7}))


class TestFindAugmentingSequence:
    def test_heawood_frozen(self):
        g = host("heawood")
        t, xs = heawood_tripod()
        seq = find_augmenting_sequence(g, t, xs)
        assert seq.paths == ((1, 10, 11, 6),)
        assert seq.index == 3
        assert validate_augmenting_sequence(g, t, xs, seq) == []

    def test_prefer_cross_keeps_the_value(self):
        g = host("heawood")
        t, xs = heawood_tripod()
        plain = find_augmenting_sequence(g, t, xs)
        cross = find_augmenting_sequence(g, t, xs, prefer_cross=True)
        assert ((len(plain.paths), sequence_index(g, t, plain))
                == (len(cross.paths), sequence_index(g, t, cross)))
        assert validate_augmenting_sequence(g, t, xs, cross) == []

    @pytest.mark.parametrize("name,build", [
        ("heawood", lambda: host("heawood")),
        ("k44", lambda: host("k44")),
        ("GP(6,3)", lambda: gen_petersen(6, 3)),
    ])
    def test_optimal_against_bruteforce(self, name, build):
        g = build()
        checked = 0
        for t, xs in sample_tripods(g, seed=5, count=12):
            bf = best_sequence_bruteforce(g, t, xs, 3)
            try:
                seq = find_augmenting_sequence(g, t, xs, max_length=3)
            except NoSequence:
                assert bf is None
            else:
                assert validate_augmenting_sequence(g, t, xs, seq) == []
                assert (len(seq.paths), sequence_index(g, t, seq)) == bf
            checked += 1
        assert checked == 12

    def test_index_field_matches_reference(self):
        g = host("heawood")
        t, xs = heawood_tripod()
        seq = find_augmenting_sequence(g, t, xs)
        assert seq.index == sequence_index(g, t, seq)


class TestThreePathExtend:
    @pytest.mark.parametrize("name,build", SMALL_HOSTS)
    def test_agrees_with_exhaustive_search(self, name, build):
        g = build()
        outcomes = 0
        for t, xs in sample_tripods(g, seed=77, count=20):
            try:
                e = three_path_extend(g, t, xs)
            except Unsatisfiable:
                assert search_extensions_bruteforce(
                    g, t, xs, exhaustive=True) is None
            else:
                assert extension_kind(e) in ("1", "2")
                assert validate_extension(g, t, xs, e) == []
                outcomes += 1
        assert outcomes > 0

    @pytest.mark.parametrize("name,build", BIG_HOSTS)
    def test_outcomes_validate_on_larger_hosts(self, name, build):
        g = build()
        outcomes = 0
        for t, xs in sample_tripods(g, seed=21, count=15):
            try:
                e = three_path_extend(g, t, xs)
            except Unsatisfiable:
                continue
            assert validate_extension(g, t, xs, e) == []
            outcomes += 1
        assert outcomes > 0

    def test_deterministic(self):
        g = host("k44")
        pods = list(sample_tripods(g, seed=77, count=5))
        for t, xs in pods:
            assert three_path_extend(g, t, xs) == three_path_extend(g, t, xs)

    def test_rejects_bad_tripod(self):
        g = host("k44")
        t = TriPod(v=0, a=1, b=5, c=6, p1=(0, 4, 1), p2=(0, 5), p3=(0, 6))
        with pytest.raises(Unsatisfiable, match="bad tripod"):
            three_path_extend(g, t, {2})


class TestThreePathExtendStrong:
    @pytest.mark.parametrize("name,build", [
        ("k44", lambda: host("k44")),
        ("GP(6,3)", lambda: gen_petersen(6, 3)),
        ("C12(1,5)", lambda: circulant(12, 5)),
    ])
    def test_agrees_with_exhaustive_search(self, name, build):
        g = build()
        outcomes = 0
        for t, xs in sample_tripods(g, seed=13, count=20):
            try:
                e = three_path_extend_strong(g, t, xs)
            except Unsatisfiable:
                assert search_extensions_bruteforce(
                    g, t, xs, shapes=("A", "B", "C", "D"),
                    exhaustive=True) is None
            else:
                assert extension_kind(e) in ("A", "B", "C", "D")
                assert validate_extension(g, t, xs, e) == []
                outcomes += 1
        assert outcomes > 0

    def test_outcomes_validate_on_heawood(self):
        g = host("heawood")
        outcomes = 0
        for t, xs in sample_tripods(g, seed=13, count=20):
            try:
                e = three_path_extend_strong(g, t, xs)
            except Unsatisfiable:
                continue
            assert validate_extension(g, t, xs, e) == []
            outcomes += 1
        assert outcomes > 0

    def test_rejects_bad_tripod(self):
        g = host("k44")
        t = TriPod(v=0, a=1, b=5, c=6, p1=(0, 4, 1), p2=(0, 5), p3=(0, 6))
        with pytest.raises(Unsatisfiable, match="bad tripod"):
            three_path_extend_strong(g, t, {4, 7})
