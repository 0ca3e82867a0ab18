"""Graph container, serialization, and path-helper tests."""

import pytest
from hypothesis import given, strategies as st

from oddhex.graph_core import (
    BipartiteGraph,
    InvalidHighlight,
    LoopOrMultiEdge,
    MalformedInput,
    NotBipartite,
    Parity,
    emit_dot,
    emit_edge_list,
    emit_graph6,
    graph_hash,
    parse_edge_list,
    parse_graph6,
    path_parity,
    splice,
    subpath,
)

from helpers import host

# frozen: sha256 of K33's canonical edge list (pinned once, must never move)
K33_HASH = "293f3e7299792f75e9faec61e70c42b0d3ab5b158899ab47126968184481baf6"


class TestConstruction:
    def test_k33_shape(self):
        g = host("k33")
        assert g.n == 6
        assert len(g.edges) == 9
        assert all(g.degree(v) == 3 for v in range(6))

    def test_colors_split_parts(self):
        g = host("k33")
        assert sorted(g.left_vertices()) == [0, 1, 2]
        assert sorted(g.right_vertices()) == [3, 4, 5]
        for u, v in g.edges:
            assert not g.same_color(u, v)

    def test_adjacency_sorted(self):
        g = host("heawood")
        for v in range(g.n):
            assert list(g.adj[v]) == sorted(g.adj[v])

    def test_loop_rejected(self):
        with pytest.raises(LoopOrMultiEdge):
            BipartiteGraph(2, [(0, 0)])

    def test_multiedge_rejected(self):
        with pytest.raises(LoopOrMultiEdge):
            BipartiteGraph(2, [(0, 1), (1, 0)])

    def test_out_of_range_rejected(self):
        with pytest.raises(MalformedInput):
            BipartiteGraph(2, [(0, 2)])

    def test_triangle_rejected_with_odd_cycle(self):
        with pytest.raises(NotBipartite) as err:
            BipartiteGraph(3, [(0, 1), (1, 2), (2, 0)])
        cycle = err.value.odd_cycle
        assert len(cycle) % 2 == 1
        assert sorted(cycle) == [0, 1, 2]

    def test_five_cycle_rejected_with_odd_cycle(self):
        with pytest.raises(NotBipartite) as err:
            BipartiteGraph(5, [(i, (i + 1) % 5) for i in range(5)])
        cycle = err.value.odd_cycle
        assert len(cycle) == 5
        # the witness is a real cycle of the graph
        closed = list(cycle) + [cycle[0]]
        for u, v in zip(closed, closed[1:]):
            assert abs(u - v) in (1, 4)


class TestEdgeListFormat:
    def test_round_trip(self):
        g = host("heawood")
        assert parse_edge_list(emit_edge_list(g)) == g

    def test_header_declares_n(self):
        g = parse_edge_list("4 1\n0 1\n")
        assert g.n == 4 and len(g.edges) == 1

    def test_headerless_infers_n(self):
        g = parse_edge_list("0 3\n1 3\n")
        assert g.n == 4 and len(g.edges) == 2

    def test_comments_and_blanks_ignored(self):
        g = parse_edge_list("# hi\n\n0 1 # tail\n")
        assert g.n == 2 and len(g.edges) == 1

    def test_garbage_rejected(self):
        with pytest.raises(MalformedInput):
            parse_edge_list("nope\n")
        with pytest.raises(MalformedInput):
            parse_edge_list("")
        with pytest.raises(MalformedInput):
            parse_edge_list("0 1 2\n")

    def test_negative_rejected(self):
        with pytest.raises(MalformedInput):
            parse_edge_list("0 -1\n")


class TestGraph6:
    def test_k33_frozen_string(self):
        assert emit_graph6(host("k33")) == "EFz_"

    def test_round_trip_named(self):
        for name in ("k33", "k44", "k55m", "q3", "heawood"):
            g = host(name)
            assert parse_graph6(emit_graph6(g)) == g

    def test_prefix_accepted(self):
        assert parse_graph6(">>graph6<<EFz_") == host("k33")

    def test_garbage_rejected(self):
        with pytest.raises(MalformedInput):
            parse_graph6("\x01\x02")
        with pytest.raises(MalformedInput):
            parse_graph6("")


class TestHashAndDot:
    def test_k33_hash_frozen(self):
        assert graph_hash(host("k33")) == K33_HASH

    def test_hash_ignores_edge_order(self):
        a = BipartiteGraph(4, [(0, 1), (2, 3)])
        b = BipartiteGraph(4, [(2, 3), (0, 1)])
        assert graph_hash(a) == graph_hash(b)

    def test_dot_plain(self):
        out = emit_dot(host("k33"))
        assert out.startswith("graph G {")
        assert "0 -- 3;" in out

    def test_dot_highlight(self):
        from oddhex.seed import find_hex

        g = host("k33")
        h = find_hex(g)
        out = emit_dot(g, highlight=h)
        assert "peripheries=2" in out
        assert "color=red" in out

    def test_dot_highlight_validates(self):
        class Fake:
            feet = (0, 1, 2, 3, 4, 4)
            segments = ()

        with pytest.raises(InvalidHighlight):
            emit_dot(host("k33"), highlight=Fake())


class TestPathHelpers:
    def test_path_parity(self):
        assert path_parity((7,)) is Parity.EVEN
        assert path_parity((7, 8)) is Parity.ODD
        assert path_parity((7, 8, 9)) is Parity.EVEN
        with pytest.raises(MalformedInput):
            path_parity(())

    def test_subpath_forward_and_back(self):
        p = (4, 9, 1, 7, 3)
        assert subpath(p, 9, 7) == (9, 1, 7)
        assert subpath(p, 7, 9) == (7, 1, 9)
        assert subpath(p, 4, 4) == (4,)
        with pytest.raises(ValueError):
            subpath(p, 4, 99)

    def test_splice(self):
        assert splice((1, 2, 3), (3, 4)) == (1, 2, 3, 4)
        assert splice((5,), (5, 6)) == (5, 6)
        with pytest.raises(ValueError):
            splice((1, 2), (3, 4))
        with pytest.raises(ValueError):
            splice((1, 2), (2, 1))
        with pytest.raises(ValueError):
            splice((1, 2), ())


@st.composite
def bipartite_graphs(draw):
    """Random bipartite graph on parts of size 2..5 each."""
    a = draw(st.integers(2, 5))
    b = draw(st.integers(2, 5))
    possible = [(i, a + j) for i in range(a) for j in range(b)]
    chosen = draw(st.lists(st.sampled_from(possible), min_size=1, unique=True))
    return BipartiteGraph(a + b, chosen)


class TestProperties:
    @given(bipartite_graphs())
    def test_two_coloring_is_proper(self, g):
        for u, v in g.edges:
            assert g.color[u] != g.color[v]

    @given(bipartite_graphs())
    def test_serialization_round_trips(self, g):
        assert parse_edge_list(emit_edge_list(g)) == g
        assert parse_graph6(emit_graph6(g)) == g

    @given(bipartite_graphs())
    def test_hash_is_canonical(self, g):
        again = BipartiteGraph(g.n, sorted(g.edges, reverse=True))
        assert graph_hash(g) == graph_hash(again)
