import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signgame.errors import FamilySpecError, Graph6Error
from signgame.graphs import (
    Arbitrary,
    Complete,
    CompleteMultipartite,
    Cycle,
    Graph,
    Path,
    Star,
    StarForest,
    build_family,
    disjoint_union,
    encode_graph6,
    family_text,
    parse_family_spec,
    parse_graph6,
)


class TestGraph:
    def test_edges_are_canonicalized_and_sorted(self):
        g = Graph(4, ((3, 1), (0, 2), (2, 1)))
        assert g.edges == ((0, 2), (1, 2), (1, 3))

    def test_rejects_loops(self):
        with pytest.raises(ValueError, match="loop"):
            Graph(3, ((1, 1),))

    def test_rejects_duplicate_edges(self):
        with pytest.raises(ValueError, match="duplicate"):
            Graph(3, ((0, 1), (1, 0)))

    def test_rejects_out_of_range_endpoints(self):
        with pytest.raises(ValueError, match="endpoint"):
            Graph(2, ((0, 2),))

    def test_adjacency_and_degree(self):
        g = Graph(4, ((0, 1), (0, 2), (0, 3)))
        assert g.adjacency[0] == (1, 2, 3)
        assert g.degree(0) == 3
        assert g.degree(2) == 1
        assert g.has_edge(3, 0) and not g.has_edge(1, 2)

    def test_empty_graph_is_fine(self):
        g = Graph(0)
        assert g.vertex_count == 0 and g.edge_count == 0


class TestParseFamilySpec:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("K5", Complete(5)),
            ("K3,3", CompleteMultipartite((3, 3))),
            ("K1,2,3", CompleteMultipartite((1, 2, 3))),
            ("stars:3+4+2", StarForest((3, 4, 2))),
            ("S4", Star(4)),
            ("P7", Path(7)),
            ("C9", Cycle(9)),
            ("g6:C~", Arbitrary("C~")),
            ("  K5  ", Complete(5)),
        ],
    )
    def test_grammar(self, text, expected):
        assert parse_family_spec(text) == expected

    @pytest.mark.parametrize(
        "text",
        ["", "Q9", "K", "K1", "P1", "C2", "S0", "K0,3", "stars:", "stars:3+x", "g6:", "K-3"],
    )
    def test_rejects_malformed(self, text):
        with pytest.raises(FamilySpecError):
            parse_family_spec(text)

    def test_error_names_offending_token(self):
        with pytest.raises(FamilySpecError, match="'x'"):
            parse_family_spec("stars:3+x+2")

    @pytest.mark.parametrize(
        "spec",
        [
            Complete(5),
            CompleteMultipartite((3, 3)),
            StarForest((3, 4, 2)),
            Star(4),
            Path(7),
            Cycle(9),
            Arbitrary("C~"),
        ],
    )
    def test_family_text_round_trips(self, spec):
        assert parse_family_spec(family_text(spec)) == spec


class TestBuildFamily:
    def test_complete_edge_count(self):
        for n in range(2, 9):
            g = build_family(Complete(n))
            assert g.vertex_count == n
            assert g.edge_count == n * (n - 1) // 2

    def test_star_center_at_zero(self):
        g = build_family(Star(4))
        assert g.vertex_count == 5
        assert g.edge_count == 4
        assert g.degree(0) == 4
        assert all(g.degree(v) == 1 for v in range(1, 5))

    def test_cycle_all_degree_two(self):
        g = build_family(Cycle(5))
        assert g.vertex_count == 5 and g.edge_count == 5
        assert all(g.degree(v) == 2 for v in range(5))
        assert g.has_edge(0, 4)

    def test_path_edges_consecutive(self):
        g = build_family(Path(4))
        assert g.edges == ((0, 1), (1, 2), (2, 3))

    def test_multipartite_edge_count(self):
        for sizes in [(2, 3), (1, 4), (2, 3, 4), (1, 1, 2, 2)]:
            g = build_family(CompleteMultipartite(sizes))
            expected = sum(
                sizes[i] * sizes[j]
                for i in range(len(sizes))
                for j in range(i + 1, len(sizes))
            )
            assert g.edge_count == expected

    def test_star_forest_layout_centers_first(self):
        g = build_family(StarForest((3, 2)))
        assert g.vertex_count == 7
        # component one: center 0 with leaves 1..3; component two: center 4
        assert g.degree(0) == 3 and g.degree(4) == 2
        assert g.has_edge(4, 5) and g.has_edge(4, 6)

    def test_star_matches_k1n_degree_sequence(self):
        for n in range(1, 8):
            star = build_family(Star(n))
            k1n = build_family(CompleteMultipartite((1, n)))
            assert sorted(star.degree(v) for v in range(star.vertex_count)) == sorted(
                k1n.degree(v) for v in range(k1n.vertex_count)
            )

    def test_arbitrary_decodes_graph6(self):
        g = build_family(Arbitrary("C~"))
        assert g.vertex_count == 4 and g.edge_count == 6


class TestDisjointUnion:
    def test_two_stars(self):
        u = disjoint_union([build_family(Star(2)), build_family(Star(2))])
        assert u.vertex_count == 6 and u.edge_count == 4

    def test_paths(self):
        u = disjoint_union([build_family(Path(2)), build_family(Path(3))])
        assert u.vertex_count == 5 and u.edge_count == 3
        assert u.has_edge(0, 1) and u.has_edge(2, 3) and u.has_edge(3, 4)

    def test_singleton_is_identity(self):
        g = build_family(Complete(3))
        assert disjoint_union([g]) == g

    def test_empty_list_rejected(self):
        with pytest.raises(ValueError):
            disjoint_union([])


class TestGraph6:
    @pytest.mark.parametrize(
        "text,n,m",
        [("A_", 2, 1), ("C~", 4, 6), ("@", 1, 0), ("?", 0, 0)],
    )
    def test_decode_known(self, text, n, m):
        g = parse_graph6(text)
        assert g.vertex_count == n and g.edge_count == m

    def test_header_accepted(self):
        assert parse_graph6(">>graph6<<C~") == parse_graph6("C~")

    def test_encode_known(self):
        assert encode_graph6(build_family(Complete(2))) == "A_"
        assert encode_graph6(Graph(1)) == "@"
        assert encode_graph6(build_family(Complete(4))) == "C~"

    def test_decode_matches_networkx(self):
        import random

        rng = random.Random(42)
        for _ in range(50):
            n = rng.randint(1, 15)
            edges = [
                (u, v)
                for u in range(n)
                for v in range(u + 1, n)
                if rng.random() < 0.4
            ]
            ref = nx.Graph()
            ref.add_nodes_from(range(n))
            ref.add_edges_from(edges)
            text = nx.to_graph6_bytes(ref, header=False).decode().strip()
            got = parse_graph6(text)
            assert got.vertex_count == n
            assert set(got.edges) == {tuple(sorted(e)) for e in ref.edges}

    def test_encode_matches_networkx(self):
        import random

        rng = random.Random(43)
        for _ in range(50):
            n = rng.randint(1, 15)
            edges = tuple(
                (u, v)
                for u in range(n)
                for v in range(u + 1, n)
                if rng.random() < 0.4
            )
            g = Graph(n, edges)
            ref = nx.Graph()
            ref.add_nodes_from(range(n))
            ref.add_edges_from(edges)
            assert encode_graph6(g) == nx.to_graph6_bytes(ref, header=False).decode().strip()

    def test_long_form_size(self):
        g = Graph(70, ((0, 69),))
        assert parse_graph6(encode_graph6(g)) == g

    @given(st.data())
    @settings(max_examples=100, deadline=None)
    def test_round_trip_random(self, data):
        n = data.draw(st.integers(min_value=0, max_value=20))
        nbits = n * (n - 1) // 2
        mask = data.draw(st.integers(min_value=0, max_value=(1 << nbits) - 1 if nbits else 0))
        edges = []
        k = 0
        for j in range(1, n):
            for i in range(j):
                if (mask >> k) & 1:
                    edges.append((i, j))
                k += 1
        g = Graph(n, tuple(edges))
        assert parse_graph6(encode_graph6(g)) == g

    def test_bad_character_reports_offset(self):
        with pytest.raises(Graph6Error) as err:
            parse_graph6("A" + chr(20))
        assert err.value.offset == 1

    def test_bad_length(self):
        with pytest.raises(Graph6Error, match="data characters"):
            parse_graph6("D_")  # 5 vertices need 2 data chars

    def test_nonzero_padding_rejected(self):
        # K_2 has one bit of data and five padding bits
        with pytest.raises(Graph6Error, match="padding"):
            parse_graph6("A" + chr(63 + 0b011111))

    def test_empty_rejected(self):
        with pytest.raises(Graph6Error):
            parse_graph6("   ")
