import math
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from strategies import graphs
from stringlimits.graphs import (
    EnvelopeError,
    Graph,
    all_labeled_graphs,
    automorphism_count,
    check_partition,
    complement,
    contains_induced,
    disjoint_union,
    format_graph,
    isomorphism_classes,
    is_outerplanar,
    is_planar,
    make_basic,
    make_special_graph,
    membership_cts,
    parse_graph,
    quotient,
    special_labels,
)


def subset_rule_edges(k, kind):
    # independent rebuild straight from the subset-intersection definition
    labels = [frozenset((i,)) for i in range(1, k + 1)]
    labels += [frozenset((i, j)) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    bad = [{1, 2}, {1, 3}, {2, 3}]
    out = set()
    for u in range(len(labels)):
        for v in range(u + 1, len(labels)):
            a, b = labels[u], labels[v]
            if not a & b:
                continue
            if len(a) == len(b) == 2:
                if kind == "B":
                    continue
                if kind == "H" and set(a) in bad and set(b) in bad:
                    continue
            out.add((u, v))
    return out


class TestSpecialGraphs:
    def test_g3_has_six_vertices(self):
        assert make_special_graph("G", 3).n == 6

    def test_b3_is_c6(self):
        b3 = make_special_graph("B", 3)
        assert nx.is_isomorphic(b3.to_networkx(), make_basic("cycle", 6).to_networkx())

    def test_g5_counts(self):
        g5 = make_special_graph("G", 5)
        assert (g5.n, g5.m) == (15, 50)
        assert set(g5.edges) == subset_rule_edges(5, "G")

    @pytest.mark.parametrize("kind,k", [("G", 3), ("G", 4), ("B", 4), ("B", 5), ("H", 4), ("H", 5), ("G", 6)])
    def test_matches_subset_rule(self, kind, k):
        assert set(make_special_graph(kind, k).edges) == subset_rule_edges(k, kind)

    def test_vertex_order(self):
        labels = special_labels(4)
        assert labels[:4] == [frozenset({i}) for i in range(1, 5)]
        assert labels[4] == frozenset({1, 2}) and labels[-1] == frozenset({3, 4})

    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_nested_edge_sets(self, k):
        g, b = make_special_graph("G", k), make_special_graph("B", k)
        assert b.edges <= g.edges
        if k >= 4:
            h = make_special_graph("H", k)
            assert b.edges <= h.edges <= g.edges
            assert len(g.edges - h.edges) == 3

    @pytest.mark.parametrize("k", range(3, 8))
    def test_degree_law(self, k):
        g = make_special_graph("G", k)
        for v, s in enumerate(special_labels(k)):
            assert g.degree(v) == (k - 1 if len(s) == 1 else 2 * k - 2)

    @pytest.mark.parametrize("kind,k", [("G", 2), ("H", 3), ("X", 4)])
    def test_rejects_out_of_range(self, kind, k):
        with pytest.raises(ValueError):
            make_special_graph(kind, k)


class TestBasic:
    def test_k5_minus_e(self):
        assert make_basic("complete_minus_edge", 5).m == 9

    def test_c6(self):
        assert make_basic("cycle", 6).m == 6

    def test_prism_is_complement_of_c6(self):
        c6 = make_basic("cycle", 6)
        prism = make_basic("prism", 6)
        pairs = set(combinations(range(6), 2))
        # adjacency comparison against the complement built by hand
        assert set(prism.edges) == pairs - set(c6.edges)
        assert complement(c6) == prism

    @pytest.mark.parametrize("kind,n", [("cycle", 2), ("prism", 5), ("path", -1), ("nope", 3)])
    def test_invalid(self, kind, n):
        with pytest.raises(ValueError):
            make_basic(kind, n)


class TestComplement:
    def test_empty_to_complete(self):
        assert complement(Graph(3)) == make_basic("complete", 3)

    def test_g4_involution(self):
        g4 = make_special_graph("G", 4)
        assert complement(complement(g4)) == g4

    @given(graphs())
    def test_involution(self, g):
        assert complement(complement(g)) == g
        assert complement(g).m == math.comb(g.n, 2) - g.m


class TestContainsInduced:
    def test_k2_in_k3(self):
        emb = contains_induced(make_basic("complete", 2), make_basic("complete", 3))
        assert emb is not None and len(set(emb.values())) == 2

    def test_b5_not_induced_in_g5(self):
        # same vertex count, so an induced copy would be an isomorphism; edge counts differ
        b5, g5 = make_special_graph("B", 5), make_special_graph("G", 5)
        assert b5.m != g5.m
        assert contains_induced(b5, g5) is None

    def test_c6_in_b3(self):
        c6, b3 = make_basic("cycle", 6), make_special_graph("B", 3)
        emb = contains_induced(c6, b3)
        assert emb is not None
        assert all(c6.has_edge(u, v) == b3.has_edge(emb[u], emb[v]) for u, v in combinations(range(6), 2))

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=4), graphs(max_n=6))
    def test_agrees_with_networkx(self, h, g):
        emb = contains_induced(h, g)
        matcher = nx.algorithms.isomorphism.GraphMatcher(g.to_networkx(), h.to_networkx())
        assert (emb is not None) == matcher.subgraph_is_isomorphic()
        if emb is not None:
            for u, v in combinations(range(h.n), 2):
                assert h.has_edge(u, v) == g.has_edge(emb[u], emb[v])


class TestMembershipCts:
    def test_c6_bipartite(self):
        parts = membership_cts(make_basic("cycle", 6), 2, 0)
        assert parts is not None
        g = make_basic("cycle", 6)
        assert all(g.is_independent(p) for p in parts)

    def test_k3_not_bipartite(self):
        assert membership_cts(make_basic("complete", 3), 2, 0) is None

    def test_g5_five_cliques(self):
        g5 = make_special_graph("G", 5)
        parts = membership_cts(g5, 5, 5)
        assert parts is not None and all(g5.is_clique(p) for p in parts)

    @settings(max_examples=80, deadline=None)
    @given(graphs(max_n=7), st.integers(1, 3))
    def test_colouring_oracle(self, g, t):
        assert (membership_cts(g, t, 0) is not None) == oracles.colourable(g.n, g.edges, t)

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=6), st.integers(1, 3), st.data())
    def test_split_oracle(self, g, t, data):
        s = data.draw(st.integers(0, t))
        parts = membership_cts(g, t, s)
        assert (parts is not None) == oracles.split_into(g.n, g.edges, t, s)
        if parts is not None:
            assert all(g.is_clique(p) for p in parts[:s])
            assert all(g.is_independent(p) for p in parts[s:])

    def test_envelope(self):
        with pytest.raises(EnvelopeError):
            membership_cts(Graph(21), 2, 0)


class TestQuotient:
    def test_singletons_of_k4(self):
        k4 = make_basic("complete", 4)
        assert quotient(k4, [{v} for v in range(4)]) == k4

    def test_two_parts(self):
        assert quotient(make_basic("complete", 4), [{0, 1}, {2, 3}]) == make_basic("complete", 2)

    def test_empty_part_is_isolated(self):
        q = quotient(make_basic("complete", 2), [{0}, set(), {1}])
        assert q.n == 3 and q.degree(1) == 0

    @given(graphs())
    def test_singleton_partition(self, g):
        assert quotient(g, [{v} for v in range(g.n)]) == g

    def test_bad_partition(self):
        with pytest.raises(ValueError):
            check_partition(3, [{0, 1}, {1, 2}])
        with pytest.raises(ValueError):
            check_partition(3, [{0, 1}])


class TestPlanarity:
    def test_k5(self):
        assert not is_planar(make_basic("complete", 5))

    def test_k5_minus_e(self):
        g = make_basic("complete_minus_edge", 5)
        assert is_planar(g) and oracles.planar(g.n, g.edges)

    def test_outerplanar_k4(self):
        assert is_outerplanar(make_basic("complete_minus_edge", 4))
        assert not is_outerplanar(make_basic("complete", 4))

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_rotation_oracle_small(self, n):
        for g in isomorphism_classes(n):
            assert is_planar(g) == oracles.planar(g.n, g.edges), g.edges
            assert is_outerplanar(g) == oracles.outerplanar(g.n, g.edges), g.edges

    @pytest.mark.parametrize("name", ["prism", "k33", "octahedron"])
    def test_rotation_oracle_six(self, name):
        if name == "prism":
            g = make_basic("prism")
        elif name == "k33":
            g = Graph.from_edges(6, [(a, b) for a in range(3) for b in range(3, 6)])
        else:
            g = Graph.from_edges(6, [e for e in combinations(range(6), 2) if e not in {(0, 1), (2, 3), (4, 5)}])
        assert is_planar(g) == oracles.planar(g.n, g.edges)

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from(["K5", "K33"]), st.lists(st.integers(0, 9), max_size=4), st.data())
    def test_kuratowski_subdivisions_rejected(self, base, subdivide, data):
        if base == "K5":
            n, edges = 5, list(combinations(range(5), 2))
        else:
            n, edges = 6, [(a, b) for a in range(3) for b in range(3, 6)]
        edges = list(edges)
        for i in subdivide:
            u, v = edges.pop(i % len(edges))
            edges += [(u, n), (n, v)]
            n += 1
        extra = data.draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=4))
        edges += [(u, v) for u, v in extra if u != v]
        g = Graph.from_edges(n, edges)
        assert not is_planar(g)

    @given(graphs(max_n=8))
    def test_edge_bound(self, g):
        if g.n >= 3 and is_planar(g):
            assert g.m <= 3 * g.n - 6
        if g.n >= 2 and is_outerplanar(g):
            assert g.m <= 2 * g.n - 3


class TestEnumeration:
    @pytest.mark.parametrize("n,classes", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156), (7, 1044)])
    def test_class_counts(self, n, classes):
        assert len(isomorphism_classes(n)) == classes

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_orbit_sizes_sum(self, n):
        total = sum(math.factorial(n) // automorphism_count(g) for g in isomorphism_classes(n))
        assert total == 2 ** math.comb(n, 2)

    def test_labeled_count(self):
        assert sum(1 for _ in all_labeled_graphs(4)) == 64


class TestTextFormat:
    @given(graphs())
    def test_roundtrip(self, g):
        assert parse_graph(format_graph(g)) == g

    def test_header_mismatch(self):
        with pytest.raises(ValueError):
            parse_graph("3 2\n0 1\n")

    def test_disjoint_union(self):
        g = disjoint_union(make_basic("complete", 3), make_basic("complete", 2))
        assert g.n == 5 and g.m == 4 and not g.has_edge(2, 3)
