from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from strategies import graphs
from stringlimits.graphon import make_wka, make_wstar
from stringlimits.graphs import (
    Graph,
    complement,
    contains_induced,
    isomorphism_classes,
    make_basic,
    make_special_graph,
    membership_cts,
    quotient,
)
from stringlimits.recognizers import (
    Verdict,
    check_clique_cover,
    check_gamma_chain,
    check_transitive_orientation,
    classify_outerstring,
    classify_string,
    find_clique_cover_with,
    format_evidence,
    is_comparability,
    is_incomparability,
    is_two_clique,
)
from stringlimits.sampling import block_partition, sample_w_random


def nx_quotient_ok(g, parts, outer):
    # quotient rebuilt by hand and tested with networkx (plus an apex for outerplanarity)
    where = {v: i for i, p in enumerate(parts) for v in p}
    q = nx.Graph()
    q.add_nodes_from(range(len(parts)))
    q.add_edges_from((where[u], where[v]) for u, v in g.edges if where[u] != where[v])
    if outer:
        q.add_edges_from(("apex", i) for i in range(len(parts)))
    return nx.check_planarity(q)[0]


def audit_cover(g, parts, outer):
    flat = sorted(v for p in parts for v in p)
    assert flat == list(range(g.n))
    assert all(all(g.has_edge(u, v) for u, v in combinations(sorted(p), 2)) for p in parts)
    # the library tests planarity with networkx; certificates are audited by rotation systems
    where = {v: i for i, p in enumerate(parts) for v in p}
    q_edges = {tuple(sorted((where[u], where[v]))) for u, v in g.edges if where[u] != where[v]}
    assert (oracles.outerplanar if outer else oracles.planar)(len(parts), q_edges)


class TestTwoClique:
    def test_k3_plus_k2(self):
        g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (3, 4)])
        ev = is_two_clique(g)
        assert ev.is_member and set(ev.certificate) == {frozenset({0, 1, 2}), frozenset({3, 4})}

    def test_p3(self):
        ev = is_two_clique(make_basic("path", 3))
        assert ev.is_non_member and ev.certificate == ("P3", (0, 1, 2))

    def test_c4(self):
        assert is_two_clique(make_basic("cycle", 4)).is_non_member

    def test_three_components(self):
        ev = is_two_clique(Graph(3))
        assert ev.is_non_member and ev.certificate[0] == "independent"

    def test_empty_sides(self):
        assert is_two_clique(Graph(0)).is_member
        assert is_two_clique(make_basic("complete", 4)).is_member

    @given(graphs(max_n=7))
    def test_oracle(self, g):
        ev = is_two_clique(g)
        assert ev.is_member == oracles.two_clique(g.n, g.edges)
        if ev.is_member:
            a, b = ev.certificate
            assert a | b == frozenset(range(g.n)) and not a & b
            assert g.is_clique(a) and g.is_clique(b)
        else:
            kind, vs = ev.certificate
            if kind == "P3":
                a, b, c = vs
                assert g.has_edge(a, b) and g.has_edge(b, c) and not g.has_edge(a, c)
            else:
                assert g.is_independent(vs) and len(vs) == 3


class TestComparability:
    def test_c6(self):
        ev = is_comparability(make_basic("cycle", 6))
        assert ev.is_member and check_transitive_orientation(make_basic("cycle", 6), ev.certificate)

    def test_c5_gamma_chain(self):
        g = make_basic("cycle", 5)
        ev = is_comparability(g)
        assert ev.is_non_member
        kind, chain = ev.certificate
        assert kind == "gamma-chain" and check_gamma_chain(g, chain)

    def test_incomparability_c6(self):
        assert is_incomparability(make_basic("cycle", 6)).is_non_member

    def test_incomparability_g3(self):
        assert is_incomparability(make_special_graph("G", 3)).is_non_member

    def test_envelope_unknown(self):
        ev = is_comparability(make_basic("complete", 13))
        assert ev.verdict is Verdict.UNKNOWN

    def test_audit_rejects(self):
        g = make_basic("path", 3)
        assert not check_transitive_orientation(g, [(0, 1), (1, 2)])
        assert check_transitive_orientation(g, [(1, 0), (1, 2)])
        assert not check_transitive_orientation(g, [(1, 0)])

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_brute_force_all_classes(self, n):
        for g in isomorphism_classes(n):
            assert is_comparability(g).is_member == oracles.comparability(g.n, g.edges), g.edges

    def test_brute_force_six(self):
        # every class on six vertices with at most 9 edges (2^9 orientations each)
        for g in isomorphism_classes(6):
            if g.m <= 9:
                assert is_comparability(g).is_member == oracles.comparability(g.n, g.edges), g.edges

    @given(graphs(max_n=6))
    @settings(max_examples=80, deadline=None)
    def test_certificates(self, g):
        ev = is_comparability(g)
        if ev.is_member:
            assert check_transitive_orientation(g, ev.certificate)
        else:
            kind, chain = ev.certificate
            assert kind == "exhaustive" or check_gamma_chain(g, chain)

    @given(graphs(max_n=8))
    @settings(max_examples=60, deadline=None)
    def test_incomparability_is_complement(self, g):
        assert is_incomparability(g).verdict == is_comparability(complement(g)).verdict

    @given(st.integers(0, 4), st.integers(0, 4), st.data())
    @settings(max_examples=60, deadline=None)
    def test_bipartite_members(self, a, b, data):
        pairs = [(u, a + v) for u in range(a) for v in range(b)]
        mask = data.draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
        g = Graph.from_edges(a + b, [p for p, keep in zip(pairs, mask) if keep])
        assert is_comparability(g).is_member

    def test_all_bipartite_classes_up_to_seven(self):
        for n in range(1, 8):
            for g in isomorphism_classes(n):
                if membership_cts(g, 2, 0) is not None:
                    assert is_comparability(g).is_member, g.edges


class TestCliqueCover:
    def test_k5_minus_e_singletons(self):
        g = make_basic("complete_minus_edge", 5)
        ev = find_clique_cover_with(g, "planar_quotient")
        assert ev.is_member
        audit_cover(g, ev.certificate, outer=False)

    def test_hint_used(self):
        g = make_basic("complete", 6)
        ev = find_clique_cover_with(g, "outerplanar_quotient", hint=[set(range(6))])
        assert ev.is_member and ev.details["source"] == "hint"

    def test_max_parts(self):
        c6 = make_basic("cycle", 6)
        assert find_clique_cover_with(c6, ("max_parts", 3)).is_member
        assert find_clique_cover_with(c6, "max_parts:2").is_non_member

    def test_bad_target(self):
        with pytest.raises(ValueError):
            find_clique_cover_with(Graph(2), "tree_quotient")
        with pytest.raises(ValueError):
            find_clique_cover_with(Graph(2), "max_parts")

    def test_g4_not_outerplanar_coverable(self):
        g4 = make_special_graph("G", 4)
        ev = find_clique_cover_with(g4, "outerplanar_quotient")
        assert ev.is_non_member and ev.certificate[0] == "exhaustive"

    def test_g4_bell_cross_check(self):
        # independent sweep over all Bell(10) set partitions
        g4 = make_special_graph("G", 4)
        hits = 0
        for parts in oracles.set_partitions(range(g4.n)):
            if not all(g4.is_clique(p) for p in parts):
                continue
            if nx_quotient_ok(g4, parts, outer=True):
                hits += 1
        assert hits == 0

    def test_g4_planar_cover(self):
        g4 = make_special_graph("G", 4)
        ev = find_clique_cover_with(g4, "planar_quotient")
        assert ev.is_member
        audit_cover(g4, ev.certificate, outer=False)

    @given(graphs(max_n=7), st.sampled_from(["planar_quotient", "outerplanar_quotient"]))
    @settings(max_examples=60, deadline=None)
    def test_against_partition_sweep(self, g, target):
        outer = target == "outerplanar_quotient"
        ev = find_clique_cover_with(g, target)
        expected = any(
            all(g.is_clique(p) for p in parts) and nx_quotient_ok(g, parts, outer)
            for parts in oracles.set_partitions(range(g.n))
        )
        assert ev.is_member == expected
        if ev.is_member:
            audit_cover(g, ev.certificate, outer)
            assert check_clique_cover(g, ev.certificate, target)

    def test_check_rejects_non_clique_part(self):
        assert not check_clique_cover(make_basic("path", 3), [{0, 1, 2}], "planar_quotient")
        assert not check_clique_cover(make_basic("path", 3), [{0, 1}], "planar_quotient")

    @pytest.mark.parametrize("k,a,target,bound", [
        (4, Fraction(1, 2), "planar_quotient", 5),
        (3, Fraction(1, 2), "outerplanar_quotient", 4),
    ])
    def test_generating_partition(self, k, a, target, bound):
        w = make_wka(k, a)
        g, blocks = sample_w_random(w, 150, 4)
        parts = block_partition(blocks, w.k)
        ev = find_clique_cover_with(g, target, hint=parts)
        assert ev.is_member and ev.details["source"] == "hint"
        q = quotient(g, ev.certificate)
        assert q.n == bound and q.m <= bound * (bound - 1) // 2 - 1
        audit_cover(g, ev.certificate, outer=target == "outerplanar_quotient")


class TestClassify:
    def test_g5_string_non_member(self):
        ev = classify_string(make_special_graph("G", 5))
        assert ev.is_non_member and ev.certificate[0] == "induced-G5"

    def test_g4_string_member(self):
        g4 = make_special_graph("G", 4)
        ev = classify_string(g4)
        assert ev.is_member
        audit_cover(g4, ev.certificate[1], outer=False)

    @pytest.mark.parametrize("kind", ["G", "B", "H"])
    def test_forbidden_outerstring(self, kind):
        ev = classify_outerstring(make_special_graph(kind, 4))
        assert ev.is_non_member and ev.certificate[0] == f"induced-{kind}4"

    @pytest.mark.parametrize("seed", range(6))
    def test_c33_corpus_outerstring(self, seed):
        g, _ = sample_w_random(make_wstar(3, 3), 10, seed)
        assert membership_cts(g, 3, 3) is not None
        ev = classify_outerstring(g)
        assert ev.is_member
        audit_cover(g, ev.certificate[1], outer=True)

    @given(graphs(max_n=8))
    @settings(max_examples=40, deadline=None)
    def test_never_contradictory(self, g):
        ev = classify_outerstring(g)
        if ev.is_member:
            audit_cover(g, ev.certificate[1], outer=True)
            for kind in "GBH":
                assert contains_induced(make_special_graph(kind, 4), g) is None
        assert classify_string(g).is_member

    def test_format(self):
        text = format_evidence(classify_string(make_special_graph("G", 4)))
        assert text.splitlines()[0] == "verdict member"
