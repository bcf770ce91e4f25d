import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idealis import graph as gr
from idealis.graph import Graph, Pattern

import oracles


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    labels = [f"v{i}" for i in range(n)]
    pairs = list(itertools.combinations(labels, 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges([p for p, k in zip(pairs, keep) if k], labels)


def test_parse_roundtrip_and_errors():
    g = gr.parse_graph("# demo\na b\nb c\nvertex z\n")
    assert g.vertices == ("a", "b", "c", "z")
    assert g.isolated() == ["z"]
    assert gr.parse_graph(g.to_text()) == g
    for bad in ("a a\n", "a b c\n", "a-b x\n"):
        with pytest.raises(gr.GraphFormatError):
            gr.parse_graph(bad)


def test_complement_examples(c4):
    comp = gr.complement(c4)
    assert comp.num_edges() == 2
    assert gr.find_induced(comp, Pattern.TWO_K2) == frozenset("abcd")
    assert gr.complement(Graph.complete("xyz")).num_edges() == 0


@given(graphs())
def test_complement_involution(g):
    assert gr.complement(gr.complement(g)) == g


def test_find_induced_examples(c5):
    assert gr.find_induced(c5, Pattern.C4) is None
    w = gr.find_induced(Graph.cycle("abcdef"), Pattern.TWO_K2)
    assert w is not None and oracles.has_induced_2k2(Graph.cycle("abcdef").induced(w))
    assert gr.find_induced(Graph.path("abcd"), Pattern.CYCLE_GE4) is None


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_find_induced_matches_brute_force(g):
    cycles = list(oracles.induced_cycles(g, 4))
    w = gr.find_induced(g, Pattern.CYCLE_GE4)
    assert (w is None) == (not cycles)
    if w is not None:
        assert oracles.induces_cycle(g, w)
    c4 = gr.find_induced(g, Pattern.C4)
    assert (c4 is None) == (not any(len(c) == 4 for c in cycles))
    assert (gr.find_induced(g, Pattern.TWO_K2) is None) == (not oracles.has_induced_2k2(g))
    comp_cycles = list(oracles.induced_cycles(gr.complement(g), 5))
    assert (gr.find_induced(g, Pattern.CYCLE_COMPLEMENT_GE5) is None) == (not comp_cycles)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_chordal_agrees_with_networkx_and_peo(g):
    ok, peo = gr.is_chordal(g)
    assert ok == (gr.find_induced(g, Pattern.CYCLE_GE4) is None)
    ng = nx.Graph()
    ng.add_nodes_from(g.vertices)
    ng.add_edges_from(g.edges())
    assert ok == nx.is_chordal(ng)
    if ok:
        assert sorted(peo) == sorted(g.vertices)
        for k, v in enumerate(peo):
            later = [w for w in g.neighbors(v) if peo.index(w) > k]
            assert all(g.has_edge(a, b) for a, b in itertools.combinations(later, 2))


def test_chordal_examples(c4):
    assert gr.is_chordal(Graph.complete("abcde"))[0]
    assert not gr.is_chordal(c4)[0]


@pytest.mark.parametrize("seed", range(8))
def test_random_split_graph_chordal_both_ways(seed):
    g, p = gr.random_c4_2k2_graph(3, 3, False, 0.5, seed)
    assert not p.v3
    for h in (g, gr.complement(g)):
        assert gr.is_chordal(h)[0]
        assert not list(oracles.induced_cycles(h, 4))


def test_recognize_examples(c4, c5, order_graph):
    p, w = gr.recognize_c4_2k2(c5)
    assert w is None and not p.v1 and not p.v2 and p.v3 == frozenset(c5.vertices)
    p, w = gr.recognize_c4_2k2(order_graph)
    assert (p.v1, p.v2, p.v3) == (frozenset("a"), frozenset("b"), frozenset("cdefg"))
    p.validate(order_graph)
    p, w = gr.recognize_c4_2k2(c4)
    assert p is None and w == frozenset("abcd")


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=9))
def test_recognize_iff_free(g):
    p, w = gr.recognize_c4_2k2(g)
    free = not any(len(c) == 4 for c in oracles.induced_cycles(g, 4)) and not oracles.has_induced_2k2(g)
    assert (p is not None) == free
    if p is not None:
        p.validate(g)
        # the partition forbids long induced cycles in g and its complement
        assert not any(len(c) >= 6 for c in oracles.induced_cycles(g, 6))
        assert not any(len(c) >= 6 for c in oracles.induced_cycles(gr.complement(g), 6))
    else:
        h = g.induced(w)
        assert len(w) == 4 and (oracles.induces_cycle(h, w) or oracles.has_induced_2k2(h))


def test_partition_validate_rejects():
    g = Graph.cycle(["u1", "u2", "u3", "u4", "u5"])
    bad = gr.Partition(frozenset(), frozenset(), frozenset(g.vertices), ("u1", "u3", "u2", "u4", "u5"))
    with pytest.raises(ValueError):
        bad.validate(g)
    with pytest.raises(ValueError):
        gr.Partition(frozenset({"u1"}), frozenset(), frozenset(), ()).validate(g)


def test_minimal_covers_examples(c4, c5):
    assert set(gr.minimal_vertex_covers(c4)) == {frozenset("ac"), frozenset("bd")}
    expected = [{"u1", "u2", "u4"}, {"u4", "u5", "u2"}, {"u2", "u3", "u5"}, {"u3", "u4", "u1"}, {"u5", "u1", "u3"}]
    assert set(gr.minimal_vertex_covers(c5)) == {frozenset(c) for c in expected}


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7))
def test_covers_match_brute_force(g):
    assert set(gr.minimal_vertex_covers(g)) == oracles.brute_minimal_covers(g)
    assert set(gr.maximal_independent_sets(g)) == oracles.brute_maximal_independent(g)
    everything = frozenset(g.vertices)
    assert {everything - s for s in gr.maximal_independent_sets(g)} == set(gr.minimal_vertex_covers(g))


def test_classify_covers_c5(c5):
    p, _ = gr.recognize_c4_2k2(c5)
    forms = gr.classify_covers(c5, p)
    assert len(forms) == 5 and all(f.kind is gr.CoverKind.TYPE_I for _, f in forms)
    for cover, f in forms:
        a, b, c = f.witness
        assert c5.has_edge(a, b) and set(f.witness) == cover


def test_classify_covers_order_graph(order_graph):
    p, _ = gr.recognize_c4_2k2(order_graph)
    forms = dict(gr.classify_covers(order_graph, p))
    assert set(forms) == oracles.brute_minimal_covers(order_graph)
    type2 = [c for c, f in forms.items() if f.kind is gr.CoverKind.TYPE_II]
    assert type2 == [frozenset("acdefg")]
    type1 = [c for c, f in forms.items() if f.kind is gr.CoverKind.TYPE_I]
    assert len(type1) == 5 and all("b" in c and len(c) == 4 for c in type1)


def test_classify_covers_wheel():
    wheel = Graph.from_edges(list(Graph.cycle("abcde").edges()) + [("z", v) for v in "abcde"])
    p, _ = gr.recognize_c4_2k2(wheel)
    assert p.v2 == frozenset("z")
    forms = dict(gr.classify_covers(wheel, p))
    assert set(forms) == oracles.brute_minimal_covers(wheel)
    assert sum(f.kind is gr.CoverKind.TYPE_II for f in forms.values()) == 1
    assert forms[frozenset("abcde")].witness == ("z",)


def test_classify_needs_cycle_part():
    g = Graph.from_edges([("a", "b")])
    p, _ = gr.recognize_c4_2k2(g)
    with pytest.raises(ValueError):
        gr.classify_covers(g, p)


def test_random_generator_examples():
    g, p = gr.random_c4_2k2_graph(0, 0, True, 0.3, 5)
    assert len(g) == 5 and g.num_edges() == 5 and gr.find_induced(g, Pattern.C5) is not None
    g, p = gr.random_c4_2k2_graph(3, 2, False, 1.0, 1)
    assert g.num_edges() == 1 + 3 * 2
    assert gr.is_chordal(g)[0] and gr.is_chordal(gr.complement(g))[0]


@pytest.mark.parametrize("seed", range(25))
def test_random_generator_is_free(seed):
    rng = random.Random(seed)
    g, p = gr.random_c4_2k2_graph(rng.randint(0, 3), rng.randint(0, 2), rng.random() < 0.6, rng.random(), seed)
    assert len(g) <= 10
    p.validate(g)
    assert gr.find_induced(g, Pattern.C4) is None
    assert gr.find_induced(g, Pattern.TWO_K2) is None
    assert not oracles.has_induced_2k2(g)


def test_max_degree(c5, order_graph):
    assert gr.max_degree(c5) == 2
    assert gr.max_degree(order_graph) == 6 and order_graph.degree("b") == 6
    assert gr.max_degree(Graph.complete("abcdef")) == 5
