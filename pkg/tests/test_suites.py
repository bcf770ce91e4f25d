import json
import random

import pytest

from idealis import graph as gr
from idealis import suites as su
from idealis.graph import Graph
from idealis.homology import GF2, QQ
from idealis.monomial import edge_ideal
from idealis.resolution import regularity

import oracles


def test_corpus_is_seeded_and_free():
    a = su.random_free_graphs(7, 15, 8)
    assert [g.to_text() for g in a] == [g.to_text() for g in su.random_free_graphs(7, 15, 8)]
    for g in a:
        assert len(g) <= 8 and g.num_edges() > 0
        assert gr.find_induced(g, gr.Pattern.C4) is None
        assert not oracles.has_induced_2k2(g)
    assert all(gr.find_induced(g, gr.Pattern.C5) for g in su.random_free_graphs(1, 10, 8, with_c5=True))
    assert not any(gr.find_induced(g, gr.Pattern.C5) for g in su.random_free_graphs(1, 10, 8, with_c5=False))


def test_c5_with_isolated_detection():
    assert su.is_c5_with_isolated(su.c5_graph(2))
    assert not su.is_c5_with_isolated(su.order_sensitivity_graph())


def test_cover_regularity_formula():
    assert su.cover_power_regularity_formula(su.c5_graph(1), 2) == 6
    assert su.cover_power_regularity_formula(su.order_sensitivity_graph(), 2) == 12


def test_colon_chain_order_sensitivity():
    g = su.order_sensitivity_graph()
    bad = su.verify_colon_chain(g, 1, su.edge_order_starting_with(g, ("a", "b")))
    assert [c.case_id for c in bad.failures()] == ["colon-chain/s=1/l=0"]
    assert bad.failures()[0].computed[0] == 3
    good = su.verify_colon_chain(g, 1)
    assert good.passed and len(good.cases) == g.num_edges()


@pytest.mark.parametrize("s", [1, 2])
def test_colon_chain_c5(s):
    report = su.verify_colon_chain(su.c5_graph(), s)
    assert report.passed


def test_colon_chain_gf2_agrees():
    g = su.order_sensitivity_graph()
    q = su.verify_colon_chain(g, 1, field=QQ)
    f2 = su.verify_colon_chain(g, 1, field=GF2)
    assert [c.computed for c in q.cases] == [c.computed for c in f2.cases]


def test_colon_chain_needs_cycle_part():
    with pytest.raises(ValueError):
        su.verify_colon_chain(Graph.from_edges([("a", "b")]), 1)


def test_neighbor_bound_c5_tight():
    report = su.verify_neighbor_bound(su.c5_graph())
    assert report.passed and len(report.cases) == 5
    for c in report.cases:
        assert c.computed == [3, [3, 2]]


def test_neighbor_bound_k2_trivial_branch():
    g = Graph.from_edges([("x", "y")])
    assert su.neighbor_bound_terms(g, "x") == (2, None)
    assert su.verify_neighbor_bound(g).passed


def test_neighbor_bound_free_graphs():
    for g in su.random_free_graphs(11, 50, 7):
        assert su.verify_neighbor_bound(g).passed


@pytest.mark.parametrize("seed", range(20))
def test_neighbor_bound_general_graphs(seed):
    g = oracles.random_graph(random.Random(seed), 6, 0.5)
    if g.num_edges():
        assert su.verify_neighbor_bound(g).passed


def test_froberg_direct():
    for g in su.random_graphs(3, 25, 7):
        if not g.num_edges():
            continue
        co_chordal = gr.is_chordal(gr.complement(g))[0]
        assert (regularity(edge_ideal(g)) == 2) == co_chordal


def test_report_json_shape_and_determinism():
    cfg = su.SuiteConfig.quick()
    a = su.criterion_report("edge-reg", 5, cfg)
    b = su.criterion_report("edge-reg", 5, cfg)
    assert a.dumps(timings=False) == b.dumps(timings=False)
    data = json.loads(a.dumps())
    assert data["schema"] == su.SCHEMA_VERSION and data["seed"] == 5
    assert data["summary"] == {"total": 10, "passed": 10, "failed": 0}
    case = data["cases"][0]
    assert set(case) == {"case_id", "anchor", "claim", "input_hash", "computed", "expected", "passed", "wall_time"}
    assert len(case["input_hash"]) == 12


def test_parallel_run_matches_serial():
    cfg = su.SuiteConfig.quick()
    serial = su.criterion_report("oracle", 2, cfg)
    parallel = su.criterion_report("oracle", 2, cfg, jobs=2)
    assert serial.dumps(timings=False) == parallel.dumps(timings=False)


def test_quick_reproduce_passes():
    report = su.suite_reproduce(0, su.SuiteConfig.quick())
    assert report.passed, [c.case_id for c in report.failures()]
    ids = {c.case_id for c in report.cases}
    assert "sturmfels/I2-not-linear" in ids and "order-sensitivity/reg-colon" in ids
