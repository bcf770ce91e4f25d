import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idealis import graph as gr
from idealis import monomial as mo
from idealis import quotients as lq
from idealis.monomial import Monomial, MonomialIdeal, OrderedGenerators
from idealis.resolution import has_linear_resolution
from idealis.suites import sturmfels_ideal


def ideal(text):
    return mo.parse_ideal(text)


def brute_is_lq_order(gens, ring_vars):
    for k in range(1, len(gens)):
        q = mo.colon(MonomialIdeal(ring_vars, gens[:k]), gens[k])
        if any(g.degree != 1 for g in q.gens):
            return False
    return True


def test_two_variables_any_order():
    i = ideal("x\ny\n")
    for order in itertools.permutations(i.gens):
        cert, fail = lq.check_linear_quotients_order(OrderedGenerators(i, order))
        assert fail is None and len(cert.step_colon_vars) == 1
    cert, _ = lq.check_linear_quotients_order(OrderedGenerators(i, (i.monomial("y"), i.monomial("x"))))
    assert cert.step_colon_vars == ((i.ring_vars.index("y"),),)


def test_squares_fail_everywhere():
    i = ideal("x^2\ny^2\n")
    for order in itertools.permutations(i.gens):
        cert, (step, bad) = lq.check_linear_quotients_order(OrderedGenerators(i, order))
        assert cert is None and step == 2 and bad.degree == 2
    assert lq.greedy_linear_quotients(i) is None
    res = lq.exhaustive_linear_quotients(i)
    assert res is lq.DEFINITELY_NONE and not res
    assert repr(res) == "definitely-none"


def test_exhaustive_small_positive():
    i = ideal("x^2\nx*y\ny^2\n")
    cert = lq.exhaustive_linear_quotients(i)
    assert cert and lq.replay_certificate(cert, i)
    og = OrderedGenerators(i, tuple(i.monomial(t) for t in ("x^2", "x*y", "y^2")))
    assert lq.check_linear_quotients_order(og)[0] is not None


def test_two_generators_with_big_gcd():
    i = ideal("a*b*c\na*b*d\n")
    assert lq.greedy_linear_quotients(i) is not None


def test_sturmfels_has_linear_quotients():
    i = sturmfels_ideal()
    cert = lq.greedy_linear_quotients(i)
    assert cert is not None and lq.replay_certificate(cert, i)
    assert lq.find_linear_quotients(i)


def test_exhaustive_cap():
    from idealis.resolution import ResourceError

    with pytest.raises(ResourceError):
        lq.exhaustive_linear_quotients(mo.power(sturmfels_ideal(), 2))


def test_c5_cover_square_exhaustive(c5):
    i = mo.power(mo.cover_ideal(c5), 2)
    assert len(i.gens) == 15
    cert = lq.exhaustive_linear_quotients(i)
    assert cert and lq.replay_certificate(cert, i)


def test_certificate_json_roundtrip_and_tamper():
    i = sturmfels_ideal()
    cert = lq.greedy_linear_quotients(i)
    data = json.loads(json.dumps(cert.to_json()))
    back = lq.LinearQuotientsCertificate.from_json(data)
    assert back == cert and lq.replay_certificate(back, i)
    data["steps"][0]["colon_vars"] = ["a", "b", "c"]
    assert not lq.replay_certificate(lq.LinearQuotientsCertificate.from_json(data), i)
    other = ideal("vars a b c d e f\na*b\n")
    assert not lq.replay_certificate(cert, other)
    data["steps"].pop()
    with pytest.raises(ValueError):
        lq.LinearQuotientsCertificate.from_json(data)


equi = st.lists(
    st.lists(st.integers(0, 2), min_size=4, max_size=4).filter(lambda e: sum(e) == 3).map(Monomial),
    min_size=1,
    max_size=7,
    unique=True,
)


@settings(max_examples=40, deadline=None)
@given(equi, st.randoms())
def test_greedy_is_sound_and_exhaustive_is_complete(gens, rnd):
    i = MonomialIdeal("xyzw", gens)
    greedy = lq.greedy_linear_quotients(i)
    exact = lq.exhaustive_linear_quotients(i)
    if greedy is not None:
        assert lq.replay_certificate(greedy, i)
        assert exact
    if exact:
        assert lq.replay_certificate(exact, i)
        assert brute_is_lq_order(list(exact.ordered_gens), i.ring_vars)
        # equigenerated with linear quotients has a linear resolution
        assert has_linear_resolution(i)
    else:
        perms = list(itertools.permutations(i.gens)) if len(i.gens) <= 5 else [
            tuple(rnd.sample(i.gens, len(i.gens))) for _ in range(100)
        ]
        assert not any(brute_is_lq_order(list(p), i.ring_vars) for p in perms)


@pytest.mark.parametrize("p,count", [(1, 5), (2, 15), (3, 35), (4, 70)])
def test_c5_lex_order(p, count):
    og = lq.c5_cover_power_order(p)
    assert len(og.order) == count
    assert list(og.order) == sorted(og.order, reverse=True)
    cert, fail = lq.check_linear_quotients_order(og)
    assert fail is None and lq.replay_certificate(cert, og.ideal)
    assert og.ideal == mo.power(mo.cover_ideal(gr.Graph.cycle(["u1", "u2", "u3", "u4", "u5"])), p)


def test_expressions_simple(order_graph):
    g = order_graph
    p, _ = gr.recognize_c4_2k2(g)
    n = len(g)
    fs = [Monomial.from_support([g.index(p.c5_order[t]) for t in f], n) for f in lq.C5_COVERS]
    b = Monomial.var(g.index("b"), n)
    e = lq.expressions_of_cover_power_gen(g, p, 1, b * fs[0])
    assert e == lq.CoverPowerExpression((1, 0, 0, 0, 0), (0,))
    nb = Monomial.from_support(map(g.index, g.neighbors("b")), n)
    assert lq.expressions_of_cover_power_gen(g, p, 1, nb).beta == (1,)


@pytest.mark.parametrize("s", [2, 3])
def test_expressions_match_factorizations(order_graph, s):
    g = order_graph
    p, _ = gr.recognize_c4_2k2(g)
    n = len(g)
    covers = [Monomial.from_support(map(g.index, c), n) for c in gr.minimal_vertex_covers(g)]
    assert len(covers) == 6
    nb = Monomial.from_support(map(g.index, g.neighbors("b")), n)
    b = Monomial.var(g.index("b"), n)
    fs = [b * Monomial.from_support([g.index(p.c5_order[t]) for t in f], n) for f in lq.C5_COVERS]
    for m in mo.power(mo.cover_ideal(g), s).gens:
        facts = mo.factorizations(m, covers, s)
        assert len(facts) == 1
        expr = lq.expressions_of_cover_power_gen(g, p, s, m)
        assert expr.beta == (facts[0].count(nb),)
        assert expr.alpha == tuple(facts[0].count(f) for f in fs)


def test_expressions_reject_non_generator(order_graph):
    p, _ = gr.recognize_c4_2k2(order_graph)
    with pytest.raises(ValueError):
        lq.expressions_of_cover_power_gen(order_graph, p, 1, Monomial.one(len(order_graph)))


def test_cover_order_on_order_graph(order_graph):
    g = order_graph
    p, _ = gr.recognize_c4_2k2(g)
    og = lq.cover_power_order(g, p, 1)
    cert, fail = lq.check_linear_quotients_order(og)
    assert fail is None
    zb = g.vertices.index("b")
    # the neighbourhood generator comes last and picks up cycle variables
    assert og.order[-1] == Monomial.from_support(map(g.index, g.neighbors("b")), len(g))
    assert cert.step_colon_vars[-1] == (zb,)
    assert all(zb not in step for step in cert.step_colon_vars[:-1])


def test_cover_order_delegates_for_c5(c5):
    p, _ = gr.recognize_c4_2k2(c5)
    og = lq.cover_power_order(c5, p, 2)
    assert p.c5_order == c5.vertices
    assert og.order == lq.c5_cover_power_order(2).order


def test_cover_order_split_graph():
    g, p = gr.random_c4_2k2_graph(3, 2, False, 0.5, 3)
    og = lq.cover_power_order(g, p, 2)
    assert lq.check_linear_quotients_order(og)[1] is None


@pytest.mark.parametrize("seed", range(12))
def test_cover_order_random_corpus(seed):
    rng = random.Random(seed)
    g, p = gr.random_c4_2k2_graph(rng.randint(0, 2), rng.randint(1, 2), True, rng.random(), seed)
    for s in (1, 2):
        og = lq.cover_power_order(g, p, s)
        cert, fail = lq.check_linear_quotients_order(og)
        assert fail is None
        keys = lq.composite_keys(g, p, s)
        assert len(set(keys.values())) == len(keys)
        greedy = lq.greedy_linear_quotients(og.ideal)
        assert greedy is not None and lq.replay_certificate(greedy, og.ideal)


def test_products_minimal(c5, order_graph):
    p, _ = gr.recognize_c4_2k2(c5)
    assert lq.check_products_minimal(c5, p, 2) == (True, 15)
    p, _ = gr.recognize_c4_2k2(order_graph)
    assert lq.check_products_minimal(order_graph, p, 2) == (True, 21)
    ok, count = lq.check_products_minimal(order_graph, p, 3)
    assert ok and count == 56
