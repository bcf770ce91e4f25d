"""Reproduction suites: seeded corpora, per-claim checks and JSON reports.

Every check is a top-level function taking one picklable payload so that
cases can be fanned out to a process pool; results are merged by case id.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

from .graph import (
    Graph,
    Partition,
    complement,
    find_induced,
    is_chordal,
    max_degree,
    minimal_vertex_covers,
    random_c4_2k2_graph,
    recognize_c4_2k2,
)
from .homology import GF2, QQ
from .monomial import (
    Monomial,
    MonomialIdeal,
    OrderedGenerators,
    Provenance,
    banerjee_order,
    colon,
    cover_ideal,
    edge_ideal,
    factorizations,
    parse_ideal,
    polarize,
    power,
    sum_with,
    variables_in,
)
from .quotients import (
    C5_COVERS,
    check_linear_quotients_order,
    check_products_minimal,
    find_linear_quotients,
    cover_power_order,
    replay_certificate,
)
from .resolution import betti_table, has_linear_resolution, regularity, taylor_betti_oracle

SCHEMA_VERSION = "1"

STURMFELS_TEXT = """vars a b c d e f
d*e*f
c*e*f
c*d*f
c*d*e
b*e*f
b*c*d
a*c*f
a*d*e
"""


def sturmfels_ideal() -> MonomialIdeal:
    """Equigenerated cubic ideal with linear quotients whose square has no
    linear resolution."""
    return parse_ideal(STURMFELS_TEXT)


def order_sensitivity_graph() -> Graph:
    """Seven-vertex graph: a pendant ``a`` on ``b``, and ``b`` joined to the
    5-cycle c-d-e-f-g."""
    return Graph.from_edges(
        [tuple(e) for e in "ab bc bd be bf bg cd de ef fg gc".split()], "abcdefg"
    )


def c5_graph(isolated: int = 0) -> Graph:
    cyc = ["u1", "u2", "u3", "u4", "u5"]
    extra = [f"w{i}" for i in range(isolated)]
    return Graph.from_edges([(cyc[i], cyc[(i + 1) % 5]) for i in range(5)], cyc + extra)


# --- reports ----------------------------------------------------------------


@dataclass
class CaseResult:
    case_id: str
    anchor: str
    claim: str
    input_hash: str
    computed: Any
    expected: Any
    passed: bool
    wall_time: float = 0.0


@dataclass
class SuiteReport:
    suite_id: str
    seed: int
    cases: list[CaseResult] = field(default_factory=list)
    config: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def failures(self) -> list[CaseResult]:
        return [c for c in self.cases if not c.passed]

    def to_json(self, timings: bool = True) -> dict:
        cases = []
        for c in self.cases:
            d = asdict(c)
            if not timings:
                d.pop("wall_time")
            cases.append(d)
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite_id,
            "seed": self.seed,
            "config": self.config,
            "summary": {
                "total": len(self.cases),
                "passed": sum(c.passed for c in self.cases),
                "failed": sum(not c.passed for c in self.cases),
            },
            "cases": cases,
        }

    def dumps(self, timings: bool = True) -> str:
        return json.dumps(self.to_json(timings), indent=2, sort_keys=True)

    def extend(self, other: SuiteReport) -> None:
        self.cases.extend(other.cases)


def input_hash(obj: Graph | MonomialIdeal | str) -> str:
    text = obj if isinstance(obj, str) else obj.to_text()
    return hashlib.sha256(text.encode()).hexdigest()[:12]


@dataclass
class Case:
    case_id: str
    anchor: str
    claim: str
    check: Callable[[Any], tuple[Any, Any, bool]]
    payload: Any
    hash_of: Any = None


def _execute(case: Case) -> CaseResult:
    start = time.perf_counter()
    computed, expected, ok = case.check(case.payload)
    elapsed = time.perf_counter() - start
    h = input_hash(case.hash_of) if case.hash_of is not None else ""
    return CaseResult(case.case_id, case.anchor, case.claim, h, computed, expected, bool(ok), round(elapsed, 4))


def run_cases(suite_id: str, seed: int, cases: list[Case], jobs: int = 1, config: dict | None = None) -> SuiteReport:
    if jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_execute, cases))
    else:
        results = [_execute(c) for c in cases]
    order = {c.case_id: k for k, c in enumerate(cases)}
    results.sort(key=lambda r: order[r.case_id])
    return SuiteReport(suite_id, seed, results, config or {})


# --- corpora ----------------------------------------------------------------


def _shuffled(g: Graph, rng: random.Random) -> Graph:
    order = list(g.vertices)
    rng.shuffle(order)
    return Graph.from_edges(g.edges(), order)


def random_free_graphs(
    seed: int,
    count: int,
    max_n: int = 8,
    with_c5: bool | None = None,
    max_n1: int = 4,
    max_n2: int = 3,
) -> list[Graph]:
    """Seeded (C4, 2K2)-free graphs with at least one edge and at most
    ``max_n`` vertices; ``with_c5`` forces or forbids the 5-cycle part."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        c5 = rng.random() < 0.5 if with_c5 is None else with_c5
        room = max_n - (5 if c5 else 0)
        if room < 0:
            raise ValueError("max_n too small for a 5-cycle")
        n1 = rng.randint(0, min(max_n1, room))
        n2 = rng.randint(0, min(max_n2, room - n1))
        density = rng.choice([0.3, 0.5, 0.8, 1.0])
        g, _ = random_c4_2k2_graph(n1, n2, c5, density, rng.randrange(2**31))
        if g.num_edges() == 0:
            continue
        out.append(_shuffled(g, rng))
    return out


def random_graphs(seed: int, count: int, max_n: int = 7) -> list[Graph]:
    """Erdos-Renyi graphs with at least one edge."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(2, max_n)
        p = rng.choice([0.3, 0.5, 0.7])
        labels = [f"x{i}" for i in range(n)]
        edges = [e for e in itertools.combinations(labels, 2) if rng.random() < p]
        if edges:
            out.append(Graph.from_edges(edges, labels))
    return out


def random_monomial_ideal(rng: random.Random, max_vars: int = 6, max_gens: int = 10, max_exp: int = 3) -> MonomialIdeal:
    while True:
        n = rng.randint(1, max_vars)
        k = rng.randint(1, max_gens)
        gens = []
        for _ in range(k):
            e = [rng.randint(0, max_exp) if rng.random() < 0.6 else 0 for _ in range(n)]
            if any(e):
                gens.append(Monomial(e))
        if gens:
            return MonomialIdeal([f"x{i}" for i in range(n)], gens)


def is_c5_with_isolated(g: Graph) -> bool:
    core = g.remove(g.isolated())
    return len(core) == 5 and core.num_edges() == 5 and find_induced(core, "C5") is not None


def _partition(g: Graph) -> Partition:
    p, witness = recognize_c4_2k2(g)
    if p is None:
        raise ValueError(f"graph is not (C4,2K2)-free; witness {sorted(witness)}")
    return p


# --- checks -----------------------------------------------------------------


def _check_reg_equals(payload):
    ideal, expected, fld = payload
    r = regularity(ideal, fld)
    return r, expected, r == expected


def _check_linres(payload):
    ideal, expected = payload
    got = has_linear_resolution(ideal)
    return got, expected, got == expected


def _check_linquo_search(payload):
    cert = find_linear_quotients(payload)
    ok = bool(cert) and replay_certificate(cert, payload)
    return ("certificate" if ok else repr(cert)), "certificate", ok


def _check_edge_reg_bound(g: Graph):
    r = regularity(edge_ideal(g))
    return r, "<= 3", r <= 3


def _check_power_linear(payload):
    g, s = payload
    ok = has_linear_resolution(power(edge_ideal(g), s))
    return ok, True, ok


def _check_cover_order(payload):
    g, s = payload
    og = cover_power_order(g, _partition(g), s)
    cert, failure = check_linear_quotients_order(og)
    ok = cert is not None and replay_certificate(cert, og.ideal)
    return ("certificate" if ok else f"fails at step {failure[0] if failure else '?'}"), "certificate", ok


def cover_power_regularity_formula(g: Graph, s: int) -> int:
    return 3 * s if is_c5_with_isolated(g) else s * max_degree(g)


def _check_cover_reg(payload):
    g, s = payload
    r = regularity(power(cover_ideal(g), s))
    expected = cover_power_regularity_formula(g, s)
    return r, expected, r == expected


def _check_oracle(ideal: MonomialIdeal):
    mismatches = []
    for fld in (QQ, GF2):
        a = betti_table(ideal, fld).entries
        b = taylor_betti_oracle(ideal, fld).entries
        if a != b:
            mismatches.append(fld)
    return ("agree" if not mismatches else f"differ over {mismatches}"), "agree", not mismatches


def _check_froberg(g: Graph):
    r = regularity(edge_ideal(g))
    chordal, _ = is_chordal(complement(g))
    return [r, chordal], "reg == 2 iff complement chordal", (r == 2) == chordal


def _check_polarization(ideal: MonomialIdeal):
    a = regularity(ideal)
    b = regularity(polarize(ideal)[0])
    return [a, b], "equal", a == b


def _check_adding_variable(payload):
    ideal, var = payload
    if var is None:
        # fresh variable outside the ring
        names = ideal.ring_vars + ("t_new",)
        bigger = MonomialIdeal(names, [Monomial(tuple(g) + (0,)) for g in ideal.gens])
        added = sum_with(bigger, [Monomial.var(len(names) - 1, len(names))])
        base = regularity(ideal)
        r = regularity(added)
    else:
        added = sum_with(ideal, [Monomial.var(var, ideal.nvars)])
        base = regularity(ideal)
        r = regularity(added)
    return [r, base], "reg(I, x) <= reg(I)", r <= base


def _check_colon_sum_bound(payload):
    ideal, m = payload
    r = regularity(ideal)
    c = colon(ideal, m)
    s = sum_with(ideal, [m])
    bound = max(regularity(c) + m.degree, regularity(s))
    return [r, bound], "reg(I) <= max(reg(I:m) + deg m, reg(I, m))", r <= bound


def neighbor_bound_terms(g: Graph, x: str) -> tuple[int, int | None]:
    """The two terms of the neighbourhood bound at ``x``. An edgeless
    ``G - N[x]`` contributes 1 (so its term is 2); an edgeless ``G - x``
    contributes nothing (None)."""
    closed = g.neighbors(x) | {x}
    rest = g.remove(closed)
    t1 = (regularity(edge_ideal(rest)) if rest.num_edges() else 1) + 1
    minus = g.remove([x])
    t2 = regularity(edge_ideal(minus)) if minus.num_edges() else None
    return t1, t2


def _check_neighbor(payload):
    g, x = payload
    r = regularity(edge_ideal(g))
    t1, t2 = neighbor_bound_terms(g, x)
    terms = [t for t in (t1, t2) if t is not None]
    return [r, terms], "reg <= max(terms) and reg in terms", r <= max(terms) and r in terms


def _check_c5_unique(p: int):
    covers = [Monomial.from_support(f, 5) for f in C5_COVERS]
    ideal = power(MonomialIdeal(("u1", "u2", "u3", "u4", "u5"), covers), p)
    counts = [len(factorizations(m, covers, p)) for m in ideal.gens]
    ok = all(c == 1 for c in counts)
    return max(counts), 1, ok


def _check_products_minimal(payload):
    g, s = payload
    ok, count = check_products_minimal(g, _partition(g), s)
    return [ok, count], [True, "distinct products"], ok


def _check_colon_step(payload):
    base, placed, m, fld = payload
    j = colon(sum_with(base, placed), m)
    r = regularity(j, fld)
    structural = j == sum_with(colon(base, m), variables_in(j))
    return [r, structural], ["<= 2", True], r <= 2 and structural


# --- suites -----------------------------------------------------------------


def a_first_edge_order(g: Graph, p: Partition) -> list[tuple[str, str]]:
    """Edges meeting the 5-cycle first, sorted by (cycle endpoint, other
    endpoint); the remaining edges afterwards in label order."""
    a_edges, b_edges = [], []
    for u, v in g.edges():
        if u in p.v3 or v in p.v3:
            z = min(w for w in (u, v) if w in p.v3)
            other = v if z == u else u
            a_edges.append(((z, other), (u, v)))
        else:
            b_edges.append((tuple(sorted((u, v))), (u, v)))
    return [e for _, e in sorted(a_edges)] + [e for _, e in sorted(b_edges)]


def edge_order_starting_with(g: Graph, first: tuple[str, str]) -> list[tuple[str, str]]:
    edges = sorted(g.edges(), key=lambda e: tuple(sorted(e)))
    key = set(first)
    return [e for e in edges if set(e) == key] + [e for e in edges if set(e) != key]


def colon_chain_cases(
    g: Graph, s: int, edge_order: list[tuple[str, str]] | None = None, field: int = QQ, tag: str = ""
) -> list[Case]:
    p = _partition(g)
    if not p.v3:
        raise ValueError("colon chain check needs a nonempty V3")
    ideal = edge_ideal(g)
    edges = edge_order if edge_order is not None else a_first_edge_order(g, p)
    n = len(g)
    ordered = [Monomial.from_support((g.index(u), g.index(v)), n) for u, v in edges]
    og = banerjee_order(OrderedGenerators(ideal, tuple(ordered), Provenance.USER_GIVEN), s)
    base = power(ideal, s + 1)
    cases = []
    for ell in range(len(og.order)):
        m = og.order[ell]
        cases.append(
            Case(
                f"colon-chain{tag}/s={s}/l={ell}",
                "ordered-colon-ideals",
                f"reg((I^{s + 1}, M_1..M_{ell}) : M_{ell + 1}) <= 2 and colon = (I^{s + 1} : M) + variables",
                _check_colon_step,
                (base, list(og.order[:ell]), m, field),
                g,
            )
        )
    return cases


def verify_colon_chain(
    g: Graph, s: int, edge_order: list[tuple[str, str]] | None = None, field: int = QQ, jobs: int = 1
) -> SuiteReport:
    cases = colon_chain_cases(g, s, edge_order, field)
    return run_cases("colon-chain", 0, cases, jobs, {"s": s})


def neighbor_bound_cases(g: Graph, tag: str = "") -> list[Case]:
    if g.num_edges() == 0:
        raise ValueError("neighbour bound needs at least one edge")
    return [
        Case(f"neighbor-bound{tag}/{x}", "neighbourhood-regularity-bound",
             "reg(I(G)) <= max(reg(I(G-N[x]))+1, reg(I(G-x))) and equals one term",
             _check_neighbor, (g, x), g)
        for x in g.vertices if g.degree(x)
    ]


def verify_neighbor_bound(g: Graph, jobs: int = 1) -> SuiteReport:
    return run_cases("neighbor-bound", 0, neighbor_bound_cases(g), jobs)


@dataclass
class SuiteConfig:
    edge_reg_graphs: int = 100
    linear_power_graphs: int = 30
    max_n: int = 8
    cube_max_n: int = 6
    max_s: int = 3
    split_graphs: int = 10
    oracle_ideals: int = 200
    froberg_graphs: int = 60
    property_samples: int = 40
    neighbor_graphs: int = 50
    minimality_graphs: int = 10

    @classmethod
    def quick(cls) -> SuiteConfig:
        return cls(10, 4, 8, 6, 2, 3, 20, 10, 5, 5, 3)


def sturmfels_cases() -> list[Case]:
    i = sturmfels_ideal()
    i2 = power(i, 2)
    return [
        Case("sturmfels/linear-quotients", "sturmfels-example", "I has linear quotients",
             _check_linquo_search, i, i),
        Case("sturmfels/reg-I", "sturmfels-example", "reg(I) = 3", _check_reg_equals, (i, 3, QQ), i),
        Case("sturmfels/reg-I2", "sturmfels-example", "reg(I^2) = 7", _check_reg_equals, (i2, 7, QQ), i2),
        Case("sturmfels/I2-not-linear", "sturmfels-example",
             "I^2 has no linear resolution (designed negative)", _check_linres, (i2, False), i2),
    ]


def order_sensitivity_cases() -> list[Case]:
    g = order_sensitivity_graph()
    e = edge_ideal(g)
    j = colon(power(e, 2), e.monomial("a*b"))
    return [
        Case("order-sensitivity/reg-colon", "edge-order-matters", "reg(I(G)^2 : ab) = 3",
             _check_reg_equals, (j, 3, QQ), g)
    ]


def edge_reg_cases(seed: int, cfg: SuiteConfig) -> list[Case]:
    graphs = random_free_graphs(seed, cfg.edge_reg_graphs, cfg.max_n)
    return [
        Case(f"edge-reg/{k}", "edge-ideal-regularity-at-most-3", "reg(I(G)) <= 3",
             _check_edge_reg_bound, g, g)
        for k, g in enumerate(graphs)
    ]


def c5_corpus(seed: int, cfg: SuiteConfig) -> list[Graph]:
    return random_free_graphs(seed + 1, cfg.linear_power_graphs, cfg.max_n, with_c5=True)


def split_corpus(seed: int, cfg: SuiteConfig) -> list[Graph]:
    return random_free_graphs(seed + 2, cfg.split_graphs, 7, with_c5=False)


def linear_power_cases(seed: int, cfg: SuiteConfig) -> list[Case]:
    cases = []
    for k, g in enumerate(c5_corpus(seed, cfg)):
        for s in range(2, min(cfg.max_s, 3) + 1):
            if s == 3 and len(g) > cfg.cube_max_n:
                continue
            cases.append(Case(f"edge-powers/{k}/s={s}", "edge-powers-linear-resolution",
                              f"I(G)^{s} has a linear resolution", _check_power_linear, (g, s), g))
    return cases


def cover_order_graphs(seed: int, cfg: SuiteConfig) -> list[tuple[str, Graph]]:
    named = [(f"c5corpus{k}", g) for k, g in enumerate(c5_corpus(seed, cfg))]
    named += [(f"c5+{k}", c5_graph(k)) for k in range(3)]
    named += [(f"split{k}", g) for k, g in enumerate(split_corpus(seed, cfg))]
    return named


def cover_order_cases(seed: int, cfg: SuiteConfig) -> list[Case]:
    return [
        Case(f"cover-order/{name}/s={s}", "cover-powers-linear-quotients",
             f"(I(G)^vee)^{s} has linear quotients in the constructed order",
             _check_cover_order, (g, s), g)
        for name, g in cover_order_graphs(seed, cfg)
        for s in range(1, cfg.max_s + 1)
    ]


def cover_reg_cases(seed: int, cfg: SuiteConfig) -> list[Case]:
    return [
        Case(f"cover-reg/{name}/s={s}", "cover-powers-regularity",
             f"reg((I(G)^vee)^{s}) = 3s for C5 plus isolated vertices, else s*maxdeg",
             _check_cover_reg, (g, s), g)
        for name, g in cover_order_graphs(seed, cfg)
        for s in range(1, cfg.max_s + 1)
    ]


def oracle_cases(seed: int, cfg: SuiteConfig) -> list[Case]:
    rng = random.Random(seed + 3)
    ideals = [random_monomial_ideal(rng) for _ in range(cfg.oracle_ideals)]
    return [
        Case(f"oracle/{k}", "betti-oracle-agreement", "upper Koszul table = Taylor table over Q and GF(2)",
             _check_oracle, i, i)
        for k, i in enumerate(ideals)
    ]


def property_cases(seed: int, cfg: SuiteConfig) -> list[Case]:
    rng = random.Random(seed + 4)
    cases = []
    for k, g in enumerate(random_graphs(seed + 5, cfg.froberg_graphs, 7)):
        cases.append(Case(f"froberg/{k}", "froberg", "reg(I(G)) = 2 iff complement chordal",
                          _check_froberg, g, g))
    for k in range(cfg.property_samples):
        i = random_monomial_ideal(rng, 6, 8, 3)
        cases.append(Case(f"polarization/{k}", "polarization", "reg(I) = reg(I^pol)",
                          _check_polarization, i, i))
    for k in range(cfg.property_samples):
        i = random_monomial_ideal(rng, 5, 6, 2)
        var = rng.choice([None] + list(range(i.nvars)))
        cases.append(Case(f"add-variable/{k}", "adding-a-variable", "reg(I, x) <= reg(I)",
                          _check_adding_variable, (i, var), i))
    k = 0
    while k < cfg.property_samples:
        i = random_monomial_ideal(rng, 5, 6, 2)
        m = Monomial(rng.randint(0, 2) for _ in range(i.nvars))
        if not any(m) or m in i:
            continue
        cases.append(Case(f"colon-sum/{k}", "colon-sum-bound",
                          "reg(I) <= max(reg(I:m)+deg m, reg(I,m))", _check_colon_sum_bound, (i, m), i))
        k += 1
    for k, g in enumerate(random_free_graphs(seed + 6, cfg.neighbor_graphs, 7)):
        cases.extend(neighbor_bound_cases(g, tag=f"/{k}"))
    for p in range(1, cfg.max_s + 1):
        cases.append(Case(f"c5-unique-expression/p={p}", "unique-c5-cover-expression",
                          "each generator of the C5 cover power factors uniquely", _check_c5_unique, p))
    for k, g in enumerate(c5_corpus(seed, cfg)[: cfg.minimality_graphs]):
        for s in range(1, cfg.max_s + 1):
            cases.append(Case(f"products-minimal/{k}/s={s}", "cover-products-minimal",
                              "every s-fold product of minimal covers is a minimal generator",
                              _check_products_minimal, (g, s), g))
    return cases


CRITERIA = {
    "sturmfels": lambda seed, cfg: sturmfels_cases(),
    "order-sensitivity": lambda seed, cfg: order_sensitivity_cases(),
    "edge-reg": edge_reg_cases,
    "edge-powers": linear_power_cases,
    "cover-order": cover_order_cases,
    "cover-reg": cover_reg_cases,
    "oracle": oracle_cases,
    "properties": property_cases,
}


def criterion_report(name: str, seed: int = 0, cfg: SuiteConfig | None = None, jobs: int = 1) -> SuiteReport:
    cfg = cfg or SuiteConfig()
    return run_cases(name, seed, CRITERIA[name](seed, cfg), jobs, asdict(cfg))


def suite_reproduce(seed: int = 0, cfg: SuiteConfig | None = None, jobs: int = 1) -> SuiteReport:
    """Run every reproduction criterion into one report."""
    cfg = cfg or SuiteConfig()
    cases = [c for build in CRITERIA.values() for c in build(seed, cfg)]
    g = order_sensitivity_graph()
    cases += colon_chain_cases(g, 1, tag="/a-first")
    cases += colon_chain_cases(c5_graph(), 1, tag="/c5")
    cases += colon_chain_cases(c5_graph(), 2, tag="/c5")
    return run_cases("reproduce", seed, cases, jobs, asdict(cfg))
