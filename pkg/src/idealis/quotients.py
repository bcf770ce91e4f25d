"""Linear quotients: certificates, search, and explicit orders on powers of
vertex cover ideals of (C4, 2K2)-free graphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .graph import Graph, Partition, minimal_vertex_covers
from .monomial import (
    Monomial,
    MonomialIdeal,
    OrderedGenerators,
    Provenance,
    colon,
    cover_ideal,
    factorizations,
    format_monomial,
    parse_monomial,
    power,
    prod,
)

EXHAUSTIVE_MAX_GENS = 20

# covers of the cycle u1..u5 as index triples: u1u2u4, u4u5u2, u2u3u5, u3u4u1, u5u1u3
C5_COVERS = ((0, 1, 3), (3, 4, 1), (1, 2, 4), (2, 3, 0), (4, 0, 2))


@dataclass(frozen=True)
class LinearQuotientsCertificate:
    ring_vars: tuple[str, ...]
    ordered_gens: tuple[Monomial, ...]
    # entry l-2 holds the variable indices generating (m_1..m_{l-1}) : m_l
    step_colon_vars: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        names = self.ring_vars
        return {
            "vars": list(names),
            "order": [format_monomial(m, names) for m in self.ordered_gens],
            "steps": [
                {"index": k + 2, "colon_vars": [names[v] for v in vs]}
                for k, vs in enumerate(self.step_colon_vars)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> LinearQuotientsCertificate:
        names = tuple(data["vars"])
        index = {v: i for i, v in enumerate(names)}
        order = tuple(parse_monomial(t, names) for t in data["order"])
        steps = sorted(data["steps"], key=lambda st: st["index"])
        if [st["index"] for st in steps] != list(range(2, len(order) + 1)):
            raise ValueError("certificate steps must cover indices 2..q")
        colon_vars = tuple(tuple(sorted(index[v] for v in st["colon_vars"])) for st in steps)
        return cls(names, order, colon_vars)


def _step_colon(placed: Sequence[Monomial], m: Monomial, ring_vars) -> MonomialIdeal:
    return colon(MonomialIdeal(ring_vars, placed), m)


def replay_certificate(cert: LinearQuotientsCertificate, ideal: MonomialIdeal | None = None) -> bool:
    """Recompute every colon ideal from scratch and compare with the record."""
    if ideal is not None and (
        len(cert.ordered_gens) != len(ideal.gens) or set(cert.ordered_gens) != set(ideal.gens)
    ):
        return False
    if len(cert.step_colon_vars) != max(len(cert.ordered_gens) - 1, 0):
        return False
    for k in range(1, len(cert.ordered_gens)):
        q = _step_colon(cert.ordered_gens[:k], cert.ordered_gens[k], cert.ring_vars)
        if any(g.degree != 1 for g in q.gens):
            return False
        if tuple(sorted(g.support[0] for g in q.gens)) != cert.step_colon_vars[k - 1]:
            return False
    return True


class _ColonTable:
    """Pairwise ``m_j : m_i`` data as bitmasks, for fast repeated checks."""

    def __init__(self, gens: Sequence[Monomial]):
        self.gens = list(gens)
        q = len(gens)
        self.supp = [[0] * q for _ in range(q)]
        self.var = [[0] * q for _ in range(q)]
        for i, mi in enumerate(gens):
            for j, mj in enumerate(gens):
                if i == j:
                    continue
                quo = mj.quotient(mi)
                s = 0
                for k, e in enumerate(quo):
                    if e:
                        s |= 1 << k
                self.supp[i][j] = s
                if quo.degree == 1:
                    self.var[i][j] = s

    def colon_vars(self, placed: Sequence[int], i: int) -> int | None:
        """Variable bitmask generating ``(placed) : m_i``, or None when that
        colon ideal is not generated by variables."""
        v = 0
        row = self.var[i]
        for j in placed:
            v |= row[j]
        supp = self.supp[i]
        for j in placed:
            if not supp[j] & v:
                return None
        return v


def _mask_to_vars(mask: int) -> tuple[int, ...]:
    return tuple(k for k in range(mask.bit_length()) if mask >> k & 1)


def _certificate(ring_vars, gens: Sequence[Monomial], order: Sequence[int], table: _ColonTable):
    steps = []
    for k in range(1, len(order)):
        steps.append(_mask_to_vars(table.colon_vars(order[:k], order[k])))
    return LinearQuotientsCertificate(tuple(ring_vars), tuple(gens[i] for i in order), tuple(steps))


def check_linear_quotients_order(
    og: OrderedGenerators,
) -> tuple[LinearQuotientsCertificate | None, tuple[int, Monomial] | None]:
    """Check a given order. Returns ``(certificate, None)`` on success, else
    ``(None, (index, generator))`` with the 1-based failing step and a
    non-linear minimal generator of its colon ideal."""
    order = list(og.order)
    ring_vars = og.ideal.ring_vars
    table = _ColonTable(order)
    idx = list(range(len(order)))
    for k in range(1, len(order)):
        if table.colon_vars(idx[:k], k) is None:
            q = _step_colon(order[:k], order[k], ring_vars)
            bad = next(g for g in q.gens if g.degree != 1)
            return None, (k + 1, bad)
    return _certificate(ring_vars, order, idx, table), None


def greedy_linear_quotients(
    i: MonomialIdeal, order: Sequence[Monomial] | None = None, restarts: bool = True
) -> LinearQuotientsCertificate | None:
    """Greedy placement: repeatedly append the first unplaced generator (in
    ``order``, default the ideal's generator order) whose colon against the
    placed ones is variable-generated. Success is a valid certificate;
    failure is inconclusive."""
    gens = list(order) if order is not None else list(i.gens)
    if not gens:
        return None
    table = _ColonTable(gens)
    q = len(gens)
    starts = range(q) if restarts else range(1)
    for start in starts:
        placed = [start]
        left = [k for k in range(q) if k != start]
        while left:
            for k in left:
                if table.colon_vars(placed, k) is not None:
                    placed.append(k)
                    left.remove(k)
                    break
            else:
                break
        if not left:
            return _certificate(i.ring_vars, gens, placed, table)
    return None


class NoLinearQuotients:
    """Marker returned by the exhaustive search when no order exists."""

    def __repr__(self) -> str:
        return "definitely-none"

    def __bool__(self) -> bool:
        return False


DEFINITELY_NONE = NoLinearQuotients()


def exhaustive_linear_quotients(
    i: MonomialIdeal, max_gens: int = EXHAUSTIVE_MAX_GENS
) -> LinearQuotientsCertificate | NoLinearQuotients:
    """Decide linear quotients by search over sets of placed generators
    (the colon depends only on the set). Returns a certificate or
    ``DEFINITELY_NONE``."""
    gens = list(i.gens)
    q = len(gens)
    if q > max_gens:
        from .resolution import ResourceError

        raise ResourceError(f"exhaustive search limited to {max_gens} generators")
    if q == 0:
        return DEFINITELY_NONE
    table = _ColonTable(gens)
    full = (1 << q) - 1
    dead: set[int] = set()

    def extend(mask: int, placed: list[int]) -> list[int] | None:
        if mask == full:
            return placed
        if mask in dead:
            return None
        for k in range(q):
            if not mask >> k & 1 and table.colon_vars(placed, k) is not None:
                placed.append(k)
                res = extend(mask | 1 << k, placed)
                if res is not None:
                    return res
                placed.pop()
        dead.add(mask)
        return None

    for start in range(q):
        res = extend(1 << start, [start])
        if res is not None:
            return _certificate(i.ring_vars, gens, res, table)
    return DEFINITELY_NONE


def find_linear_quotients(i: MonomialIdeal) -> LinearQuotientsCertificate | NoLinearQuotients | None:
    """Greedy first, then exhaustive when small enough; None if undecided."""
    cert = greedy_linear_quotients(i)
    if cert is not None:
        return cert
    if len(i.gens) <= EXHAUSTIVE_MAX_GENS:
        return exhaustive_linear_quotients(i)
    return None


# --- explicit orders --------------------------------------------------------


class OrderValidationError(RuntimeError):
    pass


def _c5_cover_monomials(n: int, positions: Sequence[int]) -> list[Monomial]:
    return [Monomial.from_support([positions[t] for t in f], n) for f in C5_COVERS]


@lru_cache(maxsize=None)
def _c5_lex_order(p: int) -> tuple[Monomial, ...]:
    covers = _c5_cover_monomials(5, range(5))
    ideal = power(MonomialIdeal(("u1", "u2", "u3", "u4", "u5"), covers), p)
    return tuple(sorted(ideal.gens, reverse=True))


def c5_cover_power_order(p: int, names: Sequence[str] = ("u1", "u2", "u3", "u4", "u5")) -> OrderedGenerators:
    """Descending lex order on the generators of the ``p``-th power of the
    cover ideal of the cycle ``names[0] .. names[4]``; validated."""
    if p < 1:
        raise ValueError("p must be >= 1")
    order = _c5_lex_order(p)
    ideal = MonomialIdeal(tuple(names), order)
    og = OrderedGenerators(ideal, order, Provenance.LEX_C5)
    cert, failure = check_linear_quotients_order(og)
    if cert is None:
        raise OrderValidationError(f"lex order on C5 cover power {p} fails at step {failure[0]}")
    return og


@dataclass(frozen=True)
class CoverPowerExpression:
    alpha: tuple[int, ...]
    beta: tuple[int, ...]


@lru_cache(maxsize=64)
def _cover_power(g: Graph, s: int) -> MonomialIdeal:
    return power(cover_ideal(g), s)


def _pieces(g: Graph, p: Partition):
    n = len(g)
    zs = sorted(p.v2, key=g.index)
    positions = [g.index(u) for u in p.c5_order]
    v2_mono = Monomial.from_support(map(g.index, zs), n)
    fs = _c5_cover_monomials(n, positions)
    nbhd = [Monomial.from_support(map(g.index, g.neighbors(z)), n) for z in zs]
    return zs, positions, v2_mono, fs, nbhd


def expressions_of_cover_power_gen(g: Graph, p: Partition, s: int, m: Monomial) -> CoverPowerExpression:
    """The unique ``(alpha, beta)`` with
    ``m = prod (V2 f_i)^alpha_i * prod N(z_j)^beta_j``."""
    if not p.v3 or not p.v2:
        raise ValueError("expressions need nonempty V2 and V3")
    if m not in set(_cover_power(g, s).gens):
        raise ValueError("monomial is not a minimal generator of the cover ideal power")
    zs, positions, v2_mono, fs, nbhd = _pieces(g, p)
    beta = tuple(s - m[g.index(z)] for z in zs)
    if any(b < 0 for b in beta):
        raise ValueError("no valid expression: V2 exponent exceeds s")
    rest = m / prod((nb ** b for nb, b in zip(nbhd, beta)), len(g))
    a = s - sum(beta)
    f_part = rest / (v2_mono ** a)
    found = factorizations(f_part, fs, a) if a else ([()] if not any(f_part) else [])
    if len(found) != 1:
        raise ValueError(f"no unique expression ({len(found)} candidate factorizations)")
    alpha = tuple(sum(1 for f in found[0] if f == fi) for fi in fs)
    return CoverPowerExpression(alpha, beta)


def _map_c5_order(g: Graph, p: Partition, power_: int) -> list[Monomial]:
    n = len(g)
    positions = [g.index(u) for u in p.c5_order]
    out = []
    for mono in _c5_lex_order(power_):
        e = [0] * n
        for k, x in enumerate(mono):
            e[positions[k]] = x
        out.append(Monomial(e))
    return out


def _validated(og: OrderedGenerators) -> OrderedGenerators:
    cert, failure = check_linear_quotients_order(og)
    if cert is None:
        raise OrderValidationError(f"order fails linear quotients at step {failure[0]}")
    return og


def cover_power_order(g: Graph, p: Partition, s: int) -> OrderedGenerators:
    """Linear quotients order on the generators of the ``s``-th power of the
    cover ideal.

    With both V2 and V3 nonempty, generators are sorted by larger total
    cycle-cover exponent first, then by the position of the cycle part in
    the C5 order, then by lex-larger neighbourhood exponents. Without V2 the
    C5 order is used directly; without V3 an order is searched for.
    """
    if g.num_edges() == 0:
        raise ValueError("graph needs at least one edge")
    if s < 1:
        raise ValueError("s must be >= 1")
    ideal = _cover_power(g, s)
    if p.v3 and not p.v2:
        order = _map_c5_order(g, p, s)
        return _validated(OrderedGenerators(ideal, tuple(order), Provenance.COVER_ORDER))
    if not p.v3:
        cert = find_linear_quotients(ideal)
        if not cert:
            raise OrderValidationError("no linear quotients order found for split graph")
        return OrderedGenerators(ideal, cert.ordered_gens, Provenance.COVER_ORDER)
    keys = composite_keys(g, p, s)
    order = sorted(ideal.gens, key=keys.__getitem__)
    return _validated(OrderedGenerators(ideal, tuple(order), Provenance.COVER_ORDER))


def composite_keys(g: Graph, p: Partition, s: int) -> dict[Monomial, tuple]:
    """Sort key ``(-sum(alpha), position of cycle part, -beta)`` of every
    generator; smaller keys come first."""
    _, _, _, fs, _ = _pieces(g, p)
    n = len(g)
    rank = {a: {m: r for r, m in enumerate(_map_c5_order(g, p, a))} for a in range(1, s + 1)}
    out = {}
    for m in _cover_power(g, s).gens:
        expr = expressions_of_cover_power_gen(g, p, s, m)
        a = sum(expr.alpha)
        pos = rank[a][prod((f ** k for f, k in zip(fs, expr.alpha)), n)] if a else 0
        out[m] = (-a, pos, tuple(-b for b in expr.beta))
    return out


def check_products_minimal(g: Graph, p: Partition, s: int) -> tuple[bool, int]:
    """Whether every product of ``s`` minimal covers (with repetition) is a
    minimal generator of the ``s``-th power; also the number of distinct
    products."""
    if not p.v3:
        raise ValueError("needs a nonempty V3")
    n = len(g)
    covers = [Monomial.from_support(map(g.index, c), n) for c in minimal_vertex_covers(g)]
    products = {prod(c, n) for c in itertools.combinations_with_replacement(covers, s)}
    gens = set(_cover_power(g, s).gens)
    return products <= gens, len(products)
