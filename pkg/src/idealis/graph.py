"""Simple graphs, induced-pattern search and (C4, 2K2)-free recognition.

Graphs are immutable; adjacency is stored as one integer bitmask per vertex,
indexed by position in ``Graph.vertices``.
"""

from __future__ import annotations

import enum
import itertools
import random
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

LABEL_RE = re.compile(r"^[A-Za-z0-9_]+$")


class GraphFormatError(ValueError):
    pass


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    adjacency: tuple[int, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex labels must be unique")
        if len(self.adjacency) != len(self.vertices):
            raise ValueError("adjacency length does not match vertex count")
        for i, row in enumerate(self.adjacency):
            if row >> i & 1:
                raise ValueError(f"self-loop at {self.vertices[i]}")
            if row >> len(self.vertices):
                raise ValueError("adjacency refers to unknown vertex")
            for j in _bits(row):
                if not self.adjacency[j] >> i & 1:
                    raise ValueError("adjacency is not symmetric")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.vertices)})

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str]], vertices: Iterable[str] = ()) -> Graph:
        order: list[str] = []
        seen: set[str] = set()
        edges = list(edges)
        for v in itertools.chain(vertices, itertools.chain.from_iterable(edges)):
            if v not in seen:
                seen.add(v)
                order.append(v)
        index = {v: i for i, v in enumerate(order)}
        adj = [0] * len(order)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            i, j = index[u], index[v]
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(tuple(order), tuple(adj))

    @classmethod
    def cycle(cls, labels: Sequence[str]) -> Graph:
        n = len(labels)
        return cls.from_edges([(labels[i], labels[(i + 1) % n]) for i in range(n)], labels)

    @classmethod
    def complete(cls, labels: Sequence[str]) -> Graph:
        return cls.from_edges(itertools.combinations(labels, 2), labels)

    @classmethod
    def path(cls, labels: Sequence[str]) -> Graph:
        return cls.from_edges(zip(labels, labels[1:]), labels)

    def __len__(self) -> int:
        return len(self.vertices)

    def index(self, v: str) -> int:
        return self._index[v]

    def has_edge(self, u: str, v: str) -> bool:
        return bool(self.adjacency[self._index[u]] >> self._index[v] & 1)

    def neighbors(self, v: str) -> frozenset[str]:
        return frozenset(self.vertices[j] for j in _bits(self.adjacency[self._index[v]]))

    def degree(self, v: str) -> int:
        return self.adjacency[self._index[v]].bit_count()

    def edges(self) -> list[tuple[str, str]]:
        """Edges as label pairs, ordered by vertex position."""
        out = []
        for i, row in enumerate(self.adjacency):
            for j in _bits(row >> (i + 1) << (i + 1)):
                out.append((self.vertices[i], self.vertices[j]))
        return out

    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2

    def isolated(self) -> list[str]:
        return [v for v, row in zip(self.vertices, self.adjacency) if not row]

    def mask(self, vs: Iterable[str]) -> int:
        m = 0
        for v in vs:
            m |= 1 << self._index[v]
        return m

    def labels(self, mask: int) -> frozenset[str]:
        return frozenset(self.vertices[i] for i in _bits(mask))

    def induced(self, vs: Iterable[str]) -> Graph:
        keep = set(vs)
        order = [v for v in self.vertices if v in keep]
        return Graph.from_edges(
            [(u, v) for u, v in self.edges() if u in keep and v in keep], order
        )

    def remove(self, vs: Iterable[str]) -> Graph:
        drop = set(vs)
        return self.induced(v for v in self.vertices if v not in drop)

    def relabel(self, mapping: dict[str, str]) -> Graph:
        return Graph(tuple(mapping.get(v, v) for v in self.vertices), self.adjacency)

    def to_text(self) -> str:
        lines = [f"{u} {v}" for u, v in self.edges()]
        lines += [f"vertex {v}" for v in self.isolated()]
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: ``u v`` per line, ``vertex x`` for isolated
    vertices, ``#`` comments."""
    edges = []
    vertices = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected two tokens, got {line!r}")
        if parts[0] == "vertex":
            if not LABEL_RE.match(parts[1]):
                raise GraphFormatError(f"line {lineno}: bad label {parts[1]!r}")
            vertices.append(parts[1])
            continue
        for p in parts:
            if not LABEL_RE.match(p):
                raise GraphFormatError(f"line {lineno}: bad label {p!r}")
        if parts[0] == parts[1]:
            raise GraphFormatError(f"line {lineno}: self-loop {parts[0]}")
        edges.append((parts[0], parts[1]))
    # keep first-appearance order across edges and vertex declarations
    order: list[str] = []
    seen: set[str] = set()
    for v in itertools.chain(itertools.chain.from_iterable(edges), vertices):
        if v not in seen:
            seen.add(v)
            order.append(v)
    return Graph.from_edges(edges, order)


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def complement(g: Graph) -> Graph:
    full = (1 << len(g)) - 1
    return Graph(g.vertices, tuple(full & ~row & ~(1 << i) for i, row in enumerate(g.adjacency)))


def max_degree(g: Graph) -> int:
    return max((row.bit_count() for row in g.adjacency), default=0)


class Pattern(enum.Enum):
    C4 = "C4"
    TWO_K2 = "2K2"
    C5 = "C5"
    CYCLE_GE4 = "CycleGe4"
    CYCLE_COMPLEMENT_GE5 = "CycleComplementGe5"


def _induced_cycle_order(g: Graph, mask: int) -> list[int] | None:
    """Cyclic vertex order if ``mask`` induces a single cycle, else None."""
    vs = list(_bits(mask))
    if len(vs) < 3:
        return None
    for v in vs:
        if (g.adjacency[v] & mask).bit_count() != 2:
            return None
    order = [vs[0]]
    prev, cur = -1, vs[0]
    while True:
        nbrs = [w for w in _bits(g.adjacency[cur] & mask) if w != prev]
        nxt = nbrs[0]
        if nxt == vs[0]:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    return order if len(order) == len(vs) else None


def _is_2k2(g: Graph, mask: int) -> bool:
    return all((g.adjacency[v] & mask).bit_count() == 1 for v in _bits(mask))


def _subsets(n: int, k: int) -> Iterator[int]:
    for combo in itertools.combinations(range(n), k):
        m = 0
        for i in combo:
            m |= 1 << i
        yield m


def find_induced(g: Graph, pattern: Pattern | str) -> frozenset[str] | None:
    """Vertex set inducing ``pattern`` in ``g``, or None.

    The search is exhaustive over vertex subsets, smallest first for the
    unbounded patterns.
    """
    pattern = Pattern(pattern)
    n = len(g)
    if pattern is Pattern.C4:
        sizes, test = [4], lambda m: _induced_cycle_order(g, m) is not None
    elif pattern is Pattern.C5:
        sizes, test = [5], lambda m: _induced_cycle_order(g, m) is not None
    elif pattern is Pattern.TWO_K2:
        sizes, test = [4], lambda m: _is_2k2(g, m)
    elif pattern is Pattern.CYCLE_GE4:
        sizes, test = range(4, n + 1), lambda m: _induced_cycle_order(g, m) is not None
    else:
        gc = complement(g)
        sizes, test = range(5, n + 1), lambda m: _induced_cycle_order(gc, m) is not None
    for k in sizes:
        for m in _subsets(n, k):
            if test(m):
                return g.labels(m)
    return None


def perfect_elimination_order(g: Graph) -> list[str] | None:
    """Perfect elimination order via maximum cardinality search, or None if
    ``g`` is not chordal."""
    n = len(g)
    weight = [0] * n
    numbered = 0
    visit: list[int] = []
    for _ in range(n):
        v = max((i for i in range(n) if not numbered >> i & 1), key=lambda i: (weight[i], -i))
        visit.append(v)
        numbered |= 1 << v
        for w in _bits(g.adjacency[v] & ~numbered):
            weight[w] += 1
    peo = visit[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [w for w in _bits(g.adjacency[v]) if pos[w] > pos[v]]
        if not later:
            continue
        parent = min(later, key=pos.__getitem__)
        rest = 0
        for w in later:
            if w != parent:
                rest |= 1 << w
        if rest & ~g.adjacency[parent]:
            return None
    return [g.vertices[i] for i in peo]


def is_chordal(g: Graph) -> tuple[bool, list[str] | None]:
    peo = perfect_elimination_order(g)
    return peo is not None, peo


@dataclass(frozen=True)
class Partition:
    v1: frozenset[str]
    v2: frozenset[str]
    v3: frozenset[str]
    c5_order: tuple[str, ...] = ()

    def validate(self, g: Graph) -> None:
        """Raise ValueError unless this is a valid decomposition of ``g``."""
        parts = [self.v1, self.v2, self.v3]
        if set().union(*parts) != set(g.vertices) or sum(map(len, parts)) != len(g):
            raise ValueError("parts do not partition the vertex set")
        if any(g.has_edge(u, v) for u, v in itertools.combinations(sorted(self.v1), 2)):
            raise ValueError("v1 is not independent")
        if not all(g.has_edge(u, v) for u, v in itertools.combinations(sorted(self.v2), 2)):
            raise ValueError("v2 is not a clique")
        if not self.v3:
            if self.c5_order:
                raise ValueError("c5_order given without v3")
            return
        if len(self.v3) != 5 or set(self.c5_order) != self.v3 or len(self.c5_order) != 5:
            raise ValueError("v3 must be five vertices listed by c5_order")
        for i, u in enumerate(self.c5_order):
            for j, v in enumerate(self.c5_order):
                if i < j and g.has_edge(u, v) != ((j - i) % 5 in (1, 4)):
                    raise ValueError("c5_order does not induce a 5-cycle")
        for z in self.v3:
            for v in self.v2:
                if not g.has_edge(v, z):
                    raise ValueError(f"{v} in v2 not adjacent to {z} in v3")
            for v in self.v1:
                if g.has_edge(v, z):
                    raise ValueError(f"{v} in v1 adjacent to {z} in v3")


def canonical_cycle(labels: Sequence[str]) -> tuple[str, ...]:
    """Lexicographically smallest rotation or reflection of a cyclic order."""
    n = len(labels)
    seqs = []
    for seq in (list(labels), list(reversed(labels))):
        for r in range(n):
            seqs.append(tuple(seq[r:] + seq[:r]))
    return min(seqs)


def _is_valid(g: Graph, p: Partition) -> bool:
    try:
        p.validate(g)
    except ValueError:
        return False
    return True


def _split_partition(g: Graph) -> Partition | None:
    # Hammer-Simeone: the largest-degree prefix is a maximum clique when g is split
    order = sorted(g.vertices, key=lambda v: (-g.degree(v), g.index(v)))
    degs = [g.degree(v) for v in order]
    m = max((i + 1 for i, d in enumerate(degs) if d >= i), default=0)
    p = Partition(frozenset(order[m:]), frozenset(order[:m]), frozenset())
    return p if _is_valid(g, p) else None


def _exhaustive_partition(g: Graph) -> Partition | None:
    names = g.vertices
    v3_options: list[tuple[str, ...]] = [()]
    for m in _subsets(len(g), 5):
        cyc = _induced_cycle_order(g, m)
        if cyc is not None:
            v3_options.append(canonical_cycle([names[i] for i in cyc]))
    for c5 in v3_options:
        rest = [v for v in names if v not in c5]
        for bits in range(1 << len(rest)):
            v2 = frozenset(v for i, v in enumerate(rest) if bits >> i & 1)
            p = Partition(frozenset(rest) - v2, v2, frozenset(c5), c5)
            if _is_valid(g, p):
                return p
    return None


def recognize_c4_2k2(
    g: Graph, exhaustive_limit: int = 12
) -> tuple[Partition | None, frozenset[str] | None]:
    """Decide (C4, 2K2)-freeness.

    Returns ``(partition, None)`` when ``g`` is (C4, 2K2)-free and
    ``(None, witness)`` otherwise, where ``witness`` induces C4 or 2K2.
    """
    c5 = find_induced(g, Pattern.C5)
    if c5 is not None:
        m = g.mask(c5)
        cyc = canonical_cycle([g.vertices[i] for i in _induced_cycle_order(g, m)])
        full = [v for v in g.vertices if v not in c5 and g.adjacency[g.index(v)] & m == m]
        rest = [v for v in g.vertices if v not in c5 and v not in full]
        p = Partition(frozenset(rest), frozenset(full), frozenset(c5), cyc)
        if _is_valid(g, p):
            return p, None
    else:
        p = _split_partition(g)
        if p is not None:
            return p, None
    for pattern in (Pattern.C4, Pattern.TWO_K2):
        w = find_induced(g, pattern)
        if w is not None:
            return None, w
    if len(g) <= exhaustive_limit:
        p = _exhaustive_partition(g)
        if p is not None:
            return p, None
    raise RuntimeError("recognition found neither a partition nor a forbidden subgraph")


def maximal_independent_sets(g: Graph) -> list[frozenset[str]]:
    """Bron-Kerbosch with pivoting on the complement graph."""
    n = len(g)
    full = (1 << n) - 1
    non_adj = [full & ~row & ~(1 << i) for i, row in enumerate(g.adjacency)]
    found: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            found.append(r)
            return
        pivot = max(_bits(p | x), key=lambda u: (p & non_adj[u]).bit_count())
        for v in list(_bits(p & ~non_adj[pivot])):
            expand(r | 1 << v, p & non_adj[v], x & non_adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    if n:
        expand(0, full, 0)
    else:
        found.append(0)
    return [g.labels(m) for m in sorted(found)]


def minimal_vertex_covers(g: Graph) -> list[frozenset[str]]:
    """Minimal vertex covers, as complements of maximal independent sets."""
    everything = frozenset(g.vertices)
    covers = [everything - s for s in maximal_independent_sets(g)]
    return sorted(covers, key=lambda c: (len(c), sorted(g.index(v) for v in c)))


class CoverKind(enum.Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"


@dataclass(frozen=True)
class CoverForm:
    kind: CoverKind
    witness: tuple[str, ...]


def classify_covers(g: Graph, p: Partition) -> list[tuple[frozenset[str], CoverForm]]:
    """Tag every minimal vertex cover as V2 plus three cycle vertices (TypeI,
    witness ``(a, b, c)`` with ab an edge) or as N(a) for a in V2 (TypeII)."""
    if not p.v3:
        raise ValueError("cover classification needs a nonempty V3")
    out = []
    cyc = p.c5_order
    for cover in minimal_vertex_covers(g):
        rest = cover - p.v2
        if p.v2 <= cover and len(rest) == 3 and rest <= p.v3:
            form = None
            for i in range(5):
                a, b, c = cyc[i], cyc[(i + 1) % 5], cyc[(i + 3) % 5]
                if {a, b, c} == rest:
                    form = CoverForm(CoverKind.TYPE_I, (a, b, c))
            if form is not None:
                out.append((cover, form))
                continue
        for a in sorted(p.v2, key=g.index):
            if g.neighbors(a) == cover:
                out.append((cover, CoverForm(CoverKind.TYPE_II, (a,))))
                break
        else:
            raise ValueError(f"cover {sorted(cover)} matches neither form")
    return out


def random_c4_2k2_graph(
    n1: int, n2: int, with_c5: bool, bipartite_density: float, seed: int
) -> tuple[Graph, Partition]:
    """Sample a graph from the independent/clique/5-cycle template.

    V1 is labelled ``a0..``, V2 ``b0..`` and the cycle ``c0..c4``.
    """
    if n1 < 0 or n2 < 0:
        raise ValueError("part sizes must be non-negative")
    rng = random.Random(seed)
    v1 = [f"a{i}" for i in range(n1)]
    v2 = [f"b{i}" for i in range(n2)]
    v3 = [f"c{i}" for i in range(5)] if with_c5 else []
    edges = list(itertools.combinations(v2, 2))
    edges += [(u, w) for u in v1 for w in v2 if rng.random() < bipartite_density]
    if with_c5:
        edges += [(v3[i], v3[(i + 1) % 5]) for i in range(5)]
        edges += [(w, z) for w in v2 for z in v3]
    g = Graph.from_edges(edges, v1 + v2 + v3)
    p = Partition(frozenset(v1), frozenset(v2), frozenset(v3), canonical_cycle(v3) if v3 else ())
    return g, p
