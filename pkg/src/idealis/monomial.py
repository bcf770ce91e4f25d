"""Monomials, monomial ideals and the operations on them used throughout.

A ``Monomial`` is a dense exponent tuple over the ring variables of the ideal
it belongs to; tuple comparison is therefore the lex order with the first ring
variable largest.
"""

from __future__ import annotations

import enum
import itertools
import json
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .graph import Graph, minimal_vertex_covers

MAX_EXPONENT = 2**31 - 1


class Monomial(tuple):
    __slots__ = ()

    def __new__(cls, exps: Iterable[int]):
        exps = tuple(exps)
        for e in exps:
            if e < 0:
                raise ValueError("negative exponent")
            if e > MAX_EXPONENT:
                raise OverflowError("exponent exceeds 32-bit range")
        return super().__new__(cls, exps)

    @classmethod
    def one(cls, nvars: int) -> Monomial:
        return cls((0,) * nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> Monomial:
        return cls(1 if j == i else 0 for j in range(nvars))

    @classmethod
    def from_support(cls, support: Iterable[int], nvars: int) -> Monomial:
        s = set(support)
        return cls(1 if j in s else 0 for j in range(nvars))

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self) if e)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self)

    def divides(self, other: Monomial) -> bool:
        return all(a <= b for a, b in zip(self, other))

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(a + b for a, b in zip(self, other))

    def __pow__(self, k: int) -> Monomial:
        return Monomial(a * k for a in self)

    def __truediv__(self, other: Monomial) -> Monomial:
        return Monomial(a - b for a, b in zip(self, other))

    def lcm(self, other: Monomial) -> Monomial:
        return Monomial(max(a, b) for a, b in zip(self, other))

    def gcd(self, other: Monomial) -> Monomial:
        return Monomial(min(a, b) for a, b in zip(self, other))

    def quotient(self, other: Monomial) -> Monomial:
        """``self / gcd(self, other)``: the generator of ``(self) : other``."""
        return Monomial(a - b if a > b else 0 for a, b in zip(self, other))

    def __repr__(self) -> str:
        return f"Monomial({tuple(self)})"

    def __getnewargs__(self):
        return (tuple(self),)


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = [v if e == 1 else f"{v}^{e}" for v, e in zip(names, m) if e]
    return "*".join(parts) if parts else "1"


class IdealFormatError(ValueError):
    pass


def _tokenize_product(word: str, names: Sequence[str]) -> list[str] | None:
    """Split a juxtaposed product like ``ab`` into known variable names."""
    if not word:
        return []
    for name in sorted(names, key=len, reverse=True):
        if word.startswith(name):
            rest = _tokenize_product(word[len(name):], names)
            if rest is not None:
                return [name] + rest
    return None


def parse_monomial(text: str, names: Sequence[str]) -> Monomial:
    """Parse ``x1^2*x3``; a bare word is split into variable names if needed."""
    index = {v: i for i, v in enumerate(names)}
    exps = [0] * len(names)
    text = text.strip()
    if text == "1":
        return Monomial(exps)
    for factor in text.split("*"):
        factor = factor.strip()
        base, _, power = factor.partition("^")
        k = int(power) if power else 1
        if base in index:
            exps[index[base]] += k
            continue
        pieces = _tokenize_product(base, names)
        if pieces is None or (power and len(pieces) != 1):
            raise IdealFormatError(f"unknown variable in {factor!r}")
        for p in pieces:
            exps[index[p]] += k
    return Monomial(exps)


_VAR_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)")


class IdealKind(enum.Enum):
    ZERO = "zero"
    UNIT = "unit"
    PROPER = "proper"


def minimal_generators(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    """Generators not properly divisible by another, sorted by degree then
    descending lex."""
    uniq = sorted(set(gens), key=lambda m: (m.degree, tuple(-e for e in m)))
    keep: list[Monomial] = []
    for m in uniq:
        if not any(k.divides(m) for k in keep):
            keep.append(m)
    return tuple(keep)


@dataclass(frozen=True)
class MonomialIdeal:
    ring_vars: tuple[str, ...]
    gens: tuple[Monomial, ...]

    def __init__(self, ring_vars: Iterable[str], gens: Iterable[Iterable[int]] = ()):
        ring_vars = tuple(ring_vars)
        mons = []
        for g in gens:
            m = g if isinstance(g, Monomial) else Monomial(g)
            if len(m) != len(ring_vars):
                raise ValueError("generator length does not match ring")
            mons.append(m)
        object.__setattr__(self, "ring_vars", ring_vars)
        object.__setattr__(self, "gens", minimal_generators(mons))

    @property
    def nvars(self) -> int:
        return len(self.ring_vars)

    @property
    def kind(self) -> IdealKind:
        if not self.gens:
            return IdealKind.ZERO
        if self.gens[0].degree == 0:
            return IdealKind.UNIT
        return IdealKind.PROPER

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return self.kind is IdealKind.UNIT

    def __len__(self) -> int:
        return len(self.gens)

    def __contains__(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.gens)

    def degrees(self) -> list[int]:
        return sorted({g.degree for g in self.gens})

    def is_equigenerated(self) -> bool:
        return len(self.degrees()) == 1

    def is_squarefree(self) -> bool:
        return all(g.is_squarefree() for g in self.gens)

    def with_gens(self, gens: Iterable[Monomial]) -> MonomialIdeal:
        return MonomialIdeal(self.ring_vars, gens)

    def monomial(self, text: str) -> Monomial:
        return parse_monomial(text, self.ring_vars)

    def fmt(self, m: Monomial) -> str:
        return format_monomial(m, self.ring_vars)

    def to_text(self) -> str:
        lines = ["vars " + " ".join(self.ring_vars)]
        lines += [self.fmt(g) for g in self.gens]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "vars": list(self.ring_vars),
            "gens": [[[self.ring_vars[i], e] for i, e in enumerate(g) if e] for g in self.gens],
        }

    def __str__(self) -> str:
        return "(" + ", ".join(self.fmt(g) for g in self.gens) + ")"


def parse_ideal(text: str) -> MonomialIdeal:
    """Parse either the JSON form or the text form.

    The text form has one generator per line; an optional ``vars a b c`` line
    fixes the ring variables, otherwise they are taken in order of appearance.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        data = json.loads(stripped)
        names = list(data["vars"])
        index = {v: i for i, v in enumerate(names)}
        gens = []
        for g in data["gens"]:
            exps = [0] * len(names)
            for v, e in g:
                if v not in index:
                    raise IdealFormatError(f"unknown variable {v!r}")
                exps[index[v]] += int(e)
            gens.append(Monomial(exps))
        return MonomialIdeal(names, gens)
    names: list[str] = []
    rows: list[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("vars ") or line == "vars":
            names = line.split()[1:]
            continue
        rows.append(line)
    if not names:
        for row in rows:
            for tok in _VAR_RE.findall(row):
                if tok not in names:
                    names.append(tok)
    return MonomialIdeal(names, [parse_monomial(r, names) for r in rows])


def minimalize(gens: Iterable[Monomial], ring_vars: Sequence[str]) -> MonomialIdeal:
    return MonomialIdeal(ring_vars, gens)


def product(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    return i.with_gens(a * b for a in i.gens for b in j.gens)


def power(i: MonomialIdeal, s: int) -> MonomialIdeal:
    if s < 1:
        raise ValueError("power needs s >= 1")
    result = i
    for _ in range(s - 1):
        result = product(result, i)
    return result


def colon(i: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    return i.with_gens(g.quotient(m) for g in i.gens)


def sum_with(i: MonomialIdeal, ms: Iterable[Monomial]) -> MonomialIdeal:
    return i.with_gens(itertools.chain(i.gens, ms))


def variables_in(i: MonomialIdeal) -> list[Monomial]:
    return [g for g in i.gens if g.degree == 1]


def polarize(i: MonomialIdeal) -> tuple[MonomialIdeal, dict[str, str]]:
    """Squarefree polarization; returns the ideal and a copy -> original map.

    Variable ``x`` with maximal exponent ``e > 1`` becomes ``x_1 .. x_e``;
    variables that never appear squared keep their name.
    """
    top = [max((g[k] for g in i.gens), default=0) for k in range(i.nvars)]
    names: list[str] = []
    origin: dict[str, str] = {}
    offsets = []
    for v, e in zip(i.ring_vars, top):
        offsets.append(len(names))
        if e <= 1:
            names.append(v)
            origin[v] = v
        else:
            for c in range(1, e + 1):
                names.append(f"{v}_{c}")
                origin[f"{v}_{c}"] = v
    gens = []
    for g in i.gens:
        exps = [0] * len(names)
        for k, e in enumerate(g):
            for c in range(e):
                exps[offsets[k] + c] = 1
        gens.append(Monomial(exps))
    return MonomialIdeal(names, gens), origin


def edge_ideal(g: Graph) -> MonomialIdeal:
    n = len(g)
    return MonomialIdeal(
        g.vertices, [Monomial.from_support((g.index(u), g.index(v)), n) for u, v in g.edges()]
    )


def cover_ideal(g: Graph) -> MonomialIdeal:
    if g.num_edges() == 0:
        raise ValueError("cover ideal of an edgeless graph is the unit ideal; not supported")
    n = len(g)
    return MonomialIdeal(
        g.vertices,
        [Monomial.from_support(map(g.index, c), n) for c in minimal_vertex_covers(g)],
    )


def alexander_dual(i: MonomialIdeal) -> MonomialIdeal:
    """Squarefree Alexander dual: generators are the minimal transversals of
    the generator supports."""
    if not i.is_squarefree():
        raise ValueError("alexander_dual expects a squarefree ideal")
    if i.is_zero() or i.is_unit():
        raise ValueError("alexander_dual of zero/unit ideal not supported")
    supports = [set(g.support) for g in i.gens]
    n = i.nvars
    found = []
    for k in range(1, n + 1):
        for combo in itertools.combinations(range(n), k):
            c = set(combo)
            if all(c & s for s in supports) and not any(set(f.support) <= c for f in found):
                found.append(Monomial.from_support(c, n))
    return i.with_gens(found)


class Provenance(enum.Enum):
    BANERJEE_POWER = "BanerjeePower"
    COVER_ORDER = "CoverOrder"
    LEX_C5 = "LexC5"
    USER_GIVEN = "UserGiven"


@dataclass(frozen=True)
class OrderedGenerators:
    ideal: MonomialIdeal
    order: tuple[Monomial, ...]
    provenance: Provenance = Provenance.USER_GIVEN

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        if len(self.order) != len(self.ideal.gens) or set(self.order) != set(self.ideal.gens):
            raise ValueError("order is not a bijection onto the minimal generators")


def factorizations(m: Monomial, gens: Sequence[Monomial], s: int) -> list[tuple[Monomial, ...]]:
    """All multisets of ``s`` elements of ``gens`` (listed by index) whose
    product is ``m``."""
    out: list[tuple[Monomial, ...]] = []

    def go(rest: Monomial, start: int, left: int, acc: list[Monomial]) -> None:
        if left == 0:
            if not any(rest):
                out.append(tuple(acc))
            return
        for k in range(start, len(gens)):
            g = gens[k]
            if g.divides(rest):
                acc.append(g)
                go(rest / g, k, left - 1, acc)
                acc.pop()

    go(m, 0, s, [])
    return out


def _lex_max_vector(m: Monomial, gens: Sequence[Monomial], s: int) -> tuple[int, ...]:
    # greedy from the largest generator yields the lex-max exponent vector
    # only if it can be completed, so search with backtracking
    best = None

    def go(rest: Monomial, k: int, left: int, vec: list[int]) -> bool:
        nonlocal best
        if left == 0:
            if not any(rest):
                best = tuple(vec)
                return True
            return False
        if k == len(gens):
            return False
        g = gens[k]
        top = 0
        r = rest
        while top < left and g.divides(r):
            r = r / g
            top += 1
        for a in range(top, -1, -1):
            vec[k] = a
            if go(rest / (g ** a), k + 1, left - a, vec):
                return True
        vec[k] = 0
        return False

    go(m, 0, s, [0] * len(gens))
    if best is None:
        raise ValueError("monomial has no factorization into s generators")
    return best


def banerjee_order(edges_ordered: OrderedGenerators, s: int) -> OrderedGenerators:
    """Order generators of ``I^s`` by the lex-max exponent vector of their
    factorizations into the given generator order (largest first)."""
    if s < 1:
        raise ValueError("s must be >= 1")
    if s == 1:
        return edges_ordered
    base = edges_ordered.order
    ideal = power(edges_ordered.ideal, s)
    keyed = sorted(ideal.gens, key=lambda m: _lex_max_vector(m, base, s), reverse=True)
    return OrderedGenerators(ideal, tuple(keyed), Provenance.BANERJEE_POWER)


def lex_max_vector(m: Monomial, gens: Sequence[Monomial], s: int) -> tuple[int, ...]:
    return _lex_max_vector(m, gens, s)


def prod(ms: Iterable[Monomial], nvars: int) -> Monomial:
    return reduce(lambda a, b: a * b, ms, Monomial.one(nvars))
