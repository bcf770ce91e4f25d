"""Graded Betti numbers and regularity of monomial ideals.

The main route evaluates, for every multidegree ``b`` of the lcm lattice, the
upper Koszul complex ``K^b(I)``; its facets are ``{i : g_i < b_i}`` for the
generators ``g`` dividing ``x^b``. The Taylor-complex oracle at the bottom of
the module is an independent route used for cross-checking.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from dataclasses import field as dc_field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .homology import QQ, _reduced_homology, field_name, maximal_faces
from .monomial import Monomial, MonomialIdeal, polarize

DEFAULT_LATTICE_CAP = 200_000
TAYLOR_MAX_GENS = 16


class ResourceError(RuntimeError):
    """A configured size cap was exceeded."""


@dataclass
class BettiTable:
    entries: dict[tuple[int, int], int]
    field: int = QQ
    multigraded: dict[tuple[int, tuple[int, ...]], int] | None = dc_field(default=None, repr=False)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    @property
    def regularity(self) -> int:
        return max(j - i for (i, j) in self.entries)

    @property
    def projective_dimension(self) -> int:
        return max(i for (i, _) in self.entries)

    def is_linear(self) -> bool:
        degs = {j for (i, j) in self.entries if i == 0}
        return len(degs) == 1 and all(j - i == min(degs) for (i, j) in self.entries)

    def to_json(self) -> dict:
        return {
            "field": field_name(self.field),
            "entries": [[i, j, r] for (i, j), r in sorted(self.entries.items())],
            "reg": self.regularity,
            "linear": self.is_linear(),
        }

    def format(self) -> str:
        """Macaulay2-style table: rows are j - i, columns i."""
        if not self.entries:
            return "(zero table)"
        cols = range(self.projective_dimension + 1)
        rows = sorted({j - i for (i, j) in self.entries})
        out = ["      " + " ".join(f"{i:>5}" for i in cols)]
        for r in rows:
            cells = []
            for i in cols:
                v = self.entries.get((i, i + r), 0)
                cells.append(f"{v if v else '.':>5}")
            out.append(f"{r:>5}:" + " ".join(cells))
        return "\n".join(out)


def _check_proper(i: MonomialIdeal) -> None:
    if i.is_zero():
        raise ValueError("Betti numbers of the zero ideal are not defined here")
    if i.is_unit():
        raise ValueError("Betti numbers of the unit ideal are not defined here")


def lcm_lattice(i: MonomialIdeal, cap: int = DEFAULT_LATTICE_CAP) -> np.ndarray:
    """All lcms of nonempty subsets of the minimal generators, as rows."""
    _check_proper(i)
    gens = np.array(i.gens, dtype=np.int64)
    n = gens.shape[1]
    top = gens.max(axis=0) + 1
    radix = np.ones(n, dtype=object)
    for k in range(1, n):
        radix[k] = radix[k - 1] * int(top[k - 1])
    if radix[-1] * int(top[-1]) < 2**62:
        weights = radix.astype(np.int64)

        def new_rows(a: np.ndarray) -> list[int]:
            k = a @ weights
            _, first = np.unique(k, return_index=True)
            fresh = [idx for idx in first.tolist() if int(k[idx]) not in seen]
            seen.update(int(k[idx]) for idx in fresh)
            return fresh
    else:
        def new_rows(a: np.ndarray) -> list[int]:
            fresh = []
            for idx, row in enumerate(a):
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    fresh.append(idx)
            return fresh

    seen: set = set()
    frontier = gens[new_rows(gens)]
    elements = [frontier]
    total = len(frontier)
    while len(frontier):
        joined = np.maximum(frontier[:, None, :], gens[None, :, :]).reshape(-1, n)
        fresh = new_rows(joined)
        if not fresh:
            break
        frontier = joined[fresh]
        total += len(fresh)
        if total > cap:
            raise ResourceError(f"lcm lattice exceeds cap of {cap} elements")
        elements.append(frontier)
    return np.concatenate(elements)


def upper_koszul_facets(gens: np.ndarray, b: np.ndarray) -> tuple[int, ...]:
    """Maximal faces of ``K^b`` as bitmasks over variable indices."""
    divides = np.all(gens <= b, axis=1)
    if not divides.any():
        return ()
    weights = 1 << np.arange(gens.shape[1], dtype=np.int64)
    masks = ((gens[divides] < b) * weights).sum(axis=1)
    return maximal_faces(int(m) for m in masks)


def _betti_chunk(args):
    gens, lattice, p = args
    out = []
    for b in lattice:
        hom = _reduced_homology(upper_koszul_facets(gens, b), p)
        for size, rank in enumerate(hom):
            if rank:
                # faces of size k span dimension k-1: H~_{k-1}(K^b) = beta_{k,b}
                out.append((size, tuple(int(x) for x in b), rank))
    return out


def betti_table(
    i: MonomialIdeal,
    field: int = QQ,
    cap: int = DEFAULT_LATTICE_CAP,
    workers: int = 1,
    multigraded: bool = False,
) -> BettiTable:
    """Graded Betti numbers of the ideal ``i`` (``b_{0,j}`` counts minimal
    generators of degree ``j``)."""
    _check_proper(i)
    gens = np.array(i.gens, dtype=np.int64)
    lattice = lcm_lattice(i, cap)
    if workers > 1 and len(lattice) > 256:
        chunks = np.array_split(lattice, workers * 4)
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_betti_chunk, [(gens, c, field) for c in chunks]))
        found = [x for part in parts for x in part]
    else:
        found = _betti_chunk((gens, lattice, field))
    coarse: dict[tuple[int, int], int] = defaultdict(int)
    fine: dict[tuple[int, tuple[int, ...]], int] = {}
    for hom_index, b, rank in sorted(found):
        coarse[(hom_index, sum(b))] += rank
        fine[(hom_index, b)] = rank
    return BettiTable(dict(sorted(coarse.items())), field, fine if multigraded else None)


def regularity(
    i: MonomialIdeal,
    field: int = QQ,
    cap: int = DEFAULT_LATTICE_CAP,
    via_polarization: bool = False,
    workers: int = 1,
) -> int:
    if via_polarization and not i.is_squarefree():
        i = polarize(i)[0]
    return betti_table(i, field, cap, workers).regularity


def has_linear_resolution(i: MonomialIdeal, field: int = QQ, cap: int = DEFAULT_LATTICE_CAP) -> bool:
    _check_proper(i)
    if not i.is_equigenerated():
        return False
    return regularity(i, field, cap) == i.gens[0].degree


def _monomials_of_degree(n: int, d: int):
    for combo in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for k in combo:
            e[k] += 1
        yield Monomial(e)


def component_ideal(i: MonomialIdeal, d: int) -> MonomialIdeal:
    """Ideal generated by the degree-``d`` monomials of ``i``."""
    _check_proper(i)
    if d < min(i.degrees()):
        raise ValueError("degree below the smallest generator degree")
    out = set()
    for g in i.gens:
        if g.degree <= d:
            for m in _monomials_of_degree(i.nvars, d - g.degree):
                out.add(g * m)
    return i.with_gens(out)


def is_componentwise_linear(i: MonomialIdeal, field: int = QQ, cap: int = DEFAULT_LATTICE_CAP) -> bool:
    """Check every component from the smallest to the largest generator
    degree; above that the components are ``m^k`` times the top one, which
    stay linear once it is."""
    degs = i.degrees()
    for d in range(degs[0], degs[-1] + 1):
        if not has_linear_resolution(component_ideal(i, d), field, cap):
            return False
    return True


# --- Taylor complex oracle -------------------------------------------------


def _dense_rank(rows: list[list[int]], p: int) -> int:
    if not rows:
        return 0
    if p:
        m = [[v % p for v in r] for r in rows]
    else:
        m = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(m[0])
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][c]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                if p:
                    f = m[r][c] * pow(pv, -1, p) % p
                    m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
                else:
                    f = m[r][c] / pv
                    m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def taylor_betti_oracle(i: MonomialIdeal, field: int = QQ) -> BettiTable:
    """Betti numbers from the Taylor complex tensored with the residue field.

    In multidegree ``b`` the basis is the subsets with lcm exactly ``b``; a
    face map survives reduction iff dropping the generator keeps the lcm.
    """
    _check_proper(i)
    gens: Sequence[Monomial] = i.gens
    m = len(gens)
    if m > TAYLOR_MAX_GENS:
        raise ResourceError(f"Taylor oracle limited to {TAYLOR_MAX_GENS} generators")
    lcm_of = [None] * (1 << m)
    strands: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for s in range(1, 1 << m):
        low = s & -s
        k = low.bit_length() - 1
        rest = s ^ low
        lcm_of[s] = gens[k] if not rest else lcm_of[rest].lcm(gens[k])
        strands[tuple(lcm_of[s])].append(s)
    entries: dict[tuple[int, int], int] = defaultdict(int)
    for b, subsets in strands.items():
        by_size: dict[int, list[int]] = defaultdict(list)
        for s in subsets:
            by_size[s.bit_count()].append(s)
        rank_d: dict[int, int] = {}
        for size, faces in by_size.items():
            if size == 1:
                rank_d[size] = 0
                continue
            targets = by_size.get(size - 1, [])
            pos = {t: c for c, t in enumerate(targets)}
            rows = []
            for s in faces:
                row = [0] * len(targets)
                sign = 1
                bits = s
                while bits:
                    low = bits & -bits
                    t = s ^ low
                    if t in pos:
                        row[pos[t]] = sign
                    sign = -sign
                    bits ^= low
                rows.append(row)
            rank_d[size] = _dense_rank(rows, field) if targets else 0
        for size, faces in by_size.items():
            rank = len(faces) - rank_d[size] - rank_d.get(size + 1, 0)
            if rank:
                entries[(size - 1, sum(b))] += rank
    return BettiTable(dict(sorted(entries.items())), field)
