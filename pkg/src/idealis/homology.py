"""Reduced simplicial homology ranks over Q and GF(p).

Faces are integer bitmasks over a vertex index set. Ranks over Q are exact:
elimination runs on integer rows and only ever rescales the row being reduced.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

QQ = 0
GF2 = 2


def field_name(p: int) -> str:
    return "Q" if p == 0 else f"GF{p}"


def parse_field(text: str) -> int:
    t = text.strip().lower()
    if t in ("q", "qq", "rationals", "0"):
        return QQ
    if t.startswith("gf"):
        p = int(t[2:])
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"GF({p}) is not a prime field")
        return p
    raise ValueError(f"unknown field {text!r}")


def _mask(face: Iterable[int]) -> int:
    m = 0
    for v in face:
        m |= 1 << v
    return m


def maximal_faces(facets: Iterable[int]) -> tuple[int, ...]:
    fs = sorted(set(facets), key=lambda f: -f.bit_count())
    keep: list[int] = []
    for f in fs:
        if not any(f & k == f for k in keep):
            keep.append(f)
    return tuple(sorted(keep))


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed family given by its facets (bitmasks).

    ``facets == ()`` is the void complex (no faces at all); ``facets == (0,)``
    is the complex whose only face is the empty set.
    """

    facets: tuple[int, ...]

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]]) -> SimplicialComplex:
        return cls(maximal_faces(_mask(f) for f in facets))

    @classmethod
    def void(cls) -> SimplicialComplex:
        return cls(())

    @classmethod
    def empty(cls) -> SimplicialComplex:
        return cls((0,))

    @classmethod
    def simplex(cls, n: int) -> SimplicialComplex:
        return cls(((1 << n) - 1,))

    @classmethod
    def boundary_of_simplex(cls, n: int) -> SimplicialComplex:
        full = (1 << n) - 1
        return cls(maximal_faces(full ^ (1 << i) for i in range(n)))

    def faces(self) -> set[int]:
        out: set[int] = set()
        for f in self.facets:
            sub = f
            while True:
                out.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & f
        return out

    @property
    def dim(self) -> int:
        return max((f.bit_count() for f in self.facets), default=0) - 1


def _rank_gf2(rows: list[int]) -> int:
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = r
                break
            r ^= b
    return len(basis)


def _rank_mod_p(rows: list[dict[int, int]], p: int) -> int:
    basis: dict[int, dict[int, int]] = {}
    for row in rows:
        r = {c: v % p for c, v in row.items() if v % p}
        while r:
            c = min(r)
            b = basis.get(c)
            if b is None:
                inv = pow(r[c], -1, p)
                basis[c] = {k: v * inv % p for k, v in r.items()}
                break
            f = r[c]
            for k, v in b.items():
                nv = (r.get(k, 0) - f * v) % p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return len(basis)


def _rank_integer(rows: list[dict[int, int]]) -> int:
    from math import gcd

    basis: dict[int, dict[int, int]] = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            c = min(r)
            b = basis.get(c)
            if b is None:
                basis[c] = r
                break
            bc, rc = b[c], r[c]
            if bc in (1, -1):
                f = rc * bc
                for k, v in b.items():
                    nv = r.get(k, 0) - f * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
            else:
                r = {k: bc * v for k, v in r.items()}
                for k, v in b.items():
                    nv = r.get(k, 0) - rc * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
                g = 0
                for v in r.values():
                    g = gcd(g, v)
                if g > 1:
                    r = {k: v // g for k, v in r.items()}
    return len(basis)


def matrix_rank(rows: list[dict[int, int]], p: int = QQ) -> int:
    """Rank of a sparse integer matrix (rows as ``{col: value}``) over Q
    (``p == 0``) or GF(p)."""
    if p == 0:
        return _rank_integer(rows)
    if p == 2:
        packed = []
        for row in rows:
            m = 0
            for c, v in row.items():
                if v % 2:
                    m |= 1 << c
            packed.append(m)
        return _rank_gf2(packed)
    return _rank_mod_p(rows, p)


def _boundary_rank(faces_k: list[int], index_km1: dict[int, int], p: int) -> int:
    if p == 2:
        rows = []
        for f in faces_k:
            m = 0
            sub = f
            while sub:
                low = sub & -sub
                m |= 1 << index_km1[f ^ low]
                sub ^= low
            rows.append(m)
        return _rank_gf2(rows)
    rows = []
    for f in faces_k:
        row = {}
        sign = 1
        sub = f
        while sub:
            low = sub & -sub
            row[index_km1[f ^ low]] = sign
            sign = -sign
            sub ^= low
        rows.append(row)
    return matrix_rank(rows, p)


@lru_cache(maxsize=200_000)
def _reduced_homology(facets: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not facets:
        return ()
    if facets == (0,):
        return (1,)
    # a cone (common vertex) or a single simplex is acyclic
    common = facets[0]
    for f in facets[1:]:
        common &= f
    top = max(f.bit_count() for f in facets)
    if common or len(facets) == 1:
        return (0,) * (top + 1)
    faces = SimplicialComplex(facets).faces()
    by_size: list[list[int]] = [[] for _ in range(top + 1)]
    for f in faces:
        by_size[f.bit_count()].append(f)
    for lst in by_size:
        lst.sort()
    index = [{f: i for i, f in enumerate(lst)} for lst in by_size]
    # ranks[k] = rank of the boundary from faces of size k to size k-1
    ranks = [0] * (top + 2)
    for k in range(1, top + 1):
        ranks[k] = _boundary_rank(by_size[k], index[k - 1], p)
    return tuple(len(by_size[k]) - ranks[k] - ranks[k + 1] for k in range(top + 1))


def reduced_homology_ranks(k: SimplicialComplex, field: int = QQ) -> list[int]:
    """Ranks of reduced homology in dimensions -1 .. dim (entry ``d + 1`` is
    dimension ``d``). The void complex has no homology at all."""
    return list(_reduced_homology(maximal_faces(k.facets), field))
