"""Simplicial complexes and reduced homology over Q or GF(p).

Faces are bitmasks over the complex's vertex list.  Ranks over GF(p) come
from the kernel module; ranks over the rationals use a modular screen first
(``rank_p <= rank_Q``, so vanishing mod p certifies vanishing over Q) and fall
back to fraction-free integer elimination only where homology survives.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .config import budgets
from .errors import UnitIdeal
from .monomial import MonomialIdeal, require_squarefree

SCREEN_PRIME = 2147483647
RATIONALS = "rationals"

_GF = re.compile(r"^gf\((\d+)\)$")


def parse_field(field: str | int | None) -> int:
    """Characteristic of a field spec: 0 for ``"rationals"``, p for ``"gf(p)"``."""
    if field is None or field == RATIONALS or field == 0:
        return 0
    if isinstance(field, int):
        p = field
    else:
        m = _GF.match(str(field).strip().lower())
        if not m:
            raise ValueError(f"unknown field {field!r}; use 'rationals' or 'gf(p)'")
        p = int(m.group(1))
    if p < 2 or p >= 2**31 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"gf(p) needs a prime p < 2**31, got {p}")
    return p


def field_name(p: int) -> str:
    return RATIONALS if p == 0 else f"gf({p})"


# -- sparse rank ------------------------------------------------------------


def boundary_rows(hi: Iterable[int], lo: Sequence[int]) -> list[dict[int, int]]:
    """Signed boundary rows, one per face of ``hi``, indexed by position in ``lo``."""
    index = {int(f): k for k, f in enumerate(lo)}
    rows = []
    for f in hi:
        f = int(f)
        row: dict[int, int] = {}
        sign = 1
        m = f
        while m:
            b = m & -m
            m ^= b
            c = index.get(f & ~b)
            if c is not None:
                row[c] = sign
            sign = -sign
        rows.append(row)
    return rows


def exact_rank(rows: Iterable[dict[int, int]]) -> int:
    """Rank over Q of an integer matrix given as sparse rows.

    Fraction-free elimination: a row is reduced by ``a*row - b*pivot`` and
    then divided by the gcd of its entries, so numbers stay integral and small.
    """
    pivots: dict[int, dict[int, int]] = {}
    for r in rows:
        row = {c: v for c, v in r.items() if v}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                if g > 1:
                    row = {k: v // g for k, v in row.items()}
                pivots[c] = row
                break
            a, b = piv[c], row[c]
            if a in (1, -1):
                f = b * a
                new = dict(row)
                for k, v in piv.items():
                    nv = new.get(k, 0) - f * v
                    if nv:
                        new[k] = nv
                    else:
                        new.pop(k, None)
            else:
                new = {k: a * v for k, v in row.items()}
                for k, v in piv.items():
                    nv = new.get(k, 0) - b * v
                    if nv:
                        new[k] = nv
                    else:
                        new.pop(k, None)
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                if g > 1:
                    new = {k: v // g for k, v in new.items()}
            row = new
    return len(pivots)


def rank_mod_p(rows: Iterable[dict[int, int]], p: int) -> int:
    """Rank over GF(p) of sparse integer rows (plain Python elimination)."""
    pivots: dict[int, dict[int, int]] = {}
    for r in rows:
        row = {c: v % p for c, v in r.items() if v % p}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(row[c], p - 2, p)
                pivots[c] = {k: v * inv % p for k, v in row.items()}
                break
            f = row[c]
            for k, v in piv.items():
                nv = (row.get(k, 0) - f * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return len(pivots)


def _as_array(faces) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(faces, dtype=np.uint64))


def boundary_rank(hi, lo, p: int) -> int:
    """Rank of the boundary map ``C(hi) -> C(lo)``; ``p == 0`` means over Q."""
    if len(hi) == 0 or len(lo) == 0:
        return 0
    entries = len(hi) * (bin(int(hi[0])).count("1"))
    budgets().check("matrix_entries", entries)
    if p:
        return int(_kernels.boundary_rank_mod_p(_as_array(hi), _as_array(lo), p))
    return exact_rank(boundary_rows(hi, lo))


def homology_from_faces(faces: Sequence, p: int, dims: Iterable[int]) -> dict[int, int]:
    """Reduced Betti numbers in the requested dimensions.

    ``faces[j]`` holds the sorted faces with ``j`` vertices; every list needed
    for a requested dimension (sizes d, d+1, d+2) must be complete.
    """
    top = len(faces) - 1

    def f(j: int):
        return faces[j] if 0 <= j <= top else ()

    cache: dict[tuple[int, int], int] = {}

    def rank(j: int, q: int) -> int:
        # boundary from faces of size j to size j-1
        key = (j, q)
        if key not in cache:
            cache[key] = boundary_rank(f(j), f(j - 1), q) if j >= 1 else 0
        return cache[key]

    out = {}
    for d in dims:
        n = len(f(d + 1))
        if n == 0:
            out[d] = 0
            continue
        screen = SCREEN_PRIME if p == 0 else p
        h = n - rank(d + 1, screen) - rank(d + 2, screen)
        if h and p == 0:
            h = n - rank(d + 1, 0) - rank(d + 2, 0)
        out[d] = h
    return out


# -- complexes ----------------------------------------------------------


def _maximal(masks: Iterable[int]) -> list[int]:
    uniq = sorted(set(masks), key=lambda m: -bin(m).count("1"))
    keep: list[int] = []
    for m in uniq:
        if not any(m & ~k == 0 for k in keep):
            keep.append(m)
    return sorted(keep)


@dataclass(frozen=True)
class SimplicialComplex:
    """Complex given by facets (bitmasks over ``vertices``).

    ``facets == ()`` is the void complex (no faces at all); ``facets == (0,)``
    is the complex whose only face is the empty set.
    """

    vertices: tuple[str, ...]
    facets: tuple[int, ...]

    def __post_init__(self):
        budgets().check("homology_vertices", len(self.vertices))
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "facets", tuple(_maximal(int(f) for f in self.facets)))

    @classmethod
    def from_faces(cls, vertices: Sequence[str], faces: Iterable[Iterable[str]]) -> "SimplicialComplex":
        pos = {v: i for i, v in enumerate(vertices)}
        masks = []
        for face in faces:
            m = 0
            for v in face:
                m |= 1 << pos[v]
            masks.append(m)
        return cls(tuple(vertices), tuple(masks))

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dimension(self) -> int | None:
        """``None`` for the void complex."""
        if self.is_void:
            return None
        return max(bin(f).count("1") for f in self.facets) - 1

    def facet_sets(self) -> list[frozenset[str]]:
        return [frozenset(self.vertices[i] for i in range(len(self.vertices)) if f >> i & 1) for f in self.facets]

    def faces_by_size(self) -> list[np.ndarray]:
        if self.is_void:
            return []
        total = sum(1 << bin(f).count("1") for f in self.facets)
        budgets().check("matrix_entries", total)
        seen: set[int] = set()
        for f in self.facets:
            sub = f
            while True:
                seen.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & f
        top = self.dimension + 1
        buckets: list[list[int]] = [[] for _ in range(top + 1)]
        for m in seen:
            buckets[bin(m).count("1")].append(m)
        return [np.array(sorted(b), dtype=np.uint64) for b in buckets]

    def f_vector(self) -> list[int]:
        """Face counts by size, starting with the empty face."""
        return [len(b) for b in self.faces_by_size()]

    def reduced_euler_characteristic(self) -> int:
        return sum((-1) ** (j - 1) * c for j, c in enumerate(self.f_vector()))


def _check_boundary_squared(faces: Sequence[np.ndarray]) -> None:
    for j in range(2, len(faces)):
        lower = set(int(x) for x in faces[j - 2])
        for f in faces[j]:
            f = int(f)
            acc: dict[int, int] = {}
            s1 = 1
            m1 = f
            while m1:
                b1 = m1 & -m1
                m1 ^= b1
                g = f & ~b1
                s2 = 1
                m2 = g
                while m2:
                    b2 = m2 & -m2
                    m2 ^= b2
                    h = g & ~b2
                    if h not in lower:
                        raise AssertionError(f"face {f:#x} has a missing subface")
                    acc[h] = acc.get(h, 0) + s1 * s2
                    s2 = -s2
                s1 = -s1
            if any(acc.values()):
                raise AssertionError("boundary of boundary is nonzero")


def reduced_homology_ranks(c: SimplicialComplex, field: str | int = RATIONALS) -> dict[int, int]:
    """Reduced Betti numbers in every dimension from -1 up to ``dim c``.

    The void complex gives an empty mapping.
    """
    p = parse_field(field)
    faces = c.faces_by_size()
    if not faces:
        return {}
    _check_boundary_squared(faces)
    ranks = homology_from_faces(faces, p, range(-1, len(faces) - 1))
    chi = sum((-1) ** d * r for d, r in ranks.items())
    if chi != c.reduced_euler_characteristic():
        raise AssertionError("Euler characteristic mismatch")
    return ranks


def stanley_reisner_complex(ideal: MonomialIdeal) -> SimplicialComplex:
    """Faces are the variable sets whose product avoids the ideal."""
    require_squarefree(ideal)
    if ideal.is_unit():
        raise UnitIdeal("the unit ideal has the void complex")
    n = ideal.nvars
    budgets().check("homology_vertices", n)
    gens = [sum(1 << i for i, a in enumerate(e) if a) for e in ideal.gens]
    # Facets are complements of minimal vertex covers of the generator hypergraph;
    # collect them by growing maximal faces with a simple DFS.
    facets: list[int] = []

    def ok(m: int) -> bool:
        return not any(g & ~m == 0 for g in gens)

    def grow(face: int, start: int) -> None:
        extended = False
        for v in range(start, n):
            if not face >> v & 1 and ok(face | 1 << v):
                extended = True
                grow(face | 1 << v, v + 1)
        if not extended:
            # maximal iff no vertex at all (including earlier ones) can be added
            if all(face >> v & 1 or not ok(face | 1 << v) for v in range(n)):
                facets.append(face)

    grow(0, 0)
    return SimplicialComplex(ideal.ring_vars, tuple(facets))


__all__ = [
    "RATIONALS",
    "SimplicialComplex",
    "boundary_rank",
    "boundary_rows",
    "exact_rank",
    "field_name",
    "homology_from_faces",
    "parse_field",
    "rank_mod_p",
    "reduced_homology_ranks",
    "stanley_reisner_complex",
]
