"""Castelnuovo-Mumford regularity of monomial ideals.

Primary route (``"hochster"``): polarize, then take the maximum of
``d + 2`` over vertex sets ``sigma`` in the lcm lattice whose induced
Stanley-Reisner subcomplex has nonzero reduced homology in dimension ``d``.

Each ``sigma`` is first shrunk by deleting vertices whose link is a cone
(homotopy-preserving), results are cached on the shrunken set, and sets are
visited by decreasing size so the search stops once no remaining set can beat
the running maximum.  Homology is computed either on the induced complex
itself or on the nerve of the Alexander dual's facet cover
(``H_d(sub) = H_{|sigma|-d-3}(nerve)``), whichever has fewer faces in the
needed degree window.

Second route (``"lcm-lattice"``): multigraded Betti numbers from homology of
open intervals of the lcm lattice, computed on the unpolarized ideal with
independent rank code.
"""

from __future__ import annotations

import json
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable

import numpy as np

from . import _kernels
from .config import budgets, threads
from .errors import BudgetExceeded, NotSquarefree, UnitIdeal, ZeroIdeal
from .homology import (
    boundary_rows,
    exact_rank,
    field_name,
    homology_from_faces,
    parse_field,
    rank_mod_p,
)
from .monomial import MonomialIdeal, is_squarefree, polarize


@dataclass(frozen=True)
class RegularityReport:
    ideal_digest: str
    reg: int
    method: str
    field: str
    witnesses: tuple[tuple[tuple[str, ...], int], ...]
    polarized: bool = False
    stats: dict = field(default_factory=dict, compare=False, hash=False)

    def to_dict(self) -> dict:
        return {
            "ideal": self.ideal_digest,
            "reg": self.reg,
            "method": self.method,
            "field": self.field,
            "witnesses": [{"sigma": list(s), "dim": d} for s, d in self.witnesses],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _check_ideal(ideal: MonomialIdeal) -> None:
    if ideal.is_zero():
        raise ZeroIdeal("regularity of the zero ideal is not defined here")
    if ideal.is_unit():
        raise UnitIdeal("regularity of the unit ideal is not defined here")


def _masks(ideal: MonomialIdeal) -> list[int]:
    return [sum(1 << i for i, a in enumerate(e) if a) for e in ideal.gens]


def _bits_names(mask: int, names) -> tuple[str, ...]:
    return tuple(names[i] for i in range(len(names)) if mask >> i & 1)


# -- Hochster route ----------------------------------------------------------


def _popcount(m: int) -> int:
    return bin(m).count("1")


def _inside(gens: list[int], sigma: int) -> list[int]:
    return [g for g in gens if g & ~sigma == 0]


def _estimate_direct(size: int) -> int:
    return 1 << size


def _estimate_nerve(k: int, top_size: int) -> int:
    return sum(comb(k, j) for j in range(0, min(k, top_size) + 1))


def _sigma_homology(sigma: int, gens: list[int], floor: int, p: int) -> list[int]:
    """Dimensions ``d >= floor - 2`` where the induced subcomplex on ``sigma`` has homology."""
    size = _popcount(sigma)
    d_lo = max(floor - 2, -1)
    d_hi = size - 2
    if d_lo > d_hi:
        return []
    ins = _inside(gens, sigma)
    k = len(ins)
    # Nerve degrees e = size - d - 3 range over [-1, size - floor - 1].
    e_hi = size - d_lo - 3
    use_nerve = k <= 63 and _estimate_nerve(k, e_hi + 2) < _estimate_direct(size)
    if use_nerve:
        faces = _kernels.nerve_faces(sigma, ins, -1, e_hi + 1)
        hom = homology_from_faces(faces, p, range(-1, e_hi + 1))
        return sorted(size - e - 3 for e, r in hom.items() if r and size - e - 3 >= d_lo)
    faces = _kernels.direct_faces(sigma, ins, d_lo - 1, d_hi + 1)
    hom = homology_from_faces(faces, p, range(d_lo, d_hi + 1))
    return sorted(d for d, r in hom.items() if r)


def _hochster(gens: list[int], n: int, p: int, workers: int) -> tuple[int, list[tuple[int, int]], dict]:
    best = max(_popcount(g) for g in gens)
    lattice = _kernels.lcm_closure(gens, n)
    counts = np.array([_popcount(int(s)) for s in lattice], dtype=np.int64) if len(lattice) else np.array([])
    # lattice is sorted by decreasing size; locate each size block
    found: dict[int, list[int]] = {}
    pending: dict[int, set[int]] = defaultdict(set)
    seen: set[int] = set()
    stats = {"lattice": int(len(lattice)), "reduced": 0, "evaluated": 0}
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        start = 0
        for m in range(n, 0, -1):
            if m < best:
                break
            stop = start
            while stop < len(counts) and counts[stop] == m:
                stop += 1
            block = lattice[start:stop]
            start = stop
            if len(block):
                for r in _kernels.fold_reduce_many(np.ascontiguousarray(block), gens):
                    r = int(r)
                    if r and r not in seen:
                        seen.add(r)
                        pending[_popcount(r)].add(r)
            todo = sorted(pending.pop(m, ()))
            if not todo:
                continue
            stats["evaluated"] += len(todo)
            floor = best
            if pool is None:
                results = [_sigma_homology(s, gens, floor, p) for s in todo]
            else:
                results = list(pool.map(lambda s: _sigma_homology(s, gens, floor, p), todo))
            for s, dims in zip(todo, results):
                for d in dims:
                    found.setdefault(d + 2, []).append((s, d))
                if dims:
                    best = max(best, max(dims) + 2)
    finally:
        if pool is not None:
            pool.shutdown()
    stats["reduced"] = len(seen)
    witnesses = sorted(found.get(best, []), key=lambda t: (t[1], t[0]))
    return best, witnesses, stats


def regularity_squarefree(ideal: MonomialIdeal, field: str = "rationals") -> RegularityReport:
    """Regularity of a squarefree ideal through Hochster's formula."""
    _check_ideal(ideal)
    if not is_squarefree(ideal):
        raise NotSquarefree(f"ideal {ideal} is not squarefree; use regularity()")
    return _regularity_sqfree_cached(ideal, parse_field(field), threads())


@lru_cache(maxsize=1024)
def _regularity_sqfree_cached(ideal: MonomialIdeal, p: int, workers: int) -> RegularityReport:
    used = ideal.support_vars()
    budgets().check("polarized_vars", len(used))
    # Drop variables that no generator uses: they only add cone points.
    sub = ideal.with_ring(used)
    gens = _masks(sub)
    reg, wit, stats = _hochster(gens, sub.nvars, p, workers)
    return RegularityReport(
        ideal_digest=ideal.digest(),
        reg=reg,
        method="hochster",
        field=field_name(p),
        witnesses=tuple((_bits_names(s, sub.ring_vars), d) for s, d in wit),
        polarized=False,
        stats=stats,
    )


def regularity(ideal: MonomialIdeal, field: str = "rationals") -> RegularityReport:
    """Regularity of any monomial ideal: polarize, then apply the squarefree engine."""
    _check_ideal(ideal)
    if is_squarefree(ideal):
        return regularity_squarefree(ideal, field)
    pol, _ = polarize(ideal)
    rep = regularity_squarefree(pol, field)
    return RegularityReport(
        ideal_digest=ideal.digest(),
        reg=rep.reg,
        method=rep.method,
        field=rep.field,
        witnesses=rep.witnesses,
        polarized=True,
        stats=rep.stats,
    )


# -- lcm-lattice route -------------------------------------------------------


def _lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x if x >= y else y for x, y in zip(a, b))


def _leq(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm_lattice(ideal: MonomialIdeal) -> list[tuple[int, ...]]:
    """Least common multiples of all nonempty generator subsets."""
    gens = list(ideal.gens)
    elems = set(gens)
    frontier = list(elems)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = _lcm(a, g)
                if c not in elems:
                    elems.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(elems, key=lambda e: (-sum(e), e))


def _core(elems: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Strip beat points: the order complex keeps its homotopy type."""
    elems = list(elems)
    changed = True
    while changed:
        changed = False
        for x in elems:
            above = [y for y in elems if y != x and _leq(x, y)]
            below = [y for y in elems if y != x and _leq(y, x)]
            if above:
                mins = [y for y in above if not any(z != y and _leq(z, y) for z in above)]
                if len(mins) == 1:
                    elems.remove(x)
                    changed = True
                    break
            if below:
                maxs = [y for y in below if not any(z != y and _leq(y, z) for z in below)]
                if len(maxs) == 1:
                    elems.remove(x)
                    changed = True
                    break
    return elems


def _order_complex_homology(elems: list[tuple[int, ...]], p: int, j_max: int) -> dict[int, int]:
    """Reduced Betti numbers of the order complex in dimensions ``-1..j_max``."""
    n = len(elems)
    up = [0] * n  # bitmask of strictly larger elements
    for a in range(n):
        for b in range(n):
            if a != b and _leq(elems[a], elems[b]):
                up[a] |= 1 << b
    chains: list[list[int]] = [[0]]  # chains as vertex masks, grouped by size
    # chains of size s+1 extend chains of size s by an element above the top
    top_of: dict[int, int] = {}
    level = []
    for a in range(n):
        level.append(1 << a)
        top_of[1 << a] = a
    size = 1
    while level and size <= j_max + 2:
        chains.append(sorted(level))
        nxt = []
        for c in level:
            t = top_of[c]
            m = up[t]
            while m:
                b = m & -m
                m ^= b
                nc = c | b
                top_of[nc] = b.bit_length() - 1
                nxt.append(nc)
        level = nxt
        size += 1
    budgets().check("matrix_entries", sum(len(c) for c in chains))

    def rank(j: int) -> int:
        if j < 1 or j >= len(chains):
            return 0
        rows = boundary_rows(chains[j], chains[j - 1])
        return exact_rank(rows) if p == 0 else rank_mod_p(rows, p)

    out = {}
    for j in range(-1, j_max + 1):
        cnt = len(chains[j + 1]) if j + 1 < len(chains) else 0
        out[j] = cnt - rank(j + 1) - rank(j + 2) if cnt else 0
    return out


def regularity_lcm_lattice(ideal: MonomialIdeal, field: str = "rationals") -> RegularityReport:
    """Regularity from the lcm lattice, without polarizing.

    ``beta_{i,b}(R/I)`` is the reduced homology in dimension ``i - 2`` of the
    open interval below ``b``, so ``b`` contributes ``deg b - j - 1`` to
    ``reg(I)`` for every dimension ``j`` with nonzero homology.
    """
    _check_ideal(ideal)
    p = parse_field(field)
    budgets().check("lcm_gens", len(ideal.gens))
    elems = lcm_lattice(ideal)
    best = max(sum(e) for e in ideal.gens)
    found: dict[int, list] = {}
    for b in elems:
        deg = sum(b)
        if deg < best:
            break
        interval = _core([c for c in elems if c != b and _leq(c, b)])
        j_max = deg - best - 1
        hom = _order_complex_homology(interval, p, j_max)
        for j, r in hom.items():
            if r:
                c = deg - j - 1
                found.setdefault(c, []).append((b, j))
                best = max(best, c)
    wit = sorted(found.get(best, []), key=lambda t: (t[1], t[0]))
    names = ideal.ring_vars
    return RegularityReport(
        ideal_digest=ideal.digest(),
        reg=best,
        method="lcm-lattice",
        field=field_name(p),
        witnesses=tuple(
            (tuple(f"{v}^{a}" if a > 1 else v for v, a in zip(names, b) if a), j) for b, j in wit
        ),
        polarized=False,
    )


def verify_witness(ideal: MonomialIdeal, sigma: Iterable[str], dim: int, field: str = "rationals") -> bool:
    """Recompute homology of the induced subcomplex directly (no folding, no nerve)."""
    from .homology import reduced_homology_ranks, stanley_reisner_complex

    sigma = list(sigma)
    keep = set(sigma)
    gens = [m for m in ideal.monomials() if set(m.as_dict()) <= keep]
    if not gens:
        return False
    restricted = MonomialIdeal.from_monomials(sigma, gens)
    ranks = reduced_homology_ranks(stanley_reisner_complex(restricted), field)
    return ranks.get(dim, 0) > 0


__all__ = [
    "BudgetExceeded",
    "RegularityReport",
    "lcm_lattice",
    "regularity",
    "regularity_lcm_lattice",
    "regularity_squarefree",
    "verify_witness",
]
