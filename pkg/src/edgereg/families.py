"""Generators for very well-covered graphs and other sweep families."""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterator

from .combinatorics import VwcLabeling, canonical_form, check_vwc_characterization
from .config import budgets
from .graph import Graph, join, whisker


def _names(h: int) -> tuple[list[str], list[str]]:
    return [f"x{i}" for i in range(1, h + 1)], [f"y{i}" for i in range(1, h + 1)]


def _passes(h: int, xx: set[tuple[int, int]], xy: set[tuple[int, int]]) -> bool:
    """Both characterization conditions for edges among ``x``'s and ``x_i y_j`` (i != j)."""

    def e_x(i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in xx

    def e_zx(i: int, z_is_x: bool, j: int) -> bool:
        # edge between z_i (x_i or y_i) and x_j, for i != j
        return e_x(i, j) if z_is_x else (j, i) in xy

    for i, j in xy:
        if e_x(i, j):
            return False
    for i in range(h):
        for z_is_x in (True, False):
            for j in range(h):
                if j == i or not e_zx(i, z_is_x, j):
                    continue
                for k in range(h):
                    if k in (i, j):
                        continue
                    if (k, j) in xy and not e_zx(i, z_is_x, k):
                        return False
    return True


def _build(h: int, xx, xy) -> Graph:
    xs, ys = _names(h)
    edges = [(xs[i], ys[i]) for i in range(h)]
    edges += [(xs[i], xs[j]) for i, j in sorted(xx)]
    edges += [(xs[i], ys[j]) for i, j in sorted(xy)]
    return Graph(xs + ys, edges)


def _labeling(h: int) -> VwcLabeling:
    xs, ys = _names(h)
    return VwcLabeling(tuple(zip(xs, ys)))


def generate_vwc_family(
    h: int,
    mode: str = "exhaustive",
    seed: int | None = None,
    dedup: bool = False,
    samples: int = 100,
) -> Iterator[tuple[Graph, VwcLabeling]]:
    """Very well-covered graphs on ``x1..xh, y1..yh`` with the matching ``x_i y_i``.

    Exhaustive mode walks every subset of the candidate edges ``x_i x_j`` and
    ``x_i y_j`` that satisfies the characterization; random mode draws
    ``samples`` such subsets from ``random.Random(seed)``.  With ``dedup`` only
    the first member of each isomorphism class is emitted.
    """
    if h < 1:
        raise ValueError("h must be positive")
    budgets().check("vwc_h", h)
    xx_cand = list(combinations(range(h), 2))
    xy_cand = [(i, j) for i in range(h) for j in range(h) if i != j]
    lab = _labeling(h)
    seen: set = set()

    def emit(xx, xy):
        g = _build(h, xx, xy)
        if dedup:
            key = canonical_form(g)
            if key in seen:
                return None
            seen.add(key)
        return g

    if mode == "exhaustive":
        for mx in range(1 << len(xx_cand)):
            xx = {xx_cand[b] for b in range(len(xx_cand)) if mx >> b & 1}
            # condition (2) forbids x_i y_j whenever x_i x_j is present
            allowed = [(i, j) for i, j in xy_cand if (min(i, j), max(i, j)) not in xx]
            for my in range(1 << len(allowed)):
                xy = {allowed[b] for b in range(len(allowed)) if my >> b & 1}
                if _passes(h, xx, xy):
                    g = emit(xx, xy)
                    if g is not None:
                        yield g, lab
    elif mode == "random":
        if seed is None:
            raise ValueError("random mode needs a seed")
        rng = random.Random(seed)
        produced = 0
        attempts = 0
        while produced < samples and attempts < 10_000 * max(samples, 1):
            attempts += 1
            xx = {e for e in xx_cand if rng.random() < 0.5}
            xy = {e for e in xy_cand if rng.random() < 0.5 and (min(e), max(e)) not in xx}
            if not _passes(h, xx, xy):
                continue
            g = emit(xx, xy)
            if g is not None:
                produced += 1
                yield g, lab
    else:
        raise ValueError(f"unknown mode {mode!r}")


def vwc_pool(max_h: int, dedup: bool = True) -> list[tuple[Graph, VwcLabeling]]:
    """Exhaustive VWC graphs for every ``h <= max_h`` (deduplicated across all h)."""
    out = []
    for h in range(1, max_h + 1):
        out.extend(generate_vwc_family(h, "exhaustive", dedup=dedup))
    return out


def all_graphs(n: int, dedup: bool = True) -> list[Graph]:
    """Every graph on vertices ``v1..vn``, optionally one per isomorphism class."""
    names = [f"v{i}" for i in range(1, n + 1)]
    pairs = list(combinations(names, 2))
    seen: set = set()
    out = []
    for mask in range(1 << len(pairs)):
        g = Graph(names, [pairs[b] for b in range(len(pairs)) if mask >> b & 1])
        if dedup:
            key = canonical_form(g)
            if key in seen:
                continue
            seen.add(key)
        out.append(g)
    return out


def whiskered_family(max_n: int) -> list[tuple[Graph, Graph]]:
    """``(H, W(H))`` for every graph ``H`` on 1..max_n vertices up to isomorphism."""
    out = []
    for n in range(1, max_n + 1):
        for hgraph in all_graphs(n):
            out.append((hgraph, whisker(hgraph)))
    return out


def join_pairs(pool: list[Graph]) -> list[tuple[Graph, Graph, Graph]]:
    """``(A, B, A * B)`` for every unordered pair (with repetition) from ``pool``."""
    out = []
    for a in range(len(pool)):
        for b in range(a, len(pool)):
            ga = pool[a].relabel({v: f"a.{v}" for v in pool[a].vertices})
            gb = pool[b].relabel({v: f"b.{v}" for v in pool[b].vertices})
            out.append((pool[a], pool[b], join(ga, gb)))
    return out


def random_graph(n: int, p: float, rng: random.Random, prefix: str = "v") -> Graph:
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Graph(names, [(a, b) for a, b in combinations(names, 2) if rng.random() < p])


__all__ = [
    "all_graphs",
    "check_vwc_characterization",
    "generate_vwc_family",
    "join_pairs",
    "random_graph",
    "vwc_pool",
    "whiskered_family",
]
