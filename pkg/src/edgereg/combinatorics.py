"""Matchings, covers and very well-covered recognition.

All searches run over vertex bitmasks; graphs larger than the ``vertices``
budget are refused.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .config import budgets
from .errors import InvalidLabeling, NotVeryWellCovered
from .graph import Graph, natural_key


def _popcount(m: int) -> int:
    return bin(m).count("1")


def _bits(m: int) -> Iterator[int]:
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


@dataclass(frozen=True)
class MatchingCertificate:
    edges: tuple[tuple[str, str], ...]
    induced: bool

    def __len__(self) -> int:
        return len(self.edges)

    def verify(self, g: Graph) -> bool:
        used: set[str] = set()
        for u, v in self.edges:
            if not g.has_edge(u, v) or u in used or v in used:
                return False
            used.update((u, v))
        if self.induced:
            for a in range(len(self.edges)):
                for b in range(a + 1, len(self.edges)):
                    for u in self.edges[a]:
                        for v in self.edges[b]:
                            if g.has_edge(u, v):
                                return False
        return True


@dataclass(frozen=True)
class VwcLabeling:
    """Pairs ``(x_i, y_i)`` splitting ``V`` into a minimal cover and a maximal independent set."""

    pairs: tuple[tuple[str, str], ...]

    @property
    def h(self) -> int:
        return len(self.pairs)

    @property
    def X(self) -> tuple[str, ...]:
        return tuple(x for x, _ in self.pairs)

    @property
    def Y(self) -> tuple[str, ...]:
        return tuple(y for _, y in self.pairs)

    def partner(self, v: str) -> str:
        for x, y in self.pairs:
            if v == x:
                return y
            if v == y:
                return x
        raise KeyError(v)

    def pair_index(self, v: str) -> int:
        for i, (x, y) in enumerate(self.pairs):
            if v in (x, y):
                return i
        raise KeyError(v)


# -- independent sets ------------------------------------------------


def _check_size(g: Graph) -> None:
    budgets().check("vertices", g.n)


def max_independent_set(adj: tuple[int, ...], pool: int) -> int:
    """Maximum independent set inside ``pool`` (bitmask), returned as a bitmask."""

    @lru_cache(maxsize=None)
    def solve(p: int) -> int:
        if not p:
            return 0
        # A vertex of degree <= 1 inside p is always safe to take.
        best_v, best_d = -1, -1
        for v in _bits(p):
            d = _popcount(adj[v] & p)
            if d <= 1:
                return (1 << v) | solve(p & ~(adj[v] | (1 << v)))
            if d > best_d:
                best_v, best_d = v, d
        v = best_v
        with_v = (1 << v) | solve(p & ~(adj[v] | (1 << v)))
        without = solve(p & ~(1 << v))
        return with_v if _popcount(with_v) >= _popcount(without) else without

    return solve(pool)


def maximal_independent_sets(g: Graph) -> Iterator[int]:
    """Bron-Kerbosch with pivoting on the complement, yielding bitmasks."""
    _check_size(g)
    n = g.n
    full = (1 << n) - 1
    nonadj = [full & ~(a | (1 << i)) for i, a in enumerate(g.adjacency)]

    def bk(r: int, p: int, x: int) -> Iterator[int]:
        if not p and not x:
            yield r
            return
        u = max(_bits(p | x), key=lambda w: _popcount(nonadj[w] & p))
        for v in _bits(p & ~nonadj[u]):
            yield from bk(r | (1 << v), p & nonadj[v], x & nonadj[v])
            p &= ~(1 << v)
            x |= 1 << v

    if n == 0:
        yield 0
        return
    yield from bk(0, full, 0)


def independence_number(g: Graph) -> int:
    _check_size(g)
    return _popcount(max_independent_set(g.adjacency, (1 << g.n) - 1))


def min_vertex_cover_size(g: Graph) -> int:
    return g.n - independence_number(g)


def is_well_covered(g: Graph) -> bool:
    """All maximal independent sets share one size; the empty graph counts as well-covered."""
    size = None
    for m in maximal_independent_sets(g):
        c = _popcount(m)
        if size is None:
            size = c
        elif c != size:
            return False
    return True


def is_very_well_covered(g: Graph) -> bool:
    if g.n < 2 or g.n % 2 or g.isolated_vertices():
        return False
    if not is_well_covered(g):
        return False
    return min_vertex_cover_size(g) == g.n // 2


# -- induced matchings -------------------------------------------------


def induced_matching(g: Graph) -> MatchingCertificate:
    """Maximum induced matching by exact search on the edge-conflict graph."""
    _check_size(g)
    edges = g.edge_index_pairs
    adj = g.adjacency
    reach = [adj[u] | adj[v] | (1 << u) | (1 << v) for u, v in edges]
    ends = [(1 << u) | (1 << v) for u, v in edges]
    conflict = []
    for a in range(len(edges)):
        m = 0
        for b in range(len(edges)):
            if a != b and reach[a] & ends[b]:
                m |= 1 << b
        conflict.append(m)
    best = max_independent_set(tuple(conflict), (1 << len(edges)) - 1)
    chosen = tuple(g.edges[b] for b in _bits(best))
    return MatchingCertificate(chosen, induced=True)


def induced_matching_number(g: Graph) -> int:
    return len(induced_matching(g))


def brute_force_induced_matching_number(g: Graph) -> int:
    """Enumerate every edge subset; reference oracle for small graphs."""
    edges = g.edges
    best = 0
    for mask in range(1 << len(edges)):
        k = _popcount(mask)
        if k <= best:
            continue
        chosen = [edges[i] for i in _bits(mask)]
        if MatchingCertificate(tuple(chosen), True).verify(g):
            best = k
    return best


# -- very well-covered labelings -------------------------------------


def _perfect_matching(g: Graph, xs: list[int], ys: list[int]) -> dict[int, int] | None:
    """Lexicographically first perfect matching x -> y (in the given orders)."""
    adj = g.adjacency
    yset = set(ys)

    def can_match(rem_x: list[int], free_y: frozenset) -> bool:
        # Kuhn's augmenting paths on the residual problem.
        match: dict[int, int] = {}

        def try_x(x: int, seen: set) -> bool:
            for y in free_y:
                if adj[x] >> y & 1 and y not in seen:
                    seen.add(y)
                    if y not in match or try_x(match[y], seen):
                        match[y] = x
                        return True
            return False

        return all(try_x(x, set()) for x in rem_x)

    if not can_match(xs, frozenset(ys)):
        return None
    out: dict[int, int] = {}
    free = list(ys)
    for k, x in enumerate(xs):
        for y in free:
            if adj[x] >> y & 1:
                rest = [z for z in free if z != y]
                if can_match(xs[k + 1 :], frozenset(rest)):
                    out[x] = y
                    free = rest
                    break
        else:  # pragma: no cover - guarded by the feasibility check
            return None
    assert set(out.values()) <= yset
    return out


def vwc_labeling(g: Graph) -> VwcLabeling:
    """Deterministic labeling: smallest ``X`` (natural name order), then smallest pairing."""
    if not is_very_well_covered(g):
        raise NotVeryWellCovered(f"graph {g.digest()!r} is not very well-covered")
    names = g.vertices
    key = lambda i: natural_key(names[i])  # noqa: E731
    full = (1 << g.n) - 1
    candidates = []
    for ymask in maximal_independent_sets(g):
        xs = sorted(_bits(full & ~ymask), key=key)
        candidates.append(([key(i) for i in xs], xs, ymask))
    candidates.sort(key=lambda c: c[0])
    for _, xs, ymask in candidates:
        ys = sorted(_bits(ymask), key=key)
        m = _perfect_matching(g, xs, ys)
        if m is not None:
            return VwcLabeling(tuple((names[x], names[m[x]]) for x in xs))
    raise NotVeryWellCovered("no cover admits a perfect matching")  # pragma: no cover


def validate_labeling(g: Graph, lab: VwcLabeling) -> None:
    X, Y = set(lab.X), set(lab.Y)
    if len(X) != lab.h or len(Y) != lab.h or X & Y or X | Y != set(g.vertices) or g.n != 2 * lab.h:
        raise InvalidLabeling("pairs must partition V into two halves")
    for x, y in lab.pairs:
        if not g.has_edge(x, y):
            raise InvalidLabeling(f"{{{x},{y}}} is not an edge")
    # X then covers every edge, minimally (x_i guards its private edge x_iy_i),
    # and Y is maximal because every x_i sees y_i.
    ym = g.mask(Y)
    adj = g.adjacency
    for i in _bits(ym):
        if adj[i] & ym:
            raise InvalidLabeling("Y is not independent")


def check_vwc_characterization(g: Graph, lab: VwcLabeling) -> bool:
    """Both edge conditions characterising very well-covered graphs under a labeling."""
    validate_labeling(g, lab)
    h = lab.h
    xs, ys = lab.X, lab.Y
    E = g.has_edge
    for i in range(h):
        for j in range(h):
            if i != j and E(xs[i], ys[j]) and E(xs[i], xs[j]):
                return False
    for i in range(h):
        for z in (xs[i], ys[i]):
            for j in range(h):
                if j == i or not E(z, xs[j]):
                    continue
                for k in range(h):
                    if k in (i, j):
                        continue
                    if E(ys[j], xs[k]) and not E(z, xs[k]):
                        return False
    return True


def relabel_swap(g: Graph, lab: VwcLabeling, i: int) -> VwcLabeling:
    """Swap ``x_j <-> y_j`` for every ``y_j`` adjacent to ``x_i`` (``i`` is 0-based).

    ``y_i`` itself is always among those neighbours, so pair ``i`` is swapped too.
    """
    validate_labeling(g, lab)
    if not 0 <= i < lab.h:
        raise InvalidLabeling(f"pair index {i} out of range")
    xi = lab.pairs[i][0]
    swap = {j for j, (_, y) in enumerate(lab.pairs) if g.has_edge(xi, y)}
    pairs = tuple((y, x) if j in swap else (x, y) for j, (x, y) in enumerate(lab.pairs))
    return VwcLabeling(pairs)


def swap_indices(g: Graph, lab: VwcLabeling, i: int) -> set[int]:
    xi = lab.pairs[i][0]
    return {j for j, (_, y) in enumerate(lab.pairs) if g.has_edge(xi, y)}


def is_bipartite(g: Graph) -> bool:
    color: dict[int, int] = {}
    adj = g.adjacency
    for s in range(g.n):
        if s in color:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in _bits(adj[v]):
                if w not in color:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


# -- canonical forms -------------------------------------------------


def _refined_colours(adj: tuple[int, ...]) -> list[int]:
    """Colour refinement started from degrees; colours are canonical ranks."""
    n = len(adj)
    colour = [_popcount(a) for a in adj]
    while True:
        sig = [(colour[v], tuple(sorted(colour[w] for w in _bits(adj[v])))) for v in range(n)]
        ranks = {t: r for r, t in enumerate(sorted(set(sig)))}
        new = [ranks[t] for t in sig]
        if len(set(new)) == len(set(colour)):
            return new
        colour = new


def canonical_form(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Minimum adjacency word over orderings compatible with a vertex colouring.

    The word lists, for each position, the bitmask of earlier positions it is
    adjacent to.  Orderings are restricted to listing colour classes of the
    (isomorphism-invariant) refined colouring in increasing colour order, so
    the minimum is still a complete invariant; prefixes that already exceed
    the best word are pruned.
    """
    budgets().check("iso_vertices", g.n)
    n = g.n
    adj = g.adjacency
    colour = _refined_colours(adj)
    slots = sorted(range(n), key=lambda v: colour[v])
    slot_colour = [colour[v] for v in slots]
    # Twins (same colour, same neighbours apart from each other) are swapped by
    # an automorphism, so only the first unplaced member of a twin group is tried.
    twin_of = list(range(n))
    for v in range(n):
        for u in range(v):
            if colour[u] == colour[v] and adj[u] & ~(1 << v) == adj[v] & ~(1 << u):
                twin_of[v] = twin_of[u]
                break
    best: list[int] | None = None
    cur: list[int] = []
    pos = [-1] * n

    def dfs(a: int) -> None:
        nonlocal best
        if a == n:
            if best is None or cur < best:
                best = cur[:]
            return
        tried: set[int] = set()
        for v in range(n):
            if pos[v] >= 0 or colour[v] != slot_colour[a] or twin_of[v] in tried:
                continue
            tried.add(twin_of[v])
            row = 0
            m = adj[v]
            while m:
                low = m & -m
                m ^= low
                p = pos[low.bit_length() - 1]
                if p >= 0:
                    row |= 1 << p
            cur.append(row)
            if best is None or cur <= best[: a + 1]:
                pos[v] = a
                dfs(a + 1)
                pos[v] = -1
            cur.pop()

    dfs(0)
    return n, tuple(best or ())
