"""Even-connections and the colon ideals ``(I(G)^(s+1) : e_1...e_s)``.

A walk ``p_0 p_1 ... p_(2k+1)`` (k >= 1) even-connects its endpoints when
every step ``p_(2l+1) p_(2l+2)`` is one of the product edges, each used no
more often than its multiplicity.  The search runs over states
``(vertex, parity, remaining multiplicities)``; the remaining vector only
shrinks on the constrained steps, so the state space is finite and BFS
terminates even though walks may revisit vertices.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotAnEdge, NotSquarefree, ParseError
from .graph import Graph
from .monomial import (
    Monomial,
    MonomialIdeal,
    colon_by_monomial,
    edge_ideal,
    ideal_equal,
    is_squarefree,
    polar_name,
    polarize,
    power,
)

Edge = tuple[str, str]


def _canon(g: Graph, u: str, v: str) -> Edge:
    return (u, v) if g.index(u) <= g.index(v) else (v, u)


@dataclass(frozen=True)
class EdgeProduct:
    """Ordered multiset ``e_1 ... e_s`` of edges of ``base``."""

    base: Graph
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if not self.edges:
            raise ValueError("an edge product needs s >= 1 factors")
        canon = []
        for e in self.edges:
            u, v = e
            if not self.base.has_edge(u, v):
                raise NotAnEdge(f"{u}-{v} is not an edge of the graph")
            canon.append(_canon(self.base, u, v))
        object.__setattr__(self, "edges", tuple(canon))

    @classmethod
    def parse(cls, base: Graph, text: str) -> "EdgeProduct":
        """``"x1-x2,x1-x2,x3-y3"`` style product syntax."""
        edges = []
        for tok in text.split(","):
            tok = tok.strip()
            if not tok:
                continue
            parts = tok.split("-")
            if len(parts) != 2 or not all(parts):
                raise ParseError(f"bad product factor {tok!r}; expected u-v")
            edges.append((parts[0], parts[1]))
        if not edges:
            raise ParseError("empty product")
        return cls(base, tuple(edges))

    @property
    def s(self) -> int:
        return len(self.edges)

    def distinct(self) -> list[Edge]:
        """Distinct factors in order of first appearance."""
        return list(dict.fromkeys(self.edges))

    def multiplicities(self) -> dict[Edge, int]:
        return dict(Counter(self.edges))

    def monomial(self) -> Monomial:
        acc: Counter = Counter()
        for u, v in self.edges:
            acc[u] += 1
            acc[v] += 1
        return Monomial.of(acc.items())

    def spec(self) -> str:
        return ",".join(f"{u}-{v}" for u, v in self.edges)

    def without(self, i: int) -> tuple[Edge, ...]:
        return self.edges[:i] + self.edges[i + 1 :]


@dataclass(frozen=True)
class WitnessPath:
    """A walk ``p_0..p_(2k+1)`` with the product edge used at each constrained step."""

    vertices: tuple[str, ...]
    odd_step_assignment: tuple[Edge, ...]

    @property
    def k(self) -> int:
        return (len(self.vertices) - 2) // 2

    def validate(self, product: EdgeProduct) -> bool:
        """Check the four defining conditions directly from the walk."""
        g = product.base
        p = self.vertices
        if len(p) < 4 or len(p) % 2:
            return False
        k = (len(p) - 2) // 2
        if any(not (x in g and y in g and g.has_edge(x, y)) for x, y in zip(p, p[1:])):
            return False
        if len(self.odd_step_assignment) != k:
            return False
        mult = Counter(frozenset(e) for e in product.edges)
        used: Counter = Counter()
        for ell in range(k):
            step = frozenset((p[2 * ell + 1], p[2 * ell + 2]))
            if step not in mult or frozenset(self.odd_step_assignment[ell]) != step:
                return False
            used[step] += 1
        return all(used[e] <= mult[e] for e in used)

    def __str__(self) -> str:
        return ",".join(self.vertices)


# -- search --------------------------------------------------------------


class _Search:
    """Shared BFS machinery over (vertex index, parity, remaining vector)."""

    def __init__(self, product: EdgeProduct):
        g = product.base
        self.g = g
        self.product = product
        self.distinct = product.distinct()
        mult = product.multiplicities()
        self.full = tuple(mult[e] for e in self.distinct)
        self.nbrs = [sorted(g.index(w) for w in g.neighbors(v)) for v in g.vertices]
        # constrained moves: vertex index -> [(neighbour index, factor slot)]
        self.moves: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
        for slot, (u, v) in enumerate(self.distinct):
            a, b = g.index(u), g.index(v)
            self.moves[a].append((b, slot))
            self.moves[b].append((a, slot))
        for m in self.moves:
            m.sort()

    def successors(self, state):
        v, parity, rem = state
        if parity == 0:
            # free step: p_(2l) -> p_(2l+1)
            for w in self.nbrs[v]:
                yield (w, 1, rem), None
        else:
            for w, slot in self.moves[v]:
                if rem[slot]:
                    nrem = rem[:slot] + (rem[slot] - 1,) + rem[slot + 1 :]
                    yield (w, 0, nrem), slot

    def bfs(self, start: int, want_parents: bool):
        init = (start, 0, self.full)
        parent = {init: None}
        queue = deque([init])
        while queue:
            st = queue.popleft()
            for nxt, slot in self.successors(st):
                if nxt not in parent:
                    parent[nxt] = (st, slot) if want_parents else None
                    queue.append(nxt)
        return parent

    def targets(self, start: int) -> set[int]:
        """Vertices even-connected to ``start``."""
        return {v for (v, parity, rem) in self.bfs(start, False) if parity == 1 and rem != self.full}


def is_even_connected(product: EdgeProduct, u: str, v: str) -> WitnessPath | None:
    """Shortest witness (ties broken by vertex order of the base graph), or ``None``."""
    g = product.base
    search = _Search(product)
    a, b = g.index(u), g.index(v)
    init = (a, 0, search.full)
    parent = {init: None}
    queue = deque([init])
    goal = None
    while queue:
        st = queue.popleft()
        if st[0] == b and st[1] == 1 and st[2] != search.full:
            goal = st
            break
        for nxt, slot in search.successors(st):
            if nxt not in parent:
                parent[nxt] = (st, slot)
                queue.append(nxt)
    if goal is None:
        return None
    verts: list[int] = []
    slots: list[int] = []
    st = goal
    while st is not None:
        verts.append(st[0])
        link = parent[st]
        if link is None:
            break
        st, slot = link
        if slot is not None:
            slots.append(slot)
    verts.reverse()
    slots.reverse()
    names = tuple(g.vertices[i] for i in verts)
    return WitnessPath(names, tuple(search.distinct[s] for s in slots))


def even_connected_pairs(product: EdgeProduct) -> set[frozenset[str]]:
    """All unordered pairs ``{u, v}`` (singletons when ``u == v``) that are even-connected."""
    g = product.base
    search = _Search(product)
    out: set[frozenset[str]] = set()
    for a in range(g.n):
        for b in search.targets(a):
            out.add(frozenset((g.vertices[a], g.vertices[b])))
    return out


def self_connected(product: EdgeProduct) -> list[str]:
    """Vertices even-connected to themselves, in vertex order."""
    pairs = even_connected_pairs(product)
    return [v for v in product.base.vertices if frozenset((v,)) in pairs]


def colon_ideal_by_even_connections(product: EdgeProduct) -> MonomialIdeal:
    """``(I^(s+1) : e_1...e_s)`` from edges plus even-connected pairs (squares allowed)."""
    g = product.base
    gens = [{u: 1, v: 1} for u, v in g.edges]
    for pair in even_connected_pairs(product):
        if len(pair) == 1:
            (u,) = pair
            gens.append({u: 2})
        else:
            u, v = pair
            gens.append({u: 1, v: 1})
    return MonomialIdeal.from_monomials(g.vertices, gens)


def brute_force_colon(product: EdgeProduct) -> MonomialIdeal:
    """Oracle: ``colon_by_monomial(power(I(G), s+1), e_1...e_s)``."""
    ideal = edge_ideal(product.base)
    return colon_by_monomial(power(ideal, product.s + 1), product.monomial())


# -- the graph of the polarized colon ----------------------------------------


@dataclass(frozen=True)
class ColonGraph:
    gprime: Graph
    self_loops: tuple[str, ...]
    partners: tuple[tuple[str, str], ...]  # (u, partner of u)
    origin: EdgeProduct

    @property
    def W(self) -> tuple[str, ...]:
        return self.self_loops

    def partner(self, u: str) -> str:
        return dict(self.partners)[u]

    def is_new(self, v: str) -> bool:
        return v not in self.origin.base


def ideal_graph(ideal: MonomialIdeal, keep: Sequence[str] = ()) -> Graph:
    """Graph of a quadratic squarefree ideal; ``keep`` lists vertices to include even if unused."""
    if not is_squarefree(ideal) or any(sum(e) != 2 for e in ideal.gens):
        raise NotSquarefree("not a quadratic squarefree ideal")
    edges = [tuple(m.as_dict()) for m in ideal.monomials()]
    order = dict.fromkeys(keep)
    for v in ideal.ring_vars:
        if any(v in e for e in edges):
            order.setdefault(v)
    return Graph(order, edges)


def colon_graph(product: EdgeProduct) -> ColonGraph:
    """Polarize the colon ideal and read off its graph.

    Occurrence ``u#1`` keeps the name ``u``; a square ``u^2`` contributes the
    fresh partner ``u#2``.
    """
    g = product.base
    colon = colon_ideal_by_even_connections(product)
    pol, pmap = polarize(colon)
    rename = {polar_name(v, 1): v for v in g.vertices}
    renamed = MonomialIdeal(tuple(rename.get(v, v) for v in pol.ring_vars), pol.gens)
    loops = tuple(v for v, e in zip(colon.ring_vars, zip(*colon.gens)) if max(e) >= 2) if colon.gens else ()
    partners = tuple((u, polar_name(u, 2)) for u in loops)
    keep = list(g.vertices) + [p for _, p in partners]
    return ColonGraph(ideal_graph(renamed, keep), loops, partners, product)


# -- theorem checks ----------------------------------------------------------


def _require_squarefree_colon(product: EdgeProduct) -> MonomialIdeal:
    colon = colon_ideal_by_even_connections(product)
    if not is_squarefree(colon):
        raise NotSquarefree(f"colon ideal for product {product.spec()} has squares")
    return colon


def verify_colon_decomposition(product: EdgeProduct, i: int) -> bool:
    """Compare ``(I^(s+1) : prod e)`` with ``((I^2 : e_i)^s : prod_(j != i) e_j)`` (``i`` 1-based)."""
    _require_squarefree_colon(product)
    if not 1 <= i <= product.s:
        raise IndexError(f"factor index {i} outside 1..{product.s}")
    ideal = edge_ideal(product.base)
    lhs = colon_by_monomial(power(ideal, product.s + 1), product.monomial())
    ei = product.edges[i - 1]
    inner = colon_by_monomial(power(ideal, 2), Monomial.product(*ei))
    rest: Counter = Counter()
    for u, v in product.without(i - 1):
        rest[u] += 1
        rest[v] += 1
    rhs = colon_by_monomial(power(inner, product.s), Monomial.of(rest.items()))
    return ideal_equal(lhs, rhs)


def verify_gprime_vwc(g: Graph, product: EdgeProduct) -> bool:
    from .combinatorics import is_very_well_covered

    if product.base != g:
        raise ValueError("product is over a different graph")
    _require_squarefree_colon(product)
    return is_very_well_covered(colon_graph(product).gprime)


def restrict_product(product: EdgeProduct, h: Graph) -> EdgeProduct | None:
    """Factors of ``product`` that are edges of ``h`` (multiplicities kept), or ``None``."""
    kept = tuple(e for e in product.edges if e[0] in h and e[1] in h and h.has_edge(*e))
    return EdgeProduct(h, kept) if kept else None


def all_products(g: Graph, s: int) -> Iterable[EdgeProduct]:
    """Every s-fold product up to reordering (multisets of edges)."""
    from itertools import combinations_with_replacement

    for combo in combinations_with_replacement(g.edges, s):
        yield EdgeProduct(g, combo)
