"""Exhaustive checks of the structural facts about the colon graph ``G'``.

Each check instantiates every hypothesis it can find on a concrete
``(G, labeling, product)`` and records the first instance whose conclusion
fails.  Adjacency "in ``G'``" between original vertices ``a, b`` means
``ab`` lies in the colon ideal; for ``a == b`` that is ``a^2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from .combinatorics import VwcLabeling
from .even import (
    ColonGraph,
    EdgeProduct,
    colon_graph,
    even_connected_pairs,
    restrict_product,
)
from .graph import Graph, delete_closed_neighborhood

PAIR_TRANSFER = "pair-transfer"
WALK_NEIGHBOUR = "walk-neighbour"
SELF_LOOP_SPREAD = "self-loop-spread"
DELETE_VERTEX = "delete-vertex-neighbourhood"
DELETE_PAIR = "delete-pair-neighbourhood"

LEMMA_NAMES = (PAIR_TRANSFER, WALK_NEIGHBOUR, SELF_LOOP_SPREAD, DELETE_VERTEX, DELETE_PAIR)


@dataclass
class LemmaResult:
    name: str
    checked: int = 0
    counterexample: dict | None = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def fail(self, **instance) -> None:
        if self.counterexample is None:
            self.counterexample = instance


@dataclass
class LemmaReport:
    graph: str
    product: str
    results: list[LemmaResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def as_dict(self) -> dict:
        return {
            "graph": self.graph,
            "product": self.product,
            "lemmas": [
                {"name": r.name, "checked": r.checked, "pass": r.passed, "counterexample": r.counterexample}
                for r in self.results
            ],
        }


def _adjacency(product: EdgeProduct) -> Callable[[str, str], bool]:
    g = product.base
    pairs = even_connected_pairs(product) | {frozenset(e) for e in g.edges}
    return lambda a, b: frozenset((a, b)) in pairs


def even_connection_walks(product: EdgeProduct) -> Iterator[tuple[str, ...]]:
    """Every walk witnessing an even-connection (all lengths the multiplicities allow)."""
    g = product.base
    mult = product.multiplicities()
    slot = {frozenset(e): e for e in mult}

    def extend(path: list[str], rem: dict) -> Iterator[tuple[str, ...]]:
        last = path[-1]
        if len(path) % 2 == 1:
            # at an even index: take a free step
            for w in g.neighbors(last):
                path.append(w)
                yield from extend(path, rem)
                path.pop()
            return
        # at an odd index: the walk may stop here once a product edge was used
        if len(path) >= 4:
            yield tuple(path)
        for w in g.neighbors(last):
            e = slot.get(frozenset((last, w)))
            if e is not None and rem[e]:
                rem[e] -= 1
                path.append(w)
                yield from extend(path, rem)
                path.pop()
                rem[e] += 1

    for u in g.vertices:
        yield from extend([u], dict(mult))


def _pair_transfer(g: Graph, lab: VwcLabeling, adj, res: LemmaResult) -> None:
    xs, ys = lab.X, lab.Y
    h = lab.h
    for i in range(h):
        for t in (xs[i], ys[i]):
            for j in range(h):
                if j == i or not adj(t, xs[j]):
                    continue
                for k in range(h):
                    if k in (i, j) or not adj(ys[j], xs[k]):
                        continue
                    res.checked += 1
                    if not (adj(t, xs[k]) or adj(t, ys[j])):
                        res.fail(t=t, x_j=xs[j], y_j=ys[j], x_k=xs[k])


def _walk_neighbour(product: EdgeProduct, adj, res: LemmaResult) -> None:
    g = product.base
    for walk in even_connection_walks(product):
        u, v = walk[0], walk[-1]
        for p in set(walk):
            for w in g.vertices:
                if w == p or not adj(w, p):
                    continue
                res.checked += 1
                if not (adj(u, w) or adj(v, w)):
                    res.fail(walk=list(walk), w=w, p=p)


def _self_loop_spread(g: Graph, lab: VwcLabeling, cg: ColonGraph, adj, res: LemmaResult) -> None:
    for u in cg.W:
        other = lab.partner(u)
        closed = g.closed_neighborhood([u, other])
        for a in g.vertices:
            if a == other or not adj(a, other):
                continue
            for b in sorted(closed, key=g.index):
                if a == b:
                    continue
                res.checked += 1
                if not adj(a, b):
                    res.fail(u=u, a=a, b=b)


def _colon_graph_or_self(h: Graph, product: EdgeProduct) -> Graph:
    sub = restrict_product(product, h)
    return h if sub is None else colon_graph(sub).gprime


def _is_induced_in(k: Graph, big: Graph) -> bool:
    """``k`` (isolated vertices ignored) is an induced subgraph of ``big``."""
    k = k.without_isolated()
    if any(v not in big for v in k.vertices):
        return False
    return big.induced_subgraph(k.vertices).edge_set() == k.edge_set()


def _delete_vertex(product: EdgeProduct, cg: ColonGraph, res: LemmaResult) -> None:
    g = product.base
    gp = cg.gprime
    for y in g.vertices:
        hprime = _colon_graph_or_self(delete_closed_neighborhood(g, [y]), product)
        res.checked += 1
        if not _is_induced_in(delete_closed_neighborhood(gp, [y]), hprime):
            res.fail(y=y)


def _delete_pair(g: Graph, lab: VwcLabeling, product: EdgeProduct, cg: ColonGraph, res: LemmaResult) -> None:
    gp = cg.gprime
    for u in cg.W:
        other = lab.partner(u)
        hprime = _colon_graph_or_self(delete_closed_neighborhood(g, [u, other]), product)
        for t in gp.neighbors(other):
            if t not in g:
                continue
            res.checked += 1
            if not _is_induced_in(delete_closed_neighborhood(gp, [t]), hprime):
                res.fail(u=u, t=t)


def verify_structural_lemmas(g: Graph, lab: VwcLabeling, product: EdgeProduct) -> LemmaReport:
    """Check all five structural facts on ``G' = colon_graph(product)``."""
    if product.base != g:
        raise ValueError("product is over a different graph")
    adj = _adjacency(product)
    cg = colon_graph(product)
    results = {name: LemmaResult(name) for name in LEMMA_NAMES}
    _pair_transfer(g, lab, adj, results[PAIR_TRANSFER])
    _walk_neighbour(product, adj, results[WALK_NEIGHBOUR])
    _self_loop_spread(g, lab, cg, adj, results[SELF_LOOP_SPREAD])
    _delete_vertex(product, cg, results[DELETE_VERTEX])
    _delete_pair(g, lab, product, cg, results[DELETE_PAIR])
    return LemmaReport(g.digest(), product.spec(), [results[n] for n in LEMMA_NAMES])
