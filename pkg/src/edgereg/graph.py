"""Finite simple graphs with named vertices.

Vertices keep insertion order; every derived output (edge lists, digests,
text serialization) follows that order so results are reproducible.
Adjacency is stored as Python-int bitmasks over vertex indices.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Sequence

from .errors import ParseError, UnknownVertex, VertexNameCollision

_TOKEN = re.compile(r"^[^\s,\-|]+$")


def natural_key(name: str) -> tuple:
    """Sort key treating digit runs numerically, so ``x2 < x10``."""
    parts = re.split(r"(\d+)", name)
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in parts if p != "")


class Graph:
    """Immutable simple graph.

    >>> g = Graph.from_edges([("a", "b"), ("b", "c")])
    >>> g.has_edge("c", "b"), g.degree("b")
    (True, 2)
    """

    __slots__ = ("_vertices", "_index", "_adj", "_edges")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Sequence[str]] = ()):
        verts: list[str] = []
        index: dict[str, int] = {}
        for v in vertices:
            v = str(v)
            if v in index:
                raise VertexNameCollision(f"duplicate vertex {v!r}")
            index[v] = len(verts)
            verts.append(v)
        adj = [0] * len(verts)
        for e in edges:
            u, w = e
            if u not in index:
                raise UnknownVertex(u)
            if w not in index:
                raise UnknownVertex(w)
            i, j = index[u], index[w]
            if i == j:
                raise ValueError(f"loop at {u!r} is not allowed in a simple graph")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        self._vertices = tuple(verts)
        self._index = index
        self._adj = tuple(adj)
        self._edges = None

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[str]], vertices: Iterable[str] = ()) -> "Graph":
        """Build from an edge list; vertex order is ``vertices`` then first appearance."""
        edges = [tuple(str(x) for x in e) for e in edges]
        order: dict[str, None] = dict.fromkeys(str(v) for v in vertices)
        for u, w in edges:
            order.setdefault(u)
            order.setdefault(w)
        return cls(order, edges)

    @classmethod
    def _from_masks(cls, vertices: Sequence[str], adj: Sequence[int]) -> "Graph":
        g = cls.__new__(cls)
        g._vertices = tuple(vertices)
        g._index = {v: i for i, v in enumerate(g._vertices)}
        g._adj = tuple(adj)
        g._edges = None
        return g

    # -- basic queries -------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbour bitmask of each vertex index."""
        return self._adj

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def __contains__(self, v: object) -> bool:
        return v in self._index

    @property
    def edges(self) -> tuple[tuple[str, str], ...]:
        if self._edges is None:
            out = []
            for i, m in enumerate(self._adj):
                m >>= i + 1
                j = i + 1
                while m:
                    if m & 1:
                        out.append((self._vertices[i], self._vertices[j]))
                    m >>= 1
                    j += 1
            self._edges = tuple(out)
        return self._edges

    @property
    def edge_index_pairs(self) -> list[tuple[int, int]]:
        return [(self._index[u], self._index[v]) for u, v in self.edges]

    def num_edges(self) -> int:
        return sum(bin(m).count("1") for m in self._adj) // 2

    def has_edge(self, u: str, v: str) -> bool:
        return bool(self._adj[self.index(u)] >> self.index(v) & 1)

    def neighbors(self, v: str) -> list[str]:
        return self.names(self._adj[self.index(v)])

    def degree(self, v: str) -> int:
        return bin(self._adj[self.index(v)]).count("1")

    def names(self, mask: int) -> list[str]:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(self._vertices[i])
            mask >>= 1
            i += 1
        return out

    def mask(self, vs: Iterable[str]) -> int:
        m = 0
        for v in vs:
            m |= 1 << self.index(v)
        return m

    def isolated_vertices(self) -> list[str]:
        return [v for v, m in zip(self._vertices, self._adj) if m == 0]

    def closed_neighborhood(self, vs: Iterable[str]) -> set[str]:
        m = 0
        for v in vs:
            i = self.index(v)
            m |= self._adj[i] | (1 << i)
        return set(self.names(m))

    # -- constructions -------------------------------------------------

    def induced_subgraph(self, keep: Iterable[str]) -> "Graph":
        keep_mask = self.mask(keep)
        old = [i for i in range(self.n) if keep_mask >> i & 1]
        pos = {o: k for k, o in enumerate(old)}
        adj = []
        for o in old:
            m = self._adj[o] & keep_mask
            nm = 0
            while m:
                low = m & -m
                nm |= 1 << pos[low.bit_length() - 1]
                m ^= low
            adj.append(nm)
        return Graph._from_masks([self._vertices[o] for o in old], adj)

    def remove_vertices(self, drop: Iterable[str]) -> "Graph":
        drop = set(drop)
        for v in drop:
            self.index(v)
        return self.induced_subgraph(v for v in self._vertices if v not in drop)

    def without_isolated(self) -> "Graph":
        return self.remove_vertices(self.isolated_vertices())

    def relabel(self, mapping: dict[str, str]) -> "Graph":
        new = [mapping.get(v, v) for v in self._vertices]
        if len(set(new)) != len(new):
            raise VertexNameCollision("relabeling is not injective")
        return Graph._from_masks(new, self._adj)

    def add_edges(self, edges: Iterable[Sequence[str]]) -> "Graph":
        extra = [tuple(e) for e in edges]
        verts = list(self._vertices)
        for u, w in extra:
            for x in (u, w):
                if x not in self._index and x not in verts:
                    verts.append(x)
        return Graph(verts, list(self.edges) + extra)

    # -- dunder --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return set(self._vertices) == set(other._vertices) and self.edge_set() == other.edge_set()

    def __hash__(self) -> int:
        return hash((frozenset(self._vertices), self.edge_set()))

    def edge_set(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset(e) for e in self.edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.digest()!r})"

    def __iter__(self) -> Iterator[str]:
        return iter(self._vertices)

    def digest(self) -> str:
        """Compact re-ingestable form: ``u-v,...`` plus ``|w`` for isolated vertices."""
        s = ",".join(f"{u}-{v}" for u, v in self.edges)
        iso = self.isolated_vertices()
        if iso:
            s += "|" + ",".join(iso)
        return s

    @classmethod
    def from_digest(cls, digest: str) -> "Graph":
        body, _, iso = digest.partition("|")
        edges = [tuple(tok.split("-")) for tok in body.split(",") if tok]
        isolated = [v for v in iso.split(",") if v]
        order: dict[str, None] = {}
        for u, v in edges:
            order.setdefault(u)
            order.setdefault(v)
        for v in isolated:
            order.setdefault(v)
        return cls(order, edges)


# -- neighbourhood deletion, whiskers, joins ---------------------------


def delete_closed_neighborhood(g: Graph, s: Iterable[str]) -> Graph:
    """Induced subgraph on ``V \\ N[S]``."""
    return g.remove_vertices(g.closed_neighborhood(list(s)))


def whisker(g: Graph, suffix: str = "'") -> Graph:
    """Attach a pendant vertex ``v + suffix`` to every vertex ``v``."""
    pendants = [v + suffix for v in g.vertices]
    clash = set(pendants) & set(g.vertices)
    if clash:
        raise VertexNameCollision(f"pendant names collide: {sorted(clash)}")
    return Graph(list(g.vertices) + pendants, list(g.edges) + list(zip(g.vertices, pendants)))


def join(*graphs: Graph) -> Graph:
    """Disjoint union plus every edge between distinct parts."""
    seen: set[str] = set()
    verts: list[str] = []
    edges: list[tuple[str, str]] = []
    for g in graphs:
        clash = seen & set(g.vertices)
        if clash:
            raise VertexNameCollision(f"vertex names shared between join factors: {sorted(clash)}")
        for v in g.vertices:
            for w in verts:
                edges.append((w, v))
        seen.update(g.vertices)
        verts.extend(g.vertices)
        edges.extend(g.edges)
    return Graph(verts, edges)


def disjoint_relabel(g: Graph, prefix: str) -> Graph:
    return g.relabel({v: f"{prefix}{v}" for v in g.vertices})


# -- text format -----------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: ``u v`` per line, ``vertex name``, ``#`` comments."""
    order: dict[str, None] = {}
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if len(toks) != 2:
            raise ParseError(f"line {lineno}: expected two tokens, got {raw!r}")
        for t in toks:
            if not _TOKEN.match(t):
                raise ParseError(f"line {lineno}: bad vertex token {t!r}")
        if toks[0] == "vertex":
            order.setdefault(toks[1])
            continue
        u, v = toks
        if u == v:
            raise ParseError(f"line {lineno}: loop {u!r}")
        order.setdefault(u)
        order.setdefault(v)
        edges.append((u, v))
    try:
        return Graph(order, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_graph(g: Graph) -> str:
    """Inverse of ``parse_graph``; vertex order survives the round trip.

    ``vertex`` lines are emitted only when the edge list alone would not
    reproduce the vertex set and order.
    """
    implied: dict[str, None] = {}
    for u, v in g.edges:
        implied.setdefault(u)
        implied.setdefault(v)
    lines = [] if tuple(implied) == g.vertices else [f"vertex {v}" for v in g.vertices]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + ("\n" if lines else "")


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())
