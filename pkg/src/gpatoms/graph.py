"""Finite simple graphs: induced subgraphs, cliques, complements and join factors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    Vertex order is the order given at construction and is used for every
    deterministic output (clique lists, canonical words, factor order).
    """

    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def __init__(self, vertices: Iterable, edges: Iterable = ()):
        vs = tuple(str(v) for v in vertices)
        if len(set(vs)) != len(vs):
            raise DomainError(f"duplicate vertex in {list(vs)}")
        known = set(vs)
        es = set()
        for e in edges:
            pair = tuple(str(v) for v in e)
            if len(pair) != 2:
                raise DomainError(f"edge {list(pair)} must have exactly two endpoints")
            u, v = pair
            if u == v:
                raise DomainError(f"self-loop at vertex {u!r}")
            for w in pair:
                if w not in known:
                    raise DomainError(f"edge endpoint {w!r} is not a declared vertex")
            es.add(frozenset(pair))
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", frozenset(es))
        adj = {v: set() for v in vs}
        for e in es:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", {v: frozenset(n) for v, n in adj.items()})
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(vs)})

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self._index

    def __repr__(self) -> str:
        edges = sorted(tuple(sorted(e, key=self.index)) for e in self.edges)
        return f"Graph({list(self.vertices)}, {edges})"

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise DomainError(f"unknown vertex {v!r}") from None

    def adjacent(self, u: str, v: str) -> bool:
        return v in self._adj[u]

    def neighbors(self, v: str) -> frozenset[str]:
        self.index(v)
        return self._adj[v]

    def is_clique(self, vs: Iterable[str]) -> bool:
        vs = list(vs)
        return all(self.adjacent(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])

    def is_complete(self) -> bool:
        n = len(self.vertices)
        return len(self.edges) == n * (n - 1) // 2

    def sort_key(self, vs: Iterable[str]) -> tuple[int, ...]:
        return tuple(sorted(self.index(v) for v in vs))

    def induced_subgraph(self, vs: Iterable[str]) -> Graph:
        return induced_subgraph(self, vs)

    def complement(self) -> Graph:
        vs = self.vertices
        return Graph(vs, [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]
                          if not self.adjacent(a, b)])

    def join(self, other: Graph) -> Graph:
        """Disjoint union with every cross edge added."""
        if set(self.vertices) & set(other.vertices):
            raise DomainError("join requires disjoint vertex sets")
        cross = [(a, b) for a in self.vertices for b in other.vertices]
        return Graph(self.vertices + other.vertices,
                     [tuple(e) for e in self.edges] + [tuple(e) for e in other.edges] + cross)

    def connected_components(self) -> list[tuple[str, ...]]:
        seen: set[str] = set()
        comps = []
        for root in self.vertices:
            if root in seen:
                continue
            seen.add(root)
            stack, comp = [root], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self._adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(tuple(sorted(comp, key=self.index)))
        return comps

    def to_json(self) -> dict:
        edges = sorted((sorted(e, key=self.index) for e in self.edges),
                       key=lambda e: (self.index(e[0]), self.index(e[1])))
        return {"vertices": list(self.vertices), "edges": edges}


def complete_graph(vertices: Sequence) -> Graph:
    vs = [str(v) for v in vertices]
    return Graph(vs, [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]])


def edgeless_graph(vertices: Sequence) -> Graph:
    return Graph(vertices)


def path_graph(vertices: Sequence) -> Graph:
    vs = [str(v) for v in vertices]
    return Graph(vs, list(zip(vs, vs[1:])))


def induced_subgraph(g: Graph, vs: Iterable[str]) -> Graph:
    keep = set(vs)
    for v in keep:
        g.index(v)
    order = [v for v in g.vertices if v in keep]
    return Graph(order, [tuple(e) for e in g.edges if e <= keep])


def neighborhood_subgraph(g: Graph, j: str) -> Graph:
    """Subgraph induced on the neighbours of ``j`` (``j`` itself excluded)."""
    return induced_subgraph(g, g.neighbors(j))


def enumerate_cliques(g: Graph) -> list[tuple[str, ...]]:
    """All cliques of ``g``, including the empty one.

    Each clique is a tuple in vertex order; the list is sorted
    lexicographically by vertex index, which is exactly the preorder of the
    recursive extension below.
    """
    vs = g.vertices
    out: list[tuple[str, ...]] = []

    def extend(clique: tuple[str, ...], candidates: list[int]) -> None:
        out.append(clique)
        for pos, i in enumerate(candidates):
            v = vs[i]
            rest = [k for k in candidates[pos + 1:] if g.adjacent(v, vs[k])]
            extend(clique + (v,), rest)

    extend((), list(range(len(vs))))
    return out


def join_decomposition(g: Graph) -> list[Graph]:
    """Join-irreducible factors of ``g`` (connected components of the complement)."""
    if not g.vertices:
        return []
    return [induced_subgraph(g, comp) for comp in g.complement().connected_components()]


def is_join_irreducible(g: Graph) -> bool:
    return len(join_decomposition(g)) == 1
