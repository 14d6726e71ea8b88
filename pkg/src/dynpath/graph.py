"""Simple undirected graphs on a fixed vertex set ``0..n-1``."""

from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator

from .errors import DuplicateEdge, EqualEndpoints, MissingEdge, OutOfRange, SelfLoop

Edge = tuple[int, int]


class InsertResult(enum.Enum):
    """Outcome of an insertion that may be refused to protect an invariant."""

    ACCEPTED = "accepted"
    ABORTED = "aborted"

    def __bool__(self):
        return self is InsertResult.ACCEPTED


def edge(u: int, v: int) -> Edge:
    """Canonical form of the unordered pair ``{u, v}`` (smaller id first)."""
    if u == v:
        raise SelfLoop(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """Mutable simple undirected graph with dense integer vertex ids.

    Adjacency is kept as one ``set`` per vertex; ``sorted_neighbors`` gives
    the deterministic order used by traversals.
    """

    __slots__ = ("n", "adj", "edge_count")

    def __init__(self, n: int, edges: Iterable[Edge] = ()) -> None:
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.edge_count = 0
        for u, v in edges:
            self.add_edge(u, v)

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise OutOfRange(f"vertex {v} outside [0, {self.n})")

    def check_pair(self, u: int, v: int) -> None:
        self.check_vertex(u)
        self.check_vertex(v)
        if u == v:
            raise EqualEndpoints(f"query endpoints coincide ({u})")

    def add_edge(self, u: int, v: int) -> None:
        self.check_vertex(u)
        self.check_vertex(v)
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        if v in self.adj[u]:
            raise DuplicateEdge(f"edge {edge(u, v)} already present")
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.edge_count += 1

    def remove_edge(self, u: int, v: int) -> None:
        self.check_vertex(u)
        self.check_vertex(v)
        if u == v or v not in self.adj[u]:
            raise MissingEdge(f"edge ({u}, {v}) not present")
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.edge_count -= 1

    def has_edge(self, u: int, v: int) -> bool:
        self.check_vertex(u)
        self.check_vertex(v)
        return v in self.adj[u]

    def neighbors(self, v: int) -> set[int]:
        return self.adj[v]

    def sorted_neighbors(self, v: int) -> list[int]:
        return sorted(self.adj[v])

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> Iterator[Edge]:
        """Edges in canonical form, sorted."""
        for u in range(self.n):
            for v in sorted(self.adj[u]):
                if u < v:
                    yield (u, v)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges())

    def copy(self) -> Graph:
        g = Graph(self.n)
        g.adj = [set(a) for a in self.adj]
        g.edge_count = self.edge_count
        return g

    def subgraph(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph on ``vertices``, keeping the original ids."""
        keep = set(vertices)
        g = Graph(self.n)
        for u in keep:
            g.adj[u] = self.adj[u] & keep
        g.edge_count = sum(len(g.adj[u]) for u in keep) // 2
        return g

    def component(self, source: int) -> set[int]:
        seen = {source}
        stack = [source]
        while stack:
            x = stack.pop()
            for y in self.adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def is_symmetric(self) -> bool:
        degree_sum = 0
        for u in range(self.n):
            degree_sum += len(self.adj[u])
            for v in self.adj[u]:
                if v == u or u not in self.adj[v]:
                    return False
        return degree_sum == 2 * self.edge_count

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges())})"
