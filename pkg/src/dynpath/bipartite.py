"""Dynamic bipartite subgraph via connectivity in the doubled graph.

Every vertex ``v`` gets two copies, ``2v`` (side 0) and ``2v + 1`` (side 1);
an edge ``uv`` becomes the two edges ``(2v, 2u+1)`` and ``(2v+1, 2u)``.  A walk
from ``v0`` to ``w0`` in the doubled graph projects to an even walk from ``v``
to ``w``, and a closed odd walk through ``v`` shows up as ``v0`` being
connected to ``v1``.
"""

from __future__ import annotations

from .connectivity import DynConnectivity
from .errors import DuplicateEdge, MissingEdge, SelfLoop
from .graph import Edge, Graph, InsertResult, edge


def copy0(v: int) -> int:
    return 2 * v


def copy1(v: int) -> int:
    return 2 * v + 1


class DynBipartite:
    def __init__(self, n: int) -> None:
        self.n = n
        self.graph = Graph(n)
        self.doubled = DynConnectivity(2 * n)

    def has_edge(self, u: int, v: int) -> bool:
        return self.graph.has_edge(u, v)

    def try_insert(self, u: int, v: int) -> InsertResult:
        """Insert ``uv`` unless that closes an odd cycle; leaves no trace when aborted."""
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        if self.graph.has_edge(u, v):
            raise DuplicateEdge(f"edge {edge(u, v)} already present")
        d = self.doubled
        d.insert(copy0(v), copy1(u))
        d.insert(copy1(v), copy0(u))
        # any new odd cycle must pass through v
        if d.connected(copy0(v), copy1(v)):
            d.delete(copy0(v), copy1(u))
            d.delete(copy1(v), copy0(u))
            return InsertResult.ABORTED
        self.graph.add_edge(u, v)
        return InsertResult.ACCEPTED

    def delete(self, u: int, v: int) -> None:
        if not self.graph.has_edge(u, v):
            raise MissingEdge(f"edge ({u}, {v}) not present")
        self.graph.remove_edge(u, v)
        self.doubled.delete(copy0(v), copy1(u))
        self.doubled.delete(copy1(v), copy0(u))

    def even_path(self, u: int, v: int) -> bool:
        self.graph.check_pair(u, v)
        return self.doubled.connected(copy0(u), copy0(v))

    def odd_path(self, u: int, v: int) -> bool:
        self.graph.check_pair(u, v)
        return self.doubled.connected(copy0(u), copy1(v))

    def edges(self) -> list[Edge]:
        return list(self.graph.edges())

    def check_invariants(self) -> None:
        expected = set()
        for u, v in self.graph.edges():
            expected.add(edge(copy0(v), copy1(u)))
            expected.add(edge(copy1(v), copy0(u)))
        d = self.doubled
        actual = {
            edge(x, y)
            for x in range(2 * self.n)
            for y in d.tree_adj[x] | d.nontree_adj[x]
        }
        assert actual == expected, "doubled graph out of sync with H"
        for v in range(self.n):
            assert not d.connected(copy0(v), copy1(v)), "H is not bipartite"
        d.check_invariants()
