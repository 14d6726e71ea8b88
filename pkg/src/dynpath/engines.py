"""Dynamic (s, t)-path query engines built on delayed edge insertion.

Each engine keeps the full graph ``G`` in a :class:`MarkedBiconnectivity`
structure and a subgraph ``H`` in an inner structure that protects some
invariant (bounded treewidth, or bipartiteness).  An edge whose insertion
into ``H`` is refused stays marked in ``G``.  A query on ``(s, t)`` adds a
temporary unmarked helper edge ``st`` if needed, so that the block of ``st``
is exactly the part of ``G`` lying on ``(s, t)``-paths, and then moves the
marked edges of that block into ``H`` one at a time.  Either all of them
fit, and ``H`` answers the query exactly, or one is refused, and the refusal
itself certifies a positive answer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .biconnectivity import MarkedBiconnectivity
from .bipartite import DynBipartite
from .errors import DuplicateEdge, MissingEdge
from .graph import Edge, edge
from .treewidth.bounded import BoundedTwSubgraph


@dataclass
class EngineStats:
    inserts: int = 0
    deletes: int = 0
    queries: int = 0
    marks_created: int = 0
    marks_consumed: int = 0
    query_try_inserts: int = 0
    abort_answers: int = 0


class _DelayedInsertionEngine:
    def __init__(self, n: int) -> None:
        self.n = n
        self.bc = MarkedBiconnectivity(n)
        self.stats = EngineStats()
        # set by the last query that answered through a refused insertion
        self.last_answer_from_abort = False

    # the inner structure; subclasses provide it as ``self.inner``
    inner: BoundedTwSubgraph | DynBipartite

    @property
    def graph(self):
        return self.bc.graph

    def has_edge(self, u: int, v: int) -> bool:
        return self.bc.has_edge(u, v)

    def marked_edges(self) -> set[Edge]:
        return set(self.bc.marks)

    def h_edges(self) -> set[Edge]:
        return set(self.inner.graph.edges())

    def insert(self, u: int, v: int) -> None:
        if self.bc.has_edge(u, v):
            raise DuplicateEdge(f"edge {edge(u, v)} already present")
        self.bc.insert(u, v)
        if not self.inner.try_insert(u, v):
            self.bc.mark(u, v)
            self.stats.marks_created += 1
        self.stats.inserts += 1

    def delete(self, u: int, v: int) -> None:
        if not self.bc.has_edge(u, v):
            raise MissingEdge(f"edge ({u}, {v}) not present")
        self.bc.delete(u, v)
        # marked edges never reached H
        if self.inner.has_edge(u, v):
            self.inner.delete(u, v)
        self.stats.deletes += 1

    def _saturate(self, s: int, t: int) -> bool:
        """Move marked edges of the block of ``st`` into ``H``.

        Returns False as soon as one is refused, True once none are left.
        The helper edge is removed on every exit path.
        """
        self.graph.check_pair(s, t)
        self.stats.queries += 1
        self.last_answer_from_abort = False
        helper = not self.bc.has_edge(s, t)
        if helper:
            self.bc.insert(s, t)
        try:
            while True:
                e = self.bc.find_marked_edge(s, t)
                if e is None:
                    return True
                self.stats.query_try_inserts += 1
                if not self.inner.try_insert(*e):
                    self.stats.abort_answers += 1
                    self.last_answer_from_abort = True
                    return False
                self.bc.unmark(*e)
                self.stats.marks_consumed += 1
        finally:
            if helper:
                self.bc.delete(s, t)

    def check_invariants(self) -> None:
        g_edges = self.graph.edge_set()
        h = self.h_edges()
        assert h <= g_edges, "H must be a subgraph of G"
        assert self.bc.marks == g_edges - h, "marked edges must be exactly E(G) minus E(H)"
        assert self.stats.marks_consumed <= self.stats.marks_created


class LongPathEngine(_DelayedInsertionEngine):
    """Is there an ``(s, t)``-path of length at least ``k``?"""

    def __init__(self, n: int, k: int, *, _threshold: int | None = None) -> None:
        if k < 1:
            raise ValueError("k must be at least 1")
        super().__init__(n)
        self.k = k
        # _threshold exists only for fault-injection tests
        self._t = 2 * k if _threshold is None else _threshold
        self.inner = BoundedTwSubgraph(n, self._t)

    @property
    def threshold(self) -> int:
        return self._t

    def query(self, s: int, t: int) -> bool:
        if not self._saturate(s, t):
            return True
        return self.inner.longest_path(s, t) >= self.k


class LongDetourEngine(_DelayedInsertionEngine):
    """Is there an ``(s, t)``-path of length at least ``dist(s, t) + k``?"""

    def __init__(self, n: int, k: int, *, _threshold: int | None = None) -> None:
        if k < 1:
            raise ValueError("k must be at least 1")
        super().__init__(n)
        self.k = k
        self._t = 32 * k + 47 if _threshold is None else _threshold
        self.inner = BoundedTwSubgraph(n, self._t)

    @property
    def threshold(self) -> int:
        return self._t

    def query(self, s: int, t: int) -> bool:
        if not self._saturate(s, t):
            return True
        longest = self.inner.longest_path(s, t)
        if longest < 0:
            return False
        return longest - self.inner.shortest_path(s, t) >= self.k


class ParityEngine(_DelayedInsertionEngine):
    """Is there an ``(s, t)``-path of even (odd) length?"""

    def __init__(self, n: int) -> None:
        super().__init__(n)
        self.inner = DynBipartite(n)

    def even_path(self, s: int, t: int) -> bool:
        if not self._saturate(s, t):
            return True
        return self.inner.even_path(s, t)

    def odd_path(self, s: int, t: int) -> bool:
        if not self._saturate(s, t):
            return True
        return self.inner.odd_path(s, t)
