"""Subgraph of bounded treewidth with longest/shortest path queries."""

from __future__ import annotations

import math
from collections import deque
from functools import lru_cache

from ..errors import DuplicateEdge, MissingEdge, SelfLoop
from ..graph import Graph, InsertResult, edge
from .automaton import Variant, run_path_automaton
from .decomposition import TreeDecomposition, from_elimination_ordering
from .exact import DEFAULT_STATE_BUDGET, blocks, decompose_at_most, greedy_ordering


def block_with(adj, u: int, v: int) -> set[int]:
    """Vertex set of the block containing ``uv`` once the edge ``uv`` is present.

    ``adj`` is not modified.  Returns ``{u, v}`` when ``u`` and ``v`` are in
    different components (the edge would be a bridge).
    """
    comp = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in comp:
                comp.add(y)
                stack.append(y)
    if v not in comp:
        return {u, v}
    sub = {x: set(adj[x]) & comp for x in comp}
    sub[u].add(v)
    sub[v].add(u)
    found, _ = blocks(sub)
    return next(b for b in found if u in b and v in b)


class BoundedTwSubgraph:
    """Graph ``H`` kept at treewidth at most ``t``.

    Insertions that would push the treewidth above ``t`` are refused and
    leave ``H`` untouched.  A decomposition of width at most ``t`` is
    recomputed lazily after accepted insertions; deletions keep the current
    one, which stays valid.
    """

    def __init__(self, n: int, t: int, budget: int = DEFAULT_STATE_BUDGET) -> None:
        if t < 0:
            raise ValueError("treewidth bound must be non-negative")
        self.n = n
        self.t = t
        self.budget = budget
        self.graph = Graph(n)
        self._td: TreeDecomposition | None = None

    def has_edge(self, u: int, v: int) -> bool:
        return self.graph.has_edge(u, v)

    def try_insert(self, u: int, v: int) -> InsertResult:
        g = self.graph
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        if g.has_edge(u, v):
            raise DuplicateEdge(f"edge {edge(u, v)} already present")
        if self.t == 0:
            return InsertResult.ABORTED
        # treewidth is the maximum over blocks; only the block of uv changes
        block = block_with(g.adj, u, v)
        if len(block) > self.t + 1:
            sub = {x: g.adj[x] & block for x in block}
            sub[u].add(v)
            sub[v].add(u)
            if decompose_at_most(sub, self.t, budget=self.budget) is None:
                return InsertResult.ABORTED
        g.add_edge(u, v)
        self._td = None
        return InsertResult.ACCEPTED

    def delete(self, u: int, v: int) -> None:
        if not self.graph.has_edge(u, v):
            raise MissingEdge(f"edge ({u}, {v}) not present")
        self.graph.remove_edge(u, v)

    def decomposition(self) -> TreeDecomposition:
        if self._td is None:
            td = decompose_at_most(self.graph, self.t, budget=self.budget)
            if td is None:
                raise AssertionError("maintained subgraph exceeded its treewidth bound")
            self._td = td
        return self._td

    def relevant_part(self, u: int, v: int) -> set[int]:
        """Vertices on some ``(u, v)``-path of ``H``, plus ``u`` and ``v``."""
        return block_with(self.graph.adj, u, v)

    def boundary_query(self, u: int, v: int, variant: Variant = Variant.MAX) -> float:
        """Longest (MAX) or shortest (MIN) ``(u, v)``-path length in ``H``.

        Returns ``-inf`` / ``+inf`` when ``u`` and ``v`` are disconnected.
        """
        self.graph.check_pair(u, v)
        part = self.relevant_part(u, v)
        if part == {u, v} and not self.graph.has_edge(u, v):
            return variant.absent
        sub = {x: self.graph.adj[x] & part for x in part}
        edges = frozenset((x, y) for x in part for y in sub[x] if x < y)
        a, b = min(u, v), max(u, v)
        width, value = _greedy_boundary_query(edges, a, b, variant)
        if width <= self.t:
            return value
        # the heuristic overshot t; use the exact search for a witness
        td = decompose_at_most(sub, self.t, budget=self.budget)
        if td is None:
            raise AssertionError("maintained subgraph exceeded its treewidth bound")
        td = td.with_vertices((u, v))
        state = run_path_automaton(sub, td, (u, v), variant,
                                   max_width=self.t + 2, degree_cap={u: 1, v: 1})
        return state.path_length(u, v)

    def longest_path(self, u: int, v: int) -> float:
        return self.boundary_query(u, v, Variant.MAX)

    def shortest_path(self, u: int, v: int) -> float:
        """Same value as ``boundary_query(u, v, Variant.MIN)``, by BFS."""
        self.graph.check_pair(u, v)
        dist = {u: 0}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if x == v:
                return dist[x]
            for y in self.graph.adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return math.inf


@lru_cache(maxsize=1 << 16)
def _greedy_boundary_query(edges: frozenset, u: int, v: int, variant: Variant) -> tuple[int, float]:
    """``(greedy width, path length)`` for the block spanned by ``edges``.

    A pure function of its arguments, so results are shared between
    structures (and thresholds) that happen to hold the same block.
    """
    adj: dict[int, set[int]] = {u: set(), v: set()}
    for x, y in edges:
        adj.setdefault(x, set()).add(y)
        adj.setdefault(y, set()).add(x)
    # the part is one block, so an ordering needs no gluing across cut vertices
    width, order = greedy_ordering(adj)
    td = from_elimination_ordering(adj, order).with_vertices((u, v))
    state = run_path_automaton(adj, td, (u, v), variant, degree_cap={u: 1, v: 1})
    return width, state.path_length(u, v)


def finite(x: float) -> bool:
    return not math.isinf(x)
