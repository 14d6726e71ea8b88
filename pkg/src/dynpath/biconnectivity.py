"""Dynamic biconnectivity with marked edges.

Blocks (biconnected components, as an equivalence relation on edges) live in
a :class:`BlockIndex` that is updated locally:

* inserting ``uv`` inside a block extends that block,
* inserting a bridge between two components adds a one-edge block,
* inserting ``uv`` inside a component merges the blocks on the block-cut
  tree path from ``u`` to ``v`` into one,
* deleting an edge only reshapes its own block, which is re-split by a DFS
  over that block alone (a deleted bridge also splits its component).

Deleting the edge added by the immediately preceding insertion (the helper
edge pattern of the query engines) reverts that insertion directly.

Marks are a plain set of edges; each block keeps the subset of marks that
falls inside it so ``find_marked_edge`` never scans the whole graph.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping

from .errors import AlreadyMarked, EqualEndpoints, MissingEdge, NotMarked
from .graph import Edge, Graph, edge


def _tarjan(adj: Mapping[int, Iterable[int]], roots: Iterable[int]):
    """Yield ``(members, blocks)`` for each component reached from ``roots``.

    ``blocks`` is a list of canonical edge lists.  Iterative, so deep graphs
    are fine.
    """
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    time = 0
    for root in roots:
        if root in disc:
            continue
        disc[root] = low[root] = time
        time += 1
        members = [root]
        blocks = []
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w not in disc:
                    disc[w] = low[w] = time
                    time += 1
                    members.append(w)
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            if low[v] < low[parent]:
                low[parent] = low[v]
            if low[v] >= disc[parent]:
                block = []
                while True:
                    a, b = edge_stack.pop()
                    block.append(edge(a, b))
                    if a == parent and b == v:
                        break
                blocks.append(block)
        yield members, blocks


class BlockIndex:
    """Block decomposition plus connected components of a graph."""

    __slots__ = ("n", "edge_block", "block_edges", "vertex_blocks", "comp", "comp_members",
                 "block_marked", "_next", "_next_comp")

    def __init__(self, n: int) -> None:
        self.n = n
        self.edge_block: dict[Edge, int] = {}
        self.block_edges: dict[int, set[Edge]] = {}
        self.vertex_blocks: list[set[int]] = [set() for _ in range(n)]
        # component labels are opaque; fresh ones are drawn from _next_comp
        self.comp = list(range(n))
        self.comp_members: dict[int, set[int]] = {v: {v} for v in range(n)}
        self.block_marked: dict[int, set[Edge]] = {}
        self._next = 0
        self._next_comp = n

    @classmethod
    def build(cls, g: Graph, marks: Iterable[Edge] = ()) -> BlockIndex:
        idx = cls(g.n)
        roots = [v for v in range(g.n) if g.adj[v]]
        for members, blocks in _tarjan(g.adj, roots):
            root = members[0]
            for w in members[1:]:
                idx.comp[w] = root
                del idx.comp_members[w]
            idx.comp_members[root] = set(members)
            for block in blocks:
                idx._add_block(block)
        for e in marks:
            idx._register_mark(e)
        return idx

    def _add_block(self, edges, marks: set[Edge] | None = None) -> int:
        bid = self._next
        self._next += 1
        self.block_edges[bid] = set(edges)
        for e in edges:
            self.edge_block[e] = bid
            self.vertex_blocks[e[0]].add(bid)
            self.vertex_blocks[e[1]].add(bid)
        if marks:
            hit = marks & self.block_edges[bid]
            if hit:
                self.block_marked[bid] = hit
        return bid

    def _remove_block(self, bid) -> set[Edge]:
        edges = self.block_edges.pop(bid)
        for e in edges:
            del self.edge_block[e]
            self.vertex_blocks[e[0]].discard(bid)
            self.vertex_blocks[e[1]].discard(bid)
        self.block_marked.pop(bid, None)
        return edges

    def _register_mark(self, e) -> None:
        self.block_marked.setdefault(self.edge_block[e], set()).add(e)

    def _unregister_mark(self, e) -> None:
        bid = self.edge_block[e]
        s = self.block_marked[bid]
        s.discard(e)
        if not s:
            del self.block_marked[bid]

    def common_block(self, u: int, v: int) -> int | None:
        common = self.vertex_blocks[u] & self.vertex_blocks[v]
        # two distinct blocks share at most one vertex
        return next(iter(common)) if common else None

    def block_path(self, u: int, v: int) -> list[int]:
        """Blocks on the block-cut tree path between connected ``u`` and ``v``."""
        via: dict[int, tuple[int, int] | None] = {u: None}
        seen_blocks: set[int] = set()
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if x == v:
                break
            for b in self.vertex_blocks[x]:
                if b in seen_blocks:
                    continue
                seen_blocks.add(b)
                for e in self.block_edges[b]:
                    for y in e:
                        if y not in via:
                            via[y] = (x, b)
                            queue.append(y)
        path = []
        x = v
        while via[x] is not None:
            x, b = via[x]
            path.append(b)
        return path

    def _split_component(self, u: int, v: int, g: Graph) -> None:
        """``u`` and ``v`` just lost their only connection: relabel the smaller side."""
        sides = [{u}, {v}]
        queues = [deque([u]), deque([v])]
        # lockstep BFS; the first side to run out is the smaller one
        while True:
            for i in (0, 1):
                q = queues[i]
                if not q:
                    small = sides[i]
                    label = self._next_comp
                    self._next_comp += 1
                    old = self.comp[u]
                    self.comp_members[old] -= small
                    self.comp_members[label] = small
                    for x in small:
                        self.comp[x] = label
                    return
                x = q.popleft()
                for y in g.adj[x]:
                    if y not in sides[i]:
                        sides[i].add(y)
                        q.append(y)

    def rebuild_marks(self, marks: set[Edge]) -> None:
        self.block_marked = {}
        for e in marks:
            self._register_mark(e)


class MarkedBiconnectivity:
    """Fully dynamic graph with block queries and a per-edge mark bit."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.graph = Graph(n)
        self.marks: set[Edge] = set()
        self._index = BlockIndex(n)
        # how to revert the latest insertion: (edge, kind, payload)
        self._undo = None

    # -- updates --------------------------------------------------------------

    def insert(self, u: int, v: int) -> None:
        self.graph.add_edge(u, v)
        e = edge(u, v)
        idx = self._index
        bid = idx.common_block(u, v)
        if bid is not None:
            idx.block_edges[bid].add(e)
            idx.edge_block[e] = bid
            self._undo = (e, "same-block", bid)
        elif idx.comp[u] != idx.comp[v]:
            cu, cv = idx.comp[u], idx.comp[v]
            if len(idx.comp_members[cu]) < len(idx.comp_members[cv]):
                cu, cv = cv, cu
            moved = idx.comp_members.pop(cv)
            for x in moved:
                idx.comp[x] = cu
            idx.comp_members[cu] |= moved
            bid = idx._add_block([e])
            self._undo = (e, "bridge", (bid, cu, cv, moved))
        else:
            old = [idx._remove_block(b) for b in idx.block_path(u, v)]
            merged = set().union(*old)
            merged.add(e)
            bid = idx._add_block(merged, self.marks)
            self._undo = (e, "merge", (bid, old))

    def delete(self, u: int, v: int) -> None:
        self.graph.remove_edge(u, v)
        e = edge(u, v)
        idx = self._index
        if e in self.marks:
            self.marks.discard(e)
            idx._unregister_mark(e)
        undo, self._undo = self._undo, None
        if undo is not None and undo[0] == e:
            self._revert(e, undo[1], undo[2])
            return
        bid = idx.edge_block[e]
        edges = idx._remove_block(bid)
        edges.discard(e)
        if not edges:
            self._index._split_component(u, v, self.graph)
            return
        adj: dict[int, list[int]] = {}
        for a, b in edges:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        for _, blocks in _tarjan(adj, sorted(adj)):
            for block in blocks:
                idx._add_block(block, self.marks)

    def _revert(self, e, kind, payload) -> None:
        idx = self._index
        if kind == "same-block":
            idx.block_edges[payload].discard(e)
            del idx.edge_block[e]
        elif kind == "bridge":
            bid, cu, cv, moved = payload
            idx._remove_block(bid)
            idx.comp_members[cu] -= moved
            idx.comp_members[cv] = moved
            for x in moved:
                idx.comp[x] = cv
        else:
            bid, old = payload
            idx._remove_block(bid)
            # marks may have changed since the merge
            for edges in old:
                idx._add_block(edges, self.marks)

    def mark(self, u: int, v: int) -> None:
        e = self._existing(u, v)
        if e in self.marks:
            raise AlreadyMarked(f"edge {e} already marked")
        self.marks.add(e)
        self._index._register_mark(e)

    def unmark(self, u: int, v: int) -> None:
        e = self._existing(u, v)
        if e not in self.marks:
            raise NotMarked(f"edge {e} is not marked")
        self.marks.discard(e)
        self._index._unregister_mark(e)

    # -- queries --------------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return self.graph.has_edge(u, v)

    def is_marked(self, u: int, v: int) -> bool:
        return edge(u, v) in self.marks

    def is_biconnected(self, u: int, v: int) -> bool:
        self.graph.check_pair(u, v)
        return self._index.common_block(u, v) is not None

    def find_marked_edge(self, u: int, v: int) -> Edge | None:
        """Smallest marked edge in the block of ``uv`` (which must be an edge)."""
        e = self._existing(u, v)
        idx = self._index
        marked = idx.block_marked.get(idx.edge_block[e])
        return min(marked) if marked else None

    def block_of(self, u: int, v: int) -> set[Edge]:
        e = self._existing(u, v)
        idx = self._index
        return set(idx.block_edges[idx.edge_block[e]])

    def blocks(self) -> list[list[Edge]]:
        return sorted(sorted(b) for b in self._index.block_edges.values())

    def index(self) -> BlockIndex:
        return self._index

    def _existing(self, u, v) -> Edge:
        if u == v:
            raise EqualEndpoints(f"edge endpoints coincide ({u})")
        if not self.graph.has_edge(u, v):
            raise MissingEdge(f"edge ({u}, {v}) not present")
        return edge(u, v)

    def check_invariants(self) -> None:
        assert self.marks <= self.graph.edge_set()
        idx = self._index
        fresh = BlockIndex.build(self.graph, self.marks)
        ours = sorted(sorted(b) for b in idx.block_edges.values())
        theirs = sorted(sorted(b) for b in fresh.block_edges.values())
        assert ours == theirs, "block index out of date"
        assert set(idx.edge_block) == self.graph.edge_set()
        for bid, marked in idx.block_marked.items():
            assert marked == self.marks & idx.block_edges[bid]
        assert sum(len(m) for m in idx.block_marked.values()) == len(self.marks)
        for x in range(self.n):
            assert x in idx.comp_members[idx.comp[x]]
            assert all(idx.comp[x] == idx.comp[y] for y in self.graph.adj[x])
        assert sum(len(m) for m in idx.comp_members.values()) == self.n
