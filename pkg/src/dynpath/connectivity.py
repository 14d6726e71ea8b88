"""Fully dynamic connectivity with a spanning forest and replacement search.

The forest is stored explicitly (tree edges vs. non-tree edges).  Deleting a
tree edge explores the two halves of the split tree in lockstep, so only the
smaller half is ever fully traversed; that half is then scanned for a
non-tree edge leaving it.  Merges relabel the smaller component.  This gives
O(size of the smaller side) work per structural change, which is plenty at
the sizes this package targets.
"""

from __future__ import annotations

from collections import deque

from .errors import DuplicateEdge, MissingEdge, OutOfRange, SelfLoop
from .graph import edge


class DynConnectivity:
    def __init__(self, n: int) -> None:
        self.n = n
        self.tree_adj: list[set[int]] = [set() for _ in range(n)]
        self.nontree_adj: list[set[int]] = [set() for _ in range(n)]
        self.label = list(range(n))
        self.members: dict[int, set[int]] = {v: {v} for v in range(n)}
        self._next_label = n

    def _check(self, v):
        if not 0 <= v < self.n:
            raise OutOfRange(f"vertex {v} outside [0, {self.n})")

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return v in self.tree_adj[u] or v in self.nontree_adj[u]

    def is_tree_edge(self, u: int, v: int) -> bool:
        return v in self.tree_adj[u]

    def insert(self, u: int, v: int) -> None:
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        if self.has_edge(u, v):
            raise DuplicateEdge(f"edge {edge(u, v)} already present")
        lu, lv = self.label[u], self.label[v]
        if lu == lv:
            self.nontree_adj[u].add(v)
            self.nontree_adj[v].add(u)
            return
        self.tree_adj[u].add(v)
        self.tree_adj[v].add(u)
        if len(self.members[lu]) < len(self.members[lv]):
            lu, lv = lv, lu
        moved = self.members.pop(lv)
        for x in moved:
            self.label[x] = lu
        self.members[lu] |= moved

    def delete(self, u: int, v: int) -> None:
        if u == v or not self.has_edge(u, v):
            raise MissingEdge(f"edge ({u}, {v}) not present")
        if v in self.nontree_adj[u]:
            self.nontree_adj[u].discard(v)
            self.nontree_adj[v].discard(u)
            return
        self.tree_adj[u].discard(v)
        self.tree_adj[v].discard(u)
        side = self._smaller_side(u, v)
        for x in side:
            for y in self.nontree_adj[x]:
                if y not in side:
                    self.nontree_adj[x].discard(y)
                    self.nontree_adj[y].discard(x)
                    self.tree_adj[x].add(y)
                    self.tree_adj[y].add(x)
                    return
        old = self.label[u]
        new = self._next_label
        self._next_label += 1
        self.members[old] -= side
        self.members[new] = side
        for x in side:
            self.label[x] = new

    def _smaller_side(self, a, b):
        """Vertex set of the smaller of the two trees containing ``a``, ``b``."""
        seen = ({a}, {b})
        queues = (deque([a]), deque([b]))
        while True:
            for i in (0, 1):
                q = queues[i]
                if not q:
                    return seen[i]
                x = q.popleft()
                for y in self.tree_adj[x]:
                    if y not in seen[i]:
                        seen[i].add(y)
                        q.append(y)

    def connected(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return self.label[u] == self.label[v]

    def representative(self, v: int) -> int:
        """Canonical component representative: the minimum vertex id."""
        self._check(v)
        return min(self.members[self.label[v]])

    def components(self) -> list[list[int]]:
        return sorted(sorted(m) for m in self.members.values())

    def edge_count(self) -> int:
        return sum(len(a) + len(b) for a, b in zip(self.tree_adj, self.nontree_adj)) // 2

    def check_invariants(self) -> None:
        """Assert the forest spans exactly the components of the stored graph."""
        for x in range(self.n):
            assert not (self.tree_adj[x] & self.nontree_adj[x])
            for y in self.tree_adj[x] | self.nontree_adj[x]:
                assert self.label[x] == self.label[y]
        for lab, mem in self.members.items():
            root = next(iter(mem))
            seen = {root}
            stack = [root]
            while stack:
                x = stack.pop()
                for y in self.tree_adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            assert seen == mem, "tree edges must span each component"
            tree_edges = sum(len(self.tree_adj[x]) for x in mem) // 2
            assert tree_edges == len(mem) - 1, "forest must be acyclic"
            assert all(self.label[x] == lab for x in mem)
