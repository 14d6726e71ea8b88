"""Rooted tree decompositions and their nice normal form."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from ..graph import Edge, Graph, edge

Adjacency = Mapping[int, set[int]]


@dataclass
class TreeDecomposition:
    """Bags indexed ``0..len(bags)-1``; ``parent[root] == -1``."""

    bags: list[frozenset[int]] = field(default_factory=list)
    parent: list[int] = field(default_factory=list)

    @property
    def root(self) -> int:
        roots = [i for i, p in enumerate(self.parent) if p == -1]
        if len(roots) != 1:
            raise ValueError(f"expected exactly one root, found {len(roots)}")
        return roots[0]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def vertices(self) -> set[int]:
        return set().union(*self.bags) if self.bags else set()

    def children(self) -> list[list[int]]:
        ch: list[list[int]] = [[] for _ in self.bags]
        for i, p in enumerate(self.parent):
            if p != -1:
                ch[p].append(i)
        return ch

    def add_node(self, bag: Iterable[int], parent: int) -> int:
        self.bags.append(frozenset(bag))
        self.parent.append(parent)
        return len(self.bags) - 1

    def reroot(self, new_root: int) -> None:
        path = []
        x = new_root
        while x != -1:
            path.append(x)
            x = self.parent[x]
        for child, par in zip(path, path[1:]):
            self.parent[par] = child
        self.parent[new_root] = -1

    def graft(self, other: TreeDecomposition, at: int, other_node: int) -> None:
        """Attach ``other`` (rerooted at ``other_node``) below node ``at``."""
        other = other.copy()
        other.reroot(other_node)
        offset = len(self.bags)
        self.bags.extend(other.bags)
        for p in other.parent:
            self.parent.append(at if p == -1 else p + offset)

    def copy(self) -> TreeDecomposition:
        return TreeDecomposition(list(self.bags), list(self.parent))

    def with_vertices(self, extra: Iterable[int]) -> TreeDecomposition:
        """Same tree with ``extra`` added to every bag (width grows by at most ``len(extra)``)."""
        extra = frozenset(extra)
        if not self.bags:
            return TreeDecomposition([extra], [-1])
        return TreeDecomposition([b | extra for b in self.bags], list(self.parent))

    def restricted(self, keep: Iterable[int]) -> TreeDecomposition:
        keep = frozenset(keep)
        return TreeDecomposition([b & keep for b in self.bags], list(self.parent))

    def bag_containing(self, vertices: Iterable[int]) -> int | None:
        need = frozenset(vertices)
        for i, b in enumerate(self.bags):
            if need <= b:
                return i
        return None

    def dumps(self) -> str:
        """Debug dump, one ``B <id> <parent> : v1 v2 ...`` line per node."""
        lines = []
        for i, (b, p) in enumerate(zip(self.bags, self.parent)):
            lines.append(f"B {i} {p} : " + " ".join(map(str, sorted(b))))
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> TreeDecomposition:
        rows = []
        for line in text.splitlines():
            if not line.strip():
                continue
            head, _, tail = line.partition(":")
            tag, i, p = head.split()
            if tag != "B":
                raise ValueError(f"bad decomposition line {line!r}")
            rows.append((int(i), int(p), frozenset(int(x) for x in tail.split())))
        rows.sort()
        if [r[0] for r in rows] != list(range(len(rows))):
            raise ValueError("node ids must be 0..N-1")
        return cls([r[2] for r in rows], [r[1] for r in rows])


def _is_tree(td: TreeDecomposition) -> bool:
    m = len(td.bags)
    if m == 0 or len(td.parent) != m:
        return False
    roots = [i for i, p in enumerate(td.parent) if p == -1]
    if len(roots) != 1:
        return False
    if any(not (-1 <= p < m) or p == i for i, p in enumerate(td.parent)):
        return False
    children = td.children()
    seen = {roots[0]}
    stack = [roots[0]]
    while stack:
        x = stack.pop()
        for c in children[x]:
            if c in seen:
                return False
            seen.add(c)
            stack.append(c)
    return len(seen) == m


def is_valid_decomposition(g: Graph, td: TreeDecomposition, vertices: Iterable[int] | None = None) -> bool:
    """Check the two decomposition conditions for ``g`` (or ``g[vertices]``).

    (i) every vertex occurs in a non-empty, connected set of bags;
    (ii) every edge has both endpoints together in some bag.
    """
    verts = set(range(g.n)) if vertices is None else set(vertices)
    if not _is_tree(td):
        return not verts and not td.bags
    if not td.vertices() <= verts:
        return False
    for v in verts:
        nodes = {i for i, b in enumerate(td.bags) if v in b}
        if not nodes:
            return False
        # occurrences are connected iff exactly one of them has its parent outside
        tops = [i for i in nodes if td.parent[i] not in nodes]
        if len(tops) != 1:
            return False
    for u in verts:
        for v in g.adj[u]:
            if u < v and v in verts and td.bag_containing((u, v)) is None:
                return False
    return True


def from_elimination_ordering(adj: Adjacency, order: list[int]) -> TreeDecomposition:
    """Decomposition whose bags are ``{v} + later neighbours of v`` in the filled graph."""
    position = {v: i for i, v in enumerate(order)}
    if set(position) != set(adj):
        raise ValueError("ordering must list every vertex exactly once")
    work = {v: set(adj[v]) for v in adj}
    later: dict[int, set[int]] = {}
    for v in order:
        nbrs = work.pop(v)
        later[v] = nbrs
        for a in nbrs:
            work[a].discard(v)
            work[a] |= nbrs - {a}
    td = TreeDecomposition()
    node = {}
    for v in order:
        node[v] = td.add_node({v} | later[v], -1)
    last_root = -1
    for v in order:
        if later[v]:
            td.parent[node[v]] = node[min(later[v], key=position.__getitem__)]
        else:
            if last_root != -1:
                td.parent[last_root] = node[v]
            last_root = node[v]
    return td


def edges_within(g: Graph | Adjacency, vertices: Iterable[int]) -> list[Edge]:
    adj = g.adj if isinstance(g, Graph) else g
    vs = set(vertices)
    return sorted({edge(u, v) for u in vs for v in adj[u] if v in vs})


# -- nice normal form ---------------------------------------------------------
#
# A nice program is a post-order instruction list for a stack machine:
#   ("leaf",)           push an empty bag
#   ("introduce", v)    add isolated v to the top bag
#   ("edge", u, v)      introduce edge uv (both endpoints in the top bag)
#   ("forget", v)       drop v from the top bag
#   ("join",)           merge the two topmost entries (equal bags)
# Each edge of the decomposed graph is introduced exactly once, immediately
# before the first of its endpoints is forgotten, which keeps partial
# solutions small.


def nice_program(g: Graph | Adjacency, td: TreeDecomposition, keep: Iterable[int] = ()) -> list[tuple]:
    """Instructions evaluating ``td`` bottom-up, ending with the bag ``keep``.

    The decomposed graph is the subgraph of ``g`` induced by the vertices of
    ``td``.  Every vertex of ``keep`` must lie in the root bag.
    """
    adj = g.adj if isinstance(g, Graph) else g
    keep = frozenset(keep)
    covered = td.vertices()
    if not td.bags:
        if keep:
            raise ValueError("boundary vertices missing from decomposition")
        return [("leaf",)]
    root = td.root
    if not keep <= td.bags[root]:
        raise ValueError("boundary vertices must be in the root bag")
    children = td.children()
    prog: list[tuple] = []
    done: set[Edge] = set()

    def forget(v, bag):
        for w in sorted(adj[v]):
            if w in bag and w in covered:
                e = edge(v, w)
                if e not in done:
                    done.add(e)
                    prog.append(("edge",) + e)
        prog.append(("forget", v))
        bag.discard(v)

    # frames are (node, number of children already emitted)
    stack = [(root, 0)]
    while stack:
        x, i = stack.pop()
        kids = children[x]
        if i > 0:
            # child kids[i-1] has just been emitted: move it to this bag
            bag = set(td.bags[kids[i - 1]])
            for v in sorted(bag - td.bags[x]):
                forget(v, bag)
            for v in sorted(td.bags[x] - bag):
                prog.append(("introduce", v))
            if i > 1:
                prog.append(("join",))
        if i < len(kids):
            stack.append((x, i + 1))
            stack.append((kids[i], 0))
            continue
        if not kids:
            prog.append(("leaf",))
            for v in sorted(td.bags[x]):
                prog.append(("introduce", v))
    bag = set(td.bags[root])
    for v in sorted(bag - keep):
        forget(v, bag)
    for u, v in edges_within(adj, keep & covered):
        if (u, v) not in done:
            done.add((u, v))
            prog.append(("edge", u, v))
    missing = [e for e in edges_within(adj, covered) if e not in done]
    if missing:
        raise ValueError(f"decomposition covers no bag for edges {missing[:5]}")
    return prog
