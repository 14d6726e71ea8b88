"""Exact treewidth for graphs of small width.

The decision ``tw(G) <= k`` is settled per biconnected component (treewidth
is the maximum over blocks) by, in order:

1. trivial size check (a block on at most ``k + 1`` vertices),
2. the minor-min-width lower bound,
3. a greedy min-fill elimination ordering,
4. safe reductions: simplicial vertices, and almost simplicial vertices of
   degree at most ``k`` (eliminating them preserves ``tw <= k``),
5. a dynamic program over vertex subsets on what is left
   (``TW(S + v) = max(TW(S), |Q(S, v)|)``), pruned at ``k``.

Witness decompositions are glued from per-block elimination orderings.
"""

from __future__ import annotations

import heapq
from collections.abc import Iterable

from ..errors import TooLarge
from ..graph import Graph
from .decomposition import Adjacency, TreeDecomposition, from_elimination_ordering

DEFAULT_STATE_BUDGET = 2_000_000


def adjacency_of(g: Graph, vertices: Iterable[int] | None = None) -> dict[int, set[int]]:
    if vertices is None:
        return {v: set(g.adj[v]) for v in range(g.n)}
    vs = set(vertices)
    return {v: g.adj[v] & vs for v in vs}


def blocks(adj: Adjacency) -> tuple[list[set[int]], list[int]]:
    """Vertex sets of the biconnected components and the isolated vertices."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    out = []
    isolated = []
    t = 0
    for root in sorted(adj):
        if root in disc:
            continue
        if not adj[root]:
            isolated.append(root)
            disc[root] = t
            t += 1
            continue
        disc[root] = low[root] = t
        t += 1
        vstack = [root]
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            for w in it:
                if w not in disc:
                    disc[w] = low[w] = t
                    t += 1
                    vstack.append(w)
                    stack.append((w, v, iter(adj[w])))
                    break
                if w != parent and disc[w] < low[v]:
                    low[v] = disc[w]
            else:
                stack.pop()
                if parent == -1:
                    continue
                if low[v] < low[parent]:
                    low[parent] = low[v]
                if low[v] >= disc[parent]:
                    comp = {parent}
                    while True:
                        x = vstack.pop()
                        comp.add(x)
                        if x == v:
                            break
                    out.append(comp)
    return out, isolated


# -- heuristics and bounds ----------------------------------------------------


def _fill(work, v):
    nb = list(work[v])
    missing = 0
    for i, a in enumerate(nb):
        wa = work[a]
        for b in nb[i + 1:]:
            if b not in wa:
                missing += 1
    return missing


def greedy_ordering(adj: Adjacency, criterion: str = "min-fill") -> tuple[int, list[int]]:
    """Greedy elimination ordering; returns ``(width, order)``."""
    work = {v: set(adj[v]) for v in adj}
    if criterion == "min-fill":
        score = lambda v: (_fill(work, v), len(work[v]), v)  # noqa: E731
    elif criterion == "min-degree":
        score = lambda v: (len(work[v]), v)  # noqa: E731
    else:
        raise ValueError(f"unknown criterion {criterion!r}")
    current = {v: score(v) for v in work}
    heap = list(current.values())
    heapq.heapify(heap)
    order = []
    width = -1
    while heap:
        entry = heapq.heappop(heap)
        v = entry[-1]
        if v not in work or current[v] != entry:
            continue
        nbrs = work.pop(v)
        del current[v]
        order.append(v)
        width = max(width, len(nbrs))
        for a in nbrs:
            work[a].discard(v)
            work[a] |= nbrs - {a}
        touched = set(nbrs)
        if criterion == "min-fill":
            for a in nbrs:
                touched |= work[a]
        for a in touched:
            s = score(a)
            if s != current[a]:
                current[a] = s
                heapq.heappush(heap, s)
    return width, order


def minor_min_width(adj: Adjacency) -> int:
    """Lower bound: contract a min-degree vertex into its least-overlapping neighbour."""
    work = {v: set(adj[v]) for v in adj}
    best = 0
    while len(work) > 1:
        v = min(work, key=lambda x: (len(work[x]), x))
        nb = work[v]
        best = max(best, len(nb))
        if not nb:
            del work[v]
            continue
        u = min(nb, key=lambda x: (len(work[x] & nb), x))
        for w in nb:
            work[w].discard(v)
        for w in nb - {u}:
            work[w].add(u)
            work[u].add(w)
        del work[v]
    return best


def _is_clique(work, verts):
    verts = list(verts)
    for i, a in enumerate(verts):
        wa = work[a]
        for b in verts[i + 1:]:
            if b not in wa:
                return False
    return True


def _eliminate(work, v):
    nbrs = work.pop(v)
    for a in nbrs:
        work[a].discard(v)
        work[a] |= nbrs - {a}
    return nbrs


def reduce_for_bound(adj: Adjacency, k: int) -> tuple[bool, list[int], dict[int, set[int]]]:
    """Apply the safe rules for ``tw <= k``.

    Returns ``(feasible, prefix, kernel)``: ``prefix`` is an elimination
    ordering prefix of width at most ``k`` and ``kernel`` the remaining graph,
    with ``tw(G) <= k`` iff ``tw(kernel) <= k``.  ``feasible`` is False when a
    simplicial vertex of degree above ``k`` proves ``tw(G) > k``.
    """
    work = {v: set(adj[v]) for v in adj}
    prefix = []
    queue = sorted(work, key=lambda x: len(work[x]), reverse=True)
    queued = set(queue)
    while queue:
        v = queue.pop()
        queued.discard(v)
        if v not in work:
            continue
        nb = work[v]
        if len(work) <= k + 1:
            break
        hit = False
        if _is_clique(work, nb):
            if len(nb) > k:
                return False, prefix, work
            hit = True
        elif len(nb) <= k:
            for u in nb:
                if _is_clique(work, nb - {u}):
                    hit = True
                    break
        if hit:
            prefix.append(v)
            for a in _eliminate(work, v):
                if a not in queued:
                    queued.add(a)
                    queue.append(a)
    return True, prefix, work


def _subset_dp(adj: Adjacency, k: int, budget: int) -> list[int] | None:
    """Elimination ordering of width <= k via the subset recurrence, or None."""
    verts = sorted(adj)
    n = len(verts)
    if n <= k + 1:
        return verts
    idx = {v: i for i, v in enumerate(verts)}
    nbm = [0] * n
    for v in verts:
        m = 0
        for w in adj[v]:
            m |= 1 << idx[w]
        nbm[idx[v]] = m
    full = (1 << n) - 1

    def q_size(s, i):
        # vertices outside s+{i} reachable from i through s
        comp = 1 << i
        frontier = comp
        while frontier:
            reach = 0
            f = frontier
            while f:
                low = f & -f
                reach |= nbm[low.bit_length() - 1]
                f ^= low
            new = reach & s & ~comp
            comp |= new
            frontier = new
        reach = 0
        c = comp
        while c:
            low = c & -c
            reach |= nbm[low.bit_length() - 1]
            c ^= low
        return bin(reach & ~comp & ~s).count("1")

    # layer: eliminated set -> (predecessor set, eliminated vertex)
    layer = {0: None}
    parents = [layer]
    states = 0
    for size in range(n):
        nxt = {}
        for s in layer:
            if n - size <= k + 1:
                # the rest forms a bag of size <= k + 1
                order = []
                cur = s
                for lay in reversed(parents):
                    step = lay[cur]
                    if step is None:
                        break
                    cur, i = step
                    order.append(verts[i])
                order.reverse()
                done = set(order)
                return order + [v for v in verts if v not in done]
            rest = full & ~s
            while rest:
                low = rest & -rest
                i = low.bit_length() - 1
                rest ^= low
                t = s | low
                if t in nxt:
                    continue
                if q_size(s, i) <= k:
                    nxt[t] = (s, i)
                    states += 1
                    if states > budget:
                        raise TooLarge(f"subset DP exceeded {budget} states")
        if not nxt:
            return None
        layer = nxt
        parents.append(layer)
    return None


def _block_ordering(adj: Adjacency, block: set[int], k: int, budget: int) -> list[int] | None:
    sub = {v: adj[v] & block for v in block}
    # greedy first even for tiny blocks: callers run DPs over the result
    width, order = greedy_ordering(sub)
    if width <= k:
        return order
    if minor_min_width(sub) > k:
        return None
    feasible, prefix, kernel = reduce_for_bound(sub, k)
    if not feasible:
        return None
    if len(kernel) <= k + 1:
        return prefix + sorted(kernel)
    if minor_min_width(kernel) > k:
        return None
    width, order = greedy_ordering(kernel)
    if width <= k:
        return prefix + order
    rest = _subset_dp(kernel, k, budget)
    return None if rest is None else prefix + rest


def _glue(adj: Adjacency, pieces: list[tuple[set[int], list[int]]], isolated: list[int]) -> TreeDecomposition:
    """Glue per-block decompositions along shared cut vertices."""
    td = TreeDecomposition()
    where: dict[int, int] = {}
    # blocks come out of the DFS children-first, so process them reversed
    # to attach each block to an already placed neighbour where possible
    for block, order in reversed(pieces):
        part = from_elimination_ordering({v: adj[v] & block for v in block}, order)
        anchor = next((v for v in sorted(block) if v in where), None)
        if anchor is None:
            attach = td.root if td.bags else -1
            node = part.root
        else:
            attach = where[anchor]
            node = part.bag_containing([anchor])
        offset = len(td.bags)
        if attach == -1:
            td.bags.extend(part.bags)
            td.parent.extend(part.parent)
        else:
            td.graft(part, attach, node)
        for i, b in enumerate(part.bags):
            for v in b:
                where.setdefault(v, offset + i)
    for v in isolated:
        td.add_node({v}, td.root if td.bags else -1)
    return td


def decompose_at_most(g: Graph | Adjacency, k: int, vertices: Iterable[int] | None = None,
                      budget: int = DEFAULT_STATE_BUDGET) -> TreeDecomposition | None:
    """A decomposition of width at most ``k`` if ``tw <= k``, else None."""
    adj = adjacency_of(g, vertices) if isinstance(g, Graph) else {v: set(g[v]) for v in g}
    if k < 0:
        return TreeDecomposition() if not adj else None
    bl, isolated = blocks(adj)
    pieces = []
    for block in bl:
        order = _block_ordering(adj, block, k, budget)
        if order is None:
            return None
        pieces.append((block, order))
    return _glue(adj, pieces, isolated)


def treewidth_at_most(g: Graph | Adjacency, k: int, vertices: Iterable[int] | None = None,
                      budget: int = DEFAULT_STATE_BUDGET) -> bool:
    return decompose_at_most(g, k, vertices, budget) is not None


def exact_treewidth(g: Graph | Adjacency, vertices: Iterable[int] | None = None,
                    budget: int = DEFAULT_STATE_BUDGET) -> tuple[int, TreeDecomposition]:
    """Treewidth and an optimal decomposition (edgeless graphs have width 0)."""
    adj = adjacency_of(g, vertices) if isinstance(g, Graph) else {v: set(g[v]) for v in g}
    if not adj:
        return -1, TreeDecomposition()
    bl, isolated = blocks(adj)
    pieces = []
    best = 0
    for block in sorted(bl, key=len, reverse=True):
        sub = {v: adj[v] & block for v in block}
        lo = max(best, minor_min_width(sub))
        hi, order = greedy_ordering(sub)
        k = lo
        while k < hi:
            found = _block_ordering(adj, block, k, budget)
            if found is not None:
                order = found
                break
            k += 1
        best = max(best, k)
        pieces.append((block, order))
    # restore DFS order for gluing
    pieces.sort(key=lambda p: bl.index(p[0]))
    return best, _glue(adj, pieces, isolated)
