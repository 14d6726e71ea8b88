"""Brute-force ground truth.

Everything here works on a :class:`~dynpath.graph.Graph` snapshot and shares
no code with the structures it is used to check.  Each routine refuses
graphs above its vertex budget instead of silently running for hours.
"""

from __future__ import annotations

import math
import sys
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import EqualEndpoints, TooLarge
from .graph import Edge, Graph, edge

PATH_BUDGET = 12
TREEWIDTH_BUDGET = 10


def _check_budget(g: Graph, budget: int):
    if g.n > budget:
        raise TooLarge(f"oracle budget is {budget} vertices, graph has {g.n}")


@dataclass(frozen=True)
class PathSummary:
    min_len: float
    max_len: float
    has_even: bool
    has_odd: bool

    @property
    def exists(self) -> bool:
        return self.has_even or self.has_odd


def _masks(g: Graph) -> list[int]:
    return [sum(1 << w for w in g.adj[v]) for v in range(g.n)]


def _reachable(nbm, src, allowed):
    seen = 1 << src
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= nbm[low.bit_length() - 1]
            f ^= low
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def _simple_paths(g: Graph, s: int, t: int):
    """Yield the vertex mask and length of every simple (s, t)-path.

    Branches from which ``t`` is unreachable are cut, so every explored
    prefix extends to at least one path.
    """
    nbm = _masks(g)
    full = (1 << g.n) - 1
    tbit = 1 << t
    # stack of (vertex, visited mask, length, remaining neighbour mask)
    start = 1 << s
    stack = [(s, start, 0, nbm[s] & ~start)]
    while stack:
        v, used, length, todo = stack.pop()
        if not todo:
            continue
        low = todo & -todo
        stack.append((v, used, length, todo ^ low))
        w = low.bit_length() - 1
        if low == tbit:
            yield used | tbit, length + 1
            continue
        nused = used | low
        if not (_reachable(nbm, w, full & ~nused | tbit) & tbit):
            continue
        stack.append((w, nused, length + 1, nbm[w] & ~nused))


def enumerate_paths(g: Graph, s: int, t: int, budget: int = PATH_BUDGET) -> PathSummary:
    """Min/max length and available parities over all simple (s, t)-paths."""
    if s == t:
        raise EqualEndpoints("path oracle needs distinct endpoints")
    _check_budget(g, budget)
    dist = bfs_distance(g, s, t)
    if dist is None:
        return PathSummary(math.inf, -math.inf, False, False)
    ceiling = len(g.component(s)) - 1
    best = -1
    parities = set()
    for _, length in _simple_paths(g, s, t):
        best = max(best, length)
        parities.add(length % 2)
        if best == ceiling and len(parities) == 2:
            break
    return PathSummary(dist, best, 0 in parities, 1 in parities)


def all_path_lengths(g: Graph, s: int, t: int, budget: int = PATH_BUDGET) -> list[int]:
    """Sorted multiset of lengths, one entry per simple (s, t)-path."""
    _check_budget(g, budget)
    return sorted(length for _, length in _simple_paths(g, s, t))


def bfs_distance(g: Graph, s: int, t: int) -> int | None:
    dist = {s: 0}
    q = deque([s])
    while q:
        x = q.popleft()
        if x == t:
            return dist[x]
        for y in g.adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return None


def relevant_part(g: Graph, s: int, t: int, budget: int = PATH_BUDGET) -> set[int]:
    """Vertices lying on at least one simple (s, t)-path (empty if none)."""
    if s == t:
        raise EqualEndpoints("relevant part needs distinct endpoints")
    _check_budget(g, budget)
    comp = g.component(s)
    if t not in comp:
        return set()
    target = sum(1 << v for v in comp)
    seen = 0
    for used, _ in _simple_paths(g, s, t):
        seen |= used
        if seen == target:
            break
    return {v for v in range(g.n) if seen >> v & 1}


def oracle_blocks(g: Graph) -> list[set[Edge]]:
    """Textbook recursive block decomposition (edge partition)."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    stack: list[Edge] = []
    out: list[set[Edge]] = []
    counter = [0]

    def visit(v, parent):
        disc[v] = low[v] = counter[0]
        counter[0] += 1
        for w in sorted(g.adj[v]):
            if w not in disc:
                stack.append(edge(v, w))
                visit(w, v)
                low[v] = min(low[v], low[w])
                if low[w] >= disc[v]:
                    block = set()
                    while True:
                        e = stack.pop()
                        block.add(e)
                        if e == edge(v, w):
                            break
                    out.append(block)
            elif w != parent and disc[w] < disc[v]:
                stack.append(edge(v, w))
                low[v] = min(low[v], disc[w])

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10 * g.n + 100))
    try:
        for v in range(g.n):
            if v not in disc:
                visit(v, -1)
    finally:
        sys.setrecursionlimit(limit)
    return out


def subdivision_biconnected(g: Graph, e: Edge, f: Edge) -> bool:
    """Whether subdivision vertices of ``e`` and ``f`` share a block.

    In the 1-subdivision (each edge ``uv`` replaced by ``u - x_uv - v``) two
    subdivision vertices lie in a common block iff they are connected and no
    single other vertex separates them.
    """
    e, f = edge(*e), edge(*f)
    if e == f:
        return True
    nodes = list(range(g.n)) + [("x", d) for d in g.edges()]
    adj: dict = {x: set() for x in nodes}
    for d in g.edges():
        x = ("x", d)
        for end in d:
            adj[x].add(end)
            adj[end].add(x)
    a, b = ("x", e), ("x", f)

    def connected(removed):
        seen = {a}
        q = [a]
        while q:
            x = q.pop()
            if x == b:
                return True
            for y in adj[x]:
                if y != removed and y not in seen:
                    seen.add(y)
                    q.append(y)
        return False

    if not connected(None):
        return False
    return all(connected(w) for w in nodes if w != a and w != b)


def oracle_treewidth(g: Graph, budget: int = 8) -> int:
    """Minimum width over all elimination orderings, by exhaustive search."""
    _check_budget(g, budget)
    verts = list(range(g.n))
    if not verts:
        return -1
    best = [len(verts) - 1]

    def search(adj, remaining, width):
        if width >= best[0]:
            return
        if len(remaining) - 1 <= width:
            best[0] = width
            return
        for v in remaining:
            nb = adj[v] & remaining
            w = max(width, len(nb))
            if w >= best[0]:
                continue
            new = dict(adj)
            for a in nb:
                new[a] = (adj[a] | nb) - {a, v}
            search(new, remaining - {v}, w)

    search({v: set(g.adj[v]) for v in verts}, frozenset(verts), 0)
    return best[0]


def oracle_bipartite(g: Graph) -> bool:
    color: dict[int, int] = {}
    for s in range(g.n):
        if s in color:
            continue
        color[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            for y in g.adj[x]:
                if y not in color:
                    color[y] = 1 - color[x]
                    q.append(y)
                elif color[y] == color[x]:
                    return False
    return True


def odd_cycle_through(g: Graph, v: int, budget: int = PATH_BUDGET) -> bool:
    """Whether some simple cycle of odd length passes through ``v``."""
    _check_budget(g, budget)
    for w in g.adj[v]:
        h = g.copy()
        h.remove_edge(v, w)
        for _, length in _simple_paths(h, v, w):
            if length % 2 == 0:
                return True
    return False


def path_families(g: Graph, boundary, budget: int = 8) -> dict:
    """Best total lengths of vertex-disjoint path families ending in ``boundary``.

    Keys are ``(delta, pairs)`` with ``delta`` a sorted tuple of
    ``(vertex, degree)`` over the boundary and ``pairs`` a frozenset of
    endpoint pairs; values are ``(max_total, min_total)``.  States with no
    family are absent.
    """
    _check_budget(g, budget)
    boundary = sorted(boundary)
    bset = set(boundary)
    paths_between: dict = {}
    for a, b in combinations(boundary, 2):
        found = []
        for_path = _vertex_paths(g, a, b)
        for p in for_path:
            found.append(p)
        paths_between[(a, b)] = found
    out: dict = {}

    def record(used_paths):
        deg = {x: 0 for x in boundary}
        pairs = set()
        total = 0
        for p in used_paths:
            pairs.add(frozenset((p[0], p[-1])))
            total += len(p) - 1
            for x in p[1:-1]:
                if x in bset:
                    deg[x] = 2
            deg[p[0]] = deg[p[-1]] = 1
        key = (tuple(sorted(deg.items())), frozenset(pairs))
        old = out.get(key)
        out[key] = (total, total) if old is None else (max(old[0], total), min(old[1], total))

    def rec(i, used, chosen):
        # decide whether boundary[i] starts a path towards a later boundary vertex
        if i == len(boundary):
            record(chosen)
            return
        a = boundary[i]
        rec(i + 1, used, chosen)
        if a in used:
            return
        for b in boundary[i + 1:]:
            if b in used:
                continue
            for p in paths_between[(a, b)]:
                if used.isdisjoint(p):
                    chosen.append(p)
                    rec(i + 1, used | set(p), chosen)
                    chosen.pop()

    rec(0, frozenset(), [])
    return out


def _vertex_paths(g: Graph, a: int, b: int):
    out = []
    path = [a]
    on = {a}

    def dfs(x):
        for y in sorted(g.adj[x]):
            if y == b:
                out.append(tuple(path) + (b,))
            elif y not in on:
                on.add(y)
                path.append(y)
                dfs(y)
                path.pop()
                on.discard(y)

    dfs(a)
    return out
