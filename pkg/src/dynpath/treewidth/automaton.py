"""Longest/shortest path automaton over tree decompositions.

For a bag ``B`` a state is a pair ``(delta, M)``: ``delta`` assigns every
bag vertex a degree in {0, 1, 2} and ``M`` pairs up the degree-1 vertices.
The table ``f`` maps each state to the best (maximum or minimum) total length
of a family of vertex-disjoint paths in the graph processed so far whose
endpoints are exactly paired by ``M``, whose degrees on the bag are
``delta``, and whose remaining vertices have degree 0 or 2.  Infeasible
states are simply absent from the table.

Internally a state is a tuple aligned with the sorted bag: ``FREE`` for
degree 0, ``INNER`` for degree 2, and the partner's vertex id for degree 1.
"""

from __future__ import annotations

import enum
import math
from bisect import bisect_left
from collections.abc import Iterable, Iterator, Mapping

from ..errors import WidthExceeded
from ..graph import Graph
from .decomposition import Adjacency, TreeDecomposition, nice_program

FREE = -1
INNER = -2


class Variant(enum.Enum):
    MAX = "max"
    MIN = "min"

    @property
    def absent(self) -> float:
        return -math.inf if self is Variant.MAX else math.inf

    @property
    def pick(self):
        return max if self is Variant.MAX else min


def _degree(code):
    return 0 if code == FREE else 2 if code == INNER else 1


def encode(bag: tuple[int, ...], delta: Mapping[int, int], matching: Iterable[Iterable[int]]) -> tuple[int, ...]:
    lab = {v: (FREE if delta.get(v, 0) == 0 else INNER) for v in bag}
    ones = {v for v in bag if delta.get(v, 0) == 1}
    seen = set()
    for pair in matching:
        a, b = tuple(pair)
        if a not in ones or b not in ones or a in seen or b in seen:
            raise ValueError(f"matching {matching!r} does not pair the degree-1 vertices")
        lab[a], lab[b] = b, a
        seen |= {a, b}
    if seen != ones:
        raise ValueError("every degree-1 vertex must be matched")
    return tuple(lab[v] for v in bag)


def decode(bag: tuple[int, ...], lab: tuple[int, ...]) -> tuple[dict[int, int], frozenset[frozenset[int]]]:
    delta = {v: _degree(c) for v, c in zip(bag, lab)}
    pairs = frozenset(frozenset((v, c)) for v, c in zip(bag, lab) if c >= 0)
    return delta, pairs


def state_space(bag: Iterable[int]) -> Iterator[tuple[int, ...]]:
    """Every encoded ``(delta, M)`` over ``bag``."""
    bag = tuple(sorted(bag))

    def rec(i, lab):
        if i == len(bag):
            yield tuple(lab)
            return
        if lab[i] is not None:
            yield from rec(i + 1, lab)
            return
        for code in (FREE, INNER):
            lab[i] = code
            yield from rec(i + 1, lab)
        for j in range(i + 1, len(bag)):
            if lab[j] is None:
                lab[i], lab[j] = bag[j], bag[i]
                yield from rec(i + 1, lab)
                lab[j] = None
        lab[i] = None

    yield from rec(0, [None] * len(bag))


class PathAutomatonState:
    """Root state ``(B, f)`` of a run."""

    def __init__(self, bag: tuple[int, ...], table: dict[tuple[int, ...], int], variant: Variant) -> None:
        self.bag = bag
        self.table = table
        self.variant = variant

    def f(self, delta: Mapping[int, int], matching: Iterable[Iterable[int]] = ()) -> float:
        return self.table.get(encode(self.bag, delta, matching), self.variant.absent)

    def entries(self) -> Iterator[tuple[dict[int, int], frozenset[frozenset[int]], float]]:
        """The total function on the state space, absent states included."""
        for lab in state_space(self.bag):
            delta, pairs = decode(self.bag, lab)
            yield delta, pairs, self.table.get(lab, self.variant.absent)

    def path_length(self, u: int, v: int) -> float:
        """Longest (MAX) or shortest (MIN) simple ``(u, v)``-path length."""
        if u not in self.bag or v not in self.bag:
            raise ValueError("path endpoints must be boundary vertices")
        iu, iv = self.bag.index(u), self.bag.index(v)
        vals = [
            val for lab, val in self.table.items()
            if lab[iu] == v and lab[iv] == u
            and all(c < 0 for i, c in enumerate(lab) if i != iu and i != iv)
        ]
        return self.variant.pick(vals) if vals else self.variant.absent

    def __len__(self):
        return len(self.table)


def run_path_automaton(g: Graph | Adjacency, td: TreeDecomposition, boundary: Iterable[int] = (),
                       variant: Variant = Variant.MAX, max_width: int | None = None,
                       degree_cap: Mapping[int, int] | None = None) -> PathAutomatonState:
    """Evaluate the automaton bottom-up; the root state is over ``boundary``.

    ``td`` decomposes the subgraph of ``g`` induced by its vertices, and must
    already contain every boundary vertex in its root bag (add them to every
    bag to make the whole graph boundaried).  ``degree_cap`` optionally bounds
    the degree a vertex may reach in partial solutions; it is a pruning aid
    for callers who only need part of the root table.
    """
    if max_width is not None and td.width > max_width:
        raise WidthExceeded(f"decomposition width {td.width} exceeds {max_width}")
    prog = nice_program(g, td, boundary)
    better = variant.pick
    cap = dict(degree_cap or {})
    stack: list[tuple[tuple[int, ...], dict]] = []
    for op in prog:
        kind = op[0]
        if kind == "leaf":
            stack.append(((), {(): 0}))
        elif kind == "introduce":
            bag, table = stack.pop()
            v = op[1]
            i = bisect_left(bag, v)
            bag = bag[:i] + (v,) + bag[i:]
            table = {lab[:i] + (FREE,) + lab[i:]: val for lab, val in table.items()}
            stack.append((bag, table))
        elif kind == "forget":
            bag, table = stack.pop()
            i = bag.index(op[1])
            out: dict = {}
            for lab, val in table.items():
                if lab[i] < 0:
                    key = lab[:i] + lab[i + 1:]
                    old = out.get(key)
                    out[key] = val if old is None else better(old, val)
            stack.append((bag[:i] + bag[i + 1:], out))
        elif kind == "edge":
            bag, table = stack.pop()
            stack.append((bag, _introduce_edge(bag, table, op[1], op[2], better, cap)))
        else:
            bag2, right = stack.pop()
            bag, left = stack.pop()
            stack.append((bag, _join(bag, left, right, better)))
    (bag, table), = stack
    return PathAutomatonState(bag, table, variant)


def _introduce_edge(bag, table, u, v, better, cap):
    iu = bag.index(u)
    iv = bag.index(v)
    pos = {x: i for i, x in enumerate(bag)}
    # which extensions the caps allow at u and at v
    open_u = cap.get(u, 2) >= 1
    open_v = cap.get(v, 2) >= 1
    thru_u = cap.get(u, 2) >= 2
    thru_v = cap.get(v, 2) >= 2
    out = dict(table)
    get = out.get
    for lab, val in table.items():
        a = lab[iu]
        b = lab[iv]
        if a == INNER or b == INNER or a == v:
            continue
        nl = list(lab)
        if a == FREE:
            if b == FREE:
                if not (open_u and open_v):
                    continue
                nl[iu] = v
                nl[iv] = u
            else:
                if not (open_u and thru_v):
                    continue
                nl[iv] = INNER
                nl[iu] = b
                nl[pos[b]] = u
        elif b == FREE:
            if not (thru_u and open_v):
                continue
            nl[iu] = INNER
            nl[iv] = a
            nl[pos[a]] = v
        else:
            if not (thru_u and thru_v):
                continue
            nl[iu] = INNER
            nl[iv] = INNER
            nl[pos[a]] = b
            nl[pos[b]] = a
        key = tuple(nl)
        new = val + 1
        old = get(key)
        out[key] = new if old is None else better(old, new)
    return out


def _signature(lab):
    return tuple(0 if c == FREE else 2 if c == INNER else 1 for c in lab)


def _join(bag, left, right, better):
    pos = {x: i for i, x in enumerate(bag)}
    n = len(bag)
    groups_l: dict = {}
    for lab, val in left.items():
        groups_l.setdefault(_signature(lab), []).append((lab, val))
    groups_r: dict = {}
    for lab, val in right.items():
        groups_r.setdefault(_signature(lab), []).append((lab, val))
    out: dict = {}
    for sl, items_l in groups_l.items():
        for sr, items_r in groups_r.items():
            total = [a + b for a, b in zip(sl, sr)]
            if max(total, default=0) > 2:
                continue
            merged = [i for i in range(n) if sl[i] == 1 and sr[i] == 1]
            ends = [i for i in range(n) if total[i] == 1]
            base = [FREE if d == 0 else INNER for d in total]
            for lab_l, val_l in items_l:
                for lab_r, val_r in items_r:
                    key = _combine(bag, pos, base, lab_l, lab_r, merged, ends)
                    if key is None:
                        continue
                    val = val_l + val_r
                    old = out.get(key)
                    out[key] = val if old is None else better(old, val)
    return out


def _combine(bag, pos, base, lab_l, lab_r, merged, ends):
    """Glue two path systems meeting on the bag; None if a cycle appears."""
    nl = list(base)
    visited = 0
    for i in ends:
        if nl[i] >= 0:
            continue
        # walk from endpoint i, alternating sides at merge vertices
        side_l = lab_l[i] >= 0
        cur = i
        while True:
            nxt = pos[(lab_l if side_l else lab_r)[cur]]
            if lab_l[nxt] >= 0 and lab_r[nxt] >= 0:
                visited += 1
                side_l = not side_l
                cur = nxt
                continue
            break
        nl[i] = bag[nxt]
        nl[nxt] = bag[i]
    if visited != len(merged):
        return None
    return tuple(nl)
