"""Walk through a long-path engine on a small graph.

Builds a clique with a pendant path, watches which edges the engine refuses to put into its
bounded-treewidth subgraph H, and shows how a query pulls those edges back in
(or stops early because a refusal already proves the answer).

    python3 demos/long_paths.py
"""

from dynpath import LongPathEngine
from dynpath.oracle import enumerate_paths

K = 2
N = 8

eng = LongPathEngine(N, K)
print(f"k = {K}: H is kept at treewidth <= {eng.threshold}")

# K6 on 0..5 (treewidth 5) plus the pendant path 0-6-7
edges = [(u, v) for u in range(6) for v in range(u + 1, 6)] + [(0, 6), (6, 7)]
for u, v in edges:
    eng.insert(u, v)
    state = "marked" if (min(u, v), max(u, v)) in eng.marked_edges() else "in H"
    print(f"  insert {u}-{v}: {state}")

print(f"marked edges: {sorted(eng.marked_edges())}")

for s, t in [(6, 7), (0, 7), (1, 2)]:
    answer = eng.query(s, t)
    how = "a refused insertion" if eng.last_answer_from_abort else "H"
    best = enumerate_paths(eng.graph, s, t).max_len
    print(f"path of length >= {K} between {s} and {t}? {answer} (decided by {how}; longest is {best})")

# thinning the clique lowers the treewidth; the next query retries the pile
for u, v in [(1, 2), (3, 4), (2, 5), (1, 3)]:
    eng.delete(u, v)
print(f"after deleting four clique edges, marked: {sorted(eng.marked_edges())}")
eng.query(1, 4)
print(f"after one more query, marked: {sorted(eng.marked_edges())}")
print(f"stats: {eng.stats}")
