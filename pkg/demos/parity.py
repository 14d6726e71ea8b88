"""Even and odd path queries.

H stays bipartite; an edge that would close an odd cycle waits in the marked
pile until a query needs it.

    python3 demos/parity.py
"""

from dynpath import ParityEngine

eng = ParityEngine(6)
for u, v in [(0, 1), (1, 2), (2, 3), (3, 0)]:
    eng.insert(u, v)
print("square 0-1-2-3:")
print(f"  even path 0..2: {eng.even_path(0, 2)}, odd path 0..2: {eng.odd_path(0, 2)}")

eng.insert(0, 2)
print(f"add chord 0-2 (closes triangles), marked: {sorted(eng.marked_edges())}")
print(f"  odd path 0..2: {eng.odd_path(0, 2)}")
print(f"  even path 1..3: {eng.even_path(1, 3)}, odd path 1..3: {eng.odd_path(1, 3)}")

# a pendant path hanging off vertex 3 is outside every (4, 5)-path block
eng.insert(3, 4)
eng.insert(4, 5)
print("pendant path 3-4-5:")
print(f"  even path 4..5: {eng.even_path(4, 5)}, odd path 4..5: {eng.odd_path(4, 5)}")
print(f"  even path 0..5: {eng.even_path(0, 5)}, odd path 0..5: {eng.odd_path(0, 5)}")
