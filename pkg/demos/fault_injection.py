"""Show that the fuzzer catches a broken treewidth threshold.

With the threshold forced down to 1 the long-path engine answers "yes" for
any refused insertion even though a graph of treewidth 2 (a cycle) can be
too short to hold a path of length k.  The fuzzer finds such a trace and
shrinks it.

    python3 demos/fault_injection.py
"""

from dynpath.cli import RunConfig, fuzz, replay

config = RunConfig(mode="longpath", k=3, check_oracle=True, n=6, ops=60,
                   weights=(30, 30, 40), threshold=1)

for seed in range(1, 200):
    outcome = fuzz(config, seed)
    if not outcome.passed:
        break
else:
    raise SystemExit("no failing seed found")

print(f"seed {seed} fails; minimized trace:")
print(outcome.counterexample.dumps(), end="")
m = replay(config, outcome.counterexample).mismatch
print(f"engine says {m.got}, oracle says {m.expected} at event {m.index} ({m.event})")

honest = RunConfig(mode="longpath", k=3, check_oracle=True, n=6, ops=60, weights=(30, 30, 40))
print("same trace with the real threshold:",
      "PASS" if replay(honest, outcome.counterexample).mismatch is None else "FAIL")
