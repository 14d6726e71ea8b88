"""Trace replay, seeded fuzzing and trace generation.

Run as ``python -m dynpath``.  Exit codes: 0 success, 1 bad configuration,
2 oracle mismatch, 3 malformed trace, 4 illegal event.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from collections.abc import Callable
from dataclasses import dataclass, field, replace

from .engines import EngineStats, LongDetourEngine, LongPathEngine, ParityEngine
from .errors import DuplicateEdge, IllegalEvent, MissingEdge, ParseError
from .graph import Graph
from .oracle import enumerate_paths
from .trace import EventKind, Trace, TraceEvent, parse_trace

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_MISMATCH = 2
EXIT_PARSE = 3
EXIT_ILLEGAL = 4

MODES = ("longpath", "detour", "parity")
SERVED = {
    "longpath": {EventKind.LONG_PATH},
    "detour": {EventKind.LONG_DETOUR},
    "parity": {EventKind.EVEN_PATH, EventKind.ODD_PATH},
}


@dataclass(frozen=True)
class RunConfig:
    mode: str = "longpath"
    k: int = 1
    check_oracle: bool = False
    seed: int = 1
    n: int = 10
    ops: int = 1000
    weights: tuple[int, int, int] = (45, 25, 30)
    # fault injection for harness tests; None keeps the engine's own threshold
    threshold: int | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode != "parity" and self.k < 1:
            raise ValueError("k must be at least 1")
        if any(w < 0 for w in self.weights) or sum(self.weights) <= 0:
            raise ValueError("weights must be non-negative with a positive sum")
        if self.n < 0 or self.ops < 0:
            raise ValueError("n and ops must be non-negative")


def make_engine(config: RunConfig, n: int):
    if config.mode == "longpath":
        return LongPathEngine(n, config.k, _threshold=config.threshold)
    if config.mode == "detour":
        return LongDetourEngine(n, config.k, _threshold=config.threshold)
    return ParityEngine(n)


def engine_answer(engine, event: TraceEvent) -> bool:
    if event.kind is EventKind.EVEN_PATH:
        return engine.even_path(event.u, event.v)
    if event.kind is EventKind.ODD_PATH:
        return engine.odd_path(event.u, event.v)
    return engine.query(event.u, event.v)


def oracle_answer(g: Graph, event: TraceEvent, k: int) -> bool:
    s = enumerate_paths(g, event.u, event.v)
    if event.kind is EventKind.LONG_PATH:
        return s.max_len >= k
    if event.kind is EventKind.LONG_DETOUR:
        return s.exists and s.max_len - s.min_len >= k
    if event.kind is EventKind.EVEN_PATH:
        return s.has_even
    return s.has_odd


@dataclass
class Mismatch:
    index: int
    event: TraceEvent
    got: bool
    expected: bool


@dataclass
class ReplayResult:
    answers: list[bool] = field(default_factory=list)
    stats: EngineStats = field(default_factory=EngineStats)
    seconds: float = 0.0
    mismatch: Mismatch | None = None
    # Yes answers that came from a refused insertion, and how many the oracle confirmed
    abort_yes: int = 0
    abort_confirmed: int = 0

    def summary(self) -> str:
        s = self.stats
        ops = s.inserts + s.deletes + s.queries
        per_op = 1e6 * self.seconds / ops if ops else 0.0
        return (f"ops={ops} inserts={s.inserts} deletes={s.deletes} queries={s.queries} "
                f"marks_created={s.marks_created} marks_consumed={s.marks_consumed} "
                f"query_try_inserts={s.query_try_inserts} abort_yes={self.abort_yes} "
                f"wall={self.seconds:.3f}s per_op={per_op:.1f}us")


StepHook = Callable[[int, TraceEvent, object, "bool | None"], None]


def replay(config: RunConfig, trace: Trace, on_step: StepHook | None = None) -> ReplayResult:
    """Run ``trace`` through a fresh engine; stops at the first oracle mismatch."""
    engine = make_engine(config, trace.n)
    shadow = Graph(trace.n) if config.check_oracle else None
    served = SERVED[config.mode]
    result = ReplayResult(stats=engine.stats)
    start = time.perf_counter()
    for i, ev in enumerate(trace.events):
        answer = None
        if ev.kind is EventKind.INSERT:
            try:
                engine.insert(ev.u, ev.v)
            except DuplicateEdge as exc:
                raise IllegalEvent(f"{ev}: {exc}", i) from None
            if shadow is not None:
                shadow.add_edge(ev.u, ev.v)
        elif ev.kind is EventKind.DELETE:
            try:
                engine.delete(ev.u, ev.v)
            except MissingEdge as exc:
                raise IllegalEvent(f"{ev}: {exc}", i) from None
            if shadow is not None:
                shadow.remove_edge(ev.u, ev.v)
        else:
            if ev.kind not in served:
                raise IllegalEvent(f"{ev}: query not served in {config.mode} mode", i)
            answer = engine_answer(engine, ev)
            result.answers.append(answer)
            from_abort = engine.last_answer_from_abort
            result.abort_yes += from_abort
            if shadow is not None:
                expected = oracle_answer(shadow, ev, config.k)
                result.abort_confirmed += from_abort and expected
                if answer != expected:
                    result.mismatch = Mismatch(i, ev, answer, expected)
        if on_step is not None:
            on_step(i, ev, engine, answer)
        if result.mismatch is not None:
            break
    result.seconds = time.perf_counter() - start
    return result


def _fails(config: RunConfig, trace: Trace) -> bool:
    try:
        return replay(config, trace).mismatch is not None
    except IllegalEvent:
        return False


def minimize(config: RunConfig, trace: Trace) -> Trace:
    """Shrink a failing trace by deleting chunks of events while it keeps failing."""
    config = replace(config, check_oracle=True)
    first = replay(config, trace).mismatch
    if first is None:
        return trace
    events = trace.events[: first.index + 1]
    chunk = max(1, len(events) // 2)
    while True:
        i = 0
        changed = False
        while i < len(events):
            cand = events[:i] + events[i + chunk:]
            if cand and _fails(config, Trace(trace.n, cand)):
                events = cand
                changed = True
            else:
                i += chunk
        if not changed:
            if chunk == 1:
                break
            chunk //= 2
    # an insert and its matching delete can only go together
    i = 0
    while i < len(events):
        ev = events[i]
        j = next((j for j in range(i + 1, len(events))
                  if events[j].kind is EventKind.DELETE
                  and {events[j].u, events[j].v} == {ev.u, ev.v}), None)
        if ev.kind is EventKind.INSERT and j is not None:
            cand = events[:i] + events[i + 1:j] + events[j + 1:]
            if _fails(config, Trace(trace.n, cand)):
                events = cand
                continue
        i += 1
    cut = replay(config, Trace(trace.n, events)).mismatch
    return Trace(trace.n, events[: cut.index + 1])


def generate_trace(config: RunConfig, seed: int | None = None) -> Trace:
    """Seeded random legal trace; impossible updates fall back to the other kind."""
    rng = random.Random(config.seed if seed is None else seed)
    n = config.n
    if n < 2:
        return Trace(n, [])
    max_edges = n * (n - 1) // 2
    edges: list[tuple[int, int]] = []
    where: dict[tuple[int, int], int] = {}
    queries = sorted(SERVED[config.mode], key=lambda k: k.value)
    events = []
    for _ in range(config.ops):
        op = rng.choices(("I", "D", "Q"), weights=config.weights)[0]
        if op == "I" and len(edges) == max_edges:
            op = "D"
        elif op == "D" and not edges:
            op = "I"
        if op == "I":
            while True:
                u, v = rng.sample(range(n), 2)
                e = (min(u, v), max(u, v))
                if e not in where:
                    break
            where[e] = len(edges)
            edges.append(e)
            events.append(TraceEvent(EventKind.INSERT, u, v))
        elif op == "D":
            j = rng.randrange(len(edges))
            e = edges[j]
            last = edges.pop()
            if last != e:
                edges[j] = last
                where[last] = j
            del where[e]
            events.append(TraceEvent(EventKind.DELETE, *e))
        else:
            u, v = rng.sample(range(n), 2)
            events.append(TraceEvent(rng.choice(queries), u, v))
    return Trace(n, events)


@dataclass
class FuzzOutcome:
    seed: int
    trace: Trace
    result: ReplayResult
    counterexample: Trace | None = None

    @property
    def passed(self) -> bool:
        return self.result.mismatch is None


def fuzz(config: RunConfig, seed: int | None = None) -> FuzzOutcome:
    seed = config.seed if seed is None else seed
    checked = replace(config, check_oracle=True)
    trace = generate_trace(checked, seed)
    result = replay(checked, trace)
    outcome = FuzzOutcome(seed, trace, result)
    if result.mismatch is not None:
        outcome.counterexample = minimize(checked, trace)
    return outcome


def _parse_weights(text: str) -> tuple[int, int, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("weights look like i:d:q, e.g. 45:25:30")
    try:
        return tuple(int(p) for p in parts)  # type: ignore[return-value]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weights {text!r}") from None


class _Parser(argparse.ArgumentParser):
    # keep exit code 2 for oracle mismatches
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="python -m dynpath", description=__doc__.splitlines()[0])
    p.add_argument("--mode", choices=MODES, default="longpath")
    p.add_argument("--k", type=int, default=1, help="path length / detour parameter (ignored for parity)")
    p.add_argument("--trace", metavar="FILE", help="trace to replay ('-' for stdin)")
    p.add_argument("--check-oracle", action="store_true", help="verify every answer by brute force")
    p.add_argument("--fuzz", action="store_true", help="replay seeded random traces with the oracle on")
    p.add_argument("--generate", action="store_true", help="print a seeded random trace and exit")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--runs", type=int, default=1, help="number of fuzz traces (seeds seed, seed+1, ...)")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--ops", type=int, default=1000)
    p.add_argument("--weights", type=_parse_weights, default=(45, 25, 30), metavar="I:D:Q")
    p.add_argument("--emit", metavar="FILE", default="counterexample.trace",
                   help="where fuzzing writes a failing trace")
    p.add_argument("--inject-threshold", type=int, default=None, metavar="T",
                   help="testing only: override the treewidth threshold")
    return p


def _report_mismatch(m: Mismatch, prefix: Trace, out) -> None:
    print(f"mismatch at event {m.index} ({m.event}): engine said {'YES' if m.got else 'NO'}, "
          f"oracle says {'YES' if m.expected else 'NO'}", file=out)
    print("failing prefix:", file=out)
    out.write(prefix.dumps())


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    try:
        config = RunConfig(mode=args.mode, k=args.k, check_oracle=args.check_oracle, seed=args.seed,
                           n=args.n, ops=args.ops, weights=args.weights, threshold=args.inject_threshold)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    modes = sum(bool(x) for x in (args.trace, args.fuzz, args.generate))
    if modes != 1:
        print("error: give exactly one of --trace, --fuzz, --generate", file=sys.stderr)
        return EXIT_CONFIG

    if args.generate:
        sys.stdout.write(generate_trace(config).dumps())
        return EXIT_OK

    if args.fuzz:
        for i in range(args.runs):
            outcome = fuzz(config, args.seed + i)
            if not outcome.passed:
                print(f"seed {outcome.seed}: FAIL")
                with open(args.emit, "w") as fh:
                    fh.write(outcome.counterexample.dumps())
                _report_mismatch(outcome.result.mismatch, outcome.counterexample, sys.stderr)
                print(f"counterexample written to {args.emit}", file=sys.stderr)
                print("FAIL")
                return EXIT_MISMATCH
            print(f"seed {outcome.seed}: PASS")
            print(f"seed {outcome.seed}: {outcome.result.summary()}", file=sys.stderr)
        print("PASS")
        return EXIT_OK

    try:
        if args.trace == "-":
            trace = parse_trace(sys.stdin)
        else:
            with open(args.trace) as fh:
                trace = parse_trace(fh)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        result = replay(config, trace)
    except IllegalEvent as exc:
        print(f"illegal event: {exc}", file=sys.stderr)
        return EXIT_ILLEGAL
    for a in result.answers:
        print("YES" if a else "NO")
    print(result.summary(), file=sys.stderr)
    if result.mismatch is not None:
        _report_mismatch(result.mismatch, minimize(config, trace), sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK
