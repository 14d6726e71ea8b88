import io
import subprocess
import sys

import pytest

from dynpath.cli import RunConfig, fuzz, generate_trace, main, minimize, replay
from dynpath.errors import IllegalEvent
from dynpath.trace import loads


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, text, name="t.trace"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_single_edge_yes(tmp_path, capsys):
    code, out, err = run(["--mode", "longpath", "--k", "1", "--trace", write(tmp_path, "N 2\nI 0 1\nQLP 0 1\n")], capsys)
    assert (code, out) == (0, "YES\n")
    assert "marks_created=0" in err and "wall=" in err


def test_tree_has_no_detour(tmp_path, capsys):
    text = "N 4\nI 0 1\nI 1 2\nI 2 3\nQLD 0 3\n"
    code, out, _ = run(["--mode", "detour", "--trace", write(tmp_path, text)], capsys)
    assert (code, out) == (0, "NO\n")


def test_parity_replay_with_oracle(tmp_path, capsys):
    text = "N 3\nI 0 1\nI 1 2\nQEP 0 2\nQOP 0 2\nI 0 2\nQEP 0 2\nQOP 0 1\n"
    code, out, _ = run(["--mode", "parity", "--check-oracle", "--trace", write(tmp_path, text)], capsys)
    assert code == 0
    assert out.split() == ["YES", "NO", "YES", "YES"]


def test_exit_codes(tmp_path, capsys):
    assert run(["--trace", write(tmp_path, "N 2\nZ 0 1\n")], capsys)[0] == 3
    assert run(["--trace", write(tmp_path, "N 2\nD 0 1\n")], capsys)[0] == 4
    assert run(["--trace", write(tmp_path, "N 2\nI 0 1\nI 1 0\n")], capsys)[0] == 4
    # a query the chosen mode does not serve
    assert run(["--mode", "parity", "--trace", write(tmp_path, "N 2\nQLP 0 1\n")], capsys)[0] == 4
    assert run(["--k", "0", "--trace", write(tmp_path, "N 2\n")], capsys)[0] == 1
    assert run(["--weights", "1:2", "--fuzz"], capsys)[0] == 1
    assert run([], capsys)[0] == 1


def test_oracle_mismatch_exit_code(tmp_path, capsys):
    # threshold 1 is far too small for k = 3: a 4-cycle is refused and the refusal answers YES
    text = "N 4\nI 0 1\nI 1 2\nI 2 3\nI 3 0\nQLP 0 2\n"
    code, out, err = run(["--k", "3", "--inject-threshold", "1", "--check-oracle",
                          "--trace", write(tmp_path, text)], capsys)
    assert code == 2
    assert "failing prefix" in err and "QLP 0 2" in err


def test_replay_stops_on_illegal_event_with_index():
    with pytest.raises(IllegalEvent) as info:
        replay(RunConfig(), loads("N 3\nI 0 1\nD 1 2\n"))
    assert info.value.index == 1


def test_random_trace_with_oracle_passes():
    cfg = RunConfig(mode="longpath", k=2, check_oracle=True, n=10, ops=1000, seed=5)
    result = replay(cfg, generate_trace(cfg))
    assert result.mismatch is None
    assert result.abort_confirmed == result.abort_yes


def test_fuzz_examples():
    assert fuzz(RunConfig(mode="parity", n=8, ops=500, seed=1)).passed
    assert fuzz(RunConfig(mode="detour", n=8, ops=0, seed=1)).passed


def test_generated_traces_are_legal_and_deterministic():
    cfg = RunConfig(mode="parity", n=5, ops=400, weights=(60, 10, 30), seed=3)
    a, b = generate_trace(cfg), generate_trace(cfg)
    assert a == b
    edges = set()
    for ev in a.events:
        e = (min(ev.u, ev.v), max(ev.u, ev.v))
        if ev.kind.value == "I":
            assert e not in edges
            edges.add(e)
        elif ev.kind.value == "D":
            assert e in edges
            edges.remove(e)
        else:
            assert ev.kind.value in ("QEP", "QOP")
    assert len(a.events) == 400
    assert generate_trace(RunConfig(seed=4)) != a


def test_determinism_byte_identical(capsys):
    argv = ["--fuzz", "--mode", "longpath", "--k", "2", "--n", "8", "--ops", "300", "--seed", "9", "--runs", "2"]
    first = run(argv, capsys)
    second = run(argv, capsys)
    assert first[0] == second[0] == 0
    assert first[1] == second[1]


def test_fault_is_caught_and_counterexample_replays(tmp_path, capsys):
    emit = str(tmp_path / "ce.trace")
    argv = ["--fuzz", "--mode", "longpath", "--k", "3", "--inject-threshold", "1", "--n", "8",
            "--ops", "200", "--weights", "30:30:40", "--emit", emit]
    code, out, _ = run(argv, capsys)
    assert code == 2 and out.strip().endswith("FAIL")
    ce = loads(open(emit).read())
    assert len(ce.events) <= 8
    code, _, _ = run(["--k", "3", "--inject-threshold", "1", "--check-oracle", "--trace", emit], capsys)
    assert code == 2


@pytest.mark.parametrize("threshold", [3, 2])
def test_lowered_thresholds_down_to_2k_minus_2_stay_sound(threshold):
    # an abort at t >= 2k - 2 still puts a block of treewidth >= 2k - 1 on the
    # (s, t)-paths, which forces a path of length k; so this fault is invisible
    refusals = 0
    for seed in range(1, 6):
        cfg = RunConfig(mode="longpath", k=2, threshold=threshold, check_oracle=True,
                        n=8, ops=400, seed=seed)
        outcome = fuzz(cfg)
        assert outcome.passed
        refusals += outcome.result.abort_yes
    assert refusals > 100


def test_minimize_keeps_failure():
    cfg = RunConfig(mode="longpath", k=3, threshold=1, n=8, ops=200, weights=(30, 30, 40), seed=1)
    tr = generate_trace(cfg)
    small = minimize(cfg, tr)
    assert replay(RunConfig(mode="longpath", k=3, threshold=1, check_oracle=True), small).mismatch
    assert len(small.events) < len(tr.events)


def test_generate_and_stdin_entry_point(tmp_path):
    gen = subprocess.run([sys.executable, "-m", "dynpath", "--generate", "--n", "6", "--ops", "50",
                          "--mode", "parity", "--seed", "2"], capture_output=True, text=True, check=True)
    assert gen.stdout.startswith("N 6\n")
    rep = subprocess.run([sys.executable, "-m", "dynpath", "--mode", "parity", "--check-oracle", "--trace", "-"],
                         input=gen.stdout, capture_output=True, text=True)
    assert rep.returncode == 0
    queries = sum(1 for line in gen.stdout.splitlines() if line.startswith("Q"))
    assert len(rep.stdout.split()) == queries
