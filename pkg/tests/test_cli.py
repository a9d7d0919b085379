import csv
import io

import pytest

from zfeedback.cli import builtin_sweep, check_instance, main, parse_grid, stretched_instance
from zfeedback.core import Phase
from zfeedback.channel import iter_leaves
from zfeedback.encoder import Encoder


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bounds_default_grid(capsys, tmp_path):
    path = tmp_path / "curve.csv"
    code, _, _ = run(capsys, "bounds", "--grid", "0.05:0.95:0.05", "--out", str(path))
    rows = list(csv.DictReader(io.StringIO(path.read_text())))
    assert code == 0 and len(rows) == 19
    assert all(float(r["lower"]) <= float(r["upper"]) for r in rows)


def test_bounds_single_point(capsys):
    code, out, _ = run(capsys, "bounds", "--grid", "0.5:0.5:0.1")
    assert code == 0 and len(out.splitlines()) == 2


@pytest.mark.parametrize("grid", ["0.6:0.5:0.1", "0:0.5:0.1", "0.1:0.5:0", "nonsense"])
def test_bounds_bad_grid(capsys, grid):
    code, _, err = run(capsys, "bounds", "--grid", grid)
    assert code == 2 and "bounds" in err


def test_parse_grid_endpoints():
    assert parse_grid("0.1:0.3:0.1") == [0.1, 0.2, 0.3]


@pytest.mark.parametrize("m,adv", [(0, "none"), (3, "greedy"), (7, "random")])
def test_simulate_pass(capsys, m, adv):
    code, out, _ = run(capsys, "simulate", "--tau", "0.5", "--delta", "4", "--k", "8",
                       "--message", str(m), "--adversary", adv, "--seed", "1")
    lines = out.splitlines()
    assert code == 0 and lines[-1] == "PASS" and lines[-2].startswith(f"decoded={m} ")
    assert lines[0].startswith("delta=4 p=3")


def test_simulate_exhaustive_small(capsys):
    code, out, _ = run(capsys, "simulate", "--tau", "0.05", "--delta", "2", "--k", "2",
                       "--message", "1", "--adversary", "exhaustive")
    assert code == 0 and out.splitlines()[-1] == "PASS"


@pytest.mark.parametrize("tau", ["1.0", "0", "-0.2"])
def test_simulate_rejects_tau(capsys, tau):
    code, _, err = run(capsys, "simulate", "--tau", tau, "--delta", "4")
    assert code == 2 and "tau" in err


def test_simulate_bad_message(capsys):
    code, _, _ = run(capsys, "simulate", "--message", "100000")
    assert code == 2


def test_simulate_is_deterministic(capsys):
    args = ("simulate", "--adversary", "random", "--seed", "9", "--message", "4")
    assert run(capsys, *args) == run(capsys, *args)


def test_verify_sweep(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "12")
    lines = out.splitlines()
    assert code == 0 and all(l.startswith("PASS") for l in lines[:-1])
    assert lines[-1] == f"{len(lines) - 1}/{len(lines) - 1} instances passed"


def test_verify_empty(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "0")
    assert code == 0 and out.strip() == "0/0 instances passed"


def test_verify_limit(capsys):
    assert run(capsys, "verify", "--max-n", "17")[0] == 2


def test_mutant_detected(mutant_decoder):
    assert not all(check_instance(p, decoder_cls=mutant_decoder) for _, p in builtin_sweep(12))


def test_stretched_tree_reaches_every_phase():
    params = stretched_instance()
    assert check_instance(params)
    phases = set()
    for m in range(params.M):
        for word, _ in iter_leaves(params, m):
            enc = Encoder(params, m)
            phases.add(enc.state.phase)
            for y in word:
                enc.next_bit()
                enc.observe(y)
                phases.add(enc.state.phase)
    assert {Phase.PARTITIONING, Phase.WEIGHT, Phase.UNCODED} <= phases


def test_oracle_csv(capsys, tmp_path):
    path = tmp_path / "m.csv"
    code, _, _ = run(capsys, "oracle", "--max-n", "4", "--out", str(path))
    rows = list(csv.DictReader(io.StringIO(path.read_text())))
    assert code == 0 and list(rows[0]) == ["n", "t", "M", "asymptotic"]
    got = {(int(r["n"]), int(r["t"])): int(r["M"]) for r in rows}
    assert got[4, 0] == 16 and got[4, 1] == 6 and got[2, 1] == 2


def test_trace(capsys):
    code, out, _ = run(capsys, "trace", "--message", "5", "--adversary", "random", "--seed", "3")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows[0]["phase"] == "partitioning"
    assert rows[-1]["phase"] in {"weight", "uncoded"}
    assert [int(r["n"]) for r in rows] == sorted((int(r["n"]) for r in rows), reverse=True)


def test_trace_rejects_exhaustive(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["trace", "--adversary", "exhaustive"])
    assert exc.value.code == 2
